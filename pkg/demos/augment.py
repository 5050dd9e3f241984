"""Adding one straight segment to a network, and when that shortens the diameter."""
from netshort import candidate_from_points, diameter_value, diameter_with_segment, fixtures, maximal_extension
from netshort.augment import insert_segment

s = fixtures.s_path()
print(f"S path of length {s.length:g}")
c = candidate_from_points(s.network, (2, 0), (2, 1))
print(f"segment (2,0)-(2,1): diameter {diameter_with_segment(s.network, c):g}")
ext = maximal_extension(s.network, c)
print(f"maximal extension {ext.geometry}: diameter {diameter_with_segment(s.network, ext):g}")
aug = insert_segment(s.network, ext)
print(f"augmented network has {aug.network.n} vertices and {aug.network.m} edges")

# a shortcut can also hurt: the continuous diameter may grow
plus = fixtures.plus_network()
bad = candidate_from_points(plus, (1, 0), (0, 1))
print(f"plus network: {diameter_value(plus):.4f} -> {diameter_with_segment(plus, bad):.4f} with a corner segment")
