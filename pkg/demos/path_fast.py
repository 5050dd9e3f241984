"""Diameter of a path plus one segment from its chain decomposition, and the
best segment in a fixed direction."""
import math

from netshort import (
    decompose,
    fixtures,
    optimal_fixed_orientation_shortcut,
    path_diameter_with_shortcut,
    two_chain_diameter,
)
from netshort.augment import diameter_with_segment

fx = fixtures.gen_spike_fixture(8, 16.0)
dec = decompose(fx.path, fx.candidate)
print(f"spike path: {len(dec)} chains, diameter {path_diameter_with_shortcut(fx.path, fx.candidate):.6f}")
print(f"  quadratic check: {diameter_with_segment(fx.path.network, fx.candidate):.6f}")
tops = fixtures.spike_top_distances(fx)
print(f"  all {tops.size} top pairs sit at distance {tops.min():.6f} to {tops.max():.6f}")

# the farthest pair between two chains has a closed form for each relation
for kind in ("disjoint", "nested", "overlapping"):
    tc = fixtures.two_chain_fixture(kind)
    chains = decompose(tc.path, tc.candidate, check_maximal=False).chains
    ci, cj = (next(c for c in chains if math.isclose(c.left, lo) and math.isclose(c.right, hi))
              for lo, hi in (tc.first, tc.second))
    print(f"{kind} chains: farthest pair at {two_chain_diameter(kind, ci, cj):g}")

u = fixtures.u_path()
for deg in (0, 45, 90):
    r = optimal_fixed_orientation_shortcut(u, math.radians(deg))
    print(f"U path, direction {deg:2d} deg: {r.diameter:.4f}" + ("" if r.candidate else " (no shortcut)"))
