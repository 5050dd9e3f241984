"""Continuous diameter: the farthest pair of points anywhere on a network,
not just among its vertices."""
import numpy as np

from netshort import build_network, continuous_diameter, fixtures, sampled_diameter
from netshort.oracle import OracleConfig

square = fixtures.unit_square()
pair = continuous_diameter(square)
# vertex distances on the unit square top out at 2, but so do midpoints of opposite edges
print(f"unit square: diameter {pair.value:g}, realized {pair.kind} at {pair.a} / {pair.b}")

v = fixtures.v_path().network
print(f"V path: diameter {continuous_diameter(v).value:.6f} (= 2 sqrt 2)")

# a T-junction: the farthest points sit at the ends of the arms
t = build_network([(0, 0), (2, 0), (1, 0), (1, 3)], [(0, 2), (2, 1), (2, 3)])
print(f"T network: {continuous_diameter(t).value:g}")

# independent check by sampling points on every edge
net = fixtures.random_planar_network(np.random.default_rng(1), 8)
exact = continuous_diameter(net).value
est = sampled_diameter(net, OracleConfig(diameter_samples_per_edge=60))
print(f"random network: exact {exact:.6f}, sampled {est.value:.6f} (+{est.error:.4f})")
