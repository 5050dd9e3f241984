"""Additive approximation for arbitrary plane networks, checked against a
brute-force grid over segment endpoints."""
import numpy as np

from netshort import approx_optimal_shortcut, fixtures, grid_shortcut_search
from netshort.oracle import OracleConfig

v = fixtures.v_path().network
res = approx_optimal_shortcut(v, epsilon=0.1)
print(f"V path, eps=0.1: {res.diameter:.5f} within +{res.guarantee.additive:.3f} ({res.guarantee.basis})")

rng = np.random.default_rng(4)
for _ in range(3):
    net = fixtures.random_planar_network(rng, 7, extra=0.3)
    s2 = approx_optimal_shortcut(net)
    grid = grid_shortcut_search(net, OracleConfig(endpoint_samples_per_edge=10))
    print(f"n={net.n} m={net.m}: base {s2.guarantee.base_diameter:.3f}, approx {s2.diameter:.3f}, "
          f"grid {grid.diameter:.3f} (+-{grid.error:.3f}), guarantee +{s2.guarantee.additive:.3f}")
