"""Optimal simple shortcuts on paths, and a path where none exists."""
import math

from netshort import existence_sufficient, fixtures, optimal_simple_shortcut, simple_diagnostics

v = fixtures.v_path()
res = optimal_simple_shortcut(v)
d = simple_diagnostics(v, res.candidate)
print(f"V path: diameter {res.diameter:.9f}, x={d.x:.6f} y={d.y:.6f} z={d.z:.6f}")
print(f"  closed form {2 * (math.sqrt(2) - (4 * math.sqrt(2) + 2) / 7) + math.sqrt(2) * (4 * math.sqrt(2) + 2) / 7:.9f}")
print(f"  sufficient existence check: {existence_sufficient(v.network).value}")

lim = fixtures.limit_path()
res = optimal_simple_shortcut(lim)
print(f"limit path: exists={res.exists}, infimum {res.diameter:.6f} approached by {res.limit.geometry}")
print(f"  (base diameter {res.base_diameter:.6f})")
