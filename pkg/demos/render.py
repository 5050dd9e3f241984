"""Write an SVG of the V path with its optimal simple shortcut."""
import sys
from pathlib import Path

from netshort import continuous_diameter, fixtures, insert_segment, optimal_simple_shortcut
from netshort.svg import render_svg

out = Path(sys.argv[1] if len(sys.argv) > 1 else "vpath.svg")
v = fixtures.v_path()
c = optimal_simple_shortcut(v).candidate
aug = insert_segment(v.network, c).network
out.write_text(render_svg(v.network, c, continuous_diameter(aug), pair_net=aug))
print(f"wrote {out}")
