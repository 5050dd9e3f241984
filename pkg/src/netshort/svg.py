"""SVG 1.1 rendering of a network, an optional segment and a diametral pair."""
from __future__ import annotations

from xml.sax.saxutils import quoteattr

import numpy as np

from .augment import Candidate
from .distance import DiametralPair
from .network import Network

MARGIN = 0.05


def _fmt(v: float) -> str:
    return f"{v:.6g}"


def render_svg(net: Network, candidate: Candidate | None = None, pair: DiametralPair | None = None,
               pair_net: Network | None = None, size: int = 600) -> str:
    """Edges as black lines, the segment dashed, the pair as red markers.

    ``pair`` refers to points of ``pair_net`` (defaults to ``net``), so the
    diametral pair of an augmented network can be drawn over the original.
    The plane's y axis points up; the viewBox keeps a 5% margin.
    """
    pts = [net.vertices]
    if candidate is not None:
        pts.append(np.array(candidate.geometry, dtype=float))
    allp = np.vstack(pts)
    lo, hi = allp.min(axis=0), allp.max(axis=0)
    extent = max(float((hi - lo).max()), 1e-9)
    pad = MARGIN * extent
    x0, y0 = lo[0] - pad, -(hi[1] + pad)
    w, h = hi[0] - lo[0] + 2 * pad, hi[1] - lo[1] + 2 * pad
    stroke = _fmt(extent / 200)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" '
        f'height="{int(round(size * h / w))}" viewBox="{_fmt(x0)} {_fmt(y0)} {_fmt(w)} {_fmt(h)}">',
        f'<g id="edges" stroke="black" stroke-width={quoteattr(stroke)} stroke-linecap="round">',
    ]
    for a, b in net.edges:
        (ax, ay), (bx, by) = net.vertices[a], net.vertices[b]
        out.append(f'<line x1="{_fmt(ax)}" y1="{_fmt(-ay)}" x2="{_fmt(bx)}" y2="{_fmt(-by)}"/>')
    out.append("</g>")
    if candidate is not None:
        (ax, ay), (bx, by) = candidate.geometry
        out.append(
            f'<line class="candidate" x1="{_fmt(ax)}" y1="{_fmt(-ay)}" x2="{_fmt(bx)}" y2="{_fmt(-by)}" '
            f'stroke="#1f6fd1" stroke-width={quoteattr(stroke)} stroke-dasharray="{_fmt(extent / 40)},{_fmt(extent / 80)}"/>'
        )
    if pair is not None:
        src = pair_net if pair_net is not None else net
        for lp in (pair.a, pair.b):
            x, y = src.locate(lp)
            out.append(f'<circle class="diametral" cx="{_fmt(x)}" cy="{_fmt(-y)}" r="{_fmt(extent / 60)}" fill="#d62728"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
