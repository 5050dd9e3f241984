"""Upper envelope of lines over an interval and its lowest point."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Sequence

from .errors import EmptyInput


@dataclass(frozen=True)
class EnvelopeLine:
    """The function y -> slope * y + intercept."""

    slope: float
    intercept: float
    tag: Any = None

    def __call__(self, y: float) -> float:
        return self.slope * y + self.intercept


@dataclass(frozen=True)
class Envelope:
    """Pieces ``(y0, y1, line)`` covering the interval left to right."""

    pieces: tuple[tuple[float, float, EnvelopeLine], ...]
    min_y: float
    min_value: float

    @property
    def breakpoints(self) -> list[float]:
        return [p[0] for p in self.pieces] + [self.pieces[-1][1]]

    def __call__(self, y: float) -> float:
        return max(line(y) for _, _, line in self.pieces)


def upper_envelope(lines: Sequence[EnvelopeLine], interval: tuple[float, float]) -> Envelope:
    """Max of ``lines`` restricted to ``interval`` and where it is lowest.

    The minimum is reported at the smallest y attaining it.
    """
    if not lines:
        raise EmptyInput("upper envelope of no lines")
    ya, yb = map(float, interval)
    if not ya <= yb:
        raise ValueError("interval must satisfy ya <= yb")
    # per slope keep the highest line; sort by slope
    best: dict[float, EnvelopeLine] = {}
    for ln in lines:
        cur = best.get(ln.slope)
        if cur is None or ln.intercept > cur.intercept:
            best[ln.slope] = ln
    ordered = sorted(best.values(), key=lambda ln: ln.slope)
    hull: list[EnvelopeLine] = []
    starts: list[float] = []
    for ln in ordered:
        while hull:
            top = hull[-1]
            x = (top.intercept - ln.intercept) / (ln.slope - top.slope)
            if x <= starts[-1]:
                hull.pop()
                starts.pop()
            else:
                break
        if not hull:
            hull.append(ln)
            starts.append(-float("inf"))
        else:
            top = hull[-1]
            hull.append(ln)
            starts.append((top.intercept - ln.intercept) / (ln.slope - top.slope))
    pieces = []
    for k, ln in enumerate(hull):
        lo = max(starts[k], ya)
        hi = min(starts[k + 1] if k + 1 < len(hull) else float("inf"), yb)
        if hi > lo or (hi == lo and not pieces and ya == yb):
            pieces.append((lo, hi, ln))
    if not pieces:
        # degenerate interval between two breakpoints
        ln = max(hull, key=lambda l: l(ya))
        pieces.append((ya, yb, ln))
    # convex, so the minimum sits at a piece end
    min_y, min_value = ya, pieces[0][2](ya)
    for y0, y1, ln in pieces:
        for y in (y0, y1):
            if ln(y) < min_value - 1e-12:
                min_y, min_value = y, ln(y)
    return Envelope(tuple(pieces), min_y, min_value)
