"""Face extraction for a connected plane straight-line graph.

Half-edges around each vertex are sorted by angle; following ``next = the
twin's clockwise neighbour`` traces every face with the face on its left.
Bounded faces come out counterclockwise with positive area.
"""
from __future__ import annotations

import math

import numpy as np

from .geometry import EPS, orientation


def faces(points, edges) -> list[list[int]]:
    """All face boundary cycles as vertex lists (outer face included)."""
    P = np.asarray(points, dtype=float)
    out_of: dict[int, list[int]] = {}
    for a, b in edges:
        out_of.setdefault(a, []).append(b)
        out_of.setdefault(b, []).append(a)
    for u, nbrs in out_of.items():
        nbrs.sort(key=lambda v: math.atan2(P[v, 1] - P[u, 1], P[v, 0] - P[u, 0]))
    rank = {(u, v): i for u, nbrs in out_of.items() for i, v in enumerate(nbrs)}
    seen: set[tuple[int, int]] = set()
    cycles = []
    for start in sorted(rank):
        if start in seen:
            continue
        cyc = []
        he = start
        while he not in seen:
            seen.add(he)
            u, v = he
            cyc.append(u)
            around = out_of[v]
            # clockwise neighbour of the twin (v -> u)
            he = (v, around[(rank[(v, u)] - 1) % len(around)])
        cycles.append(cyc)
    return cycles


def signed_area(points, cycle) -> float:
    P = np.asarray(points, dtype=float)[cycle]
    x, y = P[:, 0], P[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y))


def bounded_faces(points, edges) -> list[list[int]]:
    return [c for c in faces(points, edges) if signed_area(points, c) > EPS * EPS]


def face_is_convex(points, cycle) -> bool:
    """A counterclockwise face is convex when it never turns right; a
    boundary that revisits a vertex (a slit or dangling edge) is not."""
    if len(set(cycle)) != len(cycle):
        return False
    P = np.asarray(points, dtype=float)
    k = len(cycle)
    return all(
        orientation(P[cycle[i - 1]], P[cycle[i]], P[cycle[(i + 1) % k]]) >= 0
        for i in range(k)
    )
