"""Constructing diagrams from curve data by tracing faces.

The surface is determined by the cyclic order of points along each curve
together with the local sign of every intersection: at a point of sign
``s`` the counter-clockwise order of half-edges is ``a+, b(s), a-, b(-s)``.
Walking along a boundary with the face on the left, the next segment leaves
along the clockwise neighbour of the half-edge we arrived on.
"""
from __future__ import annotations

from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .diagram import ALPHA, BETA, KINDS, ContactMarking, Dart, HalfEdge, PointedDiagram, Region

Curves = Sequence[Sequence[str]]


def point_locations(alpha: Curves, beta: Curves) -> Dict[str, Dict[str, Tuple[int, int]]]:
    loc: Dict[str, Dict[str, Tuple[int, int]]] = {}
    for kind, curves in ((ALPHA, alpha), (BETA, beta)):
        for i, c in enumerate(curves):
            for pos, p in enumerate(c):
                loc.setdefault(p, {})[kind] = (i, pos)
    return loc


def _cw_next(he: HalfEdge, sign: int) -> HalfEdge:
    north, south = HalfEdge(BETA, sign), HalfEdge(BETA, -sign)
    table = {HalfEdge(ALPHA, -1): north, north: HalfEdge(ALPHA, 1),
             HalfEdge(ALPHA, 1): south, south: HalfEdge(ALPHA, -1)}
    return table[he]


def trace_faces(alpha: Curves, beta: Curves, signs: Mapping[str, int]) -> List[Tuple[Dart, ...]]:
    """All boundary cycles of the ribbon structure, each rotated to start at
    its smallest dart and listed in order of that dart."""
    loc = point_locations(alpha, beta)
    curves = {ALPHA: alpha, BETA: beta}

    def end_of(d: Dart) -> str:
        c = curves[d.kind][d.index]
        return c[d.segment] if d.reversed else c[(d.segment + 1) % len(c)]

    def depart(p: str, he: HalfEdge) -> Dart:
        i, pos = loc[p][he.kind]
        if he.sign > 0:
            return Dart(he.kind, i, pos, False)
        return Dart(he.kind, i, (pos - 1) % len(curves[he.kind][i]), True)

    darts = []
    cycles = []
    for kind in KINDS:
        for i, c in enumerate(curves[kind]):
            if not c:
                cycles.append((Dart(kind, i, 0, False),))
                cycles.append((Dart(kind, i, 0, True),))
                continue
            for k in range(len(c)):
                darts.extend((Dart(kind, i, k, False), Dart(kind, i, k, True)))
    seen = set()
    for start in darts:
        if start in seen:
            continue
        cyc = []
        d = start
        while d not in seen:
            seen.add(d)
            cyc.append(d)
            p = end_of(d)
            arr = HalfEdge(d.kind, 1 if d.reversed else -1)
            d = depart(p, _cw_next(arr, signs[p]))
        if d != start:
            raise ValueError("rotation system is not a permutation")
        cycles.append(tuple(cyc))
    out = []
    for cyc in cycles:
        k = min(range(len(cyc)), key=lambda j: cyc[j])
        out.append(cyc[k:] + cyc[:k])
    out.sort(key=lambda c: c[0])
    return out


def diagram_from_curves(alpha: Curves, beta: Curves, signs: Mapping[str, int], *,
                        groups: Optional[Sequence[Sequence[int]]] = None,
                        names: Optional[Sequence[str]] = None,
                        genera: Optional[Sequence[int]] = None,
                        z: Optional[str] = None, w: Optional[str] = None,
                        contact: Optional[ContactMarking] = None,
                        points: Optional[Sequence[str]] = None) -> PointedDiagram:
    """Build and validate a diagram from curves and signs.

    Without ``groups`` every traced face becomes its own region.  ``groups``
    lists face indices (in :func:`trace_faces` order) per region.  Regions are
    named ``R0, R1, ...`` unless ``names`` is given; ``z`` defaults to the
    first region.
    """
    faces = trace_faces(alpha, beta, signs)
    if groups is None:
        groups = [[i] for i in range(len(faces))]
    if names is None:
        names = [f"R{i}" for i in range(len(groups))]
    if genera is None:
        genera = [0] * len(groups)
    regions = tuple(Region(n, g, tuple(faces[i] for i in grp)) for n, g, grp in zip(names, genera, groups))
    if points is None:
        points = []
        for c in list(alpha):
            points.extend(c)
    return PointedDiagram(len(alpha), tuple(points), tuple(tuple(c) for c in alpha),
                          tuple(tuple(c) for c in beta), regions,
                          names[0] if z is None else z, w, contact)


def fresh_name(taken, stem: str) -> str:
    taken = set(taken)
    if stem not in taken:
        return stem
    k = 1
    while f"{stem}{k}" in taken:
        k += 1
    return f"{stem}{k}"
