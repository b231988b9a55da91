"""Combinatorial pointed Heegaard diagrams.

A diagram is stored as its curve systems (cyclic lists of intersection
points) together with the complementary regions.  Each region records its
genus and its boundary cycles; a boundary cycle is a cyclic list of
:class:`Dart` values, i.e. curve segments traversed with the region on the
left.  Segment ``k`` of a curve runs from its ``k``-th listed point to the
next one.  Curve indices are 0-based.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property
from typing import Dict, Iterable, List, NamedTuple, Optional, Tuple

from .errors import DiagramSyntaxError, UnknownRegion, ValidationError

FORMAT_TAG = "phd-1"
ALPHA, BETA = "alpha", "beta"
KINDS = (ALPHA, BETA)
QUADRANTS = ("NE", "NW", "SW", "SE")


class Dart(NamedTuple):
    kind: str
    index: int
    segment: int
    reversed: bool

    def flip(self) -> "Dart":
        return Dart(self.kind, self.index, self.segment, not self.reversed)

    def swapped(self) -> "Dart":
        return Dart(BETA if self.kind == ALPHA else ALPHA, self.index, self.segment, self.reversed)


class HalfEdge(NamedTuple):
    kind: str
    sign: int  # +1: leaves along the curve orientation, -1: against it


@dataclass(frozen=True)
class Region:
    name: str
    genus: int
    boundary: Tuple[Tuple[Dart, ...], ...]

    @property
    def corners(self) -> int:
        return sum(len(c) for c in self.boundary if len(c) > 1)

    @property
    def euler_characteristic(self) -> int:
        return 2 - 2 * self.genus - len(self.boundary)

    @property
    def euler_measure(self) -> Fraction:
        return Fraction(self.euler_characteristic) - Fraction(self.corners, 4)

    @property
    def is_disc(self) -> bool:
        return self.genus == 0 and len(self.boundary) == 1

    def darts(self) -> Iterable[Dart]:
        for cyc in self.boundary:
            yield from cyc


@dataclass(frozen=True)
class ContactMarking:
    eh: Tuple[str, ...]
    loss_oriented: Optional[bool] = None


def _fail(code, msg, **details):
    raise ValidationError(msg, code=code, **details)


@dataclass(frozen=True)
class PointedDiagram:
    genus: int
    points: Tuple[str, ...]
    alpha: Tuple[Tuple[str, ...], ...]
    beta: Tuple[Tuple[str, ...], ...]
    regions: Tuple[Region, ...]
    basepoint_z: str
    basepoint_w: Optional[str] = None
    contact: Optional[ContactMarking] = None
    validate: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        if self.validate:
            self._validate()

    # -- curves and segments -------------------------------------------------

    def curves(self, kind: str) -> Tuple[Tuple[str, ...], ...]:
        return self.alpha if kind == ALPHA else self.beta

    def segment_count(self, kind: str, index: int) -> int:
        n = len(self.curves(kind)[index])
        return n if n else 1

    def segments(self) -> List[Tuple[str, int, int]]:
        out = []
        for kind in KINDS:
            for i in range(len(self.curves(kind))):
                out.extend((kind, i, k) for k in range(self.segment_count(kind, i)))
        return out

    def segment_endpoints(self, kind: str, index: int, segment: int):
        pts = self.curves(kind)[index]
        if not pts:
            return None
        return pts[segment], pts[(segment + 1) % len(pts)]

    def dart_start(self, d: Dart) -> Optional[str]:
        ends = self.segment_endpoints(d.kind, d.index, d.segment)
        if ends is None:
            return None
        return ends[1] if d.reversed else ends[0]

    def dart_end(self, d: Dart) -> Optional[str]:
        ends = self.segment_endpoints(d.kind, d.index, d.segment)
        if ends is None:
            return None
        return ends[0] if d.reversed else ends[1]

    @cached_property
    def point_location(self) -> Dict[str, Dict[str, Tuple[int, int]]]:
        """point -> {kind: (curve index, position on the curve)}."""
        loc: Dict[str, Dict[str, Tuple[int, int]]] = {p: {} for p in self.points}
        for kind in KINDS:
            for i, curve in enumerate(self.curves(kind)):
                for pos, p in enumerate(curve):
                    loc.setdefault(p, {})[kind] = (i, pos)
        return loc

    def departing(self, p: str, he: HalfEdge) -> Dart:
        i, pos = self.point_location[p][he.kind]
        if he.sign > 0:
            return Dart(he.kind, i, pos, False)
        n = len(self.curves(he.kind)[i])
        return Dart(he.kind, i, (pos - 1) % n, True)

    # -- regions ---------------------------------------------------------------

    @cached_property
    def region_index(self) -> Dict[str, int]:
        return {r.name: i for i, r in enumerate(self.regions)}

    def region(self, name: str) -> Region:
        try:
            return self.regions[self.region_index[name]]
        except KeyError:
            raise UnknownRegion(f"no region named {name!r}", region=name) from None

    @cached_property
    def dart_region(self) -> Dict[Dart, str]:
        """Region lying to the left of each dart."""
        out = {}
        for r in self.regions:
            for d in r.darts():
                out[d] = r.name
        return out

    def regions_across(self, kind: str, index: int, segment: int) -> Tuple[str, str]:
        """(left, right) regions of the segment in its forward direction."""
        return (self.dart_region[Dart(kind, index, segment, False)],
                self.dart_region[Dart(kind, index, segment, True)])

    @cached_property
    def corners(self) -> Dict[str, List[Tuple[HalfEdge, HalfEdge, str]]]:
        """point -> list of (arriving half-edge, departing half-edge, region)."""
        out: Dict[str, List[Tuple[HalfEdge, HalfEdge, str]]] = {p: [] for p in self.points}
        for r in self.regions:
            for cyc in r.boundary:
                if len(cyc) < 2:
                    continue
                for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                    p = self.dart_end(a)
                    arr = HalfEdge(a.kind, 1 if a.reversed else -1)
                    dep = HalfEdge(b.kind, -1 if b.reversed else 1)
                    out.setdefault(p, []).append((arr, dep, r.name))
        return out

    @cached_property
    def signs(self) -> Dict[str, int]:
        """Local intersection sign of (alpha, beta) at each point."""
        out = {}
        for p, cs in self.corners.items():
            for arr, dep, _ in cs:
                if arr == HalfEdge(ALPHA, -1):
                    out[p] = dep.sign
        return out

    @cached_property
    def quadrant_map(self) -> Dict[str, Dict[str, str]]:
        """point -> {NE, NW, SW, SE: region}, quadrants named relative to the
        curve orientations (east = alpha forward, north = beta forward)."""
        out = {}
        for p, cs in self.corners.items():
            q = {}
            for arr, dep, reg in cs:
                a = arr if arr.kind == ALPHA else dep
                b = dep if dep.kind == BETA else arr
                q[("N" if b.sign > 0 else "S") + ("E" if a.sign > 0 else "W")] = reg
            out[p] = q
        return out

    def euler_sum(self) -> int:
        """V - E + sum of region Euler characteristics."""
        v = len(self.points)
        e = sum(len(c) for kind in KINDS for c in self.curves(kind))
        return v - e + sum(r.euler_characteristic for r in self.regions)

    @property
    def doubly_pointed(self) -> bool:
        return self.basepoint_w is not None

    def with_basepoints(self, z: Optional[str] = None, w: Optional[str] = "__keep__") -> "PointedDiagram":
        kw = {}
        if z is not None:
            kw["basepoint_z"] = z
        if w != "__keep__":
            kw["basepoint_w"] = w
        return replace(self, **kw)

    def with_contact(self, contact: Optional[ContactMarking]) -> "PointedDiagram":
        return replace(self, contact=contact)

    # -- validation ------------------------------------------------------------

    def _validate(self):
        g = self.genus
        if not isinstance(g, int) or g < 0:
            _fail("GENUS", f"genus must be a non-negative integer, got {g!r}")
        if len(self.alpha) != g or len(self.beta) != g:
            _fail("CURVE_COUNT", f"expected {g} alpha and {g} beta curves, "
                                 f"got {len(self.alpha)} and {len(self.beta)}")
        if len(set(self.points)) != len(self.points):
            _fail("DUPLICATE_POINT", "point names must be distinct")
        for kind in KINDS:
            seen = {}
            for i, curve in enumerate(self.curves(kind)):
                for p in curve:
                    if p not in self.point_location or p not in set(self.points):
                        _fail("UNKNOWN_POINT", f"{kind} curve {i} lists unknown point {p!r}", point=p)
                    if p in seen:
                        _fail("POINT_USAGE", f"point {p!r} appears twice on {kind} curves", point=p)
                    seen[p] = i
            missing = [p for p in self.points if p not in seen]
            if missing:
                _fail("POINT_USAGE", f"points {missing} lie on no {kind} curve", points=missing)
        names = [r.name for r in self.regions]
        if len(set(names)) != len(names):
            _fail("DUPLICATE_REGION", "region names must be distinct")
        # arc usage: each dart exactly once
        used = {}
        for r in self.regions:
            if not isinstance(r.genus, int) or r.genus < 0:
                _fail("REGION_GENUS", f"region {r.name} has invalid genus {r.genus!r}", region=r.name)
            for cyc in r.boundary:
                if not cyc:
                    _fail("EMPTY_CYCLE", f"region {r.name} has an empty boundary cycle", region=r.name)
                for d in cyc:
                    if d.kind not in KINDS or not (0 <= d.index < g):
                        _fail("ARC_USAGE", f"region {r.name} references unknown curve {d}", region=r.name)
                    if not (0 <= d.segment < self.segment_count(d.kind, d.index)):
                        _fail("ARC_USAGE", f"region {r.name} references unknown segment {d}",
                              region=r.name)
                    if d in used:
                        _fail("ARC_USAGE", f"{d} is used twice with the same orientation", dart=list(d))
                    used[d] = r.name
        for kind, i, k in self.segments():
            for rev in (False, True):
                if Dart(kind, i, k, rev) not in used:
                    _fail("ARC_USAGE", f"segment ({kind}, {i}, {k}) is missing its "
                                       f"{'reversed' if rev else 'forward'} side",
                          segment=[kind, i, k])
        # cycles: alternation and continuity
        for r in self.regions:
            for cyc in r.boundary:
                if len(cyc) == 1:
                    d = cyc[0]
                    if self.curves(d.kind)[d.index]:
                        _fail("ALTERNATION", f"region {r.name}: single-entry cycle on a curve with "
                                             f"intersection points", region=r.name)
                    continue
                for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                    if a.kind == b.kind:
                        _fail("ALTERNATION", f"region {r.name}: consecutive {a.kind} segments",
                              region=r.name)
                    ea, sb = self.dart_end(a), self.dart_start(b)
                    if ea is None or sb is None or ea != sb:
                        _fail("CYCLE_CONTINUITY", f"region {r.name}: {a} does not end where {b} "
                                                  f"starts", region=r.name)
        # four corners per point, arranged as a local cross
        for p in self.points:
            cs = self.corners.get(p, [])
            if len(cs) != 4:
                _fail("CORNER_COUNT", f"point {p!r} has {len(cs)} corners, expected 4", point=p)
            rot = {arr: dep for arr, dep, _ in cs}
            if len(rot) != 4:
                _fail("CORNER_COUNT", f"point {p!r} has repeated corners", point=p)
            ok = False
            for s in (1, -1):
                north, south = HalfEdge(BETA, s), HalfEdge(BETA, -s)
                want = {HalfEdge(ALPHA, -1): north, north: HalfEdge(ALPHA, 1),
                        HalfEdge(ALPHA, 1): south, south: HalfEdge(ALPHA, -1)}
                if rot == want:
                    ok = True
            if not ok:
                _fail("LOCAL_STRUCTURE", f"corners at {p!r} do not form a transverse crossing", point=p)
        if self.euler_sum() != 2 - 2 * g:
            _fail("EULER_MISMATCH", f"V - E + sum chi = {self.euler_sum()}, expected {2 - 2 * g}")
        if g:
            for kind, other in ((ALPHA, BETA), (BETA, ALPHA)):
                if not self._complement_connected(other):
                    _fail("COMPLEMENT_DISCONNECTED", f"the complement of the {kind} curves is "
                                                     f"disconnected")
        elif len(self.regions) != 1:
            _fail("COMPLEMENT_DISCONNECTED", "a genus-0 diagram has exactly one region")
        for label, reg in (("basepoint_z", self.basepoint_z), ("basepoint_w", self.basepoint_w)):
            if reg is None and label == "basepoint_w":
                continue
            if reg not in self.region_index:
                _fail("UNKNOWN_BASEPOINT_REGION", f"{label} names unknown region {reg!r}", region=reg)
        if self.contact is not None:
            eh = self.contact.eh
            if len(eh) != g or len(set(eh)) != len(eh):
                _fail("CONTACT_MARKING", f"contact marking needs {g} distinct points")
            for i, p in enumerate(eh):
                loc = self.point_location.get(p)
                if not loc or loc[ALPHA][0] != i or loc[BETA][0] != i:
                    _fail("CONTACT_MARKING", f"marked point {p!r} is not on alpha_{i} and beta_{i}",
                          point=p)

    def _complement_connected(self, edge_kind: str) -> bool:
        """Regions glued along ``edge_kind`` segments form a connected graph."""
        parent = {r.name: r.name for r in self.regions}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for kind, i, k in self.segments():
            if kind != edge_kind:
                continue
            a, b = self.regions_across(kind, i, k)
            parent[find(a)] = find(b)
        return len({find(r.name) for r in self.regions}) == 1


# -- serialisation ---------------------------------------------------------------

_TOP_KEYS = {"format", "genus", "points", "alpha", "beta", "regions", "basepoint_z", "basepoint_w",
             "contact"}


def _expect(cond, msg):
    if not cond:
        raise DiagramSyntaxError(msg)


def diagram_from_dict(doc: dict) -> PointedDiagram:
    _expect(isinstance(doc, dict), "document must be a JSON object")
    extra = set(doc) - _TOP_KEYS
    _expect(not extra, f"unknown top-level keys: {sorted(extra)}")
    _expect(doc.get("format") == FORMAT_TAG, f"format tag must be {FORMAT_TAG!r}")
    for key in ("genus", "points", "alpha", "beta", "regions", "basepoint_z"):
        _expect(key in doc, f"missing key {key!r}")
    _expect(isinstance(doc["genus"], int) and not isinstance(doc["genus"], bool), "genus must be an int")
    _expect(isinstance(doc["points"], list) and all(isinstance(p, str) for p in doc["points"]),
            "points must be a list of strings")
    curves = {}
    for kind in KINDS:
        cs = doc[kind]
        _expect(isinstance(cs, list) and all(isinstance(c, list) for c in cs),
                f"{kind} must be a list of point lists")
        _expect(all(isinstance(p, str) for c in cs for p in c), f"{kind} curves must list point names")
        curves[kind] = tuple(tuple(c) for c in cs)
    regions = []
    _expect(isinstance(doc["regions"], list), "regions must be a list")
    for r in doc["regions"]:
        _expect(isinstance(r, dict), "region must be an object")
        _expect(set(r) <= {"name", "genus", "boundary"}, f"unknown region keys {sorted(set(r))}")
        _expect(isinstance(r.get("name"), str), "region name must be a string")
        gen = r.get("genus", 0)
        _expect(isinstance(gen, int) and not isinstance(gen, bool), "region genus must be an int")
        _expect(isinstance(r.get("boundary"), list), "region boundary must be a list of cycles")
        cycles = []
        for cyc in r["boundary"]:
            _expect(isinstance(cyc, list), "boundary cycle must be a list")
            ds = []
            for e in cyc:
                _expect(isinstance(e, dict) and set(e) == {"curve", "index", "segment", "reversed"},
                        "boundary entry needs exactly curve/index/segment/reversed")
                _expect(e["curve"] in KINDS, f"curve must be 'alpha' or 'beta', got {e['curve']!r}")
                _expect(isinstance(e["index"], int) and isinstance(e["segment"], int)
                        and isinstance(e["reversed"], bool), "bad boundary entry types")
                ds.append(Dart(e["curve"], e["index"], e["segment"], e["reversed"]))
            cycles.append(tuple(ds))
        regions.append(Region(r["name"], gen, tuple(cycles)))
    contact = None
    if doc.get("contact") is not None:
        c = doc["contact"]
        _expect(isinstance(c, dict) and set(c) <= {"eh", "loss_oriented"} and "eh" in c,
                "contact must be an object with key 'eh'")
        _expect(isinstance(c["eh"], list) and all(isinstance(p, str) for p in c["eh"]),
                "contact.eh must list point names")
        lo = c.get("loss_oriented")
        _expect(lo is None or isinstance(lo, bool), "contact.loss_oriented must be a boolean")
        contact = ContactMarking(tuple(c["eh"]), lo)
    w = doc.get("basepoint_w")
    _expect(w is None or isinstance(w, str), "basepoint_w must be a string")
    _expect(isinstance(doc["basepoint_z"], str), "basepoint_z must be a string")
    return PointedDiagram(doc["genus"], tuple(doc["points"]), curves[ALPHA], curves[BETA],
                          tuple(regions), doc["basepoint_z"], w, contact)


def parse_diagram(text: str) -> PointedDiagram:
    """Parse and validate a ``phd-1`` JSON document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DiagramSyntaxError(f"invalid JSON: {exc}") from None
    return diagram_from_dict(doc)


def load_diagram(path) -> PointedDiagram:
    with open(path, encoding="utf-8") as fh:
        return parse_diagram(fh.read())


def diagram_to_dict(d: PointedDiagram) -> dict:
    doc = {
        "format": FORMAT_TAG,
        "genus": d.genus,
        "points": list(d.points),
        "alpha": [list(c) for c in d.alpha],
        "beta": [list(c) for c in d.beta],
        "regions": [
            {"name": r.name, "genus": r.genus,
             "boundary": [[{"curve": x.kind, "index": x.index, "segment": x.segment,
                            "reversed": x.reversed} for x in cyc] for cyc in r.boundary]}
            for r in d.regions
        ],
        "basepoint_z": d.basepoint_z,
    }
    if d.basepoint_w is not None:
        doc["basepoint_w"] = d.basepoint_w
    if d.contact is not None:
        c = {"eh": list(d.contact.eh)}
        if d.contact.loss_oriented is not None:
            c["loss_oriented"] = d.contact.loss_oriented
        doc["contact"] = c
    return doc


def dump_diagram(d: PointedDiagram, indent=None) -> str:
    return json.dumps(diagram_to_dict(d), indent=indent)


# -- derived diagrams ------------------------------------------------------------------


def quadrant_map(d: PointedDiagram) -> Dict[str, Dict[str, str]]:
    return {p: dict(q) for p, q in d.quadrant_map.items()}


def swap_roles(d: PointedDiagram) -> PointedDiagram:
    """Exchange the alpha and beta curve systems.

    The surface orientation is kept, so every dart keeps its region and only
    changes its curve kind; local intersection signs flip.
    """
    regions = tuple(Region(r.name, r.genus, tuple(tuple(x.swapped() for x in cyc) for cyc in r.boundary))
                    for r in d.regions)
    return replace(d, alpha=d.beta, beta=d.alpha, regions=regions)


def canonical_form(d: PointedDiagram) -> PointedDiagram:
    """Rename regions canonically so structurally equal diagrams compare equal.

    Each cycle is rotated to start at its smallest dart, cycles are sorted,
    regions are ordered by their smallest dart and renamed ``R0, R1, ...``.
    """
    def rot(cyc):
        k = min(range(len(cyc)), key=lambda i: cyc[i])
        return cyc[k:] + cyc[:k]

    keyed = []
    for r in d.regions:
        cycles = tuple(sorted(rot(c) for c in r.boundary))
        keyed.append((cycles[0][0] if cycles else Dart("", -1, -1, False), r, cycles))
    keyed.sort(key=lambda t: (t[0], t[1].name))
    rename = {}
    regions = []
    for i, (_, r, cycles) in enumerate(keyed):
        rename[r.name] = f"R{i}"
        regions.append(Region(f"R{i}", r.genus, cycles))
    return replace(d, regions=tuple(regions), basepoint_z=rename[d.basepoint_z],
                   basepoint_w=None if d.basepoint_w is None else rename[d.basepoint_w],
                   validate=False)


def same_diagram(a: PointedDiagram, b: PointedDiagram) -> bool:
    return canonical_form(a) == canonical_form(b)
