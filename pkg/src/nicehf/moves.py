"""Diagram moves: stabilization, finger moves, bigon collapse, connected sum.

Every move rebuilds the boundary cycles by tracing the new ribbon structure
and then regroups the traced faces into regions, so the output is validated
exactly like a parsed document.
"""
from __future__ import annotations

from typing import Callable, Dict, List, Optional, Tuple

from .build import fresh_name, trace_faces
from .diagram import ALPHA, BETA, ContactMarking, Dart, PointedDiagram, Region
from .errors import (InternalInvariantFailure, NotCollapsible, NotDestabilizable, RegionNotDisc,
                     SegmentsNotCoRegional, UnknownRegion, ValidationError)


def _reindex(d: Dart, kind: str, index: int, f: Callable[[int], Optional[int]]) -> Optional[Dart]:
    if d.kind != kind or d.index != index:
        return d
    k = f(d.segment)
    return None if k is None else Dart(d.kind, d.index, k, d.reversed)


# -- stabilization ---------------------------------------------------------------


def stabilize(d: PointedDiagram, host_region: str, point: Optional[str] = None) -> PointedDiagram:
    """Connected sum with the genus-one diagram of the three-sphere.

    Adds ``alpha_g = beta_g = [q]``.  The host region gains one boundary cycle
    carrying the four corners at ``q``.  A contact marking is extended by
    ``q``.
    """
    if host_region not in d.region_index:
        raise UnknownRegion(f"no region named {host_region!r}", region=host_region)
    q = point or fresh_name(d.points, "q")
    g = d.genus
    cycle = (Dart(ALPHA, g, 0, False), Dart(BETA, g, 0, False),
             Dart(ALPHA, g, 0, True), Dart(BETA, g, 0, True))
    regions = tuple(Region(r.name, r.genus, r.boundary + (cycle,)) if r.name == host_region else r
                    for r in d.regions)
    contact = d.contact
    if contact is not None:
        contact = ContactMarking(contact.eh + (q,), contact.loss_oriented)
    return PointedDiagram(g + 1, d.points + (q,), d.alpha + ((q,),), d.beta + ((q,),), regions,
                          d.basepoint_z, d.basepoint_w, contact)


def destabilize(d: PointedDiagram, index: int) -> PointedDiagram:
    """Inverse of :func:`stabilize` on the curve pair ``index``."""
    if not 0 <= index < d.genus:
        raise NotDestabilizable(f"no curve pair {index}", index=index)
    a, b = d.alpha[index], d.beta[index]
    if len(a) != 1 or a != b:
        raise NotDestabilizable(f"alpha_{index} and beta_{index} do not meet in exactly one "
                                f"isolated point", index=index)
    q = a[0]
    cycle = {Dart(ALPHA, index, 0, False), Dart(BETA, index, 0, False),
             Dart(ALPHA, index, 0, True), Dart(BETA, index, 0, True)}
    host = None
    for r in d.regions:
        for c in r.boundary:
            if set(c) == cycle and len(c) == 4:
                host = r
    if host is None:
        raise NotDestabilizable(f"the corners at {q!r} do not form a single boundary cycle",
                                index=index)

    def shift(x: Dart) -> Dart:
        return x if x.index < index else Dart(x.kind, x.index - 1, x.segment, x.reversed)

    regions = []
    for r in d.regions:
        cyc = tuple(tuple(shift(x) for x in c) for c in r.boundary if set(c) != cycle)
        regions.append(Region(r.name, r.genus, cyc))
    contact = d.contact
    if contact is not None:
        contact = ContactMarking(tuple(p for p in contact.eh if p != q), contact.loss_oriented)
    try:
        return PointedDiagram(d.genus - 1, tuple(p for p in d.points if p != q),
                              d.alpha[:index] + d.alpha[index + 1:], d.beta[:index] + d.beta[index + 1:],
                              tuple(regions), d.basepoint_z, d.basepoint_w, contact)
    except ValidationError as exc:
        raise NotDestabilizable(f"result is not a valid diagram: {exc}", index=index) from None


# -- regrouping traced faces ---------------------------------------------------------


def _regroup(d: PointedDiagram, alpha, beta, signs, points, ancestor: Callable[[Dart], Optional[Dart]],
             split: Optional[str], contact, new_stem: str) -> PointedDiagram:
    """Assign traced faces of the new curve system to regions.

    ``ancestor`` maps a new dart to the old dart it continues (``None`` for
    darts created by the move).  A face descending from one old cycle of a
    region other than ``split`` replaces that cycle.  Faces descending only
    from ``split`` (a disc) become separate disc regions; the first keeps the
    old name.  Faces with no ancestry become new disc regions.
    """
    old_cycle = {}
    for r in d.regions:
        for ci, c in enumerate(r.boundary):
            for x in c:
                old_cycle[x] = (r.name, ci)
    faces = trace_faces(alpha, beta, signs)
    replaced: Dict[Tuple[str, int], Tuple[Dart, ...]] = {}
    extra: List[Tuple[str, Tuple[Dart, ...]]] = []
    taken = set(d.region_index)
    split_faces = []
    for f in faces:
        src = {old_cycle[a] for a in (ancestor(x) for x in f) if a is not None}
        if not src:
            extra.append((None, f))
        elif len(src) == 1:
            key = next(iter(src))
            if key[0] == split:
                split_faces.append(f)
            elif key in replaced:
                raise InternalInvariantFailure("two faces continue one boundary cycle")
            else:
                replaced[key] = f
        else:
            raise InternalInvariantFailure("a face continues several boundary cycles")
    regions = []
    for r in d.regions:
        if r.name == split:
            continue
        cyc = []
        for ci, c in enumerate(r.boundary):
            if (r.name, ci) not in replaced:
                raise InternalInvariantFailure(f"boundary cycle {ci} of {r.name} vanished")
            cyc.append(replaced[(r.name, ci)])
        regions.append(Region(r.name, r.genus, tuple(cyc)))
    if split is not None:
        for k, f in enumerate(split_faces):
            name = split if k == 0 else fresh_name(taken, f"{split}_")
            taken.add(name)
            regions.append(Region(name, 0, (f,)))
    for _, f in extra:
        name = fresh_name(taken, new_stem)
        taken.add(name)
        regions.append(Region(name, 0, (f,)))
    return PointedDiagram(d.genus, tuple(points), alpha, beta, tuple(regions), d.basepoint_z,
                          d.basepoint_w, contact)


# -- finger moves ---------------------------------------------------------------------


def _side(r: Region, kind: str, seg: Tuple) -> List[Dart]:
    return [x for x in r.darts() if x.kind == kind and (x.index, x.segment) == tuple(seg[:2])
            and (len(seg) < 3 or x.reversed == bool(seg[2]))]


def finger_move(d: PointedDiagram, s: Tuple, region: str, t: Tuple,
                names: Optional[Tuple[str, str]] = None) -> PointedDiagram:
    """Push the alpha segment ``s = (curve, segment)`` through the disc
    ``region`` across the beta segment ``t``.

    Creates two points and a bigon between them; ``region`` is cut into two
    discs.  Returns the new diagram; :func:`collapse_bigon` undoes it.  When a
    segment bounds ``region`` on both sides, a third entry ``reversed`` in
    ``s`` or ``t`` picks the side (default: the forward side).
    """
    r = d.region(region)
    if not r.is_disc:
        raise RegionNotDisc(f"region {region} is not a disc", region=region)
    ds, dt = _side(r, ALPHA, s), _side(r, BETA, t)
    if not ds or not dt:
        raise SegmentsNotCoRegional(f"segments {s} and {t} do not both bound {region}",
                                    region=region)
    ds, dt = min(ds), min(dt)
    eps_s = -1 if ds.reversed else 1
    eps_t = -1 if dt.reversed else 1
    if names is None:
        p1 = fresh_name(d.points, "u")
        p2 = fresh_name(set(d.points) | {p1}, "v")
    else:
        p1, p2 = names
        if p1 in d.points or p2 in d.points or p1 == p2:
            raise ValidationError("new point names must be fresh", code="DUPLICATE_POINT")
    signs = dict(d.signs)
    signs[p1] = eps_s * eps_t
    signs[p2] = -eps_s * eps_t

    def insert(curves, idx, seg, pair):
        c = list(curves[idx])
        c[seg + 1:seg + 1] = pair
        return curves[:idx] + (tuple(c),) + curves[idx + 1:]

    alpha = insert(d.alpha, ds.index, ds.segment, [p1, p2] if eps_s > 0 else [p2, p1])
    beta = insert(d.beta, dt.index, dt.segment, [p2, p1] if eps_t > 0 else [p1, p2])

    def split_map(k0):
        def f(k):
            if k < k0:
                return k
            if k in (k0, k0 + 2):
                return k0
            if k == k0 + 1:
                return None
            return k - 2
        return f

    fa, fb = split_map(ds.segment), split_map(dt.segment)

    def ancestor(x: Dart) -> Optional[Dart]:
        y = _reindex(x, ALPHA, ds.index, fa)
        if y is None:
            return None
        return _reindex(y, BETA, dt.index, fb)

    points = list(d.points) + [p1, p2]
    return _regroup(d, alpha, beta, signs, points, ancestor, region, d.contact, "B")


def bigon_regions(d: PointedDiagram) -> List[str]:
    """Names of disc regions with exactly two corners."""
    return [r.name for r in d.regions if r.is_disc and len(r.boundary[0]) == 2]


def collapse_bigon(d: PointedDiagram, region: str) -> PointedDiagram:
    """Remove a bigon region by isotopy, deleting its two corner points.

    Regions touching the merged segments are united; the genus of a merged
    region is recovered from the Euler identity.
    """
    r = d.region(region)
    if not (r.is_disc and len(r.boundary[0]) == 2):
        raise NotCollapsible(f"region {region} is not a bigon", region=region)
    if region in (d.basepoint_z, d.basepoint_w):
        raise NotCollapsible(f"region {region} carries a basepoint", region=region)
    da, db = sorted(r.boundary[0])
    u, v = d.dart_start(da), d.dart_end(da)
    if u == v:
        raise NotCollapsible("bigon corners coincide", region=region)
    if d.contact is not None and (u in d.contact.eh or v in d.contact.eh):
        raise NotCollapsible("bigon corner is a marked point", region=region)
    gone = {u, v}

    def shrink(curves, dart):
        c = curves[dart.index]
        keep = tuple(p for p in c if p not in gone)
        return curves[:dart.index] + (keep,) + curves[dart.index + 1:], len(c), dart.segment

    alpha, na, ka = shrink(d.alpha, da)
    beta, nb, kb = shrink(d.beta, db)

    def seg_map(n: int, k: int):
        """old segment -> new segment after removing points k and k+1 (mod n)."""
        if n == 2:
            return {k: None, (k + 1) % 2: 0}
        out = {k: None}
        # points k and k+1 removed; new list keeps the others in order
        old_pts = list(range(n))
        rm = {k, (k + 1) % n}
        kept = [i for i in old_pts if i not in rm]
        pos = {p: i for i, p in enumerate(kept)}
        m = len(kept)
        for j in range(n):
            if j == k:
                continue
            a, b = j, (j + 1) % n
            if a in rm:  # piece after the bigon: starts at k+1
                prev = (k - 1) % n
                out[j] = pos[prev] if m else 0
            elif b in rm:  # piece before the bigon: ends at k
                out[j] = pos[a] if m else 0
            else:
                out[j] = pos[a]
        return out

    ma, mb = seg_map(na, ka), seg_map(nb, kb)
    # union-find over old regions through the merged segments
    parent = {x.name: x.name for x in d.regions}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        parent[find(a)] = find(b)

    def ancestors_of(mapping):
        groups: Dict[int, List[int]] = {}
        for old, new in mapping.items():
            if new is not None:
                groups.setdefault(new, []).append(old)
        return groups

    anc = {}
    for kind, dart, mapping in ((ALPHA, da, ma), (BETA, db, mb)):
        for new, olds in ancestors_of(mapping).items():
            for rev in (False, True):
                regs = [d.dart_region[Dart(kind, dart.index, o, rev)] for o in olds]
                for x in regs[1:]:
                    union(regs[0], x)
                anc[Dart(kind, dart.index, new, rev)] = Dart(kind, dart.index, olds[0], rev)
    signs = {p: s for p, s in d.signs.items() if p not in gone}
    faces = trace_faces(alpha, beta, signs)
    members: Dict[str, List[str]] = {}
    for x in d.regions:
        if x.name != region:
            members.setdefault(find(x.name), []).append(x.name)
    cycles: Dict[str, List[Tuple[Dart, ...]]] = {}
    for f in faces:
        x = f[0]
        old = anc.get(x, x)
        rep = find(d.dart_region[old])
        cycles.setdefault(rep, []).append(f)
    regions = []
    unknown = []
    for root, mem in members.items():
        name = min(mem, key=lambda n: d.region_index[n])
        for special in (d.basepoint_z, d.basepoint_w):
            if special in mem:
                name = special
        genus = d.region(mem[0]).genus if len(mem) == 1 else None
        reg = Region(name, 0 if genus is None else genus, tuple(cycles.get(root, ())))
        if genus is None:
            unknown.append(len(regions))
        regions.append(reg)
    if len(unknown) > 1:
        raise NotCollapsible("merged regions have undetermined genus", region=region)
    points = tuple(p for p in d.points if p not in gone)
    if unknown:
        i = unknown[0]
        e = len(points) - sum(len(c) for c in alpha + beta)
        chi_rest = sum(x.euler_characteristic for j, x in enumerate(regions) if j != i)
        chi = 2 - 2 * d.genus - e - chi_rest
        two_g = 2 - chi - len(regions[i].boundary)
        if two_g < 0 or two_g % 2:
            raise NotCollapsible("merged region has inconsistent Euler data", region=region)
        regions[i] = Region(regions[i].name, two_g // 2, regions[i].boundary)
    regions.sort(key=lambda x: d.region_index[x.name])
    try:
        return PointedDiagram(d.genus, points, alpha, beta, tuple(regions), d.basepoint_z,
                              d.basepoint_w, d.contact)
    except ValidationError as exc:
        raise NotCollapsible(f"collapse yields an invalid diagram: {exc}", region=region) from None


# -- connected sum ----------------------------------------------------------------------


def connected_sum(a: PointedDiagram, ra: str, b: PointedDiagram, rb: str,
                  suffixes: Tuple[str, str] = ("", "'")) -> PointedDiagram:
    """Connected sum of two diagrams along regions ``ra`` and ``rb``.

    The two regions become one region carrying the boundary cycles of both
    (its genus is the sum of theirs).  Names from ``b`` receive the second
    suffix when they collide with names from ``a``; the merged region keeps
    the name of ``ra``, which also becomes the basepoint region.
    """
    a.region(ra), b.region(rb)
    sa, sb = suffixes
    pa = {p: p + sa for p in a.points}
    pb = {p: (p + sb if p + sa in pa.values() or p + sb in pa.values() else p + sb) for p in b.points}
    if set(pa.values()) & set(pb.values()):
        raise ValidationError("point names collide in connected sum", code="DUPLICATE_POINT")
    g = a.genus

    def shifted(x: Dart) -> Dart:
        return Dart(x.kind, x.index + g, x.segment, x.reversed)

    names_a = {r.name: r.name + sa for r in a.regions}
    names_b = {r.name: r.name + sb for r in b.regions}
    if set(names_a.values()) & set(names_b.values()):
        raise ValidationError("region names collide in connected sum", code="DUPLICATE_REGION")
    merged = Region(names_a[ra], a.region(ra).genus + b.region(rb).genus,
                    a.region(ra).boundary + tuple(tuple(shifted(x) for x in c)
                                                  for c in b.region(rb).boundary))
    regions = [merged if r.name == ra else Region(names_a[r.name], r.genus, r.boundary)
               for r in a.regions]
    regions += [Region(names_b[r.name], r.genus, tuple(tuple(shifted(x) for x in c) for c in r.boundary))
                for r in b.regions if r.name != rb]
    contact = None
    if a.contact is not None and b.contact is not None:
        contact = ContactMarking(tuple(pa[p] for p in a.contact.eh) + tuple(pb[p] for p in b.contact.eh))
    return PointedDiagram(
        a.genus + b.genus,
        tuple(pa[p] for p in a.points) + tuple(pb[p] for p in b.points),
        tuple(tuple(pa[p] for p in c) for c in a.alpha) + tuple(tuple(pb[p] for p in c) for c in b.alpha),
        tuple(tuple(pa[p] for p in c) for c in a.beta) + tuple(tuple(pb[p] for p in c) for c in b.beta),
        tuple(regions), names_a[ra], None, contact)


def bigon_between(d: PointedDiagram, p: str, q: str) -> Optional[str]:
    """The bigon region whose corners are ``p`` and ``q``, if any."""
    for name in bigon_regions(d):
        if {d.dart_start(x) for x in d.region(name).darts()} == {p, q}:
            return name
    return None
