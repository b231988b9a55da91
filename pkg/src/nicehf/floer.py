"""Nice diagrams and the combinatorial hat differential.

On a nice diagram the differential counts empty embedded bigons and squares
that avoid the basepoint region.  Each such polygon is a domain with
multiplicities in ``{0, 1}``; these are found by enumerating the finitely
many ``{0, 1}`` translates of a particular solution by the periodic lattice.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .diagram import PointedDiagram
from .domains import (Domain, _pins, domain_system, maslov_index,
                      periodic_maslov, weakly_admissible_all)
from .errors import InternalD2Failure, InternalInvariantFailure, NotAComplex, NotAdmissible, NotNice, \
    NotNiceForKnot
from .generators import AbelianGroup, Generator, SpincClass, generators_of, partition_spinc
from .zlinalg.chain import F2ChainComplex, f2_homology
from .zlinalg.intmat import lattice_gcd

_ADJACENT = ({"NE", "NW"}, {"NW", "SW"}, {"SW", "SE"}, {"SE", "NE"})


@dataclass(frozen=True)
class NicenessReport:
    nice: bool
    offending: Tuple[str, ...]
    exempt: Tuple[str, ...]

    def __bool__(self):
        return self.nice


def is_nice(d: PointedDiagram, knot: bool = False) -> NicenessReport:
    """Every region away from the basepoint(s) is a bigon or a square."""
    exempt = [d.basepoint_z]
    if knot and d.basepoint_w is not None:
        exempt.append(d.basepoint_w)
    bad = []
    for r in d.regions:
        if r.name in exempt:
            continue
        if not (r.is_disc and len(r.boundary[0]) in (2, 4)):
            bad.append(r.name)
    return NicenessReport(not bad, tuple(bad), tuple(dict.fromkeys(exempt)))


@dataclass(frozen=True)
class CountedPolygon:
    domain: Domain
    corners: Tuple[str, ...]

    @property
    def arity(self) -> int:
        return len(self.corners)

    @property
    def source(self) -> Generator:
        return self.domain.source

    @property
    def target(self) -> Generator:
        return self.domain.target


def _rational_inverse(m: List[List[int]]) -> List[List[Fraction]]:
    n = len(m)
    a = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for c in range(n):
        p = next(r for r in range(c, n) if a[r][c] != 0)
        a[c], a[p] = a[p], a[c]
        pv = a[c][c]
        a[c] = [v / pv for v in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [row[n:] for row in a]


def _independent_rows(basis: Sequence[Sequence[int]]) -> List[int]:
    """Indices of ``k`` coordinates on which the ``k`` basis vectors are
    linearly independent."""
    k = len(basis)
    n = len(basis[0]) if k else 0
    chosen: List[int] = []
    reduced: List[List[Fraction]] = []  # echelon rows in coordinate space of the k coefficients
    pivots: List[int] = []
    for r in range(n):
        v = [Fraction(basis[j][r]) for j in range(k)]
        for row, p in zip(reduced, pivots):
            if v[p]:
                f = v[p] / row[p]
                v = [a - f * b for a, b in zip(v, row)]
        nz = next((j for j in range(k) if v[j]), None)
        if nz is not None:
            reduced.append(v)
            pivots.append(nz)
            chosen.append(r)
            if len(chosen) == k:
                break
    return chosen


def zero_one_translates(particular: Sequence[int], basis: Sequence[Sequence[int]]) -> List[Tuple[int, ...]]:
    """All vectors ``particular + sum c_i basis_i`` with entries in ``{0, 1}``."""
    k = len(basis)
    if k == 0:
        return [tuple(particular)] if all(v in (0, 1) for v in particular) else []
    rows = _independent_rows(basis)
    inv = _rational_inverse([[basis[j][r] for j in range(k)] for r in rows])
    out = []
    n = len(particular)
    for t in itertools.product((0, 1), repeat=k):
        rhs = [t[i] - particular[r] for i, r in enumerate(rows)]
        coeffs = [sum(inv[i][j] * rhs[j] for j in range(k)) for i in range(k)]
        if any(c.denominator != 1 for c in coeffs):
            continue
        cs = [int(c) for c in coeffs]
        vec = tuple(particular[r] + sum(c * basis[j][r] for j, c in enumerate(cs)) for r in range(n))
        if all(v in (0, 1) for v in vec):
            out.append(vec)
    return out


def _polygon_shape_ok(d: PointedDiagram, vec: Tuple[int, ...], x: Generator, y: Generator) -> bool:
    idx = d.region_index
    support = {r.name for r, m in zip(d.regions, vec) if m}
    if not support:
        return False
    corners = set(x.points) ^ set(y.points)
    fixed = set(x.points) & set(y.points)
    touched = 0
    for p in d.points:
        quads = {q for q, r in d.quadrant_map[p].items() if vec[idx[r]]}
        if quads:
            touched += 1
        if p in corners:
            if len(quads) != 1:
                return False
        elif p in fixed:
            if quads:
                return False
        elif quads and not (len(quads) == 4 or quads in _ADJACENT):
            return False
    # connectivity through shared segments
    adj: Dict[str, set] = {r: set() for r in support}
    edges = 0
    for kind, i, k in d.segments():
        a, b = d.regions_across(kind, i, k)
        if a in support or b in support:
            if d.segment_endpoints(kind, i, k) is not None:
                edges += 1
            if a in support and b in support:
                adj[a].add(b)
                adj[b].add(a)
    seen = set()
    stack = [next(iter(support))]
    while stack:
        r = stack.pop()
        if r in seen:
            continue
        seen.add(r)
        stack.extend(adj[r] - seen)
    if seen != support:
        return False
    chi = touched - edges + sum(d.region(r).euler_characteristic for r in support)
    return chi == 1


def _differing(x: Generator, y: Generator) -> int:
    return len(set(x.points) - set(y.points))


def empty_polygons(d: PointedDiagram, x: Generator, y: Generator, knot: bool = False,
                   prune: bool = True, check_nice: bool = True) -> List[CountedPolygon]:
    """Empty embedded bigons and squares from ``x`` to ``y`` avoiding the
    basepoint region (both regions when ``knot``)."""
    if check_nice:
        rep = is_nice(d, knot)
        if not rep:
            raise (NotNiceForKnot if knot else NotNice)(
                f"regions {list(rep.offending)} are neither bigons nor squares",
                offending=list(rep.offending))
    if x == y:
        return []
    if prune and _differing(x, y) > 2:
        return []
    system = domain_system(d, _pins(d, True, knot))
    sol = system.solve(x, y)
    if sol is None:
        return []
    out = []
    for vec in zero_one_translates(sol.particular.multiplicities, sol.lattice.basis):
        if not _polygon_shape_ok(d, vec, x, y):
            continue
        dom = Domain(x, y, system.names, vec)
        if maslov_index(d, dom) != 1:
            continue
        out.append(CountedPolygon(dom, tuple(sorted(set(x.points) ^ set(y.points)))))
    return out


@dataclass(frozen=True, eq=False)
class ClassComplex:
    spinc: SpincClass
    complex: F2ChainComplex
    delta: int
    alexander: Optional[Tuple[int, ...]] = None
    alexander_modulus: int = 0


@dataclass(frozen=True, eq=False)
class FloerComplex:
    diagram: PointedDiagram = field(repr=False)
    generators: Tuple[Generator, ...]
    matrix: np.ndarray  # column j is the boundary of generator j
    classes: Tuple[ClassComplex, ...]
    polygons: Dict[Tuple[int, int], Tuple[CountedPolygon, ...]]
    h1: AbelianGroup
    knot: bool = False

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(x.name for x in self.generators)

    def boundary(self, name: str) -> List[str]:
        j = self.names.index(name)
        return [self.names[i] for i in np.flatnonzero(self.matrix[:, j])]

    def complex(self) -> F2ChainComplex:
        return F2ChainComplex(self.names, self.matrix)

    def class_of(self, x: Generator) -> ClassComplex:
        for c in self.classes:
            if x in c.spinc.generators:
                return c
        raise KeyError(x)


def _gradings(d: PointedDiagram, cls: SpincClass) -> Tuple[Tuple[int, ...], int]:
    """Maslov gradings relative to the class representative, and delta."""
    base = cls.representative
    zsys = domain_system(d, _pins(d, True, False))
    delta = lattice_gcd(int(periodic_maslov(d, base, b)) for b in zsys.lattice(base).basis)
    grades = []
    for y in cls.generators:
        sol = zsys.solve(base, y)
        if sol is None:
            raise InternalInvariantFailure(f"no domain inside a Spin^c class ({base} -> {y})")
        mu = maslov_index(d, sol.particular)
        if mu.denominator != 1:
            raise InternalInvariantFailure(f"non-integral Maslov index {mu}")
        g = -int(mu)
        grades.append(g % delta if delta else g)
    return tuple(grades), delta


def build_complex(d: PointedDiagram, knot: bool = False, prune: bool = True,
                  check_admissible: bool = True) -> FloerComplex:
    # admissibility first: a sign-definite periodic domain is the more basic defect
    if check_admissible:
        ok, failure = weakly_admissible_all(d, knot)
        if not ok:
            raise NotAdmissible("a periodic domain with vanishing Maslov index is sign-definite",
                                witness=failure.witness_dict())
    rep = is_nice(d, knot)
    if not rep:
        raise (NotNiceForKnot if knot else NotNice)(
            f"regions {list(rep.offending)} are neither bigons nor squares",
            offending=list(rep.offending))
    part = partition_spinc(d)
    gens = generators_of(d)
    index = {x: i for i, x in enumerate(gens)}
    n = len(gens)
    mat = np.zeros((n, n), dtype=np.uint8)
    polys: Dict[Tuple[int, int], Tuple[CountedPolygon, ...]] = {}
    for cls in part.classes:
        for x in cls.generators:
            for y in cls.generators:
                found = empty_polygons(d, x, y, knot=knot, prune=prune, check_nice=False)
                if found:
                    polys[(index[x], index[y])] = tuple(found)
                    if len(found) % 2:
                        mat[index[y], index[x]] = 1
    if n and np.any((mat.astype(np.int64) @ mat.astype(np.int64)) & 1):
        raise InternalD2Failure("the differential does not square to zero")
    classes = []
    for cls in part.classes:
        idx = [index[x] for x in cls.generators]
        grades, delta = _gradings(d, cls)
        sub = mat[np.ix_(idx, idx)]
        try:
            cx = F2ChainComplex(cls.names, sub, grades, delta)
        except NotAComplex as exc:
            raise InternalInvariantFailure(f"counted polygons violate the grading: {exc}") from None
        classes.append(ClassComplex(cls, cx, delta))
    return FloerComplex(d, tuple(gens), mat, tuple(classes), polys, part.h1, knot)


@lru_cache(maxsize=64)
def differential(d: PointedDiagram) -> FloerComplex:
    """The hat complex; refuses diagrams that are not nice or not weakly admissible."""
    return build_complex(d)


@dataclass(frozen=True)
class ClassHomology:
    index: int
    generators: Tuple[str, ...]
    delta: int
    dims: Dict[int, int]
    representative: str

    @property
    def total(self) -> int:
        return sum(self.dims.values())

    def as_dict(self) -> dict:
        return {"index": self.index, "dim": self.total, "delta": self.delta,
                "base_generator": self.representative, "generators": list(self.generators),
                "graded_dims": {str(k): v for k, v in sorted(self.dims.items()) if v}}


@dataclass(frozen=True)
class HatHomology:
    h1: AbelianGroup
    classes: Tuple[ClassHomology, ...]

    @property
    def total(self) -> int:
        return sum(c.total for c in self.classes)

    def as_dict(self) -> dict:
        return {"h1": str(self.h1), "total_dim": self.total, "class_count": len(self.classes),
                "classes": [c.as_dict() for c in self.classes]}


def hf_hat(d: PointedDiagram) -> HatHomology:
    """Homology of the hat complex per Spin^c class, with relative gradings."""
    fc = differential(d)
    out = []
    for c in fc.classes:
        dims = f2_homology(c.complex)
        out.append(ClassHomology(c.spinc.index, c.spinc.names, c.delta,
                                 {k: v for k, v in dims.items() if v}, c.spinc.representative.name))
    return HatHomology(fc.h1, tuple(out))
