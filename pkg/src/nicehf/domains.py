"""Domains of Whitney discs, Maslov index and admissibility.

A domain is an integer multiplicity per region.  Its boundary, read along the
alpha curves, must run from ``x`` to ``y`` and, along the beta curves, from
``y`` back to ``x``.  These point conditions form an integer linear system
whose Smith decomposition is cached per diagram and choice of pinned
basepoint regions.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .diagram import ALPHA, BETA, PointedDiagram
from .generators import Generator, SpincClass, generators_of, partition_spinc
from .zlinalg.intmat import IntegerSystem, integer_kernel, lattice_gcd
from .zlinalg.lp import feasible_point

Multiplicities = Tuple[int, ...]


@dataclass(frozen=True)
class Domain:
    source: Optional[Generator]
    target: Optional[Generator]
    regions: Tuple[str, ...]
    multiplicities: Multiplicities

    def __getitem__(self, region: str) -> int:
        return self.multiplicities[self.regions.index(region)]

    def __add__(self, other: "Domain") -> "Domain":
        if other.source != self.target:
            raise ValueError("domains are not composable")
        return Domain(self.source, other.target, self.regions,
                      tuple(a + b for a, b in zip(self.multiplicities, other.multiplicities)))

    def shifted(self, vec: Sequence[int], k: int = 1) -> "Domain":
        return Domain(self.source, self.target, self.regions,
                      tuple(a + k * b for a, b in zip(self.multiplicities, vec)))

    @property
    def support(self) -> Tuple[str, ...]:
        return tuple(r for r, m in zip(self.regions, self.multiplicities) if m)

    def is_nonnegative(self) -> bool:
        return all(m >= 0 for m in self.multiplicities)

    def as_dict(self) -> Dict[str, int]:
        return {r: m for r, m in zip(self.regions, self.multiplicities) if m}


@dataclass(frozen=True)
class PeriodicLattice:
    base: Optional[Generator]
    regions: Tuple[str, ...]
    basis: Tuple[Multiplicities, ...]

    @property
    def rank(self) -> int:
        return len(self.basis)

    def domains(self) -> List[Domain]:
        return [Domain(self.base, self.base, self.regions, b) for b in self.basis]

    def combination(self, coeffs: Sequence[int]) -> Multiplicities:
        out = [0] * len(self.regions)
        for c, b in zip(coeffs, self.basis):
            if c:
                for i, v in enumerate(b):
                    out[i] += c * v
        return tuple(out)


@dataclass(frozen=True)
class DomainSolution:
    particular: Domain
    lattice: PeriodicLattice


class DomainSystem:
    """Point conditions for domains on one diagram.

    Row ``(alpha, p)`` reads ``c(seg into p) - c(seg out of p) = [p in y] -
    [p in x]`` where ``c`` is the boundary coefficient of an alpha segment;
    beta rows carry the opposite sign.  ``pins`` adds one row per region
    whose multiplicity is prescribed.
    """

    def __init__(self, d: PointedDiagram, pins: Tuple[str, ...] = ()):
        self.d = d
        self.pins = pins
        self.names = tuple(r.name for r in d.regions)
        idx = d.region_index
        rows = []
        for kind in (ALPHA, BETA):
            for p in d.points:
                i, pos = d.point_location[p][kind]
                n = len(d.curves(kind)[i])
                row = [0] * len(self.names)
                incoming, outgoing = (pos - 1) % n, pos
                for seg, sgn in ((incoming, 1), (outgoing, -1)):
                    left, right = d.regions_across(kind, i, seg)
                    row[idx[left]] += sgn
                    row[idx[right]] -= sgn
                rows.append(row)
        for r in pins:
            row = [0] * len(self.names)
            row[idx[r]] = 1
            rows.append(row)
        self.rows = rows
        self.system = IntegerSystem(rows, len(self.names))

    def rhs(self, x: Optional[Generator], y: Optional[Generator], values: Sequence[int] = ()) -> List[int]:
        xs = set(x.points) if x is not None else set()
        ys = set(y.points) if y is not None else set()
        b = []
        for kind in (ALPHA, BETA):
            for p in self.d.points:
                v = (p in ys) - (p in xs)
                b.append(v if kind == ALPHA else -v)
        vals = list(values) + [0] * (len(self.pins) - len(values))
        return b + vals

    def solve(self, x: Generator, y: Generator, values: Sequence[int] = ()) -> Optional[DomainSolution]:
        sol = self.system.solve(self.rhs(x, y, values))
        if sol is None:
            return None
        return DomainSolution(Domain(x, y, self.names, tuple(sol.particular)),
                              PeriodicLattice(x, self.names, tuple(sol.kernel)))

    def lattice(self, base: Optional[Generator] = None) -> PeriodicLattice:
        return PeriodicLattice(base, self.names, tuple(self.system.kernel))

    def residual(self, dom: Domain, values: Sequence[int] = ()) -> List[int]:
        b = self.rhs(dom.source, dom.target, values)
        return [sum(a * m for a, m in zip(row, dom.multiplicities)) - v for row, v in zip(self.rows, b)]


@lru_cache(maxsize=256)
def domain_system(d: PointedDiagram, pins: Tuple[str, ...] = ()) -> DomainSystem:
    return DomainSystem(d, pins)


def _pins(d: PointedDiagram, pin_z: bool, pin_w: bool) -> Tuple[str, ...]:
    pins = []
    if pin_z:
        pins.append(d.basepoint_z)
    if pin_w and d.basepoint_w is not None and d.basepoint_w not in pins:
        pins.append(d.basepoint_w)
    return tuple(pins)


def find_domain(d: PointedDiagram, x: Generator, y: Generator, pin_z: bool = True,
                pin_w: bool = False) -> Optional[DomainSolution]:
    """A domain from ``x`` to ``y`` and the periodic lattice, or ``None``.

    With ``pin_z`` (resp. ``pin_w``) the multiplicity at the basepoint region
    is fixed to zero.
    """
    return domain_system(d, _pins(d, pin_z, pin_w)).solve(x, y)


def is_domain(d: PointedDiagram, dom: Domain) -> bool:
    """Direct check of the boundary conditions."""
    return not any(domain_system(d).residual(dom))


# -- measures ------------------------------------------------------------------


def euler_measure(d: PointedDiagram, dom: Union[Domain, Sequence[int]]) -> Fraction:
    mult = dom.multiplicities if isinstance(dom, Domain) else dom
    return sum((r.euler_measure * m for r, m in zip(d.regions, mult) if m), Fraction(0))


def local_multiplicities(d: PointedDiagram, dom: Union[Domain, Sequence[int]], p: str) -> Dict[str, int]:
    mult = dom.multiplicities if isinstance(dom, Domain) else dom
    idx = d.region_index
    return {q: mult[idx[r]] for q, r in d.quadrant_map[p].items()}


def point_measure(d: PointedDiagram, dom: Union[Domain, Sequence[int]], x: Generator) -> Fraction:
    """Sum over the coordinates of ``x`` of the average local multiplicity."""
    total = Fraction(0)
    for p in x.points:
        total += Fraction(sum(local_multiplicities(d, dom, p).values()), 4)
    return total


def maslov_index(d: PointedDiagram, dom: Domain) -> Fraction:
    """``e(D) + n_x(D) + n_y(D)``."""
    return euler_measure(d, dom) + point_measure(d, dom, dom.source) + point_measure(d, dom, dom.target)


def periodic_maslov(d: PointedDiagram, base: Generator, vec: Sequence[int]) -> Fraction:
    return euler_measure(d, vec) + 2 * point_measure(d, vec, base)


def relative_grading(d: PointedDiagram, dom: Domain) -> Fraction:
    """``gr(x, y) = mu(D) - 2 n_z(D)``."""
    return maslov_index(d, dom) - 2 * dom[d.basepoint_z]


def _as_int(q: Fraction) -> int:
    if q.denominator != 1:
        raise ArithmeticError(f"expected an integer, got {q}")
    return q.numerator


def delta_s(d: PointedDiagram, cls: SpincClass) -> int:
    """gcd of the Maslov indices of a basis of periodic domains at the class
    representative; 0 means the relative grading is integral."""
    base = cls.representative
    lat = domain_system(d, _pins(d, True, False)).lattice(base)
    return lattice_gcd(_as_int(periodic_maslov(d, base, b)) for b in lat.basis)


# -- admissibility ----------------------------------------------------------------


@dataclass(frozen=True)
class AdmissibilityResult:
    admissible: bool
    certificate: Optional[Tuple[Fraction, ...]] = None  # positive area vanishing on the sublattice
    witness: Optional[Tuple[int, ...]] = None  # sign-definite periodic domain
    regions: Tuple[str, ...] = ()

    def __bool__(self):
        return self.admissible

    def witness_dict(self) -> Optional[Dict[str, int]]:
        if self.witness is None:
            return None
        return {r: m for r, m in zip(self.regions, self.witness) if m}


def _mu_zero_sublattice(d: PointedDiagram, base: Optional[Generator],
                        basis: Tuple[Multiplicities, ...]) -> List[Multiplicities]:
    if base is None or not basis:
        return list(basis)
    mus = [_as_int(periodic_maslov(d, base, b)) for b in basis]
    if not any(mus):
        return list(basis)
    ker = integer_kernel([mus], len(basis))
    lat = PeriodicLattice(base, (), basis)
    return [lat.combination(c) for c in ker]


def sign_definite_check(vectors: Sequence[Sequence[int]], regions: Tuple[str, ...]) -> AdmissibilityResult:
    """Decide whether the real span of ``vectors`` avoids the non-negative
    orthant (apart from 0).

    Either a strictly positive area functional vanishes on every vector, or
    there is a non-zero non-negative vector in the span; exactly one of the
    two holds.  The first is returned as a certificate, the second as an
    integer witness in the lattice spanned by ``vectors``.
    """
    vectors = [list(v) for v in vectors if any(v)]
    n = len(regions)
    if not vectors:
        return AdmissibilityResult(True, tuple(Fraction(1) for _ in range(n)), None, regions)
    # area A = 1 + A', A' >= 0, with <A, v> = 0
    a = [[Fraction(x) for x in v] for v in vectors]
    b = [-sum(v) for v in vectors]
    sol = feasible_point(a, b)
    if sol is not None:
        return AdmissibilityResult(True, tuple(1 + s for s in sol), None, regions)
    k = len(vectors)
    # lambda = lp - lm; P = sum lambda_j v_j = s >= 0, sum(P) = 1
    rows = []
    rhs = []
    for r in range(n):
        row = [vectors[j][r] for j in range(k)] + [-vectors[j][r] for j in range(k)]
        row += [-int(i == r) for i in range(n)]
        rows.append(row)
        rhs.append(0)
    rows.append([sum(v) for v in vectors] + [-sum(v) for v in vectors] + [0] * n)
    rhs.append(1)
    sol = feasible_point(rows, rhs)
    if sol is None:  # pragma: no cover - excluded by the theorem of the alternative
        raise ArithmeticError("neither certificate nor witness found")
    lam = [sol[j] - sol[k + j] for j in range(k)]
    den = 1
    for q in lam:
        den = den * q.denominator // gcd(den, q.denominator)
    ints = [int(q * den) for q in lam]
    g = lattice_gcd(ints) or 1
    ints = [c // g for c in ints]
    wit = [sum(c * v[r] for c, v in zip(ints, vectors)) for r in range(n)]
    return AdmissibilityResult(False, None, tuple(wit), regions)


def _class_base(d: PointedDiagram, cls: Optional[SpincClass]) -> Optional[Generator]:
    return None if cls is None else cls.representative


def weak_admissibility(d: PointedDiagram, cls: Optional[SpincClass] = None) -> AdmissibilityResult:
    """Every periodic domain with vanishing Maslov index has both signs.

    ``cls=None`` drops the Maslov condition and tests every periodic domain,
    which is the right check for a diagram without generators.
    """
    lat = domain_system(d, _pins(d, True, False)).lattice(_class_base(d, cls))
    vecs = _mu_zero_sublattice(d, lat.base, lat.basis)
    return sign_definite_check(vecs, lat.regions)


def extremely_weak_admissibility(d: PointedDiagram, cls: Optional[SpincClass] = None) -> AdmissibilityResult:
    """As :func:`weak_admissibility` on periodic domains avoiding both basepoints."""
    lat = domain_system(d, _pins(d, True, True)).lattice(_class_base(d, cls))
    vecs = _mu_zero_sublattice(d, lat.base, lat.basis)
    return sign_definite_check(vecs, lat.regions)


def weakly_admissible_all(d: PointedDiagram, knot: bool = False) -> Tuple[bool, Optional[AdmissibilityResult]]:
    """Check every class (or the class-free condition when there are no
    generators); returns the first failure."""
    check = extremely_weak_admissibility if knot else weak_admissibility
    part = partition_spinc(d)
    classes = part.classes or (None,)
    for c in classes:
        res = check(d, c)
        if not res:
            return False, res
    return True, None


@dataclass(frozen=True)
class StrongVerdict:
    status: str  # "verified" | "counterexample" | "inconclusive"
    bound: int
    witness: Optional[Tuple[int, ...]] = None
    regions: Tuple[str, ...] = ()
    maslov: Optional[int] = None

    def witness_dict(self) -> Optional[Dict[str, int]]:
        if self.witness is None:
            return None
        return {r: m for r, m in zip(self.regions, self.witness) if m}


STRONG_SEARCH_LIMIT = 500_000


def strong_admissibility(d: PointedDiagram, cls: Optional[SpincClass], bound: int = 10) -> StrongVerdict:
    """Bounded search for periodic domains ``P`` with ``mu(P) = 2n >= 0`` and
    every coefficient at most ``n``.

    Only lattice coefficients in ``[-bound, bound]`` are tried, so a clean run
    proves the condition up to that bound only.
    """
    base = _class_base(d, cls)
    lat = domain_system(d, _pins(d, True, False)).lattice(base)
    k = lat.rank
    if k == 0:
        return StrongVerdict("verified", bound, regions=lat.regions)
    if (2 * bound + 1) ** k > STRONG_SEARCH_LIMIT:
        return StrongVerdict("inconclusive", bound, regions=lat.regions)
    mus = [periodic_maslov(d, base, b) if base is not None else Fraction(0) for b in lat.basis]
    # smallest coefficients first, so a reported counterexample is minimal
    shells = sorted(itertools.product(range(-bound, bound + 1), repeat=k),
                    key=lambda c: (max(map(abs, c)), [abs(v) for v in c], [-v for v in c]))
    for coeffs in shells:
        if not any(coeffs):
            continue
        mu = sum((c * m for c, m in zip(coeffs, mus)), Fraction(0))
        if mu < 0:
            continue
        vec = lat.combination(coeffs)
        if max(vec) <= mu / 2:
            return StrongVerdict("counterexample", bound, vec, lat.regions, _as_int(mu))
    return StrongVerdict("verified", bound, regions=lat.regions)


def nonnegative_domains(d: PointedDiagram, x: Generator, y: Generator, n_z: int, bound: int,
                        pin_w: bool = False) -> List[Domain]:
    """Non-negative domains from ``x`` to ``y`` with the given ``n_z`` whose
    lattice coordinates lie in ``[-bound, bound]``."""
    system = domain_system(d, _pins(d, True, pin_w))
    sol = system.solve(x, y, (n_z,))
    if sol is None:
        return []
    out = []
    lat = sol.lattice
    for coeffs in itertools.product(range(-bound, bound + 1), repeat=lat.rank):
        dom = sol.particular.shifted(lat.combination(coeffs))
        if dom.is_nonnegative():
            out.append(dom)
    return out


def connecting_domains(d: PointedDiagram, x: Generator, y: Generator, bound: int) -> List[Domain]:
    """Domains from ``x`` to ``y`` with free basepoint multiplicities whose
    lattice coordinates lie in ``[-bound, bound]``."""
    sol = domain_system(d).solve(x, y)
    if sol is None:
        return []
    lat = sol.lattice
    return [sol.particular.shifted(lat.combination(c))
            for c in itertools.product(range(-bound, bound + 1), repeat=lat.rank)]


def all_generators(d: PointedDiagram) -> Tuple[Generator, ...]:
    return generators_of(d)
