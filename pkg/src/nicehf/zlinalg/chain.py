"""Finite chain complexes over F2, mapping cones and the triple complex."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..errors import DimensionMismatch, HypothesisViolation, NotAComplex, NotChainMap, NotNullHomotopy
from . import f2


@dataclass(frozen=True, eq=False)
class F2ChainComplex:
    """Basis-indexed complex; column ``j`` of ``differential`` is ``d(e_j)``.

    ``grading`` is optional.  When present the differential must lower it by
    one, modulo ``modulus`` if that is positive.
    """

    basis: Tuple[str, ...]
    differential: np.ndarray
    grading: Optional[Tuple[int, ...]] = None
    modulus: int = 0

    def __post_init__(self):
        d = f2.as_f2(self.differential) if len(self.basis) else np.zeros((0, 0), np.uint8)
        n = len(self.basis)
        if d.shape != (n, n):
            raise DimensionMismatch(f"differential has shape {d.shape}, basis has {n} elements")
        object.__setattr__(self, "differential", d)
        object.__setattr__(self, "basis", tuple(self.basis))
        if n and np.any(f2.matmul(d, d)):
            raise NotAComplex("differential does not square to zero")
        if self.grading is not None:
            g = tuple(int(x) for x in self.grading)
            if len(g) != n:
                raise DimensionMismatch("grading length differs from basis")
            if self.modulus:
                g = tuple(x % self.modulus for x in g)
            object.__setattr__(self, "grading", g)
            rows, cols = np.nonzero(d)
            for i, j in zip(rows, cols):
                if not self._drops_by_one(g[j], g[i]):
                    raise NotAComplex(
                        f"d({self.basis[j]}) hits {self.basis[i]} outside grading {g[j]} - 1")

    def _drops_by_one(self, src, dst):
        if self.modulus:
            return (src - 1 - dst) % self.modulus == 0
        return dst == src - 1

    def __len__(self):
        return len(self.basis)

    def index(self, name: str) -> int:
        return self.basis.index(name)

    def boundary(self, name: str) -> List[str]:
        j = self.index(name)
        return [self.basis[i] for i in np.flatnonzero(self.differential[:, j])]

    def restrict(self, names: Sequence[str]) -> "F2ChainComplex":
        idx = [self.index(n) for n in names]
        d = self.differential[np.ix_(idx, idx)]
        g = None if self.grading is None else tuple(self.grading[i] for i in idx)
        return F2ChainComplex(tuple(names), d, g, self.modulus)


@dataclass(frozen=True, eq=False)
class ChainMap:
    """An F2-linear map between complexes; ``matrix`` is target x source."""

    source: F2ChainComplex
    target: F2ChainComplex
    matrix: np.ndarray
    check: bool = field(default=True, repr=False)

    def __post_init__(self):
        m = f2.as_f2(self.matrix) if self.matrix.size else np.zeros(
            (len(self.target), len(self.source)), np.uint8)
        if m.shape != (len(self.target), len(self.source)):
            raise DimensionMismatch(f"map matrix has shape {m.shape}")
        object.__setattr__(self, "matrix", m)
        if self.check and not is_chain_map(self.source, self.target, m):
            raise NotChainMap("map does not commute with the differentials")


def is_chain_map(a: F2ChainComplex, b: F2ChainComplex, m) -> bool:
    if not len(a) or not len(b):
        return True
    lhs = f2.matmul(m, a.differential)
    rhs = f2.matmul(b.differential, m)
    return not np.any(lhs ^ rhs)


def _rank(m) -> int:
    return f2.rank(m) if m.size else 0


def f2_homology(c: F2ChainComplex) -> Dict[Optional[int], int]:
    """Homology dimensions per grading (key ``None`` when ungraded)."""
    n = len(c)
    if c.grading is None:
        return {None: n - 2 * _rank(c.differential)}
    g = np.asarray(c.grading)
    out = {}
    for k in sorted(set(c.grading)):
        src = np.flatnonzero(g == k)
        below = (k - 1) % c.modulus if c.modulus else k - 1
        above = (k + 1) % c.modulus if c.modulus else k + 1
        dst = np.flatnonzero(g == below)
        up = np.flatnonzero(g == above)
        r_out = _rank(c.differential[np.ix_(dst, src)]) if len(dst) else 0
        r_in = _rank(c.differential[np.ix_(src, up)]) if len(up) else 0
        out[k] = len(src) - r_out - r_in
    return out


def total_dimension(c: F2ChainComplex) -> int:
    return len(c) - 2 * _rank(c.differential) if len(c) else 0


def is_acyclic(c: F2ChainComplex) -> bool:
    return total_dimension(c) == 0


def homology_class(c: F2ChainComplex, cycle) -> Optional[np.ndarray]:
    """Coordinates of ``[cycle]`` in a fixed basis of homology.

    Returns ``None`` if ``cycle`` is not a cycle; an all-zero vector means the
    class vanishes.  The basis is the set of kernel vectors that complete the
    image to the kernel, chosen greedily in basis order.
    """
    v = (np.asarray(cycle, dtype=np.int64) & 1).astype(np.uint8)
    d = c.differential
    if np.any(f2.matmul(d, v.reshape(-1, 1))):
        return None
    im = d[:, np.flatnonzero(d.any(axis=0))] if d.size else np.zeros((len(c), 0), np.uint8)
    ker = f2.nullspace(d).T if len(c) else np.zeros((0, 0), np.uint8)
    # greedy completion of im to ker
    reps = []
    cur = im.copy()
    base_rank = _rank(cur)
    for k in range(ker.shape[1]):
        cand = np.hstack([cur, ker[:, k:k + 1]])
        rk = _rank(cand)
        if rk > base_rank:
            cur, base_rank = cand, rk
            reps.append(ker[:, k])
    if not reps:
        return np.zeros(0, dtype=np.uint8)
    basis = np.hstack([np.stack(reps, axis=1), im]) if im.size else np.stack(reps, axis=1)
    x = f2.solve(basis, v)
    return x[: len(reps)]


def mapping_cone(f: ChainMap) -> F2ChainComplex:
    """Cone on ``A + B`` with differential ``[[dA, 0], [f, dB]]``."""
    a, b = f.source, f.target
    na, nb = len(a), len(b)
    d = np.zeros((na + nb, na + nb), dtype=np.uint8)
    d[:na, :na] = a.differential
    d[na:, :na] = f.matrix
    d[na:, na:] = b.differential
    basis = tuple(f"A:{x}" for x in a.basis) + tuple(f"B:{x}" for x in b.basis)
    grading = None
    if a.grading is not None and b.grading is not None and a.modulus == b.modulus:
        grading = tuple(x + 1 for x in a.grading) + b.grading
    try:
        return F2ChainComplex(basis, d, grading, a.modulus if grading else 0)
    except NotAComplex:
        return F2ChainComplex(basis, d)


def _homotopy_defect(f1: ChainMap, f2_: ChainMap, h) -> np.ndarray:
    a, c = f1.source, f2_.target
    comp = f2.matmul(f2_.matrix, f1.matrix) if len(c) and len(a) else np.zeros((len(c), len(a)), np.uint8)
    if not len(c) or not len(a):
        return comp
    return comp ^ f2.matmul(c.differential, h) ^ f2.matmul(h, a.differential)


def triple_complex(f1: ChainMap, f2_: ChainMap, h) -> F2ChainComplex:
    """The complex on ``A + B + C`` with rows ``(dA 0 0; f1 dB 0; H f2 dC)``.

    Requires ``f2 f1 = dH + Hd``.
    """
    if f1.target is not f2_.source and f1.target.basis != f2_.source.basis:
        raise DimensionMismatch("f1 and f2 are not composable")
    a, b, c = f1.source, f1.target, f2_.target
    h = f2.as_f2(h) if np.asarray(h).size else np.zeros((len(c), len(a)), np.uint8)
    if h.shape != (len(c), len(a)):
        raise DimensionMismatch(f"homotopy has shape {h.shape}")
    if np.any(_homotopy_defect(f1, f2_, h)):
        raise NotNullHomotopy("f2 o f1 != dH + Hd")
    na, nb, nc = len(a), len(b), len(c)
    n = na + nb + nc
    d = np.zeros((n, n), dtype=np.uint8)
    d[:na, :na] = a.differential
    d[na:na + nb, :na] = f1.matrix
    d[na:na + nb, na:na + nb] = b.differential
    d[na + nb:, :na] = h
    d[na + nb:, na:na + nb] = f2_.matrix
    d[na + nb:, na + nb:] = c.differential
    basis = (tuple(f"A:{x}" for x in a.basis) + tuple(f"B:{x}" for x in b.basis)
             + tuple(f"C:{x}" for x in c.basis))
    return F2ChainComplex(basis, d)


def _induced_rank(f: ChainMap) -> int:
    """Rank of the map induced on homology."""
    a, b = f.source, f.target
    if not len(a) or not len(b):
        return 0
    ker = f2.nullspace(a.differential).T  # columns span cycles of A
    if ker.shape[1] == 0:
        return 0
    img = f2.matmul(f.matrix, ker)
    bd = b.differential
    return _rank(np.hstack([img, bd])) - _rank(bd)


def exact_at_middle(f1: ChainMap, f2_: ChainMap) -> bool:
    """Direct check that ``im f1_* = ker f2_*`` on homology of the middle term."""
    b = f1.target
    if not len(b):
        return True
    hb = total_dimension(b)
    r1 = _induced_rank(f1)
    r2 = _induced_rank(f2_)
    # composition vanishes on homology whenever a null-homotopy exists
    return r1 == hb - r2


@dataclass
class TripleReport:
    acyclic: bool
    exact_at_middle: bool

    @property
    def consistent(self) -> bool:
        # acyclicity of the triple complex implies exactness at the middle
        return (not self.acyclic) or self.exact_at_middle


def triple_exactness(f1: ChainMap, f2_: ChainMap, h) -> TripleReport:
    t = triple_complex(f1, f2_, h)
    return TripleReport(acyclic=is_acyclic(t), exact_at_middle=exact_at_middle(f1, f2_))


def is_quasi_isomorphism(f: ChainMap) -> bool:
    return is_acyclic(mapping_cone(f))


@dataclass
class ConeChainReport:
    psi_quasi_iso: List[bool]
    cone_map_iso: List[bool]

    @property
    def hypothesis_holds(self) -> bool:
        return all(self.psi_quasi_iso)

    @property
    def agrees(self) -> bool:
        return (not self.hypothesis_holds) or all(self.cone_map_iso)


def _compose(*mats):
    out = mats[-1]
    for m in reversed(mats[:-1]):
        out = f2.matmul(m, out)
    return out


def iterated_cone_check(complexes: Sequence[F2ChainComplex], maps: Sequence, homotopies: Sequence,
                        cyclic: bool = True) -> ConeChainReport:
    """Check the cone lemma on a sequence ``A_i --f_i--> A_{i+1}``.

    ``maps[i]`` is the matrix of ``f_i`` and ``homotopies[i]`` the matrix of
    ``H_i : A_i -> A_{i+2}`` with ``f_{i+1} f_i = dH_i + H_i d``.  With
    ``cyclic`` the indices wrap around.  Reports, per index, whether
    ``psi_i = f_{i+2} H_i + H_{i+1} f_i`` is a quasi-isomorphism and whether
    ``(H_i, f_{i+1}) : M(f_i) -> A_{i+2}`` is one.
    """
    n = len(complexes)
    if cyclic:
        count_f = count_h = n
    else:
        count_f, count_h = n - 1, n - 2

    def cx(i):
        return complexes[i % n] if cyclic else complexes[i]

    if len(maps) != count_f or len(homotopies) != count_h:
        raise DimensionMismatch("wrong number of maps or homotopies")
    fs = [ChainMap(cx(i), cx(i + 1), np.asarray(maps[i])) for i in range(count_f)]
    hs = []
    for i in range(count_h):
        h = f2.as_f2(homotopies[i]) if np.asarray(homotopies[i]).size else np.zeros(
            (len(cx(i + 2)), len(cx(i))), np.uint8)
        if h.shape != (len(cx(i + 2)), len(cx(i))):
            raise DimensionMismatch(f"H_{i} has shape {h.shape}")
        if np.any(_homotopy_defect(fs[i], fs[(i + 1) % count_f] if cyclic else fs[i + 1], h)):
            raise HypothesisViolation(f"f_{i + 1} o f_{i} is not null-homotopic via H_{i}")
        hs.append(h)

    def f_at(i):
        return fs[i % n] if cyclic else fs[i]

    def h_at(i):
        return hs[i % n] if cyclic else hs[i]

    psi_ok = []
    n_psi = n if cyclic else n - 3
    for i in range(max(n_psi, 0)):
        src, dst = cx(i), cx(i + 3)
        if not len(src) or not len(dst):
            psi = np.zeros((len(dst), len(src)), np.uint8)
        else:
            psi = _compose(f_at(i + 2).matrix, h_at(i)) ^ _compose(h_at(i + 1), f_at(i).matrix)
        psi_ok.append(is_quasi_isomorphism(ChainMap(src, dst, psi)))
    cone_ok = []
    n_cone = n if cyclic else n - 2
    for i in range(n_cone):
        f = f_at(i)
        m = mapping_cone(f)
        tgt = cx(i + 2)
        g = np.hstack([h_at(i), f_at(i + 1).matrix]) if len(m) and len(tgt) else np.zeros(
            (len(tgt), len(m)), np.uint8)
        cone_ok.append(is_quasi_isomorphism(ChainMap(m, tgt, g)))
    return ConeChainReport(psi_ok, cone_ok)


def direct_sum(*cs: F2ChainComplex) -> F2ChainComplex:
    n = sum(len(c) for c in cs)
    d = np.zeros((n, n), dtype=np.uint8)
    basis = []
    off = 0
    for k, c in enumerate(cs):
        m = len(c)
        d[off:off + m, off:off + m] = c.differential
        basis.extend(f"{k}:{x}" for x in c.basis)
        off += m
    return F2ChainComplex(tuple(basis), d)


def grading_counts(c: F2ChainComplex) -> Counter:
    return Counter(c.grading or ())
