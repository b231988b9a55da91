"""Generators, first homology of the three-manifold and Spin^c classes."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, NamedTuple, Optional, Tuple

from .diagram import ALPHA, BETA, KINDS, Dart, PointedDiagram
from .zlinalg.intmat import IntegerSystem, matmul, matvec, smith_normal_form


class Generator(NamedTuple):
    """One intersection point on each alpha curve; ``perm[i]`` is the index
    of the beta curve through ``points[i]``."""

    points: Tuple[str, ...]
    perm: Tuple[int, ...]

    @property
    def name(self) -> str:
        return ",".join(self.points) if self.points else "()"

    def __str__(self):
        return self.name


def enumerate_generators(d: PointedDiagram) -> List[Generator]:
    """All generators, ordered by permutation and then by position along the
    alpha curves."""
    loc = d.point_location
    out: List[Generator] = []
    g = d.genus
    chosen: List[str] = []
    used = [False] * g

    def rec(i):
        if i == g:
            out.append(Generator(tuple(chosen), tuple(loc[p][BETA][0] for p in chosen)))
            return
        for p in d.alpha[i]:
            j = loc[p][BETA][0]
            if not used[j]:
                used[j] = True
                chosen.append(p)
                rec(i + 1)
                chosen.pop()
                used[j] = False

    rec(0)
    pos = {p: loc[p][ALPHA][1] for p in d.points}
    out.sort(key=lambda x: (x.perm, tuple(pos[p] for p in x.points)))
    return out


def generator_by_name(d: PointedDiagram, name: str) -> Generator:
    for x in generators_of(d):
        if x.name == name:
            return x
    raise KeyError(name)


@lru_cache(maxsize=256)
def generators_of(d: PointedDiagram) -> Tuple[Generator, ...]:
    return tuple(enumerate_generators(d))


@dataclass(frozen=True)
class AbelianGroup:
    """``Z^free_rank + Z/t_1 + ... `` with ``t_1 | t_2 | ...`` and each ``t_i > 1``."""

    free_rank: int
    torsion: Tuple[int, ...] = ()

    @property
    def order(self) -> Optional[int]:
        if self.free_rank:
            return None
        n = 1
        for t in self.torsion:
            n *= t
        return n

    @property
    def is_trivial(self) -> bool:
        return not self.free_rank and not self.torsion

    def __str__(self):
        parts = ["Z"] * self.free_rank + [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"


def intersection_matrix(d: PointedDiagram) -> List[List[int]]:
    """Algebraic intersection numbers ``alpha_i . beta_j``."""
    m = [[0] * d.genus for _ in range(d.genus)]
    for p, s in d.signs.items():
        loc = d.point_location[p]
        m[loc[ALPHA][0]][loc[BETA][0]] += s
    return m


def group_from_presentation(rel: List[List[int]], gens: int) -> AbelianGroup:
    """Cokernel of a ``gens x m`` relation matrix."""
    if not gens:
        return AbelianGroup(0)
    cols = len(rel[0]) if rel else 0
    _, dmat, _ = smith_normal_form(rel, cols)
    diag = [abs(dmat[i][i]) for i in range(min(gens, cols))]
    nonzero = [x for x in diag if x]
    return AbelianGroup(gens - len(nonzero), tuple(x for x in nonzero if x > 1))


class _Homology:
    """Integer cellular model of the Heegaard surface.

    Vertices are the intersection points, one extra vertex per point-free
    curve and one vertex per region.  Edges are the curve segments, one spoke
    from each region vertex to every boundary cycle and ``2 * genus(R)``
    loops per region.  Each region is a single 2-cell whose boundary, after
    abelianising, is the sum of its boundary cycles.
    """

    def __init__(self, d: PointedDiagram):
        self.d = d
        segs = d.segments()
        self.seg_index = {s: i for i, s in enumerate(segs)}
        vertices = {p: i for i, p in enumerate(d.points)}
        for kind in KINDS:
            for i, c in enumerate(d.curves(kind)):
                if not c:
                    vertices[("virtual", kind, i)] = len(vertices)
        for r in d.regions:
            vertices[("region", r.name)] = len(vertices)
        edges: List[Tuple[int, int]] = []  # (tail, head) vertex indices
        for kind, i, k in segs:
            ends = d.segment_endpoints(kind, i, k)
            if ends is None:
                v = vertices[("virtual", kind, i)]
                edges.append((v, v))
            else:
                edges.append((vertices[ends[0]], vertices[ends[1]]))
        for r in d.regions:
            vr = vertices[("region", r.name)]
            for cyc in r.boundary:
                start = d.dart_start(cyc[0])
                tgt = vertices[start] if start is not None else vertices[("virtual", cyc[0].kind, cyc[0].index)]
                edges.append((vr, tgt))
            edges.extend([(vr, vr)] * (2 * r.genus))
        self.n_edges = len(edges)
        nv = len(vertices)
        d1 = [[0] * self.n_edges for _ in range(nv)]
        for j, (a, b) in enumerate(edges):
            d1[b][j] += 1
            d1[a][j] -= 1
        kernel = IntegerSystem(d1, self.n_edges).kernel  # tuples, each an edge vector
        self.rank_z1 = len(kernel)
        kmat = [[kernel[c][r] for c in range(self.rank_z1)] for r in range(self.n_edges)]
        # left inverse of the (saturated) kernel basis
        if self.rank_z1:
            uk, _, vk = smith_normal_form(kmat, self.rank_z1)
            self.left_inverse = matmul(vk, uk[: self.rank_z1])
        else:
            self.left_inverse = []
        relations = []
        for r in d.regions:
            relations.append(self.chain(x for x in r.darts()))
        for kind in KINDS:
            for i in range(len(d.curves(kind))):
                relations.append(self.chain(Dart(kind, i, k, False) for k in range(d.segment_count(kind, i))))
        rel = [[0] * len(relations) for _ in range(self.rank_z1)]
        for j, v in enumerate(relations):
            c = self.coordinates(v)
            for i in range(self.rank_z1):
                rel[i][j] = c[i]
        if self.rank_z1 and relations:
            u, dm, _ = smith_normal_form(rel, len(relations))
            diag = [abs(dm[i][i]) for i in range(min(self.rank_z1, len(relations)))]
        else:
            u, diag = [[int(i == j) for j in range(self.rank_z1)] for i in range(self.rank_z1)], []
        diag = diag + [0] * (self.rank_z1 - len(diag))
        self.moduli = []  # 0 for a free coordinate
        keep = []
        for i, x in enumerate(diag):
            if x != 1:
                keep.append(i)
                self.moduli.append(x)
        self.reducer = [u[i] for i in keep]
        torsion = tuple(x for x in self.moduli if x)
        self.group = AbelianGroup(sum(1 for x in self.moduli if not x), tuple(sorted(torsion)))

    def chain(self, darts) -> List[int]:
        v = [0] * self.n_edges
        for x in darts:
            v[self.seg_index[(x.kind, x.index, x.segment)]] += -1 if x.reversed else 1
        return v

    def coordinates(self, cycle: List[int]) -> List[int]:
        if not self.rank_z1:
            return []
        return matvec(self.left_inverse, cycle)

    def reduce(self, cycle: List[int]) -> Tuple[int, ...]:
        c = self.coordinates(cycle)
        out = []
        for row, m in zip(self.reducer, self.moduli):
            val = sum(a * b for a, b in zip(row, c))
            out.append(val % m if m else val)
        return tuple(out)


@lru_cache(maxsize=128)
def _homology(d: PointedDiagram) -> _Homology:
    return _Homology(d)


def first_homology(d: PointedDiagram) -> AbelianGroup:
    """H_1 of the three-manifold: H_1(surface) modulo the curve classes."""
    return _homology(d).group


def connecting_chain(d: PointedDiagram, x: Generator, y: Generator) -> List[Dart]:
    """Segments along alpha from ``x`` to ``y`` and along beta from ``y`` to ``x``."""
    out = []
    loc = d.point_location
    for kind, src, dst in ((ALPHA, x, y), (BETA, y, x)):
        start = {loc[p][kind][0]: loc[p][kind][1] for p in src.points}
        end = {loc[p][kind][0]: loc[p][kind][1] for p in dst.points}
        for i, a in start.items():
            n = len(d.curves(kind)[i])
            k = a
            while k != end[i]:
                out.append(Dart(kind, i, k, False))
                k = (k + 1) % n
    return out


def epsilon(d: PointedDiagram, x: Generator, y: Generator) -> Tuple[int, ...]:
    """Coordinates of the obstruction class in H_1; all zeros means it vanishes.

    Torsion coordinates are reduced modulo their order; the ordering follows
    the free part and torsion part of the Smith decomposition.
    """
    h = _homology(d)
    return h.reduce(h.chain(connecting_chain(d, x, y)))


def epsilon_vanishes(d: PointedDiagram, x: Generator, y: Generator) -> bool:
    return not any(epsilon(d, x, y))


@dataclass(frozen=True)
class SpincClass:
    index: int
    generators: Tuple[Generator, ...]
    # epsilon of the class representative relative to the first representative
    offset: Tuple[int, ...]

    @property
    def representative(self) -> Generator:
        return self.generators[0]

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(x.name for x in self.generators)


@dataclass(frozen=True)
class SpincPartition:
    diagram: PointedDiagram = field(repr=False)
    h1: AbelianGroup
    classes: Tuple[SpincClass, ...]

    def class_of(self, x: Generator) -> SpincClass:
        for c in self.classes:
            if x in c.generators:
                return c
        raise KeyError(x)

    def witness(self, x: Generator, y: Generator) -> List[Dart]:
        """A 1-chain from ``x`` to ``y`` whose class is ``epsilon(x, y)``."""
        return connecting_chain(self.diagram, x, y)

    def difference(self, x: Generator, y: Generator) -> Tuple[int, ...]:
        return epsilon(self.diagram, x, y)


@lru_cache(maxsize=128)
def partition_spinc(d: PointedDiagram) -> SpincPartition:
    """Group generators into classes on which epsilon vanishes."""
    gens = generators_of(d)
    classes: Dict[Tuple[int, ...], List[Generator]] = {}
    if gens:
        base = gens[0]
        for x in gens:
            classes.setdefault(epsilon(d, base, x), []).append(x)
    out = tuple(SpincClass(i, tuple(v), k) for i, (k, v) in enumerate(classes.items()))
    return SpincPartition(d, first_homology(d), out)
