"""The contact element of an open-book-induced diagram.

The marked generator ``EH`` is examined in the complex of the diagram with
the roles of the two curve systems exchanged.  That complex computes the
homology of the orientation-reversed manifold, and its differential is the
transpose of the original one.  Coefficients are in the two-element field,
so sign ambiguities do not arise.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .diagram import PointedDiagram, swap_roles
from .errors import InternalInvariantFailure, InvalidMarking, NotACycle
from .floer import FloerComplex, differential
from .generators import Generator
from .knot import knot_differential
from .moves import stabilize
from .zlinalg import f2
from .zlinalg.chain import F2ChainComplex, homology_class

FIELD = "F2"


def marked_generator(d: PointedDiagram) -> Generator:
    if d.contact is None:
        raise InvalidMarking("diagram carries no contact marking")
    eh = d.contact.eh
    loc = d.point_location
    for i, p in enumerate(eh):
        if p not in loc or loc[p]["alpha"][0] != i or loc[p]["beta"][0] != i:
            raise InvalidMarking(f"marked point {p!r} is not on alpha_{i} and beta_{i}", point=p)
    return Generator(tuple(eh), tuple(range(len(eh))))


def _swapped(d: PointedDiagram, knot: bool) -> Tuple[FloerComplex, int]:
    """Complex of the role-swapped diagram and the index of EH in it."""
    x = marked_generator(d)
    s = swap_roles(d)
    fc = knot_differential(s) if knot else differential(s)
    # in the swapped diagram EH lies on beta_i and alpha_i with the same index
    return fc, fc.names.index(x.name)


def contact_cycle_check(d: PointedDiagram, knot: bool = False) -> bool:
    """Whether the swapped differential kills ``EH``."""
    fc, j = _swapped(d, knot)
    return not fc.matrix[:, j].any()


@dataclass(frozen=True)
class ContactClass:
    nonzero: bool
    coordinates: Optional[Tuple[int, ...]]
    spinc_index: int
    generator: str
    field: str = FIELD
    loss_oriented: Optional[bool] = None
    # knot mode: Alexander grading of every generator of the class, EH at 0
    alexander: Optional[Tuple[Tuple[str, int], ...]] = None

    def as_dict(self) -> dict:
        out = {"class": "Nonzero" if self.nonzero else "Zero", "generator": self.generator,
               "spinc_class": self.spinc_index, "field": self.field,
               "coordinates": list(self.coordinates) if self.coordinates is not None else None}
        if self.alexander is not None:
            out["loss_oriented"] = self.loss_oriented
            out["alexander_relative_to_eh"] = dict(self.alexander)
        return out


def _class(d: PointedDiagram, knot: bool) -> ContactClass:
    fc, j = _swapped(d, knot)
    if fc.matrix[:, j].any():
        raise NotACycle("EH is not a cycle in the swapped complex", generator=fc.names[j])
    x = fc.generators[j]
    cc = fc.class_of(x)
    cx: F2ChainComplex = cc.complex
    v = np.zeros(len(cx), dtype=np.uint8)
    v[cx.index(x.name)] = 1
    alexander = None
    if knot:
        a0 = cc.alexander[cx.index(x.name)]
        alexander = tuple((n, a - a0) for n, a in zip(cx.basis, cc.alexander))
        # restrict to the Alexander summand of EH; the differential preserves it
        a = cc.alexander[cx.index(x.name)]
        names = [n for n, b in zip(cx.basis, cc.alexander) if b == a]
        cx = cx.restrict(names)
        v = np.zeros(len(cx), dtype=np.uint8)
        v[cx.index(x.name)] = 1
    coords = homology_class(cx, v)
    nonzero = bool(coords is not None and coords.any())
    lo = d.contact.loss_oriented if d.contact is not None else None
    return ContactClass(nonzero, tuple(int(c) for c in coords) if nonzero else None,
                        cc.spinc.index, x.name, FIELD, lo, alexander)


def contact_class(d: PointedDiagram) -> ContactClass:
    """Decide whether ``[EH]`` vanishes in the hat homology of the swapped diagram."""
    return _class(d, knot=False)


def loss_class(d: PointedDiagram) -> ContactClass:
    """The same decision in the swapped doubly pointed complex."""
    return _class(d, knot=True)


def eh_is_boundary(d: PointedDiagram) -> bool:
    """Direct linear solve: ``EH`` lies in the image of the swapped differential."""
    fc, j = _swapped(d, False)
    e = np.zeros(len(fc.names), dtype=np.uint8)
    e[j] = 1
    return f2.in_column_span(fc.matrix, e)


def giroux_stabilize_marked(d: PointedDiagram, host_region: str) -> PointedDiagram:
    """Stabilize and extend the marking by the new intersection point.

    The contact verdict is recomputed on both sides; a change is reported as
    an internal failure since stabilization preserves the class.
    """
    if d.contact is None:
        raise InvalidMarking("diagram carries no contact marking")
    new = stabilize(d, host_region)
    before, after = contact_class(d).nonzero, contact_class(new).nonzero
    if before != after:
        raise InternalInvariantFailure("contact verdict changed under stabilization",
                                       before=before, after=after)
    return new
