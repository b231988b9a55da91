"""Regenerate the bundled corpus and the trefoil brute-force oracle.

Every diagram is built from curves and moves, then checked against the
property it is meant to exhibit before it is written out.  Run from the
repository root:

    python3 scripts/build_corpus.py [--check]

With ``--check`` nothing is written; the script exits non-zero if a file on
disk differs from what would be generated.
"""
from __future__ import annotations

import argparse
import itertools
import json
import sys
from fractions import Fraction
from pathlib import Path

from nicehf.build import diagram_from_curves
from nicehf.contact import contact_class, contact_cycle_check, loss_class
from nicehf.diagram import ContactMarking, PointedDiagram, diagram_to_dict
from nicehf.domains import Domain, maslov_index
from nicehf.errors import NoValidTrace, NotAdmissible, NotNice
from nicehf.floer import differential, hf_hat, is_nice
from nicehf.generators import generators_of, partition_spinc
from nicehf.knot import hfk_hat, knot_trace
from nicehf.moves import collapse_bigon, connected_sum, finger_move

CORPUS = Path(__file__).resolve().parents[1] / "src" / "nicehf" / "corpus"
ORACLE_BOUND = 3


# -- seeds ------------------------------------------------------------------------


def s3_g1() -> PointedDiagram:
    return diagram_from_curves([["q"]], [["q"]], {"q": 1})


def s2xs1_fig9() -> PointedDiagram:
    # faces 1 and 2 glue to the z-annulus; the two bigons both run x -> y
    return diagram_from_curves([["x", "y"]], [["x", "y"]], {"x": 1, "y": -1},
                               groups=[[1, 2], [0], [3]], names=["A", "D1", "D2"])


def lens(p: int) -> PointedDiagram:
    pts = [f"x{i}" for i in range(p)]
    return diagram_from_curves([pts], [pts], {q: 1 for q in pts})


def trefoil_minimal() -> PointedDiagram:
    d = diagram_from_curves([["a", "b", "c"]], [["a", "b", "c"]], {"a": -1, "b": 1, "c": 1})
    return d.with_basepoints(z="R1", w="R2")


def trefoil_nice() -> PointedDiagram:
    d = finger_move(trefoil_minimal(), (0, 0), "R0", (0, 0))
    return finger_move(d, (0, 4), "R0", (0, 4))


def ob_ot() -> PointedDiagram:
    # same curves as the minimal trefoil with all signs reversed, so the
    # bigons leave the marked point a
    d = diagram_from_curves([["a", "b", "c"]], [["a", "b", "c"]], {"a": 1, "b": -1, "c": -1})
    octagon = next(r.name for r in d.regions if r.corners > 4)
    return d.with_basepoints(z=octagon).with_contact(ContactMarking(("a",)))


def legendrian_unknot(reverse: bool) -> PointedDiagram:
    d = finger_move(s3_g1().with_contact(ContactMarking(("q",))), (0, 0), "R0", (0, 0))
    z, w = ("R0_", "R0") if reverse else ("R0", "R0_")
    return d.with_basepoints(z=z, w=w).with_contact(ContactMarking(("q",), loss_oriented=not reverse))


# -- checks -----------------------------------------------------------------------


def _dims(d):
    return [c.dims for c in hf_hat(d).classes]


def _expect(cond, what):
    if not cond:
        raise SystemExit(f"corpus check failed: {what}")


def build() -> dict:
    out = {}

    d = s3_g1()
    _expect(hf_hat(d).total == 1, "s3_g1 total dimension 1")
    out["s3_g1"] = d

    d = s2xs1_fig9()
    names = [x.name for x in generators_of(d)]
    _expect(names == ["x", "y"], "fig9 generator order")
    fc = differential(d)
    _expect(not fc.matrix.any() and len(fc.polygons.get((0, 1), ())) == 2, "fig9 two bigons x -> y")
    _expect(hf_hat(d).total == 2, "fig9 dimension 2")
    out["s2xs1_fig9"] = d

    s = connected_sum(d, "A", d, "A", ("1", "2"))
    _expect(len(generators_of(s)) == 4 and hf_hat(s).total == 4 and len(partition_spinc(s).classes) == 1,
            "fig10 census")
    out["s2xs1_sum_fig10"] = s

    k = d.with_basepoints(w="D1")
    h = hfk_hat(k)
    _expect(h.total == 0, "fig9 with w in D1 is acyclic")
    out["s2xs1_fig9_knot"] = k

    for p in range(2, 6):
        d = lens(p)
        hh = hf_hat(d)
        _expect(str(hh.h1) == f"Z/{p}" and len(hh.classes) == p and all(c.total == 1 for c in hh.classes),
                f"lens {p}")
        out[f"lens_{p}_1"] = d

    t0 = trefoil_minimal()
    _expect(not is_nice(t0, knot=True).nice, "minimal trefoil is not knot-nice")
    out["trefoil_g1_minimal"] = t0
    t = trefoil_nice()
    _expect(is_nice(t, knot=True).nice, "trefoil_g1 knot-nice")
    prof = hfk_hat(t).classes[0].by_alexander()
    _expect(prof == {-1: 1, 0: 1, 1: 1}, f"trefoil profile {prof}")
    try:
        knot_trace(t)
        _expect(False, "trefoil trace expected to fail")
    except NoValidTrace:
        pass
    out["trefoil_g1"] = t

    hexa = finger_move(trefoil_minimal(), (0, 0), "R0", (0, 0)).with_basepoints(w=None)
    try:
        differential(hexa)
        _expect(False, "hexagon fixture refused")
    except NotNice as exc:
        _expect(len(exc.details["offending"]) == 1, "exactly one offending region")
    out["hexagon_fixture"] = hexa

    na = collapse_bigon(s2xs1_fig9(), "D1")
    try:
        differential(na)
        _expect(False, "non-admissible fixture refused")
    except NotAdmissible:
        pass
    out["non_admissible_fixture"] = na

    u = s3_g1().with_basepoints(w="R0")
    _expect(hfk_hat(u).classes[0].by_alexander() == {0: 1}, "unknot")
    knot_trace(u)
    out["unknot"] = u

    v = lens(5).with_basepoints(z="R0", w="R3")
    try:
        knot_trace(v)
        _expect(False, "trace violation fixture")
    except NoValidTrace:
        pass
    out["knot_trace_violation"] = v

    d = s3_g1().with_contact(ContactMarking(("q",)))
    _expect(contact_class(d).nonzero, "ob_tight_s3 nonzero")
    out["ob_tight_s3"] = d

    d = ob_ot()
    _expect(contact_cycle_check(d) and not contact_class(d).nonzero, "ob_ot_s3 zero")
    _expect(not contact_cycle_check(d.with_contact(ContactMarking(("b",)))), "b is not a cycle")
    out["ob_ot_s3"] = d

    d = s2xs1_fig9().with_contact(ContactMarking(("x",)))
    _expect(contact_class(d).nonzero, "ob_s2xs1_trivial nonzero")
    out["ob_s2xs1_trivial"] = d

    for rev, name in ((False, "legendrian_unknot"), (True, "legendrian_unknot_rev")):
        d = legendrian_unknot(rev)
        _expect(loss_class(d).nonzero, name)
        out[name] = d

    d = ob_ot().with_basepoints(w="R0").with_contact(ContactMarking(("a",), loss_oriented=True))
    _expect(contact_cycle_check(d, knot=True) and not loss_class(d).nonzero, "loss_ot zero")
    out["loss_ot"] = d
    return out


# -- brute-force oracle -----------------------------------------------------------


def _boundary_ok(d: PointedDiagram, m: dict, x, y) -> bool:
    """Direct substitution into the point equations of a domain from x to y."""
    left = d.dart_region
    for kind, curves, sgn in (("alpha", d.alpha, 1), ("beta", d.beta, -1)):
        for i, c in enumerate(curves):
            n = len(c)
            coef = []
            for k in range(max(n, 1)):
                fwd = next(dt for dt in left if dt.kind == kind and dt.index == i and dt.segment == k
                           and not dt.reversed)
                rev = fwd.flip()
                coef.append(m[left[fwd]] - m[left[rev]])
            for k, p in enumerate(c):
                jump = coef[(k - 1) % n] - coef[k]
                want = sgn * ((p in y.points) - (p in x.points))
                if jump != want:
                    return False
    return True


def trefoil_oracle(d: PointedDiagram) -> dict:
    gens = generators_of(d)
    names = [r.name for r in d.regions]
    z, w = d.basepoint_z, d.basepoint_w
    rows = []
    alex, gr = {}, {}
    for x, y in itertools.product(gens, repeat=2):
        found = []
        for vals in itertools.product(range(-ORACLE_BOUND, ORACLE_BOUND + 1), repeat=len(names)):
            m = dict(zip(names, vals))
            if _boundary_ok(d, m, x, y):
                dom = Domain(x, y, tuple(names), vals)
                found.append((m, maslov_index(d, dom)))
        counted = [m for m, mu in found if mu == 1 and m[z] == 0 and m[w] == 0
                   and all(v >= 0 for v in m.values())]
        adiff = {m[z] - m[w] for m, _ in found}
        gdiff = {mu - 2 * m[z] for m, mu in found}
        rows.append({"from": x.name, "to": y.name, "domains": len(found),
                     "counted_nonnegative": len(counted),
                     "alexander_difference": sorted(adiff), "maslov_difference": sorted(str(g) for g in gdiff)})
        if x == gens[0]:
            # A(x0) - A(y) = n_z - n_w and gr(x0) - gr(y) = mu - 2 n_z
            alex[y.name] = -next(iter(adiff)) if adiff else None
            gr[y.name] = -next(iter(gdiff)) if gdiff else None
    a0 = sorted(v for v in alex.values())
    shift = -(a0[0] + a0[-1]) // 2 if a0 else 0
    profile = {}
    for v in alex.values():
        profile[str(v + shift)] = profile.get(str(v + shift), 0) + 1
    maslov = {str(alex[n] + shift): int(Fraction(gr[n]) - Fraction(gr[gens[0].name])) for n in alex}
    return {
        "diagram": "trefoil_g1_minimal",
        "bound": ORACLE_BOUND,
        "method": "all multiplicity vectors with entries in [-bound, bound], boundary checked by substitution",
        "pairs": rows,
        "differential_entries": sum(r["counted_nonnegative"] for r in rows),
        "alexander_profile": profile,
        "maslov_by_alexander": maslov,
    }


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--check", action="store_true")
    args = ap.parse_args(argv)
    docs = {name: diagram_to_dict(d) for name, d in build().items()}
    docs["trefoil_g1_oracle"] = trefoil_oracle(trefoil_minimal())
    (CORPUS / "oracles").mkdir(exist_ok=True)
    stale = []
    for name, doc in sorted(docs.items()):
        text = json.dumps(doc, indent=1) + "\n"
        path = (CORPUS / "oracles" / "trefoil_g1.json") if name == "trefoil_g1_oracle" else CORPUS / f"{name}.json"
        if args.check:
            if not path.exists() or path.read_text(encoding="utf-8") != text:
                stale.append(name)
        else:
            path.write_text(text, encoding="utf-8")
    if stale:
        print("stale:", ", ".join(stale))
        return 1
    print(f"{len(docs)} files {'checked' if args.check else 'written'} in {CORPUS}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
