import json

import pytest

from nicehf.build import diagram_from_curves, trace_faces
from nicehf.diagram import (ContactMarking, Dart, canonical_form, diagram_from_dict, diagram_to_dict,
                            dump_diagram, parse_diagram, quadrant_map, same_diagram, swap_roles)
from nicehf.errors import DiagramSyntaxError, UnknownRegion, ValidationError

from _support import all_corpus, corpus


def fig9_doc():
    return diagram_to_dict(corpus("s2xs1_fig9"))


@pytest.mark.parametrize("name", all_corpus())
def test_corpus_valid_and_roundtrips(name):
    d = corpus(name)
    assert d.euler_sum() == 2 - 2 * d.genus
    assert parse_diagram(dump_diagram(d)) == d


def test_fig9_regions():
    d = corpus("s2xs1_fig9")
    assert [r.name for r in d.regions] == ["A", "D1", "D2"]
    assert d.region("D1").corners == 2 and d.region("D1").is_disc
    assert d.region("A").euler_characteristic == 0
    assert d.region("D1").euler_measure == 0.5
    with pytest.raises(UnknownRegion):
        d.region("nope")


def mutate(fn):
    doc = fig9_doc()
    fn(doc)
    return doc


def _drop_region(doc):
    doc["regions"].pop()


def _dup_point(doc):
    doc["points"].append("x")


def _unknown_point(doc):
    doc["alpha"][0][0] = "q"


def _genus(doc):
    doc["genus"] = 2


def _dup_region(doc):
    doc["regions"][1]["name"] = "A"


def _region_genus(doc):
    doc["regions"][0]["genus"] = -1


def _empty_cycle(doc):
    doc["regions"][1]["boundary"].append([])


def _bad_segment(doc):
    doc["regions"][1]["boundary"][0][0]["segment"] = 7


def _flip_dart(doc):
    e = doc["regions"][1]["boundary"][0][0]
    e["reversed"] = not e["reversed"]


def _z_unknown(doc):
    doc["basepoint_z"] = "Q"


def _contact(doc):
    doc["contact"] = {"eh": ["x", "y"]}


def _euler(doc):
    doc["regions"][0]["genus"] = 1


@pytest.mark.parametrize("fn,code", [
    (_drop_region, "ARC_USAGE"),
    (_dup_point, "DUPLICATE_POINT"),
    (_unknown_point, "UNKNOWN_POINT"),
    (_genus, "CURVE_COUNT"),
    (_dup_region, "DUPLICATE_REGION"),
    (_region_genus, "REGION_GENUS"),
    (_empty_cycle, "EMPTY_CYCLE"),
    (_bad_segment, "ARC_USAGE"),
    (_flip_dart, "ARC_USAGE"),
    (_z_unknown, "UNKNOWN_BASEPOINT_REGION"),
    (_contact, "CONTACT_MARKING"),
    (_euler, "EULER_MISMATCH"),
])
def test_validation_codes(fn, code):
    with pytest.raises(ValidationError) as exc:
        diagram_from_dict(mutate(fn))
    assert exc.value.code == code


def test_wrong_signs_break_local_structure():
    # regions traced with one sign convention, validated against the other
    d = corpus("s2xs1_fig9")
    doc = diagram_to_dict(d)
    doc["beta"][0] = list(reversed(doc["beta"][0]))
    with pytest.raises(ValidationError):
        diagram_from_dict(doc)


def test_alternation():
    d = corpus("s3_g1")
    doc = diagram_to_dict(d)
    r = doc["regions"][0]["boundary"][0]
    r[1], r[2] = r[2], r[1]
    with pytest.raises(ValidationError) as exc:
        diagram_from_dict(doc)
    assert exc.value.code in ("ALTERNATION", "CYCLE_CONTINUITY")


def test_complement_disconnected():
    # two parallel alpha curves on a genus-2 surface cut off an annulus
    with pytest.raises(ValidationError):
        diagram_from_curves([["p"], ["q"]], [["p", "q"], []], {"p": 1, "q": 1})


@pytest.mark.parametrize("text", [
    "not json",
    "[]",
    json.dumps({"format": "phd-0"}),
    json.dumps(dict(fig9_doc(), extra=1)),
    json.dumps(dict(fig9_doc(), genus="1")),
])
def test_syntax_errors(text):
    with pytest.raises(DiagramSyntaxError):
        parse_diagram(text)


def test_quadrants():
    d = corpus("s2xs1_fig9")
    q = quadrant_map(d)
    assert set(q) == {"x", "y"}
    # every point touches both bigons and the annulus twice
    for p in q:
        assert sorted(q[p].values()) == ["A", "A", "D1", "D2"]


def test_lens_quadrants_repeat_regions():
    # with p = 3 the squares wrap around, so a point meets only three regions
    q = quadrant_map(corpus("lens_3_1"))
    assert all(len(set(v.values())) < 4 for v in q.values())


def test_swap_roles_involution():
    for name in ("s2xs1_fig9", "lens_3_1", "trefoil_g1"):
        d = corpus(name)
        s = swap_roles(d)
        assert s.alpha == d.beta and s.beta == d.alpha
        assert all(s.signs[p] == -d.signs[p] for p in d.points)
        assert swap_roles(s) == d


def test_canonical_form():
    d = corpus("lens_4_1")
    renamed = d.__class__(d.genus, d.points, d.alpha, d.beta,
                          tuple(r.__class__("Q" + r.name, r.genus, r.boundary) for r in d.regions),
                          "Q" + d.basepoint_z)
    assert same_diagram(d, renamed)
    assert canonical_form(renamed).basepoint_z == canonical_form(d).basepoint_z


def test_trace_faces_point_free():
    faces = trace_faces([[]], [[]], {})
    assert faces == [(Dart("alpha", 0, 0, False),), (Dart("alpha", 0, 0, True),),
                     (Dart("beta", 0, 0, False),), (Dart("beta", 0, 0, True),)]


def test_with_contact():
    d = corpus("s3_g1").with_contact(ContactMarking(("q",)))
    assert d.contact.eh == ("q",)
