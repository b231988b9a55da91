import pytest

from nicehf.domains import connecting_domains
from nicehf.errors import ComputationRefused, NotNiceForKnot, NoValidTrace
from nicehf.floer import empty_polygons
from nicehf.knot import alexander_difference, alexander_gradings, hfk_hat, knot_differential, knot_trace

from _support import corpus, oracle


def test_unknot():
    h = hfk_hat(corpus("unknot"))
    assert h.classes[0].by_alexander() == {0: 1}
    assert h.centered
    r = knot_trace(corpus("unknot"))
    assert r.alpha_crossings == 0


def test_trefoil_profile():
    h = hfk_hat(corpus("trefoil_g1"))
    (c,) = h.classes
    assert c.by_alexander() == {-1: 1, 0: 1, 1: 1}
    assert h.symmetric and h.centered
    grades = sorted(c.dims)
    assert [m for _, m in grades] == [1, 0, -1]


def test_trefoil_matches_oracle():
    orc = oracle("trefoil_g1")
    assert orc["differential_entries"] == 0
    prof = {int(k): v for k, v in orc["alexander_profile"].items()}
    (c,) = hfk_hat(corpus("trefoil_g1")).classes
    assert c.by_alexander() == prof
    maslov = {int(k): v for k, v in orc["maslov_by_alexander"].items()}
    assert {a: m for a, m in c.dims} == maslov


def test_trefoil_minimal_not_knot_nice():
    with pytest.raises(NotNiceForKnot):
        knot_differential(corpus("trefoil_g1_minimal"))


def test_trefoil_trace_refused():
    with pytest.raises(NoValidTrace):
        knot_trace(corpus("trefoil_g1"))


def test_trace_violation():
    with pytest.raises(NoValidTrace):
        knot_trace(corpus("knot_trace_violation"))


def test_fig9_knot():
    k = corpus("s2xs1_fig9_knot")
    fc = knot_differential(k)
    assert fc.boundary("x") == ["y"]
    assert hfk_hat(k).total == 0


def test_requires_w():
    with pytest.raises(ComputationRefused) as exc:
        knot_differential(corpus("s3_g1"))
    assert exc.value.code == "NOT_DOUBLY_POINTED"


@pytest.mark.parametrize("name", ["trefoil_g1", "s2xs1_fig9_knot", "unknot", "legendrian_unknot"])
def test_knot_entries_dominated(name):
    # every polygon counted with n_w = 0 is also counted when w is forgotten
    d = corpus(name)
    k = knot_differential(d)
    gens = k.generators
    for (i, j), polys in k.polygons.items():
        hat = empty_polygons(d, gens[i], gens[j], knot=False, check_nice=False)
        assert {p.domain.multiplicities for p in polys} <= {p.domain.multiplicities for p in hat}
    hk = k.matrix.astype(bool)
    for (i, j) in zip(*hk.nonzero()):
        assert (j, i) in k.polygons


@pytest.mark.parametrize("name", ["trefoil_g1", "legendrian_unknot", "loss_ot"])
def test_alexander_independent_of_domain(name):
    d = corpus(name)
    gens = knot_differential(d).generators
    for x in gens[:4]:
        for y in gens:
            doms = connecting_domains(d, x, y, 2)
            vals = {dom[d.basepoint_z] - dom[d.basepoint_w] for dom in doms}
            assert len(vals) <= 1
            if vals:
                assert vals == {alexander_difference(d, x, y)}


def test_alexander_gradings_report():
    # the seven generators are symmetric about 0; the homology sits in [-1, 1]
    g = alexander_gradings(corpus("trefoil_g1"))
    assert sorted(g.values()) == sorted(-v for v in g.values())
    assert set(hfk_hat(corpus("trefoil_g1")).classes[0].by_alexander()) == {-1, 0, 1}
