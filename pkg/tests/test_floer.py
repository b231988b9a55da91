import numpy as np
import pytest

from nicehf.diagram import swap_roles
from nicehf.domains import maslov_index
from nicehf.errors import NotAdmissible, NotNice
from nicehf.floer import build_complex, differential, empty_polygons, hf_hat, is_nice
from nicehf.generators import generator_by_name

from _support import corpus

NICE = ["s3_g1", "s2xs1_fig9", "s2xs1_sum_fig10", "lens_2_1", "lens_3_1", "lens_4_1", "lens_5_1",
        "ob_ot_s3", "ob_s2xs1_trivial"]


def test_niceness_census():
    assert is_nice(corpus("s3_g1")).nice
    rep = is_nice(corpus("s2xs1_fig9"))
    assert rep.nice and rep.exempt == ("A",)
    rep = is_nice(corpus("hexagon_fixture"))
    assert not rep.nice and len(rep.offending) == 1
    hexagon = corpus("hexagon_fixture").region(rep.offending[0])
    assert len(hexagon.boundary[0]) == 6


def test_fig9_polygons():
    d = corpus("s2xs1_fig9")
    x, y = generator_by_name(d, "x"), generator_by_name(d, "y")
    polys = empty_polygons(d, x, y)
    assert len(polys) == 2
    assert sorted(p.domain.support for p in polys) == [("D1",), ("D2",)]
    assert all(p.arity == 2 for p in polys)
    assert empty_polygons(d, y, x) == []
    fc = differential(d)
    assert not fc.matrix.any()


def test_lens_no_polygons():
    d = corpus("lens_3_1")
    fc = differential(d)
    assert fc.matrix.shape == (3, 3) and not fc.matrix.any()
    assert not fc.polygons


@pytest.mark.parametrize("name,total", [("s3_g1", 1), ("s2xs1_fig9", 2), ("s2xs1_sum_fig10", 4),
                                        ("lens_2_1", 2), ("lens_5_1", 5), ("ob_ot_s3", 1)])
def test_totals(name, total):
    assert hf_hat(corpus(name)).total == total


def test_fig9_gradings():
    h = hf_hat(corpus("s2xs1_fig9"))
    (c,) = h.classes
    assert c.delta == 0 and c.dims == {0: 1, -1: 1}
    assert c.representative == "x"


@pytest.mark.parametrize("name", NICE)
def test_pruned_matches_unpruned(name):
    d = corpus(name)
    a = build_complex(d, prune=True)
    b = build_complex(d, prune=False)
    assert np.array_equal(a.matrix, b.matrix)
    assert set(a.polygons) == set(b.polygons)


@pytest.mark.parametrize("name", NICE)
def test_polygons_have_index_one(name):
    d = corpus(name)
    for polys in differential(d).polygons.values():
        for p in polys:
            assert maslov_index(d, p.domain) == 1
            assert p.domain[d.basepoint_z] == 0
            assert p.domain.is_nonnegative() and set(p.domain.multiplicities) <= {0, 1}


@pytest.mark.parametrize("name", NICE)
def test_swap_roles_transposes(name):
    d = corpus(name)
    s = swap_roles(d)
    if not is_nice(s):
        pytest.skip("swapped diagram is not nice")
    a, b = differential(d), differential(s)
    assert a.names == b.names
    assert np.array_equal(a.matrix, b.matrix.T)
    assert hf_hat(d).total == hf_hat(s).total


def test_refusals():
    with pytest.raises(NotNice) as exc:
        differential(corpus("hexagon_fixture"))
    assert exc.value.code == "NOT_NICE" and exc.value.details["offending"]
    with pytest.raises(NotAdmissible) as exc:
        differential(corpus("non_admissible_fixture"))
    assert exc.value.code == "NOT_ADMISSIBLE"
    w = exc.value.details["witness"]
    assert w and (all(v >= 0 for v in w.values()) or all(v <= 0 for v in w.values()))
