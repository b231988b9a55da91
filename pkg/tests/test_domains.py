import itertools
from fractions import Fraction

import pytest

from nicehf.domains import (Domain, connecting_domains, delta_s, euler_measure, extremely_weak_admissibility,
                            find_domain, is_domain, maslov_index, nonnegative_domains, point_measure,
                            sign_definite_check, strong_admissibility, weak_admissibility)
from nicehf.generators import enumerate_generators, generator_by_name, partition_spinc

from _support import corpus


def gen(d, name):
    return generator_by_name(d, name)


def test_fig9_domain_and_lattice():
    d = corpus("s2xs1_fig9")
    x, y = gen(d, "x"), gen(d, "y")
    sol = find_domain(d, x, y)
    dom = sol.particular
    assert dom["A"] == 0 and {dom["D1"], dom["D2"]} <= {0, 1} and dom["D1"] + dom["D2"] == 1
    (per,) = sol.lattice.domains()
    assert abs(per["D1"]) == 1 and per["D1"] == -per["D2"] and per["A"] == 0
    assert maslov_index(d, dom) == 1
    assert maslov_index(d, per) == 0
    assert is_domain(d, dom) and is_domain(d, per)


def test_trivial_domain():
    for name in ("s3_g1", "lens_3_1", "s2xs1_sum_fig10"):
        d = corpus(name)
        for x in enumerate_generators(d):
            sol = find_domain(d, x, x)
            assert not any(sol.particular.multiplicities)


def test_no_domain_across_classes():
    d = corpus("lens_3_1")
    assert find_domain(d, gen(d, "x0"), gen(d, "x1")) is None


def test_euler_measures():
    d = corpus("s2xs1_fig9")
    full = Domain(None, None, tuple(r.name for r in d.regions), (1, 1, 1))
    assert euler_measure(d, full) == 0
    assert euler_measure(d, Domain(None, None, ("A", "D1", "D2"), (0, 1, 0))) == Fraction(1, 2)
    sq = corpus("lens_3_1")
    assert euler_measure(sq, Domain(None, None, tuple(r.name for r in sq.regions), (1, 0, 0))) == 0


def test_point_measures():
    d = corpus("s2xs1_fig9")
    x = gen(d, "x")
    bigon = Domain(x, gen(d, "y"), ("A", "D1", "D2"), (0, 1, 0))
    assert point_measure(d, bigon, x) == Fraction(1, 4)
    full = Domain(x, x, ("A", "D1", "D2"), (1, 1, 1))
    assert point_measure(d, full, x) == 1
    zero = Domain(x, x, ("A", "D1", "D2"), (0, 0, 0))
    assert point_measure(d, zero, x) == 0


def test_sphere_class_maslov():
    # the whole surface from x to x has mu = 2 on a torus
    d = corpus("s3_g1")
    q = gen(d, "q")
    assert maslov_index(d, Domain(q, q, ("R0",), (1,))) == 2


@pytest.mark.parametrize("name", ["s2xs1_fig9", "trefoil_g1_minimal", "ob_ot_s3", "lens_4_1"])
def test_maslov_additive(name):
    d = corpus(name)
    gens = enumerate_generators(d)
    for x, y, z in itertools.product(gens, repeat=3):
        a, b = find_domain(d, x, y, pin_z=False), find_domain(d, y, z, pin_z=False)
        if a is None or b is None:
            continue
        ab = a.particular + b.particular
        assert maslov_index(d, a.particular) + maslov_index(d, b.particular) == maslov_index(d, ab)


def test_delta():
    assert delta_s(corpus("s3_g1"), partition_spinc(corpus("s3_g1")).classes[0]) == 0
    assert delta_s(corpus("s2xs1_fig9"), partition_spinc(corpus("s2xs1_fig9")).classes[0]) == 0
    for c in partition_spinc(corpus("lens_3_1")).classes:
        assert delta_s(corpus("lens_3_1"), c) == 0


def test_weak_admissibility():
    d = corpus("s2xs1_fig9")
    (c,) = partition_spinc(d).classes
    res = weak_admissibility(d, c)
    assert res and res.witness is None
    assert weak_admissibility(corpus("s3_g1"))
    bad = weak_admissibility(corpus("non_admissible_fixture"))
    assert not bad
    w = bad.witness_dict()
    assert set(w) == {"D2"} and w["D2"] != 0


def test_sign_definite_check():
    assert sign_definite_check([(1, -1, 0)], ("a", "b", "c"))
    res = sign_definite_check([(1, 1, 0)], ("a", "b", "c"))
    assert not res and res.witness_dict() == {"a": 1, "b": 1}
    # a combination is sign-definite even though the generators are not
    res = sign_definite_check([(1, -1, 0), (0, 2, 1)], ("a", "b", "c"))
    assert not res
    assert all(v >= 0 for v in res.witness_dict().values()) or all(v <= 0 for v in res.witness_dict().values())


def test_extremely_weak():
    k = corpus("s2xs1_fig9_knot")
    assert extremely_weak_admissibility(k, partition_spinc(k).classes[0])
    t = corpus("trefoil_g1")
    assert extremely_weak_admissibility(t, partition_spinc(t).classes[0])
    na = corpus("non_admissible_fixture").with_basepoints(w="A")
    assert not extremely_weak_admissibility(na)


def test_strong_admissibility():
    assert strong_admissibility(corpus("s3_g1"), partition_spinc(corpus("s3_g1")).classes[0]).status == "verified"
    d = corpus("s2xs1_fig9")
    v = strong_admissibility(d, partition_spinc(d).classes[0], bound=10)
    assert v.status == "verified" and v.bound == 10
    v = strong_admissibility(corpus("non_admissible_fixture"), None, bound=10)
    assert v.status == "counterexample" and set(v.witness_dict()) == {"D2"}


def test_domains_differ_by_lattice():
    d = corpus("s2xs1_fig9")
    x, y = gen(d, "x"), gen(d, "y")
    doms = connecting_domains(d, x, y, 3)
    assert len(doms) > 1
    base = doms[0]
    for o in doms[1:]:
        diff = [a - b for a, b in zip(o.multiplicities, base.multiplicities)]
        # k (D1 - D2) plus a multiple of the whole surface
        assert diff[1] - diff[0] == -(diff[2] - diff[0])


def test_nonnegative_search_stable():
    d = corpus("s2xs1_fig9")
    x, y = gen(d, "x"), gen(d, "y")
    small = nonnegative_domains(d, x, y, 0, 3)
    big = nonnegative_domains(d, x, y, 0, 8)
    assert sorted(map(tuple, (s.multiplicities for s in small))) == \
        sorted(map(tuple, (s.multiplicities for s in big)))
    assert len(small) == 2
