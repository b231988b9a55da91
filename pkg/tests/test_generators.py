import itertools

import pytest

from nicehf.domains import find_domain
from nicehf.generators import (AbelianGroup, _homology, enumerate_generators, epsilon, first_homology,
                               generator_by_name, group_from_presentation, intersection_matrix,
                               partition_spinc)

from _support import all_corpus, corpus


def test_group_strings():
    assert str(AbelianGroup(0)) == "0"
    assert str(AbelianGroup(1, (3,))) == "Z + Z/3"
    assert AbelianGroup(0, (2, 4)).order == 8
    assert AbelianGroup(1).order is None


@pytest.mark.parametrize("name,h1", [("s3_g1", "0"), ("s2xs1_fig9", "Z"), ("s2xs1_sum_fig10", "Z + Z"),
                                     ("lens_2_1", "Z/2"), ("lens_3_1", "Z/3"), ("lens_4_1", "Z/4"),
                                     ("lens_5_1", "Z/5"), ("trefoil_g1", "0")])
def test_first_homology(name, h1):
    assert str(first_homology(corpus(name))) == h1


@pytest.mark.parametrize("name", ["s3_g1", "s2xs1_fig9", "s2xs1_sum_fig10", "lens_5_1", "trefoil_g1"])
def test_h1_matches_intersection_matrix(name):
    d = corpus(name)
    m = intersection_matrix(d)
    assert group_from_presentation(m, d.genus) == first_homology(d)


def test_generators_are_bijections():
    d = corpus("s2xs1_sum_fig10")
    gens = enumerate_generators(d)
    assert len(gens) == 4
    for x in gens:
        assert sorted(d.point_location[p]["alpha"][0] for p in x.points) == [0, 1]
        assert sorted(d.point_location[p]["beta"][0] for p in x.points) == [0, 1]
    assert generator_by_name(d, gens[0].name) == gens[0]


@pytest.mark.parametrize("p", [2, 3, 4, 5])
def test_lens_classes(p):
    part = partition_spinc(corpus(f"lens_{p}_1"))
    assert len(part.classes) == p
    assert all(len(c.generators) == 1 for c in part.classes)


def _zero_mod(vec, moduli):
    return all((v % m == 0) if m else v == 0 for v, m in zip(vec, moduli))


@pytest.mark.parametrize("name", all_corpus())
def test_epsilon_additive(name):
    d = corpus(name)
    gens = enumerate_generators(d)[:8]
    moduli = _homology(d).moduli
    for x, y, z in itertools.product(gens, repeat=3):
        s = [a + b - c for a, b, c in zip(epsilon(d, x, y), epsilon(d, y, z), epsilon(d, x, z))]
        assert _zero_mod(s, moduli)


@pytest.mark.parametrize("name", ["s2xs1_fig9", "s2xs1_sum_fig10", "lens_3_1", "lens_4_1", "trefoil_g1",
                                  "trefoil_g1_minimal", "ob_ot_s3"])
def test_epsilon_matches_domain_existence(name):
    d = corpus(name)
    gens = enumerate_generators(d)
    for x, y in itertools.product(gens, repeat=2):
        assert (not any(epsilon(d, x, y))) == (find_domain(d, x, y) is not None)


def test_lens_epsilon_convention():
    # epsilon(x_i, x_j) is (i - j) mod p in the chosen generator
    d = corpus("lens_5_1")
    gens = {x.name: x for x in enumerate_generators(d)}
    e = {(i, j): epsilon(d, gens[f"x{i}"], gens[f"x{j}"]) for i in range(5) for j in range(5)}
    unit = e[(1, 0)]
    assert unit != (0,)
    for (i, j), v in e.items():
        assert v == tuple(((i - j) * u) % 5 for u in unit)
