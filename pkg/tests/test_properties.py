import random

from hypothesis import given, settings
from hypothesis import strategies as st

from nicehf.domains import find_domain, is_domain
from nicehf.generators import enumerate_generators

from _support import KNOT_SEEDS, SEEDS, check_random_diagram, corpus, random_move


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(SEEDS), st.integers(0, 2 ** 32 - 1), st.integers(1, 5))
def test_random_moves_preserve_invariants(name, seed, steps):
    rng = random.Random(seed)
    d = corpus(name)
    for _ in range(steps):
        d, _ = random_move(d, rng)
    assert check_random_diagram(name, d) == []


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(KNOT_SEEDS), st.integers(0, 2 ** 32 - 1), st.integers(1, 4))
def test_random_moves_knot_mode(name, seed, steps):
    rng = random.Random(seed)
    d = corpus(name)
    for _ in range(steps):
        d, _ = random_move(d, rng)
    assert check_random_diagram(name, d, knot=True) == []


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(("s2xs1_fig9", "s2xs1_sum_fig10", "lens_4_1", "ob_ot_s3")), st.integers(0, 2 ** 32 - 1))
def test_domains_satisfy_boundary(name, seed):
    rng = random.Random(seed)
    d = corpus(name)
    d, _ = random_move(d, rng)
    gens = enumerate_generators(d)
    x, y = rng.choice(gens), rng.choice(gens)
    sol = find_domain(d, x, y)
    if sol is None:
        return
    assert is_domain(d, sol.particular)
    for per in sol.lattice.domains():
        assert is_domain(d, per)
        assert per[d.basepoint_z] == 0
