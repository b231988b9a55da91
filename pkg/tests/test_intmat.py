import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nicehf.errors import DimensionMismatch
from nicehf.zlinalg import IntegerSystem, invariant_factors, is_smith_normal_form, smith_normal_form
from nicehf.zlinalg.intmat import determinant_is_unit, integer_kernel, lattice_gcd, matmul, matvec
from nicehf.zlinalg.lp import feasible_point

matrices = st.integers(0, 5).flatmap(
    lambda r: st.integers(0, 5).flatmap(
        lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=r, max_size=r)
        .map(lambda m: (m, c))))


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_snf_decomposition(mc):
    m, c = mc
    u, d, v = smith_normal_form(m, c)
    assert is_smith_normal_form(d) if m else True
    if m and c:
        assert matmul(matmul(u, m), v) == d
        assert determinant_is_unit(u) and determinant_is_unit(v)


def test_known_invariant_factors():
    assert invariant_factors([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]) == [2, 6, 12]
    assert invariant_factors([[3]]) == [3]
    assert invariant_factors([[0, 0], [0, 0]]) == []


@settings(max_examples=150, deadline=None)
@given(matrices, st.randoms())
def test_solve_roundtrip(mc, rnd):
    m, c = mc
    if not m:
        return
    x = [rnd.randint(-4, 4) for _ in range(c)]
    b = matvec(m, x)
    sol = IntegerSystem(m, c).solve(b)
    assert sol is not None
    assert matvec(m, list(sol.particular)) == b
    for k in sol.kernel:
        assert not any(matvec(m, list(k)))


def test_unsolvable_over_z():
    assert IntegerSystem([[2, 4]]).solve([3]) is None
    assert IntegerSystem([[1, 1], [1, 1]]).solve([1, 2]) is None


def test_rhs_length_checked():
    with pytest.raises(DimensionMismatch):
        IntegerSystem([[1, 0]]).solve([1, 2])


def test_kernel_saturated():
    # x + 2y = 0 has kernel generated by (2, -1), not a multiple of it
    (k,) = integer_kernel([[1, 2]])
    assert abs(lattice_gcd(k)) == 1
    assert k[0] + 2 * k[1] == 0


def test_feasible_point():
    x = feasible_point([[1, 1, 1]], [1])
    assert x is not None and sum(x) == 1 and min(x) >= 0
    assert feasible_point([[1, 1]], [-1]) is None
    x = feasible_point([[1, -1, 0], [0, 1, -1]], [0, 0])
    assert x == [Fraction(0)] * 3
    # x0 - x1 = 1, x1 - x0 = 1 is inconsistent
    assert feasible_point([[1, -1], [-1, 1]], [1, 1]) is None


def test_feasible_point_random():
    rng = random.Random(3)
    for _ in range(100):
        m = [[rng.randint(-3, 3) for _ in range(5)] for _ in range(3)]
        x0 = [rng.randint(0, 3) for _ in range(5)]
        b = matvec(m, x0)
        x = feasible_point(m, b)
        assert x is not None
        assert all(v >= 0 for v in x)
        assert [sum(Fraction(a) * v for a, v in zip(row, x)) for row in m] == b
