import os
import subprocess
import sys

import numpy as np
import pytest

from nicehf import _accel
from nicehf.zlinalg import f2


@pytest.mark.parametrize("seed", range(20))
def test_backends_agree(seed):
    rng = np.random.default_rng(seed)
    a = rng.integers(0, 2, size=(rng.integers(1, 40), rng.integers(1, 40)), dtype=np.uint8)
    r1, p1 = f2.rref(a, backend="numpy")
    r2, p2 = f2.rref(a, backend="numba")
    assert np.array_equal(r1, r2) and p1 == p2


def test_rref_is_reduced():
    rng = np.random.default_rng(7)
    a = rng.integers(0, 2, size=(12, 15), dtype=np.uint8)
    r, piv = f2.rref(a)
    for i, p in enumerate(piv):
        col = r[:, p]
        assert col[i] == 1 and col.sum() == 1
    assert not r[len(piv):].any()


def test_nullspace_and_solve():
    rng = np.random.default_rng(11)
    for _ in range(30):
        a = rng.integers(0, 2, size=(6, 9), dtype=np.uint8)
        ns = f2.nullspace(a)
        assert ns.shape[0] == 9 - f2.rank(a)
        assert not f2.matmul(a, ns.T).any()
        x = rng.integers(0, 2, size=9, dtype=np.uint8)
        b = f2.matmul(a, x.reshape(-1, 1)).ravel()
        y = f2.solve(a, b)
        assert np.array_equal(f2.matmul(a, y.reshape(-1, 1)).ravel(), b)
        assert f2.in_column_span(a, b)


def test_solve_inconsistent():
    assert f2.solve(np.array([[1, 1], [1, 1]]), [1, 0]) is None


def test_env_flag_selects_numpy():
    code = "from nicehf import _accel; print(_accel.backend())"
    env = dict(os.environ, NICEHF_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"
    assert _accel.backend() in ("numba", "numpy")
