"""The numba and numpy row-reduction kernels agree exactly."""
import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from reslie import _kernels

pytestmark = pytest.mark.skipif(not _kernels.HAVE_NUMBA, reason="numba path disabled or unavailable")


@given(st.sampled_from([3, 5, 7, 101]), st.integers(1, 12), st.integers(1, 12), st.integers(0, 2**32 - 1))
def test_rref_agree(p, m, n, seed):
    rng = np.random.default_rng(seed)
    A = rng.integers(0, p, size=(m, n))
    if m > 1:
        A[-1] = A[0]
    inv = _kernels.inverse_table(p)
    Rn, pn = _kernels.rref_numpy(A, p, inv)
    Rj, pj = _kernels.rref_numba(A, p, inv)
    assert np.array_equal(Rn, Rj)
    assert np.array_equal(pn, pj)


@given(st.sampled_from([3, 5, 7, 101]), st.integers(1, 8), st.integers(0, 2**32 - 1))
def test_det_agree(p, n, seed):
    rng = np.random.default_rng(seed)
    A = rng.integers(0, p, size=(n, n))
    inv = _kernels.inverse_table(p)
    assert _kernels.det_numpy(A, p, inv) == _kernels.det_numba(A, p, inv)


def test_env_var_selects_numpy_path():
    code = "from reslie import _kernels; print(_kernels.HAVE_NUMBA, _kernels.rref is _kernels.rref_numpy)"
    env = dict(os.environ, RESLIE_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["False", "True"]


def test_catalog_results_identical_without_numba():
    code = (
        "from reslie.catalog import verify_claims\n"
        "r = verify_claims('D7', p=5, q=2)\n"
        "print(sum(c.ok for c in r.results), len(r.results))\n"
    )
    env = dict(os.environ, RESLIE_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    ok, total = map(int, out.stdout.split())
    assert ok == total
