import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from toruswf import torus

odd_dims = st.integers(min_value=0, max_value=40).map(lambda j: 2 * j + 1)


def test_check_odd_rejects():
    for bad in (0, -3, 2, 10, 2.0):
        with pytest.raises(ValueError):
            torus.check_odd(bad)
    torus.check_odd(1)
    torus.check_odd(2187)


def test_sym_labels():
    assert list(torus.sym_labels(5)) == [-2, -1, 0, 1, 2]
    assert list(torus.sym_labels(1)) == [0]


@given(odd_dims, st.integers(min_value=-500, max_value=500))
def test_wrap_period_and_range(N, n):
    M = (N - 1) // 2
    w = int(torus.wrap(n, N))
    assert -M <= w <= M
    assert (w - n) % N == 0
    assert w == int(torus.wrap(n + N, N))


@given(odd_dims, st.integers(min_value=-500, max_value=500))
def test_slot_inverts_labels(N, n):
    j = int(torus.slot(n, N))
    assert 0 <= j < N
    assert int(torus.sym_labels(N)[j]) == int(torus.wrap(n, N))
