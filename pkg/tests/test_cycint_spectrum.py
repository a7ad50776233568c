from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ffspectra.cycint import CycInt, canonical_rows, rational_values
from ffspectra.spectrum import Spectrum

coeffs = st.lists(st.integers(-20, 20), min_size=3, max_size=3)


def test_xi_sum_vanishes():
    assert CycInt.xi(3, 1) + CycInt.xi(3, 2) == CycInt.from_int(3, -1)
    assert sum((CycInt.xi(5, k) for k in range(5)), CycInt.from_int(5, 0)) == CycInt.from_int(5, 0)


@given(coeffs, coeffs, coeffs)
def test_ring_laws(a, b, c):
    x, y, z = CycInt(3, a), CycInt(3, b), CycInt(3, c)
    assert x * (y + z) == x * y + x * z
    assert (x * y) * z == x * (y * z)
    assert x - x == CycInt.from_int(3, 0)


@given(coeffs)
def test_abs2_is_rational_for_p3(a):
    z = CycInt(3, a)
    r = z.abs2()
    assert r.is_rational() and r.to_int() >= 0


def test_canonical_rows_and_rational_values():
    rows = np.array([[3, 1, 1], [0, 2, 2]])
    assert canonical_rows(rows).tolist() == [[2, 0, 0], [-2, 0, 0]]
    assert rational_values(rows).tolist() == [2, -2]
    with pytest.raises(ValueError):
        rational_values(np.array([[1, 0, 0], [0, 1, 0]]))


def test_spectrum_basics():
    s = Spectrum.from_values([2, 0, 2, 9, 0, 0])
    assert s == {0: 3, 2: 2, 9: 1}
    assert list(s) == [0, 2, 9]
    assert s.total == 6 and s.weighted_total == 13
    assert s + {2: 1, 5: 0} == {0: 3, 2: 3, 9: 1}
    assert Spectrum({1: 0}) == {}
