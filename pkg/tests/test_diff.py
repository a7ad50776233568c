from __future__ import annotations

import numpy as np
import pytest

from ffspectra import diff as df

from conftest import power_map, tower

QS = [(3, 1), (3, 2), (3, 3), (7, 1), (13, 1), (5, 2), (5, 1), (11, 1), (17, 1), (23, 1)]


def brute_ddt_row(f: df.PowerMap, a: int) -> np.ndarray:
    """``delta_f(a, b)`` by evaluating ``f`` pointwise in plain Python."""
    F = f.field
    out = np.zeros(F.order, dtype=np.int64)
    for x in range(F.order):
        out[int(F.sub(f(F.add(x, a)), f(x)))] += 1
    return out


@pytest.mark.parametrize("p,m", QS)
def test_spectrum_equals_closed_form(p, m):
    f = power_map(p, m)
    s = df.diff_spectrum(f)
    assert s == df.diff_spectrum(f, "closed_form")
    assert s.check_mass(f.size)


def test_named_spectra():
    assert df.closed_form_spectrum(3) == {0: 5, 2: 3, 3: 1}
    assert df.closed_form_spectrum(7) == {0: 24, 1: 1, 2: 24}
    assert df.closed_form_spectrum(5) == {0: 16, 1: 1, 2: 4, 4: 4}
    assert df.diff_spectrum(power_map(5)).max_value == 4


@pytest.mark.parametrize("p,m", [(3, 2), (7, 1), (5, 1)])
def test_histogram_matches_pointwise_evaluation(p, m):
    f = power_map(p, m)
    assert np.array_equal(df.derivative_histogram(f), brute_ddt_row(f, 1))


def test_power_map_row_scaling():
    """For a power map the row at ``a`` is the row at 1 rescaled by ``a^d``."""
    f = power_map(3, 2)
    F = f.field
    ddt = df.full_ddt(f)
    for a in range(1, f.size):
        b = F.elements()
        assert np.array_equal(ddt[a][F.mul(b, F.pow(a, f.d))], ddt[1][b])


def test_histogram_values_at_q9():
    h = df.derivative_histogram(power_map(3, 2))
    assert set(h.tolist()) <= {0, 2, 9}


@pytest.mark.parametrize("p,m", [(5, 1), (7, 1), (3, 2), (11, 1), (13, 1), (5, 2), (3, 3)])
def test_delta_formula_exhaustive(p, m):
    T = tower(p, m)
    table = df.delta_table(T)
    for b in range(1, T.Q):
        v = df.delta_formula(T, *T.split(b))
        assert v == table[b]
        assert v % 2 == 0 and v <= 4


@pytest.mark.parametrize("p,m", QS)
def test_delta_special_points(p, m):
    T = tower(p, m)
    f = df.PowerMap(T)
    assert df.delta_b(f, 0) == (T.q if p == 3 else 1)
    if p != 3:
        assert df.delta_b(f, T.top.from_int(3)) == (4 if T.q % 6 == 5 else 2)


@pytest.mark.parametrize("p,m", [(3, 1), (3, 2), (3, 3)])
def test_p3_trace_rule(p, m):
    T = tower(p, m)
    table = df.delta_table(T)
    for b in range(1, T.Q):
        tr = T.rel_trace(b)
        assert table[b] == (2 if T.base.eta(tr) == -1 else 0)


@pytest.mark.parametrize("p,m", [(5, 1), (11, 1), (17, 1), (23, 1)])
def test_two_locus(p, m):
    T = tower(p, m)
    table = df.delta_table(T)
    twos = set(np.flatnonzero(table == 2).tolist())
    assert len(twos) == T.q - 1
    assert twos == df.delta_two_locus(T)


def test_locally_apn():
    assert df.is_locally_apn(power_map(3, 2))
    assert df.is_locally_apn(power_map(7))
    assert not df.is_locally_apn(power_map(5))


def test_closed_form_rejects_other_exponents():
    with pytest.raises(ValueError):
        df.diff_spectrum(power_map(3, 2, d=5), "closed_form")
