from __future__ import annotations

import cmath

import numpy as np
import pytest

from ffspectra import walsh as ws
from ffspectra.cycint import CycInt

from conftest import power_map, tower

DISTS = {
    1: {-3: 16, 0: 24, 3: 24, 6: 8},
    2: {-9: 1920, 0: 2880, 9: 720, 18: 960},
    3: {-27: 170352, 0: 255528, 27: 19656, 54: 85176},
}


def complex_walsh(f, a: int, b: int) -> complex:
    F = f.field
    total = 0
    for x in range(F.order):
        e = (int(F.trace(F.mul(b, f(x)))) - int(F.trace(F.mul(a, x)))) % F.p
        total += cmath.exp(2j * cmath.pi * e / F.p)
    return total


def to_complex(z: CycInt) -> complex:
    return sum(c * cmath.exp(2j * cmath.pi * k / z.p) for k, c in enumerate(z.coeffs))


@pytest.mark.parametrize("m", [1, 2, 3])
def test_distribution(m):
    f = power_map(3, m)
    st = ws.walsh_stats(f)
    assert st.spectrum() == DISTS[m]
    assert ws.closed_form_distribution(3**m) == DISTS[m]
    assert all(c.ok for c in ws.moment_checks(f, st))


@pytest.mark.parametrize("m", [1, 2])
def test_engines_agree_exhaustively(m):
    f = power_map(3, m)
    bs = np.arange(1, f.size)
    assert np.array_equal(ws.walsh_columns(f, bs, "direct"), ws.walsh_columns(f, bs, "group_transform"))
    assert ws.walsh_stats(f, "direct").counts == ws.walsh_stats(f, "group_transform").counts


@pytest.mark.parametrize("p,m", [(5, 1), (7, 1), (3, 2)])
def test_engines_against_complex_sum(p, m):
    f = power_map(p, m)
    rng = np.random.default_rng(7)
    for b in rng.integers(1, f.size, size=3).tolist():
        col = ws.walsh_columns(f, [b], "group_transform")[0]
        for a in rng.integers(0, f.size, size=5).tolist():
            z = CycInt(p, col[a].tolist())
            assert z == ws.walsh_at(f, a, b)
            assert abs(to_complex(z) - complex_walsh(f, a, b)) < 1e-6


def test_sampled_engine_agreement_q27():
    f = power_map(3, 3)
    rng = np.random.default_rng(11)
    bs = rng.integers(1, f.size, size=10)
    cols = ws.walsh_columns(f, bs, "group_transform")
    for k, b in enumerate(bs.tolist()):
        for a in rng.integers(0, f.size, size=100).tolist():
            assert ws.walsh_at(f, a, b) == CycInt(3, cols[k, a].tolist())


def test_moment_values():
    assert ws.cube_moment_closed_form(3) == 144
    assert ws.cube_moment_closed_form(9) == 3162240
    st = ws.walsh_stats(power_map(3, 2))
    assert st.sum_value() == CycInt.from_int(3, 6480)


@pytest.mark.parametrize("p,m", [(5, 1), (7, 1), (5, 2)])
def test_moments_for_larger_characteristic(p, m):
    f = power_map(p, m)
    st = ws.walsh_stats(f)
    assert all(c.ok for c in ws.moment_checks(f, st))
    # exact Parseval makes q^4 - |W|^2 a sum of squared moduli; the float check is a second look
    bound = f.size * f.size
    for z in st.distribution():
        assert to_complex(z.abs2()).real <= bound + 1e-6


def test_parallel_matches_serial():
    f = power_map(3, 2)
    a = ws.walsh_stats(f, jobs=1, chunk=16)
    b = ws.walsh_stats(f, jobs=2, chunk=16)
    assert a.counts == b.counts and a.parseval == b.parseval


def test_lambda_identity_exhaustive_q9():
    f = power_map(3, 2)
    sizes = set()
    for b in range(1, f.size):
        for a in range(f.size):
            n, ok = ws.lambda_cubic_identity(f, a, b)
            assert ok, (a, b)
            sizes.add(n)
    assert sizes <= {0, 1, 2, 3}


@pytest.mark.parametrize("m", [1, 3])
def test_lambda_identity_sampled(m):
    f = power_map(3, m)
    rng = np.random.default_rng(5)
    for a, b in zip(rng.integers(0, f.size, 300).tolist(), rng.integers(1, f.size, 300).tolist()):
        assert ws.lambda_cubic_identity(f, a, b)[1]


def test_lambda_domain_size():
    for m in (1, 2, 3):
        T = tower(3, m)
        assert len(ws.lambda_domain(T)) == T.q + 1


def test_lambda_rejects_other_characteristic():
    with pytest.raises(ValueError):
        ws.lambda_cubic_identity(power_map(7), 1, 1)
