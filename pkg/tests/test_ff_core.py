from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ffspectra.ff_core import (
    EnumerationCapError,
    FieldParams,
    QuadClass,
    build_field,
    build_tower,
    character_and_roots,
    context_from_record,
    cyclotomic_closed_form,
    cyclotomic_number,
    trace_norm_rel,
    unit_circle_decompose,
)

from conftest import tower

FIELDS = [(3, 1), (3, 2), (3, 3), (5, 1), (5, 2), (7, 1), (11, 1), (13, 1)]


def test_generators_of_small_fields():
    assert build_field(3, 1).generator == 2
    assert build_field(7, 1).generator == 3
    F9 = build_field(3, 2)
    assert F9.order == 9
    g = F9.generator
    orders = [k for k in range(1, 9) if F9.pow(g, k) == 1]
    assert orders[0] == 8


@pytest.mark.parametrize("p,m", FIELDS)
def test_tables_are_consistent(p, m):
    F = build_field(p, m)
    q = F.order
    assert F.exp[0] == 1
    assert F.exp[(q - 1) // 2] == F.neg(1)
    assert np.array_equal(F.log[F.exp[: q - 1]], np.arange(q - 1))
    assert len(set(F.exp[: q - 1].tolist())) == q - 1


def test_invalid_parameters():
    with pytest.raises(ValueError):
        FieldParams(2, 1)
    with pytest.raises(ValueError):
        FieldParams(9, 1)
    with pytest.raises(ValueError):
        FieldParams(3, 0)


def test_enumeration_cap(monkeypatch):
    monkeypatch.setenv("FFSPECTRA_ENUM_CAP", "100")
    with pytest.raises(EnumerationCapError):
        build_field(3, 4)


def test_arithmetic_identities():
    F = build_field(7, 1)
    x = F.element(3)
    assert x * F.element(1) == x
    assert x + (-x) == F.element(0)
    assert x**6 == F.element(1)
    assert x * x.inv() == F.element(1)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(FIELDS), st.data())
def test_field_axioms(pm, data):
    F = build_field(*pm)
    el = st.integers(0, F.order - 1)
    x, y, z = data.draw(el), data.draw(el), data.draw(el)
    assert F.mul(x, F.add(y, z)) == F.add(F.mul(x, y), F.mul(x, z))
    assert F.sub(F.add(x, y), y) == x
    assert F.mul(F.mul(x, y), z) == F.mul(x, F.mul(y, z))
    if y:
        assert F.mul(F.div(x, y), y) == x
    assert F.frobenius(F.add(x, y)) == F.add(F.frobenius(x), F.frobenius(y))


def test_alpha_policies():
    assert build_tower(build_field(3, 1)).alpha == 2
    assert build_tower(build_field(5, 1), "force_minus3").alpha == 2
    with pytest.raises(ValueError):
        build_tower(build_field(7, 1), "force_minus3")


@pytest.mark.parametrize("p,m", [(3, 1), (3, 2), (5, 1), (7, 1), (13, 1)])
def test_tower_structure(p, m):
    T = tower(p, m)
    F, top, q = T.base, T.top, T.q
    assert F.eta(T.alpha) == -1
    assert top.pow(T.Z, q) == T.join(0, F.neg(1))
    x = top.elements()
    fixed = np.flatnonzero(top.pow(x, q) == x)
    assert np.array_equal(fixed, np.arange(q))
    # the base field embeds as a subring
    c = F.elements()
    assert np.array_equal(top.mul(c[:, None], c[None, :]), F.mul(c[:, None], c[None, :]))
    if q % 4 == 3:
        assert top.pow(T.lam, q + 1) == top.neg(1)
    else:
        assert top.pow(T.lam, q) == top.neg(T.lam)


def test_trace_and_norm(t9):
    T = t9
    F = T.base
    assert trace_norm_rel(T, 1) == (2, 1)
    assert trace_norm_rel(T, T.Z) == (0, F.neg(T.alpha))
    x = T.top.elements()
    assert np.array_equal(T.rel_norm(x), T.top.pow(x, T.q + 1))
    assert np.array_equal(T.rel_trace(x), T.top.add(x, T.top.pow(x, T.q)))


def test_character_and_roots():
    F7 = build_field(7, 1)
    assert character_and_roots(F7, 0) == (QuadClass.ZERO, (0,), (0,))
    assert character_and_roots(F7, 3)[0] is QuadClass.NONSQUARE
    F9 = build_field(3, 2)
    for x in range(9):
        roots = F9.cbrt_set(x)
        assert len(roots) == 1 and F9.pow(roots[0], 3) == x
    for x in range(1, 7):
        cls, sq, _ = character_and_roots(F7, x)
        brute = [y for y in range(7) if y * y % 7 == x]
        assert (cls is QuadClass.SQUARE) == bool(brute)
        if brute:
            assert list(sq) == brute


def test_unit_circle_decompose(t9):
    T = t9
    top = T.top
    assert unit_circle_decompose(T, 1) == ((1, 1), (2, 2))
    units = set(T.unit_circle().tolist())
    assert len(units) == T.q + 1
    for x in range(1, T.Q):
        if top.eta(x) != 1:
            continue
        pairs = unit_circle_decompose(T, x)
        brute = [(y, z) for y in range(1, T.q) for z in units if top.mul(y, z) == x]
        assert sorted(brute) == list(pairs)
        for y, z in pairs:
            assert top.pow(z, T.q + 1) == 1 and top.pow(y, T.q) == y


def test_cyclotomic_numbers_small():
    F9, F7 = build_field(3, 2), build_field(7, 1)
    assert [cyclotomic_number(F9, i, j) for i, j in itertools.product((0, 1), repeat=2)] == [1, 2, 2, 2]
    assert [cyclotomic_number(F7, i, j) for i, j in itertools.product((0, 1), repeat=2)] == [1, 2, 1, 1]


@pytest.mark.parametrize("p,m", [(7, 1), (3, 2), (11, 1), (13, 1), (5, 2), (3, 3)])
def test_cyclotomic_closed_form(p, m):
    F = build_field(p, m)
    for i, j in itertools.product((0, 1), repeat=2):
        assert cyclotomic_number(F, i, j) == cyclotomic_closed_form(F.order, i, j)
    # every x outside {0, -1} lands in exactly one class pair
    total = sum(cyclotomic_number(F, i, j) for i, j in itertools.product((0, 1), repeat=2))
    assert total == F.order - 2


def test_record_round_trip(t9):
    text = t9.to_record()
    T2 = context_from_record(text)
    assert T2.to_record() == text
    assert np.array_equal(T2.top.exp, t9.top.exp)
    assert context_from_record(t9.base.to_record()).generator == t9.base.generator
