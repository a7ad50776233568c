"""Boomerang connectivity of power maps.

The row ``beta_f(1, b)`` is computed by pairing points inside each fiber of the
derivative ``D_1 f``.  For ``x^(q+2)`` the shifted view ``beta(b) = beta_f(1, b/4)``
splits into four counts ``beta_ij`` by whether ``s = 0`` and ``y = 0`` in the
coordinates ``u = x + yZ``, ``v = s + tZ``; those counts have base-field formulas
when ``p = 3`` or ``q = 1 (mod 6)``.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from ffspectra.diff import PowerMap, derivative_histogram
from ffspectra.ff_core import FieldCtx, TowerCtx
from ffspectra.polys import PolyFq, count_distinct_roots
from ffspectra.spectrum import Spectrum


class NotCoveredError(ValueError):
    """The requested closed form is not available for this field."""


def fiber_pairs(keys: np.ndarray) -> Iterator[tuple[np.ndarray, np.ndarray]]:
    """Yield index arrays ``(i, j)`` covering every ordered pair with ``keys[i] == keys[j]``.

    Fibers are taken in ascending key order; the k-th batch pairs each point with the
    k-th member of its fiber, so total work is the sum of squared fiber sizes.
    """
    order = np.argsort(keys, kind="stable")
    k = keys[order]
    first = np.r_[True, k[1:] != k[:-1]]
    gid = np.cumsum(first) - 1
    gstart = np.flatnonzero(first)
    gsize = np.diff(np.r_[gstart, len(k)])
    pos_start = gstart[gid]
    pos_size = gsize[gid]
    by_size = np.argsort(-pos_size, kind="stable")
    neg_sorted = -pos_size[by_size]
    for j in range(int(gsize.max()) if len(gsize) else 0):
        n_active = int(np.searchsorted(neg_sorted, -j, side="left"))
        act = by_size[:n_active]
        yield order[act], order[pos_start[act] + j]


@dataclass(frozen=True, eq=False)
class BctRow:
    """``raw[b] = beta_f(1, b)`` for every code ``b`` (``b = 0`` included)."""

    f: PowerMap
    raw: np.ndarray

    @functools.cached_property
    def quartered(self) -> np.ndarray:
        """``quartered[b] = beta_f(1, b/4)``."""
        T = self.f.field
        b = T.elements()
        return self.raw[T.mul(b, T.inv(T.from_int(4)))]

    def beta(self, b: int) -> int:
        return int(self.quartered[b])

    @property
    def mass(self) -> int:
        return int(self.raw.sum())


def bct_row(f: PowerMap) -> BctRow:
    """``beta_f(1, b)`` for all ``b`` from within-fiber pairs of ``D_1 f``."""
    F = f.field
    fx = f.values()
    row = np.zeros(F.order, dtype=np.int64)
    for i, j in fiber_pairs(f.derivative(1)):
        row += np.bincount(F.sub(fx[i], fx[j]), minlength=F.order)
    return BctRow(f, row)


def partition_mass(f: PowerMap) -> int:
    """``sum_v delta_f(1, v)^2``, the total size of a BCT row."""
    h = derivative_histogram(f).astype(np.int64)
    return int((h * h).sum())


# -- beta_ij --------------------------------------------------------------------------


@dataclass(frozen=True)
class BetaDecomposition:
    b11: int
    b10: int
    b01: int
    b00: int
    source: str = "formula"

    @property
    def total(self) -> int:
        return self.b11 + self.b10 + self.b01 + self.b00


@functools.lru_cache(maxsize=8)
def beta_tables_direct(tower: TowerCtx) -> np.ndarray:
    """``tables[i, j, b]``: solutions of the four-variable system for ``beta(b)`` with
    ``[s == 0] = i`` and ``[y == 0] = j``, by enumerating pairs ``(u, v)``."""
    T = tower.top
    q = tower.q
    u = T.elements()
    uq = T.pow(u, q)
    # P(u) = 2u^(q+1) + u^2 and Q(u) = 4u^(q+2) + u^q + 2u
    P = T.add(T.smul(2, T.mul(uq, u)), T.mul(u, u))
    Qv = T.add(T.add(T.smul(4, T.mul(T.mul(uq, u), u)), uq), T.smul(2, u))
    y_zero = (u // q) == 0
    s_zero = (u % q) == 0
    out = np.zeros((2, 2, T.order), dtype=np.int64)
    for iu, iv in fiber_pairs(P):
        b = T.sub(Qv[iu], Qv[iv])
        cls = 2 * s_zero[iv].astype(np.int64) + y_zero[iu].astype(np.int64)
        out.reshape(4, -1)[:] += np.stack(
            [np.bincount(b[cls == k], minlength=T.order) for k in range(4)]
        )
    out.flags.writeable = False
    return out


def beta_decompose_direct(tower: TowerCtx, c: int, d: int) -> BetaDecomposition:
    t = beta_tables_direct(tower)
    b = tower.join(c, d)
    return BetaDecomposition(int(t[1, 1, b]), int(t[1, 0, b]), int(t[0, 1, b]), int(t[0, 0, b]), "direct")


def _count_in(F: FieldCtx, mask: np.ndarray, nonzero: bool = True) -> int:
    return int(np.count_nonzero(mask[1:] if nonzero else mask))


def _cubic_solutions(F: FieldCtx, a3: int, a1: int, rhs: int) -> int:
    """``#{y in F^* : a3 y^3 + a1 y = rhs}``."""
    y = F.elements()
    return _count_in(F, F.add(F.mul(a3, F.pow(y, 3)), F.mul(a1, y)) == rhs)


def _nonzero_square_roots(F: FieldCtx, v: int) -> int:
    """``#{y in F^* : y^2 = v}``."""
    return 0 if v == 0 else 1 + F.eta(v)


def quintic_poly(tower: TowerCtx, regime: str, u: int, v: int) -> PolyFq:
    F = tower.base
    if regime == "q1mod6":
        c, d = u, v
        if c == 0:
            raise ValueError("degenerate leading coefficient (c = 0)")
        c2 = F.mul(c, c)
        k3 = F.smul(4, F.add(F.sub(c2, F.mul(tower.alpha, F.mul(d, d))), F.from_int(3)))
        return PolyFq(
            F,
            [F.from_int(-1), F.from_int(7), F.from_int(-16), k3, F.neg(F.smul(16, c2)), F.smul(16, c2)],
        )
    if regime == "p3":
        A, B = u, v
        return PolyFq(F, [A, 0, F.neg(F.add(1, B)), F.neg(A), 0, 1])
    raise ValueError(f"unknown regime {regime!r}")


def quintic_root_count(tower: TowerCtx, regime: str, u: int, v: int) -> int:
    """Distinct roots in GF(q) of the regime quintic: ``(c, d)`` for ``q1mod6``, ``(A, B)`` for ``p3``."""
    if regime == "q1mod6" and tower.q % 6 != 1:
        raise ValueError("regime q1mod6 needs q = 1 (mod 6)")
    if regime == "p3" and tower.p != 3:
        raise ValueError("regime p3 needs characteristic 3")
    return count_distinct_roots(quintic_poly(tower, regime, u, v))


def formula_regime(tower: TowerCtx) -> str | None:
    if tower.p == 3:
        return "p3"
    if tower.q % 6 == 1:
        return "q1mod6"
    return None


def beta_decompose(tower: TowerCtx, c: int, d: int) -> BetaDecomposition:
    """``beta_ij(c + dZ)`` from base-field root counts; direct counting when no formulas apply."""
    if c == 0 and d == 0:
        raise ValueError("b = 0 is excluded")
    F = tower.base
    q = tower.q
    alpha = tower.alpha
    regime = formula_regime(tower)
    if regime is None:
        return beta_decompose_direct(tower, c, d)

    half = F.inv(F.from_int(2))
    minus_4alpha = F.neg(F.smul(4, alpha))
    b10 = 0 if c != 0 else _cubic_solutions(F, minus_4alpha, 1, F.mul(d, half))

    if regime == "p3":
        b11 = 1 if d == 0 else 0
        b01 = q - 1 if d == 0 else 0
        if d == 0:
            b00 = _nonzero_square_roots(F, F.div(F.add(F.mul(c, c), 1), alpha))
        elif c == 0:
            b00 = 0
        else:
            c2 = F.mul(c, c)
            A = F.div(F.mul(F.mul(d, d), alpha), c2)
            B = F.inv(c2)
            b00 = quintic_root_count(tower, "p3", A, B)
        return BetaDecomposition(b11, b10, b01, b00)

    b11 = 0
    b01 = 0 if d != 0 else _cubic_solutions(F, F.from_int(4), F.from_int(3), F.mul(c, half))
    ch, dh = F.mul(c, half), F.mul(d, half)
    four = F.from_int(4)
    if ch == 0:
        b00 = _nonzero_square_roots(F, F.div(F.sub(F.mul(F.mul(dh, dh), alpha), F.from_int(3)), four))
    elif dh == 0:
        b00 = _nonzero_square_roots(F, F.div(F.add(F.mul(ch, ch), 1), F.mul(four, alpha)))
    else:
        b00 = quintic_root_count(tower, "q1mod6", ch, dh)
    return BetaDecomposition(b11, b10, b01, b00)


# -- summaries ------------------------------------------------------------------------


@dataclass(frozen=True)
class BoomerangSummary:
    beta_f: int
    nu: Spectrum | None
    status: str  # "computed", "theorem", "not-covered", "observation"
    note: str = ""


EXCEPTIONAL_Q1MOD6 = {7: 3, 19: 4, 313: 3}


def closed_form_regime(q: int, p: int) -> str:
    if p == 3:
        return "p3"
    if p == 5 and q % 6 == 1:
        return "p5-conjecture"
    if q % 6 == 1:
        return "q1mod6"
    return "q5mod6"


def closed_form_summary(q: int, p: int) -> BoomerangSummary:
    regime = closed_form_regime(q, p)
    if regime == "p3":
        if q < 9:
            return BoomerangSummary(q + 2, None, "theorem", "nu counts stated for q >= 9 only")
        if q % 4 == 1:
            nu = {q + 2: (q - 1) // 2, q: (q - 1) // 2}
        else:
            nu = {q + 2: (q + 1) // 2, q: (q - 3) // 2}
        return BoomerangSummary(q + 2, Spectrum(nu), "theorem", "partial: nu_(q+2) and nu_q")
    if regime == "q1mod6":
        return BoomerangSummary(EXCEPTIONAL_Q1MOD6.get(q, 5), None, "theorem")
    raise NotCoveredError(f"no closed form for q={q} (regime {regime})")


def boomerang_summary(f: PowerMap, mode: str = "bruteforce") -> BoomerangSummary:
    if mode == "bruteforce":
        row = bct_row(f).raw
        nu = Spectrum.from_values(row[1:])
        status = "computed"
        if f.is_q_plus_2:
            regime = closed_form_regime(f.tower.q, f.tower.p)
            if regime in ("p5-conjecture", "q5mod6"):
                status = "observation"
        return BoomerangSummary(nu.max_value, nu, status)
    if mode == "closed_form":
        if not f.is_q_plus_2:
            raise ValueError("closed forms cover only the exponent q+2")
        return closed_form_summary(f.tower.q, f.tower.p)
    raise ValueError(f"unknown mode {mode!r}")


# -- characteristic-3 witnesses -------------------------------------------------------


@dataclass(frozen=True)
class WitnessResult:
    target: str
    b: int
    beta: int
    classification_ok: bool


_TARGETS = {"nu1": (1, 3), "nu2": (2, 9), "nu5": (5, 27)}


def base_classification_ok(row: BctRow) -> bool:
    """For ``c`` in GF(q)^*: ``beta(c) = q+2`` when ``c^2 + 1`` is a non-square, else ``q``."""
    tower = row.f.tower
    F = tower.base
    q = tower.q
    c = F.elements()[1:]
    expect = np.where(F.eta(F.add(F.mul(c, c), 1)) == -1, q + 2, q)
    return bool(np.array_equal(row.quartered[c], expect))


def witness_search(f: PowerMap, target: str, row: BctRow | None = None) -> WitnessResult:
    """Smallest ``b`` with ``beta(b)`` equal to 1, 2 or 5; raises ``LookupError`` if none exists."""
    if target not in _TARGETS:
        raise ValueError(f"unknown target {target!r}")
    tower = f.tower
    if tower.p != 3 or not f.is_q_plus_2:
        raise ValueError("witness search is defined for x^(q+2) in characteristic 3")
    value, q_min = _TARGETS[target]
    if tower.q < q_min:
        raise ValueError(f"{target} needs q >= {q_min}")
    row = row if row is not None else bct_row(f)
    hits = np.flatnonzero(row.quartered[1:] == value)
    if len(hits) == 0:
        raise LookupError(f"no b with beta(b) = {value} at q = {tower.q}")
    b = int(hits[0]) + 1
    return WitnessResult(target, b, value, base_classification_ok(row))


# -- lemma scans ----------------------------------------------------------------------


def beta_2c_lemma_holds(row: BctRow) -> bool:
    """``q = 1 (mod 6)``: ``beta(2c)`` lies in {3}, {0,3} or {0,1,2} by the class of ``c^2+1``."""
    tower = row.f.tower
    F, T = tower.base, tower.top
    for c in range(1, F.order):
        v = row.beta(T.smul(2, c))
        e = F.add(F.mul(c, c), 1)
        allowed = {0, 1, 2} if e == 0 else ({3} if F.eta(e) == -1 else {0, 3})
        if v not in allowed:
            return False
    return True


def beta_2dz_p5_lemma_holds(row: BctRow) -> bool:
    """``p = 5``, m even: ``beta(2dZ)`` is 3 when ``d^2 alpha + 2`` is a square, else 0 or 3."""
    tower = row.f.tower
    F, T = tower.base, tower.top
    for d in range(1, F.order):
        v = row.beta(T.smul(2, tower.join(0, d)))
        e = F.add(F.mul(F.mul(d, d), tower.alpha), F.from_int(2))
        allowed = {3} if F.eta(e) == 1 else {0, 3}
        if v not in allowed:
            return False
    return True


def sextic_square_counterexamples(F: FieldCtx) -> list[tuple[int, int]]:
    """Pairs ``(b, c)``, ``c != 0``, where ``x^6 + b x^3 + c`` is a square yet ``b^2 != 4c``."""
    from ffspectra.polys import is_nth_power

    bad = []
    for b in range(F.order):
        for c in range(1, F.order):
            if F.sub(F.mul(b, b), F.smul(4, c)) != 0 and is_nth_power(PolyFq(F, [c, 0, 0, b, 0, 0, 1]), 2):
                bad.append((b, c))
    return bad
