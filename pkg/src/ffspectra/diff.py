"""Differential spectra of power maps: the a=1 derivative row, the shifted count
delta(b) = delta_f(1, b + 1/4), its base-field evaluators, and the closed forms for x^(q+2)."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ffspectra.ff_core import FieldCtx, TowerCtx, _TableField
from ffspectra.spectrum import Spectrum


@dataclass(frozen=True, eq=False)
class PowerMap:
    """``x -> x^d`` on an ambient field; ``d`` defaults to ``q+2`` on a tower."""

    ambient: TowerCtx | FieldCtx
    d: int | None = None

    def __post_init__(self) -> None:
        if self.d is None:
            if not isinstance(self.ambient, TowerCtx):
                raise ValueError("a default exponent needs a tower")
            object.__setattr__(self, "d", self.ambient.q + 2)
        if self.d < 1:
            raise ValueError("exponent must be positive")

    @property
    def field(self) -> _TableField:
        return self.ambient.top if isinstance(self.ambient, TowerCtx) else self.ambient

    @property
    def tower(self) -> TowerCtx:
        if not isinstance(self.ambient, TowerCtx):
            raise TypeError("this operation needs a tower")
        return self.ambient

    @property
    def size(self) -> int:
        return self.field.order

    @property
    def is_q_plus_2(self) -> bool:
        return isinstance(self.ambient, TowerCtx) and self.d == self.ambient.q + 2

    def __call__(self, x):
        return self.field.pow(x, self.d)

    def values(self) -> np.ndarray:
        """``f(x)`` for every code ``x``, cached."""
        cache = self.__dict__.get("_values")
        if cache is None:
            cache = self(self.field.elements())
            cache.flags.writeable = False
            object.__setattr__(self, "_values", cache)
        return cache

    def derivative(self, a: int = 1) -> np.ndarray:
        """``D_a f(x) = f(x+a) - f(x)`` for every code ``x``."""
        F = self.field
        x = F.elements()
        fx = self.values()
        return F.sub(fx[F.add(x, a)], fx)


def derivative_histogram(f: PowerMap) -> np.ndarray:
    """``hist[b] = delta_f(1, b)`` for every code ``b``."""
    return np.bincount(f.derivative(1), minlength=f.size)


def full_ddt(f: PowerMap) -> np.ndarray:
    """Every row ``delta_f(a, .)``; quadratic in the field size, meant for tiny fields."""
    Q = f.size
    out = np.zeros((Q, Q), dtype=np.int64)
    for a in range(Q):
        out[a] = np.bincount(f.derivative(a), minlength=Q)
    return out


def _quarter(F: _TableField) -> int:
    return F.inv(F.from_int(4))


def delta_table(tower: TowerCtx) -> np.ndarray:
    """``delta(b) = #{u : 2u^(q+1) + u^2 = b}`` for every code ``b``, counted over ``u`` directly."""
    T = tower.top
    u = T.elements()
    vals = T.add(T.smul(2, T.pow(u, tower.q + 1)), T.mul(u, u))
    return np.bincount(vals, minlength=T.order)


def delta_b(f: PowerMap, b: int) -> int:
    """``delta(b)`` by direct count over ``u``, checked against the derivative row at ``b + 1/4``."""
    if not f.is_q_plus_2:
        raise ValueError("delta(b) is defined for the exponent q+2")
    T = f.field
    tower = f.tower
    u = T.elements()
    direct = int(np.count_nonzero(T.add(T.smul(2, T.pow(u, tower.q + 1)), T.mul(u, u)) == b))
    via_row = int(np.count_nonzero(f.derivative(1) == T.add(b, _quarter(T))))
    if direct != via_row:
        raise ArithmeticError(f"delta({b}): direct {direct} != derivative row {via_row}")
    return direct


def _quadratic_roots(F: FieldCtx, a2: int, a1: int, a0: int) -> set[int]:
    """Roots in ``F`` of ``a2 y^2 + a1 y + a0``; degenerates to the linear case when ``a2 = 0``."""
    if a2 == 0:
        if a1 == 0:
            if a0 == 0:
                raise ValueError("zero polynomial")
            return set()
        return {F.div(F.neg(a0), a1)}
    disc = F.sub(F.mul(a1, a1), F.smul(4, F.mul(a2, a0)))
    if F.eta(disc) == -1:
        return set()
    inv2a = F.inv(F.smul(2, a2))
    return {F.mul(F.add(F.neg(a1), r), inv2a) for r in F.sqrt_set(disc)}


def delta_formula(tower: TowerCtx, c: int, d: int) -> int:
    """``delta(c + dZ)`` from base-field data only.

    ``d = 0``: roots of ``3x^2 = c`` plus roots of ``y^2 = -c/alpha``.
    ``d != 0``: twice the number of square roots ``y`` of ``3y^2 - cy - d^2 alpha/4``.
    """
    F = tower.base
    if c == 0 and d == 0:
        raise ValueError("use delta_b for b = 0")
    if d == 0:
        three = F.from_int(3)
        first = 0 if three == 0 else 1 + F.eta(F.div(c, three))
        second = 1 + F.eta(F.neg(F.div(c, tower.alpha)))
        return first + second
    a0 = F.neg(F.mul(F.mul(F.mul(d, d), tower.alpha), _quarter(F)))
    roots = _quadratic_roots(F, F.from_int(3), F.neg(c), a0)
    return 2 * sum(1 for y in roots if F.eta(y) == 1)


def omega_sqrt_minus3(tower: TowerCtx) -> int:
    """A square root of -3 in GF(q^2) (in the base field when one exists there)."""
    F = tower.base
    m3 = F.from_int(-3)
    if m3 == 0:
        return 0
    if F.eta(m3) == 1:
        return F.sqrt(m3)
    s = F.sqrt(F.div(m3, tower.alpha))
    return tower.join(0, s)


def delta_two_locus(tower: TowerCtx) -> set[int]:
    """``{2c(3 + w), 2c(3 - w) : c a non-zero square}``, w a square root of -3."""
    F, T = tower.base, tower.top
    w = omega_sqrt_minus3(tower)
    three = F.from_int(3)
    out = set()
    for c in range(1, F.order):
        if F.eta(c) == 1:
            for t in (T.add(three, w), T.sub(three, w)):
                out.add(T.mul(F.smul(2, c), t))
    return out


def closed_form_spectrum(q: int) -> Spectrum:
    """Differential spectrum of ``x^(q+2)`` on GF(q^2) by the three-case theorem."""
    if q % 3 == 0:
        return Spectrum({0: (q * q + q - 2) // 2, 2: (q * q - q) // 2, q: 1})
    if q % 6 == 1:
        return Spectrum({0: (q * q - 1) // 2, 1: 1, 2: (q * q - 1) // 2})
    if q % 6 == 5:
        return Spectrum({0: (3 * q + 1) * (q - 1) // 4, 1: 1, 2: q - 1, 4: (q - 1) ** 2 // 4})
    raise ValueError(f"q={q} is not an odd prime power")


def diff_spectrum(f: PowerMap, mode: str = "bruteforce") -> Spectrum:
    if mode == "bruteforce":
        return Spectrum.from_values(derivative_histogram(f))
    if mode == "closed_form":
        if not f.is_q_plus_2:
            raise ValueError("the closed form covers only the exponent q+2")
        return closed_form_spectrum(f.tower.q)
    raise ValueError(f"unknown mode {mode!r}")


def is_locally_apn(f: PowerMap) -> bool:
    """Whether the largest ``delta_f(1, b)`` over ``b`` outside the prime field is exactly 2."""
    hist = derivative_histogram(f)
    return int(hist[f.field.p :].max()) == 2
