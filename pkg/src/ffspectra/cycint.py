"""Exact elements of Z[xi], xi a primitive p-th root of unity."""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np


class CycInt:
    """``sum_j n_j xi^j`` stored canonically with ``n_{p-1} = 0``.

    The relation ``1 + xi + ... + xi^(p-1) = 0`` makes the all-ones vector zero, so
    subtracting the last coordinate from every coordinate gives a unique representative.
    """

    __slots__ = ("p", "coeffs")

    def __init__(self, p: int, coeffs: Iterable[int]) -> None:
        c = [int(v) for v in coeffs]
        if len(c) != p:
            raise ValueError(f"expected {p} coefficients, got {len(c)}")
        last = c[-1]
        self.p = p
        self.coeffs = tuple(v - last for v in c)

    @classmethod
    def from_int(cls, p: int, n: int) -> CycInt:
        return cls(p, [n] + [0] * (p - 1))

    @classmethod
    def xi(cls, p: int, k: int = 1) -> CycInt:
        c = [0] * p
        c[k % p] = 1
        return cls(p, c)

    @classmethod
    def from_exponents(cls, p: int, exponents: np.ndarray) -> CycInt:
        """``sum_x xi^(e_x)`` for an array of exponents in ``range(p)``."""
        return cls(p, np.bincount(np.asarray(exponents).ravel() % p, minlength=p).tolist())

    def _coerce(self, other) -> CycInt:
        if isinstance(other, CycInt):
            if other.p != self.p:
                raise ValueError("mismatched roots of unity")
            return other
        if isinstance(other, (int, np.integer)):
            return CycInt.from_int(self.p, int(other))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return CycInt(self.p, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return CycInt(self.p, [a - b for a, b in zip(self.coeffs, o.coeffs)])

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __neg__(self) -> CycInt:
        return CycInt(self.p, [-a for a in self.coeffs])

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        p = self.p
        out = [0] * p
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    if b:
                        out[(i + j) % p] += a * b
        return CycInt(p, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> CycInt:
        if k < 0:
            raise ValueError("negative powers are not defined in Z[xi]")
        result = CycInt.from_int(self.p, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, k: int) -> CycInt:
        """Multiply by ``xi^k``."""
        k %= self.p
        c = self.coeffs
        return CycInt(self.p, c[-k:] + c[:-k] if k else c)

    def conj(self) -> CycInt:
        p = self.p
        return CycInt(p, [self.coeffs[(-j) % p] for j in range(p)])

    def abs2(self) -> CycInt:
        return self * self.conj()

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_int(self) -> int:
        if not self.is_rational():
            raise ValueError(f"{self} is not a rational integer")
        return self.coeffs[0]

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self) -> int:
        return hash((self.p, self.coeffs))

    def __repr__(self) -> str:
        if self.is_rational():
            return f"CycInt({self.p}: {self.coeffs[0]})"
        return f"CycInt({self.p}: {list(self.coeffs)})"


def canonical_rows(counts: np.ndarray) -> np.ndarray:
    """Canonicalize a stack of coefficient vectors along the last axis."""
    return counts - counts[..., -1:]


def rational_values(counts: np.ndarray) -> np.ndarray:
    """Rational integer values of canonical rows; raises if any row is irrational."""
    canon = canonical_rows(counts)
    if np.any(canon[..., 1:]):
        raise ValueError("some sums are not rational integers")
    return canon[..., 0]


def as_cycints(p: int, rows: Sequence) -> list[CycInt]:
    return [CycInt(p, r) for r in np.asarray(rows).tolist()]
