"""The ternary cyclic code ``c_(a,b) = (Tr(a g^(i(q+2)) + b g^i))_i`` of length ``q^2 - 1``.

``g`` is the tower generator. Weights come either from the codeword itself or from
the Walsh value ``W_f(-b, a)`` via ``w = 2q^2/3 - 2 W_f(-b, a)/3``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ffspectra.cycint import CycInt
from ffspectra.diff import PowerMap
from ffspectra.ff_core import TowerCtx, _TableField, build_field, build_tower
from ffspectra.polys import PolyFq
from ffspectra.spectrum import Spectrum
from ffspectra.walsh import walsh_at, walsh_stats

CODE_ENGINES = ("direct", "via_walsh")


def frobenius_orbit(F: _TableField, e: int) -> list[int]:
    orbit = [int(e)]
    while True:
        nxt = int(F.frobenius(orbit[-1]))
        if nxt == orbit[0]:
            return orbit
        orbit.append(nxt)


def minimal_polynomial(F: _TableField, e: int) -> PolyFq:
    """``prod (x - e^(p^j))`` over the Frobenius orbit; the coefficients lie in the prime field."""
    poly = PolyFq.const(F, 1)
    for r in frobenius_orbit(F, e):
        poly = poly * PolyFq(F, [F.neg(r), 1])
    if any(c >= F.p for c in poly.coeffs):
        raise ArithmeticError("minimal polynomial has coefficients outside the prime field")
    return poly


def _prime_coeffs(poly: PolyFq) -> np.ndarray:
    # prime-field elements have codes 0..p-1, which are their integer values
    return np.array(poly.coeffs, dtype=np.int64)


@dataclass(frozen=True)
class CodeSpec:
    m: int
    n: int
    k: int
    tower: TowerCtx
    alpha_prim: int
    p1: PolyFq
    p2: PolyFq

    @property
    def q(self) -> int:
        return self.tower.q

    @property
    def parity_check_degrees(self) -> tuple[int, int]:
        return (self.p1.degree, self.p2.degree)

    @property
    def parity_check(self) -> np.ndarray:
        """Ascending coefficients of ``h = p1 p2`` over F_3."""
        return _prime_coeffs(self.p1 * self.p2)

    @property
    def expected_min_distance(self) -> int:
        return 2 * self.q * (self.q - 2) // 3

    @property
    def parameters(self) -> tuple[int, int, int]:
        return (self.n, self.k, self.expected_min_distance)

    @property
    def power_map(self) -> PowerMap:
        return PowerMap(self.tower)


@lru_cache(maxsize=8)
def build_code(m: int) -> CodeSpec:
    if m < 1:
        raise ValueError("m must be at least 1")
    tower = build_tower(build_field(3, m))
    T, q = tower.top, tower.q
    n = q * q - 1
    if math.gcd(n, q + 2) != 1:
        raise ArithmeticError("q+2 is not coprime to q^2-1")
    g = tower.generator
    p1 = minimal_polynomial(T, T.inv(g))
    p2 = minimal_polynomial(T, T.inv(T.pow(g, q + 2)))
    if p1.degree != 2 * m or p2.degree != 2 * m or p1 == p2:
        raise ArithmeticError("unexpected parity-check factor degrees")
    return CodeSpec(m=m, n=n, k=4 * m, tower=tower, alpha_prim=g, p1=p1, p2=p2)


@lru_cache(maxsize=8)
def _trace_rows(spec: CodeSpec) -> tuple[np.ndarray, np.ndarray]:
    """``A[a, i] = Tr(a g^(i(q+2)))`` and ``B[b, i] = Tr(b g^i)`` for every code ``a``, ``b``."""
    T = spec.tower.top
    i = np.arange(spec.n, dtype=np.int64)
    pw = T.exp[(i * (spec.q + 2)) % spec.n]
    base = T.exp[i]
    x = T.elements()
    A = T.trace(T.mul(x[:, None], pw[None, :])).astype(np.int8)
    B = T.trace(T.mul(x[:, None], base[None, :])).astype(np.int8)
    return A, B


def codeword(spec: CodeSpec, a: int, b: int) -> np.ndarray:
    T = spec.tower.top
    i = np.arange(spec.n, dtype=np.int64)
    return T.trace(T.add(T.mul(a, T.exp[(i * (spec.q + 2)) % spec.n]), T.mul(b, T.exp[i])))


def weight_from_walsh(q: int, w: CycInt | int) -> int:
    if isinstance(w, CycInt):
        w = w.to_int()
    num = 2 * q * q - 2 * w
    if num % 3:
        raise ArithmeticError(f"Walsh value {w} gives a non-integral weight")
    return num // 3


def codeword_weight(spec: CodeSpec, a: int, b: int, engine: str = "direct") -> int:
    if engine == "direct":
        return int(np.count_nonzero(codeword(spec, a, b)))
    if engine == "via_walsh":
        T = spec.tower.top
        return weight_from_walsh(spec.q, walsh_at(spec.power_map, T.neg(b), a))
    raise ValueError(f"unknown engine {engine!r}")


def closed_form_weights(q: int) -> Spectrum:
    t = q**4 - q**3 - q * q + q
    return Spectrum(
        {
            0: 1,
            2 * q * (q - 2) // 3: t // 6,
            2 * q * (q - 1) // 3: q**3 - q,
            2 * q * q // 3: (q**4 - q**3 + q * q + q) // 2 - 1,
            2 * q * (q + 1) // 3: t // 3,
        }
    )


def weight_distribution(m: int, engine: str = "via_walsh", jobs: int = 1) -> Spectrum:
    """Weights of all ``3^(4m)`` codewords."""
    spec = build_code(m)
    q, Q = spec.q, spec.tower.Q
    if engine == "direct":
        A, B = _trace_rows(spec)
        hist: dict[int, int] = {}
        for a in range(Q):
            w = np.count_nonzero((A[a][None, :] + B) % 3, axis=1)
            for val, cnt in zip(*np.unique(w, return_counts=True)):
                hist[int(val)] = hist.get(int(val), 0) + int(cnt)
        return Spectrum(hist)
    if engine == "via_walsh":
        # Walsh pairs (-b, a) with a != 0 cover every codeword with a != 0;
        # a = 0 leaves the zero word and Q-1 words of weight 2q^2/3.
        dist = walsh_stats(spec.power_map, jobs=jobs).distribution()
        hist = {0: 1, 2 * q * q // 3: Q - 1}
        out = Spectrum(hist) + {weight_from_walsh(q, w): c for w, c in dist.items()}
        return out
    raise ValueError(f"unknown engine {engine!r}")


def is_codeword(spec: CodeSpec, c: np.ndarray) -> bool:
    """``c(x) h(x) = 0`` modulo ``x^n - 1`` over F_3."""
    prod = np.convolve(np.asarray(c, dtype=np.int64) % 3, spec.parity_check)
    folded = np.zeros(spec.n, dtype=np.int64)
    np.add.at(folded, np.arange(len(prod)) % spec.n, prod)
    return not np.any(folded % 3)


def cyclic_shift(c: np.ndarray, k: int = 1) -> np.ndarray:
    return np.roll(c, k)


def pless_first_moment(spec: CodeSpec, dist: Spectrum) -> tuple[int, int]:
    """``(sum w * count, n * (3^k - 3^(k-1)))``; equal when no coordinate is identically zero."""
    size = 3**spec.k
    return dist.weighted_total, spec.n * (size - size // 3)
