"""Univariate polynomials over table-backed fields: discriminants, root counts,
factorization types, character sums and the small-field counting lemmas."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from ffspectra.cycint import CycInt
from ffspectra.ff_core import FieldCtx, _TableField, build_tower

FactorType = tuple[int, ...]


class PolyFq:
    """Polynomial with ascending coefficient codes over ``ctx``; trailing zeros are trimmed."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: _TableField, coeffs: Sequence[int]) -> None:
        c = [int(v) for v in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.ctx = ctx
        self.coeffs = tuple(c)

    @classmethod
    def x(cls, ctx: _TableField) -> PolyFq:
        return cls(ctx, [0, 1])

    @classmethod
    def const(cls, ctx: _TableField, c: int) -> PolyFq:
        return cls(ctx, [c])

    @classmethod
    def monomial(cls, ctx: _TableField, k: int, c: int = 1) -> PolyFq:
        return cls(ctx, [0] * k + [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __eq__(self, other) -> bool:
        return isinstance(other, PolyFq) and other.ctx is self.ctx and other.coeffs == self.coeffs

    def __hash__(self) -> int:
        return hash((id(self.ctx), self.coeffs))

    def __repr__(self) -> str:
        return f"PolyFq({list(self.coeffs)})"

    def _same(self, other: PolyFq) -> None:
        if other.ctx is not self.ctx:
            raise ValueError("polynomials over different fields")

    def __add__(self, other: PolyFq) -> PolyFq:
        self._same(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return PolyFq(self.ctx, [self.ctx.add(self[k], other[k]) for k in range(n)])

    def __sub__(self, other: PolyFq) -> PolyFq:
        self._same(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return PolyFq(self.ctx, [self.ctx.sub(self[k], other[k]) for k in range(n)])

    def __neg__(self) -> PolyFq:
        return PolyFq(self.ctx, [self.ctx.neg(c) for c in self.coeffs])

    def __mul__(self, other: PolyFq) -> PolyFq:
        self._same(other)
        if self.is_zero() or other.is_zero():
            return PolyFq(self.ctx, [])
        F = self.ctx
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] = F.add(out[i + j], F.mul(a, b))
        return PolyFq(F, out)

    def scale(self, c: int) -> PolyFq:
        return PolyFq(self.ctx, [self.ctx.mul(c, v) for v in self.coeffs])

    def monic(self) -> PolyFq:
        if self.is_zero():
            raise ZeroDivisionError("zero polynomial has no monic form")
        return self.scale(self.ctx.inv(self.lc))

    def divmod(self, other: PolyFq) -> tuple[PolyFq, PolyFq]:
        self._same(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        F = self.ctx
        r = list(self.coeffs)
        dv = other.degree
        inv_lc = F.inv(other.lc)
        if len(r) - 1 < dv:
            return PolyFq(F, []), self
        quot = [0] * (len(r) - dv)
        for i in range(len(r) - 1, dv - 1, -1):
            c = r[i]
            if c:
                t = F.mul(c, inv_lc)
                quot[i - dv] = t
                for j, b in enumerate(other.coeffs):
                    if b:
                        r[i - dv + j] = F.sub(r[i - dv + j], F.mul(t, b))
        return PolyFq(F, quot), PolyFq(F, r[:dv])

    def __mod__(self, other: PolyFq) -> PolyFq:
        return self.divmod(other)[1]

    def __floordiv__(self, other: PolyFq) -> PolyFq:
        return self.divmod(other)[0]

    def derivative(self) -> PolyFq:
        F = self.ctx
        return PolyFq(F, [F.smul(k, c) for k, c in enumerate(self.coeffs)][1:])

    def __call__(self, x):
        """Horner evaluation at a code or an array of codes."""
        F = self.ctx
        acc = np.zeros_like(x) if isinstance(x, np.ndarray) else 0
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def eval_all(self) -> np.ndarray:
        return self(self.ctx.elements())

    def pow_mod(self, k: int, mod: PolyFq) -> PolyFq:
        result = PolyFq.const(self.ctx, 1) % mod
        base = self % mod
        while k:
            if k & 1:
                result = (result * base) % mod
            base = (base * base) % mod
            k >>= 1
        return result

    def pth_root(self) -> PolyFq:
        """``g`` with ``g^p = self``; requires every exponent to be a multiple of p."""
        F = self.ctx
        p = F.p
        if any(c for k, c in enumerate(self.coeffs) if k % p):
            raise ValueError("polynomial is not a p-th power")
        return PolyFq(F, [F.pow(c, F.order // p) for c in self.coeffs[::p]])


def poly_gcd(f: PolyFq, g: PolyFq) -> PolyFq:
    """Monic gcd (zero if both inputs are zero)."""
    while not g.is_zero():
        f, g = g, f % g
    return f.monic() if not f.is_zero() else f


# -- discriminant --------------------------------------------------------------------


def resultant(f: PolyFq, g: PolyFq) -> int:
    """``Res(f, g)`` with both polynomials taken at their actual degrees."""
    F = f.ctx
    if f.is_zero() or g.is_zero():
        return 0
    n, k = f.degree, g.degree
    if k == 0:
        return F.pow(g.lc, n)
    if n == 0:
        return F.pow(f.lc, k)
    r = f % g
    if r.is_zero():
        return 0
    sub = F.mul(F.pow(g.lc, n - r.degree), resultant(g, r))
    return F.neg(sub) if (n * k) % 2 else sub


def discriminant(f: PolyFq) -> int:
    """Discriminant ``(-1)^(n(n-1)/2) Res(f, f') / lc(f)`` with ``f'`` read at formal degree n-1."""
    n = f.degree
    if n < 2:
        raise ValueError("discriminant needs degree at least 2")
    F = f.ctx
    df = f.derivative()
    if df.is_zero():
        return 0
    res = F.mul(F.pow(f.lc, (n - 1) - df.degree), resultant(f, df))
    d = F.div(res, f.lc)
    return F.neg(d) if (n * (n - 1) // 2) % 2 else d


# -- roots and factorization types ---------------------------------------------------


def roots_by_evaluation(f: PolyFq) -> int:
    if f.is_zero():
        raise ValueError("the zero polynomial has every element as a root")
    return int(np.count_nonzero(f.eval_all() == 0))


def roots_by_gcd(f: PolyFq) -> int:
    """``deg gcd(f, x^q - x)``, with ``x^q`` reduced modulo ``f`` by repeated squaring."""
    if f.is_zero():
        raise ValueError("the zero polynomial has every element as a root")
    if f.degree == 0:
        return 0
    x = PolyFq.x(f.ctx)
    xq = x.pow_mod(f.ctx.order, f)
    return poly_gcd(f, xq - x).degree


def count_distinct_roots(f: PolyFq) -> int:
    """Distinct roots of ``f`` in its coefficient field, counted two independent ways."""
    a = roots_by_evaluation(f)
    b = roots_by_gcd(f)
    if a != b:
        raise ArithmeticError(f"root counts disagree: evaluation {a}, gcd {b}")
    return a


def distinct_degree_type(f: PolyFq) -> FactorType:
    """Sorted irreducible-factor degrees of a squarefree ``f`` via distinct-degree factorization."""
    F = f.ctx
    if f.degree < 1:
        return ()
    rest = f.monic()
    x = PolyFq.x(F)
    h = x
    degs: list[int] = []
    i = 0
    while rest.degree >= 2 * (i + 1):
        i += 1
        h = h.pow_mod(F.order, rest)
        g = poly_gcd(rest, h - x)
        if g.degree > 0:
            if g.degree % i:
                raise ValueError("polynomial is not squarefree")
            degs += [i] * (g.degree // i)
            rest = rest // g
            h = h % rest if rest.degree > 0 else h
    if rest.degree > 0:
        degs.append(rest.degree)
    return tuple(sorted(degs))


def squarefree_decomposition(f: PolyFq) -> list[tuple[PolyFq, int]]:
    """Pairwise coprime squarefree factors with multiplicities, valid in characteristic p."""
    F = f.ctx
    f = f.monic()
    one = PolyFq.const(F, 1)
    out: list[tuple[PolyFq, int]] = []
    if f.degree == 0:
        return out
    df = f.derivative()
    if df.is_zero():
        return [(g, e * F.p) for g, e in squarefree_decomposition(f.pth_root())]
    c = poly_gcd(f, df)
    w = f // c
    i = 1
    while w != one:
        y = poly_gcd(w, c)
        fac = w // y
        if fac.degree > 0:
            out.append((fac, i))
        w = y
        c = c // y
        i += 1
    if c != one:
        out += [(g, e * F.p) for g, e in squarefree_decomposition(c.pth_root())]
    return out


def radical_degree(f: PolyFq) -> int:
    """Number of distinct roots of ``f`` in an algebraic closure."""
    return sum(g.degree for g, _ in squarefree_decomposition(f))


def is_nth_power(f: PolyFq, n: int) -> bool:
    """Whether ``f`` is a constant times the n-th power of a polynomial."""
    return all(e % n == 0 for _, e in squarefree_decomposition(f))


def cubic_poly(ctx: _TableField, a: int, b: int) -> PolyFq:
    return PolyFq(ctx, [b, a, 0, 1])


def factor_type_by_roots(ctx: FieldCtx, a: int, b: int) -> FactorType:
    """Type of a squarefree ``x^3 + a x + b`` from its root count alone."""
    n = roots_by_evaluation(cubic_poly(ctx, a, b))
    return {3: (1, 1, 1), 1: (1, 2), 0: (3,)}[n]


def cubic_classify(ctx: FieldCtx, a: int, b: int) -> FactorType:
    """Factorization type of ``x^3 + a x + b`` from discriminant and cube/trace criteria."""
    F = ctx
    if F.p == 3:
        if a == 0:
            raise ValueError("classification needs a != 0 in characteristic 3")
        minus_a = F.neg(a)
        if F.eta(minus_a) == -1:
            return (1, 2)
        c = F.sqrt(minus_a)
        return (1, 1, 1) if F.trace(F.div(b, F.pow(c, 3))) == 0 else (3,)

    disc = F.sub(F.neg(F.smul(4, F.pow(a, 3))), F.smul(27, F.mul(b, b)))
    if disc == 0:
        raise ValueError("repeated root: the discriminant vanishes")
    if F.eta(disc) == -1:
        return (1, 2)
    c = F.sqrt(F.div(disc, F.from_int(81)))
    minus3 = F.from_int(-3)
    half = F.inv(F.from_int(2))
    # The two choices of c give conjugate values whose product (-a/3)^3 is a cube, so
    # either works, except when a = 0 and one of them vanishes: use the non-zero one.
    if F.eta(minus3) == 1:
        omega = F.sqrt(minus3)
        t = F.mul(half, F.add(F.neg(b), F.mul(c, omega)))
        if t == 0:
            t = F.mul(half, F.sub(F.neg(b), F.mul(c, omega)))
        return (1, 1, 1) if F.is_cube(t) else (3,)
    # omega = s*Z in the tower, with s^2 = -3/alpha
    tower = build_tower(F)
    s = F.sqrt(F.div(minus3, tower.alpha))
    t = tower.join(F.mul(half, F.neg(b)), F.mul(half, F.mul(c, s)))
    if t == 0:
        t = tower.join(F.mul(half, F.neg(b)), F.neg(F.mul(half, F.mul(c, s))))
    return (1, 1, 1) if tower.top.is_cube(t) else (3,)


def stickelberger_check(f: PolyFq) -> tuple[int, bool]:
    """Factor count ``k`` and whether ``eta(D(f)) == (-1)^(n-k)``."""
    n = f.degree
    if n < 2:
        raise ValueError("degree must be at least 2")
    d = discriminant(f)
    if d == 0:
        raise ValueError("discriminant vanishes")
    k = len(distinct_degree_type(f))
    return k, f.ctx.eta(d) == (-1) ** (n - k)


# -- character sums ------------------------------------------------------------------


def additive_character_sum(ctx: _TableField, values: np.ndarray) -> CycInt:
    """``sum xi^Tr(v)`` over an array of field codes."""
    return CycInt.from_exponents(ctx.p, ctx.trace(values))


def gauss_sum(ctx: _TableField) -> CycInt:
    """Quadratic Gauss sum ``sum_{c != 0} eta(c) xi^Tr(c)``."""
    x = ctx.elements()[1:]
    e = ctx.eta(x)
    tr = ctx.trace(x)
    pos = np.bincount(tr[e == 1], minlength=ctx.p)
    neg = np.bincount(tr[e == -1], minlength=ctx.p)
    return CycInt(ctx.p, (pos - neg).tolist())


@dataclass(frozen=True)
class CharSumResult:
    additive_direct: CycInt
    additive_closed: CycInt
    mult_direct: int
    mult_closed: int

    @property
    def ok(self) -> bool:
        return self.additive_direct == self.additive_closed and self.mult_direct == self.mult_closed


def char_sum_identities(ctx: FieldCtx, a2: int, a1: int, a0: int) -> CharSumResult:
    """Quadratic additive and multiplicative character sums, directly and by closed form."""
    F = ctx
    if a2 == 0:
        raise ValueError("leading coefficient must be non-zero")
    vals = PolyFq(F, [a0, a1, a2]).eval_all()
    add_direct = additive_character_sum(F, vals)
    shift = F.sub(a0, F.div(F.mul(a1, a1), F.smul(4, a2)))
    add_closed = gauss_sum(F).shift(F.trace(shift)) * F.eta(a2)
    mult_direct = int(F.eta(vals).sum())
    disc = F.sub(F.mul(a1, a1), F.smul(4, F.mul(a0, a2)))
    mult_closed = -F.eta(a2) if disc != 0 else (F.order - 1) * F.eta(a2)
    return CharSumResult(add_direct, add_closed, mult_direct, mult_closed)


# cos(2*pi*k/n) for the orders whose cosines are rational
_RATIONAL_COS = {
    2: (Fraction(1), Fraction(-1)),
    3: (Fraction(1), Fraction(-1, 2), Fraction(-1, 2)),
    4: (Fraction(1), Fraction(0), Fraction(-1), Fraction(0)),
    6: (Fraction(1), Fraction(1, 2), Fraction(-1, 2), Fraction(-1), Fraction(-1, 2), Fraction(1, 2)),
}


@dataclass(frozen=True)
class WeilResult:
    abs2: Fraction
    bound: int
    distinct_roots: int

    @property
    def ok(self) -> bool:
        return self.abs2 <= self.bound

    def __bool__(self) -> bool:
        return self.ok


def multiplicative_sum_abs2(ctx: _TableField, f: PolyFq, n: int) -> Fraction:
    """``|sum_x chi(f(x))|^2`` for the order-n character ``chi(g^k) = exp(2 pi i k / n)``."""
    if n not in _RATIONAL_COS:
        raise ValueError(f"exact evaluation supports character orders {sorted(_RATIONAL_COS)}, got {n}")
    if (ctx.order - 1) % n:
        raise ValueError(f"no character of order {n} on GF({ctx.order})")
    vals = f.eval_all()
    logs = ctx.log[vals[vals != 0]] % n
    cnt = np.bincount(logs, minlength=n).tolist()
    cos = _RATIONAL_COS[n]
    return sum((cnt[r] * cnt[s] * cos[(r - s) % n] for r in range(n) for s in range(n)), Fraction(0))


def weil_bound_check(f: PolyFq, chi_order: int) -> WeilResult:
    """Exact check of ``|S|^2 <= (d-1)^2 q`` for ``S = sum chi(f(x))``."""
    F = f.ctx
    if f.is_zero() or f.lc != 1:
        raise ValueError("f must be monic")
    if chi_order < 2 or (F.order - 1) % chi_order:
        raise ValueError(f"character order must divide q-1 and exceed 1, got {chi_order}")
    if is_nth_power(f, chi_order):
        raise ValueError("f is an n-th power; the bound does not apply")
    d = radical_degree(f)
    return WeilResult(multiplicative_sum_abs2(F, f, chi_order), (d - 1) ** 2 * F.order, d)


# -- counting lemmas in characteristic 3 ---------------------------------------------


@dataclass(frozen=True)
class LemmaResult:
    which: str
    q: int
    i: int | None
    count: int | None
    witness: tuple[int, int] | None
    bound_ok: bool


def _lemma_square_run(F: FieldCtx) -> LemmaResult:
    x = F.elements()[1:]
    ok = (F.eta(x) == 1) & (F.eta(F.add(x, 1)) == 1) & (F.eta(F.sub(x, 1)) == 1)
    c = int(np.count_nonzero(ok))
    q = F.order
    t = 8 * c - q - 9  # c <= (q + 2 sqrt(q) + 9)/8
    return LemmaResult("square_run", q, None, c, None, t <= 0 or t * t <= 4 * q)


def _lemma_trace_pair(F: FieldCtx, i: int) -> LemmaResult:
    x = F.elements()
    sel = (F.trace(x) == i) & (F.trace(F.mul(x, x)) == 0)
    c = int(np.count_nonzero(sel))
    q = F.order
    t = q - 9 * c  # c >= (q - 6 sqrt(q))/9
    return LemmaResult("trace_pair", q, i, c, None, t <= 0 or t * t <= 36 * q)


def _lemma_cubic_witness(F: FieldCtx, i: int) -> LemmaResult:
    x = F.elements()[1:]
    x = x[F.eta(x) == -1]
    y = F.sub(F.pow(x, 3), x)
    x, y = x[F.eta(y) == 1], y[F.eta(y) == 1]
    for xv, yv in zip(x.tolist(), y.tolist()):
        for b in F.sqrt_set(yv):
            if F.trace(b) == i:
                return LemmaResult("cubic_witness", F.order, i, None, (xv, b), True)
    return LemmaResult("cubic_witness", F.order, i, None, None, False)


def counting_lemma_checks(ctx: FieldCtx, which: str, i: int | None = None) -> list[LemmaResult]:
    """Run one counting lemma; ``i=None`` means every residue in {0,1,2} where one applies."""
    if ctx.p != 3:
        raise ValueError("the counting lemmas are stated for characteristic 3")
    if which == "square_run":
        return [_lemma_square_run(ctx)]
    residues = [i] if i is not None else [0, 1, 2]
    if any(r not in (0, 1, 2) for r in residues):
        raise ValueError("residue must lie in {0, 1, 2}")
    if which == "trace_pair":
        return [_lemma_trace_pair(ctx, r) for r in residues]
    if which == "cubic_witness":
        if ctx.order < 81:
            raise ValueError("the witness lemma needs q >= 81")
        return [_lemma_cubic_witness(ctx, r) for r in residues]
    raise ValueError(f"unknown lemma {which!r}")

