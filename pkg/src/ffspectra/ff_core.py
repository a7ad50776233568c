"""Table-backed arithmetic in GF(p^m) and in the quadratic tower GF(q^2) = GF(q)(Z), Z^2 = alpha.

Elements are integer codes: the coefficient vector of an element, read as digits
base ``p`` (least significant digit = constant coefficient).  Zero is code 0 and
one is code 1.  In the tower, ``c + d*Z`` has code ``c + q*d``, so the base-p
digits of a tower code are the digits of ``c`` followed by those of ``d``; the
additive group of either kind of field is therefore plain digit-wise addition.

Every arithmetic method accepts Python ints (returning ints) or numpy integer
arrays (returning arrays), so the same code path serves scalar formulas and
whole-field enumerations.
"""

from __future__ import annotations

import enum
import functools
import itertools
import math
import os
from dataclasses import dataclass
from typing import Iterable, Union

import numpy as np

DEFAULT_ENUM_CAP = 1 << 24
CAP_ENV_VAR = "FFSPECTRA_ENUM_CAP"

Code = Union[int, np.ndarray]


class EnumerationCapError(ValueError):
    """Raised when a requested field would exceed the enumeration cap."""


def enumeration_cap() -> int:
    """Largest admissible ``q^2``; override with the ``FFSPECTRA_ENUM_CAP`` environment variable."""
    raw = os.environ.get(CAP_ENV_VAR)
    if raw is None or raw.strip() == "":
        return DEFAULT_ENUM_CAP
    cap = int(raw)
    if cap < 9:
        raise ValueError(f"{CAP_ENV_VAR} must be at least 9, got {cap}")
    return cap


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    r = math.isqrt(n)
    return all(n % f for f in range(3, r + 1, 2))


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of ``n`` in increasing order."""
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


class QuadClass(enum.Enum):
    ZERO = 0
    SQUARE = 1
    NONSQUARE = -1

    @property
    def eta(self) -> int:
        return self.value


@dataclass(frozen=True)
class FieldParams:
    p: int
    m: int

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise ValueError(f"p={self.p} is not prime")
        if self.p == 2:
            raise ValueError("characteristic 2 is not supported")
        if self.m < 1:
            raise ValueError(f"extension degree must be positive, got m={self.m}")

    @property
    def q(self) -> int:
        return self.p**self.m


def _is_arr(x) -> bool:
    return isinstance(x, np.ndarray)


class _TableField:
    """Arithmetic on codes of a field with ``p**n`` elements via exp/log tables."""

    def __init__(self, p: int, n: int, exp: np.ndarray) -> None:
        self.p = p
        self.n = n
        self.order = p**n
        self._pk = [p**k for k in range(n)]
        if len(exp) != self.order - 1:
            raise ValueError("exponent table has the wrong length")
        exp = np.asarray(exp, dtype=np.int64)
        log = np.full(self.order, -1, dtype=np.int64)
        log[exp] = np.arange(self.order - 1, dtype=np.int64)
        if exp[0] != 1 or np.count_nonzero(log >= 0) != self.order - 1 or log[0] != -1:
            raise ValueError("exponent table does not enumerate the multiplicative group")
        self.exp = exp
        self.log = log
        self.exp.flags.writeable = False
        self.log.flags.writeable = False
        self._trace_weights = self._compute_trace_weights()

    # -- additive structure: digit-wise mod p ------------------------------------------

    def add(self, x: Code, y: Code) -> Code:
        p = self.p
        if self.n == 1:
            return (x + y) % p
        r = 0
        for pk in self._pk:
            r = r + ((x // pk + y // pk) % p) * pk
        return r

    def sub(self, x: Code, y: Code) -> Code:
        p = self.p
        if self.n == 1:
            return (x - y) % p
        r = 0
        for pk in self._pk:
            r = r + ((x // pk - y // pk) % p) * pk
        return r

    def neg(self, x: Code) -> Code:
        p = self.p
        if self.n == 1:
            return (-x) % p
        r = 0
        for pk in self._pk:
            r = r + ((-(x // pk)) % p) * pk
        return r

    def smul(self, k: int, x: Code) -> Code:
        """Multiply by the integer ``k`` (repeated addition)."""
        p = self.p
        k %= p
        if self.n == 1:
            return (k * x) % p
        r = 0
        for pk in self._pk:
            r = r + ((k * (x // pk)) % p) * pk
        return r

    def digits(self, x: Code) -> list:
        return [(x // pk) % self.p for pk in self._pk]

    # -- multiplicative structure ------------------------------------------------------

    def mul(self, x: Code, y: Code) -> Code:
        if _is_arr(x) or _is_arr(y):
            x = np.asarray(x)
            y = np.asarray(y)
            r = self.exp[(self.log[x] + self.log[y]) % (self.order - 1)]
            return np.where((x == 0) | (y == 0), 0, r)
        if x == 0 or y == 0:
            return 0
        return int(self.exp[(self.log[x] + self.log[y]) % (self.order - 1)])

    def pow(self, x: Code, k: int) -> Code:
        n1 = self.order - 1
        if _is_arr(x):
            zero = x == 0
            if k < 0 and zero.any():
                raise ZeroDivisionError("negative power of zero")
            r = self.exp[(self.log[x] * (k % n1)) % n1]
            if k == 0:
                return np.ones_like(x)
            return np.where(zero, 0, r)
        if x == 0:
            if k < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if k == 0 else 0
        return int(self.exp[(int(self.log[x]) * (k % n1)) % n1])

    def inv(self, x: Code) -> Code:
        return self.pow(x, -1)

    def div(self, x: Code, y: Code) -> Code:
        return self.mul(x, self.inv(y))

    def frobenius(self, x: Code, k: int = 1) -> Code:
        return self.pow(x, self.p**k)

    def from_int(self, k: int) -> int:
        """Code of the prime-field element ``k * 1``."""
        return k % self.p

    def elements(self) -> np.ndarray:
        return np.arange(self.order, dtype=np.int64)

    # -- characters and roots ----------------------------------------------------------

    def eta(self, x: Code) -> Code:
        """Quadratic character: 0, +1 or -1."""
        if _is_arr(x):
            return np.where(x == 0, 0, np.where(self.log[x] % 2 == 0, 1, -1))
        if x == 0:
            return 0
        return 1 if self.log[x] % 2 == 0 else -1

    def quad_class(self, x: int) -> QuadClass:
        return QuadClass(self.eta(x))

    def is_square(self, x: Code) -> Code:
        """True exactly on the non-zero squares."""
        return self.eta(x) == 1

    def sqrt_set(self, x: int) -> tuple[int, ...]:
        if x == 0:
            return (0,)
        lg = int(self.log[x])
        if lg % 2:
            raise ValueError(f"{x} is not a square")
        r = int(self.exp[lg // 2])
        return tuple(sorted((r, self.neg(r))))

    def sqrt(self, x: int) -> int:
        """The square root with the smaller code."""
        return self.sqrt_set(x)[0]

    def cbrt_set(self, x: int) -> tuple[int, ...]:
        """All ``y`` with ``y^3 = x``."""
        if x == 0:
            return (0,)
        n1 = self.order - 1
        lg = int(self.log[x])
        g = math.gcd(3, n1)
        if g == 1:
            return (int(self.exp[(lg * pow(3, -1, n1)) % n1]),)
        if lg % 3:
            return ()
        step = n1 // 3
        return tuple(sorted(int(self.exp[(lg // 3 + j * step) % n1]) for j in range(3)))

    def is_cube(self, x: int) -> bool:
        if x == 0:
            return True
        g = math.gcd(3, self.order - 1)
        return self.pow(x, (self.order - 1) // g) == 1

    # -- trace to the prime field ------------------------------------------------------

    def _compute_trace_weights(self) -> np.ndarray:
        w = []
        for pk in self._pk:
            t = s = pk
            for _ in range(self.n - 1):
                t = self.pow(t, self.p)
                s = self.add(s, t)
            if s >= self.p:
                raise ArithmeticError("trace did not land in the prime field")
            w.append(s)
        return np.array(w, dtype=np.int64)

    def trace(self, x: Code) -> Code:
        """Absolute trace to GF(p), returned as an integer in ``range(p)``."""
        p = self.p
        r = 0
        for pk, w in zip(self._pk, self._trace_weights):
            r = r + ((x // pk) % p) * int(w)
        return r % p


@dataclass(frozen=True, eq=False)
class Felt:
    """An element bound to its field; a convenience wrapper over integer codes."""

    ctx: _TableField
    code: int

    def _peer(self, other) -> int:
        if isinstance(other, Felt):
            if other.ctx is not self.ctx:
                raise ValueError("elements belong to different fields")
            return other.code
        if isinstance(other, int):
            return self.ctx.from_int(other)
        return NotImplemented

    def _wrap(self, code: int) -> Felt:
        return Felt(self.ctx, int(code))

    def __add__(self, other):
        return self._wrap(self.ctx.add(self.code, self._peer(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return self._wrap(self.ctx.sub(self.code, self._peer(other)))

    def __rsub__(self, other):
        return self._wrap(self.ctx.sub(self._peer(other), self.code))

    def __mul__(self, other):
        return self._wrap(self.ctx.mul(self.code, self._peer(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._wrap(self.ctx.div(self.code, self._peer(other)))

    def __rtruediv__(self, other):
        return self._wrap(self.ctx.div(self._peer(other), self.code))

    def __neg__(self):
        return self._wrap(self.ctx.neg(self.code))

    def __pow__(self, k: int):
        return self._wrap(self.ctx.pow(self.code, k))

    def inv(self) -> Felt:
        return self._wrap(self.ctx.inv(self.code))

    def __eq__(self, other) -> bool:
        if isinstance(other, Felt):
            return other.ctx is self.ctx and other.code == self.code
        if isinstance(other, int):
            return self.code == self.ctx.from_int(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((id(self.ctx), self.code))

    def __int__(self) -> int:
        return self.code

    def __repr__(self) -> str:
        return f"Felt({self.code} in GF({self.ctx.p}^{self.ctx.n}))"


# -- construction of GF(p^m) ----------------------------------------------------------


def _fp_rem(a: list[int], b: list[int], p: int) -> list[int]:
    """Remainder of ``a`` by monic ``b`` over GF(p); lists are ascending coefficients."""
    a = list(a)
    db = len(b) - 1
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] % p
        if c:
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - c * b[j]) % p
    r = [x % p for x in a[:db]]
    return r


def _fp_mulmod(a: list[int], b: list[int], mod: list[int], p: int) -> list[int]:
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] += x * y
    r = _fp_rem(prod, mod, p)
    return r + [0] * (len(mod) - 1 - len(r))


def _fp_powmod(a: list[int], k: int, mod: list[int], p: int) -> list[int]:
    m = len(mod) - 1
    result = [1] + [0] * (m - 1)
    base = list(a)
    while k:
        if k & 1:
            result = _fp_mulmod(result, base, mod, p)
        base = _fp_mulmod(base, base, mod, p)
        k >>= 1
    return result


def _fp_irreducible(mod: list[int], p: int) -> bool:
    m = len(mod) - 1
    if m == 1:
        return True
    for deg in range(1, m // 2 + 1):
        for tail in itertools.product(range(p), repeat=deg):
            if not any(_fp_rem(mod, list(tail) + [1], p)):
                return False
    return True


def _digits_of(code: int, p: int, n: int) -> list[int]:
    return [(code // p**k) % p for k in range(n)]


def _code_of(digits: Iterable[int], p: int) -> int:
    return sum(int(d) * p**k for k, d in enumerate(digits))


def smallest_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree ``m``, constant term compared first."""
    for tail in itertools.product(range(p), repeat=m):
        mod = list(tail) + [1]
        if _fp_irreducible(mod, p):
            return tuple(mod)
    raise ArithmeticError("no irreducible polynomial found")  # unreachable


class FieldCtx(_TableField):
    """GF(p^m) with a deterministic modulus, a primitive element and exp/log tables."""

    def __init__(
        self,
        params: FieldParams,
        modulus: tuple[int, ...] | None = None,
        generator: int | None = None,
    ) -> None:
        p, m = params.p, params.m
        q = params.q
        if modulus is None:
            modulus = smallest_irreducible(p, m)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != m + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree m")
        if not _fp_irreducible(list(modulus), p):
            raise ValueError(f"modulus {modulus} is reducible over GF({p})")
        mod = list(modulus)
        factors = prime_factors(q - 1) if q > 2 else []

        def order_is_full(code: int) -> bool:
            g = _digits_of(code, p, m)
            one = [1] + [0] * (m - 1)
            return all(_fp_powmod(g, (q - 1) // r, mod, p) != one for r in factors)

        if generator is None:
            generator = next(c for c in range(1, q) if order_is_full(c))
        elif not (0 < generator < q) or not order_is_full(generator):
            raise ValueError(f"{generator} is not a primitive element")

        gd = _digits_of(generator, p, m)
        exp = np.empty(q - 1, dtype=np.int64)
        cur = [1] + [0] * (m - 1)
        for i in range(q - 1):
            exp[i] = _code_of(cur, p)
            cur = _fp_mulmod(cur, gd, mod, p)
        super().__init__(p, m, exp)
        self.params = params
        self.m = m
        self.q = q
        self.modulus = modulus
        self.generator = int(generator)

    def __repr__(self) -> str:
        return f"FieldCtx(p={self.p}, m={self.m}, modulus={self.modulus}, generator={self.generator})"

    def element(self, code: int) -> Felt:
        if not 0 <= code < self.order:
            raise ValueError(f"code {code} out of range")
        return Felt(self, int(code))

    def to_record(self) -> str:
        return (
            f"p={self.p}\nm={self.m}\n"
            f"modulus={','.join(map(str, self.modulus))}\n"
            f"generator={self.generator}\n"
        )


def _check_cap(p: int, m: int) -> None:
    cap = enumeration_cap()
    if p ** (2 * m) > cap:
        raise EnumerationCapError(
            f"GF({p}^{m}) needs q^2 = {p ** (2 * m)} table entries, above the cap {cap} "
            f"(set {CAP_ENV_VAR} to raise it)"
        )


def build_field(p: int, m: int) -> FieldCtx:
    """``GF(p^m)``; the cap is checked on every call, cached contexts included."""
    params = FieldParams(p, m)
    _check_cap(p, m)
    return _build_field_cached(params)


@functools.lru_cache(maxsize=64)
def _build_field_cached(params: FieldParams) -> FieldCtx:
    return FieldCtx(params)


# -- the tower GF(q^2) / GF(q) -------------------------------------------------------


class TowerField(_TableField):
    """GF(q^2) on codes ``c + q*d`` representing ``c + d*Z`` with ``Z^2 = alpha``."""

    def __init__(self, base: FieldCtx, alpha: int, generator: int | None = None) -> None:
        self.base = base
        self.alpha = alpha
        self.q = q = base.order
        Q = q * q
        factors = prime_factors(Q - 1)

        def full_order(code: int) -> bool:
            return all(self._pair_pow(code, (Q - 1) // r) != 1 for r in factors)

        if generator is None:
            generator = next(c for c in range(1, Q) if full_order(c))
        elif not (0 < generator < Q) or not full_order(generator):
            raise ValueError(f"{generator} is not a primitive element of the tower")
        self.generator = int(generator)

        exp = np.empty(Q - 1, dtype=np.int64)
        exp[0] = 1
        filled, gk = 1, self.generator
        while filled < Q - 1:
            take = min(filled, Q - 1 - filled)
            exp[filled : filled + take] = self._pair_mul(exp[:take], gk)
            filled += take
            gk = self._pair_mul(gk, gk)
        super().__init__(base.p, 2 * base.n, exp)

    def _pair_mul(self, x: Code, y: Code) -> Code:
        b, q = self.base, self.q
        c1, d1 = x % q, x // q
        c2, d2 = y % q, y // q
        c = b.add(b.mul(c1, c2), b.mul(self.alpha, b.mul(d1, d2)))
        d = b.add(b.mul(c1, d2), b.mul(c2, d1))
        return c + q * d

    def _pair_pow(self, x: int, k: int) -> int:
        r = 1
        while k:
            if k & 1:
                r = self._pair_mul(r, x)
            x = self._pair_mul(x, x)
            k >>= 1
        return r


class TowerCtx:
    """GF(q^2) as GF(q)(Z) with ``Z^2 = alpha`` for a fixed non-square ``alpha``."""

    def __init__(self, base: FieldCtx, alpha: int, generator: int | None = None) -> None:
        if base.eta(alpha) != -1:
            raise ValueError(f"alpha={alpha} is not a non-square of GF({base.order})")
        self.base = base
        self.alpha = int(alpha)
        self.q = q = base.order
        self.p = base.p
        self.m = base.m
        self.top = TowerField(base, self.alpha, generator)
        self.Q = q * q
        self.Z = q
        g = self.top.generator
        if q % 4 == 1:
            self.lam = self.top.pow(g, (q + 1) // 2)
        else:
            self.lam = self.top.pow(g, (q - 1) // 2)

    def __repr__(self) -> str:
        return f"TowerCtx(q={self.q}, alpha={self.alpha}, generator={self.top.generator})"

    @property
    def generator(self) -> int:
        return self.top.generator

    def split(self, x: Code) -> tuple[Code, Code]:
        return x % self.q, x // self.q

    def join(self, c: Code, d: Code) -> Code:
        return c + self.q * d

    def embed(self, c: Code) -> Code:
        return c

    def in_base(self, x: Code) -> Code:
        return x < self.q

    def conj(self, x: Code) -> Code:
        c, d = self.split(x)
        return self.join(c, self.base.neg(d))

    def rel_trace(self, x: Code) -> Code:
        c, _ = self.split(x)
        return self.base.add(c, c)

    def rel_norm(self, x: Code) -> Code:
        b = self.base
        c, d = self.split(x)
        return b.sub(b.mul(c, c), b.mul(self.alpha, b.mul(d, d)))

    def unit_circle(self) -> np.ndarray:
        """The norm-one subgroup ``{z : z^(q+1) = 1}``, in exponent order."""
        return self.top.exp[:: self.q - 1].copy()

    def element(self, code: int) -> Felt:
        return Felt(self.top, int(code))

    def to_record(self) -> str:
        return self.base.to_record() + f"alpha={self.alpha}\ntower_generator={self.generator}\n"


def build_tower(base: FieldCtx, alpha_policy: str | int = "smallest_nonsquare") -> TowerCtx:
    """Build GF(q^2) over ``base``.

    ``alpha_policy`` is ``"smallest_nonsquare"``, ``"force_minus3"`` or an explicit
    base-field code.
    """
    return _build_tower_cached(base, alpha_policy)


@functools.lru_cache(maxsize=64)
def _build_tower_cached(base: FieldCtx, alpha_policy) -> TowerCtx:
    if alpha_policy == "smallest_nonsquare":
        alpha = next(c for c in range(1, base.order) if base.eta(c) == -1)
    elif alpha_policy == "force_minus3":
        alpha = base.from_int(-3)
        if base.eta(alpha) != -1:
            raise ValueError(f"-3 is not a non-square in GF({base.order})")
    elif isinstance(alpha_policy, (int, np.integer)) and not isinstance(alpha_policy, bool):
        alpha = int(alpha_policy)
        if not 0 <= alpha < base.order or base.eta(alpha) != -1:
            raise ValueError(f"alpha={alpha} is not a non-square of GF({base.order})")
    else:
        raise ValueError(f"unknown alpha policy {alpha_policy!r}")
    return TowerCtx(base, alpha)


def parse_record(text: str) -> dict[str, str]:
    out = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, _, value = line.partition("=")
        out[key.strip()] = value.strip()
    return out


def context_from_record(text: str) -> FieldCtx | TowerCtx:
    """Rebuild a field (or tower, if ``alpha`` is present) from :meth:`to_record` output."""
    rec = parse_record(text)
    p, m = int(rec["p"]), int(rec["m"])
    _check_cap(p, m)
    modulus = tuple(int(c) for c in rec["modulus"].split(","))
    base = FieldCtx(FieldParams(p, m), modulus=modulus, generator=int(rec["generator"]))
    if "alpha" not in rec:
        return base
    gen = int(rec["tower_generator"]) if "tower_generator" in rec else None
    return TowerCtx(base, int(rec["alpha"]), generator=gen)


# -- operations on contexts -----------------------------------------------------------


def trace_norm_rel(tower: TowerCtx, x: int) -> tuple[int, int]:
    return tower.rel_trace(x), tower.rel_norm(x)


def character_and_roots(ctx: _TableField, x: int):
    """``(QuadClass, square roots or None, cube roots)`` of ``x``."""
    cls = ctx.quad_class(x)
    roots = None if cls is QuadClass.NONSQUARE else ctx.sqrt_set(x)
    return cls, roots, ctx.cbrt_set(x)


def unit_circle_decompose(tower: TowerCtx, x: int) -> tuple[tuple[int, int], tuple[int, int]]:
    """The two factorizations ``x = y*z`` with ``y`` in GF(q)^* and ``z`` on the unit circle."""
    top = tower.top
    if x == 0 or top.eta(x) != 1:
        raise ValueError("x must be a non-zero square of GF(q^2)")
    ys = tower.base.exp  # GF(q)^* embedded
    zs = top.mul(x, top.inv(ys))
    ok = top.pow(zs, tower.q + 1) == 1
    pairs = sorted(zip(ys[ok].tolist(), zs[ok].tolist()))
    if len(pairs) != 2:
        raise ArithmeticError(f"expected two decompositions, found {len(pairs)}")
    return pairs[0], pairs[1]


def cyclotomic_number(ctx: _TableField, i: int, j: int) -> int:
    """``#((C_i + 1) & C_j)`` with C_0 the squares and C_1 the non-squares."""
    want_i = 1 if i == 0 else -1
    want_j = 1 if j == 0 else -1
    x = ctx.elements()[1:]
    sel = ctx.eta(x) == want_i
    return int(np.count_nonzero(ctx.eta(ctx.add(x[sel], 1)) == want_j))


def cyclotomic_closed_form(q: int, i: int, j: int) -> int:
    if q % 4 == 1:
        return (q - 5) // 4 if (i, j) == (0, 0) else (q - 1) // 4
    return (q + 1) // 4 if (i, j) == (0, 1) else (q - 3) // 4
