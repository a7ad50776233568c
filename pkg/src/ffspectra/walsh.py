"""Exact Walsh spectra ``W_f(a, b) = sum_x xi^Tr(b f(x) - a x)`` as elements of Z[xi].

Two engines produce whole columns ``a -> W_f(a, b)``:

* ``direct`` tabulates ``Tr(a x)`` for every pair and histograms exponents;
* ``group_transform`` views the additive group as ``(Z/p)^n`` through the digits of
  the codes and runs an axis-by-axis Fourier transform over Z[xi], then maps
  ``a`` to its dual coordinate via the trace form ``M_ij = Tr(e_i e_j)``.

Every value is held as a length-p integer coefficient vector; nothing is floating point.
"""

from __future__ import annotations

import functools
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from ffspectra.cycint import CycInt, canonical_rows
from ffspectra.diff import PowerMap
from ffspectra.ff_core import TowerCtx, _TableField, build_field, build_tower
from ffspectra.spectrum import Spectrum

ENGINES = ("direct", "group_transform")


@functools.lru_cache(maxsize=8)
def _trace_table(F: _TableField) -> np.ndarray:
    t = F.trace(F.elements())
    t.flags.writeable = False
    return t


@functools.lru_cache(maxsize=4)
def _trace_product_matrix(F: _TableField) -> np.ndarray:
    """``Tr(a x)`` for all ``a, x`` (rows ``a``)."""
    x = F.elements()
    m = F.trace(F.mul(x[:, None], x[None, :])).astype(np.int8)
    m.flags.writeable = False
    return m


@functools.lru_cache(maxsize=8)
def _dual_index(F: _TableField) -> np.ndarray:
    """Code of ``M a`` for every ``a``, where ``Tr(a x) = (M a) . x`` on digit vectors."""
    p, n = F.p, F.n
    basis = [p**k for k in range(n)]
    M = np.array([[F.trace(F.mul(bi, bj)) for bj in basis] for bi in basis], dtype=np.int64)
    digits = np.stack(F.digits(F.elements()))  # (n, Q)
    dual = (M @ digits) % p
    idx = (np.array(basis, dtype=np.int64)[:, None] * dual).sum(axis=0)
    idx.flags.writeable = False
    return idx


def exponent_rows(f: PowerMap, bs: np.ndarray) -> np.ndarray:
    """``Tr(b f(x))`` for each ``b`` in ``bs`` (rows) and every ``x`` (columns)."""
    F = f.field
    return F.trace(F.mul(np.asarray(bs)[:, None], f.values()[None, :]))


def _columns_direct(f: PowerMap, bs: np.ndarray) -> np.ndarray:
    F = f.field
    p, Q = F.p, F.order
    tr_ax = _trace_product_matrix(F)
    e = exponent_rows(f, bs)
    out = np.empty((len(bs), Q, p), dtype=np.int64)
    row_offset = (np.arange(Q, dtype=np.int64) * p)[:, None]
    for k in range(len(bs)):
        expo = (e[k][None, :] - tr_ax) % p
        out[k] = np.bincount((row_offset + expo).ravel(), minlength=Q * p).reshape(Q, p)
    return out


def _columns_group_transform(f: PowerMap, bs: np.ndarray) -> np.ndarray:
    F = f.field
    p, n, Q = F.p, F.n, F.order
    B = len(bs)
    e = exponent_rows(f, bs)
    arr = np.zeros((B, Q, p), dtype=np.int64)
    np.put_along_axis(arr, e[:, :, None], 1, axis=2)
    # C-order reshape: axis 1+k carries digit n-1-k; the transform is symmetric in axes.
    arr = arr.reshape((B,) + (p,) * n + (p,))
    for axis in range(1, n + 1):
        src = np.moveaxis(arr, axis, 0)
        dst = np.zeros_like(src)
        for u in range(p):
            for x in range(p):
                # multiply by xi^(-u x): rotate the coefficient axis
                dst[u] += np.roll(src[x], -(u * x) % p, axis=-1)
        arr = np.moveaxis(dst, 0, axis)
    F_hat = arr.reshape(B, Q, p)
    return F_hat[:, _dual_index(F), :]


def walsh_columns(f: PowerMap, bs: Iterable[int], engine: str = "group_transform") -> np.ndarray:
    """Coefficient rows of ``W_f(a, b)`` with shape ``(len(bs), Q, p)``; index ``[k, a]``."""
    bs = np.asarray(list(bs), dtype=np.int64)
    if engine == "direct":
        return _columns_direct(f, bs)
    if engine == "group_transform":
        return _columns_group_transform(f, bs)
    raise ValueError(f"unknown engine {engine!r}")


def walsh_at(f: PowerMap, a: int, b: int) -> CycInt:
    """``W_f(a, b)`` by summing over every ``x``."""
    F = f.field
    e = (F.trace(F.mul(b, f.values())) - F.trace(F.mul(a, F.elements()))) % F.p
    return CycInt.from_exponents(F.p, e)


# -- distribution and moments ---------------------------------------------------------


@dataclass
class WalshStats:
    """Aggregates over ``(a, b)`` with ``b != 0``; merging is plain addition."""

    p: int
    counts: Counter = field(default_factory=Counter)  # canonical coefficient tuple -> count
    total: np.ndarray | None = None
    parseval: dict = field(default_factory=dict)  # b -> canonical tuple of sum_a |W|^2

    def merge(self, other: WalshStats) -> None:
        self.counts.update(other.counts)
        self.total = other.total if self.total is None else self.total + other.total
        self.parseval.update(other.parseval)

    @property
    def rational(self) -> bool:
        return all(not any(k[1:]) for k in self.counts)

    def distribution(self) -> dict:
        """Value -> count; integer keys when every value is rational, ``CycInt`` keys otherwise."""
        if self.rational:
            return dict(sorted((k[0], v) for k, v in self.counts.items()))
        return {CycInt(self.p, k): v for k, v in sorted(self.counts.items())}

    def spectrum(self) -> Spectrum:
        if not self.rational:
            raise ValueError("Walsh values are not all rational integers")
        return Spectrum(self.distribution())

    @property
    def pairs(self) -> int:
        return sum(self.counts.values())

    def sum_value(self) -> CycInt:
        return CycInt(self.p, self.total.tolist())


def _abs2_rows(rows: np.ndarray) -> np.ndarray:
    """Coefficient vectors of ``z * conj(z)`` row-wise."""
    p = rows.shape[-1]
    out = np.zeros_like(rows)
    for k in range(p):
        # (z conj z)_k = sum_j z_j z_{j-k}
        out[..., k] = (rows * np.roll(rows, k, axis=-1)).sum(axis=-1)
    return out


def stats_for_columns(p: int, bs: np.ndarray, cols: np.ndarray) -> WalshStats:
    canon = canonical_rows(cols)
    flat = canon.reshape(-1, p)
    uniq, cnt = np.unique(flat, axis=0, return_counts=True)
    st = WalshStats(p)
    st.counts = Counter({tuple(int(v) for v in u): int(c) for u, c in zip(uniq, cnt)})
    st.total = canon.sum(axis=(0, 1))
    par = canonical_rows(_abs2_rows(canon).sum(axis=1))
    st.parseval = {int(b): tuple(int(v) for v in row) for b, row in zip(bs, par)}
    return st


def _chunk_worker(args) -> WalshStats:
    p, m, alpha, d, engine, bs = args
    tower = build_tower(build_field(p, m), alpha)
    f = PowerMap(tower, d)
    return stats_for_columns(p, bs, walsh_columns(f, bs, engine))


def walsh_stats(
    f: PowerMap, engine: str = "group_transform", jobs: int = 1, chunk: int = 64
) -> WalshStats:
    """Distribution and moment data over all ``a`` and all ``b != 0``."""
    F = f.field
    bs_all = np.arange(1, F.order, dtype=np.int64)
    chunks = [bs_all[i : i + chunk] for i in range(0, len(bs_all), chunk)]
    result = WalshStats(F.p)
    if jobs > 1 and isinstance(f.ambient, TowerCtx) and len(chunks) > 1:
        t = f.ambient
        tasks = [(t.p, t.m, t.alpha, f.d, engine, c) for c in chunks]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_chunk_worker, tasks))
    else:
        parts = (stats_for_columns(F.p, c, walsh_columns(f, c, engine)) for c in chunks)
    for part in parts:
        result.merge(part)
    return result


def walsh_distribution(f: PowerMap, engine: str = "group_transform", jobs: int = 1) -> dict:
    return walsh_stats(f, engine, jobs).distribution()


def closed_form_distribution(q: int) -> Spectrum:
    """Four-valued Walsh distribution of ``x^(q+2)`` for ``q`` a power of 3."""
    if q % 3:
        raise ValueError("the closed form covers characteristic 3 only")
    t = q**4 - q**3 - q**2 + q
    return Spectrum({-q: t // 3, 0: t // 2, q: q**3 - q, 2 * q: t // 6})


def cube_moment_closed_form(q: int) -> int:
    return q * q * (q * q - 1) * (q**3 - 3 * q * q + 2)


@dataclass(frozen=True)
class MomentCheck:
    name: str
    expected: object
    observed: object

    @property
    def ok(self) -> bool:
        return self.expected == self.observed


def moment_checks(f: PowerMap, stats: WalshStats) -> list[MomentCheck]:
    """Sum, per-b Parseval, and (characteristic 3) cube-moment and linear-system checks."""
    Q = f.size
    checks = [
        MomentCheck("pair_count", Q * (Q - 1), stats.pairs),
        MomentCheck("sum_W", CycInt.from_int(stats.p, Q * Q - Q), stats.sum_value()),
    ]
    par_expected = (Q * Q,) + (0,) * (stats.p - 1)
    bad = [b for b, v in stats.parseval.items() if v != par_expected]
    checks.append(MomentCheck("parseval_per_b", [], bad))
    if stats.p == 3 and isinstance(f.ambient, TowerCtx) and f.is_q_plus_2 and stats.rational:
        q = f.ambient.q
        dist = stats.distribution()
        cube = sum((w - 1) ** 3 * c for w, c in dist.items())
        checks.append(MomentCheck("cube_moment", cube_moment_closed_form(q), cube))
        e = {i: dist.get(i * q, 0) for i in (-1, 0, 1, 2)}
        system = (
            e[-1] + e[0] + e[1] + e[2],
            -q * e[-1] + q * e[1] + 2 * q * e[2],
            q * q * e[-1] + q * q * e[1] + 4 * q * q * e[2],
            (-q - 1) ** 3 * e[-1] - e[0] + (q - 1) ** 3 * e[1] + (2 * q - 1) ** 3 * e[2],
        )
        rhs = (q * q * (q * q - 1), q**4 - q * q, q**4 * (q * q - 1), cube_moment_closed_form(q))
        checks.append(MomentCheck("linear_system", rhs, system))
        checks.append(MomentCheck("value_set", True, set(dist) <= {-q, 0, q, 2 * q}))
    return checks


# -- the cubic Lambda(a, b) identity in characteristic 3 ---------------------------------


@functools.lru_cache(maxsize=8)
def lambda_domain(tower: TowerCtx) -> np.ndarray:
    """``U^2 + (-U^2)`` when ``q = 1 (mod 4)``, else ``U^2 + lambda^2 U^2``."""
    T = tower.top
    u2 = np.unique(T.mul(tower.unit_circle(), tower.unit_circle()))
    other = T.neg(u2) if tower.q % 4 == 1 else T.mul(T.mul(tower.lam, tower.lam), u2)
    dom = np.union1d(u2, other)
    if len(dom) != 2 * len(u2):
        raise ArithmeticError("the two halves of the Lambda domain overlap")
    return dom


def lambda_count(tower: TowerCtx, a: int, b: int) -> int:
    """``#{s in domain : a^3 s^3 - b s^2 - b^q s + a^(3q) = 0}``."""
    T = tower.top
    q = tower.q
    s = lambda_domain(tower)
    a3 = T.pow(a, 3)
    val = T.mul(a3, T.pow(s, 3))
    val = T.sub(val, T.mul(b, T.mul(s, s)))
    val = T.sub(val, T.mul(T.pow(b, q), s))
    val = T.add(val, T.pow(a3, q))
    return int(np.count_nonzero(val == 0))


def lambda_cubic_identity(f: PowerMap, a: int, b: int) -> tuple[int, bool]:
    """``(#Lambda(a, b), W_f(a, b) == -q + q * #Lambda(a, b))``."""
    tower = f.tower
    if tower.p != 3:
        raise ValueError("the Lambda identity is stated for characteristic 3")
    if b == 0:
        raise ValueError("b must be non-zero")
    n = lambda_count(tower, a, b)
    return n, walsh_at(f, a, b) == CycInt.from_int(3, -tower.q + tower.q * n)


def default_jobs() -> int:
    return os.cpu_count() or 1
