"""Command-line entry point: ``ffspectra <command> ...``."""

from __future__ import annotations

import argparse
import os
import sys
from typing import Sequence

from ffspectra import boomerang as bm
from ffspectra import code as cc
from ffspectra import diff as df
from ffspectra import walsh as ws
from ffspectra.ff_core import EnumerationCapError, FieldParams, build_field, build_tower
from ffspectra.report import dumps
from ffspectra.verify import SUITES, run_suite

FORMATS = ("jsonl", "csv")


def _field_args(sp: argparse.ArgumentParser, need_p: bool = True) -> None:
    if need_p:
        sp.add_argument("-p", type=int, required=True, help="odd prime characteristic")
    sp.add_argument("-m", type=int, required=True, help="degree of GF(q) over GF(p)")
    sp.add_argument("--format", choices=FORMATS, default="jsonl")


def _jobs_arg(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--jobs", type=int, default=os.cpu_count() or 1, help="worker processes (default: all cores)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ffspectra", description="Exact spectra of x^(q+2) over GF(q^2).")
    sub = ap.add_subparsers(dest="command", required=True)

    field = sub.add_parser("field", help="field contexts").add_subparsers(dest="action", required=True)
    info = field.add_parser("info", help="describe GF(q) and its quadratic extension")
    _field_args(info)
    info.add_argument("--record", action="store_true", help="print the plain-text context record instead")

    spec = sub.add_parser("spectrum", help="value distributions").add_subparsers(dest="kind", required=True)
    d = spec.add_parser("diff", help="differential spectrum")
    _field_args(d)
    d.add_argument("--exponent", type=int, default=None, help="power d (default q+2)")
    d.add_argument("--mode", choices=("bruteforce", "closed_form"), default="bruteforce")
    b = spec.add_parser("boomerang", help="BCT row summary")
    _field_args(b)
    b.add_argument("--mode", choices=("bruteforce", "closed_form"), default="bruteforce")
    w = spec.add_parser("walsh", help="Walsh value distribution")
    _field_args(w)
    w.add_argument("--engine", choices=ws.ENGINES, default="group_transform")
    _jobs_arg(w)

    code = sub.add_parser("code", help="ternary trace code").add_subparsers(dest="action", required=True)
    cw = code.add_parser("weights", help="weight distribution")
    _field_args(cw, need_p=False)
    cw.add_argument("--engine", choices=cc.CODE_ENGINES, default="via_walsh")
    _jobs_arg(cw)

    v = sub.add_parser("verify", help="run verification suites")
    _field_args(v)
    v.add_argument("--suite", choices=SUITES + ("all",), default="all")
    _jobs_arg(v)
    return ap


def _pairs(kind: str, spectrum, extra: dict | None = None) -> list[dict]:
    extra = extra or {}
    return [{"kind": kind, **extra, "value": k, "count": v} for k, v in spectrum.items()]


def _tower(args):
    FieldParams(args.p, args.m)
    return build_tower(build_field(args.p, args.m))


def _field_info(args) -> tuple[list[dict], int] | str:
    tower = _tower(args)
    if args.record:
        return tower.to_record()
    F = tower.base
    row = {
        "p": F.p,
        "m": F.m,
        "q": F.order,
        "modulus": list(F.modulus),
        "generator": F.generator,
        "alpha": tower.alpha,
        "tower_generator": tower.generator,
        "lambda": tower.lam,
    }
    return [row], 0


def _spectrum(args) -> tuple[list[dict], int]:
    tower = _tower(args)
    if args.kind == "diff":
        f = df.PowerMap(tower, args.exponent)
        return _pairs("diff", df.diff_spectrum(f, args.mode), {"exponent": f.d}), 0
    if args.kind == "boomerang":
        f = df.PowerMap(tower)
        try:
            s = bm.boomerang_summary(f, args.mode)
        except bm.NotCoveredError as exc:
            return [{"kind": "boomerang", "beta_f": None, "status": "not-covered", "note": str(exc)}], 0
        rows = [{"kind": "boomerang", "beta_f": s.beta_f, "status": s.status, "note": s.note}]
        if s.nu is not None:
            rows += _pairs("boomerang_nu", s.nu)
        return rows, 0
    f = df.PowerMap(tower)
    dist = ws.walsh_stats(f, args.engine, jobs=args.jobs).distribution()
    rows = [
        {"kind": "walsh", "value": k if isinstance(k, int) else {"cyclotomic": list(k.coeffs)}, "count": v}
        for k, v in dist.items()
    ]
    return rows, 0


def _code(args) -> tuple[list[dict], int]:
    spec = cc.build_code(args.m)
    dist = cc.weight_distribution(args.m, args.engine, jobs=args.jobs)
    n, k, _ = spec.parameters
    return _pairs("weight", dist, {"n": n, "k": k}), 0


def _verify(args) -> tuple[list[dict], int]:
    FieldParams(args.p, args.m)
    records = run_suite(args.p, args.m, args.suite, jobs=args.jobs)
    failed = any(r.status == "fail" for r in records)
    return [r.row() for r in records], 1 if failed else 0


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    handlers = {"field": _field_info, "spectrum": _spectrum, "code": _code, "verify": _verify}
    try:
        result = handlers[args.command](args)
    except EnumerationCapError as exc:
        print(f"ffspectra: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"ffspectra: invalid input: {exc}", file=sys.stderr)
        return 2
    if isinstance(result, str):
        sys.stdout.write(result)
        return 0
    rows, status = result
    sys.stdout.write(dumps(rows, args.format))
    return status


if __name__ == "__main__":
    raise SystemExit(main())
