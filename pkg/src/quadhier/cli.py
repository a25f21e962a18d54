"""Command-line front end.

Exit codes: 0 success / verified, 2 sources disagree, 3 out-of-scope request
(closed form with a = 0), 4 input error, 5 search budget exceeded,
6 other domain error (empty defining set, deficient code dimension).
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import dataclass, replace
from typing import Any, Sequence, TextIO

from . import __version__
from .code import build_code, weight_distribution
from .errors import (
    AZeroOutOfScope,
    BudgetExceeded,
    QuadHierError,
    TooLarge,
)
from .gf import FieldCtx, ctx_new
from .hierarchy import DEFAULT_BUDGET, FormProfile, HierarchyReport, verify
from .qform import QuadraticForm, form_from_spec

EXIT_OK = 0
EXIT_DISAGREE = 2
EXIT_OUT_OF_SCOPE = 3
EXIT_INPUT = 4
EXIT_BUDGET = 5
EXIT_DOMAIN = 6

MODES = ("invariants", "hierarchy", "verify", "wdist")
FORMATS = ("table", "json-lines", "csv")


class InputError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit 2, which means "disagreement" here
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


@dataclass(frozen=True)
class RunConfig:
    p: int
    m: int
    form: str
    a: int = 1
    modulus: tuple[int, ...] | None = None
    mode: str = "verify"
    r: tuple[int, ...] | None = None
    format: str = "table"
    budget: int = DEFAULT_BUDGET
    threads: int = 1
    override_sign: int | None = None

    def record(self) -> dict[str, Any]:
        rec: dict[str, Any] = {
            "p": self.p,
            "m": self.m,
            "modulus": list(self.modulus) if self.modulus is not None else None,
            "form": self.form,
            "a": self.a,
            "mode": self.mode,
            "r": list(self.r) if self.r is not None else list(range(1, self.m + 1)),
            "budget": self.budget,
        }
        if self.override_sign is not None:
            rec["override_sign"] = self.override_sign
        return rec


def parse_r(text: str, m: int) -> tuple[int, ...]:
    """``3``, ``1-3``, ``1..3`` or ``1,3`` -> sorted tuple within [1, m]."""
    out: set[int] = set()
    try:
        for part in text.split(","):
            part = part.strip()
            for sep in ("..", "-"):
                if sep in part:
                    lo, hi = part.split(sep)
                    out.update(range(int(lo), int(hi) + 1))
                    break
            else:
                out.add(int(part))
    except ValueError:
        raise InputError(f"cannot parse r-range {text!r}") from None
    if not out or min(out) < 1 or max(out) > m:
        raise InputError(f"r-range {text!r} must select values in [1, {m}]")
    return tuple(sorted(out))


def parse_modulus(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(c) for c in text.split(","))
    except ValueError:
        raise InputError(f"modulus must be comma-separated integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(
        prog="quadhier",
        description="Weight hierarchies of trace codes C_{D_a} defined by quadratic forms over F_{p^m}.",
    )
    ap.add_argument("--p", type=int, required=True, help="odd prime characteristic")
    ap.add_argument("--m", type=int, required=True, help="extension degree")
    ap.add_argument("--modulus", help="monic modulus, comma-separated coefficients, constant term first")
    ap.add_argument("--form", required=True, help='form spec, e.g. "tr: x^2 - x^4"')
    ap.add_argument("--a", type=int, default=1, help="defining-set value a in F_p (default 1)")
    ap.add_argument("--mode", choices=MODES, default="verify")
    ap.add_argument("--r", help="r values: 3, 1-3, 1..3 or 1,3 (default 1..m)")
    ap.add_argument("--format", choices=FORMATS, default="table")
    ap.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="max subspaces per oracle search")
    ap.add_argument("--threads", type=int, default=1, help="worker threads for oracle searches")
    ap.add_argument(
        "--override-sign",
        type=int,
        choices=(-1, 1),
        help="diagnostic: feed this sign to the closed form instead of the computed one",
    )
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    return ap


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    modulus = parse_modulus(ns.modulus) if ns.modulus else None
    r = parse_r(ns.r, ns.m) if ns.r else None
    if ns.threads < 1 or ns.budget < 1:
        raise InputError("--threads and --budget must be positive")
    return RunConfig(
        p=ns.p,
        m=ns.m,
        form=ns.form,
        a=ns.a % ns.p if ns.p > 0 else ns.a,
        modulus=modulus,
        mode=ns.mode,
        r=r,
        format=ns.format,
        budget=ns.budget,
        threads=ns.threads,
        override_sign=ns.override_sign,
    )


# ---------------------------------------------------------------------------
# emitters


def _sign(x: int) -> str:
    return f"{x:+d}"


def _dump(rec: dict[str, Any]) -> str:
    return json.dumps(rec, sort_keys=True, separators=(",", ":"))


def _header(cfg: RunConfig, ctx: FieldCtx) -> str:
    return f"p={cfg.p} m={cfg.m} modulus={list(ctx.modulus)} form={cfg.form!r} a={cfg.a}"


def _emit_report(cfg: RunConfig, ctx: FieldCtx, report: HierarchyReport, out: TextIO) -> None:
    if cfg.format == "json-lines":
        out.write(_dump({"config": cfg.record(), **report.record()}) + "\n")
        return
    if cfg.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["r", "closed", "oracleA", "oracleB", "agree"])
        for row in report.rows:
            w.writerow([row.r, row.closed if row.closed is not None else "", row.oracle_a if row.oracle_a is not None else "",
                        row.oracle_b if row.oracle_b is not None else "", row.agree])
        return
    pr = report.profile
    print(_header(cfg, ctx), file=out)
    print(f"R_f={pr.rank} l={pr.l} s={pr.s} sign={_sign(pr.sign)}  n={report.n} dim={report.dim}", file=out)
    if report.closed_status == "out-of-scope":
        print("closed form: out of scope for a = 0", file=out)
    cols = ["r", "closed", "oracleA", "oracleB", "agree"]
    print("  ".join(f"{c:>7}" for c in cols), file=out)
    for row in report.rows:
        cells = [row.r, row.closed, row.oracle_a, row.oracle_b, "yes" if row.agree else "NO"]
        print("  ".join(f"{'-' if c is None else c:>7}" for c in cells), file=out)
    for msg in report.problems:
        print(f"problem: {msg}", file=out)
    print(f"status: {report.status}", file=out)


def _invariants(cfg: RunConfig, ctx: FieldCtx, f: QuadraticForm, out: TextIO) -> int:
    try:
        code = build_code(f, cfg.a)
        n, dim = code.n, code.dim
    except QuadHierError:
        n = dim = 0
    rec = {"rank": f.rank, "l": f.radical_dim, "s": f.rank // 2, "sign": f.sign}
    if cfg.format == "json-lines":
        out.write(_dump({"config": cfg.record(), "invariants": rec, "n": n, "dim": dim, "status": "OK"}) + "\n")
    elif cfg.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["rank", "l", "s", "sign", "n", "dim"])
        w.writerow([f.rank, f.radical_dim, f.rank // 2, f.sign, n, dim])
    else:
        print(_header(cfg, ctx), file=out)
        print(f"R_f={f.rank} l={f.radical_dim} s={f.rank // 2} sign={_sign(f.sign)} n={n} dim={dim}", file=out)
    return EXIT_OK


def _wdist(cfg: RunConfig, ctx: FieldCtx, f: QuadraticForm, out: TextIO) -> int:
    code = build_code(f, cfg.a)
    dist = weight_distribution(code)
    if cfg.format == "json-lines":
        rec = {"config": cfg.record(), "n": code.n, "dim": code.dim,
               "weights": [{"weight": w, "count": c} for w, c in dist.items()], "status": "OK"}
        out.write(_dump(rec) + "\n")
    elif cfg.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["weight", "count"])
        w.writerows(dist.items())
    else:
        print(_header(cfg, ctx), file=out)
        print(f"n={code.n} dim={code.dim}", file=out)
        print(f"{'weight':>7}  {'count':>7}", file=out)
        for wt, c in dist.items():
            print(f"{wt:>7}  {c:>7}", file=out)
    return EXIT_OK


def run(cfg: RunConfig, out: TextIO | None = None) -> int:
    out = out if out is not None else sys.stdout
    ctx = ctx_new(cfg.p, cfg.m, cfg.modulus)
    f = form_from_spec(cfg.form, ctx)
    if cfg.mode == "invariants":
        return _invariants(cfg, ctx, f, out)
    if cfg.mode == "wdist":
        return _wdist(cfg, ctx, f, out)
    profile = None
    if cfg.override_sign is not None:
        profile = replace(FormProfile.of(f, cfg.a), sign=cfg.override_sign)
    if cfg.mode == "hierarchy" and cfg.a % cfg.p == 0:
        raise AZeroOutOfScope("closed-form hierarchy is not provided for a = 0; use --mode verify for oracle values")
    report = verify(
        f,
        cfg.a,
        cfg.r,
        oracles=cfg.mode == "verify",
        budget=cfg.budget,
        threads=cfg.threads,
        profile=profile,
    )
    if cfg.mode == "hierarchy":
        report.closed_status = "ok"
    _emit_report(cfg, ctx, report, out)
    return EXIT_OK if report.status == "VERIFIED" else EXIT_DISAGREE


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = config_from_args(ns)
        return run(cfg)
    except InputError as e:
        print(f"quadhier: input error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except AZeroOutOfScope as e:
        print(f"quadhier: out of scope: {e}", file=sys.stderr)
        return EXIT_OUT_OF_SCOPE
    except (BudgetExceeded, TooLarge) as e:
        print(f"quadhier: budget exceeded: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except QuadHierError as e:
        name = type(e).__name__
        if isinstance(e, ValueError):
            print(f"quadhier: {name}: {e}", file=sys.stderr)
            return EXIT_INPUT
        print(f"quadhier: {name}: {e}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
