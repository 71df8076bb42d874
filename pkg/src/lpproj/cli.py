"""Command-line front end.

Exit codes: 0 success, 1 a verification suite failed, 2 usage or parse
error, 3 an operator was applied outside its domain.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field

from lpproj import verify
from lpproj.lp import SignedLpFunction
from lpproj.operators import Op, PreconditionError, apply
from lpproj.polytope import (Polytope, cube, probe_simplex, shifted_simplex,
                             standard_simplex)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_PRECONDITION = 0, 1, 2, 3

SHAPES = ("simplex", "shifted-simplex", "probe-simplex", "cube", "random", "random-o")
CORRUPT_BUMP = 1e-3


class UsageError(Exception):
    pass


@dataclass
class Config:
    n: int = 3
    p: float = 2.0
    seed: int = 0
    tol: float | None = None
    cases: int = 50
    paths: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.p > 1:
            raise UsageError("p must be > 1")
        if self.n < 2:
            raise UsageError("n must be >= 2")
        if self.tol is not None and not self.tol > 0:
            raise UsageError("tol must be > 0")
        if self.cases < 1:
            raise UsageError("cases must be >= 1")


def default_seed() -> int:
    raw = os.environ.get("LPPROJ_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"LPPROJ_SEED must be an integer, got {raw!r}")


def _read(path: str) -> str:
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}")


def _write(text: str, path: str | None):
    if path is None:
        sys.stdout.write(text + "\n")
    else:
        with open(path, "w") as fh:
            fh.write(text + "\n")


def cmd_body(args) -> int:
    Config(p=args.p)
    try:
        P = Polytope.from_json(_read(args.inp))
    except (ValueError, KeyError, TypeError, ZeroDivisionError) as exc:
        raise UsageError(f"{args.inp} is not a polytope: {exc}")
    try:
        f = apply(Op(args.op), P, args.p)
    except PreconditionError as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    _write(f.to_json(), args.out)
    return EXIT_OK


def _direction(text: str):
    try:
        return [float(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"bad direction {text!r}; expected comma separated numbers")


def cmd_eval(args) -> int:
    try:
        f = SignedLpFunction.from_json(_read(args.body))
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"{args.body} is not a body function: {exc}")
    u = _direction(args.dir)
    if len(u) != f.n:
        raise UsageError(f"direction has {len(u)} coordinates, body lives in dimension {f.n}")
    print(f"{f(u):.15g}")
    return EXIT_OK


def cmd_verify(args) -> int:
    seed = default_seed() if args.seed is None else args.seed
    cfg = Config(n=args.n, p=args.p, seed=seed, tol=args.tol, cases=args.cases)
    if args.suite == "all":
        names = [s for s in verify.SUITES if not (s == "classification" and cfg.n < 3)]
    elif args.suite in verify.SUITES:
        names = [args.suite]
    else:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(verify.SUITES)}, all")
    if args.suite == "classification" and cfg.n < 3:
        raise UsageError("classification requires n >= 3")
    if args.corrupt:
        names = [s for s in names if s in ("valuation", "contravariance")]
        if not names:
            raise UsageError("--corrupt applies to the valuation and contravariance suites")
    ok = True
    for name in names:
        reports = verify.run_suite(name, cfg.n, cfg.p, cfg.cases, cfg.seed, cfg.tol,
                                   bump=CORRUPT_BUMP if args.corrupt else 0.0)
        for r in reports:
            print(r.to_json())
            ok = ok and r.passed
    return EXIT_OK if ok else EXIT_FAIL


def cmd_gen(args) -> int:
    cfg = Config(n=args.n, seed=default_seed() if args.seed is None else args.seed)
    n = cfg.n
    if args.shape == "simplex":
        P = standard_simplex(n)
    elif args.shape == "shifted-simplex":
        P = shifted_simplex(n)
    elif args.shape == "probe-simplex":
        P = probe_simplex(n)
    elif args.shape == "cube":
        P = cube(n)
    else:
        rng = verify.make_rng(cfg.seed, "gen", n)
        P = verify.random_polytope(n, rng, contains_origin=True if args.shape == "random-o" else None)
    _write(json.dumps(P.to_dict()), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lpproj", description="Asymmetric L_p projection bodies of polytopes")
    sub = ap.add_subparsers(dest="command", required=True)

    b = sub.add_parser("body", help="compute an operator value as JSON")
    b.add_argument("--op", required=True, choices=[o.value for o in Op])
    b.add_argument("--p", type=float, required=True)
    b.add_argument("--in", dest="inp", required=True)
    b.add_argument("--out")
    b.set_defaults(func=cmd_body)

    e = sub.add_parser("eval", help="evaluate a body function at a direction")
    e.add_argument("--body", required=True)
    e.add_argument("--dir", required=True, help="comma separated, e.g. 1,0,0")
    e.set_defaults(func=cmd_eval)

    v = sub.add_parser("verify", help="run identity suites and print JSON reports")
    v.add_argument("--suite", required=True)
    v.add_argument("--n", type=int, default=3)
    v.add_argument("--p", type=float, default=2.0)
    v.add_argument("--cases", type=int, default=50)
    v.add_argument("--seed", type=int)
    v.add_argument("--tol", type=float)
    v.add_argument("--corrupt", action="store_true",
                   help="debug: scale one coefficient per value by 1+1e-3 (should fail)")
    v.set_defaults(func=cmd_verify)

    g = sub.add_parser("gen", help="write a named or random polytope as JSON")
    g.add_argument("--shape", required=True, choices=SHAPES)
    g.add_argument("--n", type=int, default=3)
    g.add_argument("--seed", type=int)
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)
    return ap


def _glue_dir(argv):
    # argparse takes "-1,0,0" for an option; bind it to --dir explicitly
    out = []
    it = iter(argv)
    for tok in it:
        if tok == "--dir":
            out.append("--dir=" + next(it, ""))
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    ap = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = ap.parse_args(_glue_dir(argv))
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
