"""Command-line frontend.

Exit codes: 0 success, 1 for a valid run whose mathematical answer is
negative (insoluble / nothing found), 2 for usage or budget errors.  All
numeric flags take plain decimal notation only.  Identical argument vectors
produce byte-identical outputs; output files embed the run configuration and
the package version.  Set HASSE_CACHE_DIR to persist the local-verdict cache
between runs.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import census, families, globalsearch, localsolve
from ._version import __version__
from .localsolve import (
    BudgetExceededError,
    DEFAULT_BUDGET,
    FermatEquation,
    ThueEquation,
    certificate_to_jsonable,
    verdict_to_jsonable,
)


@dataclass
class RunConfig:
    subcommand: str
    params: dict = field(default_factory=dict)

    def jsonable(self) -> dict:
        out = {"subcommand": self.subcommand, "version": __version__}
        out.update(self.params)
        return out


def _plain_decimal(text: str) -> Fraction:
    ok = text and text.count(".") <= 1
    ok = ok and all(ch.isdigit() or ch == "." for ch in text.lstrip("-"))
    ok = ok and text.lstrip("-").lstrip(".").rstrip(".")
    if not ok:
        raise argparse.ArgumentTypeError(f"plain decimal expected, got {text!r}")
    return Fraction(text)


def _int_list(text: str) -> list[int]:
    try:
        values = [int(t) for t in text.split(",") if t]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"comma-separated integers expected: {exc}")
    if not values:
        raise argparse.ArgumentTypeError("at least one value required")
    return values


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hasse",
        description="Local-global solubility toolkit for diagonal Thue and Fermat equations.",
    )
    parser.add_argument("--version", action="version", version=f"hasse {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, equation=False, out=True):
        if equation:
            p.add_argument("--a", type=int, required=True)
            p.add_argument("--b", type=int, required=True)
            p.add_argument("--c", type=int, default=None,
                           help="third coefficient; selects the homogeneous shape")
            p.add_argument("--k", type=int, required=True)
        if out:
            p.add_argument("--out", default=None, help="write results to this path")
            p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                       help="candidate-evaluation cap per (equation, prime)")
        p.add_argument("--jobs", type=int, default=os.cpu_count() or 1,
                       help="worker processes for census sweeps")
        p.add_argument("--seed", type=int, default=0,
                       help="recorded in output headers; reserved for randomized sweeps")

    p = sub.add_parser("local", help="decide solubility at a single prime")
    add_common(p, equation=True, out=False)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--strategy", choices=("A", "B"), default="B")

    p = sub.add_parser("certify", help="decide everywhere-local solubility")
    add_common(p, equation=True)

    p = sub.add_parser("search", help="bounded global integer solution search")
    add_common(p, equation=True)
    p.add_argument("--B", type=int, default=None, help="direct coordinate bound")
    p.add_argument("--H", type=int, default=None, help="coefficient height for the conditional bound")
    p.add_argument("--slack", type=_plain_decimal, default=Fraction(4))

    p = sub.add_parser("census-thue", help="local/global density census for pairs")
    add_common(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--H", type=_int_list, required=True, help="ascending comma list of heights")
    p.add_argument("--slack", type=_plain_decimal, default=Fraction(4))
    p.add_argument("--coprime-only", action="store_true")
    p.add_argument("--allow-large", action="store_true",
                   help="lift the default H cap for k=3 (quadratic-cost search)")
    p.add_argument("--plot-data", default=None, help="also write (H, ratio) pairs to this path")

    p = sub.add_parser("census-fermat", help="local/global density census for triples")
    add_common(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--H", type=_int_list, required=True)
    p.add_argument("--slack", type=_plain_decimal, default=Fraction(4))
    p.add_argument("--plot-data", default=None)

    p = sub.add_parser("families-pairs", help="certified prime pairs q*x^k - r*y^k = 1")
    add_common(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--modulus", type=int, default=None)
    p.add_argument("--limit", type=int, default=10_000)
    p.add_argument("--count", type=int, default=None)
    p.add_argument("--with-certificates", action="store_true")

    p = sub.add_parser("families-triples", help="certified prime triples q*x^k - r*y^k -+ s*z^k = 0")
    add_common(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--modulus", type=int, default=None)
    p.add_argument("--limit", type=int, default=10_000)
    p.add_argument("--count", type=int, default=None)
    p.add_argument("--with-certificates", action="store_true")

    p = sub.add_parser("count-quadruples", help="dyadic-box quadruple count")
    add_common(p, out=False)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--X", type=int, required=True)
    p.add_argument("--Y", type=int, required=True)
    p.add_argument("--Z", type=int, required=True)

    p = sub.add_parser("abc-quality", help="radical and quality of a zero-sum triple")
    add_common(p, out=False)
    p.add_argument("--u", type=int, required=True)
    p.add_argument("--v", type=int, required=True)
    p.add_argument("--w", type=int, required=True)

    return parser


def _equation(args) -> localsolve.Equation:
    if args.c is None:
        return ThueEquation(args.a, args.b, args.k)
    return FermatEquation(args.a, args.b, args.c, args.k)


def _config(args, names: list[str]) -> RunConfig:
    params = {}
    for name in names:
        value = getattr(args, name.replace("-", "_"))
        if isinstance(value, Fraction):
            value = str(value)
        params[name] = value
    return RunConfig(args.command, params)


def _cache_path() -> str | None:
    cache_dir = os.environ.get("HASSE_CACHE_DIR")
    if not cache_dir:
        return None
    os.makedirs(cache_dir, exist_ok=True)
    return os.path.join(cache_dir, f"verdicts-{__version__}.json")


def _run(args) -> int:
    cmd = args.command

    if cmd == "local":
        eq = _equation(args)
        verdict = localsolve.local_verdict(
            eq, args.p, budget=args.budget, strategy=args.strategy
        )
        print(json.dumps(verdict_to_jsonable(verdict), indent=2))
        return 0 if verdict.soluble else 1

    if cmd == "certify":
        eq = _equation(args)
        cert = localsolve.certify(eq, budget=args.budget)
        cfg = _config(args, ["a", "b", "c", "k", "budget", "seed"])
        if args.out:
            doc = {"version": __version__, "config": cfg.jsonable(),
                   "certificate": certificate_to_jsonable(cert)}
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(json.dumps(doc, indent=2) + "\n")
            print(f"wrote {args.out}")
        else:
            print(localsolve.certificate_to_json(cert))
        return 0 if cert.everywhere_soluble else 1

    if cmd == "search":
        eq = _equation(args)
        if args.B is not None:
            bound = args.B
        elif args.H is not None:
            if isinstance(eq, ThueEquation):
                bound = globalsearch.height_bound(args.k, args.H, args.slack).B
            else:
                bound = census.fermat_glob_bound(args.k, args.H, args.slack)
        else:
            raise ValueError("search needs --B or --H")
        if isinstance(eq, ThueEquation):
            sols = globalsearch.thue_solutions(eq, bound)
        else:
            sols = globalsearch.fermat_solutions(eq, bound)
        doc = {
            "equation": localsolve.equation_to_jsonable(eq),
            "bound_B": bound,
            "conditional": "no solution within the stated bound is not a proof of insolubility",
            "solutions": [list(s.point) for s in sols],
        }
        print(json.dumps(doc, indent=2))
        return 0 if sols else 1

    if cmd == "census-thue":
        rows = census.thue_census(
            args.k, args.H, slack=args.slack, coprime_only=args.coprime_only,
            budget=args.budget, jobs=args.jobs, allow_large=args.allow_large,
        )
        cfg = _config(args, ["k", "H", "slack", "coprime-only", "budget", "jobs", "seed"])
        return _emit_rows(rows, args, cfg)

    if cmd == "census-fermat":
        rows = census.fermat_census(
            args.k, args.H, slack=args.slack, budget=args.budget, jobs=args.jobs
        )
        cfg = _config(args, ["k", "H", "slack", "budget", "jobs", "seed"])
        return _emit_rows(rows, args, cfg)

    if cmd == "families-pairs":
        pairs = families.pair_stream(args.k, args.modulus, args.limit, args.count)
        cfg = _config(args, ["k", "modulus", "limit", "count", "seed"])
        if args.out:
            census.export(pairs, args.out, args.format, cfg.jsonable(),
                          with_certificates=args.with_certificates)
            print(f"wrote {args.out} ({len(pairs)} pairs)")
        else:
            for p in pairs:
                print(f"{p.q},{p.r},k={p.k}")
        if args.count is not None and len(pairs) < args.count:
            print(f"warning: prime limit exhausted at {len(pairs)} of {args.count} pairs",
                  file=sys.stderr)
        return 0 if pairs else 1

    if cmd == "families-triples":
        triples = families.triple_stream(args.k, args.modulus, args.limit, args.count)
        cfg = _config(args, ["k", "modulus", "limit", "count", "seed"])
        if args.out:
            census.export(triples, args.out, args.format, cfg.jsonable(),
                          with_certificates=args.with_certificates)
            print(f"wrote {args.out} ({len(triples)} triples)")
        else:
            for t in triples:
                sign = "-" if t.third_sign < 0 else "+"
                print(f"{t.q},{t.r},{t.s},k={t.k},sign={sign}")
        if args.count is not None and len(triples) < args.count:
            print(f"warning: prime limit exhausted at {len(triples)} of {args.count} triples",
                  file=sys.stderr)
        return 0 if triples else 1

    if cmd == "count-quadruples":
        box = census.DyadicBox(args.X, args.Y, args.Z, args.k)
        print(census.quadruple_count(box))
        return 0

    if cmd == "abc-quality":
        triple = globalsearch.abc_quality(args.u, args.v, args.w)
        print(json.dumps({
            "reduced": [triple.u, triple.v, triple.w],
            "radical": triple.radical_value,
            "quality": round(triple.quality, 6),
        }, indent=2))
        return 0

    raise ValueError(f"unknown command {cmd!r}")


def _emit_rows(rows, args, cfg: RunConfig) -> int:
    if args.out:
        census.export(rows, args.out, args.format, cfg.jsonable())
        print(f"wrote {args.out} ({len(rows)} rows)")
    else:
        for line in census._census_csv_lines(rows):
            print(line)
    if getattr(args, "plot_data", None):
        census.write_plot_data(rows, args.plot_data)
        print(f"wrote {args.plot_data}")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    cache_path = _cache_path()
    if cache_path:
        localsolve.load_verdict_cache(cache_path)
    try:
        code = _run(args)
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if cache_path:
        localsolve.save_verdict_cache(cache_path)
    return code


if __name__ == "__main__":
    sys.exit(main())
