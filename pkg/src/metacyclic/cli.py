"""Command-line front end.  Every command is a thin wrapper over the library."""

from __future__ import annotations

import argparse
import contextlib
import json
import sys

from . import automorphism, group, oracle
from .endomorphism import parse_spec
from .errors import PresentationError, ResourceLimitError
from .presentation import (
    build_context,
    normalization_exponent,
    normalize,
    parse_presentation,
)

SCHEMA = "1"
EXIT_OK, EXIT_INVALID, EXIT_RESOURCE, EXIT_USAGE = 0, 1, 2, 3
FULL_SWEEP_MAX_ORDER = 120
DEFAULT_SAMPLE = 10_000


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="metacyclic", description="Automorphisms of metacyclic groups H(n,m;t,r).")
    ap.add_argument("--pres", help="presentation as n,m,t,r")
    ap.add_argument("--quad", help="generator images as x1,y1,x2,y2")
    ap.add_argument("--out", help="write output to PATH instead of stdout")
    ap.add_argument("--format", choices=("json", "plain"), default="json")
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--oracle-budget", type=int, default=oracle.DEFAULT_BUDGET)
    ap.add_argument("--sample", type=int, default=None,
                    help="verify: number of accepted/rejected quadruples to re-check")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in ("validate", "normalize", "profile", "count", "enumerate", "verify",
                 "check-quadruple"):
        sub.add_parser(name)
    elem = sub.add_parser("elem", help="element arithmetic: mul X Y | pow X K | inv X | order X")
    elem.add_argument("op", choices=("mul", "pow", "inv", "order"))
    elem.add_argument("args", nargs="+")
    return ap


def _dump(out, obj: dict) -> None:
    out.write(json.dumps({"schema": SCHEMA, **obj}) + "\n")


def _require(value, flag: str):
    if value is None:
        raise UsageError(f"{flag} is required for this command")
    return value


def _context(args, err):
    pres = parse_presentation(_require(args.pres, "--pres"))
    norm = normalize(pres)
    if norm != pres:
        err.write(f"note: rewrote {pres} as {norm} (b -> b^{normalization_exponent(pres)})\n")
    return build_context(norm)


def _run(args, out, err) -> int:
    fmt = args.format
    cmd = args.command

    if cmd == "validate":
        pres = parse_presentation(_require(args.pres, "--pres"))
        if fmt == "plain":
            out.write(f"{pres} is valid\n")
        else:
            _dump(out, {"valid": True, "n": pres.n, "m": pres.m, "t": pres.t, "r": pres.r})
        return EXIT_OK

    if cmd == "normalize":
        pres = parse_presentation(_require(args.pres, "--pres"))
        norm = normalize(pres)
        v = normalization_exponent(pres)
        if fmt == "plain":
            out.write(f"{norm} (b -> b^{v})\n")
        else:
            _dump(out, {"n": norm.n, "m": norm.m, "t": norm.t, "r": norm.r, "b_exponent": v})
        return EXIT_OK

    if cmd == "elem":
        return _elem(args, out)

    ctx = _context(args, err)
    n, m, t, r = ctx.presentation.as_tuple()

    if cmd == "profile":
        info = ctx.as_dict()
        if fmt == "plain":
            out.write(f"{ctx.presentation}: d={ctx.d} epsilon={info['epsilon']} m0={ctx.m0}\n")
            for prof in info["profiles"]:
                out.write("  p={p} alpha={alpha} beta={beta} gamma={gamma} "
                          "delta={delta} {class}\n".format(**prof))
        else:
            _dump(out, info)
        return EXIT_OK

    if cmd == "count":
        total = automorphism.count(ctx, workers=args.workers)
        if fmt == "plain":
            out.write(f"{total}\n")
        else:
            _dump(out, {"n": n, "m": m, "t": t, "r": r, "aut_order": total})
        return EXIT_OK

    if cmd == "enumerate":
        for spec in automorphism.enumerate_automorphisms(ctx, workers=args.workers):
            if fmt == "plain":
                out.write(f"{spec}\n")
            else:
                out.write(json.dumps(spec.as_dict()) + "\n")
        return EXIT_OK

    if cmd == "check-quadruple":
        spec = parse_spec(ctx, _require(args.quad, "--quad"))
        verdict = automorphism.theorem_accepts(ctx, spec)
        if fmt == "plain":
            status = "automorphism" if verdict else f"rejected at {verdict.failed_clause.value}"
            out.write(f"{spec}: {status} {verdict.detail}".rstrip() + "\n")
        else:
            _dump(out, {**spec.as_dict(), **verdict.as_dict()})
        return EXIT_OK

    if cmd == "verify":
        sample = args.sample
        if sample is None and ctx.order > FULL_SWEEP_MAX_ORDER:
            sample = DEFAULT_SAMPLE
        report = oracle.verify_equivalence(
            ctx, budget=args.oracle_budget, workers=args.workers, sample=sample
        )
        if fmt == "plain":
            if report.equal and report.mode == "full":
                out.write(f"theorem == oracle: {report.theorem_count} automorphisms\n")
            elif report.equal:
                out.write(f"theorem == oracle on {report.checked} sampled quadruples "
                          f"({report.theorem_count} automorphisms)\n")
            else:
                out.write(f"theorem != oracle: {len(report.mismatches)} disagreements\n")
                for d in report.mismatches:
                    out.write(json.dumps(d.as_dict()) + "\n")
        else:
            _dump(out, report.as_dict())
        return EXIT_OK if report.equal else EXIT_INVALID

    raise UsageError(f"unknown command {cmd}")


def _elem(args, out) -> int:
    pres = parse_presentation(_require(args.pres, "--pres"))
    op, rest = args.op, args.args
    arity = {"mul": 2, "pow": 2, "inv": 1, "order": 1}[op]
    if len(rest) != arity:
        raise UsageError(f"elem {op} takes {arity} argument(s)")
    x = group.parse_element(pres, rest[0])
    if op == "mul":
        result = group.mul(pres, x, group.parse_element(pres, rest[1]))
    elif op == "pow":
        result = group.power(pres, x, int(rest[1]))
    elif op == "inv":
        result = group.inv(pres, x)
    else:
        k = group.element_order(pres, x)
        if args.format == "plain":
            out.write(f"{k}\n")
        else:
            _dump(out, {"element": [x.u, x.v], "order": k})
        return EXIT_OK
    if args.format == "plain":
        out.write(f"{result}\n")
    else:
        _dump(out, {"u": result.u, "v": result.v, "text": str(result)})
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    err = sys.stderr
    try:
        args = _parser().parse_args(argv)
        if args.workers < 1:
            raise UsageError("--workers must be >= 1")
        with contextlib.ExitStack() as stack:
            out = stack.enter_context(open(args.out, "w")) if args.out else sys.stdout
            return _run(args, out, err)
    except PresentationError as exc:
        err.write(f"invalid presentation: {exc}\n")
        return EXIT_INVALID
    except ResourceLimitError as exc:
        err.write(f"resource limit: {exc}\n")
        return EXIT_RESOURCE
    except (UsageError, ValueError) as exc:
        err.write(f"usage error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
