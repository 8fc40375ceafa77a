"""Command-line front end.

Exit codes: 0 success, 1 a checked identity failed, 2 invalid arguments or
input, 3 insufficient p-adic precision.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Iterable, Sequence

from .algebra import parse_element
from .errors import AxbqError, InsufficientPrecision, KTheoryError
from .oracle import oracle_equal
from .profinite import AxbElement, FiniteAdele, axb_act
from .report import FAIL, PASS, CaseResult
from .suites import (defining_relations_suite, lemma_comm_suite, oracle_equivalence_suite,
                     trace_kms_suite)
from .trace import kms_sides, trace_tau

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_PRECISION = 0, 1, 2, 3


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be positive, got {v}")
    return v


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"{text!r} is not a rational number") from None


def _prime_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a comma-separated list of primes") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mode", choices=("N", "Z"), default="N", help="algebra: Q_N or Q_Z")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("human", "structured"), default="human")
    common.add_argument("--bound", type=_positive, default=10, help="index bound")
    common.add_argument("--window", type=_positive, default=10 ** 5, help="window half-width")
    common.add_argument("--stages", type=_positive, default=6, help="colimit stages")

    parser = argparse.ArgumentParser(
        prog="axbq", description="Identity suites, traces, adele dynamics and K-theory for Q_N and Q_Z.")
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[common], help="run the identity suites")
    v.add_argument("--words", type=_positive, default=1000, help="random words for the oracle suite")
    v.add_argument("--word-length", type=_positive, default=12)

    k = sub.add_parser("ktheory", parents=[common], help="K-theory scenarios")
    k.add_argument("scenario", choices=("bd", "bn", "fprime", "bnprime"))
    k.add_argument("--n", type=_positive, default=3, help="number of primes (bn, bnprime)")
    k.add_argument("--ordering", choices=("standard", "listed"), default="standard")
    k.add_argument("--primes", type=_prime_list, default=None,
                   help="explicit multiplier order, e.g. 2,3,5 (default: round robin)")

    t = sub.add_parser("trace", parents=[common], help="exact trace of an element")
    t.add_argument("expression")

    m = sub.add_parser("kms", parents=[common], help="check tau(x lambda_i(y)) = tau(yx)")
    m.add_argument("x")
    m.add_argument("y")

    a = sub.add_parser("adele", parents=[common], help="ax+b action on finite adeles")
    a.add_argument("action", choices=("act",))
    a.add_argument("--a", type=_rational, required=True)
    a.add_argument("--b", type=_rational, default=Fraction(0))
    a.add_argument("adele")

    o = sub.add_parser("oracle", parents=[common], help="compare two elements in the representation")
    o.add_argument("x")
    o.add_argument("y")
    return parser


def _emit(results: Iterable[CaseResult], fmt: str, out) -> bool:
    ok = True
    for r in results:
        ok = ok and r.status != FAIL
        if fmt == "structured":
            out.write(json.dumps(r.record(), sort_keys=True, default=str) + "\n")
        else:
            w = ", ".join(f"{k}={v}" for k, v in r.witness.items())
            out.write(f"{r.status.upper():4} {r.suite}: {r.case}" + (f" ({w})" if w else "") + "\n")
    return ok


def _verify(args) -> list[CaseResult]:
    res: list[CaseResult] = []
    res += defining_relations_suite(args.bound, args.mode).cases
    res += lemma_comm_suite(args.bound, c_pairs="coprime").cases
    res += trace_kms_suite(args.bound, args.window).cases
    res += oracle_equivalence_suite(args.words, args.seed, (args.mode,),
                                    max_len=args.word_length).cases
    return res


def _ktheory(args) -> list[CaseResult]:
    from .ktheory.scenarios import run_scenario
    return run_scenario(args.scenario, stages=args.stages, n=args.n, ordering=args.ordering,
                        primes=args.primes)


def _trace(args) -> list[CaseResult]:
    x = parse_element(args.expression, args.mode)
    return [CaseResult("trace", args.expression, PASS, {"value": str(trace_tau(x))})]


def _kms(args) -> list[CaseResult]:
    x, y = parse_element(args.x, args.mode), parse_element(args.y, args.mode)
    left, right = kms_sides(x, y)
    return [CaseResult("kms", f"x={args.x}, y={args.y}", PASS if left == right else FAIL,
                       {"lhs": str(left), "rhs": str(right)})]


def _adele(args) -> list[CaseResult]:
    if args.a == 0:
        raise ValueError("a must be nonzero")
    x = FiniteAdele.parse(args.adele)
    y = axb_act(AxbElement(args.a, args.b), x)
    return [CaseResult("adele", f"({args.a}, {args.b}) . {x}", PASS, {"value": str(y)})]


def _oracle(args) -> list[CaseResult]:
    x, y = parse_element(args.x, args.mode), parse_element(args.y, args.mode)
    by_oracle = oracle_equal(x, y, args.bound)
    by_form = x == y
    status = PASS if by_oracle and by_form else FAIL
    return [CaseResult("oracle", f"{args.x} = {args.y}", status,
                       {"oracle_equal": by_oracle, "normal_form_equal": by_form, "bound": args.bound})]


_COMMANDS = {"verify": _verify, "ktheory": _ktheory, "trace": _trace, "kms": _kms,
             "adele": _adele, "oracle": _oracle}


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and EXIT_USAGE
    try:
        results = _COMMANDS[args.command](args)
    except InsufficientPrecision as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except KTheoryError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (AxbqError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK if _emit(results, args.format, out) else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
