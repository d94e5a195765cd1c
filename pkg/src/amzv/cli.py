"""Command-line front end.

One subcommand per operation; all configuration is by flags so runs are
reproducible from the command line alone (the environment variable ``AMZV_Q``
may supply a default field size, nothing else).  Exit codes: 0 success,
1 computation error (for example an enumeration budget), 2 usage or parse
error, 3 verification found failures.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import verify
from .coalgebra import antipode, coproduct
from .ff import FieldSpec, field_from_q, field_make
from .products import diamond, shuffle, triangle
from .words import (
    Element,
    basis_words,
    format_element,
    format_tensor,
    format_word,
    parse_element,
)
from .zeta import (
    BudgetExceededError,
    format_laurent,
    power_sum_d,
    power_sum_lt,
    word_to_array,
    zeta_trunc,
)


class UsageError(ValueError):
    pass


def _field_from_args(args) -> FieldSpec:
    if args.p is not None:
        if args.k is None:
            raise UsageError("--p requires --k")
        modulus = None
        if args.modulus:
            try:
                modulus = tuple(int(c) for c in args.modulus.split(","))
            except ValueError:
                raise UsageError(f"bad --modulus {args.modulus!r}") from None
        return field_make(args.p, args.k, modulus)
    qtext = args.q if args.q is not None else os.environ.get("AMZV_Q")
    if qtext is None:
        raise UsageError("no field given: use --q or --p/--k (or set AMZV_Q)")
    qtext = str(qtext)
    try:
        if "^" in qtext:
            p, k = qtext.split("^", 1)
            return field_make(int(p), int(k))
        return field_from_q(int(qtext))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _parse_operand(text: str, spec: FieldSpec) -> Element:
    try:
        return parse_element(text, spec)
    except ValueError as exc:
        raise UsageError(f"bad element {text!r}: {exc}") from None


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="amzv",
        description="products, coproducts and truncated zeta values for "
        "alternating-character words over F_q",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", help="field size, e.g. 3 or 2^2")
    common.add_argument("--p", type=int, help="characteristic (with --k)")
    common.add_argument("--k", type=int, help="extension degree (with --p)")
    common.add_argument(
        "--modulus", help="comma-separated ascending coefficients of the modulus"
    )
    common.add_argument("--ascii", action="store_true", help="ASCII tensor symbol")
    common.add_argument(
        "--format", choices=("text", "machine"), default="text", dest="fmt"
    )

    sub = top.add_subparsers(dest="command", required=True)
    for name, doc in (
        ("shuffle", "shuffle product of two elements"),
        ("diamond", "diamond product of two elements"),
        ("triangle", "triangle product of two elements"),
    ):
        p = sub.add_parser(name, parents=[common], help=doc)
        p.add_argument("a")
        p.add_argument("b")
    p = sub.add_parser("coproduct", parents=[common], help="coproduct of an element")
    p.add_argument("a")
    p = sub.add_parser("antipode", parents=[common], help="antipode of an element")
    p.add_argument("a")
    p = sub.add_parser("powsum", parents=[common], help="power sum S_d (or S_<d) of a word")
    p.add_argument("word")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--prec", type=int, default=16)
    p.add_argument("--lt", action="store_true", help="sum over degrees below d")
    p = sub.add_parser("zeta", parents=[common], help="truncated zeta value of an element")
    p.add_argument("a")
    p.add_argument("--prec", type=int, default=16)
    p = sub.add_parser("basis", parents=[common], help="basis words up to a weight")
    p.add_argument("--weight-max", type=int, required=True)
    p = sub.add_parser("verify", parents=[common], help="run the verification matrix")
    p.add_argument("--weight-max", type=int, default=6)
    p.add_argument("--dmax", type=int, default=3)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=20260810)
    return top


def _run(args) -> int:
    cmd = args.command
    if cmd == "verify":
        if args.q is None and args.p is None and "AMZV_Q" not in os.environ:
            qs: tuple[int, ...] = (2, 3, 4)
            make = None
        else:
            spec = _field_from_args(args)
            qs = (spec.q,)
            make = lambda q, s=spec: s  # noqa: E731
        reports = verify.run_default_matrix(
            qs,
            weight_bound=args.weight_max,
            d_max=args.dmax,
            trials=args.trials,
            seed=args.seed,
            make_spec=make,
        )
        for rep in reports:
            print(rep.machine_line() if args.fmt == "machine" else rep.text_block())
        bad = sum(len(r.failures) for r in reports)
        if args.fmt == "text":
            print(f"{len(reports)} checks, {bad} failures")
        return 3 if bad else 0

    spec = _field_from_args(args)
    if cmd in ("shuffle", "diamond", "triangle"):
        a = _parse_operand(args.a, spec)
        b = _parse_operand(args.b, spec)
        op = {"shuffle": shuffle, "diamond": diamond, "triangle": triangle}[cmd]
        print(format_element(op(a, b)))
        return 0
    if cmd == "coproduct":
        a = _parse_operand(args.a, spec)
        print(format_tensor(coproduct(a), ascii_tensor=args.ascii))
        return 0
    if cmd == "antipode":
        a = _parse_operand(args.a, spec)
        print(format_element(antipode(a)))
        return 0
    if cmd == "powsum":
        from .words import parse_word

        try:
            w = parse_word(args.word, spec)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        if not w:
            raise UsageError("power sums need a nonempty word")
        arr = word_to_array(w)
        ps = power_sum_lt(arr, args.d, args.prec) if args.lt else power_sum_d(
            arr, args.d, args.prec
        )
        print(format_laurent(ps))
        return 0
    if cmd == "zeta":
        a = _parse_operand(args.a, spec)
        print(format_laurent(zeta_trunc(a, args.prec)))
        return 0
    if cmd == "basis":
        for w in range(args.weight_max + 1):
            for word in basis_words(w, spec):
                print(format_word(word, spec))
        return 0
    raise AssertionError(f"unhandled command {cmd}")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _run(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
