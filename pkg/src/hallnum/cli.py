"""Command-line entry point ``hallnum``.

Exit status: 0 success, 1 valid negative result, 2 usage error,
3 computational budget exceeded.  JSON goes to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .certificates import dumps
from .halltheory import (
    DEFAULT_MAX_PAIRS,
    EXCEPTIONAL,
    classify,
    family_primes,
    generate_witness,
    verify_exceptional,
)
from .numtheory import DEFAULT_PRIME_BOUND, BoundExhaustedError, WitnessPrimeQuery, find_witness_primes, p_part
from .psl2 import GroupTooLargeError, build_group, env_group_cap, order_spectrum

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"{value} is not positive")
    return value


def _diag(msg: str) -> None:
    print(msg, file=sys.stderr)


def _emit_json(doc: dict) -> None:
    sys.stdout.write(dumps(doc))


def _witness_lines(cert) -> list[str]:
    v = cert.verification
    lines = [
        f"m = {cert.m} = {cert.split[0]} x {cert.split[1]}: not a Hall number",
        f"witness prime p = {cert.witness_prime}; |PSL(2,{cert.witness_prime})| = {cert.group_order}"
        f" = {cert.m} x {cert.cofactor}, gcd = {cert.gcd}",
    ]
    if v["mode"] == "BruteForce":
        lines.append(
            f"no subgroup of order {cert.m}: exhaustive pair search, {v['candidates_tried']} pairs over"
            f" {v['candidate_elements']} candidate elements"
        )
    else:
        lines.append(f"no subgroup of order {cert.m}: case analysis ({cert.downgraded})")
    return lines


def cmd_classify(args) -> int:
    c = classify(args.m)
    if args.witness and c.tag == "NotHall":
        c.witness = generate_witness(args.m, prime_bound=args.bound, group_cap=args.cap)
    if args.json:
        _emit_json(c.to_json())
    else:
        print(f"{args.m}: {c}")
        if c.witness is not None:
            print("\n".join(_witness_lines(c.witness)))
    return EXIT_OK


def cmd_witness(args) -> int:
    c = classify(args.m)
    if c.tag != "NotHall":
        raise UsageError(f"{args.m} is a Hall number ({c}); there is no counterexample")
    cert = generate_witness(args.m, prime_bound=args.bound, group_cap=args.cap, max_pairs=args.max_pairs)
    if cert.downgraded:
        _diag(f"note: {cert.downgraded}; using case analysis")
    if args.json:
        _emit_json(cert.to_json())
    else:
        print("\n".join(_witness_lines(cert)))
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.m not in EXCEPTIONAL:
        raise UsageError(f"m must be one of {EXCEPTIONAL}, got {args.m}")
    try:
        report = verify_exceptional(args.m, args.q, args.kind, cap=args.cap)
    except ValueError as exc:
        if isinstance(exc, GroupTooLargeError):
            raise
        raise UsageError(str(exc)) from None
    for note in report.notes:
        _diag(f"note: {note}")
    if args.json:
        _emit_json(report.to_json())
    else:
        c = report.congruence
        print(
            f"{report.group_kind}(2,{report.q}), order {report.group_order}: q^2 = {c['residue']} (mod {c['modulus']}),"
            f" congruence {'holds' if c['holds'] else 'fails'}"
        )
        if report.found:
            print(f"Hall subgroup of order {report.m}: {report.recognized} (expected {report.expected})")
            for g in report.generators:
                print(f"  generator [[{g[0]}, {g[1]}], [{g[2]}, {g[3]}]]")
        else:
            print(f"{report.m} is not a Hall divisor of {report.group_order}")
    return EXIT_OK if report.ok else EXIT_NEGATIVE


def cmd_primes(args) -> int:
    try:
        query = WitnessPrimeQuery(args.a, args.b, args.count, args.bound)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    try:
        found = find_witness_primes(query)
        status = EXIT_OK
    except BoundExhaustedError as exc:
        _diag(f"error: {exc}")
        found, status = exc.found, EXIT_BUDGET
    if args.json:
        _emit_json({"a": args.a, "b": args.b, "primes": found, "bound": args.bound})
    else:
        for p in found:
            print(p)
    return status


def cmd_family(args) -> int:
    if args.m not in EXCEPTIONAL:
        raise UsageError(f"m must be one of {EXCEPTIONAL}, got {args.m}")
    try:
        found = family_primes(args.m, args.count, args.bound)
        status = EXIT_OK
    except BoundExhaustedError as exc:
        _diag(f"error: {exc}")
        found, status = exc.found, EXIT_BUDGET
    if args.json:
        _emit_json({"m": args.m, "primes": found, "bound": args.bound})
    else:
        for q in found:
            print(q)
    return status


def cmd_inspect(args) -> int:
    p, kind = args.p, args.kind.upper()
    alias = None
    if p == 4:
        alias = "PSL(2,4) is isomorphic to A5 = PSL(2,5); showing PSL(2,5)"
        p, kind = 5, "PSL"
        _diag(f"note: {alias}")
    try:
        group = build_group(p, kind, cap=args.cap)
    except GroupTooLargeError:
        raise
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    spectrum = order_spectrum(group)
    sylow2 = p_part(group.order, 2)
    if args.json:
        doc = {
            "group": {"kind": kind, "p": p, "order": group.order},
            "sylow2_order": sylow2,
            "spectrum": {str(k): v for k, v in spectrum.items()},
        }
        if alias:
            doc["alias"] = alias
        _emit_json(doc)
    else:
        print(f"{group.name}: order {group.order}, Sylow 2-subgroup order {sylow2}")
        print("spectrum {" + ", ".join(f"{k}:{v}" for k, v in spectrum.items()) + "}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hallnum", description="Hall numbers and their certificates.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, bound=True, cap=True):
        p.add_argument("--json", action="store_true", help="emit JSON on stdout")
        if bound:
            p.add_argument("--bound", type=_positive, default=DEFAULT_PRIME_BOUND, help="prime search bound")
        if cap:
            p.add_argument("--cap", type=_positive, default=env_group_cap(), help="group size cap")

    p = sub.add_parser("classify", help="classify m")
    p.add_argument("m", type=_positive)
    p.add_argument("--witness", action="store_true", help="attach a counterexample certificate")
    common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("witness", help="counterexample certificate for a non-Hall number")
    p.add_argument("m", type=_positive)
    p.add_argument("--max-pairs", type=_positive, default=DEFAULT_MAX_PAIRS, help="pair budget for the exhaustive search")
    common(p)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("verify", help="find the exceptional Hall subgroup in PSL/PGL(2,q)")
    p.add_argument("m", type=_positive)
    p.add_argument("q", type=_positive)
    p.add_argument("--kind", choices=["psl", "pgl"], default="psl", type=str.lower)
    common(p, bound=False)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("primes", help="witness primes p with a || p-1 and b || p+1")
    p.add_argument("a", type=_positive)
    p.add_argument("b", type=_positive)
    p.add_argument("--count", type=_positive, default=5)
    common(p, cap=False)
    p.set_defaults(func=cmd_primes)

    p = sub.add_parser("family", help="primes q in the congruence family of m")
    p.add_argument("m", type=_positive)
    p.add_argument("--count", type=_positive, default=5)
    common(p, cap=False)
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("inspect", help="order, Sylow 2-order and order spectrum of PSL/PGL(2,p)")
    p.add_argument("p", type=_positive)
    p.add_argument("--kind", choices=["psl", "pgl"], default="psl", type=str.lower)
    common(p, bound=False)
    p.set_defaults(func=cmd_inspect)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        _diag(f"error: {exc}")
        return EXIT_USAGE
    except (BoundExhaustedError, GroupTooLargeError) as exc:
        _diag(f"error: {exc}")
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
