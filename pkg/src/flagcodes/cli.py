"""Command-line toolkit: construct, report, verify, bounds, erase, decode,
simulate.

Exit codes: 0 success / verification PASS, 1 verification failure, 2 usage or
input error, 3 decode FAILURE.
"""

from __future__ import annotations

import argparse
import json
import sys

from .construction import (
    ConstructionError,
    Flag,
    FlagCode,
    SandwichParams,
    build_code,
    code_from_json,
    code_to_json,
)
from .decoder import (
    DECODED,
    ChannelError,
    decode,
    erase,
    received_from_json,
    received_to_json,
    simulate,
)
from .fields import FieldError, field_new
from .linalg import LinAlgError, parse_matrix, rowspace
from .metrics import aq_exact, classify, max_distance, partial_spread_bound
from .verify import FAIL, verify_code

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_USAGE = 2
EXIT_DECODE_FAIL = 3


class CliError(Exception):
    pass


def _parse_ints(text):
    return tuple(int(x) for x in text.split(",")) if text else None


def _build_field(args):
    modulus = _parse_ints(getattr(args, "modulus", None))
    return field_new(args.p, args.m, modulus)


def _load_code(path: str) -> FlagCode:
    with open(path) as fh:
        return code_from_json(fh.read())


def _load_code_or_flags(path: str):
    """Code JSON (with params) or a bare flag-list fixture.

    Fixture format: {"ambient": n, "flags": [[matrix-text per level], ...]}.
    """
    with open(path) as fh:
        doc = json.load(fh)
    if "params" in doc:
        return code_from_json(json.dumps(doc))
    try:
        flags = [
            Flag(rowspace(parse_matrix(text)) for text in levels)
            for levels in doc["flags"]
        ]
    except (KeyError, TypeError) as exc:
        raise CliError(f"malformed flag fixture {path}: {exc}") from exc
    return flags


def _emit(args, doc: dict, text_lines):
    if args.format == "json":
        print(json.dumps(doc, indent=2))
    else:
        for line in text_lines:
            print(line)


def cmd_construct(args) -> int:
    field = _build_field(args)
    params = SandwichParams(field, args.k1, args.r, _parse_ints(args.prim_poly))
    code = build_code(params)
    payload = code_to_json(code)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(payload)
    else:
        print(payload)
    poly = ",".join(str(c) for c in params.prim_poly)
    print(
        f"n={params.n} |C|={len(code)} q={params.q} k1={params.k1} "
        f"r={params.r} prim_poly={poly}",
        file=sys.stderr,
    )
    return EXIT_OK


def cmd_report(args) -> int:
    code = _load_code_or_flags(args.code)
    report = classify(code)
    doc = report.to_dict()
    lines = [f"{k}: {v}" for k, v in doc.items()]
    _emit(args, doc, lines)
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        code = _load_code(args.code)
        results = verify_code(code, args.max_enumeration)
    except (ConstructionError, LinAlgError, FieldError) as exc:
        print(f"FAIL load: {exc}")
        return EXIT_VERIFY_FAIL
    doc = {"checks": [r.to_dict() for r in results]}
    lines = [
        f"{r.status:7s} {r.name}" + (f"  ({r.detail})" if r.detail else "")
        for r in results
    ]
    _emit(args, doc, lines)
    return EXIT_VERIFY_FAIL if any(r.status == FAIL for r in results) else EXIT_OK


def cmd_bounds(args) -> int:
    if args.code:
        code = _load_code(args.code)
        p = code.params
        q, n, k = p.q, p.n, p.k1
        extra = {"cardinality": len(code)}
    else:
        if args.n is None or args.k is None:
            raise CliError("bounds needs --code or both --n and --k")
        field = _build_field(args)
        q, n, k = field.q, args.n, args.k
        extra = {}
    exact = aq_exact(q, n, k)
    doc = {
        "q": q,
        "n": n,
        "k": k,
        "lemma21": partial_spread_bound(q, n, k),
        "lemma22": exact if exact is not None else "n/a",
        "D_n": max_distance(n),
        **extra,
    }
    if "cardinality" in doc:
        bound = exact if exact is not None else doc["lemma21"]
        doc["satisfied"] = doc["cardinality"] <= bound
        doc["equality"] = doc["cardinality"] == bound
    _emit(args, doc, [f"{k_}: {v}" for k_, v in doc.items()])
    return EXIT_OK


def cmd_erase(args) -> int:
    code = _load_code(args.code)
    if not (1 <= args.codeword <= len(code)):
        raise CliError(f"codeword index {args.codeword} outside [1, {len(code)}]")
    erasures = _parse_ints(args.erasures)
    if erasures is None:
        erasures = (0,) * (code.ambient - 1)
    received = erase(code.flags[args.codeword - 1], erasures, args.seed)
    payload = received_to_json(received)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(payload)
    else:
        print(payload)
    return EXIT_OK


def cmd_decode(args) -> int:
    code = _load_code(args.code)
    with open(args.received) as fh:
        received = received_from_json(fh.read())
    outcome = decode(code, received)
    doc = outcome.to_dict()
    lines = [f"{k}: {v}" for k, v in doc.items()]
    _emit(args, doc, lines)
    return EXIT_OK if outcome.status == DECODED else EXIT_DECODE_FAIL


def cmd_simulate(args) -> int:
    code = _load_code(args.code)
    report = simulate(code, args.trials, args.seed, args.budget)
    doc = report.to_dict()
    _emit(args, doc, [f"{k}: {v}" for k, v in doc.items()])
    return EXIT_OK


def _add_field_args(sub):
    sub.add_argument("--p", type=int, default=2, help="prime characteristic")
    sub.add_argument("--m", type=int, default=1, help="extension degree")
    sub.add_argument("--modulus", help="field modulus coefficients, comma-separated")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="flagcodes",
        description="Sandwich full flag codes: construction, verification, decoding",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sub = subs.add_parser(name, help=help_)
        sub.set_defaults(func=func)
        sub.add_argument(
            "--format", choices=("json", "text"), default="json", help="output format"
        )
        return sub

    sub = add("construct", cmd_construct, "build a code and write its JSON")
    _add_field_args(sub)
    sub.add_argument("--k1", type=int, required=True)
    sub.add_argument("--r", type=int, default=0)
    sub.add_argument("--prim-poly", dest="prim_poly", help="comma-separated coefficients, low to high, monic")
    sub.add_argument("--out", help="output file (stdout if omitted)")

    sub = add("report", cmd_report, "distance/classification report for a code file")
    sub.add_argument("--code", required=True)

    sub = add("verify", cmd_verify, "run the invariant suite on a code file")
    sub.add_argument("--code", required=True)
    sub.add_argument("--max-enumeration", type=int, default=10**6)

    sub = add("bounds", cmd_bounds, "cardinality bounds for (q, n, k) or a code file")
    _add_field_args(sub)
    sub.add_argument("--n", type=int)
    sub.add_argument("--k", type=int)
    sub.add_argument("--code")

    sub = add("erase", cmd_erase, "apply erasures to a codeword, write the received file")
    sub.add_argument("--code", required=True)
    sub.add_argument("--codeword", type=int, required=True, help="1-based codeword index")
    sub.add_argument("--erasures", help="comma-separated e_1..e_{n-1}")
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--out", help="output file (stdout if omitted)")

    sub = add("decode", cmd_decode, "decode a received-sequence file")
    sub.add_argument("--code", required=True)
    sub.add_argument("--received", required=True)

    sub = add("simulate", cmd_simulate, "seeded Monte-Carlo decode trials")
    sub.add_argument("--code", required=True)
    sub.add_argument("--trials", type=int, default=1000)
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--budget", type=int, help="override the correctable budget")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (
        CliError,
        ConstructionError,
        ChannelError,
        FieldError,
        LinAlgError,
        ValueError,
        OSError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
