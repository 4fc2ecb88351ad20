"""Command-line front end for constructing, verifying and exercising codes.

Exit status: 0 on success, 1 when a verification fails or an erasure pattern
is unrecoverable, 2 on usage or parameter errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from collections.abc import Callable, Sequence
from typing import Any

from coding.completion import VerificationReport, minimal_degree_search
from coding.convmdp import (
    ConvCode,
    build_diag,
    build_vdm2,
    build_vdm3,
    column_distance_bound,
    column_distance_bruteforce,
    dual_mdp_check,
    encode_stream,
    is_mdp,
)
from coding.errors import CodingError, ParameterViolation, Unrecoverable
from coding.gf import FieldConfig, field_of_order
from coding.mrlrc import (
    LocalityProfile,
    MrLrcCode,
    build_mr_lrc,
    build_profile,
    decode_erasures,
    degree_search_builder,
    encode,
    field_degree_bound,
    qh_closed_form,
    qh_max,
    update_symbol,
    verify_mr,
)
from framework.descriptors import (
    code_from_descriptor,
    load_code,
    read_descriptor,
    write_descriptor,
)
from framework.provenance import content_digest
from observability.otel import init_tracing
from utils.config import get_config_section

logger = logging.getLogger(__name__)
_TRACER = init_tracing("coding-cli")

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

ERASURE_TOKEN = "?"
CONSTRUCT_KINDS = ("mr-lrc", "conv-diag", "conv-vdm2", "conv-vdm3")


def _int_list(raw: str) -> list[int]:
    try:
        return [int(token) for token in raw.split(",") if token.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got '{raw}'") from exc


def parse_symbols(raw: str, *, allow_erasures: bool = False) -> list[int | None]:
    """Comma-separated encodings; ``?`` marks an erasure when allowed."""

    symbols: list[int | None] = []
    for token in (part.strip() for part in raw.split(",")):
        if allow_erasures and token == ERASURE_TOKEN:
            symbols.append(None)
            continue
        try:
            symbols.append(int(token))
        except ValueError as exc:
            raise ParameterViolation(f"'{token}' is not a symbol encoding") from exc
    return symbols


def _emit(payload: Any) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True, default=str))


def _report_exit(report: VerificationReport) -> int:
    print(report.summary())
    _emit(report.as_dict())
    return EXIT_OK if report.passed else EXIT_FAILED


def _settings(args: argparse.Namespace) -> dict[str, Any]:
    verification = get_config_section("verification", args.profile)
    coldist = get_config_section("coldist", args.profile)
    return {
        "failure_cap": (
            args.failure_cap if args.failure_cap is not None
            else verification.get("failure_cap", 16)
        ),
        "threads": args.threads if args.threads is not None else verification.get("threads"),
        "max_evaluations": coldist.get("max_evaluations"),
    }


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def _mrlrc_profile(args: argparse.Namespace) -> LocalityProfile:
    if args.ell is None or args.ns is None or args.ks is None or args.h is None:
        raise ParameterViolation("mr-lrc needs --ell, --ns, --ks and --h")
    return build_profile(args.ell, args.h, args.ns, args.ks)


def cmd_construct(args: argparse.Namespace) -> int:
    q_field: FieldConfig = field_of_order(args.q)
    code: MrLrcCode | ConvCode
    if args.kind == "mr-lrc":
        code = build_mr_lrc(
            _mrlrc_profile(args), q_field, args.d, allow_below_bound=args.override_degree
        )
        field_name = code.ext_field.name
    else:
        if args.n is None:
            raise ParameterViolation(f"{args.kind} needs --n")
        if args.kind == "conv-diag":
            if args.k is None:
                raise ParameterViolation("conv-diag needs --k")
            code = build_diag(args.n, args.k, q_field)
        elif args.kind == "conv-vdm2":
            code = build_vdm2(args.n, q_field)
        else:
            code = build_vdm3(args.n, q_field)
        field_name = code.field.name
    path = write_descriptor(code, args.out)
    doc = read_descriptor(path)
    _emit(
        {
            "kind": args.kind,
            "field": field_name,
            "out": str(path),
            "digest": content_digest(doc.model_dump(mode="json")),
        }
    )
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    settings = _settings(args)
    code = load_code(args.input, strict=args.strict)
    if isinstance(code, MrLrcCode):
        report = verify_mr(code, settings["failure_cap"], threads=settings["threads"])
    else:
        report = is_mdp(
            code, args.window, settings["failure_cap"], threads=settings["threads"]
        )
        if args.dual:
            report = report.merge(
                dual_mdp_check(code, settings["failure_cap"], threads=settings["threads"])
            )
    return _report_exit(report)


def cmd_encode(args: argparse.Namespace) -> int:
    code = load_code(args.input)
    if isinstance(code, MrLrcCode):
        message = parse_symbols(args.message)
        codeword = encode(code, [int(v) for v in message if v is not None])
        _emit({"codeword": [x.value for x in codeword]})
    else:
        blocks = [
            [int(v) for v in parse_symbols(block) if v is not None]
            for block in args.message.split(";")
        ]
        _emit({"blocks": [[x.value for x in out] for out in encode_stream(code, blocks)]})
    return EXIT_OK


def _require_mrlrc(code: MrLrcCode | ConvCode, command: str) -> MrLrcCode:
    if not isinstance(code, MrLrcCode):
        raise ParameterViolation(f"{command} needs an mr-lrc descriptor")
    return code


def cmd_decode(args: argparse.Namespace) -> int:
    code = _require_mrlrc(load_code(args.input), "decode")
    result = decode_erasures(code, parse_symbols(args.received, allow_erasures=True))
    _emit(
        {
            "message": [x.value for x in result.message],
            "codeword": [x.value for x in result.codeword],
            "repaired_groups": list(result.repaired_groups),
            "global_solve": result.global_solve,
        }
    )
    return EXIT_OK


def cmd_update(args: argparse.Namespace) -> int:
    code = _require_mrlrc(load_code(args.input), "update")
    codeword = [int(v) for v in parse_symbols(args.codeword) if v is not None]
    result = update_symbol(code, codeword, args.group, args.index, args.value)
    _emit({"codeword": [x.value for x in result.codeword], "touched": list(result.touched)})
    return EXIT_OK


def cmd_coldist(args: argparse.Namespace) -> int:
    settings = _settings(args)
    code = load_code(args.input)
    if not isinstance(code, ConvCode):
        raise ParameterViolation("coldist needs a convolutional descriptor")
    budget = args.max_evaluations or settings["max_evaluations"]
    distance = column_distance_bruteforce(code, args.j, budget, threads=settings["threads"])
    bound = column_distance_bound(code.n, code.k, args.j)
    _emit({"j": args.j, "distance": distance, "bound": bound, "meets_bound": distance == bound})
    return EXIT_OK


def cmd_search(args: argparse.Namespace) -> int:
    settings = _settings(args)
    search = get_config_section("search", args.profile)
    profile = _mrlrc_profile(args)
    q_field = field_of_order(args.q)
    d_lo = args.d_lo if args.d_lo is not None else int(search.get("d_lo", 1))
    d_hi = args.d_hi if args.d_hi is not None else field_degree_bound(profile)
    result = minimal_degree_search(
        degree_search_builder(profile, q_field),
        d_lo,
        d_hi,
        failure_cap=settings["failure_cap"],
        threads=settings["threads"],
    )
    for report in result.reports.values():
        print(report.summary())
    _emit({"bound": field_degree_bound(profile), **result.as_dict()})
    return EXIT_OK if result.smallest is not None else EXIT_FAILED


def cmd_oracle_qh(args: argparse.Namespace) -> int:
    brute = qh_max(args.ell, args.h)
    closed = qh_closed_form(args.ell, args.h)
    _emit({"ell": args.ell, "h": args.h, "qh_max": brute, "closed_form": closed})
    return EXIT_OK if brute == closed else EXIT_FAILED


def cmd_suite(args: argparse.Namespace) -> int:
    from suites.acceptance.pipeline import (
        AcceptanceSuite,
        SuiteRuntime,
        load_suite_config,
        suite_passed,
    )

    settings = _settings(args)
    suite = AcceptanceSuite(config=load_suite_config(args.config))
    results = suite.run(
        SuiteRuntime(
            mode=args.mode, failure_cap=settings["failure_cap"], threads=settings["threads"]
        )
    )
    _emit(results)
    return EXIT_OK if suite_passed(results) else EXIT_FAILED


def cmd_describe(args: argparse.Namespace) -> int:
    doc = read_descriptor(args.input)
    code = code_from_descriptor(doc)
    payload = doc.model_dump(mode="json")
    summary: dict[str, Any] = {"kind": doc.kind, "digest": content_digest(payload)}
    if isinstance(code, MrLrcCode):
        summary.update(
            {
                "profile": code.profile.describe(),
                "base_field": code.base_field.name,
                "field": code.ext_field.name,
                "degree": code.degree,
            }
        )
    else:
        summary.update(
            {
                "n": code.n,
                "k": code.k,
                "delta": code.delta,
                "memory": code.memory,
                "field": code.field.name,
                "construction": code.construction,
            }
        )
    _emit(summary)
    return EXIT_OK


COMMANDS: dict[str, Callable[[argparse.Namespace], int]] = {
    "construct": cmd_construct,
    "verify": cmd_verify,
    "encode": cmd_encode,
    "decode": cmd_decode,
    "update": cmd_update,
    "coldist": cmd_coldist,
    "search": cmd_search,
    "oracle-qh": cmd_oracle_qh,
    "suite": cmd_suite,
    "describe": cmd_describe,
}


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def _add_profile_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--ell", type=int, help="Number of local groups")
    parser.add_argument("--ns", type=_int_list, help="Group sizes, e.g. 4,4")
    parser.add_argument("--ks", type=_int_list, help="Group dimensions, e.g. 2,2")
    parser.add_argument("--h", type=int, help="Number of global parities")
    parser.add_argument("--q", type=int, required=True, help="Base field order (prime power)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mcc", description=__doc__)
    parser.add_argument(
        "--log-level",
        default="WARNING",
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        help="Logging level (reports go to stdout regardless)",
    )
    parser.add_argument("--threads", type=int, default=None, help="Worker threads per sweep")
    parser.add_argument(
        "--failure-cap", type=int, default=None, help="Stop a sweep after this many failures"
    )
    parser.add_argument("--profile", default=None, help="Configuration override profile")
    parser.add_argument(
        "--override-degree",
        action="store_true",
        help="Allow MR-LRC builds below the guaranteed extension degree",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    construct = sub.add_parser("construct", help="Build a code and write its descriptor")
    construct.add_argument("--kind", required=True, choices=CONSTRUCT_KINDS)
    _add_profile_flags(construct)
    construct.add_argument("--n", type=int, help="Block length (convolutional kinds)")
    construct.add_argument("--k", type=int, help="Dimension (conv-diag)")
    construct.add_argument("--d", type=int, default=None, help="Extension degree (mr-lrc)")
    construct.add_argument("--out", required=True, help="Descriptor output path")

    verify = sub.add_parser("verify", help="Sweep the non-trivial minors of a descriptor")
    verify.add_argument("--in", dest="input", required=True)
    verify.add_argument("--strict", action="store_true", help="Check construction layout too")
    verify.add_argument("--window", type=int, default=None, help="Sliding window j")
    verify.add_argument("--dual", action="store_true", help="Also run the parity-check sweep")

    enc = sub.add_parser("encode", help="Encode a message")
    enc.add_argument("--in", dest="input", required=True)
    enc.add_argument(
        "--message", required=True, help="Comma-separated symbols; ';' separates stream blocks"
    )

    dec = sub.add_parser("decode", help="Recover the message from a word with erasures")
    dec.add_argument("--in", dest="input", required=True)
    dec.add_argument("--received", required=True, help="Comma-separated symbols, '?' = erased")

    upd = sub.add_parser("update", help="Change one message symbol of a codeword")
    upd.add_argument("--in", dest="input", required=True)
    upd.add_argument("--codeword", required=True)
    upd.add_argument("--group", type=int, required=True)
    upd.add_argument("--index", type=int, required=True)
    upd.add_argument("--value", type=int, required=True)

    coldist = sub.add_parser("coldist", help="Brute-force column distance")
    coldist.add_argument("--in", dest="input", required=True)
    coldist.add_argument("--j", type=int, required=True)
    coldist.add_argument("--max-evaluations", type=int, default=None)

    search = sub.add_parser("search", help="Smallest working MR-LRC extension degree")
    search.add_argument("--kind", default="mr-lrc", choices=["mr-lrc"])
    _add_profile_flags(search)
    search.add_argument("--d-lo", type=int, default=None)
    search.add_argument("--d-hi", type=int, default=None)

    oracle = sub.add_parser("oracle-qh", help="Quadratic-form maximum and its closed form")
    oracle.add_argument("--ell", type=int, required=True)
    oracle.add_argument("--h", type=int, required=True)

    suite = sub.add_parser("suite", help="Run the acceptance suite")
    suite.add_argument("--mode", default="quick", choices=["quick", "full"])
    suite.add_argument("--config", default=None, help="Suite YAML configuration")

    describe = sub.add_parser("describe", help="Summarise a descriptor")
    describe.add_argument("--in", dest="input", required=True)
    return parser


def parse_args(argv: Sequence[str] | None = None) -> argparse.Namespace:
    return build_parser().parse_args(argv)


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    logging.basicConfig(level=getattr(logging, args.log_level), format="%(levelname)s %(message)s")
    with _TRACER.start_as_current_span(f"cli.{args.command}") as span:
        try:
            status = COMMANDS[args.command](args)
        except Unrecoverable as exc:
            print(f"unrecoverable: {exc}", file=sys.stderr)
            status = EXIT_FAILED
        except CodingError as exc:
            print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
            status = EXIT_USAGE
        span.set_attribute("exit_status", status)
    return status


__all__ = ["COMMANDS", "build_parser", "main", "parse_args", "parse_symbols"]


if __name__ == "__main__":  # pragma: no cover - CLI entry
    raise SystemExit(main())
