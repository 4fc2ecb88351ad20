"""Acceptance suite: the reference instances run as named, configurable steps."""

from __future__ import annotations

import argparse
import json
import logging
from collections.abc import Callable, Iterator, Mapping, Sequence
from dataclasses import dataclass, field
from itertools import combinations, product
from pathlib import Path
from typing import Any

import numpy as np

from coding.convmdp import (
    ConvCode,
    build_diag,
    build_low_rate,
    build_vdm2,
    build_vdm3,
    column_distance_bound,
    column_distance_bruteforce,
    diag_extension_degree,
    dual_mdp_check,
    find_z,
    is_mdp,
    is_mdp_paritycheck,
    is_noncatastrophic,
    noncatastrophic_gcd,
    noncatastrophic_structural,
)
from coding.errors import CodingError, NoValidZ, Unrecoverable
from coding.exactla import from_ints, is_superregular
from coding.gf import field_of_order, make_field, minimal_polynomial
from coding.mrlrc import (
    MrLrcCode,
    build_mr_lrc,
    build_profile,
    decode_erasures,
    encode,
    qh_closed_form,
    qh_max,
    update_symbol,
    verify_mr,
)
from utils.config import (
    ResolvedStepConfig,
    StepDefaults,
    StepExecutionConfig,
    SuiteConfig,
)
from utils.config import load_suite_config as _load_suite_config
from utils.guards import SkipStep

logger = logging.getLogger(__name__)

StepResult = dict[str, Any]
Runner = Callable[["SuiteRuntime", Mapping[str, Any]], StepResult]

PASSING_STATUSES = frozenset({"passed", "skipped"})


@dataclass(frozen=True)
class SuiteRuntime:
    """Runtime arguments supplied via the CLI."""

    mode: str
    failure_cap: int | None = 16
    threads: int | None = None
    seed: int = 42
    fail_fast: bool = False


@dataclass(frozen=True)
class SuiteStep:
    """Named acceptance check."""

    name: str
    description: str
    runner: Runner

    def execute(self, runtime: SuiteRuntime, options: Mapping[str, Any]) -> StepResult:
        try:
            result = self.runner(runtime, dict(options))
        except SkipStep as exc:
            logger.info("Step %s skipped: %s", self.name, exc)
            return {"status": "skipped", "reason": str(exc)}
        if "status" not in result:
            result = {**result, "status": "passed"}
        return result


class SuiteExecutionError(RuntimeError):
    """Raised when a step errors and the runtime asks to fail fast."""


def _status(ok: bool) -> str:
    return "passed" if ok else "failed"


def smallest_prime_power(at_least: int) -> int:
    q = max(at_least, 2)
    while True:
        try:
            field_of_order(q)
        except CodingError:
            q += 1
            continue
        return q


def _reference_code(options: Mapping[str, Any]) -> MrLrcCode:
    profile = build_profile(
        int(options.get("ell", 2)),
        int(options.get("h", 2)),
        options.get("ns", [4, 4]),
        options.get("ks", [2, 2]),
    )
    return build_mr_lrc(profile, field_of_order(int(options.get("q", 7))))


# ---------------------------------------------------------------------------
# MR-LRC steps
# ---------------------------------------------------------------------------


def run_mrlrc_reference(runtime: SuiteRuntime, options: Mapping[str, Any]) -> StepResult:
    """Build the reference profile at the bound degree and sweep its admissible minors."""

    code = _reference_code(options)
    report = verify_mr(code, runtime.failure_cap, threads=runtime.threads)
    expected = options.get("expected_sets")
    ok = report.passed and (expected is None or report.total_sets == int(expected))
    return {
        "status": _status(ok),
        "field": code.ext_field.name,
        "summary": report.summary(),
        "report": report.as_dict(),
    }


def run_mrlrc_grid(runtime: SuiteRuntime, options: Mapping[str, Any]) -> StepResult:
    """Build every ``(ell, h)`` of the grid at the bound degree and verify it."""

    n_local = int(options.get("n", 4))
    k_local = int(options.get("k", 2))
    rows = []
    for ell, h in product(options.get("ells", [2, 3]), options.get("hs", [1, 2])):
        q = smallest_prime_power(n_local + k_local)
        profile = build_profile(ell, h, [n_local] * ell, [k_local] * ell)
        code = build_mr_lrc(profile, field_of_order(q))
        report = verify_mr(code, runtime.failure_cap, threads=runtime.threads)
        rows.append(
            {
                "ell": ell,
                "h": h,
                "q": q,
                "degree": code.degree,
                "summary": report.summary(),
                "passed": report.passed,
            }
        )
    return {"status": _status(all(row["passed"] for row in rows)), "instances": rows}


def run_qh_oracle(runtime: SuiteRuntime, options: Mapping[str, Any]) -> StepResult:
    """Compare the brute-force maximum of the quadratic form with its closed form."""

    mismatches = [
        (ell, h)
        for ell in range(1, int(options.get("max_ell", 6)) + 1)
        for h in range(int(options.get("max_h", 8)) + 1)
        if qh_max(ell, h) != qh_closed_form(ell, h)
    ]
    single_group = all(qh_max(1, h) == 0 for h in range(int(options.get("max_h", 8)) + 1))
    return {"status": _status(not mismatches and single_group), "mismatches": mismatches}


def _erasure_patterns(code: MrLrcCode, extra: int) -> Iterator[tuple[int, ...]]:
    profile = code.profile
    per_group = [
        list(combinations(span, n - k))
        for span, n, k in zip(profile.groups, profile.ns, profile.ks)
    ]
    for punctured in product(*per_group):
        erased = tuple(c for group in punctured for c in group)
        survivors = [c for c in range(profile.N) if c not in erased]
        for count in range(extra + 1):
            for more in combinations(survivors, count):
                yield tuple(sorted(erased + more))


def run_mrlrc_decoding(runtime: SuiteRuntime, options: Mapping[str, Any]) -> StepResult:
    """Decode every admissible puncturing plus up to ``extra`` further erasures."""

    code = _reference_code(options)
    profile, f = code.profile, code.ext_field
    rng = np.random.default_rng(runtime.seed)
    patterns = list(_erasure_patterns(code, int(options.get("extra", 2))))
    sample = options.get("sample")
    if sample is not None and int(sample) < len(patterns):
        picks = rng.choice(len(patterns), size=int(sample), replace=False)
        patterns = [patterns[i] for i in sorted(picks)]
    failures = []
    for pattern in patterns:
        message = [int(v) for v in rng.integers(0, f.order, size=profile.K)]
        received: list[Any] = list(encode(code, message))
        for column in pattern:
            received[column] = None
        try:
            decoded = decode_erasures(code, received)
        except CodingError as exc:
            failures.append({"pattern": list(pattern), "error": str(exc)})
            continue
        if [x.value for x in decoded.message] != message:
            failures.append({"pattern": list(pattern), "error": "wrong message"})

    refused = 0
    for group in profile.groups:
        received = list(encode(code, [0] * profile.K))
        for column in [*group, *profile.global_columns]:
            received[column] = None
        try:
            decode_erasures(code, received)
        except Unrecoverable:
            refused += 1
    ok = not failures and refused == profile.ell
    return {
        "status": _status(ok),
        "patterns": len(patterns),
        "failures": failures[:10],
        "unrecoverable_refused": refused,
    }


def run_mrlrc_update(runtime: SuiteRuntime, options: Mapping[str, Any]) -> StepResult:
    """Every single-symbol update stays inside its group plus at most one global."""

    code = _reference_code(options)
    profile, f = code.profile, code.ext_field
    rng = np.random.default_rng(runtime.seed)
    message = [int(v) for v in rng.integers(0, f.order, size=profile.K)]
    codeword = encode(code, message)
    problems = []
    for group, (span, offset) in enumerate(zip(profile.groups, profile.row_offsets)):
        for index in range(profile.ks[group]):
            row = offset + index
            new_value = f.add(message[row], int(rng.integers(1, f.order)))
            result = update_symbol(code, codeword, group, index, new_value)
            expected_message = list(message)
            expected_message[row] = new_value
            changed = [
                c for c, (a, b) in enumerate(zip(codeword, result.codeword)) if a != b
            ]
            globals_changed = [c for c in changed if c in profile.global_columns]
            allowed_globals = 1 if index < profile.h else 0
            if any(c not in span and c not in profile.global_columns for c in changed):
                problems.append({"group": group, "index": index, "error": "left its group"})
            if len(globals_changed) != allowed_globals:
                problems.append({"group": group, "index": index, "error": "global count"})
            if result.codeword != encode(code, expected_message):
                problems.append({"group": group, "index": index, "error": "re-encode differs"})
    return {"status": _status(not problems), "positions": profile.K, "problems": problems}


# ---------------------------------------------------------------------------
# Convolutional steps
# ---------------------------------------------------------------------------


def run_vdm2(runtime: SuiteRuntime, options: Mapping[str, Any]) -> StepResult:
    """Sweep the delta=2 family and cross-check d_1 by brute force."""

    rows = []
    for n in options.get("ns", [4, 5, 6]):
        q = smallest_prime_power(int(n))
        code = build_vdm2(int(n), field_of_order(q))
        report = is_mdp(code, failure_cap=runtime.failure_cap, threads=runtime.threads)
        rows.append({"n": n, "q": q, "summary": report.summary(), "passed": report.passed})
    distances = []
    for q in options.get("coldist_qs", [4, 5]):
        n = int(options.get("coldist_n", 4))
        code = build_vdm2(n, field_of_order(int(q)))
        d1 = column_distance_bruteforce(
            code, 1, options.get("max_evaluations"), threads=runtime.threads
        )
        minors_ok = is_mdp(code, failure_cap=1).passed
        bound = column_distance_bound(code.n, code.k, 1)
        distances.append(
            {"n": n, "q": q, "d1": d1, "bound": bound, "agrees": (d1 == bound) == minors_ok}
        )
    ok = all(row["passed"] for row in rows) and all(
        d["agrees"] and d["d1"] == d["bound"] for d in distances
    )
    return {"status": _status(ok), "instances": rows, "column_distances": distances}


def run_vdm3(runtime: SuiteRuntime, options: Mapping[str, Any]) -> StepResult:
    """Generator-layout and parity-check-layout sweeps of the delta=3 family."""

    n, q = int(options.get("n", 7)), int(options.get("q", 7))
    code = build_vdm3(n, field_of_order(q))
    primal = is_mdp(code, failure_cap=runtime.failure_cap, threads=runtime.threads)
    dual = dual_mdp_check(code, failure_cap=runtime.failure_cap, threads=runtime.threads)
    return {
        "status": _status(primal.passed and dual.passed),
        "field": code.field.name,
        "generator": primal.summary(),
        "paritycheck": dual.summary(),
    }


def run_diag(runtime: SuiteRuntime, options: Mapping[str, Any]) -> StepResult:
    """Superregular-block construction with a diagonal tail."""

    n, k, q = int(options.get("n", 5)), int(options.get("k", 3)), int(options.get("q", 11))
    base = field_of_order(q)
    code = build_diag(n, k, base)
    report = is_mdp(code, failure_cap=runtime.failure_cap, threads=runtime.threads)
    alpha = code.coeffs[1].at(0, 0)
    d = diag_extension_degree(n - k)
    alpha_degree = len(minimal_polynomial(alpha, base.m)) - 1
    superregular = is_superregular(code.coeffs[0])
    expected = options.get("expected_sets")
    ok = (
        report.passed
        and alpha_degree == d
        and superregular
        and (expected is None or report.total_sets == int(expected))
    )
    return {
        "status": _status(ok),
        "field": code.field.name,
        "summary": report.summary(),
        "alpha_degree": alpha_degree,
        "superregular": superregular,
    }


def _counterexample() -> ConvCode:
    f = make_field(2)
    one = from_ints(f, [[1, 1]])
    return ConvCode(n=2, k=1, field=f, coeffs=(one, one), delta=1, construction="repeated")


def run_noncatastrophic(runtime: SuiteRuntime, options: Mapping[str, Any]) -> StepResult:
    """Left-primeness of builder outputs, by gcd and by the structural shortcut."""

    codes = [
        build_vdm2(4, field_of_order(5)),
        build_diag(5, 3, field_of_order(11)),
    ]
    if options.get("include_vdm3", False):
        codes.append(build_vdm3(7, field_of_order(7)))
    rows = []
    for code in codes:
        by_gcd = noncatastrophic_gcd(code)
        structural = noncatastrophic_structural(code)
        rows.append(
            {
                "construction": code.construction,
                "gcd": by_gcd,
                "structural": structural,
                "agree": structural is None or structural == by_gcd,
            }
        )
    counter = is_noncatastrophic(_counterexample())
    ok = all(row["gcd"] and row["agree"] for row in rows) and not counter
    return {"status": _status(ok), "codes": rows, "counterexample_left_prime": counter}


def run_char2_exclusion(runtime: SuiteRuntime, options: Mapping[str, Any]) -> StepResult:
    """Record which characteristic-2 base fields admit a valid cubic element."""

    rows = []
    for q in options.get("orders", [2, 4, 8]):
        base = field_of_order(int(q))
        try:
            z = find_z(base)
        except NoValidZ:
            rows.append({"q": q, "valid_z": None})
            continue
        constant = minimal_polynomial(z, base.m)[0].value
        rows.append({"q": q, "valid_z": z.value, "constant": constant})
    expected_missing = {int(q) for q in options.get("expect_no_z", [2])}
    ok = all((row["valid_z"] is None) == (row["q"] in expected_missing) for row in rows)
    return {"status": _status(ok), "orders": rows}


def run_low_rate_dual(runtime: SuiteRuntime, options: Mapping[str, Any]) -> StepResult:
    """``(n, k, k)`` codes given by parity-check matrices, k in {2, 3}."""

    rows = []
    for entry in options.get("instances", [{"n": 5, "k": 2, "q": 5}]):
        n, k, q = int(entry["n"]), int(entry["k"]), int(entry["q"])
        pcode = build_low_rate(n, k, field_of_order(q))
        report = is_mdp_paritycheck(pcode, failure_cap=runtime.failure_cap, threads=runtime.threads)
        rows.append({"n": n, "k": k, "q": q, "summary": report.summary(), "passed": report.passed})
    return {"status": _status(all(row["passed"] for row in rows)), "instances": rows}


STEP_REGISTRY: dict[str, SuiteStep] = {
    "mrlrc_reference": SuiteStep(
        name="mrlrc_reference",
        description="Reference MR-LRC admissible-minor sweep",
        runner=run_mrlrc_reference,
    ),
    "mrlrc_grid": SuiteStep(
        name="mrlrc_grid",
        description="MR-LRC grid at the bound degree",
        runner=run_mrlrc_grid,
    ),
    "qh_oracle": SuiteStep(
        name="qh_oracle",
        description="Quadratic-form maximum versus closed form",
        runner=run_qh_oracle,
    ),
    "mrlrc_decoding": SuiteStep(
        name="mrlrc_decoding",
        description="Erasure decoding sweep",
        runner=run_mrlrc_decoding,
    ),
    "mrlrc_update": SuiteStep(
        name="mrlrc_update",
        description="Single-symbol update locality",
        runner=run_mrlrc_update,
    ),
    "vdm2": SuiteStep(
        name="vdm2",
        description="Delta=2 Vandermonde family",
        runner=run_vdm2,
    ),
    "vdm3": SuiteStep(
        name="vdm3",
        description="Delta=3 Vandermonde family and its dual",
        runner=run_vdm3,
    ),
    "diag": SuiteStep(
        name="diag",
        description="Superregular block with diagonal tail",
        runner=run_diag,
    ),
    "noncatastrophic": SuiteStep(
        name="noncatastrophic",
        description="Left-primeness of builder outputs",
        runner=run_noncatastrophic,
    ),
    "char2_exclusion": SuiteStep(
        name="char2_exclusion",
        description="Cubic element search over GF(2^a)",
        runner=run_char2_exclusion,
    ),
    "low_rate_dual": SuiteStep(
        name="low_rate_dual",
        description="Low-rate codes from parity-check matrices",
        runner=run_low_rate_dual,
    ),
}


@dataclass
class AcceptanceSuite:
    """Runs the steps of a mode in order and collects their results."""

    config: SuiteConfig
    registry: Mapping[str, SuiteStep] = field(default_factory=lambda: STEP_REGISTRY)

    def run(self, runtime: SuiteRuntime) -> dict[str, StepResult]:
        logger.info("Starting acceptance suite mode=%s", runtime.mode)
        results: dict[str, StepResult] = {}
        for step_config in self.config.steps_for_mode(runtime.mode):
            step = self.registry.get(step_config.name)
            if step is None:
                error = SuiteExecutionError(f"Step '{step_config.name}' is not registered")
                if runtime.fail_fast:
                    raise error
                results[step_config.name] = {"status": "error", "error": str(error)}
                continue
            if not step_config.enabled:
                logger.info("Step %s disabled via configuration", step_config.name)
                results[step_config.name] = {
                    "status": "skipped",
                    "reason": "disabled by configuration",
                }
                continue
            try:
                results[step_config.name] = step.execute(runtime, step_config.options)
            except Exception as exc:
                logger.exception("Step %s failed during execution", step_config.name)
                results[step_config.name] = {"status": "error", "error": str(exc)}
                if runtime.fail_fast:
                    raise SuiteExecutionError(str(exc)) from exc
            logger.info("Step %s: %s", step_config.name, results[step_config.name]["status"])
        return results


def suite_passed(results: Mapping[str, StepResult]) -> bool:
    return all(result.get("status") in PASSING_STATUSES for result in results.values())


def default_suite_config_path() -> Path:
    return Path(__file__).with_name("config.yaml")


def load_suite_config(path: str | Path | None = None) -> SuiteConfig:
    return _load_suite_config(path or default_suite_config_path())


def parse_args(argv: Sequence[str] | None = None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(description="Acceptance suite")
    parser.add_argument("--mode", default="quick", help="Suite mode to execute")
    parser.add_argument(
        "--config",
        type=str,
        default=str(default_suite_config_path()),
        help="Path to the suite YAML configuration",
    )
    parser.add_argument("--threads", type=int, default=None, help="Worker threads per sweep")
    parser.add_argument("--seed", type=int, default=42, help="Seed for sampled messages")
    parser.add_argument(
        "--fail-fast", action="store_true", help="Stop at the first step that errors"
    )
    return parser.parse_args(argv)


def main(argv: Sequence[str] | None = None) -> int:
    args = parse_args(argv)
    logging.basicConfig(level=logging.INFO, format="%(asctime)s %(levelname)s %(message)s")
    suite = AcceptanceSuite(config=load_suite_config(args.config))
    runtime = SuiteRuntime(
        mode=args.mode, threads=args.threads, seed=args.seed, fail_fast=bool(args.fail_fast)
    )
    results = suite.run(runtime)
    print(json.dumps(results, indent=2, sort_keys=True, default=str))
    return 0 if suite_passed(results) else 1


__all__ = [
    "STEP_REGISTRY",
    "AcceptanceSuite",
    "ResolvedStepConfig",
    "StepDefaults",
    "StepExecutionConfig",
    "SuiteConfig",
    "SuiteExecutionError",
    "SuiteRuntime",
    "SuiteStep",
    "load_suite_config",
    "main",
    "parse_args",
    "smallest_prime_power",
    "suite_passed",
]


if __name__ == "__main__":  # pragma: no cover - CLI entry
    raise SystemExit(main())
