"""Prefect flow probing the smallest working extension degree of MR-LRC profiles."""

from __future__ import annotations

import argparse
import json
import logging
from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Any

import pandas as pd
from prefect import flow, get_run_logger, task
from prefect.exceptions import MissingContextError

from coding.completion import minimal_degree_search
from coding.gf import FieldConfig, field_of_order
from coding.mrlrc import (
    LocalityProfile,
    build_profile,
    degree_search_builder,
    field_degree_bound,
)
from framework.provenance import record_provenance
from utils.config import REPO_ROOT, get_config_section
from utils.guards import SkipStep, skip_on_refusal

module_logger = logging.getLogger(__name__)

REPORT_COLUMNS = [
    "profile",
    "q",
    "bound",
    "d",
    "passed",
    "checked_sets",
    "total_sets",
    "smallest",
    "status",
    "reason",
]

DEFAULT_PROFILES: tuple[dict[str, Any], ...] = (
    {"ell": 2, "h": 2, "ns": [4, 4], "ks": [2, 2], "q": 7},
    {"ell": 2, "h": 1, "ns": [4, 4], "ks": [2, 2], "q": 7},
    {"ell": 3, "h": 2, "ns": [4, 4, 4], "ks": [2, 2, 2], "q": 7},
)


def _logger() -> logging.Logger | logging.LoggerAdapter[logging.Logger]:
    try:
        return get_run_logger()
    except MissingContextError:
        return module_logger


@dataclass(frozen=True)
class ScanProfile:
    ell: int
    h: int
    ns: tuple[int, ...]
    ks: tuple[int, ...]
    q: int

    @property
    def label(self) -> str:
        ns = ",".join(map(str, self.ns))
        ks = ",".join(map(str, self.ks))
        return f"ell={self.ell} h={self.h} ns=({ns}) ks=({ks}) q={self.q}"

    @classmethod
    def from_mapping(cls, payload: Mapping[str, Any]) -> ScanProfile:
        return cls(
            ell=int(payload["ell"]),
            h=int(payload["h"]),
            ns=tuple(int(v) for v in payload["ns"]),
            ks=tuple(int(v) for v in payload["ks"]),
            q=int(payload["q"]),
        )


@skip_on_refusal
def prepare_profile(scan: ScanProfile) -> tuple[LocalityProfile, FieldConfig, int]:
    profile = build_profile(scan.ell, scan.h, scan.ns, scan.ks)
    q_field = field_of_order(scan.q)
    return profile, q_field, field_degree_bound(profile)


@task
def scan_profile(
    scan: ScanProfile,
    d_lo: int = 1,
    d_hi: int | None = None,
    failure_cap: int | None = 1,
    threads: int | None = None,
) -> list[dict[str, Any]]:
    logger = _logger()
    try:
        profile, q_field, bound = prepare_profile(scan)
        upper = bound if d_hi is None else d_hi
        result = minimal_degree_search(
            skip_on_refusal(degree_search_builder(profile, q_field)),
            d_lo,
            upper,
            failure_cap=failure_cap,
            threads=threads,
        )
    except SkipStep as exc:
        logger.warning("Skipping %s: %s", scan.label, exc)
        return [
            {"profile": scan.label, "q": scan.q, "status": "skipped", "reason": str(exc)}
        ]
    logger.info("%s: bound D=%d, smallest passing d=%s", scan.label, bound, result.smallest)
    return [
        {
            "profile": scan.label,
            "q": scan.q,
            "bound": bound,
            "d": d,
            "passed": report.passed,
            "checked_sets": report.checked_sets,
            "total_sets": report.total_sets,
            "smallest": result.smallest,
            "status": "ok",
            "reason": "",
        }
        for d, report in result.reports.items()
    ]


def build_table(rows: Sequence[Mapping[str, Any]]) -> pd.DataFrame:
    return pd.DataFrame(list(rows), columns=REPORT_COLUMNS)


def write_markdown_report(table: pd.DataFrame, output_path: Path) -> None:
    lines = ["# Field Degree Scan", ""]
    if table.empty:
        lines.append("No profiles were scanned.")
    else:
        lines.extend(
            [
                "| Profile | D | d | Passed | Checked | Total | Smallest | Status |",
                "| --- | --- | --- | --- | --- | --- | --- | --- |",
            ]
        )
        for row in table.itertuples(index=False):
            cells = [
                row.profile,
                "" if pd.isna(row.bound) else int(row.bound),
                "" if pd.isna(row.d) else int(row.d),
                "" if pd.isna(row.passed) else ("yes" if row.passed else "no"),
                "" if pd.isna(row.checked_sets) else int(row.checked_sets),
                "" if pd.isna(row.total_sets) else int(row.total_sets),
                "-" if pd.isna(row.smallest) else int(row.smallest),
                row.status if not row.reason else f"{row.status} ({row.reason})",
            ]
            lines.append("| " + " | ".join(str(cell) for cell in cells) + " |")
    output_path.write_text("\n".join(lines) + "\n", encoding="utf-8")


@dataclass(frozen=True)
class DegreeScanArtifacts:
    csv_path: Path
    markdown_path: Path
    rows: int


@task
def dump_reports(table: pd.DataFrame, output_dir: Path) -> DegreeScanArtifacts:
    output_dir.mkdir(parents=True, exist_ok=True)
    stamp = datetime.now(timezone.utc).strftime("%Y%m%dT%H%M%SZ")
    csv_path = output_dir / f"degree_scan_{stamp}.csv"
    markdown_path = output_dir / f"degree_scan_{stamp}.md"
    table.to_csv(csv_path, index=False)
    write_markdown_report(table, markdown_path)
    return DegreeScanArtifacts(csv_path=csv_path, markdown_path=markdown_path, rows=len(table))


@flow(name="field-degree-scan")
def field_degree_scan(
    profiles: Sequence[Mapping[str, Any]] | None = None,
    d_lo: int | None = None,
    d_hi: int | None = None,
    report_dir: str | None = None,
    failure_cap: int | None = None,
    threads: int | None = None,
    config_profile: str | None = None,
) -> DegreeScanArtifacts:
    """Run the minimal-degree search for each profile and dump CSV and Markdown reports.

    Sub-bound degrees are tried; profiles whose builder refuses the
    parameters are recorded as skipped.
    """

    logger = _logger()
    search = get_config_section("search", config_profile)
    verification = get_config_section("verification", config_profile)
    lo = int(d_lo if d_lo is not None else search.get("d_lo", 1))
    hi = d_hi if d_hi is not None else search.get("d_hi")
    cap = failure_cap if failure_cap is not None else verification.get("failure_cap", 1)
    workers = threads if threads is not None else verification.get("threads")
    output_dir = Path(report_dir or search.get("report_dir", REPO_ROOT / "reports" / "degree_scan"))

    rows: list[dict[str, Any]] = []
    for payload in profiles or DEFAULT_PROFILES:
        scan = ScanProfile.from_mapping(payload)
        rows.extend(scan_profile(scan, lo, None if hi is None else int(hi), cap, workers))
    table = build_table(rows)
    artifacts = dump_reports(table, output_dir)
    record_provenance(
        "field-degree-scan",
        rows,
        {"csv": str(artifacts.csv_path), "markdown": str(artifacts.markdown_path)},
    )
    logger.info("Degree scan report written to %s", artifacts.csv_path)
    return artifacts


def _parse_profile(raw: str) -> dict[str, Any]:
    """``ell:h:ns:ks:q`` with comma-separated ``ns``/``ks``, e.g. ``2:2:4,4:2,2:7``."""

    parts = raw.split(":")
    if len(parts) != 5:
        raise argparse.ArgumentTypeError(f"profile '{raw}' must look like ell:h:ns:ks:q")
    ell, h, ns, ks, q = parts
    try:
        return {
            "ell": int(ell),
            "h": int(h),
            "ns": [int(v) for v in ns.split(",")],
            "ks": [int(v) for v in ks.split(",")],
            "q": int(q),
        }
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def parse_args(argv: Sequence[str] | None = None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--profile",
        dest="profiles",
        action="append",
        type=_parse_profile,
        help="Profile as ell:h:ns:ks:q (repeatable); defaults to a built-in grid",
    )
    parser.add_argument("--d-lo", type=int, default=None, help="Smallest degree to try")
    parser.add_argument("--d-hi", type=int, default=None, help="Largest degree (default: bound)")
    parser.add_argument("--report-dir", type=str, default=None, help="Output directory")
    parser.add_argument("--config-profile", type=str, default=None, help="Config override block")
    return parser.parse_args(argv)


def main(argv: Sequence[str] | None = None) -> int:
    args = parse_args(argv)
    logging.basicConfig(level=logging.INFO, format="%(asctime)s %(levelname)s %(message)s")
    artifacts = field_degree_scan(
        profiles=args.profiles,
        d_lo=args.d_lo,
        d_hi=args.d_hi,
        report_dir=args.report_dir,
        config_profile=args.config_profile,
    )
    print(
        json.dumps(
            {
                "csv": str(artifacts.csv_path),
                "markdown": str(artifacts.markdown_path),
                "rows": artifacts.rows,
            },
            indent=2,
        )
    )
    return 0


__all__ = [
    "DEFAULT_PROFILES",
    "DegreeScanArtifacts",
    "ScanProfile",
    "build_table",
    "field_degree_scan",
    "main",
    "parse_args",
    "scan_profile",
    "write_markdown_report",
]


if __name__ == "__main__":  # pragma: no cover - CLI entry
    raise SystemExit(main())
