"""Structured experiment reports with deterministic emission.

JSON reports follow the ``ergokit-report/1`` schema: a single document
with the config echo, verdicts (each carrying its evidence trace), gap
certificates, bound checks and provenance.  Serialisation is canonical
(sorted keys, fixed indentation, round-trip float repr), so a rerun
with the same config and seed produces byte-identical output once the
wall-clock field is excluded.

CSV mode writes one ``n,value`` file per trace plus a verdict summary.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

SCHEMA = "ergokit-report/1"

__all__ = ["SCHEMA", "ExperimentReport", "report_doc", "emit_json", "emit_csv", "emit_report"]


@dataclass(eq=False)
class ExperimentReport:
    preset: str
    config: dict
    verdicts: dict
    checks: dict
    gap_certificates: list = field(default_factory=list)
    bound_checks: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    ok: bool = True
    version: str = "0.0.0"
    wall_clock_s: float | None = None


def report_doc(report: ExperimentReport, include_timing: bool = True) -> dict:
    doc = {
        "schema": SCHEMA,
        "version": report.version,
        "preset": report.preset,
        "config": report.config,
        "verdicts": report.verdicts,
        "expected_checks": report.checks,
        "gap_certificates": report.gap_certificates,
        "bound_checks": report.bound_checks,
        "notes": report.notes,
        "ok": report.ok,
    }
    if include_timing and report.wall_clock_s is not None:
        doc["wall_clock_s"] = float(report.wall_clock_s)
    return doc


def _dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def emit_json(report: ExperimentReport, path: str | None,
              include_timing: bool = True) -> str:
    """Write (or return, for path None/"-") the canonical JSON document."""
    text = _dumps(report_doc(report, include_timing))
    if path is None or path == "-":
        return text
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    Path(path).write_text(text, encoding="utf-8")
    return text


def _iter_traces(report: ExperimentReport):
    for key, verdict in report.verdicts.items():
        if not isinstance(verdict, dict):
            continue
        if "trace" in verdict:
            yield key, verdict["trace"]
        if "gap_trace" in verdict:
            yield f"{key}_gaps", verdict["gap_trace"]
        for sample in verdict.get("samples", []):
            trace = sample.get("verdict", {}).get("trace")
            if trace is not None:
                yield f"{key}_{sample['label']}", trace


def emit_csv(report: ExperimentReport, out_dir: str,
             include_timing: bool = True) -> list[str]:
    """One file per trace (header ``n,value``) plus ``verdicts.csv``."""
    root = Path(out_dir)
    root.mkdir(parents=True, exist_ok=True)
    written = []
    for name, trace in _iter_traces(report):
        path = root / f"{name}.csv"
        lines = ["n,value"]
        lines += [f"{int(n)},{float(v)!r}" for n, v in trace]
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        written.append(str(path))
    summary = root / "verdicts.csv"
    lines = ["verdict,kind,detail"]
    for key, verdict in report.verdicts.items():
        if isinstance(verdict, dict):
            kind = verdict.get("kind", verdict.get("stable", ""))
            detail = verdict.get("bound", verdict.get("exponent",
                     verdict.get("limit_norm", "")))
            lines.append(f"{key},{kind},{detail}")
    for name, check in report.checks.items():
        lines.append(f"check:{name},{'pass' if check else 'fail'},")
    lines.append(f"ok,{'pass' if report.ok else 'fail'},")
    summary.write_text("\n".join(lines) + "\n", encoding="utf-8")
    written.append(str(summary))
    return written


def emit_report(report: ExperimentReport, fmt: str, path: str | None,
                include_timing: bool = True):
    if fmt == "json":
        return emit_json(report, path, include_timing)
    if fmt == "csv":
        if not path:
            raise ValueError("csv output needs an output directory")
        return emit_csv(report, path, include_timing)
    raise ValueError(f"unknown report format {fmt!r}")
