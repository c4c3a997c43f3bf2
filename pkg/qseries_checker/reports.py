"""
reports.py - Verification reports, run summaries and the catalog listing
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from .identity import IdentityCase
from .powerseries import TruncatedSeries
from .scalar import format_scalar

SCHEMA_VERSION = 1


def serialize_value(value):
    """Exact 'num/den' strings, or a coefficient list for truncated series"""
    if value is None:
        return None
    if isinstance(value, TruncatedSeries):
        return [format_scalar(c) for c in value.as_list()]
    return format_scalar(value)


@dataclass
class ReadingResult:
    """Outcome of re-evaluating one reading group under each of its options"""
    group: str
    side: str
    printed: Optional[str]
    resolved: str
    holds: Dict[str, bool]
    description: str = ""

    @property
    def is_erratum(self) -> bool:
        # A malformed print (no printed option) is always reported
        if self.printed is None:
            return True
        return not self.holds.get(self.printed, False)

    def to_dict(self):
        return {
            "group": self.group,
            "side": self.side,
            "printed": self.printed,
            "resolved": self.resolved,
            "holds": dict(self.holds),
            "holding_options": [option for option, ok in self.holds.items() if ok],
            "description": self.description,
        }


@dataclass
class VerificationReport:
    """Machine-readable outcome of verifying one sampled case"""
    case: IdentityCase
    lhs: object
    rhs: object
    equal: bool
    diagnostics: List[str] = field(default_factory=list)
    readings: List[ReadingResult] = field(default_factory=list)
    checks: Dict[str, bool] = field(default_factory=dict)
    printed: Optional[Dict[str, object]] = None
    restoring_readings: List[Dict[str, str]] = field(default_factory=list)
    timing_ms: float = 0.0

    @property
    def errata(self) -> List[ReadingResult]:
        return [r for r in self.readings if r.is_erratum]

    @property
    def printed_matches(self) -> bool:
        """Printed bilinear sides agree with the oracle under the resolved readings"""
        if self.printed is None:
            return True
        return bool(self.printed["lhs_matches"] and self.printed["rhs_matches"])

    @property
    def passed(self) -> bool:
        return self.equal and self.printed_matches and all(self.checks.values())

    def to_dict(self, include_timing: bool = False):
        """Convert report to dictionary for serialization"""
        data = {
            "case": self.case.to_dict(),
            "lhs": serialize_value(self.lhs),
            "rhs": serialize_value(self.rhs),
            "equal": self.equal,
            "passed": self.passed,
            "diagnostics": list(self.diagnostics),
            "readings": [r.to_dict() for r in self.readings],
            "errata": [r.group for r in self.errata],
            "checks": dict(self.checks),
        }
        if self.printed is not None:
            data["printed"] = {
                "lhs": serialize_value(self.printed["lhs"]),
                "rhs": serialize_value(self.printed["rhs"]),
                "lhs_matches": self.printed["lhs_matches"],
                "rhs_matches": self.printed["rhs_matches"],
            }
        if self.restoring_readings:
            data["restoring_readings"] = [dict(r) for r in self.restoring_readings]
        if include_timing:
            data["timing_ms"] = round(self.timing_ms, 3)
        return data


@dataclass
class SamplingFailure:
    """A trial whose case could not be drawn within the retry budget"""
    identity: str
    N: int
    seed: int
    message: str

    def to_dict(self):
        return {"identity": self.identity, "N": self.N, "seed": self.seed, "error": self.message}


class ReportGenerator:
    """Builds summaries, the JSON document and text listings"""

    def generate_summary(self, reports: List[VerificationReport],
                         failures: Optional[List[SamplingFailure]] = None) -> Dict:
        """Pass/fail counts plus the errata seen per identity"""
        failures = failures or []
        errata: Dict[str, List[str]] = {}
        for report in reports:
            for reading in report.errata:
                groups = errata.setdefault(report.case.identity, [])
                if reading.group not in groups:
                    groups.append(reading.group)

        return {
            "passed": sum(1 for r in reports if r.passed),
            "failed": sum(1 for r in reports if not r.passed),
            "errata": {identity: sorted(groups) for identity, groups in sorted(errata.items())},
            "sampling_failures": len(failures),
        }

    def generate_document(self, config: Dict, reports: List[VerificationReport],
                          failures: Optional[List[SamplingFailure]] = None,
                          include_timing: bool = False) -> Dict:
        """The JSON report document"""
        failures = failures or []
        document = {
            "schema_version": SCHEMA_VERSION,
            "config": config,
            "trials": [r.to_dict(include_timing) for r in reports],
            "summary": self.generate_summary(reports, failures),
        }
        if failures:
            document["sampling_failures"] = [f.to_dict() for f in failures]
        return document

    def generate_identity_breakdown(self, reports: List[VerificationReport]) -> Dict[str, Dict[str, int]]:
        """Passed/failed counts per identity, in first-seen order"""
        breakdown: Dict[str, Dict[str, int]] = {}
        for report in reports:
            counts = breakdown.setdefault(report.case.identity, {"passed": 0, "failed": 0})
            counts["passed" if report.passed else "failed"] += 1
        return breakdown

    def generate_catalog_listing(self, catalog) -> str:
        """One row per identity: id, equation tag, dims, mode, constraint, formula"""
        rows = []
        for definition in catalog.values():
            dims = ",".join(str(d) for d in definition.default_dims) or "-"
            rows.append((definition.id, definition.tag, dims, definition.mode,
                         definition.constraint_text(), definition.name))
        return "\n".join(format_table(("ID", "TAG", "DIMS", "MODE", "CONSTRAINT", "FORMULA"), rows))

    def generate_summary_text(self, reports: List[VerificationReport], summary: Dict,
                              context: str = "") -> str:
        """Banner, per-identity pass counts with errata, and the closing status line"""
        rows = [(identity, counts["passed"], counts["failed"],
                 ", ".join(summary["errata"].get(identity, [])) or "-")
                for identity, counts in self.generate_identity_breakdown(reports).items()]
        table = format_table(("IDENTITY", "PASSED", "FAILED", "ERRATA"), rows)
        width = max(len(line) for line in table + [context])
        lines = ["", "=" * width, "VERIFICATION SUMMARY".center(width).rstrip()]
        if context:
            lines.append(context.center(width).rstrip())
        lines += ["=" * width] + table

        if summary["sampling_failures"]:
            lines.append(f"⚠️  {summary['sampling_failures']} trial(s) could not be sampled")
        if summary["failed"] == 0 and summary["sampling_failures"] == 0:
            lines.append(f"✓ All {summary['passed']} trial(s) verified")
        else:
            lines.append(f"✗ {summary['failed']} trial(s) failed")
        return "\n".join(lines)


def format_table(headers: Sequence[str], rows: Sequence[Sequence[object]]) -> List[str]:
    """Left-aligned columns, each as wide as its widest cell"""
    widths = [max(len(str(cell)) for cell in column) for column in zip(headers, *rows)]

    def line(cells):
        return "  ".join(str(cell).ljust(w) for cell, w in zip(cells, widths)).rstrip()

    return [line(headers), "  ".join("-" * w for w in widths)] + [line(row) for row in rows]
