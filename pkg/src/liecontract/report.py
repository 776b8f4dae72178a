"""Deterministic analysis reports: one record per verified claim.

Reports serialise to a stable JSON document (sorted keys, no timestamps),
a readable text table, and a long-format CSV for plotting exponent fits.
Identical input, seed and version produce identical bytes.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction

SCHEMA_VERSION = 1

VERDICTS = ("pass", "fail", "skipped")


def jsonable(value):
    """Make exact and numpy-ish values JSON-stable."""
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, float):
        return value
    if hasattr(value, "item"):  # numpy scalar
        return value.item()
    return value


@dataclass
class Claim:
    id: str
    claim: str
    computed: object = None
    expected: object = None
    tolerance: object = None
    verdict: str = "pass"
    note: str = ""

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"verdict must be one of {VERDICTS}")
        if not self.claim:
            raise ValueError("every claim record carries a statement string")

    def to_dict(self):
        return {
            "id": self.id,
            "claim": self.claim,
            "computed": jsonable(self.computed),
            "expected": jsonable(self.expected),
            "tolerance": jsonable(self.tolerance),
            "verdict": self.verdict,
            "note": self.note,
        }


def check(claim_id, statement, computed, expected, tolerance, note=""):
    """Build a pass/fail claim for a numeric comparison."""
    if tolerance is None:
        ok = computed == expected
    elif isinstance(expected, (tuple, list)):
        ok = all(abs(c - e) <= tolerance for c, e in zip(computed, expected)) and len(
            computed
        ) == len(expected)
    else:
        ok = abs(computed - expected) <= tolerance
    return Claim(
        id=claim_id,
        claim=statement,
        computed=computed,
        expected=expected,
        tolerance=tolerance,
        verdict="pass" if ok else "fail",
        note=note,
    )


def check_bool(claim_id, statement, ok, computed=None, note=""):
    return Claim(
        id=claim_id,
        claim=statement,
        computed=computed if computed is not None else bool(ok),
        expected=True,
        tolerance=None,
        verdict="pass" if ok else "fail",
        note=note,
    )


@dataclass
class AnalysisReport:
    tool_version: str
    command: str
    input_digest: str
    seed: int
    claims: list = field(default_factory=list)
    audit: dict = field(default_factory=dict)

    @staticmethod
    def digest(text):
        return hashlib.sha256(text.encode("utf-8")).hexdigest()

    def extend(self, claims):
        self.claims.extend(claims)

    @property
    def counts(self):
        out = {v: 0 for v in VERDICTS}
        for c in self.claims:
            out[c.verdict] += 1
        return out

    def all_pass(self):
        return all(c.verdict != "fail" for c in self.claims)

    def to_dict(self):
        return {
            "schema_version": SCHEMA_VERSION,
            "tool_version": self.tool_version,
            "command": self.command,
            "input_digest": self.input_digest,
            "seed": self.seed,
            "counts": self.counts,
            "claims": [c.to_dict() for c in self.claims],
            "audit": jsonable(self.audit),
        }

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_json(cls, text):
        data = json.loads(text)
        report = cls(
            tool_version=data["tool_version"],
            command=data["command"],
            input_digest=data["input_digest"],
            seed=data["seed"],
            audit=data.get("audit", {}),
        )
        for c in data["claims"]:
            report.claims.append(
                Claim(
                    id=c["id"],
                    claim=c["claim"],
                    computed=c["computed"],
                    expected=c["expected"],
                    tolerance=c["tolerance"],
                    verdict=c["verdict"],
                    note=c.get("note", ""),
                )
            )
        return report

    def to_text(self):
        lines = [
            f"analysis report :: command={self.command} seed={self.seed}",
            f"tool {self.tool_version} :: input sha256 {self.input_digest[:16]}...",
            "-" * 78,
        ]
        for c in self.claims:
            lines.append(f"[{c.verdict.upper():7s}] {c.id}")
            lines.append(f"          {c.claim}")
            if c.computed is not None:
                comp = json.dumps(jsonable(c.computed), sort_keys=True)
                lines.append(f"          computed: {comp}")
            if c.expected is not None and c.tolerance is not None:
                lines.append(
                    f"          expected: {json.dumps(jsonable(c.expected))}"
                    f"  tolerance: {json.dumps(jsonable(c.tolerance))}"
                )
            if c.note:
                lines.append(f"          note: {c.note}")
        counts = self.counts
        lines.append("-" * 78)
        lines.append(
            f"{counts['pass']} passed, {counts['fail']} failed, "
            f"{counts['skipped']} skipped"
        )
        return "\n".join(lines) + "\n"

    def to_csv(self):
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(
            ["id", "claim", "computed", "expected", "tolerance", "verdict", "note"]
        )
        for c in self.claims:
            writer.writerow(
                [
                    c.id,
                    c.claim,
                    json.dumps(jsonable(c.computed), sort_keys=True),
                    json.dumps(jsonable(c.expected), sort_keys=True),
                    json.dumps(jsonable(c.tolerance)),
                    c.verdict,
                    c.note,
                ]
            )
        return buf.getvalue()
