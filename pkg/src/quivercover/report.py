"""Structured verdict objects emitted by every theorem verifier."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

CLAIM_IDS = (
    "Main1",
    "Main2",
    "DILemma",
    "Corres",
    "PnPushdown",
    "BonGab",
    "SelfinjCriteria",
    "ZGpEquivalence",
    "ModPushdown",
    "TiltingPushdown",
    "TiltingFinite",
)

NOT_APPLICABLE = "not-applicable"
INDETERMINATE = "indeterminate"


@dataclass
class VerificationReport:
    claim: str
    instance: dict
    outcome: object  # True | False | "not-applicable" | "indeterminate"
    witnesses: list = field(default_factory=list)
    caps: dict = field(default_factory=dict)
    timing: float | None = None
    notes: list = field(default_factory=list)

    def __post_init__(self):
        if self.outcome not in (True, False, NOT_APPLICABLE, INDETERMINATE):
            raise ValueError(f"bad outcome {self.outcome!r}")

    @property
    def passed(self) -> bool:
        return self.outcome is True

    def exit_code(self) -> int:
        if self.outcome is True:
            return 0
        if self.outcome is False:
            return 1
        return 3

    def to_json_dict(self) -> dict:
        return {
            "claim": self.claim,
            "instance": self.instance,
            "pass": self.outcome,
            "witnesses": self.witnesses,
            "caps": self.caps,
            "timing": self.timing,
            "notes": self.notes,
        }

    @staticmethod
    def from_json_dict(doc: dict) -> "VerificationReport":
        return VerificationReport(
            claim=doc["claim"],
            instance=doc["instance"],
            outcome=doc["pass"],
            witnesses=doc.get("witnesses", []),
            caps=doc.get("caps", {}),
            timing=doc.get("timing"),
            notes=doc.get("notes", []),
        )


def dumps_report(report: VerificationReport) -> str:
    """Deterministic JSON serialization (byte-identical for identical inputs)."""
    return json.dumps(report.to_json_dict(), sort_keys=True, separators=(",", ":"))


def loads_report(text: str) -> VerificationReport:
    return VerificationReport.from_json_dict(json.loads(text))
