"""Property reports shared by every verify/check operation.

JSON schema::

    {"suite": str,
     "checks": [{"law": str, "status": "pass" | "fail",
                 "witness": object | null, "max_deviation": number}],
     "seed": int, "samples": int}
"""
import json
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from .reals import format_number

logger = logging.getLogger(__name__)

PASS = "pass"
FAIL = "fail"


def describe(value) -> str:
    """Stable text form of an element or number for witnesses."""
    if isinstance(value, tuple):
        return "(" + ", ".join(describe(v) for v in value) + ")"
    if hasattr(value, "literal"):
        return value.literal()
    return format_number(value)


@dataclass
class LawCheck:
    law: str
    status: str = PASS
    witness: Optional[Dict[str, str]] = None
    max_deviation: float = 0.0

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def observe(self, ok: bool, deviation: float = 0.0, **witness) -> bool:
        """Fold one evaluation into the check; the first failure is the witness."""
        deviation = abs(float(deviation))
        if deviation > self.max_deviation:
            self.max_deviation = deviation
        if not ok and self.status == PASS:
            self.status = FAIL
            self.witness = {name: describe(value) for name, value in sorted(witness.items())}
            logger.debug("law %s failed at %s", self.law, self.witness)
        return ok

    def merge(self, other: "LawCheck") -> "LawCheck":
        merged = LawCheck(self.law, self.status, self.witness, self.max_deviation)
        merged.max_deviation = max(self.max_deviation, other.max_deviation)
        if merged.status == PASS and other.status == FAIL:
            merged.status, merged.witness = FAIL, other.witness
        return merged

    def to_dict(self) -> dict:
        return {
            "law": self.law,
            "status": self.status,
            "witness": self.witness,
            "max_deviation": self.max_deviation,
        }


@dataclass
class PropertyReport:
    suite: str
    seed: int
    samples: int
    checks: List[LawCheck] = field(default_factory=list)

    def law(self, name: str) -> LawCheck:
        for check in self.checks:
            if check.law == name:
                return check
        check = LawCheck(name)
        self.checks.append(check)
        return check

    def __getitem__(self, name: str) -> LawCheck:
        for check in self.checks:
            if check.law == name:
                return check
        raise KeyError(name)

    def __contains__(self, name: str) -> bool:
        return any(check.law == name for check in self.checks)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failures(self) -> List[LawCheck]:
        return [check for check in self.checks if not check.passed]

    def merge(self, other: "PropertyReport") -> "PropertyReport":
        """Combine two reports of the same suite; associative, keeps check order."""
        merged = PropertyReport(self.suite, self.seed, self.samples + other.samples)
        for check in self.checks:
            merged.checks.append(check.merge(LawCheck(check.law)))
        for check in other.checks:
            if check.law in merged:
                index = next(i for i, c in enumerate(merged.checks) if c.law == check.law)
                merged.checks[index] = merged.checks[index].merge(check)
            else:
                merged.checks.append(check.merge(LawCheck(check.law)))
        return merged

    def extend(self, other: "PropertyReport", prefix: Optional[str] = None) -> "PropertyReport":
        """Append another suite's checks, namespaced by ``prefix`` (default its suite)."""
        prefix = other.suite if prefix is None else prefix
        for check in other.checks:
            self.checks.append(
                LawCheck(f"{prefix}:{check.law}", check.status, check.witness, check.max_deviation)
            )
        return self

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "checks": [check.to_dict() for check in self.checks],
            "seed": self.seed,
            "samples": self.samples,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, ensure_ascii=False)

    def to_text(self) -> str:
        lines = [f"{self.suite} (seed={self.seed}, samples={self.samples})"]
        for check in self.checks:
            line = f"  {check.status.upper():4} {check.law}"
            if check.max_deviation:
                line += f"  max_deviation={check.max_deviation:.3g}"
            if check.witness:
                witness = ", ".join(f"{k}={v}" for k, v in check.witness.items())
                line += f"  witness: {witness}"
            lines.append(line)
        lines.append("PASS" if self.passed else "FAIL")
        return "\n".join(lines)
