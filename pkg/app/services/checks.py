"""
Check bookkeeping shared by the verification routines.
"""

import logging
from dataclasses import dataclass, field
from typing import List

import numpy as np

logger = logging.getLogger(__name__)


@dataclass
class CheckTally:
    """Pass/fail counts of one family of exact checks."""
    name: str
    passed: int = 0
    failed: int = 0
    failures: List[str] = field(default_factory=list)

    def record(self, ok: bool, label: str = "") -> bool:
        if ok:
            self.passed += 1
        else:
            self.failed += 1
            if len(self.failures) < 5:
                self.failures.append(label)
            logger.debug(f"{self.name}: failed {label}")
        return ok

    def merge(self, other: "CheckTally") -> "CheckTally":
        self.passed += other.passed
        self.failed += other.failed
        self.failures.extend(other.failures[: max(0, 5 - len(self.failures))])
        return self

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "failed": self.failed, "failures": list(self.failures)}


def super_commutator(x: np.ndarray, y: np.ndarray, px: int, py: int) -> np.ndarray:
    """xy − (−1)^{px py} yx."""
    sign = -1 if px * py % 2 else 1
    return x.dot(y) - sign * y.dot(x)
