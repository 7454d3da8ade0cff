import os
import time
from dataclasses import dataclass

from .errors import BudgetExceeded

DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class RunConfig:
    tolerance: float = DEFAULT_TOL
    max_word_length: int = 40
    bfs_slack: float = 2.0
    depth: int = 0  # 0: pick the minimum admissible depth per query
    max_depth: int = 40
    max_elements: int = 3_000_000
    output_format: str = "csv"
    deterministic: bool = True

    def __post_init__(self):
        if self.tolerance <= 0 or self.max_word_length <= 0 or self.bfs_slack <= 0:
            raise ValueError("budgets and tolerances must be positive")
        if self.output_format not in ("csv", "json"):
            raise ValueError(f"unknown output format {self.output_format!r}")


class Deadline:
    """Wall-clock cap read from AMALGAM_MAX_SECONDS (unset: no cap)."""

    def __init__(self, seconds=None):
        if seconds is None:
            env = os.environ.get("AMALGAM_MAX_SECONDS")
            seconds = float(env) if env else None
        self.seconds = seconds
        self.start = time.monotonic()

    def check(self, what="enumeration", horizon=None):
        if self.seconds is not None and time.monotonic() - self.start > self.seconds:
            raise BudgetExceeded(
                f"{what} exceeded the {self.seconds:g}s wall-clock budget", horizon
            )
