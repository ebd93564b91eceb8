"""
Verification runner.

Runs the worked-example suites and the randomized property suites and
collects one pass/fail row per check into a pandas DataFrame.
"""

import io
import logging
import time
from pathlib import Path
from typing import Iterable, List, Optional, Union

import pandas as pd

from nearly_convex.verification.properties import INSTANCES, SEED, property_suite
from nearly_convex.verification.suites import EXAMPLE_SUITES, CheckResult

logger = logging.getLogger("Verification")

COLUMNS = ["suite", "check", "passed", "detail"]
ALL_SUITES = list(EXAMPLE_SUITES) + ["properties"]


class VerificationRunner:
    """Runs a selection of suites and renders a deterministic report."""

    def __init__(self, suites: Optional[Iterable[str]] = None, instances: int = INSTANCES, seed: int = SEED):
        """
        Initialize the runner.

        Args:
            suites: Names from ``ALL_SUITES``; all of them by default
            instances: Random instances per property
            seed: Seed of the property suites
        """
        self.suites = list(suites) if suites is not None else list(ALL_SUITES)
        unknown = [s for s in self.suites if s not in ALL_SUITES]
        if unknown:
            raise ValueError(f"unknown suite(s): {', '.join(unknown)}")
        self.instances = instances
        self.seed = seed

    def run_suite(self, name: str) -> List[CheckResult]:
        started = time.perf_counter()
        if name == "properties":
            results = property_suite(self.instances, self.seed)
        else:
            results = EXAMPLE_SUITES[name]()
        failed = sum(not r.passed for r in results)
        logger.info("Suite %s: %d check(s), %d failed in %.1fs", name, len(results), failed,
                    time.perf_counter() - started)
        return results

    def run(self) -> pd.DataFrame:
        rows = [r.model_dump() for name in self.suites for r in self.run_suite(name)]
        frame = pd.DataFrame(rows, columns=COLUMNS)
        frame["passed"] = frame["passed"].astype(int)
        return frame


def run_verification(suites: Optional[Iterable[str]] = None, instances: int = INSTANCES,
                     seed: int = SEED) -> pd.DataFrame:
    """One row per check with columns suite, check, passed (0/1) and detail."""
    return VerificationRunner(suites, instances, seed).run()


def all_passed(frame: pd.DataFrame) -> bool:
    return bool(len(frame)) and bool(frame["passed"].all())


def report_csv(frame: pd.DataFrame, path: Optional[Union[str, Path]] = None) -> str:
    """CSV text of the report; also written to ``path`` when given."""
    buffer = io.StringIO()
    frame.to_csv(buffer, index=False, lineterminator="\n")
    text = buffer.getvalue()
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text
