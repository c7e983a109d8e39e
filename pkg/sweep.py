"""
Verification sweep runner.

Every suite is a list of independent cases and a module-level check function
that turns one case into a CaseResult. Cases run serially or in a process
pool; each case seeds its own random stream from (seed, suite, case), so the
merged report does not depend on scheduling.

A failed identity is a result, not an exception. Anything a check raises is
caught here, logged, and recorded on the case with pass = false.
"""

from __future__ import annotations

import functools
import logging
import random
import time
from collections.abc import Callable, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any

logger = logging.getLogger(__name__)


def case_rng(seed: int, suite: str, case: Any) -> random.Random:
    """Independent stream per case; str seeds hash deterministically."""
    return random.Random(f"{seed}:{suite}:{case}")


@dataclass
class CaseResult:
    key: Any
    passed: bool
    skipped: bool = False
    generator: str | None = None
    residual: dict | None = None
    error: str | None = None
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "tuple": self.key,
            "pass": self.passed,
            "skipped": self.skipped,
            "generator": self.generator,
            "residual": self.residual,
            "error": self.error,
        }


@dataclass
class Report:
    suite: str
    params: dict
    cases: list[CaseResult]

    @property
    def passed(self) -> bool:
        """Every case passes and, unless there are none, at least one was not skipped."""
        if self.cases and all(c.skipped for c in self.cases):
            return False
        return all(c.passed for c in self.cases)

    def counts(self) -> dict[str, int]:
        return {
            "total": len(self.cases),
            "passed": sum(1 for c in self.cases if c.passed and not c.skipped),
            "failed": sum(1 for c in self.cases if not c.passed),
            "skipped": sum(1 for c in self.cases if c.skipped),
            "errors": sum(1 for c in self.cases if c.error),
        }

    def summary(self) -> str:
        c = self.counts()
        return (f"{c['passed']}/{c['total']} pass, {c['failed']} fail, "
                f"{c['skipped']} skipped, {c['errors']} errors")

    @classmethod
    def merge(cls, suite: str, params: dict, reports: Sequence[Report], tag: str) -> Report:
        """Concatenate sub-reports, prefixing every case key with its report's `tag` param."""
        cases = []
        for sub in reports:
            for case in sub.cases:
                case.key = [sub.params.get(tag), *case.key] if isinstance(case.key, list) \
                    else [sub.params.get(tag), case.key]
                cases.append(case)
        return cls(suite=suite, params=params, cases=cases)

    def to_json(self) -> dict:
        return {"suite": self.suite, **self.params,
                "cases": [c.to_json() for c in self.cases],
                "summary": self.counts(), "pass": self.passed}


def _guarded(check: Callable[..., CaseResult], suite: str, unpack: bool,
             shared: dict, case: Any) -> CaseResult:
    try:
        result = check(*case, **shared) if unpack else check(case, **shared)
    except Exception as exc:
        logger.error("[%s/%s] case failed: %s", suite, _label(case), exc)
        return CaseResult(key=_key(case), passed=False,
                          error=f"{type(exc).__name__}: {exc}")
    if result.skipped:
        logger.warning("[%s/%s] skipped: %s", suite, _label(case), result.detail.get("reason", ""))
    else:
        logger.debug("[%s/%s] %s", suite, _label(case), "pass" if result.passed else "FAIL")
    return result


def _key(case: Any):
    if isinstance(case, (tuple, list)):
        return [_key(c) for c in case]
    to_json = getattr(case, "to_json", None)
    return to_json() if to_json else case


def _label(case: Any) -> str:
    if isinstance(case, (tuple, list)):
        return " ".join(_label(c) for c in case)
    return str(case)


def run_cases(suite: str, check: Callable[..., CaseResult], cases: Sequence[Any],
              workers: int = 1, unpack: bool = False, **shared) -> list[CaseResult]:
    """
    Evaluate `check(case, **shared)` for every case, results in case order.

    With workers > 1 the check, the cases and the shared arguments must be
    picklable (module-level functions, dataclasses, ints, strings).
    """
    started = time.monotonic()
    job = functools.partial(_guarded, check, suite, unpack, shared)
    if workers > 1 and len(cases) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(job, cases))
    else:
        results = [job(case) for case in cases]
    logger.info("[%s] %d cases in %.1fs", suite, len(results), time.monotonic() - started)
    return results
