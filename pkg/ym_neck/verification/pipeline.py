"""Verification pipeline for running identity checks concurrently."""

import asyncio
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Type

from .base_check import CheckContext, CheckResult, CheckStatus, IdentityCheck
from .suites import SuiteDefinition

LOGGER = logging.getLogger(__name__)


@dataclass
class PipelineResult:
    """Aggregated result from the verification pipeline."""

    results: List[CheckResult]
    overall_status: CheckStatus
    failures: List[str]
    errors: List[str]

    @property
    def all_passed(self) -> bool:
        """Whether no required check failed or errored."""
        return not self.failures and not self.errors

    @property
    def max_residual(self) -> float:
        return max((r.max_residual for r in self.results), default=0.0)


class VerificationPipeline:
    """Pipeline for running identity suites on a grid."""

    def __init__(self):
        """Initialize the verification pipeline."""
        self.checks: Dict[str, Type[IdentityCheck]] = {}
        self._register_default_checks()

    def _register_default_checks(self):
        """Register built-in identity checks."""
        from . import checks

        for name in checks.__all__:
            self.register_check(name, getattr(checks, name))

    def register_check(self, name: str, check_class: Type[IdentityCheck]):
        """Register an identity check class.

        Args:
            name: Name to register the check under
            check_class: The check class
        """
        self.checks[name] = check_class

    async def run_suites(
        self, context: CheckContext, suites: Sequence[SuiteDefinition]
    ) -> PipelineResult:
        """Run every enabled suite.

        Args:
            context: Grid and seed shared by all checks
            suites: Suites to run

        Returns:
            Aggregated pipeline result, in suite order
        """
        tasks = []
        for suite in suites:
            if not suite.enabled:
                continue
            check_class = self.checks.get(suite.checker_class)
            if check_class is None:
                LOGGER.warning("No check registered as %s (suite %s)", suite.checker_class, suite.name)
                tasks.append(asyncio.create_task(self._unknown(suite)))
                continue
            check = check_class(suite.check_config())
            check.name = suite.name
            LOGGER.debug("Scheduling %s with timeout %.0fs", suite.name, suite.timeout)
            tasks.append(
                asyncio.create_task(self._run_check_with_timeout(check, context, suite.timeout))
            )

        results = []
        if tasks:
            results = await asyncio.gather(*tasks, return_exceptions=True)
        return self._aggregate_results(results)

    async def _unknown(self, suite: SuiteDefinition) -> CheckResult:
        return CheckResult(
            check_name=suite.name,
            status=CheckStatus.ERROR,
            message=f"Unknown check class: {suite.checker_class}",
            tolerance=suite.tolerance,
            required=suite.required,
        )

    async def _run_check_with_timeout(
        self, check: IdentityCheck, context: CheckContext, timeout: float
    ) -> CheckResult:
        """Run a check in a worker thread with a timeout.

        Args:
            check: The check to run
            context: Grid and seed to run on
            timeout: Timeout in seconds

        Returns:
            CheckResult, or an error result on timeout or exception
        """
        tolerance = float(check.get_config_value("tolerance", check.default_tolerance))
        required = bool(check.get_config_value("required", True))
        try:
            return await asyncio.wait_for(asyncio.to_thread(check.run, context), timeout=timeout)
        except asyncio.TimeoutError:
            return CheckResult(
                check_name=check.name,
                status=CheckStatus.ERROR,
                message=f"Check timed out after {timeout} seconds",
                tolerance=tolerance,
                required=required,
            )
        except Exception as e:
            LOGGER.debug("Check %s raised", check.name, exc_info=True)
            return CheckResult(
                check_name=check.name,
                status=CheckStatus.ERROR,
                message=f"Check failed: {str(e)}",
                tolerance=tolerance,
                required=required,
            )

    def _aggregate_results(self, results: List) -> PipelineResult:
        """Aggregate individual check results.

        Args:
            results: List of check results (or exceptions from gather)

        Returns:
            Aggregated pipeline result
        """
        overall_status = CheckStatus.PASSED
        kept: List[CheckResult] = []
        failures: List[str] = []
        errors: List[str] = []

        for result in results:
            if isinstance(result, BaseException):
                errors.append(f"Check error: {str(result)}")
                overall_status = CheckStatus.ERROR
                continue
            kept.append(result)
            if not result.is_failure:
                continue
            if result.status is CheckStatus.ERROR:
                errors.append(f"{result.check_name}: {result.message}")
                overall_status = CheckStatus.ERROR
            else:
                failures.append(f"{result.check_name}: {result.message}")
                if overall_status is CheckStatus.PASSED:
                    overall_status = CheckStatus.FAILED

        return PipelineResult(
            results=kept,
            overall_status=overall_status,
            failures=failures,
            errors=errors,
        )


def run_verification(
    context: CheckContext,
    suites: Sequence[SuiteDefinition],
    pipeline: Optional[VerificationPipeline] = None,
) -> PipelineResult:
    """Blocking wrapper around ``VerificationPipeline.run_suites``."""
    pipeline = pipeline or VerificationPipeline()
    return asyncio.run(pipeline.run_suites(context, suites))
