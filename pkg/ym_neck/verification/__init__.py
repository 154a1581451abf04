"""Identity suites and the concurrent verification pipeline."""

from .base_check import CheckContext, CheckResult, CheckStatus, IdentityCheck
from .pipeline import PipelineResult, VerificationPipeline, run_verification
from .suites import SuiteDefinition, load_suites, parse_suite_data

__all__ = [
    "CheckContext",
    "CheckResult",
    "CheckStatus",
    "IdentityCheck",
    "PipelineResult",
    "VerificationPipeline",
    "run_verification",
    "SuiteDefinition",
    "load_suites",
    "parse_suite_data",
]
