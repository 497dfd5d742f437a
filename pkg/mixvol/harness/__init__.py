"""
Seeded random instances and exact checks of the Bezout-type inequalities.
"""

from mixvol.harness import checks
from mixvol.harness.generators import (
    InstanceGenerator,
    KINDS,
    trial_seed,
)
from mixvol.harness.store import ResultsStore
from mixvol.harness.suites import (
    run_suite,
    run_trial,
    SEARCH_ONLY,
    SuiteResult,
    TRIALS,
)
from mixvol.harness.survey import (
    compare_constants,
    dump_summary,
    segment_family,
    tightness_survey,
)

__all__ = (
    "checks",
    "InstanceGenerator",
    "KINDS",
    "trial_seed",
    "ResultsStore",
    "run_suite",
    "run_trial",
    "SEARCH_ONLY",
    "SuiteResult",
    "TRIALS",
    "compare_constants",
    "dump_summary",
    "segment_family",
    "tightness_survey",
)
