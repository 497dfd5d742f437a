"""
Tightness surveys: how close random instances come to each inequality's
constant.
"""

import json
import logging
import statistics
from fractions import Fraction
from typing import (
    Any,
    Dict,
    List,
    Optional,
    Sequence,
)

from mixvol import MalformedQueryError
from mixvol.discriminant import check_discriminant_bezout
from mixvol.geometry import (
    minkowski_sum,
    segment,
)
from mixvol.harness import checks
from mixvol.harness.generators import (
    InstanceGenerator,
    trial_seed,
)
from mixvol.harness.store import ResultsStore
from mixvol.harness.suites import (
    run_suite,
    SEARCH_ONLY,
)
from mixvol.multilinear import (
    bezout_constant,
    validate_bezout_multiplicities,
)
from mixvol.report import InequalityReport
from mixvol.util import format_rational

log = logging.getLogger(__name__)

# (s, t): K = [0, s e1], L = [0, t e2], D = K + L
SEGMENT_FAMILY = ((1, 1), (2, 1), (1, 3))


def segment_family(inequality_id: str) -> List[InequalityReport]:
    """
    Reports for the planar equality configurations: two axis segments ``K``,
    ``L`` and ``D = K + L``. Empty for inequalities they say nothing about.
    """
    reports = []
    for s, t in SEGMENT_FAMILY:
        k = segment((0, 0), (s, 0))
        l = segment((0, 0), (0, t))
        d = minkowski_sum(k, l)
        if inequality_id == "corollary":
            report = checks.check_corollary([k, l], d)
        elif inequality_id == "main-theorem":
            report = checks.check_main_theorem([(k, 1), (l, 1)], d, 1)
        elif inequality_id == "zonoid":
            report = checks.check_zonoid_constant([k, l], d)
        else:
            return []
        reports.append(InequalityReport(report.inequality_id, report.lhs, report.rhs, dict(report.instance, family="segments")))
    return reports


def _ratio(value: Optional[Fraction]) -> Optional[str]:
    return format_rational(value) if value is not None else None


def tightness_survey(
    inequality_id: str,
    trials: int,
    dims: Sequence[int],
    seed: int,
    store: Optional[ResultsStore] = None,
    workers: int = 1,
) -> Dict[str, Any]:
    """
    Run a suite and summarize its ratios ``rhs / lhs``.

    When the plane is among ``dims``, the segment equality family is added to
    the corollary, main theorem and zonoid surveys.

    :type store: ResultsStore
    :param store: receives the records of the extremal instances

    :rtype: dict
    :return: JSON-ready summary with the minimum, median and maximum ratio,
      the digests of the extremal instances and the violation count
    """
    result = run_suite(inequality_id, trials, dims, seed, workers=workers)
    reports = list(result.reports)
    if 2 in dims:
        reports.extend(segment_family(inequality_id))
    rated = [report for report in reports if report.ratio is not None]
    summary: Dict[str, Any] = {
        "inequality_id": inequality_id,
        "seed": seed,
        "trials": trials,
        "dims": list(dims),
        "instances": len(reports),
        "rated": len(rated),
        "violations": [report.digest for report in reports if not report.holds],
        "asserted": inequality_id not in SEARCH_ONLY,
    }
    if rated:
        ordered = sorted(rated, key=lambda report: (report.ratio, report.digest))
        lowest, highest = ordered[0], ordered[-1]
        summary.update(
            min_ratio=_ratio(lowest.ratio),
            median_ratio=_ratio(statistics.median_low([report.ratio for report in ordered])),
            max_ratio=_ratio(highest.ratio),
            min_digest=lowest.digest,
            max_digest=highest.digest,
        )
        if store is not None:
            store.extend([lowest, highest] if lowest is not highest else [lowest])
    else:
        summary.update(min_ratio=None, median_ratio=None, max_ratio=None, min_digest=None, max_digest=None)
    if inequality_id == "corollary":
        summary["constants"] = {
            str(n): {"current": n ** (n - 1), "previous": checks.previous_corollary_constant(n, n)} for n in dims
        }
    log.info("Survey of %s: min ratio %s over %d instances", inequality_id, summary["min_ratio"], len(reports))
    return summary


def dump_summary(summary: Dict[str, Any]) -> str:
    return json.dumps(summary, sort_keys=True, indent=2)


def compare_constants(multiplicities: Sequence[int], n: int, trials: int, seed: int) -> Dict[str, Any]:
    """
    Observed minimum ratio of the polytope inequality next to that of the
    matrix inequality, for the same multiplicities and the best selector
    ``k``. Only reported: no relation between the two minima is asserted.
    """
    a = list(multiplicities)
    r = len(a)
    validate_bezout_multiplicities(n, a, 1)
    if trials < 1:
        raise MalformedQueryError(f"Need at least one trial (got: {trials})")
    k_best = min(range(1, r + 1), key=lambda k: bezout_constant(n, a, k))
    polytope: List[Fraction] = []
    matrix: List[Fraction] = []
    for trial in range(trials):
        gen = InstanceGenerator(trial_seed(seed, trial), n)
        bodies = [(gen.body(), multiplicity) for multiplicity in a]
        report = checks.check_main_theorem(bodies, gen.body(full=True), k_best)
        if report.ratio is not None:
            polytope.append(report.ratio)
        entries = [(gen.psd_matrix(rank=gen.integer(1, n)), multiplicity) for multiplicity in a]
        report = check_discriminant_bezout(entries, gen.psd_matrix(definite=True), k_best)
        if report.ratio is not None:
            matrix.append(report.ratio)
    return {
        "multiplicities": a,
        "n": n,
        "k": k_best,
        "constant": format_rational(bezout_constant(n, a, k_best)),
        "polytope_min_ratio": _ratio(min(polytope) if polytope else None),
        "matrix_min_ratio": _ratio(min(matrix) if matrix else None),
        "trials": trials,
        "seed": seed,
    }
