"""
Randomized inequality suites.

A suite runs ``trials`` independent trials of one inequality. Trial ``i``
works in dimension ``dims[i % len(dims)]`` with its own generator seeded by
``trial_seed(seed, i)``, so a trial can be rerun in isolation from its
report. A trial function sees its index among the trials of its own
dimension, ``i // len(dims)``, so cyclic case choices cover every case in
every dimension. Polytope suites draw the kind of each body at random from
``SUITE_KINDS``. Reports are merged in trial order whatever the thread
count, and a violation is logged, stored and collected rather than stopping
the suite.
"""

import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import (
    Callable,
    Dict,
    List,
    NamedTuple,
    Optional,
    Sequence,
    Tuple,
)

import mixvol
from mixvol import (
    MalformedQueryError,
    ViolationError,
)
from mixvol.discriminant import (
    check_diagonal_discriminant_bezout,
    check_discriminant_bezout,
    check_discriminant_reverse_kt,
    check_pointwise_wedge_inequality,
    gamma_from_matrices,
    mixed_discriminant,
    mixed_discriminant_by_interpolation,
    SymMatrix,
)
from mixvol.harness import checks
from mixvol.geometry import VPolytope
from mixvol.harness.generators import (
    InstanceGenerator,
    trial_seed,
)
from mixvol.harness.store import ResultsStore
from mixvol.inradius import (
    check_diskant_bound,
    check_inclusion_scaling,
    check_reverse_kt_inradius,
)
from mixvol.mixed_volume import (
    mixed_volume,
    mixed_volume_by_interpolation,
    MixedVolumeQuery,
)
from mixvol.newton import (
    bkk_bound,
    classical_bezout_bound,
)
from mixvol.report import InequalityReport

log = logging.getLogger(__name__)

Trial = Callable[[InstanceGenerator, int], InequalityReport]

# zonotopes belong to the zonoid suite
SUITE_KINDS = ("random-hull", "simplex", "box", "scaled-copy")


def bezout_cases(n: int) -> List[Tuple[Tuple[int, ...], int]]:
    """
    Every ordered composition ``a`` of every ``|a| <= n`` into positive
    parts, paired with every selector ``k``.
    """
    cases = []
    for total in range(1, n + 1):
        for cuts in itertools.product((False, True), repeat=total - 1):
            parts = []
            size = 1
            for cut in cuts:
                if cut:
                    parts.append(size)
                    size = 1
                else:
                    size += 1
            parts.append(size)
            cases.extend((tuple(parts), k) for k in range(1, len(parts) + 1))
    return cases


def _body(gen: InstanceGenerator, full: bool = False) -> VPolytope:
    return gen.body(SUITE_KINDS[gen.integer(0, len(SUITE_KINDS) - 1)], full=full)


def _bodies(gen: InstanceGenerator, count: int) -> List[VPolytope]:
    return [_body(gen) for _ in range(count)]


def _pair(gen: InstanceGenerator, index: int) -> Tuple[VPolytope, VPolytope]:
    """
    Two full-dimensional bodies; every third pair is homothetic.
    """
    k = _body(gen, full=True)
    if index % 3 == 2:
        return k, gen.body("scaled-copy", full=True, reference=k)
    return k, _body(gen, full=True)


def _main_theorem(gen: InstanceGenerator, index: int) -> InequalityReport:
    cases = bezout_cases(gen.dim)
    a, k = cases[index % len(cases)]
    bodies = [(_body(gen), multiplicity) for multiplicity in a]
    return checks.check_main_theorem(bodies, _body(gen, full=True), k)


def _corollary(gen: InstanceGenerator, index: int) -> InequalityReport:
    r = gen.integer(1, gen.dim)
    return checks.check_corollary(_bodies(gen, r), _body(gen, full=True))


def _reverse_kt(gen: InstanceGenerator, index: int) -> InequalityReport:
    n = gen.dim
    k = gen.integer(1, n)
    forms = [_body(gen)] * (n - k) if gen.chance(0.5) else _bodies(gen, n - k)
    return checks.check_reverse_kt(_body(gen), _body(gen, full=True), forms, k)


def _simplex(gen: InstanceGenerator, index: int) -> InequalityReport:
    r = gen.integer(1, gen.dim)
    bodies = gen.bodies(r, "segment") if index % 4 == 3 else _bodies(gen, r)
    return checks.check_simplex_inequality(bodies)


def _zonoid(gen: InstanceGenerator, index: int) -> InequalityReport:
    r = gen.integer(1, gen.dim)
    return checks.check_zonoid_constant([gen.zonotope(gen.integer(1, gen.dim + 1)) for _ in range(r)], _body(gen, full=True))


def _log_concavity(gen: InstanceGenerator, index: int) -> InequalityReport:
    return checks.check_log_concavity_form(_body(gen), _body(gen, full=True), gen.integer(1, gen.dim))


def _alexandrov_fenchel(gen: InstanceGenerator, index: int) -> InequalityReport:
    if gen.dim < 2:
        raise MalformedQueryError("The Alexandrov-Fenchel step needs dimension at least 2")
    return checks.check_alexandrov_fenchel(_body(gen), _body(gen), gen.integer(1, gen.dim - 1))


def _diskant(gen: InstanceGenerator, index: int) -> InequalityReport:
    return check_diskant_bound(*_pair(gen, index))


def _inclusion_scaling(gen: InstanceGenerator, index: int) -> InequalityReport:
    return check_inclusion_scaling(*_pair(gen, index))


def _reverse_kt_inradius(gen: InstanceGenerator, index: int) -> InequalityReport:
    return check_reverse_kt_inradius(_body(gen), _body(gen, full=True), _body(gen))


def _psd_entries(gen: InstanceGenerator, diagonal: bool) -> List[Tuple[SymMatrix, int]]:
    a = gen.multiplicities(gen.dim)
    return [(gen.psd_matrix(rank=gen.integer(1, gen.dim), diagonal=diagonal), multiplicity) for multiplicity in a]


def _discriminant_bezout(gen: InstanceGenerator, index: int) -> InequalityReport:
    entries = _psd_entries(gen, diagonal=False)
    return check_discriminant_bezout(entries, gen.psd_matrix(definite=True), gen.integer(1, len(entries)))


def _discriminant_bezout_diagonal(gen: InstanceGenerator, index: int) -> InequalityReport:
    entries = _psd_entries(gen, diagonal=True)
    return check_diagonal_discriminant_bezout(entries, gen.psd_matrix(definite=True, diagonal=True))


def _diagonal_constant_search(gen: InstanceGenerator, index: int) -> InequalityReport:
    entries = _psd_entries(gen, diagonal=False)
    return check_diagonal_discriminant_bezout(entries, gen.psd_matrix(definite=True), require_diagonal=False)


def _discriminant_reverse_kt(gen: InstanceGenerator, index: int) -> InequalityReport:
    n = gen.dim
    k = gen.integer(1, n)
    forms = [gen.psd_matrix(rank=gen.integer(1, n)) for _ in range(n - k)]
    return check_discriminant_reverse_kt(gen.psd_matrix(rank=gen.integer(1, n)), gen.psd_matrix(definite=True), forms, k)


def _pointwise_wedge(gen: InstanceGenerator, index: int) -> InequalityReport:
    n = gen.dim
    k = gen.integer(1, n)
    mu = SymMatrix.diagonal([gen.rational(0) for _ in range(n)])
    if index % 2:
        gamma = gamma_from_matrices([gen.psd_matrix(rank=gen.integer(1, n)) for _ in range(n - k)], n)
    else:
        gamma = gen.gamma(k)
    return check_pointwise_wedge_inequality(mu, gamma, k)


def _agreement(inequality_id: str, polarized: Fraction, interpolated: Fraction, instance: Dict) -> InequalityReport:
    # holds iff both evaluations agree exactly
    return InequalityReport(
        inequality_id,
        abs(polarized - interpolated),
        Fraction(0),
        instance,
        witness={"polarization": polarized, "interpolation": interpolated},
    )


def _mixed_volume_oracle(gen: InstanceGenerator, index: int) -> InequalityReport:
    a = gen.multiplicities(gen.dim)
    a[-1] += gen.dim - sum(a)
    query = MixedVolumeQuery([(_body(gen), multiplicity) for multiplicity in a])
    instance = {"bodies": [body for body, _ in query.entries], "a": a}
    return _agreement("mixed-volume-oracle", mixed_volume(query), mixed_volume_by_interpolation(query), instance)


def _mixed_discriminant_oracle(gen: InstanceGenerator, index: int) -> InequalityReport:
    a = gen.multiplicities(gen.dim)
    a[-1] += gen.dim - sum(a)
    entries = [(gen.psd_matrix(rank=gen.integer(1, gen.dim)), multiplicity) for multiplicity in a]
    instance = {"matrices": [m for m, _ in entries], "a": a}
    return _agreement(
        "mixed-discriminant-oracle",
        mixed_discriminant(entries),
        mixed_discriminant_by_interpolation(entries),
        instance,
    )


def _bkk_bezout(gen: InstanceGenerator, index: int) -> InequalityReport:
    system = gen.laurent_system()
    return InequalityReport(
        "bkk-bezout",
        Fraction(bkk_bound(system)),
        Fraction(classical_bezout_bound(system)),
        {"system": [str(p) for p in system]},
    )


TRIALS: Dict[str, Trial] = {
    "main-theorem": _main_theorem,
    "corollary": _corollary,
    "reverse-kt": _reverse_kt,
    "simplex": _simplex,
    "zonoid": _zonoid,
    "log-concavity": _log_concavity,
    "alexandrov-fenchel": _alexandrov_fenchel,
    "diskant": _diskant,
    "inclusion-scaling": _inclusion_scaling,
    "reverse-kt-inradius": _reverse_kt_inradius,
    "discriminant-bezout": _discriminant_bezout,
    "discriminant-bezout-diagonal": _discriminant_bezout_diagonal,
    "discriminant-reverse-kt": _discriminant_reverse_kt,
    "pointwise-wedge": _pointwise_wedge,
    "mixed-volume-oracle": _mixed_volume_oracle,
    "mixed-discriminant-oracle": _mixed_discriminant_oracle,
    "bkk-bezout": _bkk_bezout,
    "discriminant-diagonal-constant-search": _diagonal_constant_search,
}

# searched, never asserted
SEARCH_ONLY = frozenset({"discriminant-diagonal-constant-search"})


class SuiteResult(NamedTuple):
    inequality_id: str
    seed: int
    reports: List[InequalityReport]

    @property
    def asserted(self) -> bool:
        return self.inequality_id not in SEARCH_ONLY

    @property
    def violations(self) -> List[InequalityReport]:
        return [report for report in self.reports if not report.holds]

    @property
    def ratios(self) -> List[Fraction]:
        return [report.ratio for report in self.reports if report.ratio is not None]

    @property
    def ok(self) -> bool:
        return not self.asserted or not self.violations


def run_trial(inequality_id: str, seed: int, trial: int, dims: Sequence[int]) -> InequalityReport:
    """
    Rerun a single trial of a suite.
    """
    try:
        check = TRIALS[inequality_id]
    except KeyError:
        raise ValueError(f"Unknown inequality id {inequality_id!r}; known ids: {', '.join(sorted(TRIALS))}")
    dim = dims[trial % len(dims)]
    gen = InstanceGenerator(trial_seed(seed, trial), dim)
    return check(gen, trial // len(dims)).with_origin(seed, trial, dim)


def run_suite(
    inequality_id: str,
    trials: int,
    dims: Sequence[int],
    seed: int,
    workers: Optional[int] = None,
    store: Optional[ResultsStore] = None,
    strict: bool = False,
) -> SuiteResult:
    """
    Run ``trials`` seeded trials of one inequality.

    :type workers: int
    :param workers: thread count; defaults to the configured ``workers``

    :type store: ResultsStore
    :param store: if given, every report is appended in trial order

    :type strict: bool
    :param strict: raise once the suite is done if any asserted inequality
      was violated

    :raises ViolationError: in strict mode, carrying every violating report
    """
    if inequality_id not in TRIALS:
        raise ValueError(f"Unknown inequality id {inequality_id!r}; known ids: {', '.join(sorted(TRIALS))}")
    if not dims:
        raise ValueError("A suite needs at least one dimension")
    threads = workers if workers is not None else mixvol.config.harness_int("workers")
    log.info("Running %d trials of %s in dimensions %s (seed %d)", trials, inequality_id, list(dims), seed)

    def one(trial: int) -> InequalityReport:
        return run_trial(inequality_id, seed, trial, dims)

    reports: List[InequalityReport] = []
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as executor:
            outcomes = executor.map(one, range(trials))
            for report in outcomes:
                _collect(report, reports, store)
    else:
        for trial in range(trials):
            _collect(one(trial), reports, store)
    result = SuiteResult(inequality_id, seed, reports)
    if result.asserted and result.violations:
        log.error("%s: %d of %d trials violated", inequality_id, len(result.violations), trials)
        if strict:
            raise ViolationError(f"{inequality_id} violated in {len(result.violations)} trials", result.violations)
    else:
        log.info("%s: %d trials, no violations", inequality_id, trials)
    return result


def _collect(report: InequalityReport, reports: List[InequalityReport], store: Optional[ResultsStore]) -> None:
    if not report.holds and report.inequality_id not in SEARCH_ONLY:
        log.warning("Violation: %r", report)
    reports.append(report)
    if store is not None:
        store.append(report)
