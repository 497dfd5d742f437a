import io
import json
import math
import os
import tempfile
import unittest
from fractions import Fraction
from unittest import mock

import pytest

import mixvol
from mixvol import (
    DegenerateBodyError,
    MalformedQueryError,
    ViolationError,
)
from mixvol.config import Config
from mixvol.geometry import (
    box,
    minkowski_sum,
    segment,
    standard_simplex,
    unit_cube,
    zonotope,
)
from mixvol.harness import (
    checks,
    compare_constants,
    dump_summary,
    InstanceGenerator,
    KINDS,
    ResultsStore,
    run_suite,
    run_trial,
    SEARCH_ONLY,
    segment_family,
    tightness_survey,
    trial_seed,
    TRIALS,
)
from mixvol.harness.suites import (
    bezout_cases,
    SUITE_KINDS,
)
from mixvol.report import InequalityReport
from . import test_util

mixvol.set_stream_logger("test", level="INFO")

E1 = segment((0, 0), (1, 0))
E2 = segment((0, 0), (0, 1))

# trial counts of the full acceptance runs
FULL_TRIALS = {
    "main-theorem": 900,
    "corollary": 600,
    "reverse-kt": 300,
    "simplex": 200,
    "diskant": 400,
    "inclusion-scaling": 400,
    "reverse-kt-inradius": 400,
    "zonoid": 200,
    "log-concavity": 200,
    "alexandrov-fenchel": 200,
    "discriminant-bezout": 500,
    "discriminant-bezout-diagonal": 500,
    "discriminant-reverse-kt": 200,
    "pointwise-wedge": 1000,
    "mixed-volume-oracle": 100,
    "mixed-discriminant-oracle": 100,
    "bkk-bezout": 100,
}

SUITE_DIMS = {
    "main-theorem": [2, 3, 4],
    "corollary": [2, 3],
    "reverse-kt": [2, 3, 4],
    "simplex": [2, 3, 4],
    "discriminant-bezout": [2, 3, 4, 5],
    "discriminant-bezout-diagonal": [2, 3, 4, 5],
    "discriminant-reverse-kt": [2, 3, 4, 5],
    "pointwise-wedge": [2, 3, 4, 5, 6],
    "mixed-volume-oracle": [2, 3, 4],
    "mixed-discriminant-oracle": [2, 3, 4, 5],
}


class TestGenerators(unittest.TestCase):
    def test_trial_seed(self):
        assert trial_seed(7, 3) == trial_seed(7, 3)
        assert len({trial_seed(7, trial) for trial in range(50)}) == 50
        assert trial_seed(7, 0) != trial_seed(8, 0)
        assert 0 <= trial_seed(2**40, 12) < 2**64

    def test_same_seed_same_instance(self):
        for kind in KINDS:
            first = InstanceGenerator(trial_seed(1, 0), 3, kind=kind)
            second = InstanceGenerator(trial_seed(1, 0), 3, kind=kind)
            assert first.bodies(4) == second.bodies(4)
            assert first.psd_matrix() == second.psd_matrix()
            assert first.laurent_system() == second.laurent_system()

    def test_kinds(self):
        gen = InstanceGenerator(trial_seed(2, 0), 3)
        assert gen.body("box", full=True).is_full_dimensional
        assert gen.body("segment").affine_dim == 1
        assert gen.body("simplex", full=True).is_full_dimensional
        reference = unit_cube(3)
        copy = gen.body("scaled-copy", reference=reference, full=True)
        assert len(copy.vertices) == 8
        with pytest.raises(ValueError):
            gen.body("sphere")
        with pytest.raises(ValueError):
            gen.body("segment", full=True)
        with pytest.raises(ValueError):
            InstanceGenerator(0, 0)

    def test_multiplicities(self):
        gen = InstanceGenerator(trial_seed(3, 0), 5)
        for _ in range(50):
            a = gen.multiplicities(5)
            assert 1 <= sum(a) <= 5
            assert all(part >= 1 for part in a)

    def test_psd_matrices(self):
        gen = InstanceGenerator(trial_seed(4, 0), 4)
        assert gen.psd_matrix(definite=True).det() > 0
        assert gen.psd_matrix(rank=2).det() == 0
        assert gen.psd_matrix(diagonal=True).is_diagonal

    def test_configured_instance_model(self):
        config = Config(fp=io.StringIO("[harness]\ncoordinate_bound = 2\ndenominators = 3\ndegenerate_fraction = 1\n"))
        gen = InstanceGenerator(trial_seed(5, 0), 3, config=config)
        for body in gen.bodies(10):
            assert not body.is_full_dimensional
            assert all(abs(x) <= Fraction(2, 3) and (3 * x).denominator == 1 for v in body.vertices for x in v)
        assert gen.body(full=True).is_full_dimensional


class TestChecks(unittest.TestCase):
    def test_sharp_planar_equality(self):
        d = minkowski_sum(E1, E2)
        report = checks.check_corollary([E1, E2], d)
        assert report.lhs == report.rhs == Fraction(1, 2)
        assert report.ratio == 1
        report = checks.check_main_theorem([(E1, 1), (E2, 1)], d, 1)
        assert report.lhs == report.rhs == 1
        report = checks.check_zonoid_constant([E1, E2], d)
        assert report.ratio == 1

    def test_main_theorem_all_bodies_equal(self):
        # with every K_i = D the ratio is exactly the constant
        cube = unit_cube(3)
        for a, k in ([1, 2], 1), ([1, 2], 2), ([1, 1, 1], 3):
            report = checks.check_main_theorem([(cube, part) for part in a], cube, k)
            assert report.ratio == Fraction(math.prod(math.comb(3, part) for part in a), math.comb(3, a[k - 1]))

    def test_main_theorem_preconditions(self):
        with pytest.raises(MalformedQueryError):
            checks.check_main_theorem([(E1, 2), (E2, 1)], unit_cube(2), 1)
        with pytest.raises(DegenerateBodyError):
            checks.check_main_theorem([(E1, 1)], E2, 1)

    def test_constants(self):
        assert checks.main_theorem_constant(3, [1, 2]) == 3
        assert checks.previous_corollary_constant(2, 2) == 8
        for n in (2, 3, 4):
            assert n ** (n - 1) < checks.previous_corollary_constant(n, n)

    def test_simplex_inequality(self):
        assert checks.check_simplex_inequality([E1, E2]).lhs == Fraction(1, 4)
        assert checks.check_simplex_inequality([unit_cube(2), standard_simplex(2)]).holds
        with pytest.raises(MalformedQueryError):
            checks.check_simplex_inequality([])

    def test_zonoid_requires_symmetry(self):
        with pytest.raises(MalformedQueryError):
            checks.check_zonoid_constant([standard_simplex(2)], unit_cube(2))
        hexagon = zonotope([(1, 0), (0, 1), (1, 1)])
        assert checks.check_zonoid_constant([hexagon, unit_cube(2)], standard_simplex(2)).holds

    def test_generated_zonotopes_are_segment_sums(self):
        gen = InstanceGenerator(trial_seed(6, 0), 3)
        twin = InstanceGenerator(trial_seed(6, 0), 3)
        for count in (1, 3, 4):
            body = gen.zonotope(count)
            generators = [twin.nonzero_point() for _ in range(count)]
            assert body == zonotope(generators, twin.point())
        assert checks.check_zonoid_constant([body], unit_cube(3)).holds

    def test_log_concavity_and_alexandrov_fenchel(self):
        d = box([0, 0, 0], [1, 2, 3])
        report = checks.check_log_concavity_form(d, d, 2)
        assert report.lhs == report.rhs
        assert checks.check_log_concavity_form(segment((0, 0, 0), (1, 1, 1)), d, 1).holds
        report = checks.check_alexandrov_fenchel(unit_cube(3), d, 1)
        assert report.holds
        with pytest.raises(MalformedQueryError):
            checks.check_alexandrov_fenchel(d, d, 3)

    def test_reverse_kt(self):
        cube = unit_cube(2)
        report = checks.check_reverse_kt(E1, cube, E2, 1)
        assert report.holds
        with pytest.raises(MalformedQueryError):
            checks.check_reverse_kt(E1, cube, [E2, E2], 1)

    def test_bezout_cases(self):
        assert bezout_cases(2) == [((1,), 1), ((2,), 1), ((1, 1), 1), ((1, 1), 2)]
        assert len({a for a, _ in bezout_cases(4)}) == 2**4 - 1


class TestReports(unittest.TestCase):
    def test_orientation_and_ratio(self):
        report = InequalityReport("corollary", "1/2", 1, {"a": [1]})
        assert report.holds
        assert report.ratio == 2
        assert InequalityReport("corollary", 0, 1).ratio is None
        assert not InequalityReport("corollary", 2, 1).holds

    def test_json_and_digest(self):
        report = InequalityReport("main-theorem", "1/3", "2/3", {"D": unit_cube(2), "k": 1}, witness=[Fraction(1, 2)])
        assert InequalityReport.from_json(report.to_json()) == report
        assert report.witness == ["1/2"]
        assert len(report.digest) == 16
        assert report.digest == InequalityReport("main-theorem", 5, 7, {"D": unit_cube(2), "k": 1}).digest
        assert report.digest != InequalityReport("corollary", "1/3", "2/3", report.instance).digest
        with pytest.raises(AttributeError):
            report.lhs = Fraction(0)

    def test_record(self):
        record = run_trial("corollary", 11, 2, [2]).to_record()
        assert (record["seed"], record["trial"]) == (11, 2)
        assert set(record) == {"inequality_id", "seed", "trial", "lhs", "rhs", "ratio", "holds", "digest"}


class TestResultsStore(unittest.TestCase):
    def test_records_in_trial_order(self):
        with tempfile.TemporaryDirectory() as d:
            store = ResultsStore(os.path.join(d, "results.jsonl"))
            run_suite("log-concavity", 6, [2, 3], seed=9, workers=3, store=store)
            records = store.read()
            assert [record["trial"] for record in records] == list(range(6))
            assert all(record["holds"] for record in records)

    def test_truncates(self):
        with tempfile.TemporaryDirectory() as d:
            path = os.path.join(d, "results.jsonl")
            ResultsStore(path).append(InequalityReport("corollary", 1, 2))
            assert len(ResultsStore(path, truncate=False).read()) == 1
            assert ResultsStore(path).read() == []

    def test_byte_identical_regardless_of_threads(self):
        with tempfile.TemporaryDirectory() as d:
            contents = []
            for workers in (1, 4):
                path = os.path.join(d, f"results-{workers}.jsonl")
                run_suite("corollary", test_util.trials(40, 8), [2, 3], seed=12, workers=workers, store=ResultsStore(path))
                with open(path, "rb") as f:
                    contents.append(f.read())
            assert contents[0] == contents[1]


class TestSuites(unittest.TestCase):
    def test_rerun_single_trial(self):
        result = run_suite("main-theorem", 5, [2, 3], seed=21)
        assert run_trial("main-theorem", 21, 3, [2, 3]) == result.reports[3]
        assert result.reports[3].instance["dim"] == 3

    def test_main_theorem_covers_every_case_in_every_dimension(self):
        def record_case(bodies, d, k):
            return InequalityReport("main-theorem", 0, 1, {"a": [a for _, a in bodies], "k": k})

        dims = [2, 3, 4]
        seen = {n: set() for n in dims}
        with mock.patch.object(checks, "check_main_theorem", side_effect=record_case):
            for trial in range(len(dims) * len(bezout_cases(4))):
                report = run_trial("main-theorem", 6, trial, dims)
                seen[report.instance["dim"]].add((tuple(report.instance["a"]), report.instance["k"]))
        for n in dims:
            assert seen[n] == set(bezout_cases(n))

    def test_bodies_of_every_kind(self):
        original = InstanceGenerator.body
        with mock.patch.object(InstanceGenerator, "body", autospec=True, side_effect=original) as body:
            run_suite("corollary", 30, [2, 3], seed=17, workers=1)
        kinds = {call.args[1] for call in body.call_args_list if len(call.args) > 1}
        assert kinds == set(SUITE_KINDS)

    def test_every_third_pair_is_homothetic(self):
        pairs = []

        def record_pair(k, l):
            pairs.append((k, l))
            return InequalityReport("diskant", 0, 1)

        with mock.patch("mixvol.harness.suites.check_diskant_bound", side_effect=record_pair):
            run_suite("diskant", 12, [2, 3], seed=31, workers=1)
        for trial, (k, l) in enumerate(pairs):
            if (trial // 2) % 3 != 2:
                continue
            assert len(k.vertices) == len(l.vertices)
            kv, lv = sorted(k.vertices), sorted(l.vertices)
            k_edges = [[x - y for x, y in zip(v, kv[0])] for v in kv[1:]]
            l_edges = [[x - y for x, y in zip(v, lv[0])] for v in lv[1:]]
            axis = next(i for i, x in enumerate(k_edges[0]) if x)
            factor = l_edges[0][axis] / k_edges[0][axis]
            assert factor > 0
            assert l_edges == [[factor * x for x in edge] for edge in k_edges]

    def test_full_run_sizes(self):
        for inequality_id, per_dimension in (
            ("main-theorem", 300),
            ("corollary", 300),
            ("diskant", 200),
            ("inclusion-scaling", 200),
        ):
            dims = SUITE_DIMS.get(inequality_id, [2, 3])
            assert FULL_TRIALS[inequality_id] // len(dims) >= per_dimension
        assert SUITE_DIMS["simplex"] == [2, 3, 4]

    def test_unknown_id(self):
        with pytest.raises(ValueError):
            run_suite("brunn-minkowski", 1, [2], seed=0)
        with pytest.raises(ValueError):
            run_suite("corollary", 1, [], seed=0)

    def test_alexandrov_fenchel_needs_plane(self):
        with pytest.raises(MalformedQueryError):
            run_trial("alexandrov-fenchel", 0, 0, [1])

    def test_violations_are_collected(self):
        def violated(gen, trial):
            return InequalityReport("always-violated", 2, 1, {"n": gen.dim})

        with mock.patch.dict(TRIALS, {"always-violated": violated}):
            result = run_suite("always-violated", 3, [2], seed=0)
            assert len(result.violations) == 3
            assert not result.ok
            with pytest.raises(ViolationError) as excinfo:
                run_suite("always-violated", 3, [2], seed=0, strict=True)
            assert len(excinfo.value.reports) == 3
            assert excinfo.value.reports[0].digest in str(excinfo.value)

    def test_search_only_suite_never_fails(self):
        assert SEARCH_ONLY <= set(TRIALS)
        result = run_suite("discriminant-diagonal-constant-search", 10, [2, 3], seed=1, strict=True)
        assert result.ok
        assert not result.asserted

    def test_all_suites(self):
        for inequality_id in sorted(set(TRIALS) - SEARCH_ONLY):
            dims = SUITE_DIMS.get(inequality_id, [2, 3])
            trials = test_util.trials(FULL_TRIALS.get(inequality_id, 200), 2 * len(dims))
            result = run_suite(inequality_id, trials, dims, seed=2024, workers=2)
            assert len(result.reports) == trials
            assert result.ok, result.violations

    def test_oracles_agree_exactly(self):
        for inequality_id in ("mixed-volume-oracle", "mixed-discriminant-oracle"):
            result = run_suite(inequality_id, test_util.trials(100, 6), SUITE_DIMS[inequality_id], seed=5)
            assert all(report.lhs == 0 for report in result.reports)


class TestSurvey(unittest.TestCase):
    def test_segment_family(self):
        reports = segment_family("corollary")
        assert len(reports) == 3
        assert all(report.ratio == 1 and report.instance["family"] == "segments" for report in reports)
        assert segment_family("diskant") == []

    def test_corollary_minimum_is_sharp(self):
        summary = tightness_survey("corollary", test_util.trials(300, 10), [2, 3], seed=4)
        assert summary["min_ratio"] == "1"
        assert summary["violations"] == []
        assert Fraction(summary["median_ratio"]) >= 1
        assert summary["constants"]["3"] == {"current": 9, "previous": 243}

    def test_deterministic(self):
        with tempfile.TemporaryDirectory() as d:
            store = ResultsStore(os.path.join(d, "extremes.jsonl"))
            first = dump_summary(tightness_survey("log-concavity", 8, [2, 3], seed=3, store=store, workers=2))
            second = dump_summary(tightness_survey("log-concavity", 8, [2, 3], seed=3))
            assert first == second
            assert len(store.read()) <= 2
            assert json.loads(first)["instances"] == 8

    def test_compare_constants(self):
        comparison = compare_constants([1, 1], 2, test_util.trials(30, 4), seed=8)
        assert comparison["k"] == 1
        assert comparison["constant"] == "2"
        for key in ("polytope_min_ratio", "matrix_min_ratio"):
            assert comparison[key] is None or Fraction(comparison[key]) >= 1
        with pytest.raises(MalformedQueryError):
            compare_constants([3], 2, 1, seed=0)
        with pytest.raises(MalformedQueryError):
            compare_constants([1], 2, 0, seed=0)
