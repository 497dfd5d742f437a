import unittest
from fractions import Fraction

import pytest

import mixvol
from mixvol import (
    DegenerateBodyError,
    DimensionMismatchError,
)
from mixvol.geometry import (
    box,
    scale,
    segment,
    standard_simplex,
    translate,
    unit_cube,
    VPolytope,
)
from mixvol.harness.generators import (
    InstanceGenerator,
    trial_seed,
)
from mixvol.harness.suites import run_suite
from mixvol.inradius import (
    check_diskant_bound,
    check_inclusion_scaling,
    check_reverse_kt_inradius,
    inradius,
)
from . import test_util

mixvol.set_stream_logger("test", level="INFO")

HEXAGON = VPolytope(2, [[2, 0], [1, 2], [-1, 2], [-2, 0], [-1, -2], [1, -2]])


class TestInradius(unittest.TestCase):
    def test_body_in_itself(self):
        for body in (unit_cube(3), standard_simplex(2), HEXAGON):
            result = inradius(body, body)
            assert result.lambda_star == 1
            assert result.verify(body, body)

    def test_dilate(self):
        assert inradius(scale(HEXAGON, 2), HEXAGON).lambda_star == 2

    def test_simplex_in_square(self):
        k = box([0, 0], [2, 2])
        l = standard_simplex(2)
        result = inradius(k, l)
        assert result.lambda_star == 2
        assert result.verify(k, l)
        candidates = [Fraction(i, 4) for i in range(1, 13)]
        assert test_util.grid_inradius(k, l, candidates, Fraction(1, 2)) == 2

    def test_grid_oracle_is_a_lower_bound(self):
        gen = InstanceGenerator(trial_seed(44, 0), 2)
        candidates = [Fraction(i, 2) for i in range(1, 9)]
        for _ in range(test_util.trials(20, 4)):
            k, l = gen.body(full=True), gen.body(full=True)
            assert test_util.grid_inradius(k, l, candidates, Fraction(1, 2)) <= inradius(k, l).lambda_star

    def test_segment_inside_square(self):
        square = unit_cube(2)
        assert inradius(square, segment((0, 0), (1, 1))).lambda_star == 1
        assert inradius(square, segment((0, 0), (2, 0))).lambda_star == Fraction(1, 2)

    def test_scaling_and_translation(self):
        gen = InstanceGenerator(trial_seed(45, 0), 3)
        k, l = gen.body(full=True), gen.body(full=True)
        r = inradius(k, l).lambda_star
        assert inradius(k, scale(l, 3)).lambda_star == r / 3
        assert inradius(translate(k, [1, 2, 3]), translate(l, [-1, 0, "1/2"])).lambda_star == r

    def test_degenerate_inputs(self):
        with pytest.raises(DegenerateBodyError):
            inradius(segment((0, 0), (1, 0)), unit_cube(2))
        with pytest.raises(DegenerateBodyError):
            inradius(unit_cube(2), VPolytope(2, [[1, 1]]))
        with pytest.raises(DimensionMismatchError):
            inradius(unit_cube(2), unit_cube(3))


class TestInradiusInequalities(unittest.TestCase):
    def test_diskant_same_body(self):
        for n in (2, 3):
            report = check_diskant_bound(unit_cube(n), unit_cube(n))
            assert report.lhs == Fraction(1, n)
            assert report.rhs == 1
            assert report.ratio == n

    def test_diskant_homothetic(self):
        l = standard_simplex(3)
        k = translate(scale(l, 3), [1, 1, 1])
        assert check_diskant_bound(k, l).holds

    def test_inclusion_same_body(self):
        report = check_inclusion_scaling(HEXAGON, HEXAGON)
        assert report.holds
        assert report.witness["factor"] == "2"

    def test_inclusion_thin_rectangle(self):
        report = check_inclusion_scaling(unit_cube(2), box([0, 0], [4, "1/4"]))
        assert report.holds
        assert report.rhs >= 1

    def test_reverse_kt_inradius_degenerate_k(self):
        report = check_reverse_kt_inradius(segment((0, 0), (1, 2)), HEXAGON, standard_simplex(2))
        assert report.holds

    def test_random_suites(self):
        for inequality_id, full in (("diskant", 400), ("inclusion-scaling", 400), ("reverse-kt-inradius", 400)):
            result = run_suite(inequality_id, test_util.trials(full, 10), [2, 3], seed=3)
            assert not result.violations
