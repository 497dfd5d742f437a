import unittest
from fractions import Fraction

import numpy as np
import pytest

import mixvol
from mixvol import (
    DimensionMismatchError,
    InfeasibleProblem,
    UnboundedProblem,
)
from mixvol.inradius.lp import (
    LinearProgram,
    solve_lp,
)
from . import test_util

mixvol.set_stream_logger("test", level="INFO")


class TestLinearProgram(unittest.TestCase):
    def test_single_bound(self):
        lp = LinearProgram([1], [([1], 3)])
        result = solve_lp(lp)
        assert result.value == 3
        assert result.solution == (3,)
        assert result.verify_certificate(lp)

    def test_square_cut(self):
        lp = LinearProgram([1, 1], [([1, 0], 1), ([0, 1], 1), ([1, 1], "3/2")])
        result = solve_lp(lp)
        assert result.value == Fraction(3, 2)
        assert result.value == test_util.vertex_enumeration_lp(lp)
        assert result.verify_certificate(lp)

    def test_infeasible(self):
        with pytest.raises(InfeasibleProblem):
            solve_lp(LinearProgram([1], [([1], 1), ([-1], -2)]))

    def test_unbounded(self):
        with pytest.raises(UnboundedProblem):
            solve_lp(LinearProgram([1], [([-1], 0)]))
        with pytest.raises(UnboundedProblem):
            solve_lp(LinearProgram([1, 0], [([0, 1], 1)], nonnegative=[0]))

    def test_free_variable_goes_negative(self):
        lp = LinearProgram([-1], [([-1], 2)])
        result = solve_lp(lp)
        assert result.solution == (-2,)
        assert result.value == 2
        assert result.verify_certificate(lp)

    def test_equality_pair(self):
        lp = LinearProgram([1, 0], [([1, 1], 1), ([-1, -1], -1), ([1, 0], "1/2")])
        result = solve_lp(lp)
        assert result.value == Fraction(1, 2)
        assert sum(result.solution) == 1
        assert result.verify_certificate(lp)

    def test_degenerate_cycling_example(self):
        # cycles under the largest-coefficient rule
        lp = LinearProgram(
            ["3/4", -150, "1/50", -6],
            [
                (["1/4", -60, "-1/25", 9], 0),
                (["1/2", -90, "-1/50", 3], 0),
                ([0, 0, 1, 0], 1),
            ],
            nonnegative=range(4),
        )
        result = solve_lp(lp)
        assert result.value == Fraction(1, 20)
        assert result.verify_certificate(lp)

    def test_certificate_rejects_tampering(self):
        lp = LinearProgram([1, 1], [([1, 0], 1), ([0, 1], 1)])
        result = solve_lp(lp)
        assert result.verify_certificate(lp)
        assert not result._replace(duals=(Fraction(2), Fraction(0))).verify_certificate(lp)
        assert not result._replace(solution=(Fraction(2), Fraction(0))).verify_certificate(lp)

    def test_random_against_vertex_enumeration(self):
        rng = np.random.default_rng(2)
        for _ in range(test_util.trials(60, 15)):
            n = int(rng.integers(2, 4))
            constraints = []
            for j in range(n):
                e = [0] * n
                e[j] = 1
                constraints.append((e, int(rng.integers(1, 6))))
                constraints.append(([-x for x in e], int(rng.integers(1, 6))))
            for _ in range(int(rng.integers(1, 5))):
                row = [Fraction(int(x), 2) for x in rng.integers(-4, 5, size=n)]
                constraints.append((row, int(rng.integers(-2, 6))))
            lp = LinearProgram([int(x) for x in rng.integers(-3, 4, size=n)], constraints)
            try:
                result = solve_lp(lp)
            except InfeasibleProblem:
                continue
            assert result.value == test_util.vertex_enumeration_lp(lp)
            assert result.verify_certificate(lp)

    def test_malformed(self):
        with pytest.raises(DimensionMismatchError):
            LinearProgram([1, 1], [([1], 1)])
        with pytest.raises(ValueError):
            LinearProgram([1], [([1], 1)], nonnegative=[3])
