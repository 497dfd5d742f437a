import itertools
import unittest
from fractions import Fraction

import pytest

import mixvol
from mixvol import (
    DimensionMismatchError,
    MalformedQueryError,
    ParseError,
    ZeroPolynomialError,
)
from mixvol.geometry import (
    standard_simplex,
    unit_cube,
    VPolytope,
)
from mixvol.harness import (
    InstanceGenerator,
    trial_seed,
)
from mixvol.newton import (
    bkk_bound,
    classical_bezout_bound,
    compare_bounds,
    LaurentPolynomial,
    newton_polytope,
    parse_laurent,
    parse_system,
)
from . import test_util

mixvol.set_stream_logger("test", level="INFO")

SQUARE_SIMPLEX = """
# unit square and standard simplex
x1*x2 + 2*x1 - x2 + 5
3*x1 + x2 - 1
"""


class TestParser(unittest.TestCase):
    def test_mixed_signs_and_negative_exponents(self):
        p = parse_laurent("3*x1^2*x2^-1 + 2 - x2")
        assert p.num_vars == 2
        assert p.coefficients() == {(2, -1): 3, (0, 0): 2, (0, 1): -1}

    def test_like_terms(self):
        assert parse_laurent("x1 + x1", num_vars=2).coefficients() == {(1, 0): 2}
        assert parse_laurent("x1*x1 - x1^2 + 1/2").coefficients() == {(0,): Fraction(1, 2)}
        assert parse_laurent("-x1 + 2/4 * x2^+3").coefficients() == {(1, 0): -1, (0, 3): Fraction(1, 2)}

    def test_zero_polynomial(self):
        with pytest.raises(ZeroPolynomialError):
            parse_laurent("x1^2 - x1^2")
        with pytest.raises(ZeroPolynomialError):
            parse_system("x1 + x2\nx2 - x2\n")

    def test_error_positions(self):
        with pytest.raises(ParseError) as excinfo:
            parse_laurent("x1 + $")
        assert (excinfo.value.line, excinfo.value.column) == (1, 6)
        with pytest.raises(ParseError) as excinfo:
            parse_laurent("x1 + * x2")
        assert excinfo.value.column == 6
        with pytest.raises(ParseError) as excinfo:
            parse_system("x1 + 1\n\nx1 +")
        assert (excinfo.value.line, excinfo.value.column) == (3, 5)
        assert "line 3" in str(excinfo.value)

    def test_bad_exponents_and_indices(self):
        for text in ("x1^1/2", "x1^", "x0", "2/0", "", "x1 x2"):
            with pytest.raises(ParseError):
                parse_laurent(text)
        with pytest.raises(ParseError):
            parse_laurent("x3 + 1", num_vars=2)

    def test_signs(self):
        assert parse_laurent("x1 + -2").coefficients() == {(1,): 1, (0,): -2}
        assert parse_laurent("x1 - -2/3*x1").coefficients() == {(1,): Fraction(5, 3)}
        assert parse_laurent("+3*x1").coefficients() == {(1,): 3}
        for text in ("--x1", "x1 + -x2", "x1 - +x2", "x1 + --2", "+x1", "-+x1"):
            with pytest.raises(ParseError):
                parse_laurent(text)
        with pytest.raises(ParseError) as excinfo:
            parse_laurent("--x1")
        assert excinfo.value.column == 3

    def test_system_dimension(self):
        system = parse_system("x1 + 1\nx3 - x2\n# comment only\n\nx2")
        assert [p.num_vars for p in system] == [3, 3, 3]
        assert len(parse_system("x1 + 1\nx1 - 1", num_vars=2)) == 2

    def test_str_reparses(self):
        p = parse_laurent("-3/2*x1^2*x2^-1 + 2 - x2 + x1")
        assert parse_laurent(str(p)) == p


class TestNewtonPolytope(unittest.TestCase):
    def test_affine_linear_is_simplex(self):
        assert newton_polytope(parse_laurent("2*x1 - x2 + 7*x3 + 1")).polytope == standard_simplex(3)

    def test_monomial_is_point(self):
        body = newton_polytope(parse_laurent("5*x1^2*x2^-3")).polytope
        assert body.is_point
        assert body.vertices == ((2, -3),)

    def test_triangle(self):
        assert newton_polytope(parse_laurent("x1^2 + x2^2 + 1")).polytope == VPolytope(2, [[2, 0], [0, 2], [0, 0]])

    def test_zero(self):
        with pytest.raises(ZeroPolynomialError):
            newton_polytope(LaurentPolynomial(2, []))

    def test_malformed_terms(self):
        with pytest.raises(DimensionMismatchError):
            LaurentPolynomial(2, [(1, [1, 2, 3])])


class TestBounds(unittest.TestCase):
    def test_generic_lines(self):
        system = parse_system("x1 + 2*x2 + 3\n2*x1 - x2 + 1")
        assert bkk_bound(system) == 1
        assert classical_bezout_bound(system) == 1
        comparison = compare_bounds(system)
        assert (comparison.bkk, comparison.classical_bezout) == (1, 1)
        assert comparison.paper_bound == 2

    def test_one_variable(self):
        assert bkk_bound([parse_laurent("x1^2 - 3*x1 + 1")]) == 2
        assert bkk_bound([parse_laurent("x1^2 + x1^-1")]) == 3

    def test_square_and_simplex(self):
        system = parse_system(SQUARE_SIMPLEX)
        assert newton_polytope(system[0]).polytope == unit_cube(2)
        assert bkk_bound(system) == 2
        assert classical_bezout_bound(system) == 2
        comparison = compare_bounds(system)
        assert comparison.to_dict() == {"bkk": 2, "classical": 2, "paper_bound": "4", "groups": [1, 1]}

    def test_grouped_system(self):
        system = parse_system("x1^2 + x2^2 + 1\n2*x1^2 - x2^2 + 3")
        comparison = compare_bounds(system, groups=[2])
        assert comparison.bkk == 4
        assert comparison.classical_bezout == 4
        assert comparison.paper_bound == 4
        assert comparison.groups == (2,)

    def test_grouping_contradicts_polytopes(self):
        system = parse_system(SQUARE_SIMPLEX)
        with pytest.raises(MalformedQueryError):
            compare_bounds(system, groups=[2])
        with pytest.raises(MalformedQueryError):
            compare_bounds(system, groups=[1, 2])
        with pytest.raises(MalformedQueryError):
            compare_bounds(system, groups=[0, 1])

    def test_system_shape(self):
        with pytest.raises(MalformedQueryError):
            bkk_bound(parse_system("x1 + x2 + 1"))
        with pytest.raises(MalformedQueryError):
            bkk_bound([])
        with pytest.raises(DimensionMismatchError):
            bkk_bound([parse_laurent("x1 + 1"), parse_laurent("x1 + x2")])

    def test_monomial_multiplication_and_permutation(self):
        for trial in range(test_util.trials(30, 5)):
            gen = InstanceGenerator(trial_seed(13, trial), 2 + trial % 2)
            system = gen.laurent_system()
            bound = bkk_bound(system)
            shifted = [system[0].multiply_by_monomial([gen.integer(-3, 3) for _ in range(gen.dim)])] + system[1:]
            assert bkk_bound(shifted) == bound
            assert {bkk_bound(list(p)) for p in itertools.permutations(system)} == {bound}

    def test_random_systems_respect_both_bounds(self):
        for trial in range(test_util.trials(100, 10)):
            gen = InstanceGenerator(trial_seed(101, trial), 2 + trial % 2)
            comparison = compare_bounds(gen.laurent_system())
            assert 0 <= comparison.bkk <= comparison.classical_bezout
            assert comparison.bkk <= comparison.paper_bound
