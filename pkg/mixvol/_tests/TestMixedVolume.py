import itertools
import unittest
from fractions import Fraction

import pytest

import mixvol
from mixvol import (
    DimensionMismatchError,
    MalformedQueryError,
)
from mixvol.geometry import (
    box,
    minkowski_sum,
    scale,
    segment,
    standard_simplex,
    translate,
    unit_cube,
    volume,
)
from mixvol.harness.generators import (
    InstanceGenerator,
    trial_seed,
)
from mixvol.mixed_volume import (
    mixed_volume,
    mixed_volume_by_interpolation,
    mixed_volume_of,
    MixedVolumeQuery,
)
from mixvol.multilinear import (
    bezout_constant,
    compositions,
    sub_multisets,
    validate_bezout_multiplicities,
)
from . import test_util

mixvol.set_stream_logger("test", level="INFO")

E1 = segment((0, 0), (1, 0))
E2 = segment((0, 0), (0, 1))


class TestMultilinear(unittest.TestCase):
    def test_sub_multisets(self):
        assert sub_multisets([1, 1]) == [(0, 1), (1, 0), (1, 1)]
        assert len(sub_multisets([2, 1, 3])) == 3 * 2 * 4 - 1

    def test_compositions(self):
        assert list(compositions(2, 2)) == [(2, 0), (1, 1), (0, 2)]
        assert len(list(compositions(4, 3))) == 15

    def test_bezout_constant(self):
        assert bezout_constant(2, [1, 1], 1) == 2
        assert bezout_constant(4, [1, 2], 1) == 6
        assert bezout_constant(4, [1, 2], 2) == 4

    def test_validate_multiplicities(self):
        validate_bezout_multiplicities(3, [1, 2], 2)
        for a, k in (([], 1), ([0, 1], 1), ([2, 2], 1), ([1, 1], 3), ([1], 0)):
            with pytest.raises(MalformedQueryError):
                validate_bezout_multiplicities(3, a, k)


class TestMixedVolumeQuery(unittest.TestCase):
    def test_multiplicities_must_sum_to_dimension(self):
        with pytest.raises(MalformedQueryError):
            MixedVolumeQuery([(E1, 1)])
        with pytest.raises(MalformedQueryError):
            MixedVolumeQuery([(E1, 3), (E2, -1)])
        with pytest.raises(MalformedQueryError):
            MixedVolumeQuery([])

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            MixedVolumeQuery([(E1, 1), (unit_cube(3), 1)])

    def test_distinct_merges_entries(self):
        query = MixedVolumeQuery([(E1, 1), (E2, 0), (E1, 1)])
        assert query.distinct() == ([E1], [2])
        assert query.flattened() == (E1, E1)


class TestMixedVolume(unittest.TestCase):
    def test_single_body_is_volume(self):
        body = box([0, 0, 0], [1, 2, "1/2"])
        assert mixed_volume(MixedVolumeQuery([(body, 3)])) == 1
        assert mixed_volume_by_interpolation(MixedVolumeQuery([(body, 3)])) == 1

    def test_orthogonal_segments(self):
        assert mixed_volume(MixedVolumeQuery.of(E1, E2)) == Fraction(1, 2)
        assert mixed_volume_by_interpolation(MixedVolumeQuery.of(E1, E2)) == Fraction(1, 2)

    def test_square_and_simplex(self):
        square, simplex = unit_cube(2), standard_simplex(2)
        assert mixed_volume(MixedVolumeQuery.of(square, simplex)) == 1
        two_v = volume(minkowski_sum(square, simplex)) - volume(square) - volume(simplex)
        assert two_v == 2

    def test_simplex_with_itself(self):
        for n in (2, 3):
            simplex = standard_simplex(n)
            query = MixedVolumeQuery([(simplex, 1) for _ in range(n)])
            assert mixed_volume(query) == Fraction(1, 2 if n == 2 else 6)
            assert mixed_volume_by_interpolation(query) == volume(simplex)

    def test_box_mixed_volume(self):
        # V(B_1, ..., B_n) of axis boxes is the permanent of the side lengths over n!
        sides = [(1, 2, 3), (2, 1, 1), (1, 1, 2)]
        boxes = [box([0, 0, 0], list(s)) for s in sides]
        permanent = sum(
            sides[0][p[0]] * sides[1][p[1]] * sides[2][p[2]] for p in itertools.permutations(range(3))
        )
        assert mixed_volume(MixedVolumeQuery.of(*boxes)) == Fraction(permanent, 6)

    def test_workers_do_not_change_result(self):
        gen = InstanceGenerator(trial_seed(1, 0), 3)
        query = MixedVolumeQuery([(gen.body(), 1), (gen.body(), 1), (gen.body(), 1)])
        assert mixed_volume(query, workers=4) == mixed_volume(query)

    def test_agrees_with_interpolation(self):
        for trial in range(test_util.trials(100, 12)):
            n = 2 + trial % 3
            gen = InstanceGenerator(trial_seed(2024, trial), n)
            a = gen.multiplicities(n)
            a[-1] += n - sum(a)
            query = MixedVolumeQuery([(gen.body(), multiplicity) for multiplicity in a])
            assert mixed_volume(query) == mixed_volume_by_interpolation(query)


class TestMixedVolumeProperties(unittest.TestCase):
    def setUp(self):
        gen = InstanceGenerator(trial_seed(99, 0), 3)
        self.k, self.l, self.m = gen.body(full=True), gen.body(full=True), gen.body()

    def test_symmetric(self):
        values = {mixed_volume(MixedVolumeQuery.of(*p)) for p in itertools.permutations((self.k, self.l, self.m))}
        assert len(values) == 1

    def test_translation_invariant(self):
        shifted = translate(self.k, [1, Fraction(-2, 3), 5])
        assert mixed_volume_of((shifted, 1), (self.l, 2)) == mixed_volume_of((self.k, 1), (self.l, 2))

    def test_homogeneous(self):
        t = Fraction(3, 2)
        assert mixed_volume_of((scale(self.k, t), 2), (self.l, 1)) == t**2 * mixed_volume_of((self.k, 2), (self.l, 1))

    def test_additive(self):
        total = minkowski_sum(self.k, self.m)
        assert mixed_volume_of((total, 1), (self.l, 2)) == mixed_volume_of((self.k, 1), (self.l, 2)) + mixed_volume_of(
            (self.m, 1), (self.l, 2)
        )

    def test_monotone(self):
        bigger = minkowski_sum(self.k, unit_cube(3))
        assert mixed_volume_of((self.k, 1), (self.l, 2)) <= mixed_volume_of((bigger, 1), (self.l, 2))

    def test_non_negative_and_positive_on_spanning_segments(self):
        e = [segment((0, 0, 0), tuple(int(i == j) for j in range(3))) for i in range(3)]
        assert mixed_volume(MixedVolumeQuery.of(*e)) == Fraction(1, 6)
        flat = mixed_volume(MixedVolumeQuery.of(e[0], e[0], e[1]))
        assert flat == 0

    def test_log_concave_sequence(self):
        n = 3
        values = [mixed_volume_of((self.k, j), (self.l, n - j)) for j in range(n + 1)]
        for j in range(1, n):
            assert values[j] ** 2 >= values[j - 1] * values[j + 1]

    def test_memoized_shorthand_matches(self):
        assert mixed_volume_of((self.l, 2), (self.k, 1)) == mixed_volume(MixedVolumeQuery([(self.k, 1), (self.l, 2)]))
