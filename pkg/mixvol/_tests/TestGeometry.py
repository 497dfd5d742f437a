import os
import tempfile
import unittest
from fractions import Fraction

import numpy as np
import pytest

import mixvol
from mixvol import (
    DegenerateBodyError,
    DimensionMismatchError,
    EmptyInputError,
)
from mixvol.geometry import (
    affine_dimension,
    box,
    contains,
    convex_hull,
    dump_polytope,
    facet_enumeration,
    is_centrally_symmetric,
    load_polytope,
    minkowski_sum,
    scale,
    segment,
    standard_simplex,
    support_function,
    translate,
    unit_cube,
    volume,
    VPolytope,
    zonotope,
)
from . import test_util

mixvol.set_stream_logger("test", level="INFO")


def random_points(rng: np.random.Generator, count: int, dim: int, bound: int = 6, q: int = 2):
    return [tuple(Fraction(int(x), q) for x in rng.integers(-bound, bound + 1, size=dim)) for _ in range(count)]


class TestVPolytope(unittest.TestCase):
    def test_canonical_vertices(self):
        square = VPolytope(2, [[1, 1], [0, 0], ["1/2", "1/2"], [0, 1], [1, 0], [1, "1/2"]])
        assert square.vertices == ((0, 0), (0, 1), (1, 0), (1, 1))
        assert square == unit_cube(2)
        assert hash(square) == hash(unit_cube(2))
        assert square.is_full_dimensional

    def test_immutable(self):
        square = unit_cube(2)
        with pytest.raises(AttributeError):
            square.dim = 3  # type: ignore[misc]

    def test_errors(self):
        with pytest.raises(EmptyInputError):
            convex_hull([])
        with pytest.raises(DimensionMismatchError):
            convex_hull([[0, 0], [1, 0, 0]])
        with pytest.raises(TypeError):
            VPolytope(1, [[0.5]])

    def test_degenerate_bodies(self):
        s = segment((0, 0), (2, 1))
        assert s.affine_dim == 1
        assert not s.is_full_dimensional
        assert len(s.vertices) == 2
        collinear = VPolytope(2, [[0, 0], [1, 1], [2, 2], [3, 3]])
        assert collinear.vertices == ((0, 0), (3, 3))
        point = VPolytope(3, [[1, 2, 3], [1, 2, 3]])
        assert point.is_point
        assert point.affine_dim == 0

    def test_one_dimensional(self):
        interval = VPolytope(1, [[3], [0], [1], ["5/2"]])
        assert interval.vertices == ((0,), (3,))
        assert volume(interval) == 3

    def test_hull_idempotent(self):
        rng = np.random.default_rng(7)
        for dim in (2, 3):
            body = convex_hull(random_points(rng, 12, dim))
            assert convex_hull(list(body.vertices)) == body

    def test_hull_against_lp_oracle(self):
        rng = np.random.default_rng(11)
        points = random_points(rng, 15, 3)
        body = convex_hull(points)
        vertices = list(body.vertices)
        for v in vertices:
            others = [p for p in vertices if p != v]
            assert not test_util.in_hull(v, others)
        for p in points:
            assert test_util.in_hull(p, vertices)

    def test_affine_dimension(self):
        assert affine_dimension([[0, 0, 0], [1, 0, 0], [2, 0, 0]]) == 1
        assert affine_dimension([[0, 0, 0], [1, 0, 0], [0, 1, 0], [1, 1, 0]]) == 2
        assert affine_dimension([[1, 1]]) == 0


class TestMinkowski(unittest.TestCase):
    def test_segments_sum_to_square(self):
        total = minkowski_sum(segment((0, 0), (1, 0)), segment((0, 0), (0, 1)))
        assert total == unit_cube(2)

    def test_commutative_and_associative(self):
        rng = np.random.default_rng(3)
        a, b, c = (convex_hull(random_points(rng, 6, 2)) for _ in range(3))
        assert minkowski_sum(a, b) == minkowski_sum(b, a)
        assert minkowski_sum(minkowski_sum(a, b), c) == minkowski_sum(a, minkowski_sum(b, c))

    def test_point_summand_translates(self):
        square = unit_cube(2)
        shifted = minkowski_sum(square, VPolytope(2, [["1/2", -1]]))
        assert shifted == translate(square, ["1/2", -1])
        assert volume(shifted) == 1

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            minkowski_sum(unit_cube(2), unit_cube(3))

    def test_zonotope(self):
        assert zonotope([(1, 0), (0, 1)]) == unit_cube(2)
        hexagon = zonotope([(1, 0), (0, 1), (1, 1)], base=(-1, -1))
        assert len(hexagon.vertices) == 6
        assert is_centrally_symmetric(hexagon)
        assert not is_centrally_symmetric(standard_simplex(2))


class TestFacets(unittest.TestCase):
    def test_unit_square(self):
        h = facet_enumeration(unit_cube(2))
        assert {(f.normal, f.offset) for f in h.facets} == {
            ((-1, 0), 0),
            ((1, 0), 1),
            ((0, -1), 0),
            ((0, 1), 1),
        }

    def test_simplex(self):
        h = facet_enumeration(standard_simplex(3))
        assert len(h.facets) == 4
        assert ((1, 1, 1), 1) in {(f.normal, f.offset) for f in h.facets}

    def test_against_exhaustive_search(self):
        rng = np.random.default_rng(5)
        for dim, count in ((2, 10), (3, 20), (4, 12)):
            body = convex_hull(random_points(rng, count, dim))
            if not body.is_full_dimensional:
                continue
            found = {(f.normal, f.offset) for f in facet_enumeration(body).facets}
            assert found == test_util.brute_force_facets(body)

    @test_util.skip_unless_full_suite()
    def test_against_exhaustive_search_in_five_dimensions(self):
        rng = np.random.default_rng(23)
        body = convex_hull(random_points(rng, 14, 5))
        found = {(f.normal, f.offset) for f in facet_enumeration(body).facets}
        assert found == test_util.brute_force_facets(body)

    def test_round_trip_containment(self):
        rng = np.random.default_rng(13)
        points = random_points(rng, 20, 3)
        body = convex_hull(points)
        h = facet_enumeration(body)
        for p in points:
            assert h.contains_point(p)
        for p in random_points(rng, 30, 3, bound=9, q=3):
            assert h.contains_point(p) == test_util.in_hull(p, list(body.vertices))

    def test_degenerate_refused(self):
        with pytest.raises(DegenerateBodyError):
            facet_enumeration(segment((0, 0), (1, 1)))


class TestVolume(unittest.TestCase):
    def test_simplex(self):
        assert volume(standard_simplex(2)) == Fraction(1, 2)
        assert volume(standard_simplex(3)) == Fraction(1, 6)
        assert volume(standard_simplex(4)) == Fraction(1, 24)
        assert volume(standard_simplex(5)) == Fraction(1, 120)

    def test_boxes(self):
        assert volume(box([0, 0, 0], [1, 2, 3])) == 6
        assert volume(box(["-1/2", 0], ["1/2", "1/3"])) == Fraction(1, 3)

    def test_lower_dimensional(self):
        assert volume(segment((0, 0), (3, 4))) == 0
        assert volume(VPolytope(3, [[0, 0, 0], [1, 0, 0], [0, 1, 0]])) == 0

    def test_non_simplicial_facets(self):
        octahedron = VPolytope(3, [[1, 0, 0], [-1, 0, 0], [0, 1, 0], [0, -1, 0], [0, 0, 1], [0, 0, -1]])
        assert volume(octahedron) == Fraction(4, 3)
        assert volume(unit_cube(4)) == 1
        prism = VPolytope(3, [[0, 0, 0], [2, 0, 0], [0, 1, 0], [0, 0, 3], [2, 0, 3], [0, 1, 3]])
        assert volume(prism) == 3

    def test_scaling_and_translation(self):
        rng = np.random.default_rng(17)
        for dim in (2, 3):
            body = convex_hull(random_points(rng, 9, dim))
            for t in (Fraction(0), Fraction(1, 3), Fraction(2), Fraction(5, 2)):
                assert volume(scale(body, t)) == t**dim * volume(body)
            assert volume(translate(body, [Fraction(1, 7)] * dim)) == volume(body)

    def test_negative_scale(self):
        with pytest.raises(ValueError):
            scale(unit_cube(2), -1)


class TestSupportFunction(unittest.TestCase):
    def test_values(self):
        assert support_function(unit_cube(2), (1, 0)) == 1
        assert support_function(VPolytope(2, [[3, "1/2"]]), (2, -2)) == 5

    def test_additive(self):
        rng = np.random.default_rng(19)
        a = convex_hull(random_points(rng, 7, 3))
        b = convex_hull(random_points(rng, 7, 3))
        total = minkowski_sum(a, b)
        for d in random_points(rng, 10, 3):
            if any(d):
                assert support_function(total, d) == support_function(a, d) + support_function(b, d)

    def test_zero_direction(self):
        with pytest.raises(ValueError):
            support_function(unit_cube(2), (0, 0))


class TestContains(unittest.TestCase):
    def test_full_dimensional_outer(self):
        assert contains(box([0, 0], [2, 2]), standard_simplex(2))
        assert not contains(standard_simplex(2), unit_cube(2))

    def test_lower_dimensional_outer(self):
        outer = segment((0, 0), (2, 2))
        assert contains(outer, segment((1, 1), ("3/2", "3/2")))
        assert not contains(outer, segment((1, 1), (1, 2)))


class TestPolytopeFiles(unittest.TestCase):
    def test_json_round_trip(self):
        body = VPolytope(2, [["1/2", 0], [3, "-2/4"], [0, 5]])
        document = body.to_dict()
        assert document["vertices"][0] == ["0", "5"]
        assert "-1/2" in document["vertices"][2]
        assert VPolytope.from_json(body.to_json()) == body

    def test_load_and_dump(self):
        body = standard_simplex(3)
        with tempfile.TemporaryDirectory() as d:
            path = os.path.join(d, "simplex.json")
            dump_polytope(body, path)
            assert load_polytope(path) == body

    def test_malformed_document(self):
        with pytest.raises(ValueError):
            VPolytope.from_json('{"vertices": [[0]]}')
        for coordinate in ("0.5", "2e1", "1/2.0", " - 3"):
            with pytest.raises(ValueError):
                VPolytope.from_json('{"dim": 2, "vertices": [["' + coordinate + '", "0"], ["1", "1"]]}')
        assert VPolytope.from_json('{"dim": 1, "vertices": [[" -3 "], ["+7/2"]]}') == segment((-3,), ("7/2",))
