"""
Exact vertex-representation polytope arithmetic.

All coordinates are ``fractions.Fraction``; no operation in this package
rounds. Points and segments are legal bodies everywhere except where a
full-dimensional body is explicitly required (facet enumeration and the
operations built on it).
"""

import functools
import json
import logging
import math
from fractions import Fraction
from typing import (
    Any,
    Dict,
    Iterable,
    List,
    NamedTuple,
    Optional,
    Sequence,
    Tuple,
)

from mixvol import (
    DegenerateBodyError,
    DimensionMismatchError,
    EmptyInputError,
)
from mixvol.geometry import (
    hull,
    linalg,
)
from mixvol.util import (
    as_rational,
    as_rational_tuple,
    format_rational,
    RationalLike,
)

log = logging.getLogger(__name__)

Point = Tuple[Fraction, ...]

__all__ = (
    "Point",
    "Facet",
    "VPolytope",
    "HPolytope",
    "convex_hull",
    "minkowski_sum",
    "scale",
    "translate",
    "volume",
    "facet_enumeration",
    "support_function",
    "contains",
    "affine_dimension",
    "standard_simplex",
    "unit_cube",
    "box",
    "segment",
    "zonotope",
    "is_centrally_symmetric",
    "load_polytope",
    "dump_polytope",
)


class Facet(NamedTuple):
    """
    A facet ``normal . x <= offset``. ``normal`` is a primitive integer
    vector; ``vertices`` are the body's vertices lying on the facet.
    """

    normal: Point
    offset: Fraction
    vertices: Tuple[Point, ...]


def dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def as_point(coords: Iterable[RationalLike]) -> Point:
    return as_rational_tuple(coords)


class VPolytope:
    """
    A convex polytope given by its vertices.

    Instances are immutable and canonical: the vertex tuple holds exactly the
    extreme points, sorted lexicographically, so two polytopes compare equal
    iff they have the same vertex set (translates are different polytopes).
    Building a ``VPolytope`` from arbitrary points computes their convex hull.
    """

    __slots__ = ("dim", "vertices", "affine_dim", "_facets", "_hash")

    dim: int
    vertices: Tuple[Point, ...]
    affine_dim: int
    _facets: Tuple[Facet, ...]
    _hash: int

    def __init__(self, dim: int, points: Iterable[Iterable[RationalLike]]) -> None:
        """
        :type dim: int
        :param dim: ambient dimension n

        :type points: list
        :param points: non-empty list of points, each a sequence of ``n``
          rationals (``Fraction``, ``int`` or ``"p/q"`` strings)
        """
        pts = [as_point(p) for p in points]
        if not pts:
            raise EmptyInputError("A polytope needs at least one point")
        for p in pts:
            if len(p) != dim:
                raise DimensionMismatchError(f"Point {_show(p)} does not have dimension {dim}")
        distinct = sorted(set(pts))
        denominator = math.lcm(*(c.denominator for p in distinct for c in p)) if dim else 1
        lattice = [tuple(int(c * denominator) for c in p) for p in distinct]
        result = hull.quickhull(lattice)
        vertices = tuple(distinct[i] for i in result.vertices)
        facets = tuple(
            Facet(
                tuple(Fraction(x) for x in f.normal),
                Fraction(f.offset, denominator),
                tuple(distinct[i] for i in f.vertices),
            )
            for f in result.facets
        )
        self._init(dim, vertices, result.affine_dim, facets)

    def _init(self, dim: int, vertices: Tuple[Point, ...], affine_dim: int, facets: Tuple[Facet, ...]) -> None:
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "affine_dim", affine_dim)
        object.__setattr__(self, "_facets", facets)
        object.__setattr__(self, "_hash", hash((dim, vertices)))

    @classmethod
    def _from_canonical(
        cls, dim: int, vertices: Tuple[Point, ...], affine_dim: int, facets: Tuple[Facet, ...]
    ) -> "VPolytope":
        polytope = cls.__new__(cls)
        polytope._init(dim, vertices, affine_dim, facets)
        return polytope

    def __setattr__(self, name: str, value: Any) -> None:
        raise AttributeError("VPolytope is immutable")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, VPolytope):
            return NotImplemented
        return self.dim == other.dim and self.vertices == other.vertices

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"VPolytope({self.dim}, [{', '.join(_show(v) for v in self.vertices)}])"

    @property
    def is_full_dimensional(self) -> bool:
        return self.affine_dim == self.dim

    @property
    def is_point(self) -> bool:
        return len(self.vertices) == 1

    def to_dict(self) -> Dict[str, Any]:
        return {
            "dim": self.dim,
            "vertices": [[format_rational(c) for c in v] for v in self.vertices],
        }

    def to_json(self) -> str:
        """
        Return a JSON dump of this polytope in the polytope file format.
        """
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "VPolytope":
        try:
            dim = int(data["dim"])
            vertices = data["vertices"]
        except (KeyError, TypeError):
            raise ValueError("not a polytope document: expected 'dim' and 'vertices'")
        return cls(dim, vertices)

    @classmethod
    def from_json(cls, jdef: str) -> "VPolytope":
        """
        Build a polytope from a JSON document ``{"dim": n, "vertices": [...]}``.
        Redundant points are removed.
        """
        return cls.from_dict(json.loads(jdef))


class HPolytope(NamedTuple):
    """
    Facet representation ``{x : normal . x <= offset for every facet}``.
    """

    dim: int
    facets: Tuple[Facet, ...]

    def contains_point(self, point: Sequence[RationalLike]) -> bool:
        x = as_point(point)
        if len(x) != self.dim:
            raise DimensionMismatchError(f"Point {_show(x)} does not have dimension {self.dim}")
        return all(dot(f.normal, x) <= f.offset for f in self.facets)


def _show(point: Sequence[Fraction]) -> str:
    return "(" + ", ".join(format_rational(c) for c in point) + ")"


def _check_same_dim(*bodies: VPolytope) -> None:
    dims = {body.dim for body in bodies}
    if len(dims) > 1:
        raise DimensionMismatchError(f"Bodies of different dimensions: {sorted(dims)}")


def convex_hull(points: Sequence[Iterable[RationalLike]]) -> VPolytope:
    """
    Convex hull of a non-empty list of points of uniform dimension.

    :rtype: VPolytope
    :return: the canonical polytope whose vertices are the extreme points
      among ``points``, lexicographically ordered
    """
    pts = [as_point(p) for p in points]
    if not pts:
        raise EmptyInputError("Convex hull of an empty point list")
    dims = {len(p) for p in pts}
    if len(dims) > 1:
        raise DimensionMismatchError(f"Points of mixed dimensions: {sorted(dims)}")
    return VPolytope(dims.pop(), pts)


def affine_dimension(points: Sequence[Sequence[RationalLike]]) -> int:
    pts = [as_point(p) for p in points]
    if not pts:
        raise EmptyInputError("Affine dimension of an empty point list")
    base = pts[0]
    return linalg.rank([[c - b for c, b in zip(p, base)] for p in pts[1:]])


def translate(body: VPolytope, vector: Sequence[RationalLike]) -> VPolytope:
    v = as_point(vector)
    if len(v) != body.dim:
        raise DimensionMismatchError(f"Translation {_show(v)} does not have dimension {body.dim}")
    vertices = tuple(tuple(a + b for a, b in zip(p, v)) for p in body.vertices)
    facets = tuple(
        Facet(f.normal, f.offset + dot(f.normal, v), tuple(tuple(a + b for a, b in zip(p, v)) for p in f.vertices))
        for f in body._facets
    )
    return VPolytope._from_canonical(body.dim, vertices, body.affine_dim, facets)


def scale(body: VPolytope, t: RationalLike) -> VPolytope:
    """
    Dilate ``body`` about the origin by ``t >= 0``; ``t = 0`` gives the
    origin as a single-point polytope.
    """
    factor = as_rational(t)
    if factor < 0:
        raise ValueError(f"Scale factor must be >= 0 (got: {format_rational(factor)})")
    if factor == 1:
        return body
    if factor == 0:
        origin = tuple(Fraction(0) for _ in range(body.dim))
        return VPolytope._from_canonical(body.dim, (origin,), 0, ())
    vertices = tuple(tuple(c * factor for c in p) for p in body.vertices)
    facets = tuple(
        Facet(f.normal, f.offset * factor, tuple(tuple(c * factor for c in p) for p in f.vertices))
        for f in body._facets
    )
    return VPolytope._from_canonical(body.dim, vertices, body.affine_dim, facets)


def minkowski_sum(a: VPolytope, b: VPolytope) -> VPolytope:
    """
    Minkowski sum ``a + b``: the convex hull of all pairwise vertex sums.
    """
    _check_same_dim(a, b)
    if b.is_point:
        return translate(a, b.vertices[0])
    if a.is_point:
        return translate(b, a.vertices[0])
    if b.vertices < a.vertices:
        a, b = b, a
    return _minkowski_sum(a, b)


@functools.lru_cache(maxsize=2048)
def _minkowski_sum(a: VPolytope, b: VPolytope) -> VPolytope:
    sums = [tuple(x + y for x, y in zip(p, q)) for p in a.vertices for q in b.vertices]
    result = VPolytope(a.dim, sums)
    log.debug("Minkowski sum of %d and %d vertices has %d vertices", len(a.vertices), len(b.vertices), len(result.vertices))
    return result


def support_function(body: VPolytope, direction: Sequence[RationalLike]) -> Fraction:
    """
    ``h(body, d) = max over vertices v of v . d``.
    """
    d = as_point(direction)
    if len(d) != body.dim:
        raise DimensionMismatchError(f"Direction {_show(d)} does not have dimension {body.dim}")
    if not any(d):
        raise ValueError("Support function needs a non-zero direction")
    return max(dot(v, d) for v in body.vertices)


def facet_enumeration(body: VPolytope) -> HPolytope:
    """
    Irredundant facet list of a full-dimensional polytope, each normal a
    primitive integer vector, sorted by (normal, offset).
    """
    if not body.is_full_dimensional:
        raise DegenerateBodyError(
            f"Facet enumeration needs a full-dimensional body (affine dimension {body.affine_dim} < {body.dim})"
        )
    return HPolytope(body.dim, body._facets)


@functools.lru_cache(maxsize=4096)
def volume(body: VPolytope) -> Fraction:
    """
    Exact n-dimensional volume; zero for bodies of lower affine dimension.

    The body is split into pyramids over its facets with a common apex at the
    first vertex. A pyramid over a simplex facet is a simplex and is measured
    by a determinant; otherwise the facet is projected onto the coordinate
    hyperplane that drops the largest normal component, where its volume
    is computed recursively and corrected by that component (which keeps
    everything rational).
    """
    n = body.dim
    if body.affine_dim < n:
        return Fraction(0)
    if n == 1:
        return body.vertices[-1][0] - body.vertices[0][0]
    apex = body.vertices[0]
    simplex_scale = math.factorial(n)
    total = Fraction(0)
    for facet in body._facets:
        height = facet.offset - dot(facet.normal, apex)
        if height == 0:
            continue
        if len(facet.vertices) == n:
            edges = [[c - a for c, a in zip(v, apex)] for v in facet.vertices]
            total += abs(linalg.det(edges)) / simplex_scale
            continue
        drop = max(range(n), key=lambda j: (abs(facet.normal[j]), -j))
        shadow = VPolytope(n - 1, [v[:drop] + v[drop + 1 :] for v in facet.vertices])
        total += height * volume(shadow) / abs(facet.normal[drop]) / n
    return total


def contains(outer: VPolytope, inner: VPolytope) -> bool:
    """
    ``True`` iff ``inner`` is a subset of ``outer``.

    Full-dimensional ``outer`` is tested facet by facet; otherwise the hull
    of both vertex sets must equal ``outer``.
    """
    _check_same_dim(outer, inner)
    if outer.is_full_dimensional:
        h = facet_enumeration(outer)
        return all(h.contains_point(v) for v in inner.vertices)
    return VPolytope(outer.dim, outer.vertices + inner.vertices) == outer


def standard_simplex(n: int) -> VPolytope:
    """
    ``conv{0, e_1, ..., e_n}``.
    """
    points = [[0] * n]
    for i in range(n):
        e = [0] * n
        e[i] = 1
        points.append(e)
    return VPolytope(n, points)


def box(lows: Sequence[RationalLike], highs: Sequence[RationalLike]) -> VPolytope:
    lo = as_point(lows)
    hi = as_point(highs)
    if len(lo) != len(hi):
        raise DimensionMismatchError("Box corners of different dimensions")
    corners = [tuple(hi[j] if bits >> j & 1 else lo[j] for j in range(len(lo))) for bits in range(2 ** len(lo))]
    return VPolytope(len(lo), corners)


def unit_cube(n: int) -> VPolytope:
    return box([0] * n, [1] * n)


def segment(a: Sequence[RationalLike], b: Sequence[RationalLike]) -> VPolytope:
    pa, pb = as_point(a), as_point(b)
    if len(pa) != len(pb):
        raise DimensionMismatchError("Segment end points of different dimensions")
    return VPolytope(len(pa), [pa, pb])


def zonotope(generators: Sequence[Sequence[RationalLike]], base: Optional[Sequence[RationalLike]] = None) -> VPolytope:
    """
    The zonotope ``base + [0, g_1] + ... + [0, g_k]``.
    """
    gens = [as_point(g) for g in generators]
    if not gens and base is None:
        raise EmptyInputError("A zonotope needs a generator or a base point")
    n = len(gens[0]) if gens else len(base)  # type: ignore[arg-type]
    origin = tuple(Fraction(0) for _ in range(n))
    result = VPolytope(n, [as_point(base) if base is not None else origin])
    for g in gens:
        result = minkowski_sum(result, segment(origin, g))
    return result


def is_centrally_symmetric(body: VPolytope) -> bool:
    """
    ``True`` iff the vertex set is symmetric about its centroid. Every
    zonotope is centrally symmetric; in the plane the converse holds too.
    """
    count = len(body.vertices)
    doubled_center = tuple(2 * sum(v[j] for v in body.vertices) / count for j in range(body.dim))
    mirrored = {tuple(c - x for c, x in zip(doubled_center, v)) for v in body.vertices}
    return mirrored == set(body.vertices)


def load_polytope(path: str) -> VPolytope:
    with open(path, encoding="utf-8") as f:
        return VPolytope.from_json(f.read())


def dump_polytope(body: VPolytope, path: str) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(body.to_json())
        f.write("\n")
