"""
Exact convex hulls of integer point sets.

This module is primarily a helper for :mod:`mixvol.geometry` and user code
should not use it directly. Points are integer tuples (callers clear
denominators first) so every predicate is an exact integer comparison.

Full-dimensional inputs go through quickhull: the boundary is kept as a
simplicial complex whose pieces may be coplanar, a point is only ever
inserted when some piece sees it strictly, and at the end coplanar pieces are
merged into facets. Lower-dimensional inputs are projected onto a coordinate
subspace in which they become full-dimensional.
"""

import itertools
import logging
from typing import (
    Dict,
    List,
    NamedTuple,
    Sequence,
    Set,
    Tuple,
)

from mixvol.geometry import linalg

log = logging.getLogger(__name__)

IntPoint = Tuple[int, ...]


class HullFacet(NamedTuple):
    normal: IntPoint
    offset: int
    vertices: Tuple[int, ...]


class HullResult(NamedTuple):
    """
    ``vertices`` and the vertex indices in ``facets`` index into the input
    point list. ``facets`` is empty unless ``affine_dim`` equals the ambient
    dimension.
    """

    affine_dim: int
    vertices: Tuple[int, ...]
    facets: Tuple[HullFacet, ...]


class _Piece:
    __slots__ = ("vertices", "normal", "offset", "outside")

    def __init__(self, vertices: Tuple[int, ...], normal: IntPoint, offset: int) -> None:
        self.vertices = vertices
        self.normal = normal
        self.offset = offset
        self.outside: List[int] = []

    def height(self, point: IntPoint) -> int:
        return _dot(self.normal, point) - self.offset

    def ridges(self) -> List[Tuple[int, ...]]:
        vs = self.vertices
        return [vs[:j] + vs[j + 1 :] for j in range(len(vs))]


def _dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def affine_basis(points: Sequence[IntPoint]) -> List[int]:
    """
    Indices of a maximal affinely independent subset, chosen greedily in
    input order starting with ``points[0]``.
    """
    base = points[0]
    n = len(base)
    chosen = [0]
    edges: List[List[int]] = []
    for i in range(1, len(points)):
        edge = [points[i][j] - base[j] for j in range(n)]
        if not any(edge):
            continue
        if linalg.rank(edges + [edge]) > len(edges):
            edges.append(edge)
            chosen.append(i)
            if len(edges) == n:
                break
    return chosen


def quickhull(points: Sequence[IntPoint]) -> HullResult:
    """
    Compute the extreme points (and, for full-dimensional input, the facets)
    of a list of distinct integer points.
    """
    n = len(points[0])
    if len(points) == 1:
        return HullResult(0, (0,), ())
    basis = affine_basis(points)
    d = len(basis) - 1
    if d < n:
        columns = _independent_columns(points, basis, d)
        projected = [tuple(p[c] for c in columns) for p in points]
        sub = quickhull(projected)
        return HullResult(d, sub.vertices, ())
    if n == 1:
        coords = [p[0] for p in points]
        lo = coords.index(min(coords))
        hi = coords.index(max(coords))
        facets = (
            HullFacet((-1,), -coords[lo], (lo,)),
            HullFacet((1,), coords[hi], (hi,)),
        )
        return HullResult(1, tuple(sorted((lo, hi))), facets)
    return _full_dimensional_hull(points, basis)


def _independent_columns(points: Sequence[IntPoint], basis: List[int], d: int) -> Tuple[int, ...]:
    n = len(points[0])
    base = points[basis[0]]
    edges = [[points[i][j] - base[j] for j in range(n)] for i in basis[1:]]
    for columns in itertools.combinations(range(n), d):
        if linalg.int_det([[row[c] for c in columns] for row in edges]) != 0:
            return columns
    raise AssertionError("affine basis without an independent coordinate frame")


def _full_dimensional_hull(points: Sequence[IntPoint], basis: List[int]) -> HullResult:
    n = len(points[0])
    # n+1 times the centroid of the starting simplex; stays interior as the hull grows
    interior = tuple(sum(points[i][j] for i in basis) for j in range(n))
    weight = n + 1

    pieces: Dict[int, _Piece] = {}
    ridges: Dict[Tuple[int, ...], List[int]] = {}
    counter = itertools.count()

    def add_piece(vertices: Tuple[int, ...]) -> int:
        normal = linalg.hyperplane_normal([points[i] for i in vertices])
        offset = _dot(normal, points[vertices[0]])
        side = _dot(normal, interior) - weight * offset
        if side > 0:
            normal = tuple(-x for x in normal)
            offset = -offset
        elif side == 0:
            raise AssertionError(f"flat simplex {vertices} in hull boundary")
        piece_id = next(counter)
        pieces[piece_id] = _Piece(vertices, normal, offset)
        for ridge in pieces[piece_id].ridges():
            ridges.setdefault(ridge, []).append(piece_id)
        return piece_id

    def remove_piece(piece_id: int) -> None:
        piece = pieces.pop(piece_id)
        for ridge in piece.ridges():
            owners = ridges[ridge]
            owners.remove(piece_id)
            if not owners:
                del ridges[ridge]

    simplex = sorted(basis)
    for skip in range(n + 1):
        add_piece(tuple(simplex[:skip] + simplex[skip + 1 :]))

    in_simplex = set(simplex)
    for i in range(len(points)):
        if i in in_simplex:
            continue
        for piece in pieces.values():
            if piece.height(points[i]) > 0:
                piece.outside.append(i)
                break

    while True:
        pending = [pid for pid, piece in pieces.items() if piece.outside]
        if not pending:
            break
        start = pieces[min(pending)]
        apex = max(start.outside, key=lambda i: (start.height(points[i]), -i))
        apex_point = points[apex]

        visible: Set[int] = {min(pending)}
        hidden: Set[int] = set()
        stack = [min(pending)]
        while stack:
            current = stack.pop()
            for ridge in pieces[current].ridges():
                for neighbour in ridges[ridge]:
                    if neighbour in visible or neighbour in hidden:
                        continue
                    if pieces[neighbour].height(apex_point) > 0:
                        visible.add(neighbour)
                        stack.append(neighbour)
                    else:
                        hidden.add(neighbour)

        horizon = []
        orphans = []
        for pid in sorted(visible):
            piece = pieces[pid]
            orphans.extend(i for i in piece.outside if i != apex)
            for ridge in piece.ridges():
                if any(owner not in visible for owner in ridges[ridge]):
                    horizon.append(ridge)
        for pid in sorted(visible):
            remove_piece(pid)
        created = [add_piece(tuple(sorted(ridge + (apex,)))) for ridge in horizon]
        for i in orphans:
            for pid in created:
                if pieces[pid].height(points[i]) > 0:
                    pieces[pid].outside.append(i)
                    break

    log.debug("Hull of %d points in dimension %d: %d boundary simplices", len(points), n, len(pieces))
    return _merge_pieces(points, list(pieces.values()))


def _merge_pieces(points: Sequence[IntPoint], pieces: List[_Piece]) -> HullResult:
    n = len(points[0])
    planes: Dict[Tuple[IntPoint, int], None] = {}
    candidates: Set[int] = set()
    for piece in pieces:
        planes[(piece.normal, piece.offset)] = None
        candidates.update(piece.vertices)

    incident: Dict[Tuple[IntPoint, int], List[int]] = {plane: [] for plane in planes}
    extreme = []
    for i in sorted(candidates):
        active = [plane for plane in planes if _dot(plane[0], points[i]) == plane[1]]
        if len(active) >= n and linalg.rank([list(plane[0]) for plane in active]) == n:
            extreme.append(i)
            for plane in active:
                incident[plane].append(i)

    facets = tuple(
        HullFacet(normal, offset, tuple(incident[(normal, offset)])) for normal, offset in sorted(planes)
    )
    return HullResult(n, tuple(extreme), facets)
