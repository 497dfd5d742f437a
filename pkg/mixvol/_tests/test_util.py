""" General support infrastructure not tied to any particular test.

Brute-force oracles that share as little code as possible with the
library paths they check.
"""

import itertools
import math
import os
import unittest
from fractions import Fraction
from typing import (
    Callable,
    Iterable,
    List,
    Optional,
    Sequence,
    Set,
    Tuple,
)

from mixvol import InfeasibleProblem
from mixvol.geometry import (
    contains,
    dot,
    linalg,
    scale,
    translate,
    VPolytope,
)
from mixvol.geometry.linalg import hyperplane_normal
from mixvol.inradius.lp import (
    LinearProgram,
    solve_lp,
)

MIXVOL_TEST_SUITE = os.environ.get("MIXVOL_TEST_SUITE", "quick")


def trials(full: int, quick: Optional[int] = None) -> int:
    """
    Trial count for a randomized test: ``full`` under
    ``MIXVOL_TEST_SUITE=full``, otherwise ``quick`` (a tenth by default).
    """
    if MIXVOL_TEST_SUITE == "full":
        return full
    return quick if quick is not None else max(1, full // 10)


def skip_unless_full_suite() -> Callable:
    """Decorate slow tests with this to only run them in the full suite."""
    if MIXVOL_TEST_SUITE != "full":
        return unittest.skip("Slow test; set MIXVOL_TEST_SUITE=full to run it.")
    return lambda f: f


def brute_force_facets(body: VPolytope) -> Set[Tuple[Tuple[Fraction, ...], Fraction]]:
    """
    ``(normal, offset)`` of every facet of a full-dimensional body, found by
    trying the hyperplane through every ``n``-subset of vertices.
    """
    n = body.dim
    denominator = math.lcm(*(c.denominator for v in body.vertices for c in v))
    lattice = [tuple(int(c * denominator) for c in v) for v in body.vertices]
    found = set()
    for subset in itertools.combinations(range(len(lattice)), n):
        normal = hyperplane_normal([lattice[i] for i in subset])
        if not any(normal):
            continue
        values = [sum(a * b for a, b in zip(normal, p)) for p in lattice]
        top = values[subset[0]]
        if all(v <= top for v in values):
            oriented = normal
        elif all(v >= top for v in values):
            oriented = tuple(-a for a in normal)
        else:
            continue
        rational = tuple(Fraction(a) for a in oriented)
        found.add((rational, dot(rational, body.vertices[subset[0]])))
    return found


def in_hull(point: Sequence[Fraction], points: Sequence[Sequence[Fraction]]) -> bool:
    """
    Whether ``point`` is a convex combination of ``points``, decided by an LP
    feasibility problem over the combination weights.
    """
    m = len(points)
    constraints: List[Tuple[List[Fraction], Fraction]] = []
    for j, target in enumerate(point):
        row = [Fraction(p[j]) for p in points]
        constraints.append((row, Fraction(target)))
        constraints.append(([-x for x in row], -Fraction(target)))
    constraints.append(([Fraction(1)] * m, Fraction(1)))
    constraints.append(([Fraction(-1)] * m, Fraction(-1)))
    try:
        solve_lp(LinearProgram([0] * m, constraints, nonnegative=range(m)))
    except InfeasibleProblem:
        return False
    return True


def grid_inradius(k: VPolytope, l: VPolytope, candidates: Iterable[Fraction], step: Fraction) -> Fraction:
    """
    The largest candidate ``lambda`` for which some translate of
    ``lambda L`` on the grid ``step Z^n`` fits in ``K``. A lower bound for the
    inradius that is exact when an optimal translate lies on the grid.
    """
    lows = [min(v[j] for v in k.vertices) for j in range(k.dim)]
    highs = [max(v[j] for v in k.vertices) for j in range(k.dim)]
    best = Fraction(0)
    for lam in sorted(candidates):
        placed = scale(l, lam)
        ranges = []
        for j in range(k.dim):
            low = lows[j] - max(v[j] for v in placed.vertices)
            high = highs[j] - min(v[j] for v in placed.vertices)
            ranges.append([step * i for i in range(math.floor(low / step), math.ceil(high / step) + 1)])
        if any(contains(k, translate(placed, t)) for t in itertools.product(*ranges)):
            best = lam
    return best


def vertex_enumeration_lp(lp: LinearProgram) -> Fraction:
    """
    Optimum of a bounded, feasible LP by trying every basis of tight
    constraints. Only for a handful of variables.
    """
    rows = [list(row) for row, _ in lp.constraints]
    rhs = [value for _, value in lp.constraints]
    for j in lp.nonnegative:
        e = [Fraction(0)] * lp.variables
        e[j] = Fraction(-1)
        rows.append(e)
        rhs.append(Fraction(0))
    best: Optional[Fraction] = None
    for basis in itertools.combinations(range(len(rows)), lp.variables):
        try:
            x = linalg.solve([rows[i] for i in basis], [rhs[i] for i in basis])
        except ZeroDivisionError:
            continue
        if all(dot(row, x) <= b for row, b in zip(rows, rhs)):
            value = dot(lp.objective, x)
            best = value if best is None or value > best else best
    assert best is not None, "no feasible vertex"
    return best
