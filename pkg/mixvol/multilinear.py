"""
Shared machinery for mixed volumes and mixed discriminants.

Both are the normalized coefficients of a homogeneous polynomial
``f(t_1, ..., t_r) = F(t_1 X_1 + ... + t_r X_r)`` of degree ``n``, where ``F``
is the volume (for bodies) or the determinant (for matrices). They can be read
off in two independent ways: by polarization over sub-multisets of the
flattened argument list, or by interpolating ``f`` on a grid.
"""

import itertools
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import (
    Callable,
    Iterator,
    List,
    Sequence,
    Tuple,
)

from mixvol import (
    InterpolationError,
    MalformedQueryError,
)
from mixvol.geometry import linalg

log = logging.getLogger(__name__)

Counts = Tuple[int, ...]


def sub_multisets(multiplicities: Sequence[int]) -> List[Counts]:
    """
    All count vectors ``c`` with ``0 <= c_j <= a_j`` except the zero vector,
    in lexicographic order.
    """
    return [c for c in itertools.product(*(range(a + 1) for a in multiplicities)) if any(c)]


def polarize(
    multiplicities: Sequence[int],
    evaluate: Callable[[Counts], Fraction],
    workers: int = 1,
) -> Fraction:
    """
    ``(1/n!) * sum over non-empty S of (-1)^(n-|S|) F(sum of X_i for i in S)``
    for the flattened argument list in which ``X_j`` appears ``a_j`` times.

    Subsets with the same count vector give the same sum, so each count vector
    ``c`` is evaluated once and weighted by ``prod C(a_j, c_j)``.

    :type evaluate: callable
    :param evaluate: maps a count vector ``c`` to ``F(c_1 X_1 + ... + c_r X_r)``

    :type workers: int
    :param workers: evaluate the count vectors on this many threads
    """
    n = sum(multiplicities)
    terms = sub_multisets(multiplicities)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            values = list(executor.map(evaluate, terms))
    else:
        values = [evaluate(c) for c in terms]
    total = Fraction(0)
    for c, value in zip(terms, values):
        weight = math.prod(math.comb(a, k) for a, k in zip(multiplicities, c))
        sign = -1 if (n - sum(c)) % 2 else 1
        total += sign * weight * value
    return total / math.factorial(n)


def compositions(n: int, parts: int) -> Iterator[Counts]:
    """
    All ``parts``-tuples of non-negative integers adding up to ``n``, in
    reverse lexicographic order.
    """
    if parts == 1:
        yield (n,)
        return
    for first in range(n, -1, -1):
        for rest in compositions(n - first, parts - 1):
            yield (first,) + rest


GRIDS: Tuple[Tuple[str, Callable[[int], int]], ...] = (
    ("t = i + 1", lambda i: i + 1),
    ("t = 2i + 1", lambda i: 2 * i + 1),
)


def interpolate_coefficient(
    multiplicities: Sequence[int],
    evaluate_at: Callable[[Tuple[int, ...]], Fraction],
) -> Fraction:
    """
    Recover the normalized coefficient of ``t^a`` in the degree-n homogeneous
    polynomial ``f`` by exact interpolation.

    ``f`` is evaluated at ``t_j = i_j + 1`` for every exponent vector ``i`` of
    degree ``n`` and the resulting square system is solved for all
    coefficients; if that system is singular the grid ``t_j = 2 i_j + 1`` is
    tried. The coefficient of ``t^a`` is divided by the multinomial
    ``n! / (a_1! ... a_r!)``.

    :raises InterpolationError: if both grids give a singular system
    """
    r = len(multiplicities)
    n = sum(multiplicities)
    exponents = list(compositions(n, r))
    target = exponents.index(tuple(multiplicities))
    for name, grid in GRIDS:
        points = [tuple(grid(i) for i in e) for e in exponents]
        matrix = [[Fraction(math.prod(t**k for t, k in zip(point, e))) for e in exponents] for point in points]
        try:
            coefficients = linalg.solve(matrix, [evaluate_at(point) for point in points])
        except ZeroDivisionError:
            log.warning("Interpolation grid %s is singular for exponents of degree %d in %d variables", name, n, r)
            continue
        multinomial = math.factorial(n) // math.prod(math.factorial(a) for a in multiplicities)
        return coefficients[target] / multinomial
    raise InterpolationError(f"Both interpolation grids are singular (degree {n}, {r} variables)")


def bezout_constant(n: int, multiplicities: Sequence[int], k_select: int) -> Fraction:
    """
    ``prod C(n, a_i) / C(n, a_k)`` for the 1-based selector ``k``: the
    constant on the bounding side of the Bezout-type inequalities once the
    selected binomial is moved across.
    """
    numerator = math.prod(math.comb(n, a) for a in multiplicities)
    return Fraction(numerator, math.comb(n, multiplicities[k_select - 1]))


def validate_bezout_multiplicities(n: int, multiplicities: Sequence[int], k_select: int) -> None:
    """
    :raises MalformedQueryError: unless every ``a_i`` is a positive integer,
      ``sum(a) <= n`` and ``1 <= k_select <= r``
    """
    if not multiplicities:
        raise MalformedQueryError("At least one multiplicity is needed")
    for a in multiplicities:
        if not isinstance(a, int) or isinstance(a, bool) or a < 1:
            raise MalformedQueryError(f"Multiplicities must be positive integers (got: {a!r})")
    if sum(multiplicities) > n:
        raise MalformedQueryError(f"Multiplicities add up to {sum(multiplicities)} > dimension {n}")
    if not 1 <= k_select <= len(multiplicities):
        raise MalformedQueryError(f"k_select must lie in 1..{len(multiplicities)} (got: {k_select})")
