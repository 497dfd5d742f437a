"""
Bezout-type inequalities for mixed volumes.

Each check evaluates both sides exactly and returns an
:class:`~mixvol.report.InequalityReport` with the bounded side as ``lhs``.
Nothing here raises on a violated inequality; the suites decide what a
violation means.
"""

import math
from fractions import Fraction
from typing import (
    List,
    Sequence,
    Tuple,
    Union,
)

from mixvol import (
    DegenerateBodyError,
    DimensionMismatchError,
    MalformedQueryError,
)
from mixvol.geometry import (
    is_centrally_symmetric,
    standard_simplex,
    volume,
    VPolytope,
)
from mixvol.mixed_volume import mixed_volume_of
from mixvol.multilinear import (
    bezout_constant,
    validate_bezout_multiplicities,
)
from mixvol.report import InequalityReport

__all__ = (
    "check_main_theorem",
    "check_corollary",
    "check_reverse_kt",
    "check_simplex_inequality",
    "check_zonoid_constant",
    "check_log_concavity_form",
    "check_alexandrov_fenchel",
    "main_theorem_constant",
    "previous_corollary_constant",
)


def _dimension(*bodies: VPolytope) -> int:
    dims = {body.dim for body in bodies}
    if len(dims) != 1:
        raise DimensionMismatchError(f"Bodies of different dimensions: {sorted(dims)}")
    return dims.pop()


def _require_full(body: VPolytope, name: str) -> None:
    if not body.is_full_dimensional:
        raise DegenerateBodyError(f"{name} must be full-dimensional (affine dimension {body.affine_dim})")


def _require_count(r: int, n: int) -> None:
    if not 1 <= r <= n:
        raise MalformedQueryError(f"Need between 1 and {n} bodies K_i (got: {r})")


def main_theorem_constant(n: int, multiplicities: Sequence[int]) -> Fraction:
    """
    The best constant the main theorem offers over all choices of ``k``:
    ``min_k prod C(n, a_i) / C(n, a_k)``.
    """
    return min(bezout_constant(n, multiplicities, k) for k in range(1, len(multiplicities) + 1))


def previous_corollary_constant(n: int, r: int) -> int:
    """
    The older estimate ``n^r r^(r-1)`` for ``c_{n,r}`` that the ``n^(r-1)``
    corollary improves on.
    """
    return n**r * r ** (r - 1)


def check_main_theorem(
    bodies: Sequence[Tuple[VPolytope, int]], d: VPolytope, k_select: int
) -> InequalityReport:
    """
    ``C(n, a_k) V(K_1^{a_1}, ..., K_r^{a_r}, D^{n-|a|}) vol(D)^{r-1}
    <= prod C(n, a_i) V(K_i^{a_i}, D^{n-a_i})``.

    :type bodies: list of (VPolytope, int)
    :param bodies: the ``(K_i, a_i)`` with positive ``a_i``, ``|a| <= n``

    :type k_select: int
    :param k_select: 1-based index ``k`` of the binomial on the left
    """
    n = _dimension(d, *(body for body, _ in bodies))
    multiplicities = [a for _, a in bodies]
    validate_bezout_multiplicities(n, multiplicities, k_select)
    _require_full(d, "D")
    r = len(bodies)
    joint = mixed_volume_of(*bodies, (d, n - sum(multiplicities)))
    lhs = math.comb(n, multiplicities[k_select - 1]) * joint * volume(d) ** (r - 1)
    rhs = math.prod(math.comb(n, a) * mixed_volume_of((k, a), (d, n - a)) for k, a in bodies)
    instance = {"K": [k for k, _ in bodies], "a": multiplicities, "D": d, "k": k_select}
    return InequalityReport("main-theorem", lhs, rhs, instance)


def _one_each(bodies: Sequence[VPolytope], d: VPolytope) -> Tuple[int, Fraction, List[Fraction]]:
    n = _dimension(d, *bodies)
    _require_count(len(bodies), n)
    _require_full(d, "D")
    r = len(bodies)
    joint = mixed_volume_of(*((k, 1) for k in bodies), (d, n - r)) * volume(d) ** (r - 1)
    singles = [mixed_volume_of((k, 1), (d, n - 1)) for k in bodies]
    return n, joint, singles


def check_corollary(bodies: Sequence[VPolytope], d: VPolytope) -> InequalityReport:
    """
    ``V(K_1, ..., K_r, D^{n-r}) vol(D)^{r-1} <= n^{r-1} prod V(K_i, D^{n-1})``.
    """
    n, lhs, singles = _one_each(bodies, d)
    rhs = n ** (len(bodies) - 1) * math.prod(singles)
    return InequalityReport("corollary", lhs, rhs, {"K": list(bodies), "D": d})


def check_simplex_inequality(bodies: Sequence[VPolytope]) -> InequalityReport:
    """
    The corollary with ``D`` the standard simplex and constant 1.
    """
    if not bodies:
        raise MalformedQueryError("Need at least one body K_i")
    simplex = standard_simplex(bodies[0].dim)
    _, lhs, singles = _one_each(bodies, simplex)
    return InequalityReport("simplex", lhs, math.prod(singles), {"K": list(bodies)})


def check_zonoid_constant(bodies: Sequence[VPolytope], d: VPolytope) -> InequalityReport:
    """
    The corollary with constant ``r^r / r!`` for zonotopes ``K_i``.

    Only central symmetry of each ``K_i`` is checked. That is necessary for
    a zonotope in every dimension but sufficient only in the plane: from
    ``n = 3`` on it also admits bodies such as the octahedron, so callers
    pass zonotopes built as segment sums (``zonotope`` or
    ``InstanceGenerator.zonotope``).
    """
    for i, body in enumerate(bodies, start=1):
        if not is_centrally_symmetric(body):
            raise MalformedQueryError(f"K_{i} is not centrally symmetric, so not a zonotope")
    _, lhs, singles = _one_each(bodies, d)
    r = len(bodies)
    rhs = Fraction(r**r, math.factorial(r)) * math.prod(singles)
    return InequalityReport("zonoid", lhs, rhs, {"K": list(bodies), "D": d})


def check_reverse_kt(
    k: VPolytope, l: VPolytope, m: Union[VPolytope, Sequence[VPolytope]], power: int
) -> InequalityReport:
    """
    ``vol(L) V(K^k, M_1, ..., M_{n-k})
    <= C(n, k) V(K^k, L^{n-k}) V(L^k, M_1, ..., M_{n-k})``.

    :type m: VPolytope or list of VPolytope
    :param m: the ``n - k`` bodies ``M_i``; a single body stands for
      ``M_1 = ... = M_{n-k}``

    :type power: int
    :param power: ``k``, between 1 and ``n``
    """
    n = _dimension(k, l)
    if not 1 <= power <= n:
        raise MalformedQueryError(f"k must lie in 1..{n} (got: {power})")
    forms = [m] * (n - power) if isinstance(m, VPolytope) else list(m)
    if len(forms) != n - power:
        raise MalformedQueryError(f"Expected {n - power} bodies M_i, got {len(forms)}")
    _dimension(k, *forms)
    _require_full(l, "L")
    rest = [(body, 1) for body in forms]
    lhs = volume(l) * mixed_volume_of((k, power), *rest)
    rhs = math.comb(n, power) * mixed_volume_of((k, power), (l, n - power)) * mixed_volume_of((l, power), *rest)
    return InequalityReport("reverse-kt", lhs, rhs, {"K": k, "L": l, "M": forms, "k": power})


def check_log_concavity_form(k: VPolytope, d: VPolytope, r: int) -> InequalityReport:
    """
    ``V(K^r, D^{n-r}) vol(D)^{r-1} <= V(K, D^{n-1})^r``.
    """
    n = _dimension(k, d)
    _require_count(r, n)
    _require_full(d, "D")
    lhs = mixed_volume_of((k, r), (d, n - r)) * volume(d) ** (r - 1)
    rhs = mixed_volume_of((k, 1), (d, n - 1)) ** r
    return InequalityReport("log-concavity", lhs, rhs, {"K": k, "D": d, "r": r})


def check_alexandrov_fenchel(k: VPolytope, d: VPolytope, power: int) -> InequalityReport:
    """
    ``V(K^{k+1}, D^{n-k-1}) V(K^{k-1}, D^{n-k+1}) <= V(K^k, D^{n-k})^2``.
    """
    n = _dimension(k, d)
    if not 1 <= power <= n - 1:
        raise MalformedQueryError(f"k must lie in 1..{n - 1} (got: {power})")
    lhs = mixed_volume_of((k, power + 1), (d, n - power - 1)) * mixed_volume_of((k, power - 1), (d, n - power + 1))
    rhs = mixed_volume_of((k, power), (d, n - power)) ** 2
    return InequalityReport("alexandrov-fenchel", lhs, rhs, {"K": k, "D": d, "k": power})
