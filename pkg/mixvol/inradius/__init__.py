"""
Relative inradius ``r(K, L)``: the largest ``lambda`` such that some
translate of ``lambda L`` fits inside ``K``.

For a full-dimensional ``K`` with facets ``a_i . x <= b_i`` this is the linear
program

    maximize lambda  subject to  lambda h_L(a_i) + a_i . t <= b_i,  lambda >= 0

in the unknowns ``(lambda, t)``, solved exactly by :mod:`mixvol.inradius.lp`.
"""

import logging
from fractions import Fraction
from typing import (
    NamedTuple,
    Tuple,
)

from mixvol import (
    DegenerateBodyError,
    DimensionMismatchError,
    UnboundedProblem,
)
from mixvol.geometry import (
    contains,
    facet_enumeration,
    Point,
    scale,
    support_function,
    translate,
    volume,
    VPolytope,
)
from mixvol.inradius.lp import (
    LinearProgram,
    LPResult,
    solve_lp,
)
from mixvol.mixed_volume import mixed_volume_of
from mixvol.report import InequalityReport
from mixvol.util import format_rational

log = logging.getLogger(__name__)

__all__ = (
    "InradiusResult",
    "inradius",
    "inradius_program",
    "check_diskant_bound",
    "check_inclusion_scaling",
    "check_reverse_kt_inradius",
)


class InradiusResult(NamedTuple):
    """
    ``lambda_star`` with a translate ``t`` such that ``lambda_star L + t`` lies
    in ``K``, and the LP result whose duals certify maximality.
    """

    lambda_star: Fraction
    translate: Point
    certificate: LPResult

    def verify(self, k: VPolytope, l: VPolytope) -> bool:
        """
        Re-check the witness containment and the optimality certificate.
        """
        placed = translate(scale(l, self.lambda_star), self.translate)
        return contains(k, placed) and self.certificate.verify_certificate(inradius_program(k, l))


def inradius_program(k: VPolytope, l: VPolytope) -> LinearProgram:
    """
    The LP over ``(lambda, t_1, ..., t_n)`` whose optimum is ``r(K, L)``.
    """
    if k.dim != l.dim:
        raise DimensionMismatchError(f"Inradius of bodies of dimensions {k.dim} and {l.dim}")
    facets = facet_enumeration(k).facets
    constraints = [([support_function(l, f.normal), *f.normal], f.offset) for f in facets]
    return LinearProgram([1] + [0] * k.dim, constraints, nonnegative=[0])


def inradius(k: VPolytope, l: VPolytope) -> InradiusResult:
    """
    Compute ``r(K, L)`` exactly.

    :type k: VPolytope
    :param k: full-dimensional outer body

    :type l: VPolytope
    :param l: inner body, possibly lower-dimensional but not a single point

    :rtype: InradiusResult

    :raises DegenerateBodyError: if ``K`` is not full-dimensional or ``L`` is
      a point (every dilate of a point fits)
    """
    program = inradius_program(k, l)
    try:
        result = solve_lp(program)
    except UnboundedProblem:
        raise DegenerateBodyError("Inradius relative to a single point is unbounded")
    lambda_star = result.solution[0]
    t = result.solution[1:]
    log.debug("r(K, L) = %s with %d LP pivots", format_rational(lambda_star), result.pivots)
    return InradiusResult(lambda_star, t, result)


def _require_full(*bodies: VPolytope) -> None:
    for body in bodies:
        if not body.is_full_dimensional:
            raise DegenerateBodyError(f"{body!r} is not full-dimensional")


def check_diskant_bound(k: VPolytope, l: VPolytope) -> InequalityReport:
    """
    ``vol(K) / (n V(K^{n-1}, L)) <= r(K, L)``.
    """
    _require_full(k, l)
    n = k.dim
    bound = volume(k) / (n * mixed_volume_of((k, n - 1), (l, 1)))
    result = inradius(k, l)
    return InequalityReport(
        "diskant",
        bound,
        result.lambda_star,
        {"K": k, "L": l},
        witness={"translate": list(result.translate)},
    )


def check_inclusion_scaling(k: VPolytope, l: VPolytope) -> InequalityReport:
    """
    Some translate of ``L`` lies in ``s K`` with ``s = n V(L, K^{n-1}) / vol(K)``.

    The LP gives ``r(sK, L) = lambda >= 1`` with a translate ``t``; shrinking
    ``lambda L`` to ``L`` about its first vertex keeps it inside ``sK``, so
    ``t + (lambda - 1) v_0`` is a translate for ``L`` itself, re-checked by
    exact containment. The report compares ``1 <= r(sK, L)``; a failed
    containment re-check reports ``r = 0``.
    """
    _require_full(k, l)
    n = k.dim
    factor = n * mixed_volume_of((l, 1), (k, n - 1)) / volume(k)
    outer = scale(k, factor)
    result = inradius(outer, l)
    shift: Tuple[Fraction, ...] = tuple(
        t + (result.lambda_star - 1) * v for t, v in zip(result.translate, l.vertices[0])
    )
    fits = result.lambda_star >= 1 and contains(outer, translate(l, shift))
    if not fits:
        log.warning("Inclusion scaling failed for factor %s", format_rational(factor))
    return InequalityReport(
        "inclusion-scaling",
        Fraction(1),
        result.lambda_star if fits else Fraction(0),
        {"K": k, "L": l},
        witness={"factor": factor, "translate": list(shift)},
    )


def check_reverse_kt_inradius(k: VPolytope, l: VPolytope, m: VPolytope) -> InequalityReport:
    """
    ``vol(L) V(K, M^{n-1}) <= n V(K, L^{n-1}) V(L, M^{n-1})``, the
    consequence of the inradius estimate for ``r(L, K)``.
    """
    _require_full(l)
    n = l.dim
    lhs = volume(l) * mixed_volume_of((k, 1), (m, n - 1))
    rhs = n * mixed_volume_of((k, 1), (l, n - 1)) * mixed_volume_of((l, 1), (m, n - 1))
    return InequalityReport("reverse-kt-inradius", lhs, rhs, {"K": k, "L": l, "M": m})
