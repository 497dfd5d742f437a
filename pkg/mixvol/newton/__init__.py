"""
Newton polytopes of Laurent polynomial systems and solution-count bounds.

The generic number of solutions in the torus of ``n`` Laurent polynomials in
``n`` variables is ``n! V(P_1, ..., P_n)`` where ``P_i`` are their Newton
polytopes. Coefficients are only used to drop cancelled terms; genericity is
assumed throughout.
"""

import logging
import math
from fractions import Fraction
from typing import (
    Dict,
    Iterable,
    List,
    Mapping,
    NamedTuple,
    Optional,
    Sequence,
    Tuple,
)

from mixvol import (
    DimensionMismatchError,
    IntegralityError,
    MalformedQueryError,
    ViolationError,
    ZeroPolynomialError,
)
from mixvol.geometry import (
    convex_hull,
    standard_simplex,
    volume,
    VPolytope,
)
from mixvol.mixed_volume import mixed_volume_of
from mixvol.multilinear import bezout_constant
from mixvol.newton.parser import (
    numbered_lines,
    parse_terms,
    RawTerm,
)
from mixvol.report import InequalityReport
from mixvol.util import (
    as_rational,
    format_rational,
    RationalLike,
)

log = logging.getLogger(__name__)

Exponents = Tuple[int, ...]

__all__ = (
    "LaurentPolynomial",
    "NewtonPolytope",
    "BoundComparison",
    "parse_laurent",
    "parse_system",
    "newton_polytope",
    "bkk_bound",
    "classical_bezout_bound",
    "compare_bounds",
)


class LaurentPolynomial:
    """
    A Laurent polynomial in ``num_vars`` variables: non-zero coefficients
    keyed by distinct exponent vectors, kept sorted by exponent vector.
    """

    __slots__ = ("num_vars", "terms")

    num_vars: int
    terms: Tuple[Tuple[Fraction, Exponents], ...]

    def __init__(self, num_vars: int, terms: Iterable[Tuple[RationalLike, Sequence[int]]]) -> None:
        """
        :type num_vars: int
        :param num_vars: number of variables ``n``

        :type terms: list of (coefficient, exponents)
        :param terms: terms in any order; like terms are added up and zero
          coefficients dropped
        """
        combined: Dict[Exponents, Fraction] = {}
        for coefficient, exponents in terms:
            e = tuple(int(x) for x in exponents)
            if len(e) != num_vars:
                raise DimensionMismatchError(f"Exponent vector {e} in a polynomial in {num_vars} variables")
            combined[e] = combined.get(e, Fraction(0)) + as_rational(coefficient)
        object.__setattr__(self, "num_vars", num_vars)
        object.__setattr__(
            self, "terms", tuple((c, e) for e, c in sorted(combined.items(), reverse=True) if c != 0)
        )

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("LaurentPolynomial is immutable")

    @classmethod
    def from_raw(cls, num_vars: int, raw: Sequence[RawTerm]) -> "LaurentPolynomial":
        terms = []
        for coefficient, powers in raw:
            terms.append((coefficient, [powers.get(i, 0) for i in range(1, num_vars + 1)]))
        return cls(num_vars, terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def exponents(self) -> List[Exponents]:
        return [e for _, e in self.terms]

    def coefficients(self) -> Dict[Exponents, Fraction]:
        return {e: c for c, e in self.terms}

    def multiply_by_monomial(self, exponents: Sequence[int]) -> "LaurentPolynomial":
        shift = tuple(exponents)
        if len(shift) != self.num_vars:
            raise DimensionMismatchError(f"Monomial {shift} in a polynomial in {self.num_vars} variables")
        return LaurentPolynomial(self.num_vars, [(c, [a + b for a, b in zip(e, shift)]) for c, e in self.terms])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self.num_vars == other.num_vars and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.num_vars, self.terms))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for position, (coefficient, exponents) in enumerate(self.terms):
            sign = "-" if coefficient < 0 else "+"
            magnitude = abs(coefficient)
            factors = [f"x{i}" if e == 1 else f"x{i}^{e}" for i, e in enumerate(exponents, start=1) if e]
            if magnitude != 1 or not factors:
                factors.insert(0, format_rational(magnitude))
            body = "*".join(factors)
            if position == 0:
                parts.append(f"-{body}" if sign == "-" else body)
            else:
                parts.append(f"{sign} {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPolynomial({self.num_vars}, {str(self)!r})"


def parse_laurent(text: str, num_vars: Optional[int] = None, line: int = 1) -> LaurentPolynomial:
    """
    Parse one polynomial.

    :type num_vars: int
    :param num_vars: number of variables; defaults to the largest index used

    :raises ParseError: on a syntax error or out-of-range variable
    :raises ZeroPolynomialError: if all terms cancel
    """
    raw, max_index = parse_terms(text, num_vars, line)
    polynomial = LaurentPolynomial.from_raw(num_vars if num_vars is not None else max(max_index, 1), raw)
    if polynomial.is_zero:
        raise ZeroPolynomialError(f"{text.strip()!r} is the zero polynomial, which has no Newton polytope")
    return polynomial


def parse_system(text: str, num_vars: Optional[int] = None) -> List[LaurentPolynomial]:
    """
    Parse one polynomial per line; blank lines and ``#`` comments are
    skipped. Without ``num_vars`` every polynomial gets as many variables as
    the largest index used anywhere in ``text``.
    """
    parsed = [(number, parse_terms(content, num_vars, number)) for number, content in numbered_lines(text)]
    n = num_vars if num_vars is not None else max([max_index for _, (_, max_index) in parsed] + [1])
    system = []
    for number, (raw, _) in parsed:
        polynomial = LaurentPolynomial.from_raw(n, raw)
        if polynomial.is_zero:
            raise ZeroPolynomialError(f"Polynomial on line {number} is zero")
        system.append(polynomial)
    return system


class NewtonPolytope(NamedTuple):
    polytope: VPolytope


def newton_polytope(p: LaurentPolynomial) -> NewtonPolytope:
    if p.is_zero:
        raise ZeroPolynomialError("The zero polynomial has no Newton polytope")
    return NewtonPolytope(convex_hull(p.exponents()))


def _check_system(system: Sequence[LaurentPolynomial]) -> int:
    if not system:
        raise MalformedQueryError("Empty polynomial system")
    dims = {p.num_vars for p in system}
    if len(dims) > 1:
        raise DimensionMismatchError(f"Polynomials in different numbers of variables: {sorted(dims)}")
    n = dims.pop()
    if len(system) != n:
        raise MalformedQueryError(f"{len(system)} polynomials in {n} variables; the bound needs a square system")
    return n


def _count(value: Fraction, what: str) -> int:
    if value.denominator != 1:
        raise IntegralityError(f"{what} is {format_rational(value)}, not an integer")
    return value.numerator


def bkk_bound(system: Sequence[LaurentPolynomial]) -> int:
    """
    ``n! V(P_1, ..., P_n)`` for the Newton polytopes ``P_i`` of the system.

    :raises IntegralityError: if the value is not an integer, which lattice
      polytopes rule out
    """
    n = _check_system(system)
    polytopes = [newton_polytope(p).polytope for p in system]
    value = math.factorial(n) * mixed_volume_of(*((body, 1) for body in polytopes))
    return _count(value, "n! V(P_1, ..., P_n)")


def classical_bezout_bound(system: Sequence[LaurentPolynomial]) -> int:
    """
    ``prod deg(H_i)`` with ``deg(H_i) = n! V(P_i, Delta^{n-1})``.
    """
    n = _check_system(system)
    simplex = standard_simplex(n)
    degrees = [
        _count(math.factorial(n) * mixed_volume_of((newton_polytope(p).polytope, 1), (simplex, n - 1)), "deg(H_i)")
        for p in system
    ]
    return math.prod(degrees)


class BoundComparison(NamedTuple):
    """
    The BKK count next to the classical Bezout bound and the grouped bound
    ``min_k prod C(n, a_i) N(K_i^{a_i}, D^{n-a_i}) / (C(n, a_k) N(D)^{r-1})``
    where ``N`` is the BKK count and ``K_i``, ``D`` are the Newton polytopes
    of the groups.
    """

    bkk: int
    classical_bezout: int
    paper_bound: Fraction
    groups: Tuple[int, ...]

    def to_dict(self) -> Mapping[str, object]:
        return {
            "bkk": self.bkk,
            "classical": self.classical_bezout,
            "paper_bound": format_rational(self.paper_bound),
            "groups": list(self.groups),
        }


def _group_polytopes(
    polytopes: Sequence[VPolytope], groups: Sequence[int], n: int
) -> Tuple[List[VPolytope], VPolytope]:
    if any(a < 1 for a in groups) or sum(groups) > n:
        raise MalformedQueryError(f"Grouping {list(groups)} does not split {n} polynomials")
    shared: List[Optional[VPolytope]] = []
    start = 0
    for a in list(groups) + [n - sum(groups)]:
        block = polytopes[start : start + a]
        start += a
        if block and any(body != block[0] for body in block):
            raise MalformedQueryError(f"Polynomials {start - a + 1}..{start} do not share a Newton polytope")
        shared.append(block[0] if block else None)
    k_bodies = [body for body in shared[:-1] if body is not None]
    d = shared[-1] if shared[-1] is not None else standard_simplex(n)
    return k_bodies, d


def compare_bounds(system: Sequence[LaurentPolynomial], groups: Optional[Sequence[int]] = None) -> BoundComparison:
    """
    Compute the three bounds and check ``bkk <= classical`` and
    ``bkk <= paper_bound``.

    :type groups: list of int
    :param groups: ``a_1, ..., a_r``: the first ``a_1`` polynomials share the
      Newton polytope ``K_1``, the next ``a_2`` share ``K_2`` and so on; the
      remaining ``n - |a|`` polynomials share ``D``, which is the standard
      simplex if none remain. Defaults to one group per polynomial.

    :raises MalformedQueryError: if the grouping contradicts the Newton
      polytopes
    :raises ViolationError: if either inequality fails
    """
    n = _check_system(system)
    grouping = tuple(groups) if groups is not None else (1,) * n
    polytopes = [newton_polytope(p).polytope for p in system]
    k_bodies, d = _group_polytopes(polytopes, grouping, n)
    bkk = bkk_bound(system)
    classical = classical_bezout_bound(system)
    r = len(grouping)
    scale = math.factorial(n)
    singles = math.prod(scale * mixed_volume_of((k, a), (d, n - a)) for k, a in zip(k_bodies, grouping))
    count_d = scale * volume(d)
    if count_d == 0 and r > 1:
        raise MalformedQueryError("The shared Newton polytope D is not full-dimensional")
    best = min(bezout_constant(n, grouping, k) for k in range(1, r + 1))
    paper_bound = best * singles / count_d ** (r - 1)
    instance = {"system": [str(p) for p in system], "groups": list(grouping)}
    reports = [
        InequalityReport("bkk-bezout", Fraction(bkk), Fraction(classical), instance),
        InequalityReport("bkk-main-theorem", Fraction(bkk), paper_bound, instance),
    ]
    failed = [report for report in reports if not report.holds]
    if failed:
        raise ViolationError("Solution-count bound violated", failed)
    log.debug("bkk=%d classical=%d grouped=%s", bkk, classical, format_rational(paper_bound))
    return BoundComparison(bkk, classical, paper_bound, grouping)
