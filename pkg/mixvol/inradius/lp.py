"""
Exact rational linear programming.

A two-phase tableau simplex over ``Fraction`` with Bland's rule, which cannot
cycle, so every problem terminates with an optimum, an infeasibility or an
unboundedness signal. Sizes here are tiny (a few dozen constraints), so the
dense tableau is rebuilt-free and simple rather than fast.
"""

import logging
from fractions import Fraction
from typing import (
    FrozenSet,
    List,
    NamedTuple,
    Optional,
    Sequence,
    Tuple,
)

from mixvol import (
    DimensionMismatchError,
    InfeasibleProblem,
    UnboundedProblem,
)
from mixvol.util import (
    as_rational,
    as_rational_tuple,
    format_rational,
    RationalLike,
)

log = logging.getLogger(__name__)

ZERO = Fraction(0)


class LinearProgram:
    """
    ``maximize c . x subject to row_i . x <= rhs_i``.

    Variables are free unless listed in ``nonnegative``.
    """

    def __init__(
        self,
        objective: Sequence[RationalLike],
        constraints: Sequence[Tuple[Sequence[RationalLike], RationalLike]],
        nonnegative: Sequence[int] = (),
    ) -> None:
        """
        :type objective: list
        :param objective: the vector ``c``; its length fixes the number of
          variables

        :type constraints: list of (row, rhs)
        :param constraints: each meaning ``row . x <= rhs``

        :type nonnegative: list of int
        :param nonnegative: indices of the variables constrained to be ``>= 0``
        """
        self.objective = as_rational_tuple(objective)
        self.variables = len(self.objective)
        rows = []
        for row, rhs in constraints:
            r = as_rational_tuple(row)
            if len(r) != self.variables:
                raise DimensionMismatchError(f"Constraint row of length {len(r)} for {self.variables} variables")
            rows.append((r, as_rational(rhs)))
        self.constraints: Tuple[Tuple[Tuple[Fraction, ...], Fraction], ...] = tuple(rows)
        for j in nonnegative:
            if not 0 <= j < self.variables:
                raise ValueError(f"No variable with index {j}")
        self.nonnegative: FrozenSet[int] = frozenset(nonnegative)

    def __repr__(self) -> str:
        return f"LinearProgram({self.variables} variables, {len(self.constraints)} constraints)"


class LPResult(NamedTuple):
    """
    An optimal basic solution with its value and the dual multipliers
    ``duals`` (one per constraint) that certify optimality.
    """

    value: Fraction
    solution: Tuple[Fraction, ...]
    duals: Tuple[Fraction, ...]
    pivots: int

    def verify_certificate(self, lp: LinearProgram) -> bool:
        """
        Re-check optimality exactly: the solution is feasible, the duals are
        non-negative, they reproduce the objective on free variables and
        dominate it on non-negative ones, and both objectives agree.
        """
        x = self.solution
        if any(x[j] < 0 for j in lp.nonnegative):
            return False
        if any(_dot(row, x) > rhs for row, rhs in lp.constraints):
            return False
        if len(self.duals) != len(lp.constraints) or any(y < 0 for y in self.duals):
            return False
        for j in range(lp.variables):
            combined = sum((y * row[j] for y, (row, _) in zip(self.duals, lp.constraints)), ZERO)
            if j in lp.nonnegative:
                if combined < lp.objective[j]:
                    return False
            elif combined != lp.objective[j]:
                return False
        dual_value = sum((y * rhs for y, (_, rhs) in zip(self.duals, lp.constraints)), ZERO)
        return dual_value == self.value == _dot(lp.objective, x)


def _dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum((p * q for p, q in zip(a, b)), ZERO)


class _Tableau:
    """
    Rows ``B^-1 [A | b]`` over the standard-form columns, with the basis.
    """

    def __init__(self, rows: List[List[Fraction]], basis: List[int]) -> None:
        self.rows = rows
        self.basis = basis
        self.pivots = 0

    def reduced_costs(self, cost: Sequence[Fraction], columns: Sequence[int]) -> List[Tuple[int, Fraction]]:
        basic_cost = [cost[b] for b in self.basis]
        result = []
        for j in columns:
            value = cost[j] - sum((cb * row[j] for cb, row in zip(basic_cost, self.rows) if row[j]), ZERO)
            result.append((j, value))
        return result

    def pivot(self, r: int, j: int) -> None:
        pivot_row = self.rows[r]
        p = pivot_row[j]
        if p != 1:
            pivot_row = [value / p for value in pivot_row]
            self.rows[r] = pivot_row
        for i, row in enumerate(self.rows):
            if i != r and row[j]:
                factor = row[j]
                self.rows[i] = [a - factor * b for a, b in zip(row, pivot_row)]
        self.basis[r] = j
        self.pivots += 1

    def run(self, cost: Sequence[Fraction], columns: Sequence[int]) -> None:
        """
        Maximize ``cost`` over the given columns with Bland's rule: enter the
        lowest-index improving column, leave on the minimum ratio with ties
        broken by the lowest basic variable index.
        """
        while True:
            entering = next((j for j, rc in self.reduced_costs(cost, columns) if rc > 0), None)
            if entering is None:
                return
            leaving: Optional[int] = None
            best: Optional[Tuple[Fraction, int]] = None
            for i, row in enumerate(self.rows):
                if row[entering] > 0:
                    key = (row[-1] / row[entering], self.basis[i])
                    if best is None or key < best:
                        best, leaving = key, i
            if leaving is None:
                raise UnboundedProblem(f"Objective unbounded along column {entering}")
            log.debug("Pivot: column %d enters, column %d leaves", entering, self.basis[leaving])
            self.pivot(leaving, entering)


def solve_lp(lp: LinearProgram) -> LPResult:
    """
    Solve ``lp`` exactly.

    Free variables are split into positive and negative parts, every row gets
    a slack, and rows with a negative right-hand side are negated and given an
    artificial variable that phase one drives to zero.

    :rtype: LPResult
    :return: optimal value, an optimal basic solution and the dual certificate

    :raises InfeasibleProblem: if no point satisfies the constraints
    :raises UnboundedProblem: if the objective is unbounded above
    """
    m = len(lp.constraints)
    # standard-form columns: structural parts, then slacks, then artificials
    parts: List[Tuple[int, int]] = []
    for j in range(lp.variables):
        parts.append((j, 1))
        if j not in lp.nonnegative:
            parts.append((j, -1))
    structural = len(parts)
    negated = [rhs < 0 for _, rhs in lp.constraints]
    artificial_rows = [i for i in range(m) if negated[i]]
    width = structural + m + len(artificial_rows)

    rows: List[List[Fraction]] = []
    basis: List[int] = []
    for i, (row, rhs) in enumerate(lp.constraints):
        sign = -1 if negated[i] else 1
        line = [sign * row[j] * s for j, s in parts] + [ZERO] * (m + len(artificial_rows)) + [sign * rhs]
        line[structural + i] = Fraction(sign)
        if negated[i]:
            column = structural + m + artificial_rows.index(i)
            line[column] = Fraction(1)
            basis.append(column)
        else:
            basis.append(structural + i)
        rows.append(line)
    tableau = _Tableau(rows, basis)
    regular = list(range(structural + m))

    if artificial_rows:
        phase_one = [ZERO] * (structural + m) + [Fraction(-1)] * len(artificial_rows)
        tableau.run(phase_one, list(range(width)))
        infeasibility = sum((row[-1] for row, b in zip(tableau.rows, tableau.basis) if b >= structural + m), ZERO)
        if infeasibility > 0:
            raise InfeasibleProblem(f"Constraints are infeasible (phase one residual {format_rational(infeasibility)})")
        for r in range(len(tableau.rows) - 1, -1, -1):
            if tableau.basis[r] < structural + m:
                continue
            column = next((j for j in regular if tableau.rows[r][j] != 0), None)
            if column is None:
                # redundant equality row
                del tableau.rows[r]
                del tableau.basis[r]
            else:
                tableau.pivot(r, column)

    cost = [lp.objective[j] * s for j, s in parts] + [ZERO] * (width - structural)
    tableau.run(cost, regular)

    values = [ZERO] * width
    for row, b in zip(tableau.rows, tableau.basis):
        values[b] = row[-1]
    solution = [ZERO] * lp.variables
    for column, (j, s) in enumerate(parts):
        solution[j] += s * values[column]
    basic_cost = [cost[b] for b in tableau.basis]
    duals = tuple(
        sum((cb * row[structural + i] for cb, row in zip(basic_cost, tableau.rows)), ZERO) for i in range(m)
    )
    value = _dot(lp.objective, solution)
    log.debug("LP with %d variables and %d constraints solved in %d pivots", lp.variables, m, tableau.pivots)
    return LPResult(value, tuple(solution), duals, tableau.pivots)
