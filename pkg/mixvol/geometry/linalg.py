"""
Exact linear algebra over the integers and the rationals.

Thin adapters between tuples of ``int``/``Fraction`` and sympy's
``DomainMatrix``, which does the actual elimination (fraction-free Bareiss
for determinants, rref for ranks, LU for solves).
"""

from fractions import Fraction
from math import gcd
from typing import (
    List,
    Sequence,
    Tuple,
)

from sympy import (
    QQ,
    ZZ,
)
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.exceptions import DMNonInvertibleMatrixError

Row = Sequence[Fraction]


def _to_qq(rows: Sequence[Row], ncols: int) -> DomainMatrix:
    return DomainMatrix(
        [[QQ(int(x.numerator), int(x.denominator)) for x in row] for row in rows],
        (len(rows), ncols),
        QQ,
    )


def _from_qq(value: object) -> Fraction:
    rational = QQ.to_sympy(value)
    return Fraction(int(rational.p), int(rational.q))


def int_det(rows: Sequence[Sequence[int]]) -> int:
    """
    Determinant of a square integer matrix (Bareiss elimination).
    """
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return int(rows[0][0])
    if n == 2:
        return int(rows[0][0]) * int(rows[1][1]) - int(rows[0][1]) * int(rows[1][0])
    dm = DomainMatrix([[ZZ(int(x)) for x in row] for row in rows], (n, n), ZZ)
    return int(ZZ.to_sympy(dm.det()))


def det(rows: Sequence[Row]) -> Fraction:
    """
    Determinant of a square rational matrix.
    """
    n = len(rows)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return Fraction(rows[0][0])
    return _from_qq(_to_qq(rows, n).det())


def rank(rows: Sequence[Row]) -> int:
    if not rows:
        return 0
    return _to_qq(rows, len(rows[0])).rank()


def solve(matrix: Sequence[Row], rhs: Sequence[Fraction]) -> List[Fraction]:
    """
    Solve the square system ``matrix @ x = rhs`` exactly.

    :raises ZeroDivisionError: if ``matrix`` is singular.
    """
    n = len(matrix)
    a = _to_qq(matrix, n)
    b = _to_qq([[value] for value in rhs], 1)
    try:
        x = a.lu_solve(b)
    except DMNonInvertibleMatrixError:
        raise ZeroDivisionError("singular matrix")
    return [_from_qq(x[i, 0].element) for i in range(n)]


def hyperplane_normal(points: Sequence[Sequence[int]]) -> Tuple[int, ...]:
    """
    Normal of the hyperplane through ``n`` integer points of Z^n, as the
    generalized cross product of the ``n - 1`` edge vectors.

    The result is the zero vector when the points are affinely dependent;
    otherwise it is divided by the gcd of its entries (a primitive vector).
    The sign is arbitrary; callers orient it.
    """
    base = points[0]
    n = len(base)
    edges = [[int(p[j]) - int(base[j]) for j in range(n)] for p in points[1:]]
    normal = []
    for j in range(n):
        minor = [[row[c] for c in range(n) if c != j] for row in edges]
        value = int_det(minor)
        normal.append(value if j % 2 == 0 else -value)
    g = 0
    for value in normal:
        g = gcd(g, value)
    if g > 1:
        normal = [value // g for value in normal]
    return tuple(normal)

