"""
Exact mixed discriminants of rational symmetric matrices.

``det(t_1 M_1 + ... + t_r M_r)`` is a homogeneous polynomial of degree ``n``
in the ``t_i``; its normalized coefficients are the mixed discriminants
``D(M_1^{a_1}, ..., M_r^{a_r})``. Real symmetric matrices stand in for
hermitian ones throughout.
"""

import itertools
import json
import logging
import math
from fractions import Fraction
from typing import (
    Any,
    Dict,
    List,
    Mapping,
    NamedTuple,
    Optional,
    Sequence,
    Tuple,
)

from mixvol import (
    DimensionMismatchError,
    MalformedQueryError,
    MixvolError,
    NotPositiveSemidefiniteError,
)
from mixvol.geometry import linalg
from mixvol.multilinear import (
    interpolate_coefficient,
    polarize,
    validate_bezout_multiplicities,
)
from mixvol.report import InequalityReport
from mixvol.util import (
    as_rational,
    as_rational_tuple,
    format_rational,
    RationalLike,
)

log = logging.getLogger(__name__)

Vector = Tuple[Fraction, ...]
IndexSet = Tuple[int, ...]

__all__ = (
    "SymMatrix",
    "PsdCertificate",
    "certify_psd",
    "mixed_discriminant",
    "mixed_discriminant_by_interpolation",
    "gamma_from_matrices",
    "check_pointwise_wedge_inequality",
    "check_discriminant_bezout",
    "check_diagonal_discriminant_bezout",
    "check_discriminant_reverse_kt",
    "load_matrix",
    "dump_matrix",
)


class SymMatrix:
    """
    An immutable n x n symmetric matrix of rationals.
    """

    __slots__ = ("dim", "rows", "_hash")

    dim: int
    rows: Tuple[Vector, ...]
    _hash: int

    def __init__(self, rows: Sequence[Sequence[RationalLike]]) -> None:
        """
        :type rows: list of lists
        :param rows: the entries row by row; the matrix must be square and
          exactly symmetric
        """
        values = tuple(as_rational_tuple(row) for row in rows)
        n = len(values)
        if n == 0:
            raise ValueError("A matrix needs at least one row")
        for row in values:
            if len(row) != n:
                raise DimensionMismatchError(f"Row of length {len(row)} in a {n}x{n} matrix")
        for i in range(n):
            for j in range(i + 1, n):
                if values[i][j] != values[j][i]:
                    raise ValueError(f"Matrix is not symmetric at ({i}, {j})")
        object.__setattr__(self, "dim", n)
        object.__setattr__(self, "rows", values)
        object.__setattr__(self, "_hash", hash(values))

    def __setattr__(self, name: str, value: Any) -> None:
        raise AttributeError("SymMatrix is immutable")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SymMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        body = "; ".join(" ".join(format_rational(x) for x in row) for row in self.rows)
        return f"SymMatrix([{body}])"

    def __getitem__(self, index: Tuple[int, int]) -> Fraction:
        i, j = index
        return self.rows[i][j]

    def __add__(self, other: "SymMatrix") -> "SymMatrix":
        if not isinstance(other, SymMatrix):
            return NotImplemented
        if other.dim != self.dim:
            raise DimensionMismatchError(f"Adding a {other.dim}x{other.dim} matrix to a {self.dim}x{self.dim} one")
        return SymMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def scale(self, t: RationalLike) -> "SymMatrix":
        factor = as_rational(t)
        return SymMatrix([[factor * x for x in row] for row in self.rows])

    def det(self) -> Fraction:
        return linalg.det(self.rows)

    def quadratic_form(self, v: Sequence[RationalLike]) -> Fraction:
        x = as_rational_tuple(v)
        if len(x) != self.dim:
            raise DimensionMismatchError(f"Vector of length {len(x)} for a {self.dim}x{self.dim} matrix")
        return sum((x[i] * self.rows[i][j] * x[j] for i in range(self.dim) for j in range(self.dim)), Fraction(0))

    @property
    def is_diagonal(self) -> bool:
        return all(self.rows[i][j] == 0 for i in range(self.dim) for j in range(self.dim) if i != j)

    def diagonal_entries(self) -> Vector:
        return tuple(self.rows[i][i] for i in range(self.dim))

    def principal(self, indices: Sequence[int]) -> "SymMatrix":
        """
        The principal submatrix on ``indices``.
        """
        return SymMatrix([[self.rows[i][j] for j in indices] for i in indices])

    @classmethod
    def identity(cls, n: int) -> "SymMatrix":
        return cls.diagonal([1] * n)

    @classmethod
    def diagonal(cls, values: Sequence[RationalLike]) -> "SymMatrix":
        entries = as_rational_tuple(values)
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    def to_dict(self) -> Dict[str, Any]:
        return {"dim": self.dim, "rows": [[format_rational(x) for x in row] for row in self.rows]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "SymMatrix":
        try:
            dim = int(data["dim"])
            rows = data["rows"]
        except (KeyError, TypeError):
            raise ValueError("not a matrix document: expected 'dim' and 'rows'")
        matrix = cls(rows)
        if matrix.dim != dim:
            raise DimensionMismatchError(f"Matrix document declares dim {dim} but has {matrix.dim} rows")
        return matrix

    @classmethod
    def from_json(cls, jdef: str) -> "SymMatrix":
        """
        Build a matrix from a JSON document ``{"dim": n, "rows": [...]}``.
        """
        return cls.from_dict(json.loads(jdef))


def load_matrix(path: str) -> SymMatrix:
    with open(path, encoding="utf-8") as f:
        return SymMatrix.from_json(f.read())


def dump_matrix(matrix: SymMatrix, path: str) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(matrix.to_json())
        f.write("\n")


class PsdCertificate(NamedTuple):
    """
    Exact evidence for the definiteness of ``matrix``.

    Either ``transform`` is an invertible ``T`` with ``T^t M T`` equal to the
    diagonal of ``pivots`` (all ``>= 0`` for a PSD matrix, all ``> 0`` for a
    PD one), or ``witness`` is a vector ``v`` with ``v^t M v < 0``.
    """

    matrix: SymMatrix
    is_psd: bool
    is_pd: bool
    pivots: Vector
    transform: Tuple[Vector, ...]
    witness: Optional[Vector]

    def verify(self) -> bool:
        """
        Re-check the certificate against the matrix with exact arithmetic.
        """
        m = self.matrix
        if self.witness is not None:
            return not self.is_psd and not self.is_pd and m.quadratic_form(self.witness) < 0
        n = m.dim
        t = self.transform
        for i in range(n):
            column_i = [t[r][i] for r in range(n)]
            for j in range(n):
                column_j = [t[r][j] for r in range(n)]
                value = sum(
                    (column_i[p] * m.rows[p][q] * column_j[q] for p in range(n) for q in range(n)), Fraction(0)
                )
                if value != (self.pivots[i] if i == j else 0):
                    return False
        if linalg.det(t) == 0:
            return False
        return self.is_psd == all(p >= 0 for p in self.pivots) and self.is_pd == all(p > 0 for p in self.pivots)


def certify_psd(matrix: SymMatrix) -> PsdCertificate:
    """
    Decide positive (semi)definiteness by symmetric elimination
    ``T^t M T = diag(pivots)``.

    Each step pivots on the first non-zero remaining diagonal entry. A
    negative pivot ends the search with the corresponding column of ``T`` as
    witness. If every remaining diagonal entry is zero but some off-diagonal
    entry ``b`` at ``(i, j)`` is not, ``T e_i - sign(b) T e_j`` is a witness
    with value ``-2|b|``; if the whole remaining block is zero, its pivots
    are zero.

    :rtype: PsdCertificate
    """
    n = matrix.dim
    a = [list(row) for row in matrix.rows]
    t = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]

    def column(j: int) -> Vector:
        return tuple(t[r][j] for r in range(n))

    def swap(i: int, j: int) -> None:
        a[i], a[j] = a[j], a[i]
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in t:
            row[i], row[j] = row[j], row[i]

    def fail(witness: Vector) -> PsdCertificate:
        log.debug("Matrix %r is not PSD; witness %s", matrix, [format_rational(x) for x in witness])
        return PsdCertificate(matrix, False, False, (), (), witness)

    pivots: List[Fraction] = []
    for i in range(n):
        p = next((j for j in range(i, n) if a[j][j] != 0), None)
        if p is None:
            off = next(((r, s) for r in range(i, n) for s in range(r + 1, n) if a[r][s] != 0), None)
            if off is not None:
                r, s = off
                sign = 1 if a[r][s] > 0 else -1
                return fail(tuple(x - sign * y for x, y in zip(column(r), column(s))))
            pivots.extend([Fraction(0)] * (n - i))
            break
        if p != i:
            swap(i, p)
        pivot = a[i][i]
        if pivot < 0:
            return fail(column(i))
        for j in range(i + 1, n):
            if a[j][i] == 0:
                continue
            factor = a[j][i] / pivot
            for c in range(n):
                a[j][c] -= factor * a[i][c]
            for r in range(n):
                a[r][j] -= factor * a[r][i]
            for r in range(n):
                t[r][j] -= factor * t[r][i]
        pivots.append(pivot)
    transform = tuple(tuple(row) for row in t)
    return PsdCertificate(
        matrix,
        is_psd=True,
        is_pd=all(x > 0 for x in pivots),
        pivots=tuple(pivots),
        transform=transform,
        witness=None,
    )


def _require_psd(matrix: SymMatrix, name: str, definite: bool = False) -> None:
    certificate = certify_psd(matrix)
    if definite and not certificate.is_pd:
        raise NotPositiveSemidefiniteError(f"{name} must be positive definite", certificate)
    if not certificate.is_psd:
        raise NotPositiveSemidefiniteError(f"{name} must be positive semidefinite", certificate)


def _distinct_entries(entries: Sequence[Tuple[SymMatrix, int]]) -> Tuple[List[SymMatrix], List[int]]:
    if not entries:
        raise MalformedQueryError("A mixed discriminant needs at least one matrix")
    dims = {m.dim for m, _ in entries}
    if len(dims) > 1:
        raise DimensionMismatchError(f"Mixed discriminant of matrices of different sizes: {sorted(dims)}")
    n = dims.pop()
    merged: Dict[SymMatrix, int] = {}
    for m, multiplicity in entries:
        if not isinstance(multiplicity, int) or isinstance(multiplicity, bool) or multiplicity < 0:
            raise MalformedQueryError(f"Multiplicities must be non-negative integers (got: {multiplicity!r})")
        if multiplicity:
            merged[m] = merged.get(m, 0) + multiplicity
    total = sum(merged.values())
    if total != n:
        raise MalformedQueryError(f"Multiplicities add up to {total}, expected the matrix size {n}")
    return list(merged), list(merged.values())


def _combination(matrices: Sequence[SymMatrix], weights: Sequence[int]) -> List[List[Fraction]]:
    n = matrices[0].dim
    return [
        [sum((w * m.rows[i][j] for m, w in zip(matrices, weights) if w), Fraction(0)) for j in range(n)]
        for i in range(n)
    ]


def mixed_discriminant(
    entries: Sequence[Tuple[SymMatrix, int]], cross_check: bool = False, workers: int = 1
) -> Fraction:
    """
    ``D(M_1^{a_1}, ..., M_r^{a_r})`` by polarization of the determinant.

    :type entries: list of (SymMatrix, int)
    :param entries: ``(matrix, multiplicity)`` pairs, multiplicities adding
      up to the matrix size

    :type cross_check: bool
    :param cross_check: also interpolate ``det(t_1 M_1 + ... + t_r M_r)`` and
      raise if the two values differ

    :rtype: Fraction
    """
    matrices, multiplicities = _distinct_entries(entries)
    if len(matrices) == 1:
        value = matrices[0].det()
    else:
        value = polarize(multiplicities, lambda counts: linalg.det(_combination(matrices, counts)), workers=workers)
    if cross_check:
        oracle = interpolate_coefficient(multiplicities, lambda t: linalg.det(_combination(matrices, t)))
        if oracle != value:
            raise MixvolError(
                f"Polarization gives {format_rational(value)} but interpolation {format_rational(oracle)}"
            )
    return value


def mixed_discriminant_by_interpolation(entries: Sequence[Tuple[SymMatrix, int]]) -> Fraction:
    matrices, multiplicities = _distinct_entries(entries)
    return interpolate_coefficient(multiplicities, lambda t: linalg.det(_combination(matrices, t)))


def gamma_from_matrices(matrices: Sequence[SymMatrix], n: int) -> Dict[IndexSet, Fraction]:
    """
    Diagonal coefficients ``Gamma_KK`` of the wedge product of the forms of
    ``C_1, ..., C_{n-k}``: for each ``(n-k)``-subset ``K`` of ``0..n-1`` the
    mixed discriminant of the principal submatrices on ``K``. With no
    matrices the only index set is the empty one and ``Gamma = 1``.
    """
    for m in matrices:
        if m.dim != n:
            raise DimensionMismatchError(f"{m.dim}x{m.dim} matrix among forms on {n} coordinates")
    size = len(matrices)
    if size > n:
        raise MalformedQueryError(f"{size} forms on {n} coordinates")
    if size == 0:
        return {(): Fraction(1)}
    return {
        index: mixed_discriminant([(m.principal(index), 1) for m in matrices])
        for index in itertools.combinations(range(n), size)
    }


def check_pointwise_wedge_inequality(
    a: SymMatrix, gamma: Mapping[IndexSet, RationalLike], k: int
) -> InequalityReport:
    """
    ``sum_J mu_J Gamma_{J^c} <= (sum_J mu_J)(sum_K Gamma_K)`` where ``mu``
    are the diagonal entries of ``a``, ``J`` runs over ``k``-subsets and
    ``K`` over ``(n-k)``-subsets of the coordinates, and ``mu_J`` is the
    product of ``mu`` over ``J``.

    :type gamma: dict
    :param gamma: ``Gamma_KK`` keyed by sorted index tuples of length ``n - k``
    """
    n = a.dim
    if not a.is_diagonal:
        raise ValueError("The pointwise inequality needs a diagonal matrix")
    if not 1 <= k <= n:
        raise MalformedQueryError(f"k must lie in 1..{n} (got: {k})")
    mu = a.diagonal_entries()
    if any(x < 0 for x in mu):
        raise NotPositiveSemidefiniteError("Eigenvalues must be non-negative", certify_psd(a))
    values: Dict[IndexSet, Fraction] = {}
    for index in itertools.combinations(range(n), n - k):
        if index not in gamma:
            raise MalformedQueryError(f"No Gamma coefficient for index set {index}")
        value = as_rational(gamma[index])
        if value < 0:
            raise ValueError(f"Gamma coefficient for {index} is negative")
        values[index] = value
    weighted = Fraction(0)
    mu_total = Fraction(0)
    for subset in itertools.combinations(range(n), k):
        mu_j = math.prod(mu[j] for j in subset)
        mu_total += mu_j
        complement = tuple(j for j in range(n) if j not in subset)
        weighted += mu_j * values[complement]
    gamma_total = sum(values.values(), Fraction(0))
    return InequalityReport(
        "pointwise-wedge",
        weighted,
        mu_total * gamma_total,
        {"mu": list(mu), "gamma": {",".join(map(str, idx)): v for idx, v in sorted(values.items())}, "k": k},
    )


def _bezout_sides(
    matrices: Sequence[Tuple[SymMatrix, int]], n_matrix: SymMatrix
) -> Tuple[Fraction, Fraction, List[Fraction]]:
    n = n_matrix.dim
    filler = n - sum(a for _, a in matrices)
    joint = mixed_discriminant(list(matrices) + [(n_matrix, filler)])
    det_n = n_matrix.det()
    singles = [mixed_discriminant([(m, a), (n_matrix, n - a)]) for m, a in matrices]
    return joint, det_n, singles


def _check_bezout_input(matrices: Sequence[Tuple[SymMatrix, int]], n_matrix: SymMatrix, k_select: int) -> None:
    n = n_matrix.dim
    for m, _ in matrices:
        if m.dim != n:
            raise DimensionMismatchError(f"{m.dim}x{m.dim} matrix next to a {n}x{n} N")
    validate_bezout_multiplicities(n, [a for _, a in matrices], k_select)
    for i, (m, _) in enumerate(matrices, start=1):
        _require_psd(m, f"M_{i}")
    _require_psd(n_matrix, "N", definite=True)


def _instance(matrices: Sequence[Tuple[SymMatrix, int]], n_matrix: SymMatrix, **extra: Any) -> Dict[str, Any]:
    instance: Dict[str, Any] = {
        "matrices": [m.to_dict() for m, _ in matrices],
        "multiplicities": [a for _, a in matrices],
        "N": n_matrix.to_dict(),
    }
    instance.update(extra)
    return instance


def check_discriminant_bezout(
    matrices: Sequence[Tuple[SymMatrix, int]], n_matrix: SymMatrix, k_select: int
) -> InequalityReport:
    """
    ``C(n, a_k) D(M_1^{a_1}, ..., M_r^{a_r}, N^{n-|a|}) det(N)^{r-1}
    <= prod C(n, a_i) D(M_i^{a_i}, N^{n-a_i})``.

    :raises NotPositiveSemidefiniteError: if some ``M_i`` is not PSD or ``N``
      is not PD
    """
    _check_bezout_input(matrices, n_matrix, k_select)
    n = n_matrix.dim
    r = len(matrices)
    multiplicities = [a for _, a in matrices]
    joint, det_n, singles = _bezout_sides(matrices, n_matrix)
    lhs = math.comb(n, multiplicities[k_select - 1]) * joint * det_n ** (r - 1)
    rhs = math.prod(math.comb(n, a) for a in multiplicities) * math.prod(singles)
    return InequalityReport("discriminant-bezout", lhs, rhs, _instance(matrices, n_matrix, k_select=k_select))


def diagonal_bezout_constant(n: int, multiplicities: Sequence[int]) -> Fraction:
    """
    ``(n!)^{r-1} (n-|a|)! / prod (n-a_i)!``.
    """
    r = len(multiplicities)
    numerator = math.factorial(n) ** (r - 1) * math.factorial(n - sum(multiplicities))
    return Fraction(numerator, math.prod(math.factorial(n - a) for a in multiplicities))


def check_diagonal_discriminant_bezout(
    matrices: Sequence[Tuple[SymMatrix, int]], n_matrix: SymMatrix, require_diagonal: bool = True
) -> InequalityReport:
    """
    ``D(M_1^{a_1}, ..., M_r^{a_r}, N^{n-|a|}) det(N)^{r-1}
    <= c prod D(M_i^{a_i}, N^{n-a_i})`` with the sharper constant
    :func:`diagonal_bezout_constant`, valid for diagonal ``M_i``.

    :type require_diagonal: bool
    :param require_diagonal: refuse non-diagonal ``M_i``; the constant search
      passes ``False`` to probe them
    """
    _check_bezout_input(matrices, n_matrix, 1)
    if require_diagonal and not all(m.is_diagonal for m, _ in matrices):
        raise ValueError("The sharper constant is only established for diagonal M_i")
    n = n_matrix.dim
    r = len(matrices)
    multiplicities = [a for _, a in matrices]
    joint, det_n, singles = _bezout_sides(matrices, n_matrix)
    lhs = joint * det_n ** (r - 1)
    rhs = diagonal_bezout_constant(n, multiplicities) * math.prod(singles)
    inequality_id = "discriminant-bezout-diagonal" if require_diagonal else "discriminant-diagonal-constant-search"
    return InequalityReport(inequality_id, lhs, rhs, _instance(matrices, n_matrix))


def check_discriminant_reverse_kt(
    a: SymMatrix, b: SymMatrix, forms: Sequence[SymMatrix], k: int
) -> InequalityReport:
    """
    ``det(B) D(A^k, C_1, ..., C_{n-k})
    <= C(n, k) D(A^k, B^{n-k}) D(B^k, C_1, ..., C_{n-k})``.

    :raises NotPositiveSemidefiniteError: if ``A`` or some ``C_i`` is not PSD
      or ``B`` is not PD
    """
    n = b.dim
    for m in [a, *forms]:
        if m.dim != n:
            raise DimensionMismatchError(f"{m.dim}x{m.dim} matrix next to a {n}x{n} B")
    if not 1 <= k <= n:
        raise MalformedQueryError(f"k must lie in 1..{n} (got: {k})")
    if len(forms) != n - k:
        raise MalformedQueryError(f"Expected {n - k} forms C_i, got {len(forms)}")
    _require_psd(a, "A")
    _require_psd(b, "B", definite=True)
    for i, c in enumerate(forms, start=1):
        _require_psd(c, f"C_{i}")
    rest = [(c, 1) for c in forms]
    lhs = b.det() * mixed_discriminant([(a, k)] + rest)
    rhs = math.comb(n, k) * mixed_discriminant([(a, k), (b, n - k)]) * mixed_discriminant([(b, k)] + rest)
    instance = {"A": a.to_dict(), "B": b.to_dict(), "forms": [c.to_dict() for c in forms], "k": k}
    return InequalityReport("discriminant-reverse-kt", lhs, rhs, instance)
