"""
Seeded random instances.

Every random choice goes through a numpy ``Generator`` (PCG64) seeded from an
integer, and only integer draws feed the geometry, so a seed reproduces the
same instance on every platform. Per-trial seeds are derived from the master
seed and the trial index with ``SeedSequence``, so trials can run in any
order or concurrently.
"""

import itertools
import logging
from fractions import Fraction
from typing import (
    Dict,
    List,
    Optional,
    Sequence,
    Tuple,
)

import numpy as np

import mixvol
from mixvol.config import Config
from mixvol.discriminant import SymMatrix
from mixvol.geometry import (
    box,
    Point,
    scale,
    segment,
    translate,
    VPolytope,
    zonotope,
)
from mixvol.newton import LaurentPolynomial

log = logging.getLogger(__name__)

KINDS = ("random-hull", "segment", "zonotope", "simplex", "box", "scaled-copy")


def trial_seed(master: int, trial: int) -> int:
    """
    The 64-bit seed of trial ``trial`` under master seed ``master``.
    """
    sequence = np.random.SeedSequence(master, spawn_key=(trial,))
    return int(sequence.generate_state(1, np.uint64)[0])


class InstanceGenerator:
    """
    Random rational polytopes, matrices and index data of a fixed dimension.

    Coordinates are drawn uniformly from ``{-B, ..., B} / q`` with ``q``
    picked from the configured denominators. A random hull uses
    ``2n + extra_points`` points. Unless a full-dimensional body is
    requested, a ``degenerate_fraction`` share of bodies are replaced by a
    segment or the hull of at most ``n`` points.
    """

    def __init__(self, seed: int, dim: int, kind: str = "random-hull", config: Optional[Config] = None) -> None:
        """
        :type seed: int
        :param seed: non-negative seed (at most 64 bits)

        :type dim: int
        :param dim: ambient dimension of generated bodies and matrices

        :type kind: str
        :param kind: default body kind, one of ``KINDS``

        :type config: Config
        :param config: source of the ``[harness]`` options; defaults to the
          library-wide ``mixvol.config``
        """
        if kind not in KINDS:
            raise ValueError(f"Unknown instance kind {kind!r}; expected one of {', '.join(KINDS)}")
        if dim < 1:
            raise ValueError(f"Dimension must be positive (got: {dim})")
        self.seed = seed
        self.dim = dim
        self.kind = kind
        config = config or mixvol.config
        self.extra_points = config.harness_int("extra_points")
        self.coordinate_bound = config.harness_int("coordinate_bound")
        self.denominators = config.harness_ints("denominators")
        self.degenerate_fraction = config.harness_float("degenerate_fraction")
        self.rng = np.random.default_rng(seed)

    def __repr__(self) -> str:
        return f"InstanceGenerator(seed={self.seed}, dim={self.dim}, kind={self.kind!r})"

    def integer(self, low: int, high: int) -> int:
        """
        Uniform integer in ``low..high`` inclusive.
        """
        return int(self.rng.integers(low, high + 1))

    def rational(self, low: Optional[int] = None, high: Optional[int] = None) -> Fraction:
        bound = self.coordinate_bound
        q = self.denominators[self.integer(0, len(self.denominators) - 1)]
        lo = -bound if low is None else low
        hi = bound if high is None else high
        return Fraction(self.integer(lo, hi), q)

    def point(self) -> Point:
        return tuple(self.rational() for _ in range(self.dim))

    def nonzero_point(self) -> Point:
        while True:
            p = self.point()
            if any(p):
                return p

    def chance(self, probability: float) -> bool:
        return bool(self.rng.random() < probability)

    def body(self, kind: Optional[str] = None, full: bool = False, reference: Optional[VPolytope] = None) -> VPolytope:
        """
        A random body of the given kind (the generator's default kind if
        omitted).

        :type full: bool
        :param full: only return full-dimensional bodies (no degenerate
          injection; ``segment`` is then refused for ``n > 1``)

        :type reference: VPolytope
        :param reference: the body a ``scaled-copy`` is a copy of; a random
          hull is used when omitted
        """
        kind = kind or self.kind
        if kind not in KINDS:
            raise ValueError(f"Unknown instance kind {kind!r}")
        if not full and kind != "segment" and self.chance(self.degenerate_fraction):
            return self.degenerate_body()
        while True:
            body = self._draw(kind, reference, full)
            if not full or body.is_full_dimensional:
                return body
            log.debug("Redrawing a flat %s in dimension %d", kind, self.dim)

    def _draw(self, kind: str, reference: Optional[VPolytope], full: bool) -> VPolytope:
        n = self.dim
        if kind == "random-hull":
            return VPolytope(n, [self.point() for _ in range(2 * n + self.extra_points)])
        if kind == "segment":
            if full and n > 1:
                raise ValueError("A segment is never full-dimensional for n > 1")
            a = self.point()
            return segment(a, tuple(x + y for x, y in zip(a, self.nonzero_point())))
        if kind == "zonotope":
            return self.zonotope()
        if kind == "simplex":
            return VPolytope(n, [self.point() for _ in range(n + 1)])
        if kind == "box":
            lows = self.point()
            return box(lows, [low + self.rational(1, self.coordinate_bound) for low in lows])
        base = reference if reference is not None else self._draw("random-hull", None, full)
        factor = Fraction(self.integer(1, 4 * self.coordinate_bound), self.denominators[-1])
        return translate(scale(base, factor), self.point())

    def zonotope(self, generators: Optional[int] = None) -> VPolytope:
        """
        A zonotope with ``generators`` random generators (``n + 1`` by
        default) and a random base point.
        """
        count = self.dim + 1 if generators is None else generators
        return zonotope([self.nonzero_point() for _ in range(count)], self.point())

    def degenerate_body(self) -> VPolytope:
        """
        A segment, or the hull of between two and ``n`` random points.
        """
        n = self.dim
        if n == 1 or self.chance(0.5):
            return self._draw("segment", None, False)
        return VPolytope(n, [self.point() for _ in range(self.integer(2, n))])

    def bodies(self, count: int, kind: Optional[str] = None) -> List[VPolytope]:
        return [self.body(kind) for _ in range(count)]

    def multiplicities(self, total: int) -> List[int]:
        """
        A random composition of a random ``|a| <= total`` into positive parts.
        """
        size = self.integer(1, total)
        parts = self.integer(1, size)
        if parts == 1:
            return [size]
        cuts = sorted(int(c) for c in self.rng.choice(np.arange(1, size), size=parts - 1, replace=False))
        bounds = [0] + cuts + [size]
        return [b - a for a, b in zip(bounds, bounds[1:])]

    def psd_matrix(self, rank: Optional[int] = None, definite: bool = False, diagonal: bool = False) -> SymMatrix:
        """
        A random PSD matrix ``B B^t`` with ``B`` of shape ``n x rank``
        (``rank = n`` by default), or a random diagonal one.

        :type definite: bool
        :param definite: redraw until the matrix is positive definite
        """
        n = self.dim
        while True:
            if diagonal:
                low = 1 if definite else 0
                matrix = SymMatrix.diagonal([self.rational(low, self.coordinate_bound) for _ in range(n)])
            else:
                columns = n if rank is None else rank
                b = [[self.rational() for _ in range(columns)] for _ in range(n)]
                matrix = SymMatrix(
                    [[sum((b[i][c] * b[j][c] for c in range(columns)), Fraction(0)) for j in range(n)] for i in range(n)]
                )
            if not definite or matrix.det() > 0:
                return matrix

    def gamma(self, k: int) -> Dict[Tuple[int, ...], Fraction]:
        """
        Random non-negative ``Gamma_KK`` for every ``(n - k)``-subset ``K``.
        """
        return {index: self.rational(0) for index in itertools.combinations(range(self.dim), self.dim - k)}

    def pick(self, items: Sequence[str]) -> str:
        return items[self.integer(0, len(items) - 1)]

    def laurent_system(self, max_terms: int = 4, exponent_bound: int = 2) -> List[LaurentPolynomial]:
        """
        ``n`` random Laurent polynomials in ``n`` variables with between two
        and ``max_terms`` terms and exponents in ``-exponent_bound..exponent_bound``.
        """
        n = self.dim
        system = []
        while len(system) < n:
            terms = [
                (self.integer(1, self.coordinate_bound), [self.integer(-exponent_bound, exponent_bound) for _ in range(n)])
                for _ in range(self.integer(2, max_terms))
            ]
            polynomial = LaurentPolynomial(n, terms)
            if not polynomial.is_zero:
                system.append(polynomial)
        return system
