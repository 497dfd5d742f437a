"""
Exact mixed volumes of rational polytopes.
"""

import functools
import logging
from fractions import Fraction
from typing import (
    Dict,
    List,
    Sequence,
    Tuple,
)

from mixvol import (
    DimensionMismatchError,
    MalformedQueryError,
)
from mixvol.geometry import (
    minkowski_sum,
    scale,
    volume,
    VPolytope,
)
from mixvol.multilinear import (
    Counts,
    interpolate_coefficient,
    polarize,
    sub_multisets,
)

log = logging.getLogger(__name__)

__all__ = (
    "MixedVolumeQuery",
    "mixed_volume",
    "mixed_volume_by_interpolation",
    "mixed_volume_of",
)


class MixedVolumeQuery:
    """
    The arguments of ``V(K_1^{a_1}, ..., K_r^{a_r})``: bodies of a common
    dimension ``n`` with non-negative integer multiplicities adding up to ``n``.
    """

    def __init__(self, entries: Sequence[Tuple[VPolytope, int]]) -> None:
        """
        :type entries: list of (VPolytope, int)
        :param entries: ``(body, multiplicity)`` pairs; a body may appear in
          several entries and multiplicity 0 is allowed
        """
        if not entries:
            raise MalformedQueryError("A mixed volume query needs at least one body")
        dims = {body.dim for body, _ in entries}
        if len(dims) > 1:
            raise DimensionMismatchError(f"Mixed volume of bodies of different dimensions: {sorted(dims)}")
        self.dim = dims.pop()
        for _, multiplicity in entries:
            if not isinstance(multiplicity, int) or isinstance(multiplicity, bool) or multiplicity < 0:
                raise MalformedQueryError(f"Multiplicities must be non-negative integers (got: {multiplicity!r})")
        total = sum(multiplicity for _, multiplicity in entries)
        if total != self.dim:
            raise MalformedQueryError(f"Multiplicities add up to {total}, expected the dimension {self.dim}")
        self.entries: Tuple[Tuple[VPolytope, int], ...] = tuple((body, multiplicity) for body, multiplicity in entries)

    @classmethod
    def of(cls, *bodies: VPolytope) -> "MixedVolumeQuery":
        """
        Query for ``V(L_1, ..., L_n)`` given the flattened n-tuple.
        """
        return cls([(body, 1) for body in bodies])

    def distinct(self) -> Tuple[List[VPolytope], List[int]]:
        """
        Merge entries holding equal bodies and drop zero multiplicities,
        keeping first-occurrence order.
        """
        merged: Dict[VPolytope, int] = {}
        for body, multiplicity in self.entries:
            if multiplicity:
                merged[body] = merged.get(body, 0) + multiplicity
        return list(merged), list(merged.values())

    def flattened(self) -> Tuple[VPolytope, ...]:
        return tuple(body for body, multiplicity in self.entries for _ in range(multiplicity))

    def __repr__(self) -> str:
        parts = ", ".join(f"{body!r}^{multiplicity}" for body, multiplicity in self.entries)
        return f"MixedVolumeQuery({parts})"


def _weighted_sum(bodies: Sequence[VPolytope], weights: Sequence[int]) -> VPolytope:
    result = None
    for body, weight in zip(bodies, weights):
        if not weight:
            continue
        part = scale(body, weight)
        result = part if result is None else minkowski_sum(result, part)
    assert result is not None
    return result


def mixed_volume(query: MixedVolumeQuery, workers: int = 1) -> Fraction:
    """
    ``V(K_1^{a_1}, ..., K_r^{a_r})`` by polarization of the volume over the
    flattened argument list.

    The sums ``c_1 K_1 + ... + c_r K_r`` are built once per count vector,
    each extending the sum for the count vector with its last non-zero entry
    removed, so shared partial sums are not recomputed.

    :type workers: int
    :param workers: number of threads measuring the subset sums

    :rtype: Fraction
    :return: the exact mixed volume
    """
    bodies, multiplicities = query.distinct()
    if len(bodies) == 1:
        return volume(bodies[0])
    sums: Dict[Counts, VPolytope] = {}
    for counts in sub_multisets(multiplicities):
        last = max(j for j, c in enumerate(counts) if c)
        prefix = counts[:last] + (0,) * (len(counts) - last)
        part = scale(bodies[last], counts[last])
        sums[counts] = minkowski_sum(sums[prefix], part) if any(prefix) else part
    log.debug("Polarizing %d subset sums for %r", len(sums), query)
    return polarize(multiplicities, lambda counts: volume(sums[counts]), workers=workers)


def mixed_volume_by_interpolation(query: MixedVolumeQuery) -> Fraction:
    """
    ``V(K_1^{a_1}, ..., K_r^{a_r})`` read off the polynomial
    ``vol(t_1 K_1 + ... + t_r K_r)`` after interpolating it on an integer
    grid. Independent of :func:`mixed_volume`, which it must always match.
    """
    bodies, multiplicities = query.distinct()
    return interpolate_coefficient(multiplicities, lambda t: volume(_weighted_sum(bodies, t)))


@functools.lru_cache(maxsize=8192)
def _cached_mixed_volume(entries: Tuple[Tuple[VPolytope, int], ...]) -> Fraction:
    return mixed_volume(MixedVolumeQuery(entries))


def mixed_volume_of(*entries: Tuple[VPolytope, int]) -> Fraction:
    """
    Shorthand used by the inequality checks: ``mixed_volume_of((K, 2), (D, 1))``
    is ``V(K^2, D)``. Results are memoized per argument multiset.
    """
    merged: Dict[VPolytope, int] = {}
    for body, multiplicity in entries:
        if multiplicity:
            merged[body] = merged.get(body, 0) + multiplicity
    if not merged:
        raise MalformedQueryError("A mixed volume query needs at least one body")
    key = tuple(sorted(merged.items(), key=lambda item: (item[0].dim, item[0].vertices)))
    return _cached_mixed_volume(key)
