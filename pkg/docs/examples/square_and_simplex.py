"""
This example computes the mixed volume of the unit square and the standard
triangle, checks it against the interpolation formula and the identity
2 V(P, Q) = vol(P + Q) - vol(P) - vol(Q), then counts the solutions of a
generic system with these Newton polytopes.

Usage: python square_and_simplex.py
"""

from mixvol.geometry import (
    minkowski_sum,
    standard_simplex,
    unit_cube,
    volume,
)
from mixvol.mixed_volume import (
    mixed_volume,
    mixed_volume_by_interpolation,
    MixedVolumeQuery,
)
from mixvol.newton import (
    compare_bounds,
    parse_system,
)

square = unit_cube(2)
triangle = standard_simplex(2)
query = MixedVolumeQuery.of(square, triangle)

value = mixed_volume(query)
print(f"V(square, triangle) = {value}")
print(f"by interpolation     = {mixed_volume_by_interpolation(query)}")
print(f"from volumes         = {(volume(minkowski_sum(square, triangle)) - volume(square) - volume(triangle)) / 2}")

system = parse_system("x1*x2 + 2*x1 - x2 + 5\n3*x1 + x2 - 1")
comparison = compare_bounds(system)
print(f"BKK count: {comparison.bkk}, Bezout bound: {comparison.classical_bezout}")
