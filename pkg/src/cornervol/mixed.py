"""Exact mixed volumes via interpolation and polarization.

The two-body form goes through the volume polynomial of K + tT: the n+1
probes at integer t are exact hull volumes and the Vandermonde system is
solved over the rationals, so every coefficient (and hence every mixed
volume) is exact.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .geometry import VPolytope, minkowski_sum, scale, sum_polytopes, volume
from .linalg import solve_linear


@dataclass(frozen=True)
class VolumePolynomial:
    """Coefficients of Vol(K + tT) = sum_j coeffs[j] * t^(n-j).

    coeffs[j] equals C(n, j) * V_n(K[j], T[n-j]); in particular coeffs[n] is
    Vol(K) and coeffs[0] is Vol(T).
    """

    dim: int
    coeffs: tuple[Fraction, ...]

    def value_at(self, t) -> Fraction:
        t = Fraction(t)
        n = self.dim
        return sum((c * t ** (n - j) for j, c in enumerate(self.coeffs)), Fraction(0))

    def mixed(self, j: int) -> Fraction:
        if not 0 <= j <= self.dim:
            raise ValueError("copy count out of range")
        return self.coeffs[j] / comb(self.dim, j)


_poly_cache: dict[tuple, VolumePolynomial] = {}


def volume_polynomial(k: VPolytope, t: VPolytope) -> VolumePolynomial:
    """Exact expansion of Vol(K + tT) in t, via probes at t = 0..n."""
    if k.dim != t.dim:
        raise ValueError("dimension mismatch")
    n = k.dim
    key = (n, k.vertices, t.vertices)
    cached = _poly_cache.get(key)
    if cached is not None:
        return cached
    values = [volume(k)]
    for step in range(1, n + 1):
        values.append(volume(minkowski_sum(k, scale(t, step))))
    rows = [
        [Fraction(step) ** (n - j) for j in range(n + 1)]
        for step in range(n + 1)
    ]
    coeffs = tuple(solve_linear(rows, [Fraction(v) for v in values]))
    for c in coeffs:
        if c < 0:
            raise RuntimeError("negative mixed volume from interpolation (engine bug)")
    if coeffs[n] != values[0] or coeffs[0] != volume(t):
        raise RuntimeError("volume polynomial endpoints disagree (engine bug)")
    poly = VolumePolynomial(n, coeffs)
    _poly_cache[key] = poly
    return poly


def mixed_volume_pair(k: VPolytope, t: VPolytope, j: int) -> Fraction:
    """V_n(K[j], T[n-j]): j copies of K, n-j copies of T."""
    return volume_polynomial(k, t).mixed(j)


def mixed_volume_tuple(bodies) -> Fraction:
    """V_n(K_1, ..., K_n) by inclusion-exclusion polarization.

    Exponential in n; meant for cross-checking the interpolation path on
    small instances.
    """
    bodies = list(bodies)
    if not bodies:
        raise ValueError("no bodies given")
    n = bodies[0].dim
    if len(bodies) != n:
        raise ValueError(f"need exactly {n} bodies in dimension {n}")
    for b in bodies:
        if b.dim != n:
            raise ValueError("dimension mismatch")
    total = Fraction(0)
    for size in range(1, n + 1):
        sign = (-1) ** (n - size)
        for subset in itertools.combinations(range(n), size):
            vol = volume(sum_polytopes([bodies[i] for i in subset]))
            total += sign * vol
    return total / factorial(n)
