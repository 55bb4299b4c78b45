"""Anti-blocking bodies (convex corners) and their decomposition identities.

An anti-blocking body lives in the closed nonnegative orthant and is
down-closed: together with any point it contains the whole box from the
origin to that point.  For such bodies coordinate projections coincide with
coordinate sections, which is what powers the projection-split formula for
mixed volumes of bodies in opposite orthants.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .geometry import (
    CoordSubspace,
    VPolytope,
    Vec,
    as_vec,
    convex_hull,
    join_hull,
    member,
    negate,
    volume,
)
from .hull import hull_of_points
from .mixed import mixed_volume_pair


@dataclass(frozen=True)
class AntiBlockingBody:
    """A validated down-closed polytope in the nonnegative orthant."""

    body: VPolytope

    def __post_init__(self):
        if any(x < 0 for v in self.body.vertices for x in v):
            raise ValueError("anti-blocking body has a negative coordinate")

    @property
    def dim(self) -> int:
        return self.body.dim

    @property
    def vertices(self) -> tuple[Vec, ...]:
        return self.body.vertices

    @staticmethod
    def from_polytope(poly: VPolytope) -> "AntiBlockingBody":
        if not validate_ab(poly):
            raise ValueError("polytope is not down-closed")
        return AntiBlockingBody(poly)


def ab_hull(generators, dim: int | None = None) -> AntiBlockingBody:
    """Smallest anti-blocking body containing the given nonnegative points.

    Equals the hull of all coordinate maskings of the generators, i.e. the
    union of the boxes [0, g].
    """
    gens = [as_vec(g) for g in generators]
    if not gens:
        raise ValueError("no generators")
    n = dim if dim is not None else len(gens[0])
    pts = set()
    for g in gens:
        if any(x < 0 for x in g):
            raise ValueError("negative coordinate in generator")
        support = [i for i, x in enumerate(g) if x != 0]
        for keep in itertools.product((False, True), repeat=len(support)):
            masked = list(g)
            for flag, i in zip(keep, support):
                if not flag:
                    masked[i] = Fraction(0)
            pts.add(tuple(masked))
    return AntiBlockingBody(convex_hull(pts, n))


def validate_ab(poly: VPolytope) -> bool:
    """Is the polytope down-closed inside the nonnegative orthant?

    Checks that zeroing any single coordinate of any vertex stays inside;
    by convexity and composition of maskings this is equivalent to requiring
    every coordinate projection to be a subset of the body (projections equal
    sections).
    """
    if any(x < 0 for v in poly.vertices for x in v):
        return False
    for v in poly.vertices:
        for i, x in enumerate(v):
            if x == 0:
                continue
            masked = tuple(Fraction(0) if j == i else y for j, y in enumerate(v))
            if not member(poly, masked):
                return False
    return True


_proj_vol_cache: dict[tuple, Fraction] = {}


def projected_volume(body: AntiBlockingBody, indices: tuple[int, ...]) -> Fraction:
    """|indices|-dimensional volume of the projection onto those coordinates."""
    key = (body.dim, body.vertices, indices)
    val = _proj_vol_cache.get(key)
    if val is not None:
        return val
    if not indices:
        val = Fraction(1)
    else:
        pts = {tuple(v[i] for i in indices) for v in body.vertices}
        val = hull_of_points(pts, len(indices)).volume
    _proj_vol_cache[key] = val
    return val


def ab_opposite_mixed(k: AntiBlockingBody, kp: AntiBlockingBody, j: int) -> Fraction:
    """V_n(K[j], -K'[n-j]) via the projection-split sum over coordinate subspaces.

    Averages Vol_j(P_E K) * Vol_{n-j}(P_{E-perp} K') over all j-element
    coordinate subspaces E.
    """
    n = k.dim
    if kp.dim != n:
        raise ValueError("dimension mismatch")
    if not 0 <= j <= n:
        raise ValueError("copy count out of range")
    total = Fraction(0)
    everything = tuple(range(n))
    for subset in itertools.combinations(everything, j):
        rest = tuple(i for i in everything if i not in subset)
        total += projected_volume(k, subset) * projected_volume(kp, rest)
    return total / comb(n, j)


def ab_join_volume(k: AntiBlockingBody, kp: AntiBlockingBody) -> Fraction:
    """Vol(K v -K'), summed from the opposite-orthant mixed volumes."""
    if kp.dim != k.dim:
        raise ValueError("dimension mismatch")
    n = k.dim
    return sum((ab_opposite_mixed(k, kp, n - j) for j in range(n + 1)), Fraction(0))


def join_with_negation(k: AntiBlockingBody, kp: AntiBlockingBody) -> VPolytope:
    """conv(K u -K'), the direct geometric object behind ab_join_volume."""
    return join_hull(k.body, negate(kp.body))


@dataclass(frozen=True)
class ReverseKleitmanReport:
    j: int
    lhs: Fraction  # V_n(K[j], T[n-j]), both bodies in the positive orthant
    rhs: Fraction  # V_n(K[j], -T[n-j])
    holds: bool
    is_equality: bool


def reverse_kleitman_check(k: AntiBlockingBody, t: AntiBlockingBody, j: int) -> ReverseKleitmanReport:
    """Check V_n(K[j], T[n-j]) <= V_n(K[j], -T[n-j]) on a concrete pair.

    Both sides go through the interpolation engine; nothing is assumed.
    Equality occurrences are recorded but not classified.
    """
    lhs = mixed_volume_pair(k.body, t.body, j)
    rhs = mixed_volume_pair(k.body, negate(t.body), j)
    return ReverseKleitmanReport(j, lhs, rhs, lhs <= rhs, lhs == rhs)


@dataclass(frozen=True)
class RSProjectionReport:
    indices: tuple[int, ...]
    product: Fraction  # Vol_j(P_E K) * Vol_{n-j}(P_{E-perp} K)
    bound: Fraction    # C(n, j) * Vol(K)
    holds: bool
    is_equality: bool


def rs_projection_check(k: AntiBlockingBody, sub: CoordSubspace) -> RSProjectionReport:
    """Rogers-Shephard for a projection/section pair of one body."""
    if sub.ambient_dim != k.dim:
        raise ValueError("subspace ambient dimension mismatch")
    idx = sub.indices
    rest = sub.complement().indices
    product = projected_volume(k, idx) * projected_volume(k, rest)
    bound = comb(k.dim, len(idx)) * volume(k.body)
    return RSProjectionReport(idx, product, bound, product <= bound, product == bound)


def random_ab_body(rng: random.Random, n: int, generators: int | None = None,
                   coord_max: int = 4, full_dim: bool = True) -> AntiBlockingBody:
    """Seeded random anti-blocking body: down-closure of integer generators.

    Samples `generators` points with coordinates in [0, coord_max]; when
    full_dim is requested and no generator is positive everywhere, one extra
    point with all coordinates >= 1 is added.
    """
    k = generators if generators is not None else n
    gens = [tuple(rng.randint(0, coord_max) for _ in range(n)) for _ in range(k)]
    if full_dim and not any(all(x >= 1 for x in g) for g in gens):
        gens.append(tuple(rng.randint(1, max(coord_max, 1)) for _ in range(n)))
    return ab_hull(gens, n)
