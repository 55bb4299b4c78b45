"""Exact linear algebra over integers and rationals.

Everything here is tolerance-free: integer matrices go through fraction-free
(Bareiss) elimination, rational ones through plain Gaussian elimination on
``fractions.Fraction``.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def det_int(rows: list[list[int]]) -> int:
    """Determinant of a square integer matrix (Bareiss, exact)."""
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    m = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            row_i = m[i]
            row_k = m[k]
            f = row_i[k]
            for j in range(k + 1, n):
                # Bareiss update: division by the previous pivot is exact.
                row_i[j] = (row_i[j] * pivot - f * row_k[j]) // prev
        prev = pivot
    return sign * m[-1][-1]


def det_fraction(rows: list[list[Fraction]]) -> Fraction:
    """Determinant of a square rational matrix."""
    denom = 1
    for r in rows:
        for x in r:
            denom = denom * x.denominator // gcd(denom, x.denominator)
    scaled = [[int(x * denom) for x in r] for r in rows]
    n = len(rows)
    return Fraction(det_int(scaled), denom**n)


def vec_gcd(values) -> int:
    g = 0
    for v in values:
        g = gcd(g, abs(v))
    return g


def hyperplane_normal(diffs: list[tuple[int, ...]]) -> tuple[int, ...] | None:
    """Primitive integer normal to the span of n-1 integer vectors in R^n.

    Computed as the generalized cross product (signed maximal minors).
    Returns None when the vectors are linearly dependent.
    """
    n = len(diffs) + 1
    comps = []
    for j in range(n):
        minor = [[row[c] for c in range(n) if c != j] for row in diffs]
        d = det_int(minor)
        comps.append(-d if j % 2 else d)
    g = vec_gcd(comps)
    if g == 0:
        return None
    return tuple(c // g for c in comps)


def rank_rows(rows: list[list[Fraction]]) -> int:
    """Row rank of a rational matrix."""
    if not rows:
        return 0
    m = [list(r) for r in rows]
    ncols = len(m[0])
    rank = 0
    for col in range(ncols):
        pivot_row = None
        for i in range(rank, len(m)):
            if m[i][col] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        m[rank], m[pivot_row] = m[pivot_row], m[rank]
        pv = m[rank][col]
        prow = m[rank]
        for i in range(len(m)):
            if i != rank and m[i][col] != 0:
                f = m[i][col] / pv
                row = m[i]
                for j in range(col, ncols):
                    row[j] -= f * prow[j]
        rank += 1
        if rank == len(m):
            break
    return rank


def rank_int_rows(rows: list[tuple[int, ...]]) -> int:
    return rank_rows([[Fraction(x) for x in r] for r in rows])


def solve_linear(matrix: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    """Solve a nonsingular square rational system exactly."""
    n = len(matrix)
    aug = [list(matrix[i]) + [rhs[i]] for i in range(n)]
    for col in range(n):
        pivot_row = None
        for i in range(col, n):
            if aug[i][col] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            raise ValueError("singular system")
        aug[col], aug[pivot_row] = aug[pivot_row], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[col])]
    return [aug[i][n] for i in range(n)]


class AffineSpan:
    """Incremental affine-rank tracker with exact coordinates.

    Feeds points one at a time; keeps an internal reduced basis of the
    direction space so that membership tests and coordinate extraction stay
    O(rank * dim) per point.
    """

    def __init__(self, base: tuple[Fraction, ...]):
        self.base = base
        self.dim = len(base)
        # Each entry: (pivot column, reduced direction row, combination over
        # the original accepted directions).
        self._pivots: list[tuple[int, list[Fraction], list[Fraction]]] = []

    @property
    def rank(self) -> int:
        return len(self._pivots)

    def _reduce(self, point) -> tuple[list[Fraction], list[Fraction]]:
        residual = [Fraction(p) - Fraction(b) for p, b in zip(point, self.base)]
        coeffs = [Fraction(0)] * len(self._pivots)
        for col, row, combo in self._pivots:
            f = residual[col]
            if f == 0:
                continue
            for j in range(self.dim):
                residual[j] -= f * row[j]
            for j in range(len(combo)):
                coeffs[j] += f * combo[j]
        return residual, coeffs

    def try_add(self, point) -> bool:
        """Accept the point as a new independent direction if it enlarges the span."""
        residual, coeffs = self._reduce(point)
        col = next((j for j, v in enumerate(residual) if v != 0), None)
        if col is None:
            return False
        pv = residual[col]
        row = [v / pv for v in residual]
        k = len(self._pivots)
        combo = [-c / pv for c in coeffs] + [1 / pv]
        for _, _, old in self._pivots:
            old.append(Fraction(0))
        self._pivots.append((col, row, combo))
        return True

    def coordinates(self, point) -> list[Fraction] | None:
        """Coordinates of the point over the accepted directions, None if outside."""
        residual, coeffs = self._reduce(point)
        if any(v != 0 for v in residual):
            return None
        return coeffs
