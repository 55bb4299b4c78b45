"""Exact convex hull, volume, and facet machinery in dimensions 1 through 8.

The engine is an incremental beneath-beyond construction over scaled integer
coordinates: every predicate (visibility, extremeness, facet activity) is an
exact integer comparison.  numpy int64 is used purely as an accelerator for
the visibility and facet-activity scans and is disabled automatically when a
magnitude bound shows that int64 could overflow, so results never depend on
floating point or machine word size.

Degenerate inputs (affine rank below the ambient dimension) are canonicalized
inside their affine hull via exact rational coordinates; their ambient volume
is zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, gcd

import numpy as np

from .linalg import AffineSpan, det_int, hyperplane_normal, rank_int_rows

Vec = tuple[Fraction, ...]

MAX_DIM = 8

# int64 safety margin for the accelerated scans.
_INT64_BOUND = 2**62

# Enables expensive structural self-checks inside the engine (test use only).
strict_checks = False


@dataclass(frozen=True)
class HullData:
    dim: int
    rank: int
    vertices: tuple[Vec, ...]
    volume: Fraction


def _as_fraction_vec(point) -> Vec:
    return tuple(Fraction(x) for x in point)


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


class _Placing:
    """Beneath-beyond structure over full-rank integer points."""

    def __init__(self, n: int, points: list[tuple[int, ...]], simplex_ids: list[int]):
        self.n = n
        self.points = points
        self.apex = points[simplex_ids[0]]
        self.osum = tuple(sum(points[i][j] for i in simplex_ids) for j in range(n))
        self.pieces: dict[int, tuple[tuple[int, ...], tuple[int, ...], int]] = {}
        self.alive: set[int] = set()
        self.ridges: dict[frozenset[int], set[int]] = {}
        self._next_id = 0
        self._max_coord = max((abs(c) for p in points for c in p), default=1)
        self._max_normal = 1
        self._np_rows: list[tuple[int, ...]] = []  # (a..., b) per piece id
        self._np_mat: np.ndarray | None = None
        self._np_len = 0
        for omit in range(n + 1):
            verts = tuple(simplex_ids[i] for i in range(n + 1) if i != omit)
            self._add_piece(verts)

    # -- pieces ------------------------------------------------------------

    def _oriented_plane(self, verts: tuple[int, ...]) -> tuple[tuple[int, ...], int]:
        base = self.points[verts[0]]
        diffs = [
            tuple(self.points[v][j] - base[j] for j in range(self.n))
            for v in verts[1:]
        ]
        normal = hyperplane_normal(diffs)
        if normal is None:
            raise RuntimeError("degenerate boundary piece")
        offset = sum(a * x for a, x in zip(normal, base))
        side = sum(a * x for a, x in zip(normal, self.osum)) - (self.n + 1) * offset
        if side == 0:
            raise RuntimeError("reference point on a boundary hyperplane")
        if side > 0:
            normal = tuple(-a for a in normal)
            offset = -offset
        return normal, offset

    def _add_piece(self, verts: tuple[int, ...]) -> int:
        normal, offset = self._oriented_plane(verts)
        pid = self._next_id
        self._next_id += 1
        self.pieces[pid] = (verts, normal, offset)
        self.alive.add(pid)
        for omit in verts:
            key = frozenset(v for v in verts if v != omit)
            self.ridges.setdefault(key, set()).add(pid)
        mag = max(abs(a) for a in normal)
        if mag > self._max_normal:
            self._max_normal = mag
        self._np_rows.append(normal + (offset,))
        return pid

    def _kill_piece(self, pid: int) -> None:
        verts, _, _ = self.pieces[pid]
        self.alive.discard(pid)
        for omit in verts:
            key = frozenset(v for v in verts if v != omit)
            incident = self.ridges.get(key)
            if incident is not None:
                incident.discard(pid)
                if not incident:
                    del self.ridges[key]

    # -- scans -------------------------------------------------------------

    def _numpy_ok(self) -> bool:
        return self._max_coord * self._max_normal * (self.n + 1) < _INT64_BOUND

    def _matrix(self) -> np.ndarray:
        if self._np_mat is None or self._np_len != len(self._np_rows):
            self._np_mat = np.array(self._np_rows, dtype=np.int64)
            self._np_len = len(self._np_rows)
        return self._np_mat

    def visible_from(self, p: tuple[int, ...]) -> list[int]:
        if len(self.alive) >= 32 and self._numpy_ok():
            mat = self._matrix()
            vals = mat[:, :-1] @ np.array(p, dtype=np.int64) - mat[:, -1]
            candidates = np.nonzero(vals > 0)[0]
            return [pid for pid in candidates.tolist() if pid in self.alive]
        out = []
        for pid in self.alive:
            _, a, b = self.pieces[pid]
            if sum(x * y for x, y in zip(a, p)) > b:
                out.append(pid)
        return out

    # -- insertion ---------------------------------------------------------

    def insert(self, pid_new: int) -> bool:
        p = self.points[pid_new]
        visible = self.visible_from(p)
        if not visible:
            return False
        visible_set = set(visible)
        horizon: list[frozenset[int]] = []
        for pid in visible:
            verts, _, _ = self.pieces[pid]
            for omit in verts:
                key = frozenset(v for v in verts if v != omit)
                incident = self.ridges[key]
                others = incident - visible_set
                if others:
                    horizon.append(key)
        for pid in visible:
            self._kill_piece(pid)
        for key in horizon:
            self._add_piece(tuple(sorted(key)) + (pid_new,))
        if strict_checks:
            self._check_closed()
        return True

    def _check_closed(self) -> None:
        for key, incident in self.ridges.items():
            if len(incident) != 2:
                raise AssertionError(f"ridge {sorted(key)} bounds {len(incident)} pieces")

    # -- extraction ----------------------------------------------------------

    def facet_planes(self) -> list[tuple[tuple[int, ...], int]]:
        seen = {}
        for pid in self.alive:
            _, a, b = self.pieces[pid]
            seen[(a, b)] = None
        return [k for k in seen]

    def volume_scaled(self) -> int:
        """n! times the volume, in the scaled integer coordinates."""
        total = 0
        apex = self.apex
        for pid in self.alive:
            verts, _, _ = self.pieces[pid]
            if self.points[verts[0]] == apex:
                continue
            rows = [
                [self.points[v][j] - apex[j] for j in range(self.n)]
                for v in verts
            ]
            total += abs(det_int(rows))
        return total

    def extreme_ids(self, candidate_ids: list[int]) -> list[int]:
        planes = self.facet_planes()
        n = self.n
        if len(candidate_ids) * len(planes) >= 2048 and self._numpy_ok():
            mat = np.array([a + (b,) for a, b in planes], dtype=np.int64)
            pts = np.array([self.points[i] for i in candidate_ids], dtype=np.int64)
            vals = pts @ mat[:, :-1].T - mat[:, -1]
            if strict_checks and (vals > 0).any():
                raise AssertionError("input point outside its own hull")
            active_lists = [np.nonzero(vals[r] == 0)[0].tolist() for r in range(len(candidate_ids))]
        else:
            active_lists = []
            for i in candidate_ids:
                p = self.points[i]
                active = []
                for idx, (a, b) in enumerate(planes):
                    v = sum(x * y for x, y in zip(a, p)) - b
                    if strict_checks and v > 0:
                        raise AssertionError("input point outside its own hull")
                    if v == 0:
                        active.append(idx)
                active_lists.append(active)
        out = []
        for i, active in zip(candidate_ids, active_lists):
            if len(active) < n:
                continue
            if rank_int_rows([planes[idx][0] for idx in active]) == n:
                out.append(i)
        return out


def _scale_to_int(points: list[Vec]) -> tuple[list[tuple[int, ...]], int]:
    denom = 1
    for p in points:
        for x in p:
            denom = _lcm(denom, x.denominator)
    return [tuple(int(x * denom) for x in p) for p in points], denom


def _hull_full_rank(dim: int, points: list[Vec], independent: list[int]) -> HullData:
    int_points, denom = _scale_to_int(points)
    if dim == 1:
        vals = [p[0] for p in int_points]
        lo, hi = min(vals), max(vals)
        verts = tuple(sorted({points[vals.index(lo)], points[vals.index(hi)]}))
        return HullData(1, 1, verts, Fraction(hi - lo, denom))

    centroid = tuple(sum(p[j] for p in int_points) for j in range(dim))
    npts = len(int_points)

    def far_key(i: int) -> tuple:
        p = int_points[i]
        d2 = sum((npts * c - centroid[j]) ** 2 for j, c in enumerate(p))
        return (-d2, p)

    order = sorted(range(npts), key=far_key)
    placing = _Placing(dim, int_points, independent)
    in_simplex = set(independent)
    for i in order:
        if i not in in_simplex:
            placing.insert(i)

    extreme = placing.extreme_ids(list(range(npts)))
    verts = tuple(sorted(points[i] for i in extreme))
    volume = Fraction(placing.volume_scaled(), factorial(dim) * denom**dim)
    return HullData(dim, dim, verts, volume)


def hull_of_points(points, dim: int) -> HullData:
    """Canonical hull data (irredundant vertices, exact volume) of a point set.

    The dimension cap lives at the polytope constructors; this engine accepts
    whatever dimension it is handed.
    """
    if dim < 1:
        raise ValueError("dimension must be positive")
    unique: list[Vec] = []
    seen = set()
    for p in points:
        v = _as_fraction_vec(p)
        if len(v) != dim:
            raise ValueError(f"point of dimension {len(v)} in dimension-{dim} hull")
        if v not in seen:
            seen.add(v)
            unique.append(v)
    if not unique:
        raise ValueError("empty point set")
    if len(unique) == 1:
        return HullData(dim, 0, (unique[0],), Fraction(0))

    span = AffineSpan(unique[0])
    independent = [0]
    for i in range(1, len(unique)):
        if span.try_add(unique[i]):
            independent.append(i)
            if span.rank == dim:
                break

    if span.rank == dim:
        return _hull_full_rank(dim, unique, independent)

    # Degenerate set: canonicalize inside the affine hull, ambient volume 0.
    rank = span.rank
    coords = [tuple(span.coordinates(p)) for p in unique]
    sub = hull_of_points(coords, rank)
    back = {c: p for c, p in zip(coords, unique)}
    verts = tuple(sorted(back[c] for c in sub.vertices))
    return HullData(dim, rank, verts, Fraction(0))
