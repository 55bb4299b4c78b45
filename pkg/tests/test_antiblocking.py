"""Anti-blocking bodies: construction, validation, decomposition identities."""

import itertools
import random
from fractions import Fraction as F
from math import comb, factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cornervol import (
    AntiBlockingBody,
    CoordSubspace,
    ab_hull,
    ab_join_volume,
    ab_opposite_mixed,
    convex_hull,
    member,
    mixed_volume_pair,
    negate,
    project,
    random_ab_body,
    reverse_kleitman_check,
    rs_projection_check,
    standard_simplex,
    unit_cube,
    validate_ab,
    volume,
)
from cornervol.antiblocking import join_with_negation


class TestAbHull:
    def test_single_generator_box(self):
        b = ab_hull([(1, 2)])
        assert b.body == convex_hull([(0, 0), (1, 0), (0, 2), (1, 2)])

    def test_basis_vectors_simplex(self):
        b = ab_hull([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
        assert b.body == standard_simplex(3)

    def test_two_generators(self):
        b = ab_hull([(2, 0), (1, 1)])
        assert b.body == convex_hull([(0, 0), (2, 0), (1, 1), (0, 1)])

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            ab_hull([(1, -1)])

    def test_monotone_in_generators(self):
        rng = random.Random(3)
        for _ in range(10):
            gens = [tuple(rng.randint(0, 4) for _ in range(3)) for _ in range(3)]
            small = ab_hull(gens[:2], 3)
            big = ab_hull(gens, 3)
            assert all(member(big.body, v) for v in small.vertices)

    @given(st.lists(st.tuples(st.integers(0, 4), st.integers(0, 4), st.integers(0, 4)),
                    min_size=1, max_size=4))
    @settings(max_examples=40, deadline=None)
    def test_constructor_soundness(self, gens):
        assert validate_ab(ab_hull(gens, 3).body)


class TestValidateAb:
    def test_simplex_valid(self):
        assert validate_ab(standard_simplex(3))

    def test_diagonal_segment_invalid(self):
        assert not validate_ab(convex_hull([(1, 0), (0, 1)]))

    def test_negative_coordinate_invalid(self):
        assert not validate_ab(convex_hull([(0, 0), (-1, 0), (0, 1)]))

    def test_full_subspace_version_agrees(self):
        # The single-coordinate masking check must match the all-subspace
        # definition (every projection stays inside the body).
        rng = random.Random(5)
        cases = [convex_hull([(1, 0), (0, 1)]), standard_simplex(2).translate((1, 0))]
        for _ in range(10):
            cases.append(random_ab_body(rng, 3).body)
            pts = [tuple(rng.randint(0, 3) for _ in range(3)) for _ in range(4)]
            cases.append(convex_hull(pts, 3))
        for poly in cases:
            if any(x < 0 for v in poly.vertices for x in v):
                continue
            n = poly.dim
            full = all(
                member(poly, w)
                for r in range(n + 1)
                for idx in itertools.combinations(range(n), r)
                for w in project(poly, CoordSubspace(n, idx)).vertices
            )
            assert validate_ab(poly) == full

    def test_from_polytope_gate(self):
        with pytest.raises(ValueError):
            AntiBlockingBody.from_polytope(convex_hull([(1, 0), (0, 1)]))


class TestOppositeMixed:
    def test_simplex_pair_values(self):
        s = AntiBlockingBody(standard_simplex(3))
        for j in range(4):
            assert ab_opposite_mixed(s, s, j) == F(1, factorial(j) * factorial(3 - j))

    def test_j_equals_n_is_volume(self):
        rng = random.Random(7)
        k = random_ab_body(rng, 3)
        kp = random_ab_body(rng, 3)
        assert ab_opposite_mixed(k, kp, 3) == volume(k.body)
        assert ab_opposite_mixed(k, kp, 0) == volume(kp.body)

    def test_matches_engine(self):
        rng = random.Random(11)
        for n in (2, 3):
            for _ in range(4):
                k, kp = random_ab_body(rng, n), random_ab_body(rng, n)
                for j in range(n + 1):
                    assert ab_opposite_mixed(k, kp, j) == mixed_volume_pair(
                        k.body, negate(kp.body), j
                    )

    def test_join_volume(self):
        s = AntiBlockingBody(standard_simplex(2))
        assert ab_join_volume(s, s) == 2
        k = ab_hull([(2, 1)])
        pt = AntiBlockingBody(convex_hull([(0, 0)]))
        assert ab_join_volume(k, pt) == volume(k.body)

    def test_join_matches_hull(self):
        rng = random.Random(13)
        for n in (2, 3):
            for _ in range(4):
                k, kp = random_ab_body(rng, n), random_ab_body(rng, n)
                assert ab_join_volume(k, kp) == volume(join_with_negation(k, kp))


class TestProjectionSection:
    def test_projection_equals_section(self):
        # For a down-closed body the projection is the part of the body inside
        # the subspace: mutual vertex membership in both directions.
        rng = random.Random(17)
        for _ in range(6):
            k = random_ab_body(rng, 3)
            for r in (1, 2):
                for idx in itertools.combinations(range(3), r):
                    proj = project(k.body, CoordSubspace(3, idx))
                    assert all(member(k.body, v) for v in proj.vertices)


class TestReverseKleitman:
    def test_simplex_example(self):
        s = AntiBlockingBody(standard_simplex(2))
        rep = reverse_kleitman_check(s, s, 1)
        assert (rep.lhs, rep.rhs, rep.holds) == (F(1, 2), F(1), True)

    def test_endpoints_equal(self):
        rng = random.Random(19)
        k, t = random_ab_body(rng, 3), random_ab_body(rng, 3)
        for j in (0, 3):
            rep = reverse_kleitman_check(k, t, j)
            assert rep.lhs == rep.rhs

    def test_holds_on_random_pairs(self):
        rng = random.Random(23)
        for n in (2, 3):
            for _ in range(5):
                k, t = random_ab_body(rng, n), random_ab_body(rng, n)
                for j in range(n + 1):
                    assert reverse_kleitman_check(k, t, j).holds


class TestRogersShephardProjection:
    def test_simplex_attains_bound(self):
        s = AntiBlockingBody(standard_simplex(4))
        for r in range(5):
            for idx in itertools.combinations(range(4), r):
                rep = rs_projection_check(s, CoordSubspace(4, idx))
                assert rep.is_equality

    def test_cube(self):
        c = AntiBlockingBody(unit_cube(3))
        rep = rs_projection_check(c, CoordSubspace(3, (0, 1)))
        assert rep.product == 1
        assert rep.bound == comb(3, 2)
        assert rep.holds

    def test_random_bodies(self):
        rng = random.Random(29)
        for _ in range(6):
            k = random_ab_body(rng, 3)
            for idx in ((0,), (1, 2), (0, 2)):
                assert rs_projection_check(k, CoordSubspace(3, idx)).holds
