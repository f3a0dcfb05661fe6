import random
from fractions import Fraction

import pytest

from rotnorm._rat import INF, Q
from rotnorm.coset import AffineCoset, canonical_rep, theta, theta_sup
from rotnorm.errors import DimensionMismatch, RankDeficient, ValidationError
from rotnorm.lattice import member, normalize, quotient_info

from oracles import oracle_theta, oracle_theta_cost


class TestBuild:
    def test_offset_reduced(self):
        A = normalize([(2, 0), (0, 3)])
        z = AffineCoset.build(A, (Q(7, 2), Q(-5)))
        for (row, p) in zip(A.hnf_basis, A.pivots):
            assert 0 <= z.offset[p] < row[p]

    def test_same_coset_same_offset(self):
        A = normalize([(2, 0), (0, 3)])
        z1 = AffineCoset.build(A, (Q(1, 3), Q(1, 2)))
        z2 = AffineCoset.build(A, (Q(1, 3) + 4, Q(1, 2) - 9))
        assert z1.offset == z2.offset

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            AffineCoset.build(normalize([(2,)]), (1, 2))


class TestCanonicalRep:
    def test_example(self):
        A = normalize([(2, 0), (0, 3)])
        z = AffineCoset.build(A, (Q(5), Q(-4)))
        assert canonical_rep(z) == (1, -1)

    def test_half_integer_tie_goes_positive(self):
        A = normalize([(2,)])
        z = AffineCoset.build(A, (Q(1),))
        assert canonical_rep(z) == (1,)
        z = AffineCoset.build(A, (Q(-1),))
        assert canonical_rep(z) == (1,)

    def test_rank_deficient_rejected(self):
        A = normalize([(1, 1)])
        with pytest.raises(RankDeficient):
            canonical_rep(AffineCoset.build(A, (Q(0), Q(0))))

    def test_lies_in_half_open_box(self):
        rng = random.Random(3)
        A = normalize([(4, 1), (0, 6)])
        info = quotient_info(A)
        for _ in range(50):
            off = tuple(Q(rng.randint(-40, 40), rng.randint(1, 7)) for _ in range(2))
            y = canonical_rep(AffineCoset.build(A, off))
            for i, ki in enumerate(info.orders):
                assert -Q(int(ki), 2) < y[i] <= Q(int(ki), 2)
            # same coset as the offset
            diff = [a - b for a, b in zip(y, off)]
            assert all(Q(v).denominator == 1 for v in diff)
            assert member(A, [int(v) for v in diff])


class TestTheta:
    def test_example_2d(self):
        A = normalize([(2, 0), (0, 3)])
        z = AffineCoset.build(A, (Q(6, 5), Q(1, 2)))
        nd = theta(z)
        assert nd.theta == Q(4, 5)
        assert nd.theta_points == ((Q(-4, 5), Q(1, 2)),)

    def test_two_z_tie(self):
        A = normalize([(2,)])
        nd = theta(AffineCoset.build(A, (Q(1),)))
        assert nd.theta == 1
        assert set(nd.theta_points) == {(Q(-1),), (Q(1),)}

    def test_zero_offset(self):
        A = normalize([(2, 0), (0, 3)])
        nd = theta(AffineCoset.build(A, (Q(4), Q(-3))))
        assert nd.theta == 0
        assert nd.theta_points == ((Q(0), Q(0)),)

    def test_zero_iff_member(self):
        A = normalize([(2, 1), (0, 3)])
        rng = random.Random(9)
        for _ in range(40):
            v = [rng.randint(-6, 6) for _ in range(2)]
            nd = theta(AffineCoset.build(A, [Q(x) for x in v]))
            assert (nd.theta == 0) == member(A, v)

    def test_coset_invariance(self):
        A = normalize([(3, 1, 0), (0, 2, 0), (0, 0, 4)])
        rng = random.Random(13)
        for _ in range(25):
            off = [Q(rng.randint(-20, 20), rng.randint(1, 5)) for _ in range(3)]
            shift = [rng.choice([-2, -1, 0, 1, 2]) for _ in range(3)]
            moved = [o + sum(s * row[i] for s, row in zip(shift, A.hnf_basis))
                     for i, o in enumerate(off)]
            assert theta(AffineCoset.build(A, off)).theta == (
                theta(AffineCoset.build(A, moved)).theta
            )

    def test_rep_norm_sandwich(self):
        # theta <= l-infinity norm of the canonical representative <= k/2
        rng = random.Random(21)
        A = normalize([(4, 1), (0, 6)])
        k = quotient_info(A).k
        for _ in range(30):
            off = [Q(rng.randint(-30, 30), rng.randint(1, 6)) for _ in range(2)]
            z = AffineCoset.build(A, off)
            rep = canonical_rep(z)
            rep_norm = max(abs(v) for v in rep)
            assert theta(z).theta <= rep_norm <= Q(int(k), 2)

    def test_points_are_in_coset_and_attain(self):
        A = normalize([(5, 2), (0, 3)])
        z = AffineCoset.build(A, (Q(7, 3), Q(5, 6)))
        nd = theta(z)
        for p in nd.theta_points:
            assert max(abs(v) for v in p) == nd.theta
            diff = [a - b for a, b in zip(p, z.offset)]
            assert all(Q(v).denominator == 1 for v in diff)
            assert member(A, [int(v) for v in diff])


class TestThetaOracle:
    def test_random_instances_match_brute_force(self):
        rng = random.Random(42)
        checked = 0
        while checked < 100:
            m = rng.randint(1, 3)
            gens = [
                [rng.randint(-5, 5) for _ in range(m)]
                for _ in range(rng.randint(0, m + 1))
            ]
            A = normalize(gens, ambient_dim=m)
            off = [Q(rng.randint(-15, 15), rng.randint(1, 8)) for _ in range(m)]
            frac_off = [Fraction(int(Q(o).numerator), int(Q(o).denominator))
                        for o in off]
            if oracle_theta_cost(
                [list(r) for r in A.hnf_basis], list(A.pivots), frac_off
            ) > 200_000:
                continue
            nd = theta(AffineCoset.build(A, off))
            want, want_pts = oracle_theta(
                [list(r) for r in A.hnf_basis], list(A.pivots), frac_off,
            )
            assert Fraction(int(nd.theta.numerator),
                            int(nd.theta.denominator)) == want
            got_pts = sorted(
                tuple(Fraction(int(Q(v).numerator), int(Q(v).denominator))
                      for v in p)
                for p in nd.theta_points
            )
            assert got_pts == want_pts
            checked += 1


class TestThetaSup:
    def test_scalar_exact(self):
        A = normalize([(6,)])
        assert theta_sup(A, Q(1, 100)) == (3, 3)

    def test_z2_collapses_to_half(self):
        lo, hi = theta_sup(normalize([(1, 0), (0, 1)]), Q(1, 16))
        assert lo == Q(1, 2) and hi == Q(1, 2)

    def test_rank_deficient_infinite(self):
        assert theta_sup(normalize([(1, 1)]), Q(1, 4)) == (INF, INF)

    def test_interval_is_certified(self):
        A = normalize([(2, 0), (0, 3)])
        eps = Q(1, 8)
        lo, hi = theta_sup(A, eps)
        assert lo <= hi <= lo + eps
        k = quotient_info(A).k
        assert hi <= Q(int(k), 2)
        # the sup dominates theta at sampled offsets
        rng = random.Random(5)
        for _ in range(20):
            off = [Q(rng.randint(-9, 9), rng.randint(1, 6)) for _ in range(2)]
            assert theta(AffineCoset.build(A, off)).theta <= hi

    def test_epsilon_validation(self):
        with pytest.raises(ValidationError):
            theta_sup(normalize([(2,)]), 0)
