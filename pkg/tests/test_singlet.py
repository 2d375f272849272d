import math
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from bellquasi.quasi import check_consistency
from bellquasi.singlet import (
    BellMarginals,
    CorrelationTriple,
    Direction,
    PairTable,
    bell_marginals,
    correlation,
    correlations,
    pair_table,
    tables_from_correlations,
)

Z = Direction(0, 0, 1)
X = Direction(1, 0, 0)


class TestDirection:
    def test_normalizes(self):
        d = Direction(3, 4, 0)
        assert d.x == pytest.approx(0.6) and d.y == pytest.approx(0.8)
        assert d.x**2 + d.y**2 + d.z**2 == pytest.approx(1.0, abs=1e-12)

    def test_rejects_near_zero(self):
        with pytest.raises(ValueError):
            Direction(1e-10, 0, 0)

    def test_from_degrees_is_planar_unit(self):
        d = Direction.from_degrees(60)
        assert d.x == pytest.approx(0.5)
        assert d.y == pytest.approx(math.sqrt(3) / 2)
        assert d.z == 0.0

    def test_from_string_rejects_malformed(self):
        with pytest.raises(ValueError):
            Direction.from_string("1,2")


class TestCorrelation:
    def test_equal_axes_anticorrelated(self):
        assert correlation(Z, Z) == -1.0

    def test_perpendicular_axes_uncorrelated(self):
        assert correlation(Z, X) == pytest.approx(0.0, abs=1e-15)

    def test_sixty_degrees(self):
        d = Direction.from_degrees(60)
        e = Direction.from_degrees(0)
        assert correlation(e, d) == pytest.approx(-0.5, abs=1e-12)
        assert oracles.product_expectation(e, d) == pytest.approx(-0.5, abs=1e-12)

    def test_symmetric_and_bounded(self):
        rng = random.Random(3)
        for _ in range(300):
            u = oracles.random_direction(rng)
            v = oracles.random_direction(rng)
            c = correlation(u, v)
            assert c == correlation(v, u)
            assert -1 <= c <= 1

    def test_matches_quantum_expectation(self):
        rng = random.Random(5)
        for _ in range(200):
            u = oracles.random_direction(rng)
            v = oracles.random_direction(rng)
            assert correlation(u, v) == pytest.approx(
                oracles.product_expectation(u, v), abs=1e-12
            )


class TestPairTable:
    def test_perfect_anticorrelation(self):
        t = pair_table(-1)
        assert t.as_tuple() == (0, F(1, 2), F(1, 2), 0)

    def test_independence(self):
        t = pair_table(0)
        assert t.as_tuple() == (F(1, 4),) * 4

    def test_flip_sign_convention(self):
        # flipped table negates the correlation: entry (+,+) = (1 + 1/2)/4
        t = pair_table(F(-1, 2), flip=True)
        assert t.pp == F(3, 8)
        assert t.entry(1, 1) == F(3, 8)
        assert t.entry(1, -1) == F(1, 8)

    def test_flip_matches_projector_computation(self):
        beta = Direction.from_degrees(0)
        gamma = Direction.from_degrees(60)  # measurable corr -1/2
        t = pair_table(correlation(beta, gamma), flip=True)
        for b in (1, -1):
            for c in (1, -1):
                assert t.entry(b, c) == pytest.approx(
                    oracles.flipped_joint_probability(beta, b, gamma, c), abs=1e-12
                )

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            pair_table(1.1)
        with pytest.raises(ValueError):
            pair_table(F(3, 2))

    def test_agrees_with_quantum_oracle(self):
        rng = random.Random(9)
        for _ in range(200):
            u = oracles.random_direction(rng)
            v = oracles.random_direction(rng)
            t = pair_table(correlation(u, v))
            for a in (1, -1):
                for b in (1, -1):
                    assert t.entry(a, b) == pytest.approx(
                        oracles.joint_probability(u, a, v, b), abs=1e-12
                    )


class TestBellMarginals:
    def test_coincident_axes(self):
        marg = bell_marginals(Z, Z, Z)
        corr = correlations(Z, Z, Z)
        assert corr.as_tuple() == (-1.0, -1.0, -1.0)
        assert marg.pab.pp == 0.0
        assert marg.pbc.pp == 0.5

    def test_coplanar_0_60_120(self):
        a, b, c = (Direction.from_degrees(t) for t in (0, 60, 120))
        corr = correlations(a, b, c)
        assert corr.ab == pytest.approx(-0.5, abs=1e-12)
        assert corr.ac == pytest.approx(0.5, abs=1e-12)
        assert corr.bc == pytest.approx(-0.5, abs=1e-12)
        for (u, v, x, y) in (
            (a, b, corr.ab, 1),
            (a, c, corr.ac, 1),
            (b, c, corr.bc, 1),
        ):
            assert oracles.product_expectation(u, v) == pytest.approx(x, abs=1e-12)

    def test_orthogonal_and_reversed(self):
        alpha, beta, gamma = Direction(1, 0, 0), Direction(0, 1, 0), Direction(-1, 0, 0)
        corr = correlations(alpha, beta, gamma)
        assert corr.ab == pytest.approx(0.0, abs=1e-15)
        assert corr.ac == 1.0
        assert corr.bc == pytest.approx(0.0, abs=1e-15)

    def test_p_vector_layout(self):
        marg = tables_from_correlations(CorrelationTriple(F(-1, 2), F(1, 2), F(-1, 2)))
        assert marg.p_vector == (
            F(3, 8), F(1, 8), F(1, 8),
            F(3, 8), F(1, 8), F(1, 8),
            F(1, 8), F(3, 8), F(3, 8),
            F(1),
        )

    def test_rejects_bad_p_vector(self):
        table = PairTable(F(1, 4), F(1, 4), F(1, 4), F(1, 4))
        with pytest.raises(ValueError):
            BellMarginals(pab=table, pac=table, pbc=table, p_vector=(F(1, 4),) * 10)

    def test_table_invariants_random_triples(self):
        rng = random.Random(31)
        for _ in range(500):
            marg = bell_marginals(*oracles.random_direction_triple(rng))
            for table in (marg.pab, marg.pac, marg.pbc):
                assert all(e >= -1e-12 for e in table.as_tuple())
                assert table.total() == pytest.approx(1.0, abs=1e-12)
                assert table.pp == table.mm
                assert table.pm == table.mp

    def test_consistency_sides_equal_half(self):
        rng = random.Random(37)
        for _ in range(500):
            p = bell_marginals(*oracles.random_direction_triple(rng)).p_vector
            for lhs, rhs in (
                (p[0] + p[1], p[6] + p[8]),
                (p[3] + p[4], p[6] + p[7]),
                (p[0] + p[2], p[3] + p[5]),
            ):
                assert lhs == pytest.approx(0.5, abs=1e-12)
                assert rhs == pytest.approx(0.5, abs=1e-12)
            assert check_consistency(p).ok

    @settings(max_examples=100, deadline=None)
    @given(
        st.fractions(min_value=-1, max_value=1, max_denominator=1000),
        st.fractions(min_value=-1, max_value=1, max_denominator=1000),
        st.fractions(min_value=-1, max_value=1, max_denominator=1000),
    )
    def test_exact_correlations_give_exact_consistent_tables(self, u, v, w):
        marg = tables_from_correlations(CorrelationTriple(u, v, w))
        assert all(isinstance(x, F) for x in marg.p_vector)
        report = check_consistency(marg.p_vector)
        assert report.ok
        assert report.residuals == (0, 0, 0)
