"""Tests for the frame-tensor oracle: curvature, derivatives, contractions."""

from fractions import Fraction as F
from itertools import product

import pytest

from geomspec.errors import RankOverflowError, ShapeError
from geomspec.milnor import MilnorData
from geomspec.tensors import (
    DOUBLE_RIC,
    NORM2,
    PAIR,
    RIC_PAIR,
    TRACE3,
    TRIPLE,
    ConnectionCoefficients,
    FrameTensor,
    contract,
    covariant_derivative,
    curvature_tensor_oracle,
    frame_connection,
    full_pair,
    gamma_form_norm_nabla_r2,
    oracle_derivative_invariants,
    oracle_scalar_invariants,
    ricci_tensor,
)


def rational_lambdas(seed, count, avoid_degenerate=False):
    import random

    rng = random.Random(seed)
    out = []
    while len(out) < count:
        lam = tuple(F(rng.randint(-24, 24), rng.randint(1, 8)) for _ in range(3))
        if avoid_degenerate and 0 in MilnorData.from_lambda(lam).ricci():
            continue
        out.append(lam)
    return out


def riemann(lam) -> FrameTensor:
    milnor = MilnorData.from_lambda(lam)
    return curvature_tensor_oracle(frame_connection(milnor), milnor)


class TestFrameConnection:
    def test_round_metric(self):
        conn = frame_connection(MilnorData.from_lambda((2, 2, 2)))
        assert conn(0, 1, 2) == 1
        assert conn(0, 2, 1) == -1
        assert conn(1, 2, 0) == 1
        assert conn(2, 0, 1) == 1

    def test_heisenberg(self):
        conn = frame_connection(MilnorData.from_lambda((2, 0, 0)))
        assert conn(0, 1, 2) == -1
        assert conn(1, 2, 0) == 1
        assert conn(2, 0, 1) == 1

    def test_abelian_flat(self):
        conn = frame_connection(MilnorData.from_lambda((0, 0, 0)))
        assert all(
            conn(i, j, k) == 0 for i, j, k in product(range(3), repeat=3)
        )

    def test_repeated_index_vanishes(self):
        for lam in rational_lambdas(10, 20):
            conn = frame_connection(MilnorData.from_lambda(lam))
            for j, k in product(range(3), repeat=2):
                assert conn(j, j, k) == 0
            for i, j, k in product(range(3), repeat=3):
                assert conn(i, j, k) == -conn(i, k, j)


class TestCurvatureOracle:
    def test_constant_curvature_one(self):
        riem = riemann((2, 2, 2))
        for i in range(3):
            for j in range(3):
                if i != j:
                    assert riem.get(i, j, i, j) == 1

    def test_heisenberg_sectionals(self):
        riem = riemann((2, 0, 0))
        assert riem.get(0, 1, 0, 1) == 1
        assert riem.get(0, 2, 0, 2) == 1
        assert riem.get(1, 2, 1, 2) == -3

    def test_flat(self):
        assert riemann((0, 0, 0)).is_zero()

    def test_riemann_symmetries_and_bianchi(self):
        for lam in rational_lambdas(11, 25):
            riem = riemann(lam)
            for i, j, k, l in product(range(3), repeat=4):
                v = riem.get(i, j, k, l)
                assert v == -riem.get(j, i, k, l)
                assert v == -riem.get(i, j, l, k)
                assert v == riem.get(k, l, i, j)
                bianchi = (
                    riem.get(i, j, k, l)
                    + riem.get(j, k, i, l)
                    + riem.get(k, i, j, l)
                )
                assert bianchi == 0

    def test_ricci_diagonal_matches_mu_products(self):
        for lam in rational_lambdas(12, 25):
            milnor = MilnorData.from_lambda(lam)
            ric = ricci_tensor(riemann(lam))
            for i, j in product(range(3), repeat=2):
                if i != j:
                    assert ric.get(i, j) == 0
            m1, m2, m3 = milnor.mu
            assert ric.get(0, 0) == 2 * m2 * m3
            assert ric.get(1, 1) == 2 * m1 * m3
            assert ric.get(2, 2) == 2 * m1 * m2


class TestCovariantDerivative:
    def test_metric_is_parallel(self):
        for lam in ((2, 2, 2), (2, 0, 0), (1, 2, 3)):
            conn = frame_connection(MilnorData.from_lambda(lam))
            assert covariant_derivative(FrameTensor.metric(), conn).is_zero()

    def test_constant_curvature_is_locally_symmetric(self):
        conn = frame_connection(MilnorData.from_lambda((2, 2, 2)))
        assert covariant_derivative(riemann((2, 2, 2)), conn).is_zero()

    def test_rank_overflow(self):
        milnor = MilnorData.from_lambda((2, 0, 0))
        conn = frame_connection(milnor)
        nabla_r = covariant_derivative(riemann((2, 0, 0)), conn)
        assert nabla_r.rank == 5
        with pytest.raises(RankOverflowError):
            covariant_derivative(nabla_r, conn)

    def test_heisenberg_norms(self):
        nr, nric, _ = oracle_derivative_invariants(MilnorData.from_lambda((2, 0, 0)))
        assert nr == 256
        assert nr == 4 * nric


class TestContractions:
    def test_pair_round_sphere(self):
        riem = riemann((2, 2, 2))
        assert contract(PAIR, riem, riem) == 12
        assert contract(NORM2, riem) == 12

    def test_ricci_cube_round_sphere(self):
        ric = ricci_tensor(riemann((2, 2, 2)))
        assert contract(TRACE3, ric, ric, ric) == 24

    def test_zero_inputs(self):
        z2 = FrameTensor.zero(2)
        z4 = FrameTensor.zero(4)
        assert contract(DOUBLE_RIC, z2, z2, z4) == 0

    def test_round_sphere_triple_products(self):
        riem = riemann((2, 2, 2))
        ric = ricci_tensor(riem)
        assert contract(TRIPLE, riem, riem, riem) == 24
        assert contract(RIC_PAIR, ric, riem, riem) == 24
        assert contract(DOUBLE_RIC, ric, ric, riem) == 24

    def test_rank_mismatch(self):
        with pytest.raises(ShapeError):
            contract(PAIR, FrameTensor.zero(2), FrameTensor.zero(4))
        with pytest.raises(ShapeError):
            contract(TRIPLE, FrameTensor.zero(4), FrameTensor.zero(4))
        with pytest.raises(ShapeError):
            full_pair(FrameTensor.zero(3), FrameTensor.zero(2))

    def test_unknown_pattern(self):
        with pytest.raises(ShapeError):
            contract("(P;Q)", FrameTensor.zero(4), FrameTensor.zero(4))


class TestOracleInvariants:
    def test_round_sphere_values(self):
        inv = oracle_scalar_invariants(MilnorData.from_lambda((2, 2, 2)))
        assert inv.abar == 0
        assert inv.norm_r2 - inv.norm_ric2 == 0
        assert inv.a3_integrand == 120

    def test_flat_all_zero(self):
        inv = oracle_scalar_invariants(MilnorData.from_lambda((0, 0, 0)))
        for name in (
            "scal",
            "norm_r2",
            "norm_ric2",
            "rrr",
            "ric_rr",
            "ric_ric_r",
            "ric_ric_ric",
            "abar",
            "a3_integrand",
        ):
            assert getattr(inv, name) == 0

    def test_locally_symmetric_derivatives_vanish(self):
        nr, nric, dbar = oracle_derivative_invariants(MilnorData.from_lambda((2, 2, 2)))
        assert (nr, nric, dbar) == (0, 0, 0)

    def test_derivative_identities(self):
        for lam in rational_lambdas(13, 30):
            nr, nric, dbar = oracle_derivative_invariants(MilnorData.from_lambda(lam))
            assert nr == 4 * nric
            assert F(-14, 3) * dbar == nr

    def test_gamma_form_matches_contraction(self):
        for lam in [(1, 2, 3)] + rational_lambdas(14, 30):
            milnor = MilnorData.from_lambda(lam)
            nr, _, _ = oracle_derivative_invariants(milnor)
            assert gamma_form_norm_nabla_r2(milnor) == nr


class TestFrameTensorBasics:
    def test_component_count_validation(self):
        with pytest.raises(ShapeError):
            FrameTensor(rank=2, components=(F(0),) * 8)

    def test_rank_bound(self):
        with pytest.raises(RankOverflowError):
            FrameTensor.zero(6)

    def test_connection_nonzero_map(self):
        conn = frame_connection(MilnorData.from_lambda((2, 2, 2)))
        assert isinstance(conn, ConnectionCoefficients)
        nz = conn.nonzero_map()
        assert nz[(0, 1)] == (2, F(1))
        assert nz[(0, 2)] == (1, F(-1))
