import numpy as np
import pytest

from conftest import random_instance
from fcmm.dataset import DataMatrix, SyntheticSpec, make_blobs
from fcmm.exceptions import DegenerateClusterError
from fcmm.membership import MembershipMatrix, PowerMembership, init_random, to_power
from fcmm.objective import (ClusterCenters, aggregates, compute_centers,
                            fcm_objective, majorizer_h, phi, psi,
                            tangent_gradient)
from fcmm.oracle import finite_diff_gradient, gram_quad_oracle
from fcmm.solvers import (SolverConfig, solve_fcm_classic,
                          update_membership_classic)

TWO_POINTS_1D = DataMatrix.from_points([[-1.0], [1.0]])


def single_cluster(g, r=2.0):
    return PowerMembership.from_values(np.asarray(g, dtype=float)[:, None], r)


class TestAggregates:
    def test_single_point_indicator(self):
        data = DataMatrix.from_points([[3.0, 4.0], [1.0, 0.0], [0.0, 2.0]])
        agg = aggregates(data, single_cluster([1.0, 0.0, 0.0]))
        np.testing.assert_array_equal(agg.y, [[3.0, 4.0]])
        assert agg.quad[0] == 25.0
        assert agg.mass[0] == 1.0

    def test_symmetric_cancellation(self):
        agg = aggregates(TWO_POINTS_1D, single_cluster([1.0, 1.0]))
        assert agg.y[0, 0] == 0.0
        assert agg.quad[0] == 0.0
        assert agg.mass[0] == 2.0

    def test_quad_matches_gram_oracle(self):
        rng = np.random.default_rng(21)
        data, _, G = random_instance(rng, 5, 2, 3)
        agg = aggregates(data, G)
        for j in range(3):
            ref = gram_quad_oracle(data, G.values[:, j])
            assert abs(agg.quad[j] - ref) <= 1e-10 * abs(ref)

    def test_quad_is_norm_of_y(self):
        rng = np.random.default_rng(22)
        data, _, G = random_instance(rng, 30, 4, 3)
        agg = aggregates(data, G)
        norms = np.einsum("cd,cd->c", agg.y, agg.y)
        assert np.max(np.abs(agg.quad - norms)) <= 1e-12 * np.max(norms)


class TestComputeCenters:
    def test_uniform_centroid(self):
        data = DataMatrix.from_points([[0.0, 0.0], [2.0, 2.0]])
        centers = compute_centers(aggregates(data, single_cluster([1.0, 1.0])))
        np.testing.assert_array_equal(centers.centers, [[1.0, 1.0]])

    def test_indicator_reproduces_point(self):
        rng = np.random.default_rng(23)
        data = DataMatrix.from_points(rng.normal(size=(6, 3)))
        for i in range(6):
            g = np.zeros(6)
            g[i] = 1.0
            centers = compute_centers(aggregates(data, single_cluster(g)))
            np.testing.assert_allclose(centers.centers[0], data.points[i], rtol=1e-15)

    def test_centers_in_data_bounding_box(self):
        rng = np.random.default_rng(24)
        data, _, G = random_instance(rng, 40, 3, 4)
        centers = compute_centers(aggregates(data, G)).centers
        lo, hi = data.points.min(axis=0), data.points.max(axis=0)
        assert np.all(centers >= lo - 1e-12) and np.all(centers <= hi + 1e-12)

    def test_stationary_at_converged_fixed_point(self):
        spec = SyntheticSpec(blob_count=2, points_per_blob=30, dim=2,
                             blob_stddev=0.2, blob_center_scale=5.0, seed=2)
        data = make_blobs(spec)
        cfg = SolverConfig(c=2, outer_tol=1e-15, max_outer_iters=1000)
        F = solve_fcm_classic(data, init_random(data.n, 2, 1), cfg).F_final
        # polish to the fixed point before testing stationarity
        for _ in range(2000):
            centers = compute_centers(aggregates(data, to_power(F, 2.0)))
            F_next = update_membership_classic(data, centers, 2.0)
            if np.max(np.abs(F_next.values - F.values)) <= 1e-14:
                F = F_next
                break
            F = F_next
        c0 = compute_centers(aggregates(data, to_power(F, 2.0))).centers
        F1 = update_membership_classic(data, compute_centers(aggregates(data, to_power(F, 2.0))), 2.0)
        c1 = compute_centers(aggregates(data, to_power(F1, 2.0))).centers
        assert np.max(np.abs(c1 - c0)) <= 1e-9


class TestObjectiveValues:
    def test_zero_at_own_centers(self):
        data = DataMatrix.from_points([[0.0, 0.0], [4.0, 0.0]])
        F = MembershipMatrix.from_values([[1.0, 0.0], [0.0, 1.0]])
        centers = compute_centers(aggregates(data, to_power(F, 2.0)))
        assert fcm_objective(data, F, centers, 2.0) == 0.0

    def test_symmetric_two_point_instance(self):
        # one cluster holding both points, centered at the origin
        F = MembershipMatrix.from_values([[1.0], [1.0]])
        centers = ClusterCenters(np.array([[0.0]]))
        assert fcm_objective(TWO_POINTS_1D, F, centers, 2.0) == pytest.approx(2.0)

    def test_phi_two_point_instance(self):
        assert phi(TWO_POINTS_1D, single_cluster([1.0, 1.0])) == pytest.approx(2.0)

    def test_phi_zero_for_identical_points(self):
        data = DataMatrix.from_points([[2.0, 1.0]] * 5)
        G = single_cluster(np.full(5, 0.3))
        assert abs(phi(data, G)) <= 1e-12

    def test_phi_equals_objective_at_optimal_centers(self):
        rng = np.random.default_rng(31)
        for _ in range(25):
            data, F, G = random_instance(rng, int(rng.integers(6, 30)),
                                         int(rng.integers(1, 5)),
                                         int(rng.integers(2, 5)))
            centers = compute_centers(aggregates(data, G))
            a = phi(data, G)
            b = fcm_objective(data, F, centers, 2.0)
            assert abs(a - b) <= 1e-10 * (1.0 + abs(b))

    def test_phi_six_point_instance(self):
        rng = np.random.default_rng(32)
        data, F, G = random_instance(rng, 6, 2, 2)
        centers = compute_centers(aggregates(data, G))
        assert phi(data, G) == pytest.approx(fcm_objective(data, F, centers, 2.0), rel=1e-10)


class TestPsi:
    def test_collapses_to_phi_at_optimal_s(self):
        rng = np.random.default_rng(33)
        for _ in range(10):
            data, _, G = random_instance(rng, int(rng.integers(5, 25)), 3, 3)
            agg = aggregates(data, G)
            s_opt = np.sqrt(agg.quad) / agg.mass
            a = psi(data, G, s_opt)
            b = phi(data, G)
            assert abs(a - b) <= 1e-10 * (1.0 + abs(b))

    def test_zero_s_leaves_linear_term(self):
        rng = np.random.default_rng(34)
        data, _, G = random_instance(rng, 12, 2, 3)
        expect = float(data.sq_norms @ G.values.sum(axis=1))
        assert psi(data, G, np.zeros(3)) == pytest.approx(expect, rel=1e-12)

    def test_phi_minimizes_over_s_grid(self):
        # quadratic in each s_j, so any perturbation off the optimum sits above phi
        rng = np.random.default_rng(35)
        data, _, G = random_instance(rng, 15, 2, 3)
        agg = aggregates(data, G)
        s_opt = np.sqrt(agg.quad) / agg.mass
        base = phi(data, G)
        for delta in np.linspace(-0.5, 0.5, 21):
            for j in range(3):
                s = s_opt.copy()
                s[j] += delta
                assert psi(data, G, s) >= base - 1e-10 * (1.0 + abs(base))


class TestMajorizer:
    def test_tangent_at_anchor(self):
        rng = np.random.default_rng(36)
        for _ in range(10):
            data, _, G_t = random_instance(rng, int(rng.integers(5, 30)), 2, 3)
            p = phi(data, G_t)
            assert abs(majorizer_h(data, G_t, G_t) - p) <= 1e-10 * (1.0 + abs(p))

    def test_dominates_objective(self):
        rng = np.random.default_rng(37)
        data, _, G_t = random_instance(rng, 20, 2, 3)
        for _ in range(500):
            F = MembershipMatrix.from_values(rng.dirichlet(np.ones(3), size=20))
            G = to_power(F, 2.0)
            p = phi(data, G)
            assert majorizer_h(data, G, G_t) >= p - 1e-9 * (1.0 + abs(p))

    def test_hand_evaluated_two_point_case(self):
        # anchor g_t = (1,1) on {-1, +1}: the tangent term vanishes and
        # h reduces to the plain weighted sum of squared norms, sum(g)
        g_t = single_cluster([1.0, 1.0])
        for g in ([0.5, 0.7], [1.0, 1.0], [0.2, 1.5]):
            h = majorizer_h(TWO_POINTS_1D, single_cluster(g), g_t)
            assert h == pytest.approx(sum(g), rel=1e-12)

    def test_shape_mismatch_rejected(self):
        rng = np.random.default_rng(38)
        data, _, G = random_instance(rng, 10, 2, 3)
        _, _, G_other = random_instance(rng, 10, 2, 4)
        with pytest.raises(ValueError):
            majorizer_h(data, G, G_other)


class TestTangentGradient:
    def test_matches_finite_differences(self):
        rng = np.random.default_rng(39)
        data = DataMatrix.from_points(rng.normal(size=(15, 3)))
        g_t = rng.uniform(0.1, 1.0, size=15)
        grad = tangent_gradient(data, g_t)
        fd = finite_diff_gradient(data, g_t, step=1e-5)
        assert np.max(np.abs(fd - grad)) <= 1e-6 * (1.0 + np.max(np.abs(grad)))

    def test_indicator_hand_expansion(self):
        rng = np.random.default_rng(40)
        data = DataMatrix.from_points(rng.normal(size=(8, 3)))
        g = np.zeros(8)
        g[0] = 1.0
        grad = tangent_gradient(data, g)
        x0 = data.points[0]
        expect = np.array([2 * float(x @ x0) for x in data.points]) - float(x0 @ x0)
        np.testing.assert_allclose(grad, expect, rtol=1e-12, atol=1e-12)

    def test_scale_invariant(self):
        rng = np.random.default_rng(41)
        data = DataMatrix.from_points(rng.normal(size=(12, 2)))
        g = rng.uniform(0.2, 1.0, size=12)
        a = tangent_gradient(data, g)
        b = tangent_gradient(data, 3.0 * g)
        assert np.max(np.abs(a - b)) <= 1e-12 * (1.0 + np.max(np.abs(a)))

    def test_zero_mass_rejected(self):
        with pytest.raises(DegenerateClusterError):
            tangent_gradient(TWO_POINTS_1D, np.zeros(2))


def test_quad_over_mass_is_convex():
    rng = np.random.default_rng(42)
    data = DataMatrix.from_points(rng.normal(size=(15, 3)))

    def ratio(g):
        y = data.points.T @ g
        return float(y @ y) / float(g.sum())

    for _ in range(200):
        g1 = rng.uniform(0.05, 1.0, size=15)
        g2 = rng.uniform(0.05, 1.0, size=15)
        lam = rng.uniform(0.0, 1.0)
        mid = ratio(lam * g1 + (1 - lam) * g2)
        assert mid <= lam * ratio(g1) + (1 - lam) * ratio(g2) + 1e-9
