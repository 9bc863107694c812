"""Brute-force reference implementations for verification.

Everything here recomputes quantities the slow, obvious way: explicit
n x n Gram matrices, central finite differences, randomized surrogate
probing, and a step-by-step audit of the descent chain. None of it shares
math with the optimized code paths, so agreement is evidence rather than
tautology. Used only by the test suite and the ``validate`` command.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dataset import DataMatrix, SyntheticSpec, make_blobs
from .membership import MembershipMatrix, PowerMembership, init_random, to_power
from .objective import (aggregates, compute_centers, majorizer_h, phi,
                        tangent_gradient)
from .solvers import (SolverConfig, irw_auxiliary, update_membership_classic,
                      update_membership_irw, update_membership_mm)


@dataclass(frozen=True)
class OracleReport:
    """Outcome of one verification check."""

    check_name: str
    max_error: float
    tolerance: float
    samples: int
    passed: bool

    @classmethod
    def from_error(cls, check_name: str, max_error: float, tolerance: float,
                   samples: int) -> "OracleReport":
        return cls(check_name, float(max_error), float(tolerance), int(samples),
                   float(max_error) <= float(tolerance))

    def __str__(self):
        status = "PASS" if self.passed else "FAIL"
        return (f"[{status}] {self.check_name}: max_error={self.max_error:.3e} "
                f"tolerance={self.tolerance:.1e} samples={self.samples}")


def _gram_matrix(points: np.ndarray) -> np.ndarray:
    """Explicit Gram matrix by double loop over point pairs."""
    n = points.shape[0]
    gram = np.empty((n, n))
    for i in range(n):
        for k in range(n):
            gram[i, k] = float(np.dot(points[i], points[k]))
    return gram


def gram_quad_oracle(data: DataMatrix, g) -> float:
    """Evaluate g'(X'X)g through the materialized Gram matrix.

    Intended for n <= 200; the optimized path never forms this matrix.
    """
    g = np.asarray(g, dtype=np.float64)
    gram = _gram_matrix(data.points)
    total = 0.0
    for i in range(data.n):
        for k in range(data.n):
            total += g[i] * gram[i, k] * g[k]
    return total


def gram_vector_oracle(data: DataMatrix, g) -> np.ndarray:
    """Evaluate (X'X)g through the materialized Gram matrix."""
    g = np.asarray(g, dtype=np.float64)
    gram = _gram_matrix(data.points)
    out = np.zeros(data.n)
    for i in range(data.n):
        for k in range(data.n):
            out[i] += gram[i, k] * g[k]
    return out


def finite_diff_gradient(data: DataMatrix, g_t, step: float = 1e-5) -> np.ndarray:
    """Central finite differences of g -> (g'X'Xg)/(g'1), per component."""
    g_t = np.asarray(g_t, dtype=np.float64)
    if np.any(g_t <= step):
        raise ValueError("components of g_t must exceed the step size")
    gram = _gram_matrix(data.points)

    def ratio(g):
        num = 0.0
        for i in range(data.n):
            for k in range(data.n):
                num += g[i] * gram[i, k] * g[k]
        den = 0.0
        for i in range(data.n):
            den += g[i]
        return num / den

    out = np.empty(data.n)
    for i in range(data.n):
        up = g_t.copy()
        down = g_t.copy()
        up[i] += step
        down[i] -= step
        out[i] = (ratio(up) - ratio(down)) / (2.0 * step)
    return out


def surrogate_argmin_oracle(data: DataMatrix, G_t: PowerMembership, r: float,
                            trials: int, seed: int) -> OracleReport:
    """Randomized certificate that the surrogate update minimizes h.

    Samples ``trials`` random feasible membership matrices, evaluates the
    majorizer at each, and reports how far (if at all) any of them dips
    below the value achieved by the closed-form update. The update's own
    output is included as a self-comparison sample.
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    F_star = update_membership_mm(data, G_t, r)
    G_star = to_power(F_star, r)
    h_star = majorizer_h(data, G_star, G_t)
    tolerance = 1e-9 * (1.0 + abs(h_star))

    rng = np.random.default_rng(seed)
    worst = h_star - majorizer_h(data, G_star, G_t)  # self sample, exactly 0
    for _ in range(trials):
        F = rng.dirichlet(np.ones(G_t.c), size=G_t.n)
        h = majorizer_h(data, PowerMembership.from_values(F ** r, r), G_t)
        worst = max(worst, h_star - h)
    return OracleReport.from_error("surrogate_argmin", max(0.0, worst),
                                   tolerance, trials + 1)


def descent_chain_audit(data: DataMatrix, F0: MembershipMatrix,
                        cfg: SolverConfig, steps: int) -> OracleReport:
    """Audit the per-step descent chain of the single-loop solver.

    Runs ``steps`` surrogate updates from F0 and checks, for every step,

        phi(F_next) <= h(G_next | G) <= h(G | G) = phi(F),

    each link within ``1e-10 * (1 + |phi(F)|)``. Errors are reported
    normalized by that scale, so the tolerance column reads 1e-10.
    """
    if steps < 1:
        raise ValueError("need at least one step")
    F = F0
    G = to_power(F, cfg.r)
    worst = 0.0
    for _ in range(steps):
        obj = phi(data, G)
        F_next = update_membership_mm(data, G, cfg.r, cfg.dist_floor)
        G_next = to_power(F_next, cfg.r)
        h_next = majorizer_h(data, G_next, G)
        h_self = majorizer_h(data, G, G)
        obj_next = phi(data, G_next)
        scale = 1.0 + abs(obj)
        worst = max(worst,
                    (obj_next - h_next) / scale,
                    (h_next - h_self) / scale,
                    abs(h_self - obj) / scale)
        F, G = F_next, G_next
    return OracleReport.from_error("descent_chain", worst, 1e-10, steps)


def _random_instance(rng, n, d, c, r):
    """Gaussian points plus a flat-Dirichlet membership matrix."""
    data = DataMatrix.from_points(rng.normal(size=(n, d)))
    F = MembershipMatrix.from_values(rng.dirichlet(np.ones(c), size=n))
    return data, F, to_power(F, r)


def run_suite(scale: str = "quick", seed: int = 0) -> list:
    """Run the full verification battery and return one report per check.

    ``quick`` keeps instances at n <= 30 with at most 200 randomized
    trials; ``full`` raises both. Deterministic for a fixed seed.
    """
    if scale == "quick":
        n_instances, n_max, trials = 5, 30, 200
    elif scale == "full":
        n_instances, n_max, trials = 20, 100, 1000
    else:
        raise ValueError(f"unknown scale {scale!r}, expected 'quick' or 'full'")
    rng = np.random.default_rng(seed)
    reports = []

    # Gram-free aggregates vs explicit Gram evaluation.
    worst = 0.0
    samples = 0
    for _ in range(n_instances):
        n = int(rng.integers(5, n_max + 1))
        d = int(rng.integers(1, 6))
        c = int(rng.integers(2, 6))
        data, _, G = _random_instance(rng, n, d, c, 2.0)
        agg = aggregates(data, G)
        aux = irw_auxiliary(data, G)
        for j in range(c):
            g = G.values[:, j]
            quad_ref = gram_quad_oracle(data, g)
            a_ref = gram_vector_oracle(data, g) / np.sqrt(quad_ref)
            worst = max(worst,
                        abs(agg.quad[j] - quad_ref) / (1.0 + abs(quad_ref)),
                        float(np.max(np.abs(aux.a[j] - a_ref)))
                        / (1.0 + float(np.max(np.abs(a_ref)))))
            samples += 1
    reports.append(OracleReport.from_error("gram_agreement", worst, 1e-10, samples))

    # Analytic tangent gradient vs central finite differences.
    worst = 0.0
    for _ in range(n_instances * 2):
        n = int(rng.integers(5, 16))
        d = int(rng.integers(1, 4))
        data = DataMatrix.from_points(rng.normal(size=(n, d)))
        g_t = rng.uniform(0.1, 1.0, size=n)
        grad = tangent_gradient(data, g_t)
        fd = finite_diff_gradient(data, g_t, step=1e-5)
        worst = max(worst, float(np.max(np.abs(fd - grad)))
                    / (1.0 + float(np.max(np.abs(grad)))))
    reports.append(OracleReport.from_error("gradient_fd", worst, 1e-6,
                                           n_instances * 2))

    # Surrogate touches the objective at the anchor and dominates elsewhere.
    tang_worst = 0.0
    dom_worst = 0.0
    anchors = max(4, n_instances)
    per_anchor = max(25, trials // anchors)
    for _ in range(anchors):
        n = int(rng.integers(5, n_max + 1))
        d = int(rng.integers(1, 6))
        c = int(rng.integers(2, 6))
        data, _, G_t = _random_instance(rng, n, d, c, 2.0)
        obj_t = phi(data, G_t)
        tang_worst = max(tang_worst,
                         abs(majorizer_h(data, G_t, G_t) - obj_t) / (1.0 + abs(obj_t)))
        for _ in range(per_anchor):
            F = MembershipMatrix.from_values(rng.dirichlet(np.ones(c), size=n))
            G = to_power(F, 2.0)
            gap = phi(data, G) - majorizer_h(data, G, G_t)
            dom_worst = max(dom_worst, gap / (1.0 + abs(phi(data, G))))
    reports.append(OracleReport.from_error("tangency", tang_worst, 1e-10, anchors))
    reports.append(OracleReport.from_error("domination", dom_worst, 1e-9,
                                           anchors * per_anchor))

    # One surrogate step equals one re-weighting inner step, and equals one
    # classic center-then-membership alternation.
    worst_irw = 0.0
    worst_classic = 0.0
    for _ in range(n_instances * 4):
        n = int(rng.integers(5, n_max + 1))
        d = int(rng.integers(1, 6))
        c = int(rng.integers(2, 6))
        r = float(rng.choice([1.5, 2.0, 3.0]))
        data, _, G_t = _random_instance(rng, n, d, c, r)
        F_mm = update_membership_mm(data, G_t, r)
        F_irw = update_membership_irw(data, irw_auxiliary(data, G_t), r)
        centers = compute_centers(aggregates(data, G_t))
        F_classic = update_membership_classic(data, centers, r)
        worst_irw = max(worst_irw, float(np.max(np.abs(F_mm.values - F_irw.values))))
        worst_classic = max(worst_classic,
                            float(np.max(np.abs(F_mm.values - F_classic.values))))
    reports.append(OracleReport.from_error("single_step_equivalence", worst_irw,
                                           1e-12, n_instances * 4))
    reports.append(OracleReport.from_error("classic_coincidence", worst_classic,
                                           1e-12, n_instances * 4))

    # Monotone descent audit on synthetic blobs.
    spec = SyntheticSpec(blob_count=3, points_per_blob=20, dim=2,
                         blob_stddev=0.5, blob_center_scale=5.0, seed=seed)
    blob_data = make_blobs(spec)
    cfg = SolverConfig(c=3, seed=seed)
    F0 = init_random(blob_data.n, cfg.c, cfg.seed)
    steps = 50 if scale == "quick" else 100
    reports.append(descent_chain_audit(blob_data, F0, cfg, steps))

    # Randomized surrogate-minimizer certificate.
    n = 20 if scale == "quick" else 40
    data, _, G_t = _random_instance(rng, n, 2, 3, 2.0)
    reports.append(surrogate_argmin_oracle(data, G_t, 2.0, trials, seed))

    return reports
