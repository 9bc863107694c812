"""Objective values, cluster centers, and the majorizing surrogate.

Everything here reduces to products with the data matrix of length d, so
the n x n Gram matrix is never materialized: for n in the tens of
thousands it would dominate memory while being mathematically redundant.

Central quantities for a powered membership G with columns g_j:

* per-cluster aggregates ``y_j = sum_i g_ij x_i``, ``quad_j = |y_j|^2``
  and ``mass_j = sum_i g_ij``;
* the fuzzy-means cost at explicit centers;
* the reduced cost ``phi`` obtained by substituting the optimal centers;
* the auxiliary cost ``psi`` with per-cluster scalars s_j;
* the tangent-plane majorizer ``h`` of phi, and the gradient of the
  quadratic-over-linear term it linearizes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dataset import DataMatrix
from .exceptions import DegenerateClusterError
from .membership import MembershipMatrix, PowerMembership


@dataclass(frozen=True)
class ClusterCenters:
    """c cluster centers in d dimensions, one per row."""

    centers: np.ndarray

    @property
    def c(self) -> int:
        return self.centers.shape[0]

    @property
    def d(self) -> int:
        return self.centers.shape[1]


@dataclass(frozen=True)
class ClusterAggregates:
    """Per-cluster sufficient statistics of (data, G).

    Attributes
    ----------
    y : ndarray, shape (c, d)
        Row j holds the weighted data sum ``sum_i g_ij x_i``.
    quad : ndarray, shape (c,)
        ``quad[j] = |y_j|^2``, the Gram quadratic form evaluated without
        the Gram matrix.
    mass : ndarray, shape (c,)
        ``mass[j] = sum_i g_ij``, strictly positive.
    """

    y: np.ndarray
    quad: np.ndarray
    mass: np.ndarray


def aggregates(data: DataMatrix, G: PowerMembership) -> ClusterAggregates:
    """Accumulate y_j, quad_j and mass_j for every cluster in O(ndc)."""
    if G.n != data.n:
        raise ValueError(f"G has {G.n} rows but data has {data.n} points")
    mass = np.asarray(G.col_sums, dtype=np.float64)
    dead = np.flatnonzero(mass <= 0.0)
    if dead.size:
        raise DegenerateClusterError(f"cluster(s) {dead.tolist()} have zero mass")
    y = G.values.T @ data.points
    quad = np.einsum("cd,cd->c", y, y)
    return ClusterAggregates(y, quad, mass)


def compute_centers(agg: ClusterAggregates) -> ClusterCenters:
    """Optimal centers for fixed memberships: m_j = y_j / mass_j."""
    if np.any(agg.mass <= 0.0):
        raise DegenerateClusterError("zero cluster mass, centers undefined")
    return ClusterCenters(agg.y / agg.mass[:, None])


def fcm_objective(data: DataMatrix, F: MembershipMatrix, centers: ClusterCenters,
                  r: float) -> float:
    """Fuzzy-means cost sum_j sum_i f_ij^r |x_i - m_j|^2 at explicit centers.

    Deliberately evaluated through the point-center differences, not the
    expanded form, so it provides an independent route for checking
    :func:`phi`.
    """
    if not r > 1.0:
        raise ValueError(f"fuzziness exponent must exceed 1, got {r}")
    if F.n != data.n or centers.d != data.d:
        raise ValueError("dimension mismatch between data, memberships and centers")
    G = F.values ** r
    total = 0.0
    for j in range(centers.c):
        diff = data.points - centers.centers[j]
        total += float(G[:, j] @ np.einsum("id,id->i", diff, diff))
    return total


def phi(data: DataMatrix, G: PowerMembership) -> float:
    """Reduced cost: the fuzzy-means objective with centers eliminated.

    phi(G) = sum_ij g_ij x_i.x_i - sum_j quad_j / mass_j. Equals
    :func:`fcm_objective` at the centers of :func:`compute_centers`.
    """
    agg = aggregates(data, G)
    linear = float(data.sq_norms @ G.values.sum(axis=1))
    return linear - float(np.sum(agg.quad / agg.mass))


def psi(data: DataMatrix, G: PowerMembership, s) -> float:
    """Auxiliary cost with per-cluster scalars s_j.

    psi(G, s) = sum_ij g_ij x_i.x_i + sum_j (s_j^2 mass_j - 2 s_j sqrt(quad_j)).
    Minimized over s at s_j = sqrt(quad_j) / mass_j, where it collapses to
    :func:`phi`.
    """
    s = np.asarray(s, dtype=np.float64)
    agg = aggregates(data, G)
    if s.shape != agg.mass.shape:
        raise ValueError(f"s must have one entry per cluster, got shape {s.shape}")
    if not np.all(np.isfinite(s)):
        raise ValueError("s must be finite")
    linear = float(data.sq_norms @ G.values.sum(axis=1))
    return linear + float(np.sum(s * s * agg.mass - 2.0 * s * np.sqrt(agg.quad)))


def majorizer_h(data: DataMatrix, G: PowerMembership, G_t: PowerMembership) -> float:
    """Tangent-plane upper bound of :func:`phi` anchored at G_t.

    The concave term -quad_j/mass_j of phi is replaced by its first-order
    expansion around g_j^t, constants included, so h(G_t | G_t) = phi(G_t)
    exactly and h(G | G_t) >= phi(G) everywhere on the constraint set.
    """
    if G.values.shape != G_t.values.shape:
        raise ValueError("G and G_t must have identical shapes")
    agg_t = aggregates(data, G_t)
    linear = float(data.sq_norms @ G.values.sum(axis=1))
    # cross_j = y_j^t . y_j evaluates (g_j^t)' X'X g_j via two length-d products
    y = G.values.T @ data.points
    cross = np.einsum("cd,cd->c", agg_t.y, y)
    mass = G.values.sum(axis=0)
    tangent = (agg_t.quad / agg_t.mass
               + (2.0 * agg_t.mass * (cross - agg_t.quad)
                  - agg_t.quad * (mass - agg_t.mass)) / agg_t.mass ** 2)
    return linear - float(np.sum(tangent))


def tangent_gradient(data: DataMatrix, g_t) -> np.ndarray:
    """Gradient of g -> (g' X'X g) / (g' 1) at g_t, Gram-free.

    Returns the n-vector (2 mass (X'X g_t) - quad) / mass^2 with X'X g_t
    computed as two O(nd) products. Homogeneous of degree 0: scaling g_t
    leaves it unchanged.
    """
    g_t = np.asarray(g_t, dtype=np.float64)
    if g_t.shape != (data.n,):
        raise ValueError(f"g_t must be a length-{data.n} vector")
    mass = float(g_t.sum())
    if mass <= 0.0:
        raise DegenerateClusterError("zero mass, gradient undefined")
    y = data.points.T @ g_t
    xxg = data.points @ y
    quad = float(y @ y)
    return (2.0 * mass * xxg - quad) / mass ** 2
