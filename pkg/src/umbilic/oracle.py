"""Finite-difference curvature oracle, independent of every closed form.

Christoffel symbols come from central differences of the metric components,
their derivatives from central second-difference stencils, and the Ricci
tensor from the standard contraction; a Richardson pass over two step sizes
removes the leading truncation error.  The oracle only ever sees a callable
``point -> metric matrix``, so it cannot share code (or bugs) with the
closed-form modules it is used to check.

Fibre charts provide explicit coordinates for the compact factor: round
spheres up to dimension 3, flat tori, scaled hyperbolic planes and products
of those, which covers every fibre the toolkit models (anisotropic fibres
are checked in their eigen-directions through product charts).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Callable

import numpy as np

from .errors import SingularMetric
from .fibre import Fibre
from .profiles import Profile

MetricFn = Callable[[np.ndarray], np.ndarray]

#: base FD step (scaled per coordinate by max(1, |x_i|)).
DEFAULT_STEP = 1e-4
COND_LIMIT = 1e12


# -- raw finite differences ---------------------------------------------------


def _metric_derivs(metric: MetricFn, x: np.ndarray, steps: np.ndarray):
    """g, dg[a,i,j] = d_a g_ij and ddg[a,b,i,j] = d_a d_b g_ij at x."""
    dim = len(x)
    g = metric(x)
    dg = np.empty((dim, dim, dim))
    ddg = np.empty((dim, dim, dim, dim))

    shifted = {}

    def at(*pairs) -> np.ndarray:
        key = tuple(sorted(pairs))
        if key not in shifted:
            y = x.copy()
            for axis, sgn in pairs:
                y[axis] += sgn * steps[axis]
            shifted[key] = metric(y)
        return shifted[key]

    for a in range(dim):
        dg[a] = (at((a, +1)) - at((a, -1))) / (2.0 * steps[a])
        ddg[a, a] = (at((a, +1)) - 2.0 * g + at((a, -1))) / steps[a] ** 2
    for a, b in combinations(range(dim), 2):
        mixed = (
            at((a, +1), (b, +1))
            - at((a, +1), (b, -1))
            - at((a, -1), (b, +1))
            + at((a, -1), (b, -1))
        ) / (4.0 * steps[a] * steps[b])
        ddg[a, b] = mixed
        ddg[b, a] = mixed
    return g, dg, ddg


def _ricci_once(metric: MetricFn, x: np.ndarray, steps: np.ndarray) -> np.ndarray:
    g, dg, ddg = _metric_derivs(metric, x, steps)
    if np.linalg.cond(g) > COND_LIMIT:
        raise SingularMetric(f"metric at {x} has condition number > {COND_LIMIT:g}")
    g_inv = np.linalg.inv(g)
    # Gamma^c_ab and d_e Gamma^c_ab
    gamma = 0.5 * np.einsum("cd,abd->cab", g_inv, dg + np.swapaxes(dg, 0, 1)) \
        - 0.5 * np.einsum("cd,dab->cab", g_inv, dg)
    dg_inv = -np.einsum("ij,ajk,kl->ail", g_inv, dg, g_inv)
    sym = ddg + np.swapaxes(ddg, 1, 2)  # d_e(d_a g_bd + d_b g_ad) pattern below
    dgamma = (
        0.5 * np.einsum("ecd,abd->ecab", dg_inv, dg + np.swapaxes(dg, 0, 1))
        - 0.5 * np.einsum("ecd,dab->ecab", dg_inv, dg)
        + 0.5 * np.einsum("cd,eabd->ecab", g_inv, sym)
        - 0.5 * np.einsum("cd,edab->ecab", g_inv, ddg)
    )
    # Ric_ij = d_a Gamma^a_ij - d_j Gamma^a_ai + G^a_ab G^b_ij - G^a_jb G^b_ia
    ric = (
        np.einsum("aaij->ij", dgamma)
        - np.einsum("jaai->ij", dgamma)
        + np.einsum("aab,bij->ij", gamma, gamma)
        - np.einsum("ajb,bia->ij", gamma, gamma)
    )
    return 0.5 * (ric + ric.T)


def fd_ricci_oracle(
    metric: MetricFn,
    point,
    step: float = DEFAULT_STEP,
    richardson: bool = True,
) -> np.ndarray:
    """Covariant Ricci components at ``point`` by nested central differences.

    The step is scaled per coordinate by max(1, |x_i|); with ``richardson``
    the O(step^2) truncation is cancelled between runs at step and step/2.
    """
    x = np.asarray(point, dtype=float)
    steps = step * np.maximum(1.0, np.abs(x))
    coarse = _ricci_once(metric, x, steps)
    if not richardson:
        return coarse
    fine = _ricci_once(metric, x, steps / 2.0)
    return (4.0 * fine - coarse) / 3.0


def fd_christoffels(metric: MetricFn, point, step: float = DEFAULT_STEP) -> np.ndarray:
    """Gamma^c_ab at ``point`` from central differences of the metric."""
    x = np.asarray(point, dtype=float)
    steps = step * np.maximum(1.0, np.abs(x))
    g, dg, _ = _metric_derivs(metric, x, steps)
    g_inv = np.linalg.inv(g)
    return 0.5 * np.einsum("cd,abd->cab", g_inv, dg + np.swapaxes(dg, 0, 1)) \
        - 0.5 * np.einsum("cd,dab->cab", g_inv, dg)


# -- fibre charts --------------------------------------------------------------


@dataclass(frozen=True)
class FibreChart:
    """Explicit coordinates on the fibre with closed-form Ricci matrix.

    ``metric``/``ricci`` map a coordinate point to matrices; the Ricci matrix
    is the exact Ric(g_N) used to assemble predicted ambient curvature.
    """

    dim: int
    metric: Callable[[np.ndarray], np.ndarray]
    ricci: Callable[[np.ndarray], np.ndarray]
    generic_point: tuple[float, ...]


def sphere_chart(dim: int, radius: float = 1.0) -> FibreChart:
    """Round sphere of the given radius in polar coordinates (dim 2 or 3)."""
    a2 = radius * radius
    if dim == 2:
        def g(y):
            return a2 * np.diag([1.0, math.sin(y[0]) ** 2])
        point = (1.1, 0.7)
    elif dim == 3:
        def g(y):
            s1 = math.sin(y[0]) ** 2
            return a2 * np.diag([1.0, s1, s1 * math.sin(y[1]) ** 2])
        point = (1.2, 0.9, 0.7)
    else:
        raise ValueError("sphere charts implemented for fibre dimension 2 and 3")
    eig = (dim - 1) / a2  # Ricci eigenvalue of the scaled round metric

    def ric(y):
        return eig * g(y)

    return FibreChart(dim=dim, metric=g, ricci=ric, generic_point=point)


def flat_chart(dim: int) -> FibreChart:
    """Flat torus piece in Euclidean coordinates."""
    def g(y):
        return np.eye(dim)

    def ric(y):
        return np.zeros((dim, dim))

    return FibreChart(dim=dim, metric=g, ricci=ric, generic_point=tuple([0.3] * dim))


def hyperbolic_chart(dim: int, radius: float = 1.0) -> FibreChart:
    """Scaled hyperbolic plane (dim 2) with Ricci eigenvalue -(dim-1)/a^2."""
    if dim != 2:
        raise ValueError("hyperbolic chart implemented for fibre dimension 2")
    a2 = radius * radius

    def g(y):
        return a2 * np.diag([1.0, math.sinh(y[0]) ** 2])

    def ric(y):
        return (-1.0 / a2) * g(y)

    return FibreChart(dim=2, metric=g, ricci=ric, generic_point=(0.8, 0.5))


def product_chart(*factors: FibreChart) -> FibreChart:
    """Block product of fibre charts (for anisotropic eigenvalue lists)."""
    dim = sum(f.dim for f in factors)

    def _blocks(y, pick):
        out = np.zeros((dim, dim))
        k = 0
        for f in factors:
            out[k : k + f.dim, k : k + f.dim] = pick(f)(np.asarray(y[k : k + f.dim]))
            k += f.dim
        return out

    return FibreChart(
        dim=dim,
        metric=lambda y: _blocks(y, lambda f: f.metric),
        ricci=lambda y: _blocks(y, lambda f: f.ricci),
        generic_point=tuple(v for f in factors for v in f.generic_point),
    )


def chart_for_fibre(fibre: Fibre) -> FibreChart:
    """A concrete chart realizing the fibre's Ricci eigenvalue data."""
    eigs = fibre.ricci_eigenvalues
    if len(set(eigs)) == 1:
        kappa = eigs[0]
        if kappa > 0:
            return sphere_chart(fibre.dim, radius=math.sqrt((fibre.dim - 1) / kappa))
        if kappa == 0:
            return flat_chart(fibre.dim)
        return hyperbolic_chart(fibre.dim, radius=math.sqrt((fibre.dim - 1) / -kappa))
    if fibre.dim == 3 and len(set(eigs)) == 2 and min(eigs) == 0.0:
        # S^2(a) x S^1 realizes eigenvalues (0, k, k)
        kappa = max(eigs)
        return product_chart(sphere_chart(2, radius=1.0 / math.sqrt(kappa)), flat_chart(1))
    raise ValueError(f"no explicit chart for eigenvalues {eigs}")


# -- ambient chart builders -----------------------------------------------------


def spacetime_metric(profile: Profile, fchart: FibreChart) -> MetricFn:
    """(t, r, fibre) chart metric of the static spacetime."""
    def g(x):
        h = float(profile.h(x[1]))
        out = np.zeros((2 + fchart.dim, 2 + fchart.dim))
        out[0, 0] = -h
        out[1, 1] = 1.0 / h
        out[2:, 2:] = x[1] ** 2 * fchart.metric(x[2:])
        return out

    return g


def slice_metric(h_of_s: Callable[[float], float], fchart: FibreChart) -> MetricFn:
    """(s, fibre) chart metric of a warped slice g = ds^2/h_T + s^2 g_N."""
    def g(x):
        out = np.zeros((1 + fchart.dim, 1 + fchart.dim))
        out[0, 0] = 1.0 / h_of_s(float(x[0]))
        out[1:, 1:] = x[0] ** 2 * fchart.metric(x[1:])
        return out

    return g


def kruskal_metric(chart, fchart: FibreChart) -> MetricFn:
    """(u, v, fibre) chart metric F (du dv + dv du) + rho^2 g_N."""
    state = {"rho": None}

    def g(x):
        rho = chart.radius_from_product(float(x[0] * x[1]), x0=state["rho"])
        state["rho"] = rho
        out = np.zeros((2 + fchart.dim, 2 + fchart.dim))
        f = chart.conformal_factor(rho)
        out[0, 1] = out[1, 0] = f
        out[2:, 2:] = rho * rho * fchart.metric(x[2:])
        return out

    return g


# -- predicted (closed-form) Ricci matrices -------------------------------------


def predicted_spacetime_ricci(
    profile: Profile, fchart: FibreChart, point, beta: float, shift: float
) -> np.ndarray:
    """Ricci matrix predicted by (beta, fibre shift) in the static chart.

    beta multiplies the (t, r) metric block; the coordinate fibre block is
    Ric_N - shift * g_N.
    """
    x = np.asarray(point, dtype=float)
    h = float(profile.h(x[1]))
    out = np.zeros((2 + fchart.dim, 2 + fchart.dim))
    out[0, 0] = beta * (-h)
    out[1, 1] = beta / h
    y = x[2:]
    out[2:, 2:] = fchart.ricci(y) - shift * fchart.metric(y)
    return out


def predicted_slice_ricci(
    fchart: FibreChart, point, ric_ss: float, shift: float
) -> np.ndarray:
    """Ricci matrix predicted by (Ric_ss, fibre shift) at (s, fibre point)."""
    x = np.asarray(point, dtype=float)
    out = np.zeros((1 + fchart.dim, 1 + fchart.dim))
    out[0, 0] = ric_ss
    y = x[1:]
    out[1:, 1:] = fchart.ricci(y) - shift * fchart.metric(y)
    return out


def predicted_kruskal_ricci(
    fchart: FibreChart, point, ric_uv: float, shift: float
) -> np.ndarray:
    """Ricci matrix predicted by (Ric_uv, fibre shift) at (u, v, fibre)."""
    x = np.asarray(point, dtype=float)
    out = np.zeros((2 + fchart.dim, 2 + fchart.dim))
    out[0, 1] = out[1, 0] = ric_uv
    y = x[2:]
    out[2:, 2:] = fchart.ricci(y) - shift * fchart.metric(y)
    return out


# -- second-fundamental-form oracle ---------------------------------------------


@dataclass(frozen=True)
class LeafOracle:
    """FD values of the leaf geometry inside a graph (H, P and K components)."""

    H: float
    P: float
    K_ss: float
    stcmc: float


def second_fundamental_form_oracle(
    graph, s: float, step: float = 1e-5
) -> LeafOracle:
    """Leaf mean curvature and K^T data, computed without the graph formulas.

    H comes from FD Christoffels of the induced slice metric; K^T from the
    ambient covariant derivative of a numerically solved unit normal along
    the embedding (T(s), s, fibre).  Only the embedding slope T' is taken
    from the graph; every curvature quantity is finite-difference data.
    """
    fchart = chart_for_fibre(graph.fibre)
    dim = 2 + fchart.dim
    g_fn = spacetime_metric(graph.base, fchart)
    y = np.array(fchart.generic_point)

    def tangents(si: float):
        tp = graph.data(si).T_prime
        es = np.zeros(dim)
        es[0] = tp
        es[1] = 1.0
        return es

    def normal(si: float) -> np.ndarray:
        x = np.concatenate(([0.0, si], y))
        g = g_fn(x)
        rows = [g @ tangents(si)]
        for k in range(fchart.dim):
            e = np.zeros(dim)
            e[2 + k] = 1.0
            rows.append(g @ e)
        _, _, vh = np.linalg.svd(np.array(rows))
        w = vh[-1]
        norm2 = w @ g @ w
        w = w / math.sqrt(-norm2)
        return w if w[0] > 0 else -w

    x0 = np.concatenate(([0.0, s], y))
    g0 = g_fn(x0)
    gamma = fd_christoffels(g_fn, x0)
    n_vec = normal(s)
    es = tangents(s)

    ds = step * max(1.0, s)
    dn = (normal(s + ds) - normal(s - ds)) / (2.0 * ds)
    cov_s = dn + np.einsum("cab,a,b->c", gamma, es, n_vec)
    k_ss = float(es @ g0 @ cov_s)

    induced_fibre = g0[2:, 2:]
    k_fibre = np.empty((fchart.dim, fchart.dim))
    for i in range(fchart.dim):
        ei = np.zeros(dim)
        ei[2 + i] = 1.0
        cov_i = np.einsum("cab,a,b->c", gamma, ei, n_vec)
        for j in range(fchart.dim):
            ej = np.zeros(dim)
            ej[2 + j] = 1.0
            k_fibre[i, j] = ej @ g0 @ cov_i
    p = float(np.trace(np.linalg.inv(induced_fibre) @ k_fibre))

    # H from the induced slice metric alone
    sl_fn = slice_metric(lambda si: float(graph.h_T(si)), fchart)
    xs = np.concatenate(([s], y))
    g_sl = sl_fn(xs)
    gamma_sl = fd_christoffels(sl_fn, xs)
    nu_s = 1.0 / math.sqrt(g_sl[0, 0])
    two_ff = np.empty((fchart.dim, fchart.dim))
    for i in range(fchart.dim):
        for j in range(fchart.dim):
            two_ff[i, j] = nu_s * sum(
                gamma_sl[k, 1 + i, 0] * g_sl[k, 1 + j] for k in range(1 + fchart.dim)
            )
    h_mean = float(np.trace(np.linalg.inv(g_sl[1:, 1:]) @ two_ff))

    return LeafOracle(H=h_mean, P=p, K_ss=k_ss, stcmc=h_mean**2 - p**2)
