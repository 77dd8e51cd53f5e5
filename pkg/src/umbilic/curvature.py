"""Closed-form curvature of warped slices, Class-H spacetimes and charts.

Conventions: a warped slice carries the metric g^T = h_T^-1 ds^2 + s^2 g_N;
the ambient spacetime is g = -h dt^2 + h^-1 dr^2 + r^2 g_N.  All formulas are
exact rational/power expressions in (h, h', h'') and the fibre Ricci data; the
finite-difference oracle in :mod:`umbilic.oracle` cross-checks every one of
them in the test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

from .errors import InsideHorizon, NonspacelikeSlice, OutOfChart
from .fibre import Fibre
from .profiles import Profile

if TYPE_CHECKING:  # pragma: no cover
    from .graphs import GraphSlice
    from .kruskal import KruskalChart


@dataclass(frozen=True)
class SliceCurvature:
    """Intrinsic curvature of g^T = h_T^-1 ds^2 + s^2 g_N at one radius.

    ``ric_ss`` is the coordinate component Ric^T(d_s, d_s);
    ``ric_fibre_shift`` the scalar subtracted from every fibre Ricci
    eigenvalue, Ric^T_IJ = (Ric_N)_IJ - shift * (g_N)_IJ;
    ``hess_ss``/``hess_fibre`` are the ds^2- and g_N-coefficients of
    Hess(f_T)/f_T for f_T = sqrt(h_T), and ``laplacian`` its metric trace.
    """

    ric_ss: float
    ric_fibre_shift: float
    scalar: float
    hess_ss: float
    hess_fibre: float
    laplacian: float


def slice_curvature(hT, fibre: Fibre, s: float, n: int) -> SliceCurvature:
    """All Appendix-style slice curvature quantities from (h_T, h_T', h_T'')."""
    value, d1, d2 = hT
    if value <= 0.0:
        raise NonspacelikeSlice(f"h_T({s}) = {value} <= 0")
    ric_ss = -(n - 1) * d1 / (2.0 * s * value)
    shift = (n - 2) * value + 0.5 * s * d1
    scalar = (fibre.scalar - (n - 1) * ((n - 2) * value + s * d1)) / s**2
    return SliceCurvature(
        ric_ss=ric_ss,
        ric_fibre_shift=shift,
        scalar=scalar,
        hess_ss=0.5 * d2 / value,
        hess_fibre=0.5 * s * d1,
        laplacian=0.5 * d2 + (n - 1) * d1 / (2.0 * s),
    )


@dataclass(frozen=True)
class SpacetimeCurvature:
    """Ricci data of the static spacetime at one radius.

    ``beta`` is the Ricci eigenvalue on span{d_t, d_r}; ``fibre_eigs`` the
    eigenvalues on the fibre block, both normalized against the spacetime
    metric (unit vectors), so fibre_eig - beta is the photon-surface
    eigenvalue gap.  ``scalar`` is the spacetime scalar curvature.
    """

    beta: float
    fibre_eigs: tuple[float, ...]
    scalar: float


def spacetime_curvature(profile: Profile, fibre: Fibre, r: float) -> SpacetimeCurvature:
    """beta, fibre Ricci eigenvalues and scalar curvature at radius r.

    Valid on both sides of horizons (no division by h occurs).
    """
    n = profile.n
    h, d1, d2 = profile.terms.derivatives(r, 3)
    beta = -0.5 * (d2 + (n - 1) * d1 / r)
    shift = (n - 2) * h + r * d1
    eigs = tuple((lam - shift) / r**2 for lam in fibre.ricci_eigenvalues)
    scalar = -d2 - (n - 1) / r**2 * ((n - 2) * h + 2.0 * r * d1) + fibre.scalar / r**2
    return SpacetimeCurvature(beta=beta, fibre_eigs=eigs, scalar=scalar)


def kruskal_ricci(chart: "KruskalChart", fibre: Fibre, rho: float):
    """(Ric_uv, fibre eigenvalues) of the double-null chart at radius rho.

    Ric_uu = Ric_vv = 0 identically; Ric_uv = F_l(rho) * beta(rho); the
    fibre eigenvalues coincide with the static-chart ones at equal radius.
    """
    lo, hi = chart.domain
    if not (lo < rho < hi):
        raise OutOfChart(f"rho={rho} outside chart domain ({lo}, {hi})")
    st = spacetime_curvature(chart.profile, fibre, rho)
    return chart.conformal_factor(rho) * st.beta, st.fibre_eigs


def hessian_identity_check(
    profile: Profile, graph: "GraphSlice", s: float, c1: float, c2: float
) -> float:
    """Residual of the Riemann/Hessian identity for a graph-adapted frame.

    Contracts the closed-form ambient Riemann components with the graph's
    future unit normal and the unit tangent V_T = c1 f_T d_s + (c2/s) X,
    then compares against Hess(f)(V_0, V_0)/f for the corresponding vector
    V_0 = c1 f d_r + (c2/s) X on the time-symmetric slice.  Exact for every
    graph; the residual is pure floating-point noise.
    """
    h, d1, d2 = profile.terms.derivatives(s, 3)
    if h <= 0.0:
        raise InsideHorizon(f"h({s}) = {h} <= 0: identity is (t, r)-chart-bound")
    data = graph.data(s)
    h_t, b_t = data.h_T, data.b_T

    sqrt_ht = math.sqrt(h_t)
    # frame components in (t, r, X)-slots
    v = {"t": c1 * sqrt_ht * data.T_prime, "r": c1 * sqrt_ht, "X": c2 / s}
    nrm = {"t": sqrt_ht / h, "r": s * b_t}

    # nonzero ambient Riemann components with two slots in {d_t, d_r}
    hess_rr = 0.5 * d2              # Hess_0 f (d_r, d_r) * f
    hess_xx = 0.5 * s * d1 * h      # f * Hess_0 f on a unit fibre direction
    rm = {
        ("r", "t", "r", "t"): hess_rr,
        ("X", "t", "X", "t"): hess_xx,
        ("t", "r", "t", "r"): hess_rr,
        ("X", "r", "X", "r"): -0.5 * s * d1 / h,
        ("t", "r", "r", "t"): -0.5 * d2,
        ("r", "t", "t", "r"): -0.5 * d2,
    }
    lhs = 0.0
    for (a, b, c, d), comp in rm.items():
        if b in nrm and d in nrm:
            lhs += v[a] * nrm[b] * v[c] * nrm[d] * comp

    rhs = c1**2 * 0.5 * d2 + c2**2 * d1 / (2.0 * s)
    return abs(lhs - rhs)
