"""Photon-surface diagnostics: Ricci eigenvalue gap and isotropic charts.

A timelike totally umbilic hypersurface with constant umbilicity factor is
forced to be rotationally symmetric (or totally geodesic with fibre-tangent
normal) whenever the gap

    E_X(r) = h''/2 + (n-3) h'/(2r) - (n-2) h/r^2 + Ric_N(X,X)/r^2

between the fibre Ricci eigenvalues and the (t, r)-block eigenvalue is
nonzero on a dense set of radii.  This module evaluates the gap, classifies
its zero set at scan resolution, carries the timelike-graph coefficient
relations, and converts spherically symmetric profiles to isotropic
coordinates where the conformally flat comparison family Psi = 1/(C s + C0)
lives.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .errors import HorizonInInterval, NotTimelike, ZeroC0
from .fibre import Fibre, make_sphere
from .nec import nec_expression
from .profiles import Profile, find_zeros, minkowski_like, quadratic_conformal

#: |E_X| below this counts as a gap zero in scans.
TOL_GAP = 1e-9


def eigenvalue_gap(profile: Profile, fibre: Fibre, r, eigen_index: int = 0):
    """E_X(r) for the chosen fibre eigen-direction."""
    return nec_expression(profile, fibre.ricci_eigenvalues[eigen_index], r)


@dataclass(frozen=True)
class GapScan:
    """Gap samples over an interval with the zero-set classification.

    ``zero_set`` lists maximal radius intervals on which every sampled
    eigen-direction stays inside the gap tolerance; ``dense_condition`` is
    the scan-resolution version of the theorem hypothesis: no such interval
    is longer than twice the grid spacing.
    """

    interval: tuple[float, float]
    radii: np.ndarray
    gaps: np.ndarray  # shape (eigenvalues, radii)
    zero_set: tuple[tuple[float, float], ...]
    dense_condition: bool


def gap_zero_scan(
    profile: Profile,
    fibre: Fibre,
    interval: tuple[float, float],
    grid: int = 512,
    tol: float = TOL_GAP,
) -> GapScan:
    """Sample |E_X| on a grid and classify where all directions vanish."""
    lo, hi = interval
    if not (0.0 < lo < hi):
        raise ValueError(f"interval must satisfy 0 < lo < hi, got {interval}")
    rs = np.linspace(lo, hi, grid)
    gaps = np.array(
        [nec_expression(profile, e, rs) for e in fibre.ricci_eigenvalues]
    )
    flagged = np.all(np.abs(gaps) <= tol, axis=0)
    spacing = (hi - lo) / (grid - 1)

    runs: list[tuple[float, float]] = []
    start = None
    for i, flag in enumerate(flagged):
        if flag and start is None:
            start = i
        elif not flag and start is not None:
            runs.append((float(rs[start]), float(rs[i - 1])))
            start = None
    if start is not None:
        runs.append((float(rs[start]), float(rs[-1])))

    dense = all(b - a <= 2.0 * spacing for a, b in runs)
    return GapScan(
        interval=(lo, hi),
        radii=rs,
        gaps=gaps,
        zero_set=tuple(runs),
        dense_condition=dense,
    )


@dataclass(frozen=True)
class TimelikeGraphData:
    h_T: float
    bt_squared: float
    a_T: float
    residual: float


def timelike_photon_relations(
    profile: Profile, lam: float, s: float
) -> TimelikeGraphData:
    """Coefficient relations of a timelike radial graph with umbilicity lam.

    The induced data satisfy h_T = lam^2 s^2 - h, b_T^2 = (h_T + h)/s^2 and
    h_T a_T b_T = -(h_T + h)'/(2s); the returned residual checks the last
    relation with a_T = -lam/h_T.
    """
    h, h1, _ = profile.terms.derivatives(s, 3)
    h_t = lam * lam * s * s - h
    if lam == 0.0 or h_t <= 0.0:
        raise NotTimelike(f"lam^2 s^2 = {lam * lam * s * s} <= h({s}) = {h}")
    h_t1 = 2.0 * lam * lam * s - h1
    a_t = -lam / h_t
    residual = abs(h_t * a_t * lam + (h_t1 + h1) / (2.0 * s))
    return TimelikeGraphData(
        h_T=h_t, bt_squared=lam * lam, a_T=a_t, residual=residual
    )


class IsotropicChart:
    """Isotropic radius map for a spherically symmetric profile.

    The conformally flat form g^0 = Psi(s)^2 (ds^2 + s^2 dOmega^2) requires
    d(ln s) = dr/(r sqrt(h)), so s is fixed up to one multiplicative
    constant.  The anchor reproduces the classical Schwarzschild chart
    s = ((r^(n-2) - m + sqrt(r^(n-2)(r^(n-2) - 2m)))/2)^(1/(n-2)) when the
    profile is Schwarzschild, and s(r0) = r0 otherwise.
    """

    def __init__(self, profile: Profile, r0: float, quad_tol: float = 1e-12):
        self.profile = profile
        self.r0 = r0
        self.quad_tol = quad_tol
        if profile.family == "schwarzschild":
            self.s0 = _schwarzschild_isotropic_radius(
                profile.param_map["m"], profile.n, r0
            )
        else:
            self.s0 = r0

    def _check_positive(self, a: float, b: float) -> None:
        lo, hi = min(a, b), max(a, b)
        if lo < hi and len(find_zeros(self.profile, lo, hi, 128)):
            raise HorizonInInterval(f"h vanishes on [{lo}, {hi}]")
        if self.profile.h(lo) <= 0.0 or self.profile.h(hi) <= 0.0:
            raise HorizonInInterval(f"h not positive on [{lo}, {hi}]")

    def s_of_r(self, r: float) -> float:
        self._check_positive(self.r0, r)

        def dlns(x: float) -> float:
            return 1.0 / (x * math.sqrt(float(self.profile.h(x))))

        val, _ = quad(
            dlns, self.r0, r, epsabs=self.quad_tol, epsrel=self.quad_tol, limit=200
        )
        return self.s0 * math.exp(val)

    def psi(self, r: float) -> float:
        return r / self.s_of_r(r)

    def ntilde2(self, r: float) -> float:
        return float(self.profile.h(r))


def _schwarzschild_isotropic_radius(m: float, n: int, r: float) -> float:
    big_r = r ** (n - 2)
    if big_r <= 2.0 * m:
        raise HorizonInInterval(f"r={r} not outside the Schwarzschild horizon")
    s_pow = 0.5 * (big_r - m + math.sqrt(big_r * (big_r - 2.0 * m)))
    return s_pow ** (1.0 / (n - 2))


def isotropic_from_areal(
    profile: Profile, r0: float, r: float, quad_tol: float = 1e-12
) -> tuple[float, float, float]:
    """(s, Psi, Ntilde^2) at areal radius r, anchored at r0."""
    chart = IsotropicChart(profile, r0, quad_tol)
    s = chart.s_of_r(r)
    return s, r / s, chart.ntilde2(r)


@dataclass(frozen=True)
class ConformalChecks:
    """Verification bundle for the conformally flat family Psi = 1/(Cs+C0)."""

    cosmological_constant: float
    degenerate_horizon: float | None
    gap_residual_max: float       # |E(r) r / ((n-1) C) - 1| over samples (C != 0)
    psi_residual_max: float       # quadrature map vs 1/(C s + C0)
    ntilde_residual_max: float    # |Ntilde^2 - C0^2 Psi^2|


def conformal_family(
    c: float, c0: float, n: int = 3, samples: int = 20
) -> tuple[Profile, ConformalChecks]:
    """Profile h = (1 - C r)^2 with the isotropic-family identities checked.

    C = 0 recovers the flat profile.  For C > 0 the zero at r = 1/C is a
    degenerate Killing horizon, the gap satisfies E = (n-1) C / r exactly,
    and the matching cosmological constant is -n(n-1) C^2 / 2.
    """
    if c0 == 0.0:
        raise ZeroC0("the conformal family requires C0 != 0")
    profile = minkowski_like(n) if c == 0.0 else quadratic_conformal(c, n)
    fibre = make_sphere(n)

    r_hi = 0.9 / c if c > 0 else 10.0
    rs = np.linspace(0.1 * min(1.0, r_hi), r_hi, samples)

    gap_res = 0.0
    if c != 0.0:
        gaps = nec_expression(profile, fibre.ricci_eigenvalues[0], rs)
        gap_res = float(np.max(np.abs(gaps * rs / ((n - 1) * c) - 1.0)))

    # quadrature map against the closed form s(r) = C0 r / (1 - C r)
    r_anchor = float(rs[len(rs) // 2])
    s_anchor = c0 * r_anchor / (1.0 - c * r_anchor)
    chart = IsotropicChart(profile, r_anchor)
    scale = s_anchor / chart.s_of_r(r_anchor)  # fix the free constant
    psi_res = 0.0
    nt_res = 0.0
    for r in rs:
        s = scale * chart.s_of_r(float(r))
        psi = float(r) / s
        psi_res = max(psi_res, abs(psi - 1.0 / (c * s + c0)))
        nt_res = max(nt_res, abs(chart.ntilde2(float(r)) - c0**2 * psi**2))

    return profile, ConformalChecks(
        cosmological_constant=-0.5 * n * (n - 1) * c * c,
        degenerate_horizon=(1.0 / c) if c > 0 else None,
        gap_residual_max=gap_res,
        psi_residual_max=psi_res,
        ntilde_residual_max=nt_res,
    )
