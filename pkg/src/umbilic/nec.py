"""Null-energy-condition diagnostics as radial inequalities.

For a spacetime built from a profile h and a fibre with Ricci eigenvalues
Ric_N(X, X), the null energy condition is equivalent to

    E_X(r) = h''/2 + (n-3) h'/(2r) - (n-2) h/r^2 + Ric_N(X,X)/r^2 >= 0

for every unit eigenvector X.  With a single eigenvalue (n-2)*alpha this is
the linear ordinary differential inequality Q[h - alpha] >= 0 for the Euler
operator

    Q[x](s) = x''/2 + (n-3) x'/(2s) - (n-2) x/s^2,

whose exact kernel is spanned by s^2 and s^(2-n).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NoHorizon
from .fibre import Fibre
from .profiles import PowerSum, Profile, ZeroStructure, find_zeros

#: absolute slack on the NEC residual (the condition itself is exact).
TOL_NEC = 1e-9


def odi_residual(x, s, n: int):
    """Q[x](s) from a (value, first, second derivative) triple."""
    value, d1, d2 = x
    return 0.5 * d2 + (n - 3) * d1 / (2.0 * s) - (n - 2) * value / s**2


def odi_residual_power_sum(x: PowerSum, s, n: int):
    """Q[x](s) evaluated termwise: Q[c s^p] = c/2 (p-2)(p+n-2) s^(p-2).

    Exact on each power, so the kernel exponents {2, 2-n} drop out with no
    cancellation; used as the independent expansion oracle in tests.
    """
    out = s * 0.0
    for c, p in x.terms:
        coef = 0.5 * c * (p - 2.0) * (p + n - 2.0)
        if coef != 0.0:
            out = out + coef * s ** (p - 2.0)
    return out


def nec_expression(profile: Profile, eigenvalue: float, r):
    """E_X(r) for the fibre eigen-direction with Ric_N(X, X) = eigenvalue."""
    n = profile.n
    h, d1, d2 = profile.terms.derivatives(r, 3)
    return 0.5 * d2 + (n - 3) * d1 / (2.0 * r) - (n - 2) * h / r**2 + eigenvalue / r**2


@dataclass(frozen=True)
class NecReport:
    interval: tuple[float, float]
    min_residual: float
    satisfied: bool
    witness: tuple[float, float]  # (radius, fibre eigenvalue) at the minimum


def nec_check(
    profile: Profile,
    fibre: Fibre,
    interval: tuple[float, float],
    grid: int = 512,
    tol: float = TOL_NEC,
) -> NecReport:
    """Scan E_X over grid radii and all fibre eigen-directions."""
    lo, hi = interval
    if not (0.0 < lo < hi):
        raise ValueError(f"interval must satisfy 0 < lo < hi, got {interval}")
    rs = np.linspace(lo, hi, grid)
    best = math.inf
    witness = (lo, fibre.ricci_eigenvalues[0])
    for eig in fibre.ricci_eigenvalues:
        vals = nec_expression(profile, eig, rs)
        i = int(np.argmin(vals))
        if vals[i] < best:
            best = float(vals[i])
            witness = (float(rs[i]), eig)
    return NecReport(
        interval=(lo, hi),
        min_residual=best,
        satisfied=best >= -tol,
        witness=witness,
    )


def monotone_quantity(profile: Profile, fibre: Fibre, r, eigen_index: int = 0):
    """r^n [ (n-2) h'/(2r) - (n-2) h/r^2 + Ric_N(X,X)/r^2 ].

    Non-decreasing in r wherever the NEC holds; constant m*n*(n-2) on
    Schwarzschild with sphere fibre.
    """
    n = profile.n
    eig = fibre.ricci_eigenvalues[eigen_index]
    h, d1, _ = profile.terms.derivatives(r, 3)
    return r ** (n - 2) * ((n - 2) * (r * d1 / 2.0 - h) + eig)


def monotonicity_identity_residual(
    profile: Profile, fibre: Fibre, r: float, step: float | None = None
) -> float:
    """|d/dr M(r) - (n-2) r^(n-1) Q[h - alpha](r)|.

    The derivative of the monotone quantity is (n-2) r^(n-1) times the ODI
    residual for the minimal eigen-direction; M' is taken by central
    differences with one Richardson pass.
    """
    n = profile.n
    if step is None:
        step = 1e-5 * max(1.0, r)

    def d(dx: float) -> float:
        return (
            monotone_quantity(profile, fibre, r + dx)
            - monotone_quantity(profile, fibre, r - dx)
        ) / (2.0 * dx)

    m_prime = (4.0 * d(step / 2.0) - d(step)) / 3.0
    x = profile.minus_constant(fibre.alpha)
    rhs = (n - 2) * r ** (n - 1) * odi_residual_power_sum(x, r, n)
    return abs(m_prime - rhs)


def h4_boundary_check(
    profile: Profile,
    fibre: Fibre,
    zeros: ZeroStructure | None = None,
    r_max: float = 100.0,
    grid: int = 4096,
) -> bool:
    """h'(r_H) r_H + 2 alpha > 0 at the outermost zero.

    Implies the monotone quantity is positive everywhere outside the horizon.
    """
    if zeros is None:
        zeros = find_zeros(profile, 1e-4, r_max, grid)
    if len(zeros) == 0:
        raise NoHorizon(f"{profile} has no zero on (0, {r_max}]")
    r_h = zeros.r_H
    slope = float(profile.h(r_h, order=1))
    return slope * r_h + 2.0 * fibre.alpha > 0.0
