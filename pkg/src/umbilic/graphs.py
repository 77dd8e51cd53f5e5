"""Spacelike warped-product graphs and their initial-data geometry.

A radial graph {t = T(s)} over the canonical slice keeps warped-product form:

    g^T = h_T^-1 ds^2 + s^2 g_N,      K^T = a_T ds^2 + b_T s^2 g_N,

and is fully determined by the signed coefficient b_T through
h_T = h + s^2 b_T^2 and T' = s b_T / (h sqrt(h_T)).  The built-in families:

* ``Hyperboloid(lam)``      b_T = lam (totally umbilic, K^T = lam g^T),
* ``CMCGraph(C, c1)``       b_T = C/n + c1 s^-n (constant tr K^T = C),
* ``TimeSymmetric()``       b_T = 0,
* ``CustomBT(...)``         user-supplied b_T with derivative.

The module also carries the per-leaf geometry (expansions, spacetime mean
curvature) and the umbilicity-factor threshold C_0 of the base profile.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Callable

import numpy as np
from scipy.integrate import quad
from scipy.optimize import brentq, minimize_scalar

from .curvature import slice_curvature
from .errors import (
    HorizonChart,
    HorizonInInterval,
    NoHorizon,
    OutsideDomain,
)
from .fibre import Fibre
from .nec import odi_residual_power_sum
from .profiles import PowerSum, Profile, find_zeros


@dataclass(frozen=True)
class Hyperboloid:
    lam: float


@dataclass(frozen=True)
class CMCGraph:
    C: float
    c1: float


@dataclass(frozen=True)
class TimeSymmetric:
    pass


@dataclass(frozen=True)
class CustomBT:
    """b_T as a closed-form radial function with its first derivative.

    ``bt_second`` is optional and only needed for the deformation-tensor
    coefficient Q[h_T - h]; without it that coefficient falls back to a
    central difference of (s^2 b_T^2)'.
    """

    bt: Callable[[float], float]
    bt_prime: Callable[[float], float]
    bt_second: Callable[[float], float] | None = None


GraphFamily = Hyperboloid | CMCGraph | TimeSymmetric | CustomBT

#: |b_T| below this switches a_T to its exact removable-singularity limit.
BT_LIMIT_BAND = 1e-7


@dataclass(frozen=True)
class GraphData:
    h_T: float
    h_T_prime: float
    b_T: float
    a_T: float
    T_prime: float


@dataclass(frozen=True)
class GraphSlice:
    """A spacelike warped-product graph over a base profile.

    ``sign`` flips the orientation of T' (equivalently of b_T); the domain
    is (r_T, oo) with r_T the largest zero of h_T (0 when there is none).
    """

    base: Profile
    fibre: Fibre
    family: GraphFamily
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (-1, 1):
            raise ValueError("sign must be +1 or -1")
        if self.fibre.n != self.base.n:
            raise ValueError("fibre dimension does not match profile dimension")

    # -- b_T and the excess x = h_T - h = s^2 b_T^2 ------------------------

    def bt(self, s):
        """Signed fibre coefficient of K^T."""
        fam = self.family
        if isinstance(fam, Hyperboloid):
            raw = fam.lam * (s * 0.0 + 1.0)
        elif isinstance(fam, CMCGraph):
            raw = fam.C / self.base.n + fam.c1 * s ** (-float(self.base.n))
        elif isinstance(fam, TimeSymmetric):
            raw = s * 0.0
        else:
            raw = fam.bt(s)
        return self.sign * raw

    def bt_prime(self, s):
        fam = self.family
        if isinstance(fam, Hyperboloid) or isinstance(fam, TimeSymmetric):
            raw = s * 0.0
        elif isinstance(fam, CMCGraph):
            n = float(self.base.n)
            raw = -n * fam.c1 * s ** (-n - 1.0)
        else:
            raw = fam.bt_prime(s)
        return self.sign * raw

    @cached_property
    def excess(self) -> PowerSum | None:
        """h_T - h as an exact power sum, when the family admits one."""
        fam = self.family
        n = float(self.base.n)
        if isinstance(fam, Hyperboloid):
            return PowerSum(((fam.lam**2, 2.0),))
        if isinstance(fam, CMCGraph):
            a, c1 = fam.C / n, fam.c1
            return PowerSum(
                ((a * a, 2.0), (2.0 * a * c1, 2.0 - n), (c1 * c1, 2.0 - 2.0 * n))
            )
        if isinstance(fam, TimeSymmetric):
            return PowerSum(((0.0, 0.0),))
        return None

    def h_T(self, s, order: int = 0):
        if self.excess is not None:
            return self.base.h(s, order) + self.excess(s, order)
        if order == 0:
            return self.base.h(s) + s**2 * self.bt(s) ** 2
        if order == 1:
            b, bp = self.bt(s), self.bt_prime(s)
            return self.base.h(s, 1) + 2.0 * s * b * (b + s * bp)
        raise ValueError("CustomBT graphs expose h_T derivatives up to order 1")

    # -- domain ------------------------------------------------------------

    @cached_property
    def r_T(self) -> float:
        """Largest zero of h_T (inner boundary of the graph), 0 if none."""
        hi = max(4.0 * _largest_zero(self.base), 32.0)
        zs = _zeros_of(lambda s: self.h_T(s), 1e-4, hi, 4096)
        return zs[-1] if zs else 0.0

    @property
    def domain(self) -> tuple[float, float]:
        return (self.r_T, math.inf)

    def _require_in_domain(self, s: float) -> None:
        if not (self.r_T < s):
            raise OutsideDomain(f"s={s} not in graph domain ({self.r_T}, oo)")

    # -- pointwise data ----------------------------------------------------

    def data(self, s: float) -> GraphData:
        self._require_in_domain(s)
        h, h1, _ = self.base.terms.derivatives(s, 3)
        h_t = self.h_T(s)
        h_t1 = self.h_T(s, 1)
        b = self.bt(s)
        if abs(b) > BT_LIMIT_BAND:
            a = (h_t1 - h1) / (2.0 * s * h_t * b)
        else:
            # removable singularity of the quotient at b_T -> 0
            a = (b + s * self.bt_prime(s)) / h_t
        if h == 0.0:
            t_prime = math.nan
        else:
            t_prime = s * b / (h * math.sqrt(h_t))
        return GraphData(h_T=h_t, h_T_prime=h_t1, b_T=b, a_T=a, T_prime=t_prime)


def _largest_zero(profile: Profile) -> float:
    zs = find_zeros(profile, 1e-4, 100.0, 4096)
    return zs.r_H


def _zeros_of(f, lo: float, hi: float, grid: int) -> list[float]:
    """Sign-change zeros of a scalar callable, plus refined touching minima."""
    rs = np.linspace(lo, hi, grid)
    vals = np.array([f(float(r)) for r in rs])
    out: list[float] = []
    for i in range(grid - 1):
        if vals[i] == 0.0:
            out.append(float(rs[i]))
        elif vals[i] * vals[i + 1] < 0.0:
            out.append(brentq(f, float(rs[i]), float(rs[i + 1]), xtol=1e-14))
    for i in range(1, grid - 1):
        if vals[i - 1] * vals[i + 1] <= 0.0:
            continue
        sgn = math.copysign(1.0, vals[i])
        if sgn * vals[i] < sgn * vals[i - 1] and sgn * vals[i] < sgn * vals[i + 1]:
            res = minimize_scalar(
                lambda x: sgn * f(x),
                bracket=(float(rs[i - 1]), float(rs[i]), float(rs[i + 1])),
            )
            if abs(res.fun) <= 1e-10 * max(1.0, float(np.max(np.abs(vals)))):
                out.append(float(res.x))
    return sorted(out)


# -- module-level operations ------------------------------------------------


def graph_data(graph: GraphSlice, s: float) -> GraphData:
    """(h_T, h_T', b_T, a_T, T') at radius s.

    T' is reported as NaN would be meaningless at a horizon: requesting it
    within the root band of h raises instead (continue through the Kruskal
    chart there).
    """
    d = graph.data(s)
    if math.isnan(d.T_prime) or abs(graph.base.h(s)) < 1e-13 * max(1.0, abs(d.h_T)):
        raise HorizonChart(f"T' undefined at h({s}) ~ 0; use the Kruskal extension")
    return d


def height_function(
    graph: GraphSlice, s0: float, s1: float, tol: float = 1e-10
) -> float:
    """T(s1) - T(s0) by adaptive quadrature of T'.

    Requires h > 0 on the whole interval (no horizon crossing).
    """
    graph._require_in_domain(min(s0, s1))
    lo, hi = min(s0, s1), max(s0, s1)
    if lo < hi:
        zs = find_zeros(graph.base, lo, hi, 64)
        if len(zs) or graph.base.h(lo) <= 0 or graph.base.h(hi) <= 0:
            raise HorizonInInterval(f"h vanishes on [{lo}, {hi}]")

    def t_prime(s: float) -> float:
        return graph.data(s).T_prime

    val, _ = quad(t_prime, s0, s1, epsabs=tol, epsrel=tol, limit=200)
    return val


def momentum_residual(graph: GraphSlice, s: float) -> float:
    """(2/s)(h_T a_T - b_T - s b_T'): the radial momentum density.

    Vanishes identically for every warped-product graph; the returned value
    exercises the quotient path for a_T and is pure roundoff.
    """
    d = graph.data(s)
    return (2.0 / s) * (d.h_T * d.a_T - d.b_T - s * graph.bt_prime(s))


def energy_density(graph: GraphSlice, s: float) -> tuple[float, float]:
    """(mu_T, R_0/2): graph energy density and its time-symmetric value.

    mu_T comes from the Hamiltonian constraint
    2 mu = R^T - |K^T|^2 + (tr K^T)^2; the two entries agree for every graph.
    """
    d = graph.data(s)
    n = graph.base.n
    h_t2 = (
        graph.base.h(s, 2) + graph.excess(s, 2)
        if graph.excess is not None
        else _fd_second_excess(graph, s) + graph.base.h(s, 2)
    )
    r_t = slice_curvature((d.h_T, d.h_T_prime, h_t2), graph.fibre, s, n).scalar
    tr_k = d.h_T * d.a_T + (n - 1) * d.b_T
    norm_k2 = d.h_T**2 * d.a_T**2 + (n - 1) * d.b_T**2
    mu_t = 0.5 * (r_t - norm_k2 + tr_k**2)

    h, h1, h2 = graph.base.terms.derivatives(s, 3)
    half_r0 = 0.5 * slice_curvature((h, h1, h2), graph.fibre, s, n).scalar
    return mu_t, half_r0


def _fd_second_excess(graph: GraphSlice, s: float) -> float:
    def x1(r: float) -> float:
        b = graph.bt(r)
        return 2.0 * r * b * (b + r * graph.bt_prime(r))

    d = 1e-5 * max(1.0, s)
    return (x1(s + d) - x1(s - d)) / (2.0 * d)


@dataclass(frozen=True)
class ExtrinsicInvariants:
    tr: float
    norm2: float
    deform_ss: float      # ds^2-coefficient of tr K^T K^T - (K^T)^2
    deform_fibre: float   # its s^2 g_N coefficient


def extrinsic_invariants(graph: GraphSlice, s: float) -> ExtrinsicInvariants:
    """Trace, norm and deformation-tensor coefficients of K^T."""
    d = graph.data(s)
    n = graph.base.n
    diff1 = d.h_T_prime - graph.base.h(s, 1)
    return ExtrinsicInvariants(
        tr=d.h_T * d.a_T + (n - 1) * d.b_T,
        norm2=d.h_T**2 * d.a_T**2 + (n - 1) * d.b_T**2,
        deform_ss=(n - 1) * diff1 / (2.0 * s * d.h_T),
        deform_fibre=diff1 / (2.0 * s) + (n - 2) * (d.h_T - graph.base.h(s)) / s**2,
    )


def bt_coefficient(graph: GraphSlice, s: float) -> float:
    """Q[h_T - h](s): the fibre coefficient of the obstruction tensor B^T.

    Zero exactly for hyperboloids (pure s^2 mode) and c1 n^2 s^-2n for the
    constant-trace family.
    """
    graph._require_in_domain(s)
    n = graph.base.n
    if graph.excess is not None:
        return float(odi_residual_power_sum(graph.excess, s, n))
    x0 = s**2 * graph.bt(s) ** 2
    fam = graph.family
    b, bp = graph.bt(s), graph.bt_prime(s)
    x1 = 2.0 * s * b * (b + s * bp)
    if isinstance(fam, CustomBT) and fam.bt_second is not None:
        bpp = fam.bt_second(s) * graph.sign
        x2 = 2.0 * b * b + 8.0 * s * b * bp + 2.0 * s**2 * (bp * bp + b * bpp)
    else:
        x2 = _fd_second_excess(graph, s)
    return 0.5 * x2 + (n - 3) * x1 / (2.0 * s) - (n - 2) * x0 / s**2


@dataclass(frozen=True)
class LeafGeometry:
    """Geometry of the leaf {s} x N inside the graph.

    theta_plus/theta_minus are the null expansions H +- P and ``stcmc`` the
    squared spacetime mean curvature H^2 - P^2 = theta_+ theta_-.
    """

    H: float
    P: float
    theta_plus: float
    theta_minus: float
    stcmc: float
    classification: str  # untrapped | generalized-horizon | trapped


#: |H^2 - P^2| below this is labelled a generalized horizon.
LEAF_SIGN_TOL = 1e-10


def leaf_geometry(graph: GraphSlice, s: float) -> LeafGeometry:
    """Mean curvature, expansions and trapping class of the leaf {s} x N.

    H = (n-1) sqrt(h_T)/s and P = (n-1) b_T give
    H^2 - P^2 = (n-1)^2 h/s^2, independent of the graph family; the
    finite-difference second-fundamental-form oracle in the test suite pins
    this (n-1)^2 normalization.
    """
    d = graph.data(s)
    n = graph.base.n
    big_h = (n - 1) * math.sqrt(d.h_T) / s
    big_p = (n - 1) * d.b_T
    stcmc = big_h**2 - big_p**2
    if stcmc > LEAF_SIGN_TOL:
        cls = "untrapped"
    elif stcmc < -LEAF_SIGN_TOL:
        cls = "trapped"
    else:
        cls = "generalized-horizon"
    return LeafGeometry(
        H=big_h,
        P=big_p,
        theta_plus=big_h + big_p,
        theta_minus=big_h - big_p,
        stcmc=stcmc,
        classification=cls,
    )


def c0_threshold(
    profile: Profile,
    c_max: float = 1e6,
    tol: float = 1e-9,
    grid: int = 2048,
    s_window: tuple[float, float] | None = None,
) -> float:
    """Supremum of C >= 0 for which h + C s^2 keeps a positive-slope zero.

    Each candidate C is tested by locating the largest zero of
    h_T(s) = h(s) + C s^2 (grid bracketing plus refined touching minima) and
    checking the slope there.  The boundary is bisected to relative ``tol``;
    returns ``inf`` when no C up to ``c_max`` fails.
    """
    zs = find_zeros(profile, 1e-4, 100.0, 4096)
    if len(zs) == 0:
        raise NoHorizon(f"{profile} has no zero")
    if s_window is None:
        s_window = (1e-3, max(10.0 * zs.r_H, 20.0))

    def valid(c: float) -> bool:
        f = lambda s: float(profile.h(s)) + c * s * s
        roots = _zeros_of(f, s_window[0], s_window[1], grid)
        if not roots:
            return False
        r_t = roots[-1]
        slope = float(profile.h(r_t, order=1)) + 2.0 * c * r_t
        return slope > 1e-10

    if not valid(0.0):
        return 0.0
    lo, hi = 0.0, 1.0
    while valid(hi):
        lo, hi = hi, 2.0 * hi
        if hi > c_max:
            return math.inf
    while hi - lo > tol * max(1.0, lo):
        mid = 0.5 * (lo + hi)
        if valid(mid):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
