"""Generalized double-null (Kruskal-type) charts across simple horizons.

At each nondegenerate zero r_l of h the chart potential Phi_l is the unique
strictly increasing solution of

    Phi_l / Phi_l' = C_l h,        C_l = 1/h'(r_l),   Phi_l'(r_l) = 1,

on (r_{l-1}, r_{l+1}).  Writing Phi_l = sigma * h * exp(R_l / C_l) with
sigma = sign(C_l) reduces the ODE to the regular quadrature

    R_l' = (1 - C_l h') / h,

whose integrand has a removable singularity at r_l (handled by an exact
Taylor expansion inside a small band).  The chart metric is
F_l (du dv + dv du) + rho^2 g_N with rho = Phi_l^{-1}(uv) and
F_l = 2 C_l / Phi_l'.

Warped-product graphs with h_T(r_l) > 0 continue smoothly across the horizon:
with W = -1 / (h_T (1 + sqrt(1 - h/h_T))) (a globally regular integrand) and
Wt its primitive from r_l, the continued curve is

    A(s) = Phi_l(s) exp(+Wt/(2 C_l)),    B(s) = exp(-Wt/(2 C_l)),

and (u, v) = (B, A) for graphs crossing with b_T(r_l) > 0, (A, B) otherwise,
so u v = Phi_l(s) holds identically and exactly one coordinate vanishes at
the horizon.
"""

from __future__ import annotations

import bisect
import math
from functools import lru_cache

import numpy as np
from scipy.integrate import quad

from .errors import (
    DegenerateZero,
    DomainTooSmall,
    OutOfRange,
    OutsideDomain,
    TimeSymmetricGraph,
    WrongPatch,
)
from .graphs import GraphSlice
from .profiles import TOL_SLOPE, Profile, ZeroStructure


class _CachedPrimitive:
    """Primitive of a smooth integrand, accumulated between cached anchors.

    Keeps a sorted list of (x, value) pairs; a query integrates from the
    nearest anchor only, so dense repeated evaluation (root finding, FD
    oracles) stays cheap without losing quadrature accuracy.
    """

    def __init__(self, deriv, x0: float, value0: float, tol: float):
        self._deriv = deriv
        self._tol = tol
        self._xs = [x0]
        self._vals = [value0]

    def __call__(self, x: float) -> float:
        i = bisect.bisect_left(self._xs, x)
        if i < len(self._xs) and self._xs[i] == x:
            return self._vals[i]
        j = i - 1 if i > 0 else 0
        if i < len(self._xs) and (
            j < 0 or abs(self._xs[i] - x) < abs(x - self._xs[j])
        ):
            j = i
        inc, _ = quad(
            self._deriv, self._xs[j], x, epsabs=self._tol, epsrel=self._tol, limit=200
        )
        val = self._vals[j] + inc
        self._xs.insert(i, x)
        self._vals.insert(i, val)
        return val


class KruskalChart:
    """One double-null chart of the generalized horizon extension."""

    def __init__(
        self,
        profile: Profile,
        l: int,
        r_l: float,
        c_l: float,
        domain: tuple[float, float],
        quad_tol: float = 1e-12,
    ):
        self.profile = profile
        self.l = l
        self.r_l = r_l
        self.C_l = c_l
        self.sigma = 1.0 if c_l > 0 else -1.0
        self.domain = domain
        self.quad_tol = quad_tol
        self.series_band = 1e-3 * abs(c_l)
        # R_l(r_l) fixed by Phi'(r_l) = 1
        self._R = _CachedPrimitive(
            self.regularized_potential_deriv,
            r_l,
            c_l * math.log(abs(c_l)),
            quad_tol,
        )
        h4 = [float(profile.h(r_l, order=k)) for k in range(5)]
        a, b2, d6, e24 = h4[1], h4[2] / 2.0, h4[3] / 6.0, h4[4] / 24.0
        self._taylor = (
            -2.0 * b2 / a**2,
            -3.0 * d6 / a**2 + 2.0 * b2**2 / a**3,
            -4.0 * e24 / a**2 + 5.0 * b2 * d6 / a**3 - 2.0 * b2**3 / a**4,
        )

    # -- potential ----------------------------------------------------------

    def regularized_potential_deriv(self, r: float) -> float:
        """R_l' = (1 - C_l h')/h, Taylor-expanded inside the horizon band."""
        x = r - self.r_l
        if abs(x) < self.series_band:
            q0, q1, q2 = self._taylor
            return q0 + q1 * x + q2 * x * x
        h, h1, _ = self.profile.terms.derivatives(r, 3)
        return (1.0 - self.C_l * h1) / h

    def regularized_potential(self, r: float) -> float:
        """R_l(r), normalized so that Phi_l'(r_l) = 1."""
        self._require_in_domain(r)
        return self._R(r)

    def phi(self, r: float) -> float:
        """Phi_l(r) = sigma h exp(R_l/C_l): strictly increasing, Phi(r_l)=0."""
        return self.sigma * float(self.profile.h(r)) * math.exp(
            self.regularized_potential(r) / self.C_l
        )

    def phi_prime(self, r: float) -> float:
        h, h1, _ = self.profile.terms.derivatives(r, 3)
        rp = self.regularized_potential_deriv(r)
        return (
            self.sigma
            * (h1 + h * rp / self.C_l)
            * math.exp(self.regularized_potential(r) / self.C_l)
        )

    def conformal_factor(self, r: float) -> float:
        """F_l = 2 C_l / Phi_l', smooth and nonvanishing across r_l."""
        return 2.0 * self.C_l / self.phi_prime(r)

    # -- inversion ----------------------------------------------------------

    def radius_from_product(self, w: float, x0: float | None = None) -> float:
        """rho with Phi_l(rho) = w (safeguarded Newton, 1e-12 relative)."""
        if w == 0.0:
            return self.r_l
        lo, hi = self._bracket(w)
        x = x0 if x0 is not None and lo < x0 < hi else 0.5 * (lo + hi)
        for _ in range(100):
            fx = self.phi(x) - w
            if fx == 0.0:
                return x
            if fx > 0.0:
                hi = x
            else:
                lo = x
            step = fx / self.phi_prime(x)
            x_new = x - step
            if not (lo < x_new < hi):
                x_new = 0.5 * (lo + hi)
            if abs(x_new - x) <= 1e-12 * max(1.0, abs(x_new)):
                return x_new
            x = x_new
        return x

    def _bracket(self, w: float) -> tuple[float, float]:
        lo_dom, hi_dom = self.domain
        step = max(abs(self.C_l) * 0.1, 1e-3 * max(1.0, self.r_l))
        if w > 0.0:
            lo = self.r_l
            hi = self.r_l + step
            while True:
                hi = min(hi, hi_dom - 1e-12 * max(1.0, abs(hi_dom)))
                if self.phi(hi) >= w:
                    return lo, hi
                if hi >= hi_dom - 1e-9 * max(1.0, abs(hi_dom)):
                    raise OutOfRange(f"u*v={w} above the chart potential range")
                lo, hi = hi, self.r_l + 2.0 * (hi - self.r_l)
        lo = self.r_l - step
        hi = self.r_l
        floor = (
            lo_dom + 1e-12 * max(1.0, lo_dom)
            if lo_dom > 0
            else 1e-9 * max(1.0, self.r_l)
        )
        while True:
            lo = max(lo, floor)
            if self.phi(lo) <= w:
                return lo, hi
            if lo <= floor * (1.0 + 1e-9):
                raise OutOfRange(f"u*v={w} below the chart potential range")
            hi, lo = lo, self.r_l - 2.0 * (self.r_l - lo)

    def _require_in_domain(self, r: float) -> None:
        lo, hi = self.domain
        if not (lo < r < hi):
            raise OutOfRange(f"r={r} outside chart domain ({lo}, {hi})")

    def sample_table(self, count: int = 200, span: tuple[float, float] | None = None):
        """(r, Phi, F, R) rows for export/plotting."""
        if span is None:
            lo, hi = self.domain
            lo = max(lo, 0.05 * self.r_l)
            hi = min(hi, 3.0 * self.r_l)
            span = (lo + 0.02 * (hi - lo), hi - 0.02 * (hi - lo))
        rs = np.linspace(span[0], span[1], count)
        return [
            (
                float(r),
                self.phi(float(r)),
                self.conformal_factor(float(r)),
                self.regularized_potential(float(r)),
            )
            for r in rs
        ]


def build_chart(
    profile: Profile, zeros: ZeroStructure, l: int, quad_tol: float = 1e-12
) -> KruskalChart:
    """Chart at the l-th zero (0-based index into ``zeros``)."""
    radii = zeros.radii
    if not (0 <= l < len(radii)):
        raise IndexError(f"horizon index {l} out of range")
    if not zeros.nondegenerate[l]:
        raise DegenerateZero(
            f"zero at r={radii[l]:.12g} is degenerate (|h'| <= {TOL_SLOPE})"
        )
    r_l = radii[l]
    c_l = 1.0 / float(profile.h(r_l, order=1))
    lo = radii[l - 1] if l > 0 else 0.0
    hi = radii[l + 1] if l + 1 < len(radii) else math.inf
    if hi - lo < 8.0 * 1e-3 * abs(c_l):
        raise DomainTooSmall(f"chart domain ({lo}, {hi}) too small for r_l={r_l}")
    return KruskalChart(profile, l, r_l, c_l, (lo, hi), quad_tol)


def to_kruskal(chart: KruskalChart, t: float, r: float) -> tuple[float, float]:
    """(u, v) of a static-patch point: u v = Phi(r), v/u = exp(t/C_l)."""
    p = chart.phi(r)
    if p <= 0.0:
        raise WrongPatch(f"Phi({r}) = {p} <= 0: point is not in the u,v > 0 patch")
    root = math.sqrt(p)
    return root * math.exp(-t / (2.0 * chart.C_l)), root * math.exp(
        t / (2.0 * chart.C_l)
    )


def from_kruskal(chart: KruskalChart, u: float, v: float) -> tuple[float, float]:
    """(t, r) from double-null coordinates.

    On the horizon locus u v = 0 the time coordinate is undefined and comes
    back as NaN with r = r_l.
    """
    w = u * v
    if w == 0.0:
        return math.nan, chart.r_l
    r = chart.radius_from_product(w)
    ratio = v / u
    t = chart.C_l * math.log(ratio) if ratio > 0.0 else math.nan
    return t, r


class GraphExtension:
    """Continuation (u(s), v(s)) of a graph across one horizon."""

    def __init__(self, graph: GraphSlice, chart: KruskalChart):
        b_horizon = float(graph.bt(chart.r_l))
        if abs(b_horizon) < 1e-10:
            raise TimeSymmetricGraph(
                f"b_T({chart.r_l:.6g}) ~ 0: graph does not cross the horizon"
            )
        self.graph = graph
        self.chart = chart
        self.crossing_sign = 1.0 if b_horizon > 0 else -1.0
        self._Wt = _CachedPrimitive(self._w, chart.r_l, 0.0, chart.quad_tol)

    def _w(self, s: float) -> float:
        h = float(self.graph.base.h(s))
        h_t = float(self.graph.h_T(s))
        return -1.0 / (h_t * (1.0 + math.sqrt(1.0 - h / h_t)))

    def uv(self, s: float) -> tuple[float, float]:
        wt = self._Wt(s)
        a = self.chart.phi(s) * math.exp(wt / (2.0 * self.chart.C_l))
        b = math.exp(-wt / (2.0 * self.chart.C_l))
        return (b, a) if self.crossing_sign > 0 else (a, b)


@lru_cache(maxsize=64)
def _extension(graph: GraphSlice, chart: KruskalChart) -> GraphExtension:
    return GraphExtension(graph, chart)


def extend_graph(graph: GraphSlice, chart: KruskalChart, s: float) -> tuple[float, float]:
    """(u(s), v(s)) of the continued graph; u v = Phi_l(s) identically."""
    chart._require_in_domain(s)
    if not (s > graph.r_T):
        raise OutsideDomain(f"s={s} below the graph inner boundary r_T={graph.r_T}")
    return _extension(graph, chart).uv(s)
