"""Radial metric profiles h: (0, oo) -> R with exact derivatives.

Every built-in family (and every accepted custom profile) is a finite sum of
real powers of r,

    h(r) = sum_k c_k * r**p_k,

so derivatives of any order are available in closed form.  Tabulated or
interpolated profiles are rejected by construction: the downstream curvature
formulas are second-derivative heavy and finite-difference noise in h'' would
poison them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .errors import DegenerateZero, DimensionTooSmall, NonPositiveRadius

#: |h(r_l)| acceptance for a reported zero, relative to the local scale of h.
TOL_ROOT = 1e-12
#: |h'(r_l)| below this marks a zero as degenerate.
TOL_SLOPE = 1e-8


@dataclass(frozen=True)
class PowerSum:
    """Finite sum of real powers, ``sum(c * r**p for c, p in terms)``."""

    terms: tuple[tuple[float, float], ...]

    def __call__(self, r, order: int = 0):
        """Evaluate the ``order``-th derivative at r (scalar or ndarray)."""
        out = r * 0.0
        for c, p in self.terms:
            for j in range(order):
                c *= p - j
            if c != 0.0:
                out = out + c * r ** (p - order)
        return out

    def derivatives(self, r, count: int = 3) -> tuple:
        """First ``count`` derivative orders (0, 1, ..., count-1) at r."""
        return tuple(self(r, order=k) for k in range(count))

    def plus(self, other: "PowerSum") -> "PowerSum":
        return PowerSum(self.terms + other.terms)

    def minus_constant(self, alpha: float) -> "PowerSum":
        if alpha == 0.0:
            return self
        return PowerSum(self.terms + ((-alpha, 0.0),))


@dataclass(frozen=True)
class Profile:
    """A metric coefficient h with its family tag, parameters and dimension.

    ``n`` is the spatial dimension (the spacetime is (n+1)-dimensional,
    n >= 3).  ``terms`` is the exact power-sum representation of h.
    """

    family: str
    params: tuple[tuple[str, float], ...]
    n: int
    terms: PowerSum

    @property
    def param_map(self) -> dict:
        return dict(self.params)

    def h(self, r, order: int = 0):
        return self.terms(r, order=order)

    def minus_constant(self, alpha: float) -> PowerSum:
        """Power sum for h - alpha (used by the radial ODI)."""
        return self.terms.minus_constant(alpha)

    def __repr__(self) -> str:  # compact, parameter-revealing
        pars = ", ".join(f"{k}={v:g}" for k, v in self.params)
        return f"Profile({self.family}({pars}), n={self.n})"


def _check_dim(n: int) -> None:
    if n < 3:
        raise DimensionTooSmall(f"spatial dimension n={n} < 3")


def schwarzschild(m: float, n: int = 3) -> Profile:
    """h = 1 - 2m / r^(n-2), mass m > 0."""
    _check_dim(n)
    if m <= 0:
        raise ValueError("Schwarzschild mass must be positive")
    terms = PowerSum(((1.0, 0.0), (-2.0 * m, float(2 - n))))
    return Profile("schwarzschild", (("m", float(m)),), n, terms)


def reissner_nordstrom(m: float, q: float, n: int = 3) -> Profile:
    """h = 1 - 2m / r^(n-2) + q^2 / r^(2(n-2))."""
    _check_dim(n)
    terms = PowerSum(
        ((1.0, 0.0), (-2.0 * m, float(2 - n)), (q * q, float(2 * (2 - n))))
    )
    return Profile("reissner_nordstrom", (("m", float(m)), ("q", float(q))), n, terms)


def schwarzschild_de_sitter(m: float, lam: float, n: int = 3) -> Profile:
    """h = 1 - 2m / r^(n-2) - 2*Lambda/(n(n-1)) * r^2 with Lambda > 0."""
    _check_dim(n)
    if lam <= 0:
        raise ValueError("Schwarzschild-de Sitter requires Lambda > 0")
    c2 = -2.0 * lam / (n * (n - 1))
    terms = PowerSum(((1.0, 0.0), (-2.0 * m, float(2 - n)), (c2, 2.0)))
    return Profile(
        "schwarzschild_de_sitter", (("lam", float(lam)), ("m", float(m))), n, terms
    )


def schwarzschild_anti_de_sitter(m: float, lam: float, n: int = 3) -> Profile:
    """h = 1 - 2m / r^(n-2) - 2*Lambda/(n(n-1)) * r^2 with Lambda < 0."""
    _check_dim(n)
    if lam >= 0:
        raise ValueError("Schwarzschild-anti-de Sitter requires Lambda < 0")
    c2 = -2.0 * lam / (n * (n - 1))
    terms = PowerSum(((1.0, 0.0), (-2.0 * m, float(2 - n)), (c2, 2.0)))
    return Profile(
        "schwarzschild_anti_de_sitter", (("lam", float(lam)), ("m", float(m))), n, terms
    )


def quadratic_conformal(c: float, n: int = 3) -> Profile:
    """h = (1 - C r)^2; for C != 0 every zero is degenerate."""
    _check_dim(n)
    terms = PowerSum(((1.0, 0.0), (-2.0 * c, 1.0), (c * c, 2.0)))
    return Profile("quadratic_conformal", (("c", float(c)),), n, terms)


def minkowski_like(n: int = 3) -> Profile:
    """h identically 1."""
    _check_dim(n)
    return Profile("minkowski_like", (), n, PowerSum(((1.0, 0.0),)))


def custom(terms, n: int = 3) -> Profile:
    """Profile from explicit (coefficient, exponent) pairs."""
    _check_dim(n)
    clean = tuple((float(c), float(p)) for c, p in terms)
    if not clean:
        raise ValueError("custom profile needs at least one term")
    return Profile("custom", (), n, PowerSum(clean))


def eval(profile: Profile, r):
    """(h, h', h'') at r > 0, all in closed form.

    Accepts scalars or ndarrays; every entry must be positive.
    """
    if np.any(np.asarray(r) <= 0.0):
        raise NonPositiveRadius(f"radius must be positive, got {r}")
    return profile.terms.derivatives(r, 3)


@dataclass(frozen=True)
class ZeroStructure:
    """Ordered zeros of h with slopes and degeneracy flags.

    ``r_H`` is the largest zero (0.0 when there is none).
    """

    zeros: tuple[tuple[float, float], ...]  # (radius, slope h'(radius))
    nondegenerate: tuple[bool, ...]
    r_H: float

    def __len__(self) -> int:
        return len(self.zeros)

    @property
    def radii(self) -> tuple[float, ...]:
        return tuple(z[0] for z in self.zeros)


def find_zeros(
    profile: Profile, r_min: float, r_max: float, grid: int = 512
) -> ZeroStructure:
    """Locate zeros of h on [r_min, r_max].

    Sign changes on the grid are refined with Brent's method.  Touching
    (even-order) zeros leave no sign change, so local minima of |h| are also
    refined and accepted when |h| falls below the root tolerance; those show
    up flagged as degenerate.  Zero pairs closer than the grid spacing can be
    missed; raise ``grid`` for profiles with tightly spaced horizons.
    """
    if not (0.0 < r_min < r_max):
        raise NonPositiveRadius(f"need 0 < r_min < r_max, got ({r_min}, {r_max})")
    if grid < 2:
        raise ValueError("grid must be at least 2")

    rs = np.linspace(r_min, r_max, grid)
    hs = profile.h(rs)
    scale = max(1.0, float(np.max(np.abs(hs))))
    roots: list[float] = []

    def _record(x: float) -> None:
        for seen in roots:
            if abs(seen - x) <= 1e-9 * max(1.0, abs(x)):
                return
        roots.append(x)

    f = lambda x: float(profile.h(x))
    for i in range(grid - 1):
        a, b = float(rs[i]), float(rs[i + 1])
        fa, fb = float(hs[i]), float(hs[i + 1])
        if fa == 0.0:
            _record(a)
        elif fa * fb < 0.0:
            _record(brentq(f, a, b, xtol=1e-15, rtol=4e-16))
    if float(hs[-1]) == 0.0:
        _record(float(rs[-1]))

    # touching zeros: |h| dips to ~0 without a sign change
    for i in range(1, grid - 1):
        if hs[i - 1] * hs[i + 1] <= 0.0:
            continue  # covered by the bracketing pass
        sgn = math.copysign(1.0, hs[i])
        if sgn * hs[i] < sgn * hs[i - 1] and sgn * hs[i] < sgn * hs[i + 1]:
            res = minimize_scalar(
                lambda x: sgn * float(profile.h(x)),
                bracket=(float(rs[i - 1]), float(rs[i]), float(rs[i + 1])),
                method="brent",
            )
            if abs(res.fun) <= 1e-10 * scale:
                _record(float(res.x))

    roots.sort()
    slopes = tuple(float(profile.h(x, order=1)) for x in roots)
    nondeg = tuple(abs(sl) > TOL_SLOPE for sl in slopes)
    zeros = tuple(zip(roots, slopes))
    r_h = roots[-1] if roots else 0.0
    return ZeroStructure(zeros=zeros, nondegenerate=nondeg, r_H=r_h)


def surface_gravity_constants(zeros: ZeroStructure) -> list[float]:
    """C_l = 1/h'(r_l) per zero; refuses degenerate zeros."""
    out = []
    for (r_l, slope), okay in zip(zeros.zeros, zeros.nondegenerate):
        if not okay:
            raise DegenerateZero(
                f"zero at r={r_l:.12g} has |h'|={abs(slope):.3g} <= {TOL_SLOPE}"
            )
        out.append(1.0 / slope)
    return out
