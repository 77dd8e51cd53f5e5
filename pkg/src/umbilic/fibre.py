"""Compact fibre (N, g_N) abstracted to its Ricci eigenvalue data.

Every curvature formula downstream consumes Ric_N(X, X) for unit eigenvectors
X only, so the fibre is represented by the (constant) list of Ricci
eigenvalues plus the scalar curvature.  Position-dependent eigenvalues are out
of scope; anisotropic homogeneous fibres are supported through the list.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DimensionTooSmall


@dataclass(frozen=True)
class Fibre:
    """Ricci data of the (n-1)-dimensional fibre.

    ``alpha`` is min(eigenvalues)/(n-2), the constant entering the radial
    form of the null energy condition.
    """

    dim: int                                  # n - 1
    ricci_eigenvalues: tuple[float, ...]      # sorted ascending
    alpha: float
    scalar: float

    @property
    def n(self) -> int:
        return self.dim + 1


def _build(n: int, eigenvalues, scalar: float) -> Fibre:
    if n < 3:
        raise DimensionTooSmall(f"spatial dimension n={n} < 3")
    eigs = tuple(sorted(float(e) for e in eigenvalues))
    if not eigs:
        raise ValueError("fibre needs at least one Ricci eigenvalue")
    return Fibre(
        dim=n - 1,
        ricci_eigenvalues=eigs,
        alpha=eigs[0] / (n - 2),
        scalar=float(scalar),
    )


def make_sphere(n: int) -> Fibre:
    """Round unit sphere S^(n-1): all eigenvalues n-2, alpha 1."""
    if n < 3:
        raise DimensionTooSmall(f"spatial dimension n={n} < 3")
    return _build(n, [float(n - 2)], scalar=float((n - 1) * (n - 2)))


def make_einstein(n: int, kappa: float) -> Fibre:
    """Einstein fibre Ric = kappa * g_N (single eigenvalue kappa)."""
    return _build(n, [kappa], scalar=(n - 1) * kappa)


def make_from_eigenvalues(n: int, eigenvalues, scalar: float | None = None) -> Fibre:
    """Anisotropic homogeneous fibre from an explicit eigenvalue list.

    If the list carries one entry per fibre dimension, the scalar curvature
    defaults to the eigenvalue sum; otherwise it must be supplied.
    """
    eigs = [float(e) for e in eigenvalues]
    if scalar is None:
        if len(eigs) != n - 1:
            raise ValueError(
                "scalar curvature required unless eigenvalues are given "
                "with full multiplicity (one per fibre dimension)"
            )
        scalar = sum(eigs)
    return _build(n, eigs, scalar)
