"""Two-mode Gaussian states: covariance matrices, twin-beam construction, rotations.

Conventions used throughout the package:

* quadrature ordering is ``(X1, P1, X2, P2)``,
* the vacuum has variance 1/2 per quadrature, so a twin-beam state with
  squeezing ``r`` has ``a = b = cosh(2r)/2`` and ``c1 = -c2 = sinh(2r)/2``,
* ``|min eig(cov + (i/2) Omega)| >= 0`` with ``Omega = omega (+) omega``
  is the physicality (uncertainty) check, while ``omega (+) omega^T`` is
  the partial-transpose form used by the separability module.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from math import cosh, sinh

import numpy as np

from .numerics import min_eigenvalue_hermitian4

_OMEGA2 = np.array([[0.0, 1.0], [-1.0, 0.0]])

DEFAULT_PHYSICALITY_TOL = 1e-9


class SymplecticForm(Enum):
    """Which 4x4 symplectic form to attach to a covariance matrix."""

    PHYSICALITY = "physicality"   # omega (+) omega
    PPT = "ppt"                   # omega (+) omega^T

    def matrix(self):
        out = np.zeros((4, 4))
        out[:2, :2] = _OMEGA2
        out[2:, 2:] = _OMEGA2 if self is SymplecticForm.PHYSICALITY else _OMEGA2.T
        return out


def symplectic_form(kind=SymplecticForm.PHYSICALITY):
    """Return the 4x4 form matrix for ``kind`` (enum or its string value)."""
    if isinstance(kind, str):
        kind = SymplecticForm(kind)
    return kind.matrix()


@dataclass(frozen=True)
class CanonicalCovariance:
    """Canonical (a, b, c1, c2) parametrisation of a two-mode covariance.

    Assembles to block form [[A, C], [C, B]] with A = diag(a, a),
    B = diag(b, b) and C = diag(c1, c2).
    """

    a: float
    b: float
    c1: float
    c2: float

    def __post_init__(self):
        if not (self.a > 0 and self.b > 0):
            raise ValueError(f"diagonal blocks need a, b > 0, got a={self.a}, b={self.b}")

    def matrix(self):
        cov = np.zeros((4, 4))
        cov[0, 0] = cov[1, 1] = self.a
        cov[2, 2] = cov[3, 3] = self.b
        cov[0, 2] = cov[2, 0] = self.c1
        cov[1, 3] = cov[3, 1] = self.c2
        return cov


@dataclass
class TwoModeGaussianState:
    """Mean vector and 4x4 covariance matrix in (X1, P1, X2, P2) ordering."""

    mean: np.ndarray
    cov: np.ndarray
    symmetry_tol: float = field(default=1e-12, repr=False)

    def __post_init__(self):
        self.mean = np.asarray(self.mean, dtype=float).reshape(4)
        self.cov = np.asarray(self.cov, dtype=float)
        if self.cov.shape != (4, 4):
            raise ValueError(f"covariance must be 4x4, got {self.cov.shape}")
        dev = np.max(np.abs(self.cov - self.cov.T))
        if dev > self.symmetry_tol:
            raise ValueError(f"covariance not symmetric (max deviation {dev:.3e})")


def physicality_margin(state):
    """Smallest eigenvalue of cov + (i/2)(omega (+) omega).

    Non-negative (up to tolerance) exactly when the state satisfies the
    uncertainty relation; pure states sit on the boundary.
    """
    form = symplectic_form(SymplecticForm.PHYSICALITY)
    return min_eigenvalue_hermitian4(state.cov + 0.5j * form)


def is_physical(state, tol=DEFAULT_PHYSICALITY_TOL):
    """True when the covariance matrix satisfies the uncertainty relation."""
    return physicality_margin(state) >= -tol


def make_twb(r):
    """Canonical parameters of a twin-beam (two-mode squeezed vacuum) state.

    a = b = cosh(2r)/2, c1 = -c2 = sinh(2r)/2; entangled for every r > 0.
    """
    if r < 0:
        raise ValueError(f"squeezing parameter must be >= 0, got {r}")
    return CanonicalCovariance(a=0.5 * cosh(2.0 * r), b=0.5 * cosh(2.0 * r),
                               c1=0.5 * sinh(2.0 * r), c2=-0.5 * sinh(2.0 * r))


def assemble(canonical, physicality_tol=DEFAULT_PHYSICALITY_TOL):
    """Build the zero-mean Gaussian state for canonical parameters.

    Raises ValueError when the parameters violate the uncertainty relation.
    """
    state = TwoModeGaussianState(mean=np.zeros(4), cov=canonical.matrix())
    if not is_physical(state, tol=physicality_tol):
        raise ValueError(
            f"canonical parameters {canonical} are unphysical "
            f"(margin {physicality_margin(state):.3e})")
    return state


def rotation_matrix(angle):
    """Single-mode phase rotation R = [[cos, sin], [-sin, cos]]."""
    c, s = np.cos(angle), np.sin(angle)
    return np.array([[c, s], [-s, c]])


def rotate(state, angle):
    """Apply the same phase rotation to both modes.

    mean -> (R (+) R)^T mean and cov -> (R (+) R)^T cov (R (+) R).  This is
    a local symplectic operation, so uncertainty and partial-transpose
    spectra are unchanged.
    """
    r2 = rotation_matrix(angle)
    r4 = np.zeros((4, 4))
    r4[:2, :2] = r2
    r4[2:, 2:] = r2
    return TwoModeGaussianState(mean=r4.T @ state.mean,
                                cov=r4.T @ state.cov @ r4)
