"""Separability of two-mode Gaussian states under thermal channels.

For Gaussian states positivity of the partial transpose is necessary and
sufficient for separability (there is no bound entanglement in this class),
so everything here reduces to sign questions:

* spectral route: smallest eigenvalue of ``cov + (i/2)(omega (+) omega^T)``;
* closed-form route: the smallest partial-transpose symplectic eigenvalue of
  the damped-plus-diffused canonical covariance, returned as a margin
  ``2 nu - 1`` that is negative exactly for entangled states;
* twin-beam specialisation: ``S(tau) = e^{-2r} e^{-Gamma} + DeltaGamma - 1``
  with short-time, high-temperature and Markovian variants.

The first time S crosses zero from below is the separability time; later
sign changes are tracked as revival intervals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from . import reservoir
from .numerics import (NoRootInBracketError, find_root_bracketed,
                       integrate_adaptive, min_eigenvalue_hermitian4)
from .states import SymplecticForm, symplectic_form

BOUNDARY_TOL = 1e-8


class PptMethod(str, Enum):
    SPECTRAL = "spectral"
    CLOSED_FORM = "closed_form"


@dataclass(frozen=True)
class SeparabilityVerdict:
    separable: bool
    margin: float
    method: PptMethod
    boundary: bool = False


def ppt_min_eigenvalue(state):
    """Smallest eigenvalue of cov + (i/2)(omega (+) omega^T)."""
    form = symplectic_form(SymplecticForm.PPT)
    return min_eigenvalue_hermitian4(state.cov + 0.5j * form)


def ppt_spectral(state, tol=BOUNDARY_TOL):
    """Separability verdict from the partial-transpose spectral test."""
    margin = ppt_min_eigenvalue(state)
    return SeparabilityVerdict(separable=margin >= -tol, margin=margin,
                               method=PptMethod.SPECTRAL,
                               boundary=abs(margin) <= tol)


def ppt_closed_form(canonical, big_gamma, delta_gamma):
    """Closed-form separability margin for a damped canonical state.

    The state with canonical parameters (a, b, c1, c2) evolved through
    damping e^{-Gamma} plus isotropic diffusion DeltaGamma/2 stays in
    canonical form, so its smallest partial-transpose symplectic eigenvalue
    ``nu`` follows from the two invariants

        Delta~ = alpha^2 + beta^2 - 2 g1 g2,
        det    = (alpha beta - g1^2)(alpha beta - g2^2),

    with alpha = a e^{-Gamma} + DeltaGamma/2 (same for beta with b) and
    g_i = c_i e^{-Gamma}.  Returns ``2 nu - 1``: >= 0 iff separable, and for
    twin-beam input identically equal to S = e^{-2r} e^{-Gamma} +
    DeltaGamma - 1.  ``nu^2`` is computed as ``2 det / (Delta~ + sqrt)`` to
    avoid cancellation near the boundary.
    """
    if big_gamma < 0 or delta_gamma < 0:
        raise ValueError("big_gamma and delta_gamma must be >= 0")
    damp = math.exp(-big_gamma)
    alpha = canonical.a * damp + 0.5 * delta_gamma
    beta = canonical.b * damp + 0.5 * delta_gamma
    g1 = canonical.c1 * damp
    g2 = canonical.c2 * damp
    delta_t = alpha * alpha + beta * beta - 2.0 * g1 * g2
    det = (alpha * beta - g1 * g1) * (alpha * beta - g2 * g2)
    # discriminant in factored form: delta_t^2 - 4 det written without the
    # catastrophic cancellation that occurs when the two eigenvalues are
    # nearly degenerate (e.g. weakly squeezed inputs)
    disc = ((alpha - beta) * (alpha + beta)) ** 2 \
        + 4.0 * (alpha * g1 - beta * g2) * (beta * g1 - alpha * g2)
    if disc < -1e-12 * max(delta_t * delta_t, 1.0):
        raise ValueError(f"negative discriminant {disc} for {canonical}")
    root = math.sqrt(max(disc, 0.0))
    if det <= 0.0:
        # damped physical states keep det > 0; tolerate rounding at zero
        return -1.0 if delta_t > root else 0.0
    nu_sq = 2.0 * det / (delta_t + root)
    return 2.0 * math.sqrt(nu_sq) - 1.0


def s_exact(r, big_gamma, delta_gamma):
    """Twin-beam separability function S = e^{-2r} e^{-Gamma} + DeltaGamma - 1."""
    if r < 0:
        raise ValueError("r must be >= 0")
    big_gamma = np.asarray(big_gamma, dtype=float)
    out = math.exp(-2.0 * r) * np.exp(-big_gamma) + delta_gamma - 1.0
    return float(out) if out.ndim == 0 else out


def s_short_time(spec, r, tau, mode="high_T"):
    """Short-time expansion S ~ e^{-2r}(1 - int gamma) + int delta - 1.

    Unlike :func:`s_high_T` the damping integral is kept, which makes the
    error of dropping it auditable: s_short_time - s_high_T =
    -e^{-2r} * int_0^tau gamma.  Intended for tau up to about one reservoir
    correlation time.
    """
    if tau < 0:
        raise ValueError("tau must be >= 0")
    if tau == 0.0:
        return math.exp(-2.0 * r) - 1.0
    gamma_int = integrate_adaptive(
        lambda s: reservoir.gamma_coefficient(spec, s), 0.0, tau,
        abs_tol=1e-13, rel_tol=1e-10, max_subdivisions=400).value
    if mode == "high_T":
        delta_int = spec.alpha2 * spec.theta * _high_T_s_brace(spec.x, tau)
    elif mode == "exact":
        fine = np.linspace(0.0, tau, max(int(tau / min(0.005, spec.x / 40.0)), 64))
        deltas = reservoir.delta_exact_profile(spec, fine)
        delta_int = float(np.trapezoid(deltas, fine))
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return math.exp(-2.0 * r) * (1.0 - gamma_int) + delta_int - 1.0


def _high_T_s_brace(x, tau):
    x2 = x * x
    return (x2 / (1.0 + x2)) * (
        tau
        - ((x2 - 1.0) / (x2 + 1.0)) * (1.0 - np.exp(-tau) * np.cos(tau / x))
        - (2.0 * x / (x2 + 1.0)) * np.exp(-tau) * np.sin(tau / x))


def s_high_T(spec, r, tau):
    """High-temperature twin-beam separability function.

    S(tau) = alpha^2 theta x^2/(1+x^2) { tau
             - (x^2-1)/(x^2+1) [1 - e^{-tau} cos(tau/x)]
             - 2x/(x^2+1) e^{-tau} sin(tau/x) } + e^{-2r} - 1.

    The brace equals int_0^tau delta_high_T(s) ds / (alpha^2 theta x^2/(1+x^2)),
    i.e. this drops the damping integral entirely (delta >> gamma at high
    temperature).
    """
    tau = np.asarray(tau, dtype=float)
    out = (spec.alpha2 * spec.theta * _high_T_s_brace(spec.x, tau)
           + math.exp(-2.0 * r) - 1.0)
    return float(out) if out.ndim == 0 else out


def s_markovian(spec, r, tau):
    """Markovian comparator S_M(tau) = (tau/2) alpha^2 x/(1+x^2) (1+2xtheta)
    + e^{-2r} - 1.

    Its slope equals gamma_M + delta_M(high T) identically.  Note this is
    the conventional high-temperature comparator, not the literal short-time
    expansion of the Markovian channel (those differ at relative order
    1/(2 x theta)); it is implemented exactly as stated.
    """
    tau = np.asarray(tau, dtype=float)
    slope = 0.5 * spec.alpha2 * spec.x / (1.0 + spec.x ** 2) \
        * (1.0 + 2.0 * spec.x * spec.theta)
    out = slope * tau + math.exp(-2.0 * r) - 1.0
    return float(out) if out.ndim == 0 else out


def markov_separability_time(spec, r):
    """Separability threshold of the Markovian channel.

    t_s = (1/gamma_M) log(1 + (1 - e^{-2r}) / (2N)); infinite at zero
    temperature, where the Markovian channel never separates a twin beam.
    """
    if r <= 0:
        raise ValueError("twin-beam squeezing r must be > 0")
    n_th = reservoir.thermal_occupation(spec)
    if n_th == 0.0:
        return math.inf
    g_m = reservoir.gamma_markov(spec)
    return math.log1p(-math.expm1(-2.0 * r) / (2.0 * n_th)) / g_m


@dataclass
class SeparabilityTrace:
    """Sampled S(tau) with zero crossings, revivals and local extrema.

    ``crossings`` holds (tau, direction) with direction +1 for a crossing
    from entangled (S < 0) to separable and -1 for the reverse;
    ``revivals`` lists maximal [start, end] intervals with S < 0 after the
    first up-crossing; ``extrema`` holds (tau, 'max'|'min') interior local
    extrema of the sampled curve.
    """

    taus: np.ndarray
    values: np.ndarray
    crossings: list = field(default_factory=list)
    revivals: list = field(default_factory=list)
    extrema: list = field(default_factory=list)

    @property
    def separability_time(self):
        for tau, direction in self.crossings:
            if direction > 0:
                return tau
        return None


def trace_and_analyze(s_func, tau_max, step, refine_tol=1e-12):
    """Sample S on [0, tau_max] and extract its sign structure.

    Zero crossings found on the grid are refined by bisection.  An empty
    crossing list simply means S kept its sign over the window.
    """
    if step <= 0 or tau_max <= 0 or step >= tau_max:
        raise ValueError("need 0 < step < tau_max")
    n = int(np.floor(tau_max / step + 1e-9)) + 1
    taus = step * np.arange(n)
    try:
        values = np.asarray(s_func(taus), dtype=float)
        if values.shape != taus.shape:
            raise TypeError
    except Exception:
        values = np.array([float(s_func(t)) for t in taus])

    crossings = []
    for i in range(n - 1):
        v0, v1 = values[i], values[i + 1]
        if v0 == 0.0:
            if i == 0 and v1 > 0:
                crossings.append((0.0, +1))
            continue
        if v0 * v1 < 0:
            root = find_root_bracketed(s_func, taus[i], taus[i + 1],
                                       tol=refine_tol)
            crossings.append((root, +1 if v1 > v0 else -1))

    revivals = []
    seen_up = False
    start = None
    for tau, direction in crossings:
        if direction > 0:
            if start is not None:
                revivals.append((start, tau))
                start = None
            seen_up = True
        elif seen_up:
            start = tau
    if start is not None:
        revivals.append((start, float(taus[-1])))

    extrema = []
    for i in range(1, n - 1):
        left, mid, right = values[i - 1], values[i], values[i + 1]
        if (mid > left and mid > right) or (mid < left and mid < right):
            denom = left - 2.0 * mid + right
            offset = 0.5 * step * (left - right) / denom if denom != 0 else 0.0
            extrema.append((float(taus[i] + offset),
                            "max" if mid > left else "min"))

    return SeparabilityTrace(taus=taus, values=values, crossings=crossings,
                             revivals=revivals, extrema=extrema)


def first_up_crossing(s_func, tau_max, step, refine_tol=1e-12):
    """Separability time of ``s_func`` within [0, tau_max], or None."""
    return trace_and_analyze(s_func, tau_max, step,
                             refine_tol=refine_tol).separability_time
