"""Numerical kernels: quadrature, bracketed root finding, small Hermitian eigenproblems.

Everything in here is a pure function of its inputs and safe to call from
multiple threads.  Quadrature is delegated to QUADPACK through
``scipy.integrate.quad``; results are wrapped so that a failed integration is
an explicit error carrying the best available estimate instead of a silent
warning.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.integrate import IntegrationWarning, quad


@dataclass(frozen=True)
class QuadratureResult:
    """Value of a definite integral together with an error estimate.

    ``error_estimate`` is an absolute bound reported by the integrator and
    ``evaluations`` counts integrand calls.
    """

    value: float
    error_estimate: float
    evaluations: int

    def __post_init__(self):
        if self.error_estimate < 0:
            raise ValueError("error_estimate must be >= 0")
        if self.evaluations < 1:
            raise ValueError("evaluations must be >= 1")


class QuadratureError(RuntimeError):
    """Integration did not converge; ``best`` holds the last estimate."""

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class NoRootInBracketError(ValueError):
    """The supplied bracket does not contain a sign change."""


def _run_quad(f, lo, hi, *, abs_tol, rel_tol, limit, **kwargs):
    """Call scipy.integrate.quad and convert failures to QuadratureError."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IntegrationWarning)
        out = quad(f, lo, hi, epsabs=abs_tol, epsrel=rel_tol, limit=limit,
                   full_output=True, **kwargs)
    value, abserr, info = out[0], out[1], out[2]
    neval = int(info.get("neval", 1)) if isinstance(info, dict) else 1
    result = QuadratureResult(float(value), float(abs(abserr)), max(neval, 1))
    if len(out) > 3:
        # quad appends an explanation message whenever ier != 0
        raise QuadratureError(str(out[3]), best=result)
    return result


def integrate_adaptive(f, lo, hi, abs_tol=1e-10, rel_tol=1e-8,
                       max_subdivisions=200):
    """Adaptive panel integration of ``f`` on the finite interval [lo, hi].

    Accuracy target is ``max(abs_tol, rel_tol * |integral|)``.  Raises
    :class:`QuadratureError` (carrying the best estimate) if the integrator
    cannot meet the tolerance within ``max_subdivisions`` panels.
    """
    if not (lo <= hi):
        raise ValueError(f"invalid interval [{lo}, {hi}]")
    if abs_tol <= 0 or rel_tol <= 0:
        raise ValueError("tolerances must be positive")
    if lo == hi:
        return QuadratureResult(0.0, 0.0, 1)
    return _run_quad(f, lo, hi, abs_tol=abs_tol, rel_tol=rel_tol,
                     limit=max_subdivisions)


def integrate_semi_infinite(f, lo=0.0, decay_scale=1.0, abs_tol=1e-10,
                            rel_tol=1e-8, max_subdivisions=200):
    """Integrate ``f`` on [lo, inf).

    Delegates to the QAGI transformation.  If that fails (slow algebraic
    decay can defeat the variable transform) the integral is re-tried as a
    windowed sum with window length proportional to ``decay_scale``,
    stopping once a window contributes less than ``abs_tol``.
    """
    if decay_scale <= 0:
        raise ValueError("decay_scale must be positive")
    try:
        return _run_quad(f, lo, np.inf, abs_tol=abs_tol, rel_tol=rel_tol,
                         limit=max_subdivisions)
    except QuadratureError as first_failure:
        window = 10.0 * decay_scale
        total = 0.0
        err = 0.0
        neval = first_failure.best.evaluations if first_failure.best else 1
        a = lo
        for _ in range(200):
            piece = integrate_adaptive(f, a, a + window, abs_tol=abs_tol,
                                       rel_tol=rel_tol,
                                       max_subdivisions=max_subdivisions)
            total += piece.value
            err += piece.error_estimate
            neval += piece.evaluations
            a += window
            if abs(piece.value) < abs_tol:
                return QuadratureResult(total, err + abs_tol, neval)
        raise QuadratureError(
            f"tail of semi-infinite integral not below {abs_tol} after "
            f"200 windows of width {window}",
            best=QuadratureResult(total, err, neval)) from first_failure


def integrate_oscillatory(f, lo, hi, omega, kind, abs_tol=1e-10,
                          rel_tol=1e-8, max_subdivisions=800,
                          max_cycles=300):
    """Integrate ``f(w) * cos(omega w)`` or ``f(w) * sin(omega w)``.

    ``hi=None`` selects the semi-infinite Fourier algorithm (QAWF), which
    sums cycle contributions with series acceleration and therefore handles
    slowly decaying envelopes that plain truncation cannot.  Finite ``hi``
    uses the oscillatory Clenshaw-Curtis rule (QAWO).
    """
    if kind not in ("cos", "sin"):
        raise ValueError(f"kind must be 'cos' or 'sin', got {kind!r}")
    if omega < 0:
        raise ValueError("oscillation frequency must be >= 0")
    if omega == 0.0:
        if kind == "sin":
            return QuadratureResult(0.0, 0.0, 1)
        if hi is None:
            return integrate_semi_infinite(f, lo, abs_tol=abs_tol,
                                           rel_tol=rel_tol)
        return integrate_adaptive(f, lo, hi, abs_tol=abs_tol, rel_tol=rel_tol)
    if hi is None:
        return _run_quad(f, lo, np.inf, abs_tol=abs_tol, rel_tol=rel_tol,
                         limit=max_subdivisions, weight=kind, wvar=omega,
                         limlst=max_cycles)
    return _run_quad(f, lo, hi, abs_tol=abs_tol, rel_tol=rel_tol,
                     limit=max_subdivisions, weight=kind, wvar=omega)


def find_root_bracketed(f, lo, hi, tol=1e-12, max_iter=200):
    """Bisection root of a continuous ``f`` on [lo, hi].

    Requires f(lo) and f(hi) to differ in sign (a zero endpoint counts).
    Bisection never leaves the bracket, so oscillatory functions are safe;
    the returned point is the bracket midpoint once the width is <= tol.
    """
    if not (lo <= hi):
        raise ValueError(f"invalid bracket [{lo}, {hi}]")
    flo = f(lo)
    if flo == 0.0:
        return float(lo)
    fhi = f(hi)
    if fhi == 0.0:
        return float(hi)
    if flo * fhi > 0:
        raise NoRootInBracketError(
            f"no sign change on [{lo}, {hi}]: f(lo)={flo}, f(hi)={fhi}")
    for _ in range(max_iter):
        if (hi - lo) <= tol:
            break
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:  # bracket at floating point resolution
            break
        fmid = f(mid)
        if fmid == 0.0:
            return float(mid)
        if flo * fmid < 0:
            hi = mid
        else:
            lo, flo = mid, fmid
    return float(0.5 * (lo + hi))


def min_eigenvalue_hermitian4(m, hermiticity_tol=1e-12):
    """Smallest eigenvalue of a 4x4 Hermitian matrix.

    The input is validated entrywise against ``m[i, j] == conj(m[j, i])``
    within ``hermiticity_tol``; anything worse is rejected rather than
    silently symmetrised away.
    """
    m = np.asarray(m, dtype=complex)
    if m.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {m.shape}")
    deviation = np.max(np.abs(m - m.conj().T))
    if deviation > hermiticity_tol:
        raise ValueError(
            f"matrix is not Hermitian within {hermiticity_tol} "
            f"(max deviation {deviation:.3e})")
    # eigvalsh works on the lower triangle; average out the tolerated noise
    h = 0.5 * (m + m.conj().T)
    return float(np.linalg.eigvalsh(h)[0])
