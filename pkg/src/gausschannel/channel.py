"""Gaussian channel map for two uncorrelated thermal environments.

The evolution (in the secular regime, which drops fast-rotating terms) needs
only two accumulated quantities::

    Gamma(t)       = 2 int_0^t gamma(s) ds
    DeltaGamma(t)  = e^{-Gamma(t)} int_0^t e^{Gamma(s)} delta(s) ds

and acts on a state as::

    mean -> e^{-Gamma/2} (R (+) R)^T mean
    cov  -> e^{-Gamma}  (R (+) R)^T cov (R (+) R) + (DeltaGamma / 2) * I

with R the phase rotation at angle omega_0 t = tau / x.  Both accumulators
are tabulated once on a uniform grid and interpolated linearly; tables are
immutable after construction, so many states can be evolved against one
table concurrently.

Three modes are supported: the memoryful channel with exact or
high-temperature rates, and the Markovian comparator where
Gamma = gamma_M * tau and DeltaGamma = (2N+1)(1 - e^{-gamma_M tau}).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.integrate import cumulative_trapezoid

from . import reservoir
from .states import (TwoModeGaussianState, is_physical, physicality_margin,
                     rotation_matrix)


class ChannelMode(str, Enum):
    NON_MARKOVIAN_EXACT = "non_markovian_exact"
    NON_MARKOVIAN_HIGH_T = "non_markovian_high_T"
    MARKOVIAN = "markovian"


@dataclass(frozen=True)
class CoefficientTable:
    """Uniformly sampled gamma, delta, Gamma and DeltaGamma on [0, tau_end]."""

    step: float
    taus: np.ndarray
    gamma: np.ndarray
    delta: np.ndarray
    big_gamma: np.ndarray
    delta_gamma: np.ndarray

    @property
    def tau_end(self):
        return float(self.taus[-1])


@dataclass(frozen=True)
class ChannelState:
    reservoir: reservoir.ReservoirSpec
    mode: ChannelMode
    table: CoefficientTable


def max_table_step(spec):
    """Largest grid step that still resolves the cos(tau/x) oscillation."""
    return min(0.02, spec.x / 20.0)


def default_table_step(spec):
    return min(0.01, spec.x / 20.0)


def _accumulate_delta_gamma(taus, big_gamma, delta):
    """DeltaGamma via the stable rearrangement
    int_0^tau e^{-(Gamma(tau) - Gamma(s))} delta(s) ds.

    All exponents are <= 0, so nothing overflows however long the grid is.
    """
    n = taus.size
    out = np.zeros(n)
    h = np.diff(taus)
    decay = np.exp(-(big_gamma[1:] - big_gamma[:-1]))
    for i in range(1, n):
        w = decay[i - 1]
        out[i] = w * out[i - 1] + 0.5 * h[i - 1] * (w * delta[i - 1] + delta[i])
    return out


def build_table(spec, mode, tau_max, step):
    """Tabulate the channel coefficients on a uniform grid over [0, tau_max].

    ``step`` must resolve the oscillation of the rates: step <= min(0.02, x/20).
    """
    mode = ChannelMode(mode)
    if tau_max <= 0:
        raise ValueError(f"tau_max must be > 0, got {tau_max}")
    if step <= 0:
        raise ValueError(f"step must be > 0, got {step}")
    limit = max_table_step(spec)
    if step > limit * (1.0 + 1e-12):
        raise ValueError(
            f"step {step} too coarse for x={spec.x}: need step <= {limit}")
    n = int(np.floor(tau_max / step + 1e-9)) + 1
    taus = step * np.arange(n)
    # make sure the nominal end time stays queryable despite rounding
    if taus[-1] < tau_max:
        taus = np.append(taus, taus[-1] + step)

    if mode is ChannelMode.MARKOVIAN:
        g_m = reservoir.gamma_markov(spec)
        n_th = reservoir.thermal_occupation(spec)
        gamma = np.full(taus.shape, g_m)
        delta = np.full(taus.shape, (2.0 * n_th + 1.0) * g_m)
        big_gamma = g_m * taus
        delta_gamma = (2.0 * n_th + 1.0) * -np.expm1(-g_m * taus)
    else:
        gamma = reservoir.gamma_coefficient(spec, taus)
        if mode is ChannelMode.NON_MARKOVIAN_HIGH_T:
            delta = reservoir.delta_coefficient(spec, taus, mode="high_T")
        else:
            delta = reservoir.delta_exact_profile(spec, taus)
        big_gamma = cumulative_trapezoid(2.0 * gamma, taus, initial=0.0)
        delta_gamma = _accumulate_delta_gamma(taus, big_gamma, delta)

    for arr in (taus, gamma, delta, big_gamma, delta_gamma):
        arr.setflags(write=False)
    return CoefficientTable(step=step, taus=taus, gamma=gamma, delta=delta,
                            big_gamma=big_gamma, delta_gamma=delta_gamma)


def build_channel(spec, mode, tau_max, step=None):
    if step is None:
        step = default_table_step(spec)
    return ChannelState(reservoir=spec, mode=ChannelMode(mode),
                        table=build_table(spec, mode, tau_max, step))


def _interp(table, tau, column):
    tau = np.asarray(tau, dtype=float)
    if np.any(tau < 0) or np.any(tau > table.tau_end * (1.0 + 1e-12)):
        raise ValueError(
            f"tau outside table range [0, {table.tau_end}]")
    out = np.interp(tau, table.taus, column)
    return float(out) if out.ndim == 0 else out


def big_gamma(state, tau):
    """Gamma(tau), linearly interpolated from the table (exactly 0 at tau=0)."""
    return _interp(state.table, tau, state.table.big_gamma)


def delta_gamma(state, tau):
    """DeltaGamma(tau), linearly interpolated from the table."""
    return _interp(state.table, tau, state.table.delta_gamma)


def evolve(state, s0, tau, include_rotation=False,
           physicality_tol=1e-9):
    """Propagate a two-mode Gaussian state from time 0 to tau.

    With ``include_rotation`` off the free phase rotation (which leaves both
    the uncertainty and partial-transpose spectra invariant) is omitted,
    which is the convenient convention for separability work.
    """
    g = big_gamma(state, tau)
    d = delta_gamma(state, tau)
    damp = np.exp(-g)
    if include_rotation:
        r2 = rotation_matrix(tau / state.reservoir.x)
        r4 = np.zeros((4, 4))
        r4[:2, :2] = r2
        r4[2:, 2:] = r2
        mean = np.sqrt(damp) * (r4.T @ s0.mean)
        cov = damp * (r4.T @ s0.cov @ r4) + 0.5 * d * np.eye(4)
    else:
        mean = np.sqrt(damp) * s0.mean
        cov = damp * s0.cov + 0.5 * d * np.eye(4)
    out = TwoModeGaussianState(mean=mean, cov=cov)
    if not is_physical(out, tol=physicality_tol):
        raise RuntimeError(
            f"evolved state unphysical at tau={tau}: margin "
            f"{physicality_margin(out):.3e} (internal consistency failure)")
    return out
