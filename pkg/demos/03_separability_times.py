"""Entanglement survival: memoryful channel versus Markovian prediction.

Reproduces the two benchmark regimes (theta = 100, alpha^2 = 0.01, r = 0.1):

* x = 10 (mode inside the environment band): the memoryful channel keeps the
  twin beam entangled until tau ~ 0.67, almost four times longer than the
  Markovian estimate tau ~ 0.18;
* x = 0.01 (detuned environment): entanglement decays faster than the
  Markovian estimate at short times and S(tau) develops oscillations whose
  period is set by the mode frequency, 2 pi x.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from gausschannel import (ReservoirSpec, markov_separability_time, s_high_T,
                          s_markovian, trace_and_analyze)

OUT = "demos/output"


def main():
    import os
    os.makedirs(OUT, exist_ok=True)
    taus = np.linspace(0.0, 1.0, 1001)
    fig, axes = plt.subplots(1, 2, figsize=(11, 4))

    for ax, x in zip(axes, (10.0, 0.01)):
        spec = ReservoirSpec(alpha2=0.01, x=x, theta=100.0)
        nm = s_high_T(spec, 0.1, taus)
        mk = s_markovian(spec, 0.1, taus)
        ax.plot(taus, nm, label="with memory (high T)")
        ax.plot(taus, mk, label="Markovian comparator", ls="--")
        ax.axhline(0.0, color="k", lw=0.8)
        ax.set_title(f"x = {x}")
        ax.set_xlabel("tau")
        ax.set_ylabel("S(tau)")
        ax.legend()

        trace = trace_and_analyze(lambda t: s_high_T(spec, 0.1, t), 1.0, 1e-3)
        t_markov = markov_separability_time(spec, 0.1)
        print(f"x = {x}:")
        print(f"  Markovian threshold (closed form): tau_s = {t_markov:.4f}")
        if trace.separability_time is None:
            print("  memoryful channel: no separation in [0, 1]"
                  f" ({len(trace.extrema)} local extrema; oscillation period"
                  f" ~ {2 * np.pi * x:.4f})")
        else:
            print(f"  memoryful channel: tau_s = {trace.separability_time:.4f}"
                  f" ({trace.separability_time / t_markov:.1f}x the Markovian value)")
        print()

    fig.tight_layout()
    path = f"{OUT}/separability_times.png"
    fig.savefig(path, dpi=150)
    print(f"wrote {path}")

    # temperature does not change the ordering in the band-resonant regime
    print("band-resonant regime at other temperatures (x = 10):")
    for theta in (50.0, 100.0, 200.0):
        spec = ReservoirSpec(alpha2=0.01, x=10.0, theta=theta)
        trace = trace_and_analyze(lambda t: s_high_T(spec, 0.1, t), 3.0, 1e-3)
        t_markov = markov_separability_time(spec, 0.1)
        print(f"  theta = {theta:5.0f}: memoryful {trace.separability_time:.4f}"
              f" vs Markovian {t_markov:.4f}")


if __name__ == "__main__":
    main()
