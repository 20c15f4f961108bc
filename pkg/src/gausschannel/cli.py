"""Command-line front end: coefficient tables, separability traces and sweeps as CSV.

Output conventions: comma-separated, LF line endings, a fixed column order
(tau, gamma, delta, big_gamma, delta_gamma, s_nm, s_markov), numbers with 12
significant digits, and '#'-prefixed comment lines carrying the tool version
plus a config echo that parses back as a config file.  All quantities are
dimensionless (omega_c = 1, tau = omega_c t).

Exit status is 0 for completed physics runs, including "no separation in the
window"; nonzero only for configuration or I/O errors.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass, fields, replace

import numpy as np

from . import __version__, channel, separability
from .reservoir import ReservoirSpec
from .separability import markov_separability_time, s_high_T, s_markovian

CSV_COLUMNS = ("tau", "gamma", "delta", "big_gamma", "delta_gamma",
               "s_nm", "s_markov")

MODE_TO_CHANNEL = {
    "exact": channel.ChannelMode.NON_MARKOVIAN_EXACT,
    "high_T": channel.ChannelMode.NON_MARKOVIAN_HIGH_T,
    "markovian": channel.ChannelMode.MARKOVIAN,
}


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    alpha2: float = 0.01
    x: float = 10.0
    theta: float = 100.0
    r: float = 0.1
    mode: str = "high_T"
    tau_max: float = 1.0
    step: float = 0.001
    rotation: bool = False
    output_path: str = ""

    def validate(self):
        if self.alpha2 <= 0:
            raise ConfigError(f"alpha2 must be > 0, got {self.alpha2}")
        if self.x <= 0:
            raise ConfigError(f"x must be > 0, got {self.x}")
        if self.theta < 0:
            raise ConfigError(f"theta must be >= 0, got {self.theta}")
        if self.r < 0:
            raise ConfigError(f"r must be >= 0, got {self.r}")
        if self.mode not in MODE_TO_CHANNEL:
            raise ConfigError(f"mode must be one of {sorted(MODE_TO_CHANNEL)}, "
                              f"got {self.mode!r}")
        if self.tau_max <= 0:
            raise ConfigError(f"tau_max must be > 0, got {self.tau_max}")
        if not (0 < self.step < self.tau_max):
            raise ConfigError(f"need 0 < step < tau_max, got step={self.step}, "
                              f"tau_max={self.tau_max}")
        return self

    def reservoir(self):
        return ReservoirSpec(alpha2=self.alpha2, x=self.x, theta=self.theta)

    def echo_lines(self):
        out = []
        for f in fields(self):
            value = getattr(self, f.name)
            if isinstance(value, bool):
                value = "true" if value else "false"
            elif isinstance(value, float):
                value = fmt(value)
            out.append(f"{f.name} = {value}")
        return out


_FIELD_TYPES = {f.name: f.type for f in fields(RunConfig)}


def _parse_value(key, text):
    if key not in _FIELD_TYPES:
        raise ConfigError(f"unknown config key {key!r}")
    if key == "rotation":
        lowered = text.strip().lower()
        if lowered in ("true", "1", "yes", "on"):
            return True
        if lowered in ("false", "0", "no", "off"):
            return False
        raise ConfigError(f"cannot parse boolean {text!r} for 'rotation'")
    if key in ("mode", "output_path"):
        return text.strip()
    try:
        return float(text)
    except ValueError as exc:
        raise ConfigError(f"cannot parse number {text!r} for {key!r}") from exc


def parse_config_text(lines, base=None):
    """Parse 'key = value' lines ('#' comments allowed) into a RunConfig."""
    cfg = base or RunConfig()
    for raw in lines:
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        cfg = replace(cfg, **{key.strip(): _parse_value(key.strip(), value)})
    return cfg


def load_config(path, base=None):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config_text(fh.readlines(), base=base)


def fmt(value):
    """Fixed 12-significant-digit decimal serialization."""
    if value is None:
        return ""
    if math.isinf(value):
        return "inf"
    return format(float(value), ".12g")


def _config_from_args(args):
    cfg = RunConfig()
    if getattr(args, "config", None):
        cfg = load_config(args.config, base=cfg)
    overrides = {}
    for key in ("alpha2", "x", "theta", "r", "mode", "tau_max", "step"):
        value = getattr(args, key, None)
        if value is not None:
            overrides[key] = value
    if getattr(args, "rotation", False):
        overrides["rotation"] = True
    if getattr(args, "out", None):
        overrides["output_path"] = args.out
    if overrides:
        cfg = replace(cfg, **overrides)
    return cfg.validate()


def _header_lines(cfg, command):
    lines = [f"# gausschannel {__version__} :: {command}",
             "# units: dimensionless, omega_c set to 1, tau in cutoff units"]
    lines += [f"# {line}" for line in cfg.echo_lines()]
    return lines


def _write(stream, lines):
    for line in lines:
        stream.write(line + "\n")


def _open_output(cfg):
    if cfg.output_path and cfg.output_path != "-":
        try:
            return open(cfg.output_path, "w", encoding="utf-8", newline="\n"), True
        except OSError as exc:
            raise RuntimeError(f"cannot write {cfg.output_path!r}: {exc}") from exc
    return sys.stdout, False


def _csv_rows(taus, columns):
    rows = [",".join(CSV_COLUMNS)]
    n = len(taus)
    for i in range(n):
        cells = [fmt(taus[i])]
        for name in CSV_COLUMNS[1:]:
            col = columns.get(name)
            cells.append(fmt(col[i]) if col is not None else "")
        rows.append(",".join(cells))
    return rows


def _summary_of_trace(label, trace, tau_max):
    # summary lines use ':' so that only the config echo matches 'key = value'
    lines = []
    t_s = trace.separability_time
    if t_s is None:
        lines.append(f"# {label}_separability_time: none in window [0, {fmt(tau_max)}]")
    else:
        lines.append(f"# {label}_separability_time: {fmt(t_s)}")
    cross = "; ".join(f"{fmt(t)} {'up' if d > 0 else 'down'}"
                      for t, d in trace.crossings) or "none"
    lines.append(f"# {label}_crossings: {cross}")
    revs = "; ".join(f"[{fmt(a)}, {fmt(b)}]" for a, b in trace.revivals) or "none"
    lines.append(f"# {label}_revivals: {revs}")
    lines.append(f"# {label}_local_extrema_count: {len(trace.extrema)}")
    return lines


def cmd_coeffs(cfg):
    spec = cfg.reservoir()
    table = channel.build_table(spec, MODE_TO_CHANNEL[cfg.mode],
                                cfg.tau_max, cfg.step)
    n = int(np.floor(cfg.tau_max / cfg.step + 1e-9)) + 1
    taus = table.taus[:n]
    lines = _header_lines(cfg, "coeffs")
    lines += _csv_rows(taus, {
        "gamma": table.gamma[:n],
        "delta": table.delta[:n],
        "big_gamma": table.big_gamma[:n],
        "delta_gamma": table.delta_gamma[:n],
    })
    stream, opened = _open_output(cfg)
    try:
        _write(stream, lines)
    finally:
        if opened:
            stream.close()
    return 0


def cmd_trace(cfg):
    spec = cfg.reservoir()
    state = channel.build_channel(spec, MODE_TO_CHANNEL[cfg.mode],
                                  cfg.tau_max, cfg.step)
    table = state.table
    n = int(np.floor(cfg.tau_max / cfg.step + 1e-9)) + 1
    taus = table.taus[:n]
    s_nm = separability.s_exact(cfg.r, table.big_gamma[:n],
                                table.delta_gamma[:n])
    s_mk = s_markovian(spec, cfg.r, taus)

    lines = _header_lines(cfg, "trace")
    lines += _csv_rows(taus, {
        "gamma": table.gamma[:n],
        "delta": table.delta[:n],
        "big_gamma": table.big_gamma[:n],
        "delta_gamma": table.delta_gamma[:n],
        "s_nm": s_nm,
        "s_markov": s_mk,
    })

    def nm_func(tau):
        return separability.s_exact(cfg.r, channel.big_gamma(state, tau),
                                    channel.delta_gamma(state, tau))

    nm_trace = separability.trace_and_analyze(nm_func, cfg.tau_max, cfg.step)
    mk_trace = separability.trace_and_analyze(
        lambda tau: s_markovian(spec, cfg.r, tau), cfg.tau_max, cfg.step)
    lines += _summary_of_trace("s_nm", nm_trace, cfg.tau_max)
    lines += _summary_of_trace("s_markov", mk_trace, cfg.tau_max)
    t_closed = markov_separability_time(spec, cfg.r) if cfg.r > 0 else None
    lines.append(f"# markov_closed_form_separability_time: "
                 f"{fmt(t_closed) if t_closed is not None else 'n/a'}")

    stream, opened = _open_output(cfg)
    try:
        _write(stream, lines)
    finally:
        if opened:
            stream.close()
    return 0


def _nm_separability_time(cfg, spec):
    """Root of the configured non-Markovian S within [0, tau_max]."""
    if cfg.mode == "high_T":
        func = lambda tau: s_high_T(spec, cfg.r, tau)
        return separability.first_up_crossing(func, cfg.tau_max,
                                              min(cfg.step, 1e-3))
    if cfg.mode == "markovian":
        func = lambda tau: s_markovian(spec, cfg.r, tau)
        return separability.first_up_crossing(func, cfg.tau_max,
                                              min(cfg.step, 1e-3))
    state = channel.build_channel(spec, MODE_TO_CHANNEL[cfg.mode],
                                  cfg.tau_max, cfg.step)
    func = lambda tau: separability.s_exact(
        cfg.r, channel.big_gamma(state, tau), channel.delta_gamma(state, tau))
    return separability.first_up_crossing(func, cfg.tau_max, cfg.step)


def cmd_septime(cfg, stream=None):
    if cfg.r <= 0:
        raise ConfigError("septime needs r > 0 (an initially entangled state)")
    stream = stream or sys.stdout
    spec = cfg.reservoir()
    t_nm = _nm_separability_time(cfg, spec)
    if t_nm is None:
        stream.write(f"separability_time_nm = no separation before "
                     f"tau_max = {fmt(cfg.tau_max)}\n")
    else:
        stream.write(f"separability_time_nm = {fmt(t_nm)}\n")
    t_mk = markov_separability_time(spec, cfg.r)
    stream.write("separability_time_markov = "
                 + ("infinite" if math.isinf(t_mk) else fmt(t_mk)) + "\n")
    return 0


SWEEP_AXES = ("x", "theta", "r", "alpha2")


def cmd_sweep(cfg, axis, values):
    if axis not in SWEEP_AXES:
        raise ConfigError(f"sweep axis must be one of {SWEEP_AXES}, got {axis!r}")
    if not values:
        raise ConfigError("sweep needs at least one value")
    lines = _header_lines(cfg, f"sweep {axis}")
    lines.append(f"{axis},tau_s_nm,tau_s_markov,ratio,status")
    for value in values:
        try:
            point = replace(cfg, **{axis: value}).validate()
            spec = point.reservoir()
            t_nm = _nm_separability_time(point, spec)
            t_mk = markov_separability_time(spec, point.r)
        except (ConfigError, ValueError) as exc:
            lines.append(f"{fmt(value)},,,,error: {exc}")
            continue
        nm_txt = fmt(t_nm) if t_nm is not None else ""
        mk_txt = "inf" if math.isinf(t_mk) else fmt(t_mk)
        if t_nm is not None and not math.isinf(t_mk) and t_mk > 0:
            ratio = fmt(t_nm / t_mk)
            status = "ok"
        else:
            ratio = ""
            status = "no-crossing" if t_nm is None else "ok"
        lines.append(f"{fmt(value)},{nm_txt},{mk_txt},{ratio},{status}")
    stream, opened = _open_output(cfg)
    try:
        _write(stream, lines)
    finally:
        if opened:
            stream.close()
    return 0


FIG1_SETS = (("fig1_top.csv", 10.0), ("fig1_bottom.csv", 0.01))


def cmd_fig1(cfg, out_dir):
    """Benchmark separability curves for the two reference parameter sets.

    Writes fig1_top.csv (x = 10) and fig1_bottom.csv (x = 0.01) with columns
    tau, s_nm_highT, s_markov on tau in [0, 1] at step 1e-3, using
    theta = 100, alpha2 = 0.01, r = 0.1.
    """
    import os

    taus = 1e-3 * np.arange(1001)
    written = []
    for name, x in FIG1_SETS:
        run = replace(cfg, alpha2=0.01, theta=100.0, r=0.1, x=x,
                      tau_max=1.0, step=1e-3).validate()
        spec = run.reservoir()
        s_nm = s_high_T(spec, run.r, taus)
        s_mk = s_markovian(spec, run.r, taus)
        path = os.path.join(out_dir, name)
        lines = _header_lines(run, "fig1")
        lines.append("tau,s_nm_highT,s_markov")
        for i in range(taus.size):
            lines.append(f"{fmt(taus[i])},{fmt(s_nm[i])},{fmt(s_mk[i])}")
        try:
            with open(path, "w", encoding="utf-8", newline="\n") as fh:
                _write(fh, lines)
        except OSError as exc:
            raise RuntimeError(f"cannot write {path!r}: {exc}") from exc
        written.append(path)
    for path in written:
        sys.stdout.write(path + "\n")
    return 0


def _add_common(parser):
    parser.add_argument("--config", help="config file with 'key = value' lines")
    parser.add_argument("--alpha2", type=float)
    parser.add_argument("--x", type=float)
    parser.add_argument("--theta", type=float)
    parser.add_argument("--r", type=float)
    parser.add_argument("--mode", choices=sorted(MODE_TO_CHANNEL))
    parser.add_argument("--tau-max", dest="tau_max", type=float)
    parser.add_argument("--step", type=float)
    parser.add_argument("--rotation", action="store_true",
                        help="reserved for trajectory export; S is rotation-invariant")
    parser.add_argument("--out", help="output path (default: stdout)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="gausschannel",
        description="Two-mode Gaussian states in bosonic thermal channels "
                    "with memory: coefficients, separability traces, sweeps.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coeffs", help="emit gamma/delta/Gamma/DeltaGamma table")
    _add_common(p)
    p = sub.add_parser("trace", help="emit S(tau) trace plus crossing summary")
    _add_common(p)
    p = sub.add_parser("septime", help="separability times (channel vs Markovian)")
    _add_common(p)
    p = sub.add_parser("sweep", help="separability times along a parameter axis")
    _add_common(p)
    p.add_argument("--axis", required=True, choices=SWEEP_AXES)
    p.add_argument("--values", required=True,
                   help="comma-separated axis values, e.g. 0.01,0.1,1,10")
    p = sub.add_parser("fig1", help="write benchmark curves for x=10 and x=0.01")
    _add_common(p)
    p.add_argument("--dir", default=".", help="output directory")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config_from_args(args)
        if args.command == "coeffs":
            return cmd_coeffs(cfg)
        if args.command == "trace":
            return cmd_trace(cfg)
        if args.command == "septime":
            return cmd_septime(cfg)
        if args.command == "sweep":
            values = [float(v) for v in args.values.split(",") if v.strip()]
            return cmd_sweep(cfg, args.axis, values)
        if args.command == "fig1":
            return cmd_fig1(cfg, args.dir)
        parser.error(f"unknown command {args.command!r}")
    except (ConfigError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except RuntimeError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
