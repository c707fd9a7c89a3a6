"""Experiment runner: presets and INI configs in, deterministic artifacts out.

`areaflow run` advances a configured experiment and writes field snapshots,
diagnostics, area tables and contour plots into a run directory; `areaflow
compare` diffs two run directories.  Artifacts carry no timestamps and use
fixed float formatting, so rerunning a preset reproduces byte-identical
output.

Exit codes: 0 success, 2 usage or configuration error, 3 numeric failure.
"""

import argparse
import configparser
import math
import os
import sys
from dataclasses import dataclass, field as dc_field

import numpy as np

from . import analytic, areafn, contours, diagnostics, relabel, schemes, svgplot
from .errors import NumericalError
from .grid import make_grid, read_snapshot, sample, write_snapshot
from .kernels import BACKEND

_FORMAT = "%.17g"

DEFAULT_LEVELS = tuple(round(0.1 * k, 1) for k in range(1, 10))

PRESETS = {
    # the section-4 test problem: gaussian blob swirled by the sine stream
    "paper-fig3a": {
        "experiment": {"kind": "advection"},
        "projection": {"type": "none"},
    },
    "paper-fig3b": {
        "experiment": {"kind": "advection"},
        "projection": {"type": "rearrange", "interval": "20"},
    },
    "paper-fig3c": {
        "experiment": {"kind": "advection"},
        "scheme": {"jacobian": "central"},
        "projection": {"type": "relabel", "interval": "10"},
    },
    "paper-fig3d": {
        "experiment": {"kind": "advection"},
        "projection": {"type": "relabel", "interval": "10"},
    },
    "disc-area-test": {
        "experiment": {"kind": "disc-area"},
        "grid": {"nx": "41", "ny": "41"},
    },
}

_SCHEMA = {
    "experiment": {"kind"},
    "grid": {"nx", "ny"},
    "initial": None,  # field, apply_boundary, plus free numeric parameters
    "stream": None,
    "scheme": {"jacobian", "dt", "steps", "mode"},
    "projection": {"type", "interval", "budget", "richardson"},
    "diagnostics": {"snapshot_stride", "reference", "contour_levels"},
    "output": {"dir"},
}


@dataclass
class ExperimentConfig:
    name: str
    kind: str = "advection"
    nx: int = 20
    ny: int = 20
    initial_name: str = "gaussian"
    initial_params: dict = dc_field(default_factory=dict)
    initial_boundary: bool = True
    stream_name: str = "sine-stream"
    stream_params: dict = dc_field(default_factory=dict)
    jacobian: str = "arakawa"
    dt: float = 0.003
    steps: int = 400
    mode: str = "liouville"
    projection: str = "none"
    interval: int = 10
    budget: int = 0
    richardson: bool = False
    snapshot_stride: int = 100
    reference: bool = True
    contour_levels: tuple = DEFAULT_LEVELS
    out_dir: str = ""

    def validate(self):
        if self.kind not in ("advection", "disc-area"):
            raise ValueError(f"unknown experiment kind {self.kind!r}")
        if self.nx < 3 or self.ny < 3:
            raise ValueError(f"grid needs at least 3 vertices per direction, got {self.nx}x{self.ny}")
        if self.kind == "advection":
            if self.steps < 1:
                raise ValueError(f"step count must be >= 1, got {self.steps}")
            if not (self.dt > 0.0):
                raise ValueError(f"time step must be positive, got {self.dt}")
            if self.projection not in ("none", "rearrange", "relabel"):
                raise ValueError(f"unknown projection type {self.projection!r}")
            if self.projection != "none" and self.interval < 1:
                raise ValueError(f"projection interval must be >= 1, got {self.interval}")
            if self.snapshot_stride < 1:
                raise ValueError(f"snapshot stride must be >= 1, got {self.snapshot_stride}")
        return self

    def resolved_budget(self):
        return self.budget if self.budget > 0 else 4 * max(self.nx, self.ny)

    def echo_lines(self):
        pairs = [
            ("experiment.kind", self.kind),
            ("grid.nx", self.nx),
            ("grid.ny", self.ny),
            ("initial.field", self.initial_name),
            ("initial.apply_boundary", str(self.initial_boundary).lower()),
            ("scheme.jacobian", self.jacobian),
            ("scheme.dt", _FORMAT % self.dt),
            ("scheme.steps", self.steps),
            ("scheme.mode", self.mode),
            ("projection.type", self.projection),
            ("projection.interval", self.interval),
            ("projection.budget", self.resolved_budget()),
            ("projection.richardson", str(self.richardson).lower()),
            ("diagnostics.snapshot_stride", self.snapshot_stride),
            ("diagnostics.reference", str(self.reference).lower()),
            ("diagnostics.contour_levels", " ".join(_FORMAT % c for c in self.contour_levels)),
            ("stream.field", self.stream_name),
        ]
        for key, val in sorted(self.initial_params.items()):
            pairs.append((f"initial.{key}", _FORMAT % val))
        for key, val in sorted(self.stream_params.items()):
            pairs.append((f"stream.{key}", _FORMAT % val))
        return [f"{k} = {v}" for k, v in sorted(pairs)]


def _parse_bool(raw, where):
    low = raw.strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"{where}: expected a boolean, got {raw!r}")


def _build_config(name, sections):
    cfg = ExperimentConfig(name=name)
    for section, keys in sections.items():
        if section not in _SCHEMA:
            raise ValueError(f"unknown config section [{section}]")
        allowed = _SCHEMA[section]
        for key, raw in keys.items():
            if allowed is not None and key not in allowed:
                raise ValueError(f"unknown key {key!r} in section [{section}]")
            try:
                _assign(cfg, section, key, raw)
            except ValueError as exc:
                raise ValueError(f"[{section}] {key}: {exc}") from None
    return cfg.validate()


def _assign(cfg, section, key, raw):
    raw = raw.strip()
    if section == "experiment":
        cfg.kind = raw
    elif section == "grid":
        setattr(cfg, key, int(raw))
    elif section == "initial":
        if key == "field":
            cfg.initial_name = raw
        elif key == "apply_boundary":
            cfg.initial_boundary = _parse_bool(raw, f"[{section}] {key}")
        else:
            cfg.initial_params[key] = float(raw)
    elif section == "stream":
        if key == "field":
            cfg.stream_name = raw
        else:
            cfg.stream_params[key] = float(raw)
    elif section == "scheme":
        if key == "jacobian":
            cfg.jacobian = raw
        elif key == "dt":
            cfg.dt = float(raw)
        elif key == "steps":
            cfg.steps = int(raw)
        else:
            cfg.mode = raw
    elif section == "projection":
        if key == "type":
            cfg.projection = raw
        elif key == "interval":
            cfg.interval = int(raw)
        elif key == "budget":
            cfg.budget = int(raw)
        else:
            cfg.richardson = _parse_bool(raw, f"[{section}] {key}")
    elif section == "diagnostics":
        if key == "snapshot_stride":
            cfg.snapshot_stride = int(raw)
        elif key == "reference":
            cfg.reference = _parse_bool(raw, f"[{section}] {key}")
        else:
            parts = raw.replace(",", " ").split()
            cfg.contour_levels = tuple(float(p) for p in parts)
    elif section == "output":
        cfg.out_dir = raw


def config_from_preset(name):
    try:
        sections = PRESETS[name]
    except KeyError:
        known = ", ".join(sorted(PRESETS))
        raise ValueError(f"unknown preset {name!r} (known: {known})") from None
    return _build_config(name, sections)


def config_from_ini(path):
    if not os.path.exists(path):
        raise ValueError(f"config file not found: {path}")
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    try:
        parser.read(path)
    except configparser.Error as exc:
        raise ValueError(f"{path}: {exc}") from None
    sections = {s: dict(parser.items(s)) for s in parser.sections()}
    name = os.path.splitext(os.path.basename(path))[0]
    return _build_config(name, sections)


def _projection_object(cfg):
    if cfg.projection == "none":
        return None
    if cfg.projection == "rearrange":
        return schemes.CellRearrange(interval=cfg.interval)
    return schemes.Relabel(interval=cfg.interval, budget=cfg.resolved_budget(),
                           richardson=cfg.richardson)


def _max_speed(psi_field):
    # centered-difference velocity magnitude from a stream-function field
    p = psi_field.values
    h = psi_field.grid.h
    u = (p[1:-1, 2:] - p[1:-1, :-2]) / (2.0 * h)
    v = -(p[2:, 1:-1] - p[:-2, 1:-1]) / (2.0 * h)
    return float(np.max(np.hypot(u, v)))


def _psi_field_at(omega_field, stream, cfg, t):
    if cfg.mode == "liouville":
        return sample(omega_field.grid, stream, t=t)
    return schemes.solve_poisson(omega_field)


def _step_tag(t, dt):
    return f"{int(round(t / dt)):05d}"


def run_experiment(cfg, out_dir):
    """Execute one configured experiment, writing all artifacts into out_dir."""
    os.makedirs(out_dir, exist_ok=True)
    with open(os.path.join(out_dir, "config.txt"), "w") as fh:
        fh.write("\n".join(cfg.echo_lines()) + "\n")
    if cfg.kind == "disc-area":
        _run_disc(cfg, out_dir)
        return out_dir

    grid = make_grid(cfg.nx, cfg.ny)
    initial = analytic.make_field(cfg.initial_name, **cfg.initial_params)
    stream = analytic.make_field(cfg.stream_name, **cfg.stream_params)
    omega0 = sample(grid, initial, apply_boundary=cfg.initial_boundary)
    scheme_cfg = schemes.SchemeConfig(dt=cfg.dt, jacobian=cfg.jacobian, mode=cfg.mode,
                                      psi=stream if cfg.mode == "liouville" else None)
    projection = _projection_object(cfg)
    budget = cfg.resolved_budget()

    if cfg.projection == "rearrange":
        psi0 = _psi_field_at(omega0, stream, cfg, 0.0)
        travel = _max_speed(psi0) * cfg.interval * cfg.dt
        if travel < 2.0 * grid.h:
            print(f"warning: rearrangement interval moves the flow only {travel:.3g} "
                  f"(< 2h = {2.0 * grid.h:.3g}); the rank projection may freeze the run",
                  file=sys.stderr)

    # A0 gets its Richardson companion from the analytic data when available
    coarse0 = None
    if cfg.richardson:
        coarse0 = sample(relabel.coarse_companion(omega0).grid, initial,
                         apply_boundary=cfg.initial_boundary)
    a0 = relabel.build_initial_table(omega0, budget=budget,
                                     use_richardson=cfg.richardson, coarse=coarse0)

    snaps = schemes.run(omega0, scheme_cfg, cfg.steps, projection=projection,
                        snapshot_stride=cfg.snapshot_stride)

    use_reference = cfg.reference and cfg.mode == "liouville" and hasattr(stream, "velocity")
    records = []
    for t, omega in snaps:
        tag = _step_tag(t, cfg.dt)
        write_snapshot(omega, os.path.join(out_dir, f"field_{tag}.txt"))
        levelled = [(lev, contours.contour_polylines(omega, lev)) for lev in cfg.contour_levels]
        contours.write_polylines_csv(levelled, os.path.join(out_dir, f"contours_{tag}.csv"))
        with open(os.path.join(out_dir, f"contour_{tag}.svg"), "w") as fh:
            fh.write(svgplot.contour_svg(omega, cfg.contour_levels,
                                         title=f"{cfg.name} t={t:.3f}"))
        ref = None
        if use_reference:
            ref = diagnostics.reference_liouville(initial, stream, grid, t)
        psi_field = _psi_field_at(omega, stream, cfg, t)
        records.append(diagnostics.record(omega, psi_field, t, a0=a0, reference=ref))
    diagnostics.write_csv(records, os.path.join(out_dir, "diagnostics.csv"))

    a0.to_csv(os.path.join(out_dir, "area_initial.csv"))
    a_final = relabel.build_initial_table(snaps[-1][1], budget=budget,
                                          use_richardson=cfg.richardson)
    a_final.to_csv(os.path.join(out_dir, "area_final.csv"))
    with open(os.path.join(out_dir, "area_curves.svg"), "w") as fh:
        fh.write(svgplot.line_chart_svg(
            [("A initial", a0.levels, a0.areas), ("A final", a_final.levels, a_final.areas)],
            title="contour-area function", xlabel="level c", ylabel="area"))
    _write_area_profile(omega0, a0, os.path.join(out_dir, "area_profile_t0.csv"))
    return out_dir


def _write_area_profile(omega0, a0, path):
    # counting estimate h^2 * #{values >= c} against the smoothed table
    w = omega0.values
    h2 = omega0.grid.h ** 2
    span = a0.levels[-1] - a0.levels[0]
    cs = np.linspace(a0.levels[0], a0.levels[-1], 81)
    if span == 0.0:
        cs = a0.levels
    count = np.array([h2 * np.count_nonzero(w >= c) for c in cs])
    smooth = np.atleast_1d(a0.evaluate(cs))
    delta = 1e-6 * (span if span > 0.0 else 1.0)
    deriv = (np.atleast_1d(a0.evaluate(cs + delta)) - np.atleast_1d(a0.evaluate(cs - delta))) / (2.0 * delta)
    lines = ["c,count_estimate,area,deriv"]
    for c, n, a, d in zip(cs, count, smooth, deriv):
        lines.append(",".join(_FORMAT % v for v in (c, n, a, d)))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def _run_disc(cfg, out_dir):
    # area accuracy check on the paraboloid, whose level sets are exact discs
    fine_grid = make_grid(cfg.nx, cfg.ny)
    if cfg.nx % 2 == 0 or cfg.ny % 2 == 0:
        raise ValueError("disc-area-test needs odd vertex counts so the coarse grid nests")
    coarse_grid = make_grid((cfg.nx + 1) // 2, (cfg.ny + 1) // 2)
    para = analytic.make_field("paraboloid")
    fine = sample(fine_grid, para)
    coarse = sample(coarse_grid, para)
    budget = cfg.resolved_budget()
    t_fine = areafn.tabulate(fine, budget=budget)
    t_coarse = areafn.tabulate(coarse, budget=budget)
    t_rich = areafn.richardson(t_fine, t_coarse)

    radii = np.linspace(0.1, 0.45, 20)
    cs = -(radii ** 2)
    exact = np.pi * (-cs)
    rows = []
    for table, label in ((t_coarse, "coarse"), (t_fine, "fine"), (t_rich, "richardson")):
        vals = np.atleast_1d(table.evaluate(cs))
        rows.append((label, vals, np.abs(vals - exact)))
    lines = ["c,exact,coarse,fine,richardson,err_coarse,err_fine,err_richardson"]
    for k in range(len(cs)):
        vals = (cs[k], exact[k], rows[0][1][k], rows[1][1][k], rows[2][1][k],
                rows[0][2][k], rows[1][2][k], rows[2][2][k])
        lines.append(",".join(_FORMAT % v for v in vals))
    with open(os.path.join(out_dir, "disc_area.csv"), "w") as fh:
        fh.write("\n".join(lines) + "\n")

    err_c = float(np.max(rows[0][2]))
    err_f = float(np.max(rows[1][2]))
    err_r = float(np.max(rows[2][2]))
    order = math.log2(err_c / err_f) if err_f > 0 else float("inf")
    gain = err_f / err_r if err_r > 0 else float("inf")
    report = [
        f"grids: {coarse_grid.nx}x{coarse_grid.ny} and {fine_grid.nx}x{fine_grid.ny}",
        f"levels: {len(cs)} interior discs, radii {radii[0]:.3g} to {radii[-1]:.3g}",
        f"max error coarse: {err_c:.6e}",
        f"max error fine: {err_f:.6e}",
        f"max error richardson: {err_r:.6e}",
        f"observed order (coarse/fine): {order:.3f}",
        f"richardson gain over fine: {gain:.2f}x",
    ]
    with open(os.path.join(out_dir, "disc_report.txt"), "w") as fh:
        fh.write("\n".join(report) + "\n")
    with open(os.path.join(out_dir, "disc_errors.svg"), "w") as fh:
        fh.write(svgplot.line_chart_svg(
            [("err coarse", cs, rows[0][2]), ("err fine", cs, rows[1][2]),
             ("err richardson", cs, rows[2][2])],
            title="disc area errors", xlabel="level c", ylabel="abs error"))


def compare_runs(dir_a, dir_b):
    """Build a text report diffing the field snapshots and diagnostics of two runs."""
    for d in (dir_a, dir_b):
        if not os.path.isdir(d):
            raise ValueError(f"not a run directory: {d}")
    names = sorted(set(os.listdir(dir_a)) & set(os.listdir(dir_b)))
    fields = [n for n in names if n.startswith("field_") and n.endswith(".txt")]
    if not fields:
        raise ValueError("no common field snapshots to compare")
    lines = [f"comparing {dir_a} vs {dir_b}", ""]
    lines.append(f"{'snapshot':<18} {'max|diff|':>14} {'l2 diff':>14}")
    for name in fields:
        fa = read_snapshot(os.path.join(dir_a, name))
        fb = read_snapshot(os.path.join(dir_b, name))
        if fa.grid != fb.grid:
            raise ValueError(f"{name}: snapshot grids differ ({fa.grid.shape} vs {fb.grid.shape})")
        lines.append(f"{name:<18} {diagnostics.linf_difference(fa, fb):>14.6e} "
                     f"{diagnostics.l2_difference(fa, fb):>14.6e}")
    if "diagnostics.csv" in names:
        da = np.genfromtxt(os.path.join(dir_a, "diagnostics.csv"), delimiter=",", names=True)
        db = np.genfromtxt(os.path.join(dir_b, "diagnostics.csv"), delimiter=",", names=True)
        da, db = np.atleast_1d(da), np.atleast_1d(db)
        lines.append("")
        lines.append(f"{'t':>8} {'area_defect A':>14} {'area_defect B':>14} {'ratio A/B':>12}")
        for ra in da:
            match = db[np.isclose(db["t"], ra["t"])]
            if match.size == 0:
                continue
            rb = match[0]
            ratio = ra["area_defect"] / rb["area_defect"] if rb["area_defect"] > 0 else float("inf")
            lines.append(f"{ra['t']:>8.3f} {ra['area_defect']:>14.6e} "
                         f"{rb['area_defect']:>14.6e} {ratio:>12.3f}")
    return "\n".join(lines) + "\n"


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="areaflow",
        description="area-preserving vorticity advection experiments")
    sub = parser.add_subparsers(dest="command", required=True)
    runp = sub.add_parser("run", help="run a preset or INI-configured experiment")
    runp.add_argument("--preset", choices=sorted(PRESETS), help="named built-in experiment")
    runp.add_argument("--config", help="INI experiment description")
    runp.add_argument("--out", help="output directory (overrides AREAFLOW_OUT and the config)")
    runp.add_argument("--threads", type=int, help="numba thread cap (no effect on the numpy backend)")
    cmpp = sub.add_parser("compare", help="diff the artifacts of two run directories")
    cmpp.add_argument("dir_a")
    cmpp.add_argument("dir_b")
    cmpp.add_argument("--save", help="also write the report to this file")
    args = parser.parse_args(argv)

    try:
        if args.command == "run":
            if (args.preset is None) == (args.config is None):
                parser.error("choose exactly one of --preset or --config")
            if args.threads is not None:
                if args.threads < 1:
                    raise ValueError(f"--threads must be >= 1, got {args.threads}")
                if BACKEND == "numba":
                    import numba

                    numba.set_num_threads(args.threads)
            cfg = config_from_preset(args.preset) if args.preset else config_from_ini(args.config)
            out_dir = (args.out or os.environ.get("AREAFLOW_OUT") or cfg.out_dir
                       or os.path.join("areaflow-out", cfg.name))
            run_experiment(cfg, out_dir)
            print(f"wrote {cfg.name} artifacts to {out_dir}")
        else:
            report = compare_runs(args.dir_a, args.dir_b)
            if args.save:
                with open(args.save, "w") as fh:
                    fh.write(report)
            print(report, end="")
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
