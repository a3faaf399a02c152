"""Command-line entry point: spectrum, simulate, berry, sweep, oracle-check.

Configuration files are INI-style::

    [trajectory]
    kind = harmonic
    a = 10
    b = 1
    omega = 1

    [physics]
    alpha = 1

    [numerics]
    n_modes = 64
    t_final = 40
    dt = 1e-3
    sample_interval = 0.02

    [initial]
    kind = neumann_mode
    index = 1

    [output]
    path = out/run.csv
    format = csv

Unset keys fall back to the defaults above (a=10, b=1, omega=1, alpha=1,
n_modes=64).  Every output file gets a sibling ``.manifest.json`` echoing
the fully resolved configuration; a manifest is itself accepted by
``--config`` and reproduces the CSV byte for byte.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__, berry, coupling, observables, spectrum
from .core import ConfigError, SimulationConfig, TrajectoryError, WallTrajectory
from .evolution import integrate
from .hermitian import HermitianConfig, hermitian_energy, hermitian_norm, integrate_hermitian

_SECTIONS = {
    "trajectory": {"kind", "a", "b", "omega"},
    "physics": {"alpha"},
    "numerics": {"n_modes", "t_final", "dt", "rtol", "sample_interval"},
    "initial": {"kind", "index"},
    "output": {"path", "format"},
}


@dataclass
class ParsedRun:
    config: SimulationConfig
    out_path: str | None
    out_format: str


def _strip(value: str) -> str:
    value = value.strip()
    if len(value) >= 2 and value[0] == value[-1] and value[0] in "\"'":
        value = value[1:-1]
    return value


def _as_float(section: str, key: str, value: str) -> float:
    try:
        return float(value)
    except ValueError as exc:
        raise ConfigError(f"{section}.{key}: expected a number, got {value!r}") from exc


def _as_int(section: str, key: str, value: str) -> int:
    try:
        return int(value)
    except ValueError as exc:
        raise ConfigError(f"{section}.{key}: expected an integer, got {value!r}") from exc


def _load_sections(path: str | Path) -> dict[str, dict[str, str]]:
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file not found: {path}")
    text = path.read_text()
    if path.suffix == ".json" or text.lstrip().startswith("{"):
        manifest = json.loads(text)
        raw = manifest.get("config", manifest)
        return {s: {k: str(v) for k, v in kv.items()} for s, kv in raw.items()}
    import configparser

    parser = configparser.ConfigParser()
    parser.read_string(text)
    return {s: {k: _strip(v) for k, v in parser.items(s)} for s in parser.sections()}


def build_config(sections: dict[str, dict[str, str]]) -> ParsedRun:
    """Validate sections and apply defaults; error messages carry the key path."""
    for section, keys in sections.items():
        if section not in _SECTIONS:
            raise ConfigError(f"{section}: unknown section")
        for key in keys:
            if key not in _SECTIONS[section]:
                raise ConfigError(f"{section}.{key}: unknown key")

    traj_kv = sections.get("trajectory", {})
    if "kind" not in traj_kv:
        raise ConfigError("trajectory.kind: missing required key")
    try:
        trajectory = WallTrajectory(
            kind=traj_kv["kind"],
            a=_as_float("trajectory", "a", traj_kv.get("a", "10")),
            b=_as_float("trajectory", "b", traj_kv.get("b", "1")),
            omega=_as_float("trajectory", "omega", traj_kv.get("omega", "1")),
        )
    except ValueError as exc:
        raise ConfigError(f"trajectory: {exc}") from exc

    num = sections.get("numerics", {})
    init = sections.get("initial", {})
    config = SimulationConfig(
        trajectory=trajectory,
        alpha=_as_float("physics", "alpha", sections.get("physics", {}).get("alpha", "1")),
        n_modes=_as_int("numerics", "n_modes", num.get("n_modes", "64")),
        t_final=_as_float("numerics", "t_final", num.get("t_final", "40")),
        dt=_as_float("numerics", "dt", num["dt"]) if "dt" in num else None,
        rtol=_as_float("numerics", "rtol", num["rtol"]) if "rtol" in num else None,
        initial_kind=init.get("kind", "neumann_mode"),
        initial_index=_as_int("initial", "index", init.get("index", "1")),
        sample_interval=_as_float(
            "numerics", "sample_interval", num.get("sample_interval", "0.02")
        ),
    )
    try:
        from .core import ensure_positive_horizon

        ensure_positive_horizon(trajectory, config.t_final, config.resolved_dt)
    except TrajectoryError as exc:
        raise ConfigError(f"numerics.t_final: {exc}") from exc

    out = sections.get("output", {})
    out_format = out.get("format", "csv")
    if out_format not in ("csv", "json"):
        raise ConfigError(f"output.format: must be csv or json (got {out_format!r})")
    return ParsedRun(config=config, out_path=out.get("path"), out_format=out_format)


def parse_config(path: str | Path) -> ParsedRun:
    return build_config(_load_sections(path))


def config_sections(config: SimulationConfig) -> dict[str, dict[str, object]]:
    """Resolved configuration in section form, as echoed into manifests."""
    traj = config.trajectory
    sections: dict[str, dict[str, object]] = {
        "trajectory": {
            "kind": traj.kind.value,
            "a": traj.a,
            "b": traj.b,
            "omega": traj.omega,
        },
        "physics": {"alpha": config.alpha},
        "numerics": {
            "n_modes": config.n_modes,
            "t_final": config.t_final,
            "sample_interval": config.sample_interval,
        },
        "initial": {"kind": config.initial_kind.value, "index": config.initial_index},
    }
    if config.rtol is not None:
        sections["numerics"]["rtol"] = config.rtol
    else:
        sections["numerics"]["dt"] = config.resolved_dt
    return sections


def _default_out(subcommand: str, suffix: str = ".csv") -> Path:
    stamp = datetime.now(timezone.utc).strftime("%Y%m%dT%H%M%S")
    out = Path("out") / f"{subcommand}-{stamp}{suffix}"
    return out


def _write_manifest(out_path: Path, subcommand: str, sections, outputs) -> Path:
    manifest = {
        "subcommand": subcommand,
        "config": sections,
        "outputs": [str(p) for p in outputs],
        "timestamp": datetime.now(timezone.utc).isoformat(),
        "version": __version__,
    }
    manifest_path = out_path.with_suffix(".manifest.json")
    manifest_path.parent.mkdir(parents=True, exist_ok=True)
    manifest_path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return manifest_path


def _write_series(series: observables.ObservableSeries, path: Path, fmt: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    if fmt == "json":
        header = series.header()
        rows = [dict(zip(header, map(float, row))) for row in series.rows()]
        path.write_text(json.dumps(rows) + "\n")
        return
    with open(path, "w", newline="\n") as fh:
        series.write_csv(fh)


def run_sweep(
    base: SimulationConfig, axis: str, values, out_dir: Path, fmt: str = "csv"
) -> tuple[list[Path], list[tuple[float, str]]]:
    """One run per value along the axis; failures are isolated per run.

    Returns (written paths, failures as (value, message)).  Output naming is
    by value, so results do not depend on execution order.
    """
    if axis not in ("b", "omega", "alpha"):
        raise ConfigError(f"sweep axis must be one of b, omega, alpha (got {axis!r})")
    written: list[Path] = []
    failures: list[tuple[float, str]] = []
    for value in values:
        try:
            traj = base.trajectory
            if axis == "alpha":
                cfg = SimulationConfig(
                    trajectory=traj,
                    alpha=value,
                    n_modes=base.n_modes,
                    t_final=base.t_final,
                    dt=base.dt,
                    rtol=base.rtol,
                    initial_kind=base.initial_kind,
                    initial_index=base.initial_index,
                    sample_interval=base.sample_interval,
                )
            else:
                new_traj = WallTrajectory(
                    kind=traj.kind,
                    a=traj.a,
                    b=value if axis == "b" else traj.b,
                    omega=value if axis == "omega" else traj.omega,
                )
                cfg = SimulationConfig(
                    trajectory=new_traj,
                    alpha=base.alpha,
                    n_modes=base.n_modes,
                    t_final=base.t_final,
                    dt=base.dt,
                    rtol=base.rtol,
                    initial_kind=base.initial_kind,
                    initial_index=base.initial_index,
                    sample_interval=base.sample_interval,
                )
            series = observables.build_series(integrate(cfg))
            path = out_dir / f"sweep-{axis}-{value:g}.csv"
            _write_series(series, path, fmt)
            written.append(path)
        except (ConfigError, TrajectoryError, ValueError, RuntimeError) as exc:
            failures.append((float(value), str(exc)))
    return written, failures


def _cmd_spectrum(args) -> int:
    out = Path(args.out) if args.out else _default_out("spectrum")
    out.parent.mkdir(parents=True, exist_ok=True)
    with open(out, "w", newline="\n") as fh:
        fh.write("n,E_n,A_n\n")
        for n in range(1, args.n_max + 1):
            energy = spectrum.static_eigenvalue(n, args.length)
            amp = spectrum.normalization(n, args.length, args.alpha)
            fh.write(
                f"{n},{observables.FLOAT_FMT % energy},{observables.FLOAT_FMT % amp}\n"
            )
    _write_manifest(
        out,
        "spectrum",
        {"spectrum": {"n_max": args.n_max, "length": args.length, "alpha": args.alpha}},
        [out],
    )
    print(out)
    return 0


def _cmd_simulate(args) -> int:
    parsed = parse_config(args.config)
    out = Path(args.out or parsed.out_path or _default_out("simulate"))
    if args.hermitian:
        cfg = parsed.config
        hcfg = HermitianConfig(
            trajectory=cfg.trajectory,
            n_modes=cfg.n_modes,
            t_final=cfg.t_final,
            dt=cfg.dt,
            rtol=cfg.rtol,
            initial_index=max(1, cfg.initial_index),
            sample_interval=cfg.sample_interval,
        )
        record = integrate_hermitian(hcfg)
        out.parent.mkdir(parents=True, exist_ok=True)
        L = np.asarray(cfg.trajectory.position(record.times))
        with open(out, "w", newline="\n") as fh:
            fh.write("t,L,Ldot,N,E\n")
            for i, t in enumerate(record.times):
                c = record.coefficients[i]
                row = (
                    t,
                    L[i],
                    cfg.trajectory.velocity(t),
                    hermitian_norm(c, L[i]),
                    hermitian_energy(c, L[i]),
                )
                fh.write(",".join(observables.FLOAT_FMT % v for v in row) + "\n")
    else:
        record = integrate(parsed.config)
        series = observables.build_series(record)
        _write_series(series, out, parsed.out_format)
    _write_manifest(out, "simulate", config_sections(parsed.config), [out])
    print(out)
    return 0


def _cmd_sweep(args) -> int:
    parsed = parse_config(args.config)
    values = [float(v) for v in args.values.split(",") if v.strip()]
    out_dir = Path(args.out_dir)
    written, failures = run_sweep(parsed.config, args.axis, values, out_dir, parsed.out_format)
    index_base = out_dir / f"sweep-{args.axis}.csv"  # manifest lands at sweep-<axis>.manifest.json
    _write_manifest(
        index_base,
        "sweep",
        {**config_sections(parsed.config), "sweep": {"axis": args.axis, "values": values}},
        written,
    )
    for path in written:
        print(path)
    for value, message in failures:
        print(json.dumps({"error": message, "value": value}), file=sys.stderr)
    return 0 if not failures else 1


def _parse_n_range(text: str) -> list[int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return list(range(1, int(text) + 1))


def _cmd_berry(args) -> int:
    results = berry.compute_phases(
        _parse_n_range(args.n), args.a, args.b, args.alpha, args.omega, args.steps
    )
    out = Path(args.out) if args.out else _default_out("berry")
    out.parent.mkdir(parents=True, exist_ok=True)
    with open(out, "w", newline="\n") as fh:
        fh.write("n,re_gamma_analytic,im_gamma_analytic,re_gamma_numeric,im_gamma_numeric,discrepancy\n")
        for r in results:
            row = (
                r.gamma_analytic.real,
                r.gamma_analytic.imag,
                r.gamma_numeric.real,
                r.gamma_numeric.imag,
                r.discrepancy,
            )
            fh.write(f"{r.n}," + ",".join(observables.FLOAT_FMT % v for v in row) + "\n")
    _write_manifest(
        out,
        "berry",
        {
            "berry": {
                "n": args.n,
                "a": args.a,
                "b": args.b,
                "alpha": args.alpha,
                "omega": args.omega,
                "steps": args.steps,
            }
        },
        [out],
    )
    print(out)
    return 0


def _cmd_oracle_check(args) -> int:
    worst = coupling.max_closed_form_discrepancy(args.n_max)
    print(f"max |closed form - quadrature| over 1 <= n,m <= {args.n_max}: {worst:.3e}")
    return 0 if worst <= 1e-10 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ptbox")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="static eigenvalues and normalizations as CSV")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--length", type=float, required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser("simulate", help="run one configuration and emit observables")
    p.add_argument("--config", required=True)
    p.add_argument("--out")
    p.add_argument("--hermitian", action="store_true", help="Dirichlet baseline box")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("sweep", help="one run per value along b, omega or alpha")
    p.add_argument("--config", required=True)
    p.add_argument("--axis", required=True, choices=["b", "omega", "alpha"])
    p.add_argument("--values", required=True, help="comma-separated list")
    p.add_argument("--out-dir", default="out")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("berry", help="geometric phase, closed form vs quadrature")
    p.add_argument("--n", required=True, help="range like 1..3, or a single upper bound")
    p.add_argument("--a", type=float, default=10.0)
    p.add_argument("--b", type=float, default=1.0)
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--omega", type=float, default=1.0)
    p.add_argument("--steps", type=int, default=512)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_berry)

    p = sub.add_parser("oracle-check", help="closed-form overlaps vs quadrature")
    p.add_argument("--n-max", type=int, default=32)
    p.set_defaults(func=_cmd_oracle_check)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, TrajectoryError, ValueError, RuntimeError) as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
