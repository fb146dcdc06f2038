"""Command-line front end.

Subcommands::

    pseudoboson diagonalize --config cfg.json [--out DIR] [--tol X]
    pseudoboson verify      --config cfg.json [--out DIR] [--n-max N] [--tol X]
    pseudoboson statmech    --config cfg.json [--out DIR]
    pseudoboson figure      --config cfg.json [--out DIR]

Exit codes: 0 success, 1 configuration error, 2 non-real regime,
3 verification failure.  All output files are written atomically
(temp file + rename).  The PSEUDOBOSON_SEED environment variable fixes
the seed used by randomized checks.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import tempfile
from dataclasses import dataclass, field

from . import checks as checks_mod
from . import thermo
from .errors import (
    ConfigError,
    DivergenceError,
    PseudobosonError,
    RegimeError,
    TruncationError,
    ValidationError,
)
from .model import ModelParameters
from .symplectic import Regime, analytic_eigenvalues, characteristic_coefficients, compute_eigenbasis

CSV_HEADER = ["beta", "mu", "zeta", "n_expected", "h_expected", "log_z", "entropy"]

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_REGIME = 2
EXIT_VERIFY = 3


@dataclass
class RunConfig:
    model: ModelParameters | None = None
    n_max: int = 20
    n_cap: int = 3
    spectrum: thermo.SpectrumSpec | None = None
    beta_list: tuple = thermo.FIGURE1_BETAS
    mu_grid: list | None = None
    zeta_grid: list | None = None
    tolerances: dict = field(default_factory=dict)
    out_dir: str = "."
    write_csv: bool = True
    write_json: bool = True
    write_svg: bool = True


def _require(condition: bool, message: str):
    if not condition:
        raise ConfigError(message)


def _check_keys(section: dict, allowed: set, where: str):
    _require(isinstance(section, dict), f"section {where!r} must be a JSON object")
    for key in section:
        _require(key in allowed, f"unknown key {key!r} in {where!r}")


def _number(section: dict, key: str, where: str, default=None):
    if key not in section:
        _require(default is not None, f"missing key {key!r} in {where!r}")
        return default
    value = section[key]
    _require(
        isinstance(value, (int, float)) and not isinstance(value, bool),
        f"key {key!r} in {where!r} must be a number",
    )
    return value


def load_config(path: str) -> RunConfig:
    """Parse and strictly validate a run configuration file."""
    try:
        with open(path, "r", encoding="utf-8") as handle:
            raw = json.load(handle)
    except FileNotFoundError as exc:
        raise ConfigError(f"config file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from exc

    _check_keys(raw, {"model", "fock", "spectrum", "thermo", "tolerances", "output"}, "config")
    cfg = RunConfig()

    if "model" in raw:
        try:
            cfg.model = ModelParameters.from_dict(raw["model"])
        except ValidationError as exc:
            raise ConfigError(f"model: {exc}") from exc

    if "fock" in raw:
        section = raw["fock"]
        _check_keys(section, {"n_max", "n_cap"}, "fock")
        cfg.n_max = int(_number(section, "n_max", "fock", cfg.n_max))
        cfg.n_cap = int(_number(section, "n_cap", "fock", cfg.n_cap))
        _require(cfg.n_max >= 1, "fock.n_max must be >= 1")
        _require(cfg.n_cap >= 0, "fock.n_cap must be >= 0")

    if "spectrum" in raw:
        section = raw["spectrum"]
        _check_keys(section, {"e0", "lambda1", "lambda2"}, "spectrum")
        try:
            cfg.spectrum = thermo.SpectrumSpec(
                e0=_number(section, "e0", "spectrum"),
                lambda1=_number(section, "lambda1", "spectrum"),
                lambda2=_number(section, "lambda2", "spectrum"),
            )
        except ValidationError as exc:
            raise ConfigError(f"spectrum: {exc}") from exc

    if "thermo" in raw:
        section = raw["thermo"]
        _check_keys(section, {"beta_list", "mu_grid", "zeta_list"}, "thermo")
        if "beta_list" in section:
            betas = section["beta_list"]
            _require(
                isinstance(betas, list) and betas
                and all(isinstance(b, (int, float)) and not isinstance(b, bool) and b > 0 for b in betas),
                "thermo.beta_list must be a nonempty list of positive numbers",
            )
            cfg.beta_list = tuple(float(b) for b in betas)
        _require(
            not ("mu_grid" in section and "zeta_list" in section),
            "thermo accepts either mu_grid or zeta_list, not both",
        )
        if "mu_grid" in section:
            grid = section["mu_grid"]
            _check_keys(grid, {"neg_mu_min", "neg_mu_max", "points"}, "thermo.mu_grid")
            points = int(_number(grid, "points", "thermo.mu_grid", 200))
            _require(points >= 1, "thermo.mu_grid.points must be >= 1")
            try:
                cfg.mu_grid = thermo.default_mu_grid(
                    points=points,
                    neg_min=_number(grid, "neg_mu_min", "thermo.mu_grid", 1e-4),
                    neg_max=_number(grid, "neg_mu_max", "thermo.mu_grid", 1e2),
                )
            except ValidationError as exc:
                raise ConfigError(f"thermo.mu_grid: {exc}") from exc
        if "zeta_list" in section:
            zetas = section["zeta_list"]
            _require(
                isinstance(zetas, list) and zetas
                and all(isinstance(z, (int, float)) and not isinstance(z, bool) for z in zetas),
                "thermo.zeta_list must be a nonempty list of numbers",
            )
            cfg.zeta_grid = [float(z) for z in zetas]

    if "tolerances" in raw:
        section = raw["tolerances"]
        _check_keys(section, set(checks_mod.DEFAULT_TOLERANCES), "tolerances")
        for name, value in section.items():
            _require(
                isinstance(value, (int, float)) and not isinstance(value, bool) and value > 0,
                f"tolerance {name!r} must be a positive number",
            )
            cfg.tolerances[name] = float(value)

    if "output" in raw:
        section = raw["output"]
        _check_keys(section, {"dir", "csv", "json", "svg"}, "output")
        if "dir" in section:
            _require(isinstance(section["dir"], str), "output.dir must be a string")
            cfg.out_dir = section["dir"]
        for flag in ("csv", "json", "svg"):
            if flag in section:
                _require(isinstance(section[flag], bool), f"output.{flag} must be a boolean")
                setattr(cfg, f"write_{flag}", section[flag])
    return cfg


# ---------------------------------------------------------------- output


def _atomic_write(path: str, text: str):
    directory = os.path.dirname(path) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", text=True)
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _write_json(path: str, payload) -> None:
    _atomic_write(path, json.dumps(payload, indent=2) + "\n")


def _format_number(value: float) -> str:
    return repr(float(value))


def _write_sweep_csv(path: str, rows) -> None:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow(
            [
                _format_number(row.beta),
                _format_number(row.mu),
                _format_number(row.zeta),
                _format_number(row.number),
                _format_number(row.energy),
                _format_number(row.log_z),
                _format_number(row.entropy),
            ]
        )
    _atomic_write(path, buffer.getvalue())


# ---------------------------------------------------------------- commands


def cmd_diagonalize(cfg: RunConfig, pairing_tol: float | None) -> int:
    if cfg.model is None:
        raise ConfigError("diagonalize requires a 'model' section")
    quartic = characteristic_coefficients(cfg.model)
    lam1, lam2, regime = analytic_eigenvalues(cfg.model)
    report = {
        "regime": regime.value,
        "lambda1": lam1,
        "lambda2": lam2,
        "E0": None,
        "B": quartic.b,
        "C": quartic.c,
        "U": None,
    }
    if regime is not Regime.COMPLEX:
        report["E0"] = 0.5 * (lam1 + lam2 - cfg.model.alpha11 - cfg.model.alpha22)
    if regime is Regime.REAL_SIMPLE:
        basis = compute_eigenbasis(cfg.model, tol=pairing_tol or 1e-10)
        report["U"] = [[float(x) for x in row] for row in basis.u]
    _write_json(os.path.join(cfg.out_dir, "diagonalize.json"), report)
    return EXIT_OK if regime is Regime.REAL_SIMPLE else EXIT_REGIME


def cmd_verify(cfg: RunConfig, blanket_tol: float | None) -> int:
    if cfg.model is None:
        raise ConfigError("verify requires a 'model' section")
    tolerances = dict(checks_mod.DEFAULT_TOLERANCES)
    if blanket_tol is not None:
        for name in tolerances:
            if name not in checks_mod.FLOOR_CHECKS:
                tolerances[name] = blanket_tol
    tolerances.update(cfg.tolerances)
    seed = checks_mod.resolve_seed()
    records = checks_mod.run_checks(
        cfg.model,
        n_max=cfg.n_max,
        n_cap=cfg.n_cap,
        tolerances=tolerances,
        seed=seed,
    )
    all_pass = all(record.passed for record in records)
    report = {
        "model": cfg.model.to_dict(),
        "n_max": cfg.n_max,
        "n_cap": cfg.n_cap,
        "seed": seed,
        "checks": [record.to_json_dict() for record in records],
        "all_pass": all_pass,
    }
    _write_json(os.path.join(cfg.out_dir, "verify.json"), report)
    return EXIT_OK if all_pass else EXIT_VERIFY


def _resolve_spectrum(cfg: RunConfig) -> thermo.SpectrumSpec:
    if cfg.spectrum is not None:
        return cfg.spectrum
    if cfg.model is None:
        raise ConfigError("statmech requires a 'spectrum' or a 'model' section")
    lam1, lam2, regime = analytic_eigenvalues(cfg.model)
    if regime is not Regime.REAL_SIMPLE:
        raise RegimeError(
            f"cannot derive a spectrum from the model: regime is {regime.value}"
        )
    e0 = 0.5 * (lam1 + lam2 - cfg.model.alpha11 - cfg.model.alpha22)
    return thermo.SpectrumSpec(e0=e0, lambda1=lam1, lambda2=lam2)


def _trace_cutoff(spec, beta, zeta, tol=1e-13, cap=2048) -> int | None:
    """Smallest per-mode cutoff meeting the trace tail bound, or None."""
    x = min(beta * spec.lambda1 - zeta, beta * spec.lambda2 - zeta)
    if x <= 0:
        return None
    r = math.exp(-x)
    n = 32
    while n <= cap:
        if 2 * (n + 2) * r ** (n + 1) / (1.0 - r) ** 2 <= tol:
            return n
        n *= 2
    return None


def _oracle_summary(spec, rows) -> list[dict]:
    """Closed-form vs trace-oracle residuals at one grid point per curve."""
    summary = []
    betas = sorted({row.beta for row in rows})
    for beta in betas:
        curve = [row for row in rows if row.beta == beta]
        probe = curve[len(curve) // 2]
        n_max = _trace_cutoff(spec, probe.beta, probe.zeta)
        if n_max is None:
            continue
        trace = thermo.oracle_trace(spec, probe.beta, probe.zeta, n_max)
        z = math.exp(probe.log_z)
        point = thermo.thermo_point(spec, probe.beta, zeta=probe.zeta)
        summary.append(
            {
                "beta": probe.beta,
                "mu": probe.mu,
                "zeta": probe.zeta,
                "trace_n_max": n_max,
                "rel_err_z": abs(z / trace.z - 1.0),
                "rel_err_energy": abs(point.energy / trace.energy - 1.0),
                "rel_err_number": abs(point.number / trace.number - 1.0),
                "rel_err_entropy": abs(point.entropy / trace.entropy - 1.0),
            }
        )
    return summary


def _run_sweep(cfg: RunConfig):
    spec = _resolve_spectrum(cfg)
    rows, skipped = thermo.sweep_figure1(
        spec,
        beta_list=cfg.beta_list,
        mu_grid=cfg.mu_grid if cfg.zeta_grid is None else None,
        zeta_grid=cfg.zeta_grid,
    )
    return spec, rows, skipped


def cmd_statmech(cfg: RunConfig) -> int:
    spec, rows, skipped = _run_sweep(cfg)
    _write_sweep_csv(os.path.join(cfg.out_dir, "sweep.csv"), rows)
    if cfg.write_json:
        summary = {
            "spectrum": {"e0": spec.e0, "lambda1": spec.lambda1, "lambda2": spec.lambda2},
            "beta_list": sorted(cfg.beta_list),
            "points": len(rows),
            "warnings": skipped,
            "oracle": _oracle_summary(spec, rows),
        }
        _write_json(os.path.join(cfg.out_dir, "statmech.json"), summary)
    return EXIT_OK


def cmd_figure(cfg: RunConfig) -> int:
    from .figures import render_figure

    spec, rows, skipped = _run_sweep(cfg)
    if not rows:
        raise ConfigError("sweep produced no convergent points to plot")
    if cfg.write_csv:
        _write_sweep_csv(os.path.join(cfg.out_dir, "sweep.csv"), rows)
    target = os.path.join(cfg.out_dir, "figure.svg")
    fd, tmp = tempfile.mkstemp(dir=cfg.out_dir, prefix=".tmp-", suffix=".svg")
    os.close(fd)
    try:
        render_figure(rows, spec, tmp)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return EXIT_OK


# ---------------------------------------------------------------- entry


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pseudoboson",
        description="Diagonalize, verify, and evaluate the two-mode non-Hermitian boson model.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("diagonalize", "write the symplectic diagonalization report"),
        ("verify", "run the verification battery against the Fock oracle"),
        ("statmech", "write the thermodynamic sweep CSV and summary"),
        ("figure", "render the sweep figure (SVG) alongside the CSV"),
    ):
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("--config", required=True, help="path to the JSON run configuration")
        cmd.add_argument("--out", help="output directory (overrides output.dir)")
        cmd.add_argument("--n-max", type=int, help="override fock.n_max")
        cmd.add_argument(
            "--tol",
            type=float,
            help="blanket tolerance for residual checks without a config override",
        )
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
        if args.out is not None:
            cfg.out_dir = args.out
        if args.n_max is not None:
            if args.n_max < 1:
                raise ConfigError("--n-max must be >= 1")
            cfg.n_max = args.n_max
        if args.tol is not None and args.tol <= 0:
            raise ConfigError("--tol must be positive")
        os.makedirs(cfg.out_dir, exist_ok=True)

        if args.command == "diagonalize":
            return cmd_diagonalize(cfg, args.tol)
        if args.command == "verify":
            return cmd_verify(cfg, args.tol)
        if args.command == "statmech":
            return cmd_statmech(cfg)
        if args.command == "figure":
            return cmd_figure(cfg)
        raise ConfigError(f"unknown command {args.command!r}")
    except (ConfigError, ValidationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except RegimeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_REGIME
    except (TruncationError, DivergenceError, PseudobosonError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
