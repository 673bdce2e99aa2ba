"""Command-line interface.

Scenario subcommands (``free``, ``dirichlet``, ``potential``, ``thermal``,
``verify``) evaluate the reduced-state elements over an optional parameter
sweep and write a deterministic CSV table; ``figures`` emits the data files
behind the five standard plots.  Configuration comes from a YAML file plus
repeatable ``--set key=value`` overrides; the fully resolved configuration
is echoed into the output header so a table regenerates bit-for-bit from
its own provenance block.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import yaml

from . import __version__
from .core import (
    DetectorPair,
    ModeModel,
    adiabatic_rate_bound,
    matrix_elements_discrete,
    negativity,
    normalized_k,
)
from .dirichlet import DirichletParams, dirichlet_elements
from .freefield import (
    FreeFieldParams,
    critical_separation,
    free_matrix_elements,
)
from .numerics import QuadratureSpec
from .potential import (
    PotentialParams,
    corrected_elements,
    corrections_from_integrals,
    effective_mass,
    reduced_pair_integrals,
)
from .thermal import ThermalParams, thermal_elements
from .verifier import (
    RampSchedule,
    build_truncated,
    evolve_ramp,
    exact_ground_reduced,
)

__all__ = [
    "ConfigError",
    "RunConfig",
    "Sweep",
    "SweepResult",
    "config_from_mapping",
    "run",
    "emit_figure_data",
    "FIGURE_IDS",
    "main",
]


class ConfigError(ValueError):
    """A run configuration that fails validation before any computation."""


# per-scenario parameter names and defaults; every key is overridable from
# the config file or --set, and unknown keys are rejected
_SCHEMAS: dict[str, dict] = {
    "free": {
        "m": 1.0, "delta_e": 0.1, "d": 0.5, "delta_x": 1e-3, "alpha": 0.01,
    },
    "dirichlet": {
        "gamma": 0.1, "eps": 0.02, "lambda_tilde": 1e3, "alpha": 0.01,
        "orientation": "perpendicular", "method": "closed_form",
    },
    "potential": {
        "m": 1.0, "delta_e": 0.1, "d": 0.5, "delta_x": 1e-3, "alpha": 0.01,
        "coupling": -0.01, "sigma_b": 1.0,
    },
    "thermal": {
        "m": 1.0, "delta_e": 0.1, "d": 0.7, "delta_x": 1e-3, "alpha": 0.01,
        "theta": 0.05,
    },
    "verify": {
        "delta_e": 0.25, "alpha": 0.05, "n_max": 2,
        "energies": [1.0, 1.5], "f1": [1.0, 0.6], "f2": [1.0, 0.5],
        "ramp_fraction": 0.0, "ramp_shape": "smooth",
    },
}
_STRING_PARAMS = {"orientation", "method", "ramp_shape"}
_LIST_PARAMS = {"energies", "f1", "f2"}
_INT_PARAMS = {"n_max"}

FIGURE_IDS = ("fig2", "fig3", "fig4", "fig5", "fig6")

_COLUMNS = ("p1", "p2", "abs_e", "abs_f", "n", "k", "flags")


def _sweepable(scenario: str) -> set[str]:
    return {k for k in _SCHEMAS[scenario]
            if k not in _STRING_PARAMS | _LIST_PARAMS | _INT_PARAMS}


@dataclass(frozen=True)
class Sweep:
    """A one-parameter grid: ``count`` points from ``start`` to ``stop``."""

    parameter: str
    start: float
    stop: float
    count: int
    spacing: str = "linear"

    def grid(self) -> np.ndarray:
        if self.spacing == "log":
            return np.geomspace(self.start, self.stop, self.count)
        return np.linspace(self.start, self.stop, self.count)


@dataclass(frozen=True)
class RunConfig:
    """A validated scenario run: resolved parameters, optional sweep,
    quadrature-tolerance overrides, and output destination."""

    scenario: str
    params: dict
    sweep: Sweep | None = None
    numerics: dict | None = None
    output: str | None = None

    def resolved_mapping(self) -> dict:
        out: dict = {"scenario": self.scenario, "params": dict(self.params)}
        if self.sweep is not None:
            out["sweep"] = {
                "parameter": self.sweep.parameter,
                "start": self.sweep.start, "stop": self.sweep.stop,
                "count": self.sweep.count, "spacing": self.sweep.spacing,
            }
        if self.numerics:
            out["numerics"] = dict(self.numerics)
        return out


def _require_number(name: str, value) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"parameter {name!r} must be a number, "
                          f"got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        raise ConfigError(f"parameter {name!r} must be finite")
    return value


def config_from_mapping(mapping: dict) -> RunConfig:
    """Validate a plain mapping (parsed YAML plus overrides) into a
    RunConfig; all structural errors are reported here, before any
    computation starts."""
    if not isinstance(mapping, dict):
        raise ConfigError("configuration root must be a mapping")
    unknown_top = set(mapping) - {"scenario", "params", "sweep", "numerics",
                                  "output"}
    if unknown_top:
        raise ConfigError(f"unknown configuration keys: "
                          f"{sorted(unknown_top)}")
    scenario = mapping.get("scenario")
    if scenario not in _SCHEMAS:
        raise ConfigError(
            f"scenario must be one of {sorted(_SCHEMAS)}, got {scenario!r}")
    schema = _SCHEMAS[scenario]

    raw_params = mapping.get("params") or {}
    if not isinstance(raw_params, dict):
        raise ConfigError("'params' must be a mapping")
    unknown = set(raw_params) - set(schema)
    if unknown:
        raise ConfigError(f"unknown parameters for scenario "
                          f"{scenario!r}: {sorted(unknown)}")
    params = dict(schema)
    for key, value in raw_params.items():
        if key in _STRING_PARAMS:
            if not isinstance(value, str):
                raise ConfigError(f"parameter {key!r} must be a string")
            params[key] = value
        elif key in _LIST_PARAMS:
            if (not isinstance(value, (list, tuple))) or not value:
                raise ConfigError(f"parameter {key!r} must be a non-empty "
                                  "list of numbers")
            params[key] = [_require_number(f"{key}[{i}]", v)
                           for i, v in enumerate(value)]
        elif key in _INT_PARAMS:
            num = _require_number(key, value)
            if num != int(num):
                raise ConfigError(f"parameter {key!r} must be an integer")
            params[key] = int(num)
        else:
            params[key] = _require_number(key, value)

    sweep = None
    raw_sweep = mapping.get("sweep")
    if raw_sweep is not None:
        if not isinstance(raw_sweep, dict):
            raise ConfigError("'sweep' must be a mapping")
        unknown = set(raw_sweep) - {"parameter", "start", "stop", "count",
                                    "spacing"}
        if unknown:
            raise ConfigError(f"unknown sweep keys: {sorted(unknown)}")
        parameter = raw_sweep.get("parameter")
        if parameter not in _sweepable(scenario):
            raise ConfigError(
                f"sweep parameter {parameter!r} is not a numeric parameter "
                f"of scenario {scenario!r} (choose from "
                f"{sorted(_sweepable(scenario))})")
        count_raw = raw_sweep.get("count")
        count = int(_require_number("sweep.count", count_raw))
        if count != count_raw or count < 2:
            raise ConfigError("sweep.count must be an integer >= 2")
        spacing = raw_sweep.get("spacing", "linear")
        if spacing not in ("linear", "log"):
            raise ConfigError("sweep.spacing must be 'linear' or 'log'")
        start = _require_number("sweep.start", raw_sweep.get("start"))
        stop = _require_number("sweep.stop", raw_sweep.get("stop"))
        if spacing == "log" and (start <= 0.0 or stop <= 0.0):
            raise ConfigError("log spacing requires positive start/stop")
        sweep = Sweep(parameter=parameter, start=start, stop=stop,
                      count=count, spacing=spacing)

    numerics = None
    raw_numerics = mapping.get("numerics")
    if raw_numerics is not None:
        if not isinstance(raw_numerics, dict):
            raise ConfigError("'numerics' must be a mapping")
        unknown = set(raw_numerics) - {"tol_rel", "tol_abs"}
        if unknown:
            raise ConfigError(f"unknown numerics keys: {sorted(unknown)}")
        numerics = {}
        if "tol_rel" in raw_numerics:
            tol = _require_number("numerics.tol_rel",
                                  raw_numerics["tol_rel"])
            if tol <= 0.0:
                raise ConfigError("numerics.tol_rel must be positive")
            numerics["tol_rel"] = tol
        if "tol_abs" in raw_numerics:
            tol = _require_number("numerics.tol_abs",
                                  raw_numerics["tol_abs"])
            if tol < 0.0:
                raise ConfigError("numerics.tol_abs must be non-negative")
            numerics["tol_abs"] = tol

    output = mapping.get("output")
    if output is not None and not isinstance(output, str):
        raise ConfigError("'output' must be a path string")
    return RunConfig(scenario=scenario, params=params, sweep=sweep,
                     numerics=numerics or None, output=output)


# ---------------------------------------------------------------------------
# point evaluation
# ---------------------------------------------------------------------------

def _quad_from_numerics(numerics: dict | None) -> QuadratureSpec | None:
    if not numerics:
        return None
    return QuadratureSpec(abs_tol=numerics.get("tol_abs", 1e-12),
                          rel_tol=numerics.get("tol_rel", 1e-10))


def _symmetric_pair(params: dict) -> DetectorPair:
    return DetectorPair(delta_e=params["delta_e"], alpha1=params["alpha"],
                        alpha2=params["alpha"], d=params["d"],
                        delta_x=params["delta_x"])


def _construct(scenario: str, params: dict):
    """Build the scenario's parameter objects (runs all domain validation,
    no integrals)."""
    if scenario == "free":
        return FreeFieldParams(pair=_symmetric_pair(params), m=params["m"])
    if scenario == "dirichlet":
        return DirichletParams(gamma=params["gamma"], eps=params["eps"],
                               lambda_tilde=params["lambda_tilde"],
                               orientation=params["orientation"],
                               alpha=params["alpha"])
    if scenario == "potential":
        free = FreeFieldParams(pair=_symmetric_pair(params), m=params["m"])
        return PotentialParams(free=free, coupling=params["coupling"],
                               sigma_b=params["sigma_b"])
    if scenario == "thermal":
        free = FreeFieldParams(pair=_symmetric_pair(params), m=params["m"])
        return ThermalParams(free=free, theta=params["theta"])
    if scenario == "verify":
        model = ModeModel(energies=tuple(params["energies"]),
                          f1_elems=tuple(params["f1"]),
                          f2_elems=tuple(params["f2"]))
        # the discrete model carries all couplings; geometry is a formality
        pair = DetectorPair(delta_e=params["delta_e"],
                            alpha1=params["alpha"], alpha2=params["alpha"],
                            d=1.0, delta_x=1.0)
        if params["ramp_shape"] not in ("smooth", "linear"):
            raise ValueError("ramp_shape must be 'smooth' or 'linear'")
        if params["ramp_fraction"] < 0.0:
            raise ValueError("ramp_fraction must be >= 0")
        return model, pair
    raise ConfigError(f"unknown scenario {scenario!r}")


def _evaluate(scenario: str, params: dict, quad: QuadratureSpec | None):
    """Compute one point's ReducedElements plus extra diagnostic flags."""
    built = _construct(scenario, params)
    if scenario == "free":
        return free_matrix_elements(built, quad), []
    if scenario == "dirichlet":
        return dirichlet_elements(built, method=params["method"],
                                  quad=quad), []
    if scenario == "potential":
        return corrected_elements(built, quad), []
    if scenario == "thermal":
        return thermal_elements(built, quad), []
    model, pair = built
    h = build_truncated(model, pair, params["n_max"])
    _, exact = exact_ground_reduced(h)
    pert = matrix_elements_discrete(model, pair)
    scale = max(abs(pert.p1), abs(pert.p2), abs(complex(pert.f)), 1e-300)
    err = max(abs(exact.p1 - pert.p1), abs(exact.p2 - pert.p2),
              abs(exact.e - pert.e),
              abs(complex(exact.f) - complex(pert.f))) / scale
    flags = [f"pert_rel_err={err:.6e}"]
    if params["ramp_fraction"] > 0.0:
        bound = adiabatic_rate_bound(model, pair)
        ramp = RampSchedule.for_peak_rate(params["ramp_fraction"] * bound,
                                          shape=params["ramp_shape"])
        result = evolve_ramp(h, ramp)
        flags.append(f"fidelity={result.fidelity:.9f}")
    return exact, flags


def _sanitize(text: str) -> str:
    return text.replace(",", ";").replace("\n", " ")


def _point_worker(task):
    """One sweep point, safe to run in a worker process: returns the value
    mapping (or None on failure) and the flags list."""
    scenario, params, numerics = task
    quad = _quad_from_numerics(numerics)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        try:
            elems, flags = _evaluate(scenario, params, quad)
        except Exception as exc:
            return None, [f"error={type(exc).__name__}: "
                          f"{_sanitize(str(exc))}"]
    flags = list(flags)
    flags += [f"warning={_sanitize(str(w.message))}" for w in caught]
    n = negativity(elems)
    alpha = params["alpha"]
    values = {
        "p1": elems.p1,
        "p2": elems.p2,
        "abs_e": None if elems.e is None else abs(elems.e),
        "abs_f": abs(complex(elems.f)),
        "n": n,
        "k": normalized_k(n, alpha) if alpha > 0.0 else None,
    }
    return values, flags


# ---------------------------------------------------------------------------
# sweep driver
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SweepResult:
    """A finished table: '#' header lines, column names, and formatted
    cells, ready to serialize byte-identically."""

    columns: tuple[str, ...]
    rows: tuple[tuple[str, ...], ...]
    header: tuple[str, ...]

    def to_csv(self) -> str:
        lines = [f"# {line}" for line in self.header]
        lines.append(",".join(self.columns))
        lines.extend(",".join(row) for row in self.rows)
        return "\n".join(lines) + "\n"

    def column(self, name: str) -> list[str]:
        idx = self.columns.index(name)
        return [row[idx] for row in self.rows]


def _fmt(value: float) -> str:
    return f"{value:.12e}"


def _make_tasks(config: RunConfig) -> tuple[list, list[str]]:
    if config.sweep is None:
        return ([(config.scenario, dict(config.params), config.numerics)],
                ["0"])
    grid = config.sweep.grid()
    tasks = []
    for value in grid:
        point = dict(config.params)
        point[config.sweep.parameter] = float(value)
        tasks.append((config.scenario, point, config.numerics))
    return tasks, [_fmt(float(v)) for v in grid]


def run(config: RunConfig, jobs: int = 1,
        extra_header: tuple[str, ...] = ()) -> SweepResult:
    """Evaluate the configured sweep and assemble the output table.

    Scenario preconditions are checked for every grid point before any
    integral runs; if all points are invalid the run aborts (no table).
    Individual points that fail mid-sweep land in the flags column instead.
    Rows are written in grid order regardless of worker completion order,
    so repeated runs (at any ``jobs``) serialize identically.
    """
    tasks, abscissa = _make_tasks(config)

    construction_errors = []
    for _, point, _ in tasks:
        try:
            _construct(config.scenario, point)
            construction_errors.append(None)
        except Exception as exc:
            construction_errors.append(exc)
    first_error = next((e for e in construction_errors if e is not None),
                       None)
    if first_error is not None and all(e is not None
                                       for e in construction_errors):
        raise ValueError(
            f"scenario {config.scenario!r} preconditions fail for every "
            f"point: {first_error}")

    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_point_worker, tasks))
    else:
        outcomes = [_point_worker(task) for task in tasks]

    sweep_col = (config.sweep.parameter if config.sweep is not None
                 else "index")
    rows = []
    for cell, (values, flags) in zip(abscissa, outcomes):
        if values is None:
            cells = ["NA"] * 6
        else:
            cells = [_fmt(values["p1"]), _fmt(values["p2"]),
                     "NA" if values["abs_e"] is None
                     else _fmt(values["abs_e"]),
                     _fmt(values["abs_f"]), _fmt(values["n"]),
                     "NA" if values["k"] is None else _fmt(values["k"])]
        rows.append(tuple([cell] + cells + [";".join(flags)]))

    header = (f"pairfield {__version__}",) + tuple(extra_header) + (
        "config: " + json.dumps(config.resolved_mapping(), sort_keys=True),
    )
    return SweepResult(columns=(sweep_col,) + _COLUMNS, rows=tuple(rows),
                       header=header)


# ---------------------------------------------------------------------------
# figure data
# ---------------------------------------------------------------------------

def _figure_potential_worker(task):
    """Shared coupling-independent double integrals for one width."""
    params, sigma_b, numerics = task
    free = FreeFieldParams(pair=_symmetric_pair(params), m=params["m"])
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        integrals = reduced_pair_integrals(free, sigma_b,
                                           _quad_from_numerics(numerics))
    return integrals, [f"warning={_sanitize(str(w.message))}"
                       for w in caught]


def _free_single_row(params: dict, label: str, numerics: dict | None,
                     header_prefix: tuple[str, ...]) -> SweepResult:
    config = RunConfig(scenario="free", params=params, numerics=numerics)
    return run(config, extra_header=header_prefix + (f"curve: {label}",))


def _elements_row_cells(abscissa: str, elems, alpha: float,
                        flags: list[str]) -> tuple[str, ...]:
    n = negativity(elems)
    return (abscissa, _fmt(elems.p1), _fmt(elems.p2),
            "NA" if elems.e is None else _fmt(abs(elems.e)),
            _fmt(abs(complex(elems.f))), _fmt(n),
            _fmt(normalized_k(n, alpha)), ";".join(flags))


def _emit_potential_figure(figure_id: str, d: float, couplings, labels,
                           asymptote_couplings, asymptote_labels,
                           out_dir: Path, jobs: int,
                           numerics: dict | None) -> list[Path]:
    """Width sweeps for the Gaussian-potential figures.

    The corrections are linear in the coupling, so the expensive double
    integrals are evaluated once per width and reused across every curve;
    the zero-coupling baseline is the width-independent free value.
    """
    base_params = dict(_SCHEMAS["potential"])
    base_params.update(d=d, coupling=0.0)
    sigma_grid = np.geomspace(0.2, 20.0, 13)
    free = FreeFieldParams(pair=_symmetric_pair(base_params),
                           m=base_params["m"])
    quad = _quad_from_numerics(numerics)
    base_elems = free_matrix_elements(free, quad)

    tasks = [(base_params, float(s), numerics) for s in sigma_grid]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            integral_rows = list(pool.map(_figure_potential_worker, tasks))
    else:
        integral_rows = [_figure_potential_worker(t) for t in tasks]

    written = []
    alpha = base_params["alpha"]
    for index, (coupling, label) in enumerate(zip(couplings, labels),
                                              start=1):
        rows = []
        for sigma_b, (integrals, flags) in zip(sigma_grid, integral_rows):
            corr = corrections_from_integrals(free, coupling,
                                              float(sigma_b), integrals)
            params = PotentialParams(free=free, coupling=coupling,
                                     sigma_b=float(sigma_b))
            elems = corrected_elements(params, quad, base=base_elems,
                                       corrections=corr)
            rows.append(_elements_row_cells(_fmt(float(sigma_b)), elems,
                                            alpha, flags))
        config = RunConfig(scenario="potential",
                           params=dict(base_params, coupling=coupling),
                           sweep=Sweep("sigma_b", 0.2, 20.0, 13, "log"),
                           numerics=numerics)
        header = (f"pairfield {__version__}", f"figure: {figure_id}",
                  f"curve: {label}",
                  "config: " + json.dumps(config.resolved_mapping(),
                                          sort_keys=True))
        result = SweepResult(columns=("sigma_b",) + _COLUMNS,
                             rows=tuple(rows), header=header)
        written.append(_write_table(
            out_dir / f"{figure_id}_curve{index}.csv", result))

    for index, (coupling, label) in enumerate(
            zip(asymptote_couplings, asymptote_labels), start=1):
        params = dict(_SCHEMAS["free"])
        params.update(d=d, m=effective_mass(base_params["m"], coupling))
        result = _free_single_row(params, label, numerics,
                                  (f"figure: {figure_id}",))
        written.append(_write_table(
            out_dir / f"{figure_id}_asymptote{index}.csv", result))
    return written


def _write_table(path: Path, result: SweepResult) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(result.to_csv())
    return path


def emit_figure_data(figure_id: str, out_dir: Path | str, jobs: int = 1,
                     numerics: dict | None = None) -> list[Path]:
    """Write the per-curve CSV tables behind one standard figure.

    fig2/fig3: plate-confined K over the separation-to-spacing ratio, one
    curve per gap value.  fig4/fig5: Gaussian-potential K over the
    potential width, attractive/repulsive curves plus wide-limit
    mass-shift asymptotes.  fig6: thermal K over temperature, one curve
    per gap-separation product.
    """
    out_dir = Path(out_dir)
    if figure_id in ("fig2", "fig3"):
        orientation = "perpendicular" if figure_id == "fig2" else "parallel"
        gamma_stop = 0.99 if figure_id == "fig2" else 2.0
        written = []
        for index, eps in enumerate((0.015, 0.02, 0.03), start=1):
            config = RunConfig(
                scenario="dirichlet",
                params=dict(_SCHEMAS["dirichlet"], eps=eps,
                            orientation=orientation),
                sweep=Sweep("gamma", 0.01, gamma_stop, 60, "log"),
                numerics=numerics)
            result = run(config, jobs=jobs,
                         extra_header=(f"figure: {figure_id}",
                                       f"curve: eps = {eps}"))
            written.append(_write_table(
                out_dir / f"{figure_id}_curve{index}.csv", result))
        return written
    if figure_id == "fig4":
        return _emit_potential_figure(
            "fig4", d=0.5, couplings=(-0.01, 0.0, 0.01),
            labels=("lambda V0 / m^2 = -0.01", "lambda V0 / m^2 = 0",
                    "lambda V0 / m^2 = +0.01"),
            asymptote_couplings=(-0.01, 0.01),
            asymptote_labels=("N(m -> sqrt(1 - 1/50) m)",
                              "N(m -> sqrt(1 + 1/50) m)"),
            out_dir=out_dir, jobs=jobs, numerics=numerics)
    if figure_id == "fig5":
        base = dict(_SCHEMAS["free"], d=1.0)
        free = FreeFieldParams(pair=_symmetric_pair(base), m=base["m"])
        d_star = critical_separation(free, 0.5, 1.5)
        return _emit_potential_figure(
            "fig5", d=d_star, couplings=(-0.01, 0.01),
            labels=("lambda V0 / m^2 = -0.01", "lambda V0 / m^2 = +0.01"),
            asymptote_couplings=(-0.01,),
            asymptote_labels=("N(m -> sqrt(1 - 1/50) m)",),
            out_dir=out_dir, jobs=jobs, numerics=numerics)
    if figure_id == "fig6":
        written = []
        for index, (eps, d) in enumerate(
                ((0.07, 0.7), (0.075, 0.75), (0.08, 0.8)), start=1):
            config = RunConfig(
                scenario="thermal",
                params=dict(_SCHEMAS["thermal"], d=d),
                sweep=Sweep("theta", 0.0, 0.2, 50, "linear"),
                numerics=numerics)
            result = run(config, jobs=jobs,
                         extra_header=("figure: fig6",
                                       f"curve: eps = {eps}"))
            written.append(_write_table(out_dir / f"fig6_curve{index}.csv",
                                        result))
        return written
    raise ConfigError(f"unknown figure id {figure_id!r}; expected one of "
                      f"{FIGURE_IDS}")


# ---------------------------------------------------------------------------
# argument handling
# ---------------------------------------------------------------------------

def _apply_dotted(mapping: dict, dotted: str, value) -> None:
    parts = dotted.split(".")
    node = mapping
    for part in parts[:-1]:
        nxt = node.get(part)
        if not isinstance(nxt, dict):
            nxt = {}
            node[part] = nxt
        node = nxt
    node[parts[-1]] = value


def _parse_set(items: list[str]) -> list[tuple[str, object]]:
    parsed = []
    for item in items:
        key, sep, raw = item.partition("=")
        if not sep or not key:
            raise ConfigError(f"--set expects key=value, got {item!r}")
        try:
            value = yaml.safe_load(raw)
        except yaml.YAMLError as exc:
            raise ConfigError(f"cannot parse --set value {raw!r}: {exc}")
        parsed.append((key, value))
    return parsed


def _error_record(kind: str, exc: BaseException) -> None:
    record = {"error": kind, "type": type(exc).__name__,
              "message": str(exc)}
    print(json.dumps(record, sort_keys=True), file=sys.stderr)


def _add_scenario_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", metavar="PATH",
                        help="YAML run configuration")
    parser.add_argument("--set", metavar="KEY=VALUE", action="append",
                        default=[], dest="overrides",
                        help="override a config entry (dotted keys, "
                             "repeatable)")
    parser.add_argument("--out", metavar="PATH",
                        help="output CSV path (default: stdout)")
    parser.add_argument("--jobs", type=int, default=1, metavar="N",
                        help="parallel workers for sweep points")
    parser.add_argument("--tol-rel", type=float, metavar="X",
                        help="relative quadrature tolerance override")
    parser.add_argument("--tol-abs", type=float, metavar="X",
                        help="absolute quadrature tolerance override")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pairfield",
        description="Ground-state entanglement of two field-coupled "
                    "detectors: scenario sweeps and figure data.")
    sub = parser.add_subparsers(dest="command", required=True)
    descriptions = {
        "free": "free-space scenario",
        "dirichlet": "field confined between two parallel planes",
        "potential": "weak Gaussian potential between the detectors",
        "thermal": "field in a thermal state",
        "verify": "exact-diagonalization benchmark of a discrete model",
    }
    for name, text in descriptions.items():
        _add_scenario_flags(sub.add_parser(name, help=text))
    figures = sub.add_parser("figures",
                             help="emit the data tables behind the "
                                  "standard figures")
    figures.add_argument("figure_id", choices=FIGURE_IDS + ("all",))
    figures.add_argument("--out", metavar="DIR", default="figure_data",
                         help="output directory")
    figures.add_argument("--jobs", type=int, default=1, metavar="N")
    figures.add_argument("--tol-rel", type=float, metavar="X")
    figures.add_argument("--tol-abs", type=float, metavar="X")
    return parser


def _numerics_from_args(args) -> dict | None:
    numerics = {}
    if args.tol_rel is not None:
        numerics["tol_rel"] = args.tol_rel
    if args.tol_abs is not None:
        numerics["tol_abs"] = args.tol_abs
    return numerics or None


def _run_scenario_command(args) -> int:
    mapping: dict = {}
    if args.config:
        try:
            loaded = yaml.safe_load(Path(args.config).read_text())
        except OSError as exc:
            raise ConfigError(f"cannot read config {args.config!r}: {exc}")
        except yaml.YAMLError as exc:
            raise ConfigError(f"cannot parse config {args.config!r}: "
                              f"{exc}")
        if loaded is not None:
            if not isinstance(loaded, dict):
                raise ConfigError("configuration root must be a mapping")
            mapping = loaded
    configured = mapping.get("scenario")
    if configured is not None and configured != args.command:
        raise ConfigError(
            f"config file selects scenario {configured!r} but the "
            f"subcommand is {args.command!r}")
    mapping["scenario"] = args.command
    for key, value in _parse_set(args.overrides):
        _apply_dotted(mapping, key, value)
    numerics = _numerics_from_args(args)
    if numerics:
        mapping.setdefault("numerics", {}).update(numerics)
    if args.out:
        mapping["output"] = args.out

    config = config_from_mapping(mapping)
    result = run(config, jobs=args.jobs)
    text = result.to_csv()
    if config.output:
        path = Path(config.output)
        if path.parent != Path(""):
            path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def _run_figures_command(args) -> int:
    ids = FIGURE_IDS if args.figure_id == "all" else (args.figure_id,)
    numerics = _numerics_from_args(args)
    for figure_id in ids:
        for path in emit_figure_data(figure_id, args.out, jobs=args.jobs,
                                     numerics=numerics):
            print(path)
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "figures":
            return _run_figures_command(args)
        return _run_scenario_command(args)
    except ConfigError as exc:
        _error_record("config", exc)
        return 2
    except Exception as exc:  # noqa: BLE001 - boundary of the process
        _error_record("runtime", exc)
        return 1


if __name__ == "__main__":
    sys.exit(main())
