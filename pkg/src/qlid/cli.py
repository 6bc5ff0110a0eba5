"""Command line entry points wrapping the fitting workflows.

Subcommands: ``fit`` (estimators to comparison tables and plot data),
``sweep`` (tuning-constant grids), ``simulate`` (order-statistic mean
samples), ``inject`` (outlier protocol), ``bins`` (edge counting), and
``plot`` (plot data from a previous fit report).  Settings come from an
optional TOML config file with command-line flags taking precedence.

Exit codes: 0 on success, 1 when the run completed but some fit failed or
errored, 2 on usage, configuration, or data errors.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
import time
from pathlib import Path

import numpy as np

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from . import __version__
from .contamination import artificial_mean_sample, bin_count, inject_outliers
from .criteria import compare
from .distributions import FAMILY_PARAMS, DistributionSpec, Family
from .estimating import EstimatorKind, EstimatorSpec
from .fitting import FitResult, fit_estimator
from .optimize import Bounds, OptConfig
from .plots import emit_plot_data
from .sample import IngestResult, Support, ingest

EXIT_OK = 0
EXIT_FIT_FAILURES = 1
EXIT_USAGE = 2

# Offsets mixed into the base seed so every fit gets its own stream while
# remaining reproducible from the single --seed value.
_SEED_SPEC_STRIDE = 7919
_SEED_OUTLIER_OFFSET = 104729
_SEED_SWEEP_BINS_OFFSET = 50000

_TEMPLATE_DEFAULTS = {
    Family.WEIBULL: {"a": 1.0, "b": 1.0},
    Family.GAMMA: {"a": 1.0, "b": 1.0},
    Family.BURR3: {"a": 1.0, "b": 1.0},
    Family.EP: {"mu": 0.0, "sigma": 1.0, "p": 2.0, "eta": 1.0},
    Family.GT: {"mu": 0.0, "sigma": 1.0, "p": 2.0, "nu": 1.0},
}

_DEFAULT_FREE = {
    Family.WEIBULL: ("a", "b"),
    Family.GAMMA: ("a", "b"),
    Family.BURR3: ("a", "b"),
    Family.EP: ("mu", "sigma"),
    Family.GT: ("mu", "sigma"),
}


class CliError(Exception):
    """Usage or configuration problem; maps to exit code 2."""


# -- small parsers ----------------------------------------------------------


def _parse_float_list(text: str, flag: str) -> list[float]:
    out = []
    for cell in text.split(","):
        cell = cell.strip()
        if not cell:
            continue
        try:
            out.append(float(cell))
        except ValueError:
            raise CliError(f"{flag}: cannot parse {cell!r} as a number") from None
    if not out:
        raise CliError(f"{flag}: no values given")
    return out


def _parse_params(text: str, flag: str) -> dict:
    out = {}
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        if "=" not in item:
            raise CliError(f"{flag}: expected name=value, got {item!r}")
        name, _, value = item.partition("=")
        try:
            out[name.strip()] = float(value)
        except ValueError:
            raise CliError(f"{flag}: cannot parse {value!r} as a number") from None
    return out


def _parse_bounds(text: str) -> dict:
    out = {}
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        if "=" not in item or ":" not in item:
            raise CliError(f"--bounds: expected name=lo:hi, got {item!r}")
        name, _, span = item.partition("=")
        lo_text, _, hi_text = span.partition(":")
        try:
            out[name.strip()] = (float(lo_text), float(hi_text))
        except ValueError:
            raise CliError(f"--bounds: cannot parse {span!r} as lo:hi") from None
    return out


def _load_config(path) -> dict:
    if path is None:
        return {}
    file_path = Path(path)
    if not file_path.exists():
        raise CliError(f"config file not found: {path}")
    try:
        with open(file_path, "rb") as handle:
            return tomllib.load(handle)
    except tomllib.TOMLDecodeError as exc:
        raise CliError(f"config file {path}: {exc}") from None


def _json_safe(obj):
    """JSON-serializable copy: numpy scalars unboxed, non-finite -> null."""
    if isinstance(obj, dict):
        return {str(k): _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_safe(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_json_safe(v) for v in obj.tolist()]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        obj = float(obj)
    if isinstance(obj, float):
        return obj if np.isfinite(obj) else None
    return obj


def _write_json(path: Path, payload: dict):
    path.write_text(json.dumps(_json_safe(payload), indent=2, sort_keys=True) + "\n")


# -- shared resolution ------------------------------------------------------


def _resolve(ns_value, cfg: dict, key: str, default):
    if ns_value is not None:
        return ns_value
    return cfg.get(key, default)


def _load_sample(ns, run_cfg: dict) -> tuple[IngestResult, str]:
    data = _resolve(getattr(ns, "data", None), run_cfg, "data", None)
    if data is None:
        raise CliError("no input data: pass --data or set run.data in the config")
    support = _resolve(getattr(ns, "support", None), run_cfg, "support", "auto")
    try:
        return ingest(data, support), str(data)
    except FileNotFoundError:
        raise CliError(f"data file not found: {data}") from None
    except (OSError, ValueError) as exc:
        raise CliError(f"cannot read {data}: {exc}") from None


def _resolve_edges(ns, run_cfg: dict) -> list[float] | None:
    if getattr(ns, "edges", None) is not None:
        return _parse_float_list(ns.edges, "--edges")
    edges = run_cfg.get("edges")
    if edges is None:
        return None
    try:
        return [float(e) for e in edges]
    except (TypeError, ValueError):
        raise CliError("config run.edges must be a list of numbers") from None


def _resolve_seed(ns, run_cfg: dict) -> int:
    seed = _resolve(getattr(ns, "seed", None), run_cfg, "seed", 0)
    try:
        return int(seed)
    except (TypeError, ValueError):
        raise CliError(f"seed must be an integer, got {seed!r}") from None


def _resolve_out_dir(ns, run_cfg: dict, default: str = "qlid-out") -> Path:
    return Path(_resolve(getattr(ns, "out_dir", None), run_cfg, "out_dir", default))


def _opt_config(cfg_optimizer: dict, ns, seed: int) -> OptConfig:
    kwargs = dict(cfg_optimizer)
    for name in (
        "population",
        "generations",
        "elite_fraction",
        "crossover_fraction",
        "mutation_scale",
        "polish_tol",
        "restarts",
    ):
        value = getattr(ns, name, None)
        if value is not None:
            kwargs[name] = value
    kwargs["seed"] = seed
    try:
        return OptConfig(**kwargs)
    except (TypeError, ValueError) as exc:
        raise CliError(f"optimizer settings: {exc}") from None


def _bounds_for(free, cfg_bounds: dict, bounds_text) -> Bounds:
    overrides = {}
    for name, pair in (cfg_bounds or {}).items():
        try:
            lo, hi = float(pair[0]), float(pair[1])
        except (TypeError, ValueError, IndexError):
            raise CliError(f"config bounds.{name} must be a [lo, hi] pair") from None
        overrides[name] = (lo, hi)
    if bounds_text:
        overrides.update(_parse_bounds(bounds_text))
    try:
        return Bounds.for_params(tuple(free), overrides)
    except ValueError as exc:
        raise CliError(f"bounds: {exc}") from None


# -- estimator construction -------------------------------------------------


def _family(name: str) -> Family:
    try:
        return Family(str(name))
    except ValueError:
        options = ", ".join(f.value for f in Family)
        raise CliError(f"unknown family {name!r}; choose from: {options}") from None


def _density_template(family_name: str, overrides: dict | None) -> DistributionSpec:
    family = _family(family_name)
    params = dict(_TEMPLATE_DEFAULTS[family])
    for name, value in (overrides or {}).items():
        if name not in FAMILY_PARAMS[family]:
            raise CliError(
                f"family {family.value} has no parameter {name!r}; "
                f"expected {FAMILY_PARAMS[family]}"
            )
        params[name] = float(value)
    try:
        return DistributionSpec(family, params)
    except ValueError as exc:
        raise CliError(str(exc)) from None


def _estimator_from_mapping(mapping: dict) -> EstimatorSpec:
    kind_name = mapping.get("kind")
    if kind_name is None:
        raise CliError("estimator needs a kind (mle, mqle, lid-log, lid-logq, huber)")
    try:
        kind = EstimatorKind(str(kind_name))
    except ValueError:
        options = ", ".join(k.value for k in EstimatorKind)
        raise CliError(f"unknown estimator kind {kind_name!r}; choose from: {options}") from None

    params0 = dict(mapping.get("params0", {}))
    params1 = dict(mapping.get("params1", {}))
    if kind is EstimatorKind.HUBER:
        family0 = mapping.get("family0", "ep")
        family1 = mapping.get("family1", "ep")
        if family0 == "ep" and "p" not in params0:
            params0.setdefault("p", 2.0)
            params0.setdefault("eta", 2.0)
        if family1 == "ep" and "p" not in params1:
            params1.setdefault("p", 1.0)
            params1.setdefault("eta", 1.0)
        f0 = _density_template(family0, params0)
        f1 = _density_template(family1, params1)
        free = ("mu", "sigma")
    else:
        family0 = mapping.get("family0")
        if family0 is None:
            raise CliError(f"{kind.value} estimator needs family0")
        f0 = _density_template(family0, params0)
        free = tuple(mapping.get("free") or _DEFAULT_FREE[f0.family])
        f1 = None
        if kind in (EstimatorKind.LID_LOG, EstimatorKind.LID_LOGQ):
            family1 = mapping.get("family1")
            if family1 is None:
                raise CliError(f"{kind.value} estimator needs family1")
            f1 = _density_template(family1, params1)
    try:
        return EstimatorSpec(
            kind=kind,
            f0=f0,
            f1=f1,
            free=free,
            q=mapping.get("q"),
            u=mapping.get("u"),
        )
    except ValueError as exc:
        raise CliError(f"estimator: {exc}") from None


def _estimator_mapping_from_flags(ns) -> dict | None:
    if getattr(ns, "estimator", None) is None:
        return None
    mapping: dict = {"kind": ns.estimator}
    for key in ("family0", "family1", "q", "u"):
        value = getattr(ns, key, None)
        if value is not None:
            mapping[key] = value
    params0, params1 = {}, {}
    if getattr(ns, "p0", None) is not None:
        params0["p"] = ns.p0
    if getattr(ns, "p1", None) is not None:
        params1["p"] = ns.p1
    if getattr(ns, "eta", None) is not None:
        params0["eta"] = ns.eta
        params1["eta"] = ns.eta
    if getattr(ns, "nu", None) is not None:
        params0["nu"] = ns.nu
        params1["nu"] = ns.nu
    if params0:
        mapping["params0"] = params0
    if params1:
        mapping["params1"] = params1
    if getattr(ns, "free", None) is not None:
        mapping["free"] = [name.strip() for name in ns.free.split(",") if name.strip()]
    return mapping


def _estimator_mappings(ns, cfg: dict) -> list[dict]:
    flag_mapping = _estimator_mapping_from_flags(ns)
    if flag_mapping is not None:
        return [flag_mapping]
    mappings = cfg.get("estimator", [])
    if isinstance(mappings, dict):
        mappings = [mappings]
    if not mappings:
        raise CliError(
            "no estimator specified: pass --estimator or add [[estimator]] entries "
            "to the config"
        )
    return [dict(m) for m in mappings]


def _fitted_density(template: DistributionSpec, theta: dict) -> DistributionSpec:
    updates = {k: v for k, v in theta.items() if k in FAMILY_PARAMS[template.family]}
    return template.with_params(**updates)


def _fit_record(fit: FitResult, data_label: str) -> dict:
    spec = fit.spec
    diagnostics = fit.diagnostics
    record = {
        "label": fit.report.label,
        "kind": spec.kind.value,
        "condition": fit.report.condition,
        "free": list(spec.free),
        "theta": fit.theta,
        "objective": fit.objective,
        "criteria": fit.report.criteria,
        "k": fit.report.k,
        "n": fit.report.n,
        "seed": fit.seed,
        "success": fit.success,
        "boundary": fit.boundary,
        "degenerate": fit.degenerate,
        "q": spec.q,
        "u": spec.u,
        "data": data_label,
        "f0": {
            "family": spec.f0.family.value,
            "params": _fitted_density(spec.f0, fit.theta).params if fit.success else spec.f0.params,
        },
        "f1": None,
        "diagnostics": {
            "evaluations": diagnostics.get("evaluations"),
            "infeasible_evaluations": diagnostics.get("infeasible_evaluations"),
            "restart_best": [r["best_value"] for r in diagnostics.get("restarts", [])],
            "polish": {
                k: v
                for k, v in diagnostics.get("polish", {}).items()
                if k in ("attempted", "improved", "value", "iterations")
            },
        },
    }
    if spec.f1 is not None:
        record["f1"] = {
            "family": spec.f1.family.value,
            "params": _fitted_density(spec.f1, fit.theta).params if fit.success else spec.f1.params,
        }
    return record


def _meta_payload(out_dir: Path, started: float, argv) -> dict:
    return {
        "version": __version__,
        "out_dir": str(out_dir.resolve()),
        "argv": list(argv) if argv is not None else sys.argv[1:],
        "started_utc": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime(started)),
        "elapsed_seconds": round(time.time() - started, 3),
    }


def _condition_label(sample, contaminated) -> str:
    extra = contaminated.n - sample.n
    return f"{extra} outlier" + ("s" if extra != 1 else "")


# -- subcommands ------------------------------------------------------------


def cmd_fit(ns, argv) -> int:
    started = time.time()
    cfg = _load_config(ns.config)
    run_cfg = cfg.get("run", {})
    ingest_result, data_label = _load_sample(ns, run_cfg)
    sample = ingest_result.sample
    seed = _resolve_seed(ns, run_cfg)
    out_dir = _resolve_out_dir(ns, run_cfg)
    edges = _resolve_edges(ns, run_cfg)
    outliers = bool(getattr(ns, "outliers", False) or run_cfg.get("outliers", False))
    specs = [_estimator_from_mapping(m) for m in _estimator_mappings(ns, cfg)]
    optimizer_cfg = cfg.get("optimizer", {})
    bounds_cfg = cfg.get("bounds", {})

    contaminated = inject_outliers(sample) if outliers else None
    fits: list[FitResult] = []
    for index, spec in enumerate(specs):
        bounds = _bounds_for(spec.free, bounds_cfg, getattr(ns, "bounds", None))
        config = _opt_config(optimizer_cfg, ns, seed + _SEED_SPEC_STRIDE * index)
        fits.append(fit_estimator(sample, spec, bounds, config, condition="clean"))
        if contaminated is not None:
            config_out = _opt_config(
                optimizer_cfg, ns, seed + _SEED_SPEC_STRIDE * index + _SEED_OUTLIER_OFFSET
            )
            fits.append(
                fit_estimator(
                    contaminated,
                    spec,
                    bounds,
                    config_out,
                    condition=_condition_label(sample, contaminated),
                )
            )

    table = compare([fit.report for fit in fits])
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "comparison.txt").write_text(table.to_text())
    (out_dir / "comparison.csv").write_text(table.to_csv())
    report = {
        "command": "fit",
        "data": data_label,
        "n": sample.n,
        "support": sample.support.value,
        "seed": seed,
        "outliers": outliers,
        "edges": edges,
        "skipped_lines": ingest_result.n_skipped,
        "results": [_fit_record(fit, data_label) for fit in fits],
    }
    _write_json(out_dir / "report.json", report)
    _write_json(out_dir / "meta.json", _meta_payload(out_dir, started, argv))

    if edges is not None:
        clean = [f for f in fits if f.report.condition == "clean" and f.success]
        emit_plot_data(
            sample,
            [(f.report.label, _fitted_density(f.spec.f0, f.theta)) for f in clean],
            edges,
            out_dir / "plots",
        )
        if contaminated is not None:
            dirty = [f for f in fits if f.report.condition != "clean" and f.success]
            emit_plot_data(
                contaminated,
                [(f.report.label, _fitted_density(f.spec.f0, f.theta)) for f in dirty],
                edges,
                out_dir / "plots-outliers",
            )

    sys.stdout.write(table.to_text())
    failures = [fit for fit in fits if not fit.success]
    for fit in failures:
        print(f"warning: fit failed (all points infeasible): {fit.report.label}", file=sys.stderr)
    for fit in fits:
        if fit.degenerate:
            print(f"warning: degenerate objective (f1 == f0): {fit.report.label}", file=sys.stderr)
        elif fit.success and fit.boundary:
            pinned = ", ".join(fit.boundary)
            print(f"note: {fit.report.label}: {pinned} at search-box boundary", file=sys.stderr)
    print(f"wrote {out_dir}")
    return EXIT_FIT_FAILURES if failures else EXIT_OK


def _sweep_grids(ns, sweep_cfg: dict, kind: EstimatorKind) -> list[dict]:
    """Cartesian tuning grid as a list of override mappings."""

    def grid(flag_value, key) -> list:
        if flag_value is not None:
            return _parse_float_list(flag_value, f"--{key}-grid")
        values = sweep_cfg.get(key)
        if values is None:
            return [None]
        return [float(v) for v in values]

    qs = grid(getattr(ns, "q_grid", None), "q")
    us = grid(getattr(ns, "u_grid", None), "u")
    p0s = grid(getattr(ns, "p0_grid", None), "p0")
    p1s = grid(getattr(ns, "p1_grid", None), "p1")
    if kind in (EstimatorKind.MLE, EstimatorKind.LID_LOG):
        qs = [None]
    if kind is not EstimatorKind.HUBER:
        us = [None]
    else:
        qs = [None]
    combos = []
    for q, u, p0, p1 in itertools.product(qs, us, p0s, p1s):
        overrides: dict = {}
        if q is not None:
            overrides["q"] = q
        if u is not None:
            overrides["u"] = u
        if p0 is not None:
            overrides.setdefault("params0", {})["p"] = p0
        if p1 is not None:
            overrides.setdefault("params1", {})["p"] = p1
        combos.append(overrides)
    return combos


def _apply_overrides(base: dict, overrides: dict) -> dict:
    mapping = {k: (dict(v) if isinstance(v, dict) else v) for k, v in base.items()}
    for key, value in overrides.items():
        if key in ("params0", "params1"):
            merged = dict(mapping.get(key, {}))
            merged.update(value)
            mapping[key] = merged
        else:
            mapping[key] = value
    return mapping


def cmd_sweep(ns, argv) -> int:
    started = time.time()
    cfg = _load_config(ns.config)
    run_cfg = cfg.get("run", {})
    ingest_result, data_label = _load_sample(ns, run_cfg)
    sample = ingest_result.sample
    seed = _resolve_seed(ns, run_cfg)
    out_dir = _resolve_out_dir(ns, run_cfg)
    edges = _resolve_edges(ns, run_cfg)
    sweep_cfg = cfg.get("sweep", {})
    base_mapping = _estimator_mappings(ns, cfg)[0]
    base_kind = base_mapping.get("kind")
    if base_kind is None:
        raise CliError("sweep needs a base estimator kind")
    try:
        kind = EstimatorKind(str(base_kind))
    except ValueError:
        options = ", ".join(k.value for k in EstimatorKind)
        raise CliError(f"unknown estimator kind {base_kind!r}; choose from: {options}") from None
    combos = _sweep_grids(ns, sweep_cfg, kind)
    optimizer_cfg = cfg.get("optimizer", {})
    bounds_cfg = cfg.get("bounds", {})
    bin_replications = int(sweep_cfg.get("replications", 2000))

    rows = []
    for index, overrides in enumerate(combos):
        mapping = _apply_overrides(base_mapping, overrides)
        row: dict = {"overrides": overrides}
        try:
            spec = _estimator_from_mapping(mapping)
            bounds = _bounds_for(spec.free, bounds_cfg, getattr(ns, "bounds", None))
            config = _opt_config(optimizer_cfg, ns, seed + _SEED_SPEC_STRIDE * index)
            fit = fit_estimator(sample, spec, bounds, config, condition="clean")
            row["fit"] = fit
            if not fit.success:
                row["error"] = "fit failed: all evaluated points were infeasible"
        except CliError as exc:
            row["error"] = str(exc)
        rows.append(row)

    # Rank fitted rows within their comparability class; error rows sink to
    # the bottom in input order.
    fitted = [r for r in rows if "fit" in r and "error" not in r]
    errored = [r for r in rows if r not in fitted]
    class_order: list[tuple] = []
    grouped: dict[tuple, list[dict]] = {}
    for row in fitted:
        key = row["fit"].spec.comparability_class()
        if key not in grouped:
            grouped[key] = []
            class_order.append(key)
        grouped[key].append(row)
    ordered = []
    for key in class_order:
        ordered.extend(sorted(grouped[key], key=lambda r: r["fit"].report.akaike[1]))
    ordered.extend(errored)

    if edges is not None:
        for offset, row in enumerate(ordered):
            fit = row.get("fit")
            if fit is None or not fit.success:
                continue
            f0_fitted = _fitted_density(fit.spec.f0, fit.theta)
            if f0_fitted.support is not Support.HALF_LINE:
                row["bins"] = "-"
                continue
            mean_sample = artificial_mean_sample(
                f0_fitted,
                n=sample.n,
                replications=bin_replications,
                seed=seed + _SEED_SWEEP_BINS_OFFSET + offset,
            )
            counts = bin_count(mean_sample, edges).counts
            row["bins"] = "/".join(str(int(c)) for c in counts)

    out_dir.mkdir(parents=True, exist_ok=True)
    header = ["label", "estimates", "objective", "AIC|RAIC_q", "BIC|RBIC_q", "bins", "error"]
    text_rows, csv_rows, json_rows = [], [], []
    for row in ordered:
        fit = row.get("fit")
        if fit is not None:
            rep = fit.report
            estimates = ", ".join(f"{k}={v:.4f}" for k, v in rep.theta.items())
            text_rows.append(
                [
                    rep.label,
                    estimates,
                    f"{rep.objective:.4f}",
                    f"{rep.akaike[0]}={rep.akaike[1]:.4f}",
                    f"{rep.bayes[0]}={rep.bayes[1]:.4f}",
                    row.get("bins", ""),
                    row.get("error", ""),
                ]
            )
            csv_rows.append(
                [
                    f'"{rep.label}"',
                    f'"{";".join(f"{k}={float(v)!r}" for k, v in rep.theta.items())}"',
                    repr(rep.objective),
                    repr(rep.akaike[1]),
                    repr(rep.bayes[1]),
                    row.get("bins", ""),
                    f'"{row.get("error", "")}"',
                ]
            )
            record = _fit_record(fit, data_label)
            record["bins"] = row.get("bins")
            record["error"] = row.get("error")
            json_rows.append(record)
        else:
            label = f"{base_kind} sweep point {row['overrides']}"
            text_rows.append([label, "", "", "", "", "", row["error"]])
            csv_rows.append([f'"{label}"', "", "", "", "", "", f'"{row["error"]}"'])
            json_rows.append({"label": label, "overrides": row["overrides"], "error": row["error"]})

    widths = [max(len(r[i]) for r in [header] + text_rows) for i in range(len(header))]
    lines = [
        "  ".join(cell.ljust(w) for cell, w in zip(record, widths)).rstrip()
        for record in [header] + text_rows
    ]
    (out_dir / "sweep.txt").write_text("\n".join(lines) + "\n")
    csv_header = "label,estimates,objective,akaike,bayes,bins,error"
    (out_dir / "sweep.csv").write_text(
        "\n".join([csv_header] + [",".join(r) for r in csv_rows]) + "\n"
    )
    report = {
        "command": "sweep",
        "data": data_label,
        "n": sample.n,
        "support": sample.support.value,
        "seed": seed,
        "edges": edges,
        "base": {k: v for k, v in base_mapping.items()},
        "bin_replications": bin_replications if edges is not None else None,
        "results": json_rows,
    }
    _write_json(out_dir / "report.json", report)
    _write_json(out_dir / "meta.json", _meta_payload(out_dir, started, argv))
    sys.stdout.write("\n".join(lines) + "\n")
    print(f"wrote {out_dir}")
    had_errors = any("error" in row for row in rows)
    return EXIT_FIT_FAILURES if had_errors else EXIT_OK


def cmd_simulate(ns, argv) -> int:
    started = time.time()
    cfg = _load_config(ns.config)
    run_cfg = cfg.get("run", {})
    sim_cfg = cfg.get("simulate", {})
    family_name = _resolve(ns.family0, sim_cfg, "family", None)
    if family_name is None:
        raise CliError("simulate needs a family: pass --family0 or set simulate.family")
    params = dict(sim_cfg.get("params", {}))
    if ns.params is not None:
        params.update(_parse_params(ns.params, "--params"))
    f0 = _density_template(family_name, params)
    n = int(_resolve(ns.n, sim_cfg, "n", 90))
    replications = int(_resolve(ns.replications, sim_cfg, "replications", 10000))
    workers = int(_resolve(ns.workers, sim_cfg, "workers", 1))
    seed = _resolve_seed(ns, {**run_cfg, **({"seed": sim_cfg["seed"]} if "seed" in sim_cfg else {})})
    out_dir = _resolve_out_dir(ns, run_cfg)
    edges = _resolve_edges(ns, run_cfg)
    try:
        mean_sample = artificial_mean_sample(f0, n, replications, seed, workers)
    except ValueError as exc:
        raise CliError(str(exc)) from None

    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "mean_sample.txt").write_text(
        "\n".join(repr(v) for v in mean_sample.values.tolist()) + "\n"
    )
    report = {
        "command": "simulate",
        "family": f0.family.value,
        "params": f0.params,
        "n": n,
        "replications": replications,
        "workers": workers,
        "seed": seed,
        "mean_of_means": float(np.mean(mean_sample.values)),
        "min": float(mean_sample.values[0]),
        "max": float(mean_sample.values[-1]),
    }
    if edges is not None:
        counts = bin_count(mean_sample, edges)
        (out_dir / "bins.csv").write_text(counts.to_csv())
        report["bin_counts"] = [int(c) for c in counts.counts]
        report["out_of_range"] = counts.out_of_range
    _write_json(out_dir / "report.json", report)
    _write_json(out_dir / "meta.json", _meta_payload(out_dir, started, argv))
    print(
        f"simulated rank means: {f0.label()} n={n} replications={replications} "
        f"-> {out_dir / 'mean_sample.txt'}"
    )
    return EXIT_OK


def cmd_inject(ns, argv) -> int:
    started = time.time()
    cfg = _load_config(ns.config)
    run_cfg = cfg.get("run", {})
    ingest_result, data_label = _load_sample(ns, run_cfg)
    sample = ingest_result.sample
    out_dir = _resolve_out_dir(ns, run_cfg)
    contaminated = inject_outliers(sample)
    appended = contaminated.values[sample.n :]
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "injected.txt").write_text(
        "\n".join(repr(v) for v in contaminated.values.tolist()) + "\n"
    )
    report = {
        "command": "inject",
        "data": data_label,
        "support": sample.support.value,
        "n_before": sample.n,
        "n_after": contaminated.n,
        "appended": [float(v) for v in appended],
    }
    _write_json(out_dir / "report.json", report)
    _write_json(out_dir / "meta.json", _meta_payload(out_dir, started, argv))
    values = ", ".join(f"{v:g}" for v in appended)
    print(f"appended {appended.size} outlier(s): {values} -> {out_dir / 'injected.txt'}")
    return EXIT_OK


def cmd_bins(ns, argv) -> int:
    cfg = _load_config(ns.config)
    run_cfg = cfg.get("run", {})
    ingest_result, _ = _load_sample(ns, run_cfg)
    edges = _resolve_edges(ns, run_cfg)
    if edges is None:
        raise CliError("bins needs --edges (or run.edges in the config)")
    try:
        report = bin_count(ingest_result.sample, edges)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    sys.stdout.write(report.to_csv())
    if ns.out_dir is not None:
        out_dir = Path(ns.out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        (out_dir / "bins.csv").write_text(report.to_csv())
    return EXIT_OK


def cmd_plot(ns, argv) -> int:
    started = time.time()
    cfg = _load_config(ns.config)
    run_cfg = cfg.get("run", {})
    ingest_result, data_label = _load_sample(ns, run_cfg)
    sample = ingest_result.sample
    out_dir = _resolve_out_dir(ns, run_cfg)
    report_path = ns.report
    if report_path is None:
        raise CliError("plot needs --report pointing at a fit report.json")
    try:
        payload = json.loads(Path(report_path).read_text())
    except FileNotFoundError:
        raise CliError(f"report file not found: {report_path}") from None
    except (OSError, json.JSONDecodeError) as exc:
        raise CliError(f"cannot read report {report_path}: {exc}") from None
    edges = _resolve_edges(ns, run_cfg)
    if edges is None:
        edges = payload.get("edges")
    if edges is None:
        raise CliError("plot needs bin edges: pass --edges or use a report that has them")
    curves = []
    for record in payload.get("results", []):
        if record.get("error") or not record.get("success"):
            continue
        if record.get("condition", "clean") != "clean":
            continue
        f0 = record.get("f0")
        if not f0:
            continue
        try:
            spec = DistributionSpec(_family(f0["family"]), f0["params"])
        except (KeyError, ValueError) as exc:
            raise CliError(f"report entry {record.get('label')!r}: {exc}") from None
        curves.append((record.get("label", spec.label()), spec))
    if not curves:
        raise CliError("report contains no successful clean fits to plot")
    written = emit_plot_data(sample, curves, edges, out_dir / "plots")
    _write_json(out_dir / "meta.json", _meta_payload(out_dir, started, argv))
    for path in written:
        print(f"wrote {path}")
    return EXIT_OK


# -- parser -----------------------------------------------------------------


def _add_common(parser: argparse.ArgumentParser):
    parser.add_argument("--config", help="TOML config file")
    parser.add_argument("--seed", type=int, help="base RNG seed (default 0)")
    parser.add_argument("--out-dir", help="output directory (default qlid-out)")
    parser.add_argument("--edges", help="comma-separated bin edges, e.g. 0,0.5,1.5,2.5,20")


def _add_data(parser: argparse.ArgumentParser):
    parser.add_argument("--data", help="input data file, one value per line")
    parser.add_argument(
        "--support",
        choices=("auto", "half", "full"),
        help="sample support (default: auto-detect from sign of the data)",
    )


def _add_estimator(parser: argparse.ArgumentParser):
    parser.add_argument(
        "--estimator",
        choices=tuple(k.value for k in EstimatorKind),
        help="estimator kind; overrides [[estimator]] entries in the config",
    )
    parser.add_argument("--family0", help="model family (weibull, gamma, burr3, ep, gt)")
    parser.add_argument("--family1", help="alternative family for two-density estimators")
    parser.add_argument("--q", type=float, help="q-log tuning constant")
    parser.add_argument("--u", type=float, help="Huber threshold")
    parser.add_argument("--p0", type=float, help="fixed power of the f0 family (ep/gt)")
    parser.add_argument("--p1", type=float, help="fixed power of the f1 family (ep/gt)")
    parser.add_argument("--eta", type=float, help="fixed eta of ep bindings")
    parser.add_argument("--nu", type=float, help="fixed nu of gt bindings")
    parser.add_argument("--free", help="comma-separated free parameter names")
    parser.add_argument("--bounds", help="search box, e.g. a=0:50,b=0:50,mu=-50:50")


def _add_optimizer(parser: argparse.ArgumentParser):
    parser.add_argument("--population", type=int, help="genetic population size")
    parser.add_argument("--generations", type=int, help="genetic generations")
    parser.add_argument("--elite-fraction", type=float, dest="elite_fraction")
    parser.add_argument("--crossover-fraction", type=float, dest="crossover_fraction")
    parser.add_argument("--mutation-scale", type=float, dest="mutation_scale")
    parser.add_argument("--polish-tol", type=float, dest="polish_tol")
    parser.add_argument("--restarts", type=int, help="independent genetic restarts")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qlid",
        description="Robust distribution fitting with q-log objectives.",
    )
    parser.add_argument("--version", action="version", version=f"qlid {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_fit = sub.add_parser("fit", help="fit estimators and write a comparison report")
    _add_common(p_fit)
    _add_data(p_fit)
    _add_estimator(p_fit)
    _add_optimizer(p_fit)
    p_fit.add_argument(
        "--outliers",
        action="store_true",
        default=None,
        help="also fit with injected outliers",
    )
    p_fit.set_defaults(handler=cmd_fit)

    p_sweep = sub.add_parser("sweep", help="fit a grid of tuning constants")
    _add_common(p_sweep)
    _add_data(p_sweep)
    _add_estimator(p_sweep)
    _add_optimizer(p_sweep)
    p_sweep.add_argument("--q-grid", dest="q_grid", help="comma-separated q values")
    p_sweep.add_argument("--u-grid", dest="u_grid", help="comma-separated Huber thresholds")
    p_sweep.add_argument("--p0-grid", dest="p0_grid", help="comma-separated f0 powers")
    p_sweep.add_argument("--p1-grid", dest="p1_grid", help="comma-separated f1 powers")
    p_sweep.set_defaults(handler=cmd_sweep)

    p_sim = sub.add_parser("simulate", help="rank-wise mean of sorted model draws")
    _add_common(p_sim)
    p_sim.add_argument("--family0", help="family to draw from")
    p_sim.add_argument("--params", help="family parameters, e.g. a=3,b=0.25")
    p_sim.add_argument("--n", type=int, help="sample size per replication (default 90)")
    p_sim.add_argument(
        "--replications", type=int, help="number of replications (default 10000)"
    )
    p_sim.add_argument("--workers", type=int, help="worker threads (default 1)")
    p_sim.set_defaults(handler=cmd_simulate)

    p_inj = sub.add_parser("inject", help="append protocol outliers to a dataset")
    _add_common(p_inj)
    _add_data(p_inj)
    p_inj.set_defaults(handler=cmd_inject)

    p_bins = sub.add_parser("bins", help="count observations against bin edges")
    _add_common(p_bins)
    _add_data(p_bins)
    p_bins.set_defaults(handler=cmd_bins)

    p_plot = sub.add_parser("plot", help="emit plot data from a fit report")
    _add_common(p_plot)
    _add_data(p_plot)
    p_plot.add_argument("--report", help="report.json from a previous fit")
    p_plot.set_defaults(handler=cmd_plot)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        return ns.handler(ns, argv)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
