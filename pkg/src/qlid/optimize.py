"""Hybrid global optimizer: restarted genetic search plus simplex polish.

The genetic stage uses only comparisons between objective values, so any
score shift leaves the search trajectory bit-identical; the polish stage is
a bounded Nelder-Mead that stops on simplex diameter alone.  Randomness is
seeded through a SeedSequence tree, making every run reproducible from the
single integer in :class:`OptConfig`.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from .estimating import NEG_INF

# Default search box per parameter role: locations may be negative,
# everything else is a positive scale or shape.
DEFAULT_BOX: dict[str, tuple[float, float]] = {"mu": (-50.0, 50.0)}
DEFAULT_POSITIVE_BOX = (0.0, 50.0)

# Relative distance to a box edge below which an estimate is flagged.
BOUNDARY_RTOL = 1e-6


@dataclass(frozen=True)
class Bounds:
    """Axis-aligned search box with named coordinates."""

    names: tuple[str, ...]
    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        names = tuple(self.names)
        lower = np.asarray(self.lower, dtype=float)
        upper = np.asarray(self.upper, dtype=float)
        if lower.shape != (len(names),) or upper.shape != (len(names),):
            raise ValueError("bounds must provide one (lower, upper) pair per name")
        if not (np.all(np.isfinite(lower)) and np.all(np.isfinite(upper))):
            raise ValueError("bounds must be finite")
        if np.any(lower >= upper):
            raise ValueError("each lower bound must be strictly below its upper bound")
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    @classmethod
    def for_params(cls, names, overrides: dict | None = None) -> "Bounds":
        """Default box for the given parameter names, with optional overrides."""
        overrides = overrides or {}
        lower, upper = [], []
        for name in names:
            lo, hi = overrides.get(name, DEFAULT_BOX.get(name, DEFAULT_POSITIVE_BOX))
            lower.append(lo)
            upper.append(hi)
        return cls(tuple(names), np.asarray(lower), np.asarray(upper))

    @property
    def width(self) -> np.ndarray:
        return self.upper - self.lower

    def clip(self, theta: np.ndarray) -> np.ndarray:
        return np.clip(theta, self.lower, self.upper)

    def on_boundary(self, theta: np.ndarray) -> list[str]:
        """Names of coordinates pinned to an edge of the box."""
        tol = BOUNDARY_RTOL * self.width
        out = []
        for i, name in enumerate(self.names):
            if theta[i] - self.lower[i] <= tol[i] or self.upper[i] - theta[i] <= tol[i]:
                out.append(name)
        return out


@dataclass(frozen=True)
class OptConfig:
    """Tuning for the hybrid search; defaults fit the bundled problems."""

    population: int = 60
    generations: int = 200
    elite_fraction: float = 0.05
    crossover_fraction: float = 0.8
    mutation_scale: float = 0.1
    polish_tol: float = 1e-8
    restarts: int = 3
    seed: int = 0

    def __post_init__(self):
        if int(self.population) < 4:
            raise ValueError("population must be at least 4")
        if int(self.generations) < 1:
            raise ValueError("generations must be at least 1")
        for name in ("elite_fraction", "crossover_fraction"):
            value = float(getattr(self, name))
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {value}")
        if float(self.mutation_scale) <= 0.0:
            raise ValueError("mutation_scale must be positive")
        if float(self.polish_tol) <= 0.0:
            raise ValueError("polish_tol must be positive")
        if int(self.restarts) < 1:
            raise ValueError("restarts must be at least 1")


@dataclass
class OptResult:
    """Best point found, its value, and a diagnostics bundle.

    ``success`` is False only when every evaluated point was infeasible;
    the best-found point is still reported in that case.
    """

    theta: np.ndarray
    value: float
    success: bool
    boundary: list[str] = field(default_factory=list)
    diagnostics: dict = field(default_factory=dict)


def _tournament(fit: np.ndarray, rng) -> int:
    i, j = rng.integers(0, fit.size, 2)
    return int(i if fit[i] >= fit[j] else j)


def _ga_run(func, bounds: Bounds, config: OptConfig, rng) -> tuple[np.ndarray, float, list[float]]:
    """One genetic run; returns (best point, best value, per-generation bests)."""
    pop_size = int(config.population)
    dim = len(bounds.names)
    n_elite = max(1, round(pop_size * config.elite_fraction))
    pop = rng.uniform(bounds.lower, bounds.upper, size=(pop_size, dim))
    fit = np.array([func(row) for row in pop])
    history = []
    for gen in range(int(config.generations)):
        order = np.argsort(-fit, kind="stable")
        pop, fit = pop[order], fit[order]
        # Linear decay keeps late generations local without freezing them.
        decay = max(1.0 - gen / config.generations, 0.05)
        scale = config.mutation_scale * bounds.width * decay
        children = np.empty((pop_size - n_elite, dim))
        for i in range(children.shape[0]):
            if rng.random() < config.crossover_fraction:
                a = pop[_tournament(fit, rng)]
                b = pop[_tournament(fit, rng)]
                alpha = rng.random(dim)
                child = alpha * a + (1.0 - alpha) * b
            else:
                child = pop[_tournament(fit, rng)].copy()
            child = child + rng.normal(0.0, 1.0, dim) * scale
            children[i] = bounds.clip(child)
        child_fit = np.array([func(row) for row in children])
        pop = np.vstack([pop[:n_elite], children])
        fit = np.concatenate([fit[:n_elite], child_fit])
        history.append(float(fit.max()))
    best = int(np.argmax(fit))
    return pop[best].copy(), float(fit[best]), history


def hga_maximize(objective, bounds: Bounds, config: OptConfig | None = None) -> OptResult:
    """Maximize an objective over a box with restarts and a simplex polish.

    The final value is the better of the genetic incumbent and the polished
    point, so polish can only improve the report.  Diagnostics include
    evaluation counts, the per-restart best histories, the polish record,
    and which coordinates (if any) sit on the box boundary.
    """
    config = config or OptConfig()
    counters = {"evaluations": 0, "infeasible": 0}

    def func(theta) -> float:
        counters["evaluations"] += 1
        value = objective(theta)
        value = float(value)
        if np.isnan(value):
            value = NEG_INF
        if value == NEG_INF:
            counters["infeasible"] += 1
        return value

    root = np.random.SeedSequence(int(config.seed))
    streams = root.spawn(int(config.restarts))
    best_theta = None
    best_value = NEG_INF
    restart_log = []
    for stream in streams:
        rng = np.random.default_rng(stream)
        theta, value, history = _ga_run(func, bounds, config, rng)
        restart_log.append({"best_value": value, "history": history})
        if best_theta is None or value > best_value:
            best_theta, best_value = theta, value

    polish_log = {"attempted": False, "improved": False}
    if best_value > NEG_INF:
        polish_log["attempted"] = True
        polish_log["incumbent_theta"] = [float(v) for v in best_theta]
        polish_log["incumbent_value"] = best_value
        result = minimize(
            lambda th: -func(th),
            x0=best_theta,
            method="Nelder-Mead",
            bounds=list(zip(bounds.lower, bounds.upper)),
            options={
                "xatol": float(config.polish_tol),
                # Diameter-only termination: value changes never stop the polish.
                "fatol": np.inf,
                "maxiter": 400 * len(bounds.names),
                "maxfev": 800 * len(bounds.names),
            },
        )
        polished_value = -float(result.fun)
        polish_log["value"] = polished_value
        polish_log["iterations"] = int(result.nit)
        if np.all(np.isfinite(result.x)) and polished_value > best_value:
            best_theta = bounds.clip(np.asarray(result.x, dtype=float))
            best_value = polished_value
            polish_log["improved"] = True

    success = best_value > NEG_INF
    boundary = bounds.on_boundary(best_theta) if success else []
    return OptResult(
        theta=np.asarray(best_theta, dtype=float),
        value=float(best_value),
        success=success,
        boundary=boundary,
        diagnostics={
            "evaluations": counters["evaluations"],
            "infeasible_evaluations": counters["infeasible"],
            "restarts": restart_log,
            "polish": polish_log,
        },
    )
