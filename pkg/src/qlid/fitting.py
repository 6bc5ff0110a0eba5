"""High-level fitting: estimator spec in, criterion-ready report out."""

from __future__ import annotations

from dataclasses import dataclass

from .criteria import ICReport, ic_report
from .estimating import EstimatorKind, EstimatorSpec, make_objective
from .optimize import Bounds, OptConfig, hga_maximize
from .sample import Sample


@dataclass
class FitResult:
    """A fitted estimator: estimates, objective, criteria, diagnostics.

    ``boundary`` lists parameters pinned to the search box, a hint that the
    reported optimum is a box artifact rather than an interior stationary
    point.  ``degenerate`` marks two-density estimators whose bindings
    coincide, making the objective identically zero.
    """

    spec: EstimatorSpec
    theta: dict
    objective: float
    report: ICReport
    seed: int
    success: bool
    boundary: list
    degenerate: bool
    diagnostics: dict

    @property
    def label(self) -> str:
        return self.spec.label()


def fit_estimator(
    sample: Sample,
    spec: EstimatorSpec,
    bounds: Bounds | None = None,
    config: OptConfig | None = None,
    condition: str = "clean",
) -> FitResult:
    """Maximize an estimator's objective over a sample and report it.

    ``bounds`` defaults to the standard box for the free parameters.
    ``condition`` annotates the report row (e.g. ``"clean"`` or
    ``"2 outliers"``) and has no effect on the fit itself.
    """
    config = config or OptConfig()
    if bounds is None:
        bounds = Bounds.for_params(spec.free)
    elif tuple(bounds.names) != tuple(spec.free):
        raise ValueError(
            f"bounds names {bounds.names} do not match free parameters {spec.free}"
        )
    objective = make_objective(sample, spec)
    result = hga_maximize(objective, bounds, config)
    theta = {name: float(value) for name, value in zip(spec.free, result.theta)}
    report = ic_report(
        label=spec.label(),
        theta=theta,
        objective=result.value,
        k=len(spec.free),
        n=sample.n,
        robust=spec.robust,
        comparability=spec.comparability_class(),
        condition=condition,
    )
    return FitResult(
        spec=spec,
        theta=theta,
        objective=result.value,
        report=report,
        seed=int(config.seed),
        success=result.success,
        boundary=list(result.boundary),
        degenerate=spec.degenerate,
        diagnostics=result.diagnostics,
    )


def fit_mle(sample: Sample, f0, free, **kwargs) -> FitResult:
    """Maximum likelihood fit of ``f0`` with the named free parameters."""
    spec = EstimatorSpec(kind=EstimatorKind.MLE, f0=f0, free=tuple(free))
    return fit_estimator(sample, spec, **kwargs)


def fit_mqle(sample: Sample, f0, free, q: float, **kwargs) -> FitResult:
    """Maximum q-log-likelihood fit of ``f0``."""
    spec = EstimatorSpec(kind=EstimatorKind.MQLE, f0=f0, free=tuple(free), q=q)
    return fit_estimator(sample, spec, **kwargs)


def fit_lid(sample: Sample, f0, f1, free, q: float | None = None, **kwargs) -> FitResult:
    """Least-informative-distribution fit; log form when ``q`` is None."""
    if q is None:
        spec = EstimatorSpec(kind=EstimatorKind.LID_LOG, f0=f0, f1=f1, free=tuple(free))
    else:
        spec = EstimatorSpec(
            kind=EstimatorKind.LID_LOGQ, f0=f0, f1=f1, free=tuple(free), q=q
        )
    return fit_estimator(sample, spec, **kwargs)


def fit_huber(sample: Sample, f0, f1, u: float, **kwargs) -> FitResult:
    """Huber location-scale fit with threshold ``u``."""
    spec = EstimatorSpec(
        kind=EstimatorKind.HUBER, f0=f0, f1=f1, free=("mu", "sigma"), u=u
    )
    return fit_estimator(sample, spec, **kwargs)
