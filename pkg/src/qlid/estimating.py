"""Objectives and estimating functions for robust distribution fitting.

Two kinds of objective live here.  Likelihood-style objectives sum a
transform of the model density over the data: the natural log gives maximum
likelihood, the q-log gives its damped variant.  Estimating-function
objectives measure a model ``f0`` against an alternative ``f1`` through
weights ``f0^(-q)``; their maximizers are the least-informative-distribution
estimators.  A Huber-style location-scale objective rounds out the set.

All objectives return ``-inf`` as an infeasible sentinel instead of raising,
so an optimizer can treat a vanishing density like any other bad point.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import erf

from .distributions import FAMILY_PARAMS, REAL_PARAMS, DistributionSpec
from .qlog import Q_UNIT_TOL, _check_q
from .sample import Sample

NEG_INF = float("-inf")

# Parameters proposed below this are rejected as infeasible rather than
# evaluated, keeping log densities away from the singular boundary.
POSITIVE_FLOOR = 1e-8


def _finite_total(values: np.ndarray) -> float:
    total = float(np.sum(values))
    if not math.isfinite(total):
        return NEG_INF
    return total


def log_likelihood(sample: Sample, f0: DistributionSpec) -> float:
    """Sum of log densities; ``-inf`` when any observation has density 0."""
    lp = f0.logpdf(sample.values)
    if not np.all(np.isfinite(lp)):
        return NEG_INF
    return _finite_total(lp)


def q_log_likelihood(sample: Sample, f0: DistributionSpec, q: float) -> float:
    """Sum of q-log densities, ``sum (f0(x)^(1-q) - 1) / (1-q)``.

    Within ``Q_UNIT_TOL`` of q = 1 this is exactly the log-likelihood.
    Density zeros yield the ``-inf`` sentinel for q <= 1; for q > 1 the
    transform itself is finite at 0 only in the limit, so the sentinel is
    returned there as well to keep the objective's domain consistent.
    """
    q = _check_q(q)
    lp = f0.logpdf(sample.values)
    if not np.all(np.isfinite(lp)):
        return NEG_INF
    if abs(q - 1.0) <= Q_UNIT_TOL:
        return _finite_total(lp)
    one_minus_q = 1.0 - q
    with np.errstate(over="ignore"):
        terms = np.expm1(one_minus_q * lp) / one_minus_q
    return _finite_total(terms)


def _weighted_discrepancy(sample: Sample, f0, f1, q: float) -> float:
    """Core estimating-function sum ``sum f0^(-q) * (f1 - f0)``."""
    lp0 = f0.logpdf(sample.values)
    if not np.all(np.isfinite(lp0)):
        return NEG_INF
    p1 = f1.pdf(sample.values)
    if not np.all(np.isfinite(p1)):
        return NEG_INF
    with np.errstate(over="ignore", invalid="ignore"):
        w = np.exp(-q * lp0)
        diff = p1 - np.exp(lp0)
        terms = w * diff
    # An overflowing weight multiplied by a zero difference is 0, not nan.
    terms = np.where(diff == 0.0, 0.0, terms)
    return _finite_total(terms)


def lid_qlog(sample: Sample, f0, f1, q: float) -> float:
    """q-log estimating function ``sum f0^(-q) * (f1 - f0)``.

    This is the contamination derivative of the q-log objective: the weights
    are the derivative of the q-log at the model density, so heavy
    observations (small ``f0``) are influential only through the bounded
    difference ``f1 - f0``.
    """
    return _weighted_discrepancy(sample, f0, f1, _check_q(q))


def lid_log(sample: Sample, f0, f1) -> float:
    """Log estimating function, the q = 1 member: ``sum (f1/f0 - 1)``."""
    return _weighted_discrepancy(sample, f0, f1, 1.0)


def lid_qlog_weighted(sample: Sample, f0, f1, q: float) -> float:
    """Same functional as :func:`lid_qlog`, written as two weighted sums.

    Computes ``sum w1*f1 + w0*f0`` with ``w1 = f0^(-q)`` and ``w0 = -w1``;
    exposed separately because the weight decomposition is the form some
    derivations start from, and tests pin the two forms together.
    """
    q = _check_q(q)
    lp0 = f0.logpdf(sample.values)
    if not np.all(np.isfinite(lp0)):
        return NEG_INF
    p1 = f1.pdf(sample.values)
    if not np.all(np.isfinite(p1)):
        return NEG_INF
    with np.errstate(over="ignore", invalid="ignore"):
        w1 = np.exp(-q * lp0)
        w0 = -w1
        p0 = np.exp(lp0)
        terms = np.where(p1 == 0.0, 0.0, w1 * p1) + np.where(p0 == 0.0, 0.0, w0 * p0)
    return _finite_total(terms)


@dataclass(frozen=True)
class ConvexCombination:
    """Density mixture ``(1 - epsilon) * f0 + epsilon * f1``."""

    f0: DistributionSpec
    f1: DistributionSpec
    epsilon: float

    def __post_init__(self):
        eps = float(self.epsilon)
        if not 0.0 <= eps <= 1.0:
            raise ValueError(f"epsilon must lie in [0, 1], got {eps}")
        if self.f0.support is not self.f1.support:
            raise ValueError("mixture components must share a support")
        object.__setattr__(self, "epsilon", eps)

    def pdf(self, x):
        return (1.0 - self.epsilon) * self.f0.pdf(x) + self.epsilon * self.f1.pdf(x)


def contamination_derivative(sample: Sample, mix: ConvexCombination, q: float | None = None) -> float:
    """Derivative at epsilon = 0 of a transformed likelihood along a mixture.

    For a concave transform ``L`` the chain rule gives
    ``sum L'(f0(x)) * (f1(x) - f0(x))``; with the natural log (``q=None``)
    the weight is ``1/f0`` and with the q-log it is ``f0^(-q)``.  The closed
    forms coincide with :func:`lid_log` / :func:`lid_qlog`, which is the
    point: the estimating functions are contamination derivatives.
    """
    if q is None:
        return _weighted_discrepancy(sample, mix.f0, mix.f1, 1.0)
    return _weighted_discrepancy(sample, mix.f0, mix.f1, _check_q(q))


# -- Huber location-scale ---------------------------------------------------


def huber_rho(y, u: float):
    """Huber loss: quadratic inside ``|y| <= u``, linear outside."""
    u = _check_threshold(u)
    arr = np.asarray(y, dtype=float)
    ay = np.abs(arr)
    out = np.where(ay <= u, 0.5 * arr * arr, u * ay - 0.5 * u * u)
    if np.isscalar(y) or getattr(y, "ndim", None) == 0:
        return float(out)
    return out


def huber_psi(y, u: float):
    """Derivative of the Huber loss: identity clipped at ``+-u``."""
    u = _check_threshold(u)
    arr = np.asarray(y, dtype=float)
    out = np.clip(arr, -u, u)
    if np.isscalar(y) or getattr(y, "ndim", None) == 0:
        return float(out)
    return out


def _check_threshold(u: float) -> float:
    u = float(u)
    if not math.isfinite(u) or u <= 0.0:
        raise ValueError(f"threshold u must be positive and finite, got {u!r}")
    return u


def huber_norm_constant(u: float) -> float:
    """Normalizer of the least favorable density,
    ``sqrt(2 pi) * (Phi(u) - Phi(-u)) + (2/u) * exp(-u^2/2)``."""
    u = _check_threshold(u)
    gauss_mass = math.sqrt(2.0 * math.pi) * erf(u / math.sqrt(2.0))
    tail = (2.0 / u) * math.exp(-0.5 * u * u)
    return gauss_mass + tail


def huber_nll(sample: Sample, mu: float, sigma: float, u: float) -> float:
    """Negative log likelihood of the Huber least favorable density.

    ``sum rho_u((x - mu)/sigma) + n * (ln sigma + ln C(u))`` with the
    normalizer from :func:`huber_norm_constant`.  As u grows this converges
    to the Normal negative log likelihood.
    """
    sigma = float(sigma)
    if not math.isfinite(sigma) or sigma <= 0.0:
        raise ValueError(f"sigma must be positive and finite, got {sigma!r}")
    u = _check_threshold(u)
    y = (sample.values - float(mu)) / sigma
    total = float(np.sum(huber_rho(y, u)))
    return total + sample.n * (math.log(sigma) + math.log(huber_norm_constant(u)))


# -- estimator specifications and objectives --------------------------------


class EstimatorKind(enum.Enum):
    """How a fit scores a parameter vector."""

    MLE = "mle"
    MQLE = "mqle"
    LID_LOG = "lid-log"
    LID_LOGQ = "lid-logq"
    HUBER = "huber"


_ROBUST_KINDS = frozenset({EstimatorKind.MQLE, EstimatorKind.LID_LOG, EstimatorKind.LID_LOGQ})
_NEEDS_F1 = frozenset({EstimatorKind.LID_LOG, EstimatorKind.LID_LOGQ, EstimatorKind.HUBER})
_NEEDS_Q = frozenset({EstimatorKind.MQLE, EstimatorKind.LID_LOGQ})


@dataclass(frozen=True)
class EstimatorSpec:
    """An estimator: kind, model binding(s), free parameters, tuning.

    ``f0`` (and ``f1`` for the two-density kinds) are templates whose free
    parameters are overwritten by the optimizer; the remaining parameters
    stay fixed at their template values.  ``free`` names must exist in every
    bound family so a single parameter vector can drive both densities.
    """

    kind: EstimatorKind
    f0: DistributionSpec
    free: tuple[str, ...]
    f1: DistributionSpec | None = None
    q: float | None = None
    u: float | None = None

    def __post_init__(self):
        if not isinstance(self.kind, EstimatorKind):
            raise TypeError("kind must be an EstimatorKind member")
        free = tuple(self.free)
        if not free:
            raise ValueError("free parameter tuple must not be empty")
        if len(set(free)) != len(free):
            raise ValueError(f"duplicate free parameter in {free}")
        for name in free:
            if name not in FAMILY_PARAMS[self.f0.family]:
                raise ValueError(
                    f"free parameter {name!r} not in family {self.f0.family.value}"
                )
        if self.kind in _NEEDS_F1:
            if self.f1 is None:
                raise ValueError(f"{self.kind.value} requires an f1 binding")
            for name in free:
                if name not in FAMILY_PARAMS[self.f1.family]:
                    raise ValueError(
                        f"free parameter {name!r} not in family {self.f1.family.value}"
                    )
            if self.f0.support is not self.f1.support:
                raise ValueError("f0 and f1 must share a support")
        elif self.f1 is not None:
            raise ValueError(f"{self.kind.value} takes no f1 binding")
        if self.kind in _NEEDS_Q:
            if self.q is None:
                raise ValueError(f"{self.kind.value} requires a tuning constant q")
            object.__setattr__(self, "q", _check_q(self.q))
        elif self.q is not None:
            raise ValueError(f"{self.kind.value} takes no q")
        if self.kind is EstimatorKind.HUBER:
            if self.u is None:
                raise ValueError("huber requires a threshold u")
            object.__setattr__(self, "u", _check_threshold(self.u))
            if set(free) != {"mu", "sigma"}:
                raise ValueError("huber fits exactly the free parameters ('mu', 'sigma')")
        elif self.u is not None:
            raise ValueError(f"{self.kind.value} takes no threshold u")
        object.__setattr__(self, "free", free)

    @property
    def robust(self) -> bool:
        """True when the reported criteria are the robust (RAIC/RBIC) pair."""
        return self.kind in _ROBUST_KINDS or self.kind is EstimatorKind.HUBER

    @property
    def degenerate(self) -> bool:
        """A two-density estimator with f1 identical to f0 scores 0 everywhere."""
        if self.kind not in (EstimatorKind.LID_LOG, EstimatorKind.LID_LOGQ):
            return False
        return self.f0 == self.f1

    def label(self) -> str:
        """Human-readable row label, e.g. ``psi_logq(q=0.007, f0=gamma, f1=weibull)``."""
        if self.kind is EstimatorKind.MLE:
            return f"rho_log(f0={self.f0.label()})"
        if self.kind is EstimatorKind.MQLE:
            return f"rho_logq(q={self.q:g}, f0={self.f0.label()})"
        if self.kind is EstimatorKind.LID_LOG:
            return f"psi_log(f0={self.f0.label()}, f1={self.f1.label()})"
        if self.kind is EstimatorKind.LID_LOGQ:
            return f"psi_logq(q={self.q:g}, f0={self.f0.label()}, f1={self.f1.label()})"
        return f"huber(u={self.u:g}, f0={self.f0.label()}, f1={self.f1.label()})"

    def comparability_class(self) -> tuple:
        """Key under which information criteria may be ranked.

        All plain likelihood fits are mutually comparable; every robust
        objective is comparable only to fits sharing its transform, tuning
        constant, and density families.
        """
        if self.kind is EstimatorKind.MLE:
            return ("mle",)
        if self.kind is EstimatorKind.MQLE:
            return ("mqle", self.q, self.f0.family.value)
        if self.kind is EstimatorKind.LID_LOG:
            return ("lid-log", self.f0.family.value, self.f1.family.value)
        if self.kind is EstimatorKind.LID_LOGQ:
            return ("lid-logq", self.q, self.f0.family.value, self.f1.family.value)
        return ("huber", self.u, self.f0.family.value, self.f1.family.value)


class Objective:
    """Callable mapping a free-parameter vector to the estimator's score.

    Parameter order follows ``spec.free``.  Positivity-constrained entries
    below ``POSITIVE_FLOOR`` make the point infeasible (``-inf``) without
    touching the densities.
    """

    def __init__(self, sample: Sample, spec: EstimatorSpec):
        if spec.f0.support is not sample.support:
            raise ValueError(
                f"estimator support {spec.f0.support.value} does not match "
                f"sample support {sample.support.value}"
            )
        self.sample = sample
        self.spec = spec
        self.param_names = spec.free
        self._positive = tuple(name not in REAL_PARAMS for name in spec.free)

    def __call__(self, theta) -> float:
        theta = np.asarray(theta, dtype=float)
        if theta.shape != (len(self.param_names),):
            raise ValueError(
                f"expected {len(self.param_names)} parameters, got shape {theta.shape}"
            )
        if not np.all(np.isfinite(theta)):
            return NEG_INF
        for value, positive in zip(theta, self._positive):
            if positive and value < POSITIVE_FLOOR:
                return NEG_INF
        updates = dict(zip(self.param_names, theta.tolist()))
        spec = self.spec
        try:
            if spec.kind is EstimatorKind.HUBER:
                return -huber_nll(self.sample, updates["mu"], updates["sigma"], spec.u)
            f0 = spec.f0.with_params(**updates)
            if spec.kind is EstimatorKind.MLE:
                return log_likelihood(self.sample, f0)
            if spec.kind is EstimatorKind.MQLE:
                return q_log_likelihood(self.sample, f0, spec.q)
            f1 = spec.f1.with_params(**updates)
            if spec.kind is EstimatorKind.LID_LOG:
                return lid_log(self.sample, f0, f1)
            return lid_qlog(self.sample, f0, f1, spec.q)
        except ValueError:
            return NEG_INF


def make_objective(sample: Sample, spec: EstimatorSpec) -> Objective:
    """Build the maximization objective for an estimator on a sample."""
    return Objective(sample, spec)
