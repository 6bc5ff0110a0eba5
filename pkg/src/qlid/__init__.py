"""Robust distribution fitting with q-log objectives.

The package fits parametric densities by maximizing either transformed
likelihoods (log or q-log) or estimating functions derived from least
informative distributions, ranks the fits with classical and robust
information criteria, and provides the supporting machinery: a hybrid
genetic optimizer, outlier-injection and order-statistic simulation
protocols, histogram bin counting with a closed top edge, and plot-data
emission.  A command line (``qlid``) wraps the common workflows.
"""

from .contamination import (
    BinReport,
    artificial_mean_sample,
    bin_count,
    inject_outliers,
    rank_means,
)
from .criteria import (
    ComparisonTable,
    ICReport,
    compare,
    ic,
    ic_report,
    ric_q,
)
from .distributions import (
    FAMILY_PARAMS,
    DistributionSpec,
    Family,
    QuadratureError,
    burr3,
    ep,
    gamma,
    gt,
    laplace,
    normal,
    quadrature_mass,
    weibull,
)
from .estimating import (
    NEG_INF,
    POSITIVE_FLOOR,
    ConvexCombination,
    EstimatorKind,
    EstimatorSpec,
    contamination_derivative,
    huber_nll,
    huber_norm_constant,
    huber_psi,
    huber_rho,
    lid_log,
    lid_qlog,
    lid_qlog_weighted,
    log_likelihood,
    make_objective,
    q_log_likelihood,
)
from .fitting import FitResult, fit_estimator, fit_huber, fit_lid, fit_mle, fit_mqle
from .fixtures import FIXTURES, fixture_path, load_fixture
from .optimize import Bounds, OptConfig, OptResult, hga_maximize
from .plots import emit_plot_data
from .qlog import qlog, qlog_second_derivative, tsallis_entropy
from .sample import IngestResult, Sample, Support, ingest

__version__ = "0.1.0"

__all__ = [
    "BinReport",
    "Bounds",
    "ComparisonTable",
    "ConvexCombination",
    "DistributionSpec",
    "EstimatorKind",
    "EstimatorSpec",
    "FAMILY_PARAMS",
    "FIXTURES",
    "Family",
    "FitResult",
    "ICReport",
    "IngestResult",
    "NEG_INF",
    "OptConfig",
    "OptResult",
    "POSITIVE_FLOOR",
    "QuadratureError",
    "Sample",
    "Support",
    "artificial_mean_sample",
    "bin_count",
    "burr3",
    "compare",
    "contamination_derivative",
    "ep",
    "emit_plot_data",
    "fit_estimator",
    "fit_huber",
    "fit_lid",
    "fit_mle",
    "fit_mqle",
    "fixture_path",
    "gamma",
    "gt",
    "hga_maximize",
    "huber_nll",
    "huber_norm_constant",
    "huber_psi",
    "huber_rho",
    "ic",
    "ic_report",
    "ingest",
    "inject_outliers",
    "laplace",
    "lid_log",
    "lid_qlog",
    "lid_qlog_weighted",
    "load_fixture",
    "log_likelihood",
    "make_objective",
    "normal",
    "q_log_likelihood",
    "qlog",
    "qlog_second_derivative",
    "quadrature_mass",
    "rank_means",
    "ric_q",
    "tsallis_entropy",
    "weibull",
]
