"""Acceptance gate: eleven criteria, printed one pass/fail line each.

Run with ``pytest tests/test_acceptance.py -s`` to see the per-criterion
lines as they happen; without ``-s`` they appear in pytest's captured
output for failing tests and in the summary for passing ones (``-rA``).
"""

import json
import math
import subprocess
import sys
from contextlib import contextmanager

import numpy as np
import pytest
from scipy import special, stats

from qlid import (
    OptConfig,
    artificial_mean_sample,
    bin_count,
    burr3,
    contamination_derivative,
    ConvexCombination,
    ep,
    fit_lid,
    fit_mle,
    fit_mqle,
    fixture_path,
    gamma,
    gt,
    ic,
    lid_log,
    lid_qlog,
    lid_qlog_weighted,
    load_fixture,
    log_likelihood,
    q_log_likelihood,
    qlog,
    quadrature_mass,
    tsallis_entropy,
    weibull,
)


@contextmanager
def criterion(number: int, title: str):
    try:
        yield
    except BaseException:
        print(f"[FAIL] criterion {number:2d}: {title}")
        raise
    else:
        print(f"[PASS] criterion {number:2d}: {title}")


# -- randomized-input generators (fixed seeds, frozen designs) --------------


def _matched_tail_triples(seed: int, count: int):
    """(sample, f0, f1) triples whose densities share tail behavior.

    Pairs stay within one support and within parameter ranges where the
    density ratio f1/f0 is moderate at sampled points, so normalized gaps
    measure the estimating functions rather than tail blowups.
    """
    rng = np.random.default_rng(seed)
    half = [
        lambda r: weibull(r.uniform(1.0, 2.2), r.uniform(0.6, 1.8)),
        lambda r: gamma(r.uniform(1.2, 3.0), r.uniform(0.4, 1.2)),
        lambda r: burr3(r.uniform(1.8, 3.2), r.uniform(1.2, 2.5)),
    ]
    full = [
        lambda r: ep(
            r.uniform(-0.5, 0.5),
            r.uniform(0.8, 1.5),
            r.uniform(1.0, 2.0),
            eta=r.uniform(0.8, 1.6),
        ),
        lambda r: gt(
            r.uniform(-0.5, 0.5),
            r.uniform(0.8, 1.5),
            r.uniform(1.4, 2.4),
            r.uniform(1.2, 3.0),
        ),
    ]
    out = []
    for _ in range(count):
        makers = half if rng.random() < 0.6 else full
        f0 = makers[int(rng.integers(len(makers)))](rng)
        f1 = makers[int(rng.integers(len(makers)))](rng)
        sample = f0.sample(int(rng.integers(20, 51)), rng)
        out.append((sample, f0, f1))
    return out


def _perturb(spec, rng):
    """Same-family neighbor: positive parameters scaled, location nudged."""
    updates = {}
    for name, value in spec.params.items():
        if name == "mu":
            updates[name] = value + rng.uniform(-0.2, 0.2)
        else:
            updates[name] = value * rng.uniform(0.88, 1.15)
    return spec.with_params(**updates)


def _well_conditioned(sample, f0, f1, eps: float = 1e-6) -> bool:
    """A priori screen: the finite-difference quotient must be readable.

    The centered curvature term of the mixed objective is bounded by
    ``(eps/2) * sum |L''(f0)| * (f1-f0)^2``; a triple is accepted only when
    that bound is below 1e-5 of the derivative magnitude for every tested
    transform, and the derivative itself is not microscopically small.
    """
    x = sample.values
    p0 = f0.pdf(x)
    p1 = f1.pdf(x)
    delta = p1 - p0
    rho0 = float(np.sum(np.log(p0)))
    for q in (1.0, 0.5, 2.0):
        derivative = abs(float(np.sum(p0 ** (-q) * delta)))
        if derivative < max(1e-3, 1e-5 * abs(rho0)):
            return False
        curvature = float(np.sum(q * p0 ** (-q - 1.0) * delta**2))
        if 0.5 * eps * curvature / derivative > 1e-5:
            return False
    return True


def _conditioned_triples(seed: int, count: int):
    rng = np.random.default_rng(seed)
    makers = [
        lambda r: weibull(r.uniform(1.0, 2.2), r.uniform(0.6, 1.8)),
        lambda r: gamma(r.uniform(1.2, 3.0), r.uniform(0.4, 1.2)),
        lambda r: burr3(r.uniform(1.8, 3.2), r.uniform(1.2, 2.5)),
        lambda r: ep(
            r.uniform(-0.5, 0.5),
            r.uniform(0.8, 1.5),
            r.uniform(1.0, 2.0),
            eta=r.uniform(0.8, 1.6),
        ),
        lambda r: gt(
            r.uniform(-0.5, 0.5),
            r.uniform(0.8, 1.5),
            r.uniform(1.4, 2.4),
            r.uniform(1.2, 3.0),
        ),
    ]
    accepted = []
    while len(accepted) < count:
        f0 = makers[int(rng.integers(len(makers)))](rng)
        f1 = _perturb(f0, rng)
        sample = f0.sample(int(rng.integers(20, 51)), rng)
        if _well_conditioned(sample, f0, f1):
            accepted.append((sample, f0, f1))
    return accepted


# -- the criteria, in order -------------------------------------------------


def test_criterion_01_penalty_gap():
    with criterion(1, "BIC - AIC penalty gaps at n=90 and n=95 (k=2)"):
        rho = -92.40925
        gap90 = ic(rho, 2, 90, "bic") - ic(rho, 2, 90, "aic")
        gap95 = ic(rho, 2, 95, "bic") - ic(rho, 2, 95, "aic")
        assert gap90 == pytest.approx(4.9996, abs=1e-3)
        assert gap95 == pytest.approx(5.1077, abs=1e-3)


def test_criterion_02_q_to_one_coherence():
    with criterion(2, "q->1 coherence of rho_logq and psi_logq on 1000 triples"):
        q = 1.0 + 1e-8
        worst_psi = 0.0
        worst_rho = 0.0
        for sample, f0, f1 in _matched_tail_triples(20260823, 1000):
            base_psi = lid_log(sample, f0, f1)
            near_psi = lid_qlog(sample, f0, f1, q)
            worst_psi = max(
                worst_psi, abs(near_psi - base_psi) / (1.0 + abs(base_psi))
            )
            base_rho = log_likelihood(sample, f0)
            near_rho = q_log_likelihood(sample, f0, q)
            worst_rho = max(
                worst_rho, abs(near_rho - base_rho) / (1.0 + abs(base_rho))
            )
        assert worst_psi <= 1e-6
        assert worst_rho <= 1e-6


def test_criterion_03_gateaux_oracle():
    with criterion(3, "Gateaux derivative matches eps=1e-6 finite difference"):
        eps = 1e-6
        worst = 0.0
        for sample, f0, f1 in _conditioned_triples(20260822, 200):
            x = sample.values
            mix = ConvexCombination(f0, f1, eps)
            mixed_pdf = mix.pdf(x)
            base_pdf = f0.pdf(x)
            for q in (None, 0.5, 2.0):
                qq = 1.0 if q is None else q
                fd = (
                    float(np.sum(qlog(mixed_pdf, qq)))
                    - float(np.sum(qlog(base_pdf, qq)))
                ) / eps
                exact = contamination_derivative(sample, mix, q=q)
                worst = max(worst, abs(fd - exact) / abs(exact))
        assert worst <= 1e-4


def test_criterion_04_weighted_form_identity():
    with criterion(4, "psi_logq equals its weighted form on 1000 inputs"):
        rng = np.random.default_rng(20260824)
        worst = 0.0
        for sample, f0, f1 in _matched_tail_triples(20260824, 1000):
            q = float(rng.uniform(0.1, 2.5))
            plain = lid_qlog(sample, f0, f1, q)
            weighted = lid_qlog_weighted(sample, f0, f1, q)
            worst = max(worst, abs(weighted - plain) / max(1.0, abs(plain)))
        assert worst <= 1e-12


def test_criterion_05_tsallis_identity():
    with criterion(5, "q-log-likelihood equals Tsallis entropy term by term"):
        rng = np.random.default_rng(20260825)
        f = rng.uniform(0.01, 1.0, size=300)
        for q in (0.25, 0.5, 0.75, 2.0):
            lhs = qlog(f, q)
            rhs = np.array(
                [tsallis_entropy([fi ** ((1.0 - q) / q)], q) for fi in f]
            )
            scale = np.maximum(np.abs(lhs), 1e-30)
            assert np.max(np.abs(lhs - rhs) / scale) <= 1e-10
            # Summing the per-observation identity recovers the total score.
            total = float(np.sum(lhs))
            assert total == pytest.approx(float(np.sum(rhs)), rel=1e-10, abs=1e-12)


_MASS_GRID = {
    "weibull": [
        weibull(a, b)
        for a, b in [
            (0.6, 0.5), (0.6, 2.0), (0.8, 1.7), (1.0, 0.25), (1.0, 1.0),
            (1.1, 4.0), (1.3, 0.8), (1.5, 1.5), (1.7, 0.3), (2.0, 1.0),
            (2.0, 3.5), (2.2, 2.2), (2.7, 0.9), (2.7, 3.5), (3.0, 2.0),
            (3.5, 1.2), (4.0, 0.6), (4.5, 5.0), (5.0, 2.5), (6.0, 1.0),
        ]
    ],
    "gamma": [
        gamma(a, b)
        for a, b in [
            (0.7, 0.5), (0.8, 4.0), (0.9, 2.0), (1.0, 1.0), (1.1, 0.6),
            (1.2, 1.2), (1.5, 3.0), (1.9280, 0.5920), (2.0, 2.0), (2.5, 0.7),
            (2.8, 1.1), (3.0, 0.25), (3.5, 0.8), (4.0, 0.3), (4.5, 0.9),
            (5.0, 1.5), (6.0, 0.4), (7.0, 1.0), (8.0, 0.2), (9.0, 2.0),
        ]
    ],
    "burr3": [
        burr3(a, b)
        for a, b in [
            (1.0, 1.0), (1.2, 0.6), (1.4, 1.1), (1.5, 0.9), (1.6, 1.8),
            (1.8, 3.0), (1.9, 2.8), (2.0, 1.4), (2.1, 0.75), (2.2, 2.5),
            (2.4977, 0.8109), (2.5, 2.0), (2.8, 0.95), (3.0, 0.7), (3.2, 1.2),
            (3.6, 2.2), (4.0, 1.0), (4.5, 1.6), (5.0, 0.5), (5.5, 1.3),
        ]
    ],
    "ep": [
        ep(mu, sigma, p, eta=eta)
        for mu, sigma, p, eta in [
            (0.0, 1.0, 2.36, 1.0), (0.0, 1.0, 2.36, 2.0), (0.0, 1.0, 2.0, 2.0),
            (0.0, 1.0, 1.0, 1.0), (0.5, 0.7, 1.2, 1.0), (-1.0, 2.0, 3.0, 1.0),
            (0.0, 1.0, 0.8, 1.0), (2.0, 0.5, 1.5, 2.0), (-0.3, 1.1, 2.5, 1.5),
            (0.0, 3.0, 1.0, 2.0), (1.0, 1.0, 4.0, 1.0), (0.0, 0.5, 2.0, 1.0),
            (-2.0, 1.5, 1.8, 0.7), (0.2, 2.2, 0.6, 1.0), (0.0, 1.0, 5.0, 2.0),
            (3.0, 0.8, 2.0, 3.0), (-0.5, 0.9, 1.3, 1.1), (0.0, 2.0, 2.8, 2.0),
            (1.5, 1.2, 1.1, 0.9), (0.0, 1.0, 3.5, 4.0),
        ]
    ],
    "gt": [
        gt(mu, sigma, p, nu)
        for mu, sigma, p, nu in [
            (0.0, 1.0, 2.78, 0.85), (0.0, 1.0, 2.34, 1.75), (0.0, 1.0, 2.0, 0.5),
            (0.0, 1.0, 1.0, 1.0), (0.5, 1.5, 1.8, 0.9), (-1.0, 0.8, 3.0, 2.0),
            (0.0, 2.0, 1.5, 1.2), (1.0, 1.0, 2.5, 0.6), (0.0, 1.0, 4.0, 3.0),
            (-0.5, 1.1, 1.2, 2.5), (2.0, 0.9, 2.2, 1.4), (0.0, 0.6, 1.6, 0.8),
            (0.0, 1.0, 5.0, 0.4), (-2.0, 1.3, 2.9, 1.1), (0.0, 1.0, 0.9, 2.0),
            (0.3, 2.5, 3.4, 0.7), (0.0, 1.0, 1.4, 4.0), (1.2, 0.7, 2.6, 2.2),
            (0.0, 1.8, 2.1, 0.95), (-0.8, 1.0, 3.8, 1.6),
        ]
    ],
}


def test_criterion_06_density_normalization():
    with criterion(6, "all five families integrate to 1 on 20-point grids"):
        for family, specs in _MASS_GRID.items():
            assert len(specs) == 20, family
            for spec in specs:
                assert quadrature_mass(spec) == pytest.approx(1.0, abs=1e-6), (
                    family,
                    spec.params,
                )


def test_criterion_07_mle_recovery_large_sample():
    with criterion(7, "HGA maximum likelihood solves the score equations at n=1e4"):
        n = 10_000

        data = gamma(3.0, 0.25).sample(n, np.random.default_rng(1007))
        fit = fit_mle(data, gamma(1.0, 1.0), ("a", "b"), config=OptConfig(seed=11))
        assert fit.success
        a_hat, b_hat = fit.theta["a"], fit.theta["b"]
        x = data.values
        score_a = float(np.mean(np.log(x)) - math.log(b_hat) - special.digamma(a_hat))
        score_b = float((np.mean(x) - a_hat * b_hat) / b_hat**2)
        assert abs(score_a) <= 1e-3
        assert abs(score_b) <= 1e-3
        assert a_hat == pytest.approx(3.0, rel=0.05)
        assert b_hat == pytest.approx(0.25, rel=0.05)

        data = weibull(2.7, 3.5).sample(n, np.random.default_rng(1007))
        fit = fit_mle(data, weibull(1.0, 1.0), ("a", "b"), config=OptConfig(seed=12))
        assert fit.success
        a_hat, b_hat = fit.theta["a"], fit.theta["b"]
        z = data.values / b_hat
        za = z**a_hat
        log_z = np.log(z)
        score_a = float(np.mean(1.0 / a_hat + log_z - za * log_z))
        score_b = float((a_hat / b_hat) * (np.mean(za) - 1.0))
        assert abs(score_a) <= 1e-3
        assert abs(score_b) <= 1e-3
        assert a_hat == pytest.approx(2.7, rel=0.05)
        assert b_hat == pytest.approx(3.5, rel=0.05)


def test_criterion_08_robustness_ordering():
    with criterion(8, "outlier-induced shift: LID and MqLE never exceed MLE"):
        from qlid import inject_outliers

        clean = load_fixture("halfline_n90")
        dirty = inject_outliers(clean)

        def shift(fitter, *args, **kwargs):
            a = fitter(clean, *args, config=OptConfig(seed=101), **kwargs)
            b = fitter(dirty, *args, config=OptConfig(seed=202), **kwargs)
            assert a.success and b.success
            va = np.array([a.theta["a"], a.theta["b"]])
            vb = np.array([b.theta["a"], b.theta["b"]])
            return float(np.linalg.norm(vb - va))

        mle_shift = shift(fit_mle, gamma(1.0, 1.0), ("a", "b"))
        mqle_shift = shift(fit_mqle, gamma(1.0, 1.0), ("a", "b"), q=0.53)
        lid_shift = shift(
            fit_lid, gamma(1.0, 1.0), weibull(1.0, 1.0), ("a", "b"), q=0.007
        )
        assert lid_shift <= mle_shift
        assert mqle_shift <= mle_shift


def test_criterion_09_bin_semantics():
    with criterion(9, "five edges give five counts; top edge inclusive; totals add up"):
        edges = [0.0, 0.5, 1.5, 2.5, 20.0]
        values = np.array([0.1, 0.5, 1.0, 2.0, 3.0, 20.0, 20.0, 25.0])
        report = bin_count(values, edges)
        assert report.counts.size == 5
        np.testing.assert_array_equal(report.counts, [1, 2, 1, 1, 2])
        assert report.out_of_range == 1
        assert report.total == values.size

        report = bin_count(np.array([0.0, 1.0, 2.0, 3.0, 4.0]), [0, 1, 2, 3, 4])
        np.testing.assert_array_equal(report.counts, [1, 1, 1, 1, 1])

        rng = np.random.default_rng(20260829)
        data = rng.uniform(-5.0, 25.0, size=500)
        report = bin_count(data, edges)
        assert report.counts.size == 5
        assert report.total == 500


def test_criterion_10_simulation_protocol():
    with criterion(10, "order-statistic mean sample: deterministic, sorted, near quantiles"):
        spec = gamma(3.0, 0.25)
        n, reps, seed = 90, 10_000, 777
        first = artificial_mean_sample(spec, n, reps, seed, workers=1)
        again = artificial_mean_sample(spec, n, reps, seed, workers=1)
        threaded = artificial_mean_sample(spec, n, reps, seed, workers=8)
        assert first.values.tobytes() == again.values.tobytes()
        assert first.values.tobytes() == threaded.values.tobytes()
        assert np.all(np.diff(first.values) >= 0.0)

        # Central ranks 15..80: the (r-0.5)/n quantile approximation of a
        # mean order statistic carries >1% systematic error below rank ~12
        # at this skewness, so the comparison window starts at 15.
        ranks = np.arange(15, 81)
        grid = (ranks - 0.5) / n
        oracle = stats.gamma.ppf(grid, 3.0, scale=0.25)
        observed = first.values[ranks - 1]
        rel = np.abs(observed - oracle) / oracle
        assert float(np.max(rel)) <= 0.01


def test_criterion_11_end_to_end_determinism(tmp_path):
    with criterion(11, "fit CLI: identical config+seed gives byte-identical reports"):
        config = tmp_path / "run.toml"
        config.write_text(
            f'[run]\ndata = "{fixture_path("halfline_n90")}"\nseed = 7\n\n'
            "[optimizer]\npopulation = 24\ngenerations = 40\nrestarts = 2\n\n"
            '[[estimator]]\nkind = "mle"\nfamily0 = "gamma"\n\n'
            '[[estimator]]\nkind = "mqle"\nfamily0 = "gamma"\nq = 0.53\n'
        )
        outputs = []
        for run in ("one", "two"):
            out = tmp_path / run
            proc = subprocess.run(
                [
                    sys.executable,
                    "-m",
                    "qlid",
                    "fit",
                    "--config",
                    str(config),
                    "--out-dir",
                    str(out),
                ],
                capture_output=True,
                text=True,
            )
            assert proc.returncode == 0, proc.stderr
            outputs.append(out)
        one, two = outputs
        report_one = (one / "report.json").read_bytes()
        report_two = (two / "report.json").read_bytes()
        assert report_one == report_two
        assert (one / "comparison.csv").read_bytes() == (two / "comparison.csv").read_bytes()
        # Sanity: the identical reports still describe both estimators.
        payload = json.loads(report_one)
        assert [r["kind"] for r in payload["results"]] == ["mle", "mqle"]
