import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from icef.engine import run
from icef.ensemble import simulate, unclipped_papr
from icef.errors import ExtrapolationError, StatisticsError
from icef.masks import SubBandLayout, centered_clean_mask, icf_mask, subband_mask
from icef.metrics import (
    CcdfCurve,
    Feasibility,
    MseAccumulator,
    MseRequirementTable,
    analytic_ccdf,
    analytic_papr_at_probability,
    empirical_ccdf,
    estimate_ccdf,
    feasibility,
    format_db,
    json_db,
    mse_report,
    noise_spectrum,
    papr_at_probability,
    papr_quantile_db,
    to_db,
)
from icef.waveform import ClipperConfig

from helpers import qpsk_symbol

samples_st = st.lists(st.floats(0, 20, allow_nan=False), min_size=1, max_size=200)


# -- CCDF -----------------------------------------------------------------

def test_ccdf_strict_inequality():
    c = estimate_ccdf([5.0] * 10, [4.9, 5.0])
    assert c.probability.tolist() == [1.0, 0.0]
    assert c.sample_count == 10


def test_ccdf_half():
    assert estimate_ccdf([1, 2, 3, 4], [2.5]).probability.tolist() == [0.5]


def test_ccdf_errors():
    with pytest.raises(StatisticsError):
        estimate_ccdf([], [1.0])
    with pytest.raises(StatisticsError):
        estimate_ccdf([1.0], [2.0, 1.0])


@given(samples=samples_st, grid=st.lists(st.floats(-1, 21, allow_nan=False), min_size=1, max_size=50))
def test_ccdf_monotone(samples, grid):
    c = estimate_ccdf(samples, sorted(grid))
    assert np.all(np.diff(c.probability) <= 0)
    assert np.all((c.probability >= 0) & (c.probability <= 1))


def test_log_linear_interpolation():
    curve = CcdfCurve(np.array([6.0, 7.0]), np.array([0.1, 0.001]), 1000)
    assert papr_at_probability(curve, 0.01) == pytest.approx(6.5, abs=1e-12)


def test_readout_refuses_extrapolation():
    curve = estimate_ccdf([1.0, 2.0], [5.0, 6.0])
    with pytest.raises(ExtrapolationError):
        papr_at_probability(curve, 0.01)
    curve = CcdfCurve(np.array([6.0, 7.0]), np.array([0.1, 0.001]), 1000)
    with pytest.raises(ExtrapolationError):
        papr_at_probability(curve, 0.5)
    with pytest.raises(ExtrapolationError):
        papr_at_probability(curve, 1e-4)
    with pytest.raises(StatisticsError):
        papr_at_probability(curve, 1.5)


@settings(deadline=None)
@given(samples=st.lists(st.floats(0, 20, allow_nan=False), min_size=20, max_size=300),
       p=st.floats(0.05, 0.9), q=st.floats(0.05, 0.9))
def test_readout_monotone_in_p(samples, p, q):
    curve = empirical_ccdf(samples)
    lo, hi = sorted((p, q))
    try:
        a, b = papr_at_probability(curve, lo), papr_at_probability(curve, hi)
    except ExtrapolationError:
        return
    assert a >= b - 1e-12


def test_ccdf_csv_columns():
    text = estimate_ccdf([1, 2, 3, 4], [2.5, 3.0]).to_csv()
    assert text.splitlines() == ["level_db,ccdf", "2.5000,0.5", "3.0000,0.25"]


def test_analytic_oracle_round_trip():
    g = analytic_papr_at_probability(0.01, 1272)
    assert analytic_ccdf(g, 1272) == pytest.approx(0.01, rel=1e-10)
    assert 10.5 <= g <= 11.5


@pytest.fixture(scope="module")
def nr_baseline(nr):
    return unclipped_papr(nr, "QPSK", 10 ** 4, seed=2024)


@pytest.mark.slow
def test_unclipped_ccdf_not_below_nyquist_oracle(nr_baseline):
    # oversampling only adds peaks, so the measured curve sits at or right of the closed form
    measured = papr_quantile_db(nr_baseline)
    assert measured >= analytic_papr_at_probability(0.01, 1272)
    assert 10.5 <= measured <= 11.5


@pytest.mark.slow
def test_unclipped_ccdf_within_03_db_of_oracle(nr_baseline):
    gap = papr_quantile_db(nr_baseline) - analytic_papr_at_probability(0.01, 1272)
    assert abs(gap) <= 0.3


# -- MSE ------------------------------------------------------------------

def test_no_clipping_gives_neg_inf(small):
    sym = qpsk_symbol(small, 1)
    res = run(sym, ClipperConfig(40.0, 3, amplitude_threshold=1e6), icf_mask(small))
    assert res.iterations_used == 0
    rep = mse_report([res], icf_mask(small))
    assert rep.distorted_mse_db == -math.inf
    assert not rep.per_subcarrier_error_power.any()
    assert format_db(rep.distorted_mse_db) == "-inf"
    assert json_db(rep.distorted_mse_db) == "-inf"


def test_binary_mask_clean_error_is_zero(small):
    m = centered_clean_mask(small, 4)
    results = [run(s, ClipperConfig.for_symbol(s, 5.0, 8), m) for s in (qpsk_symbol(small, i) for i in range(10))]
    rep = mse_report(results, m)
    assert rep.clean_max_error == 0.0
    assert math.isfinite(rep.distorted_mse_db)
    assert rep.symbol_count == 10


def test_mse_aggregate_matches_direct_sum(small):
    m = centered_clean_mask(small, 4)
    results = [run(s, ClipperConfig.for_symbol(s, 5.0, 8), m) for s in (qpsk_symbol(small, i) for i in range(10))]
    X0 = np.stack([r.symbol.reference_spectrum for r in results])
    X = np.stack([r.symbol.current_spectrum for r in results])
    b = m.bins("noisy")
    direct = 10 * np.log10(np.sum(np.abs(X[:, b] - X0[:, b]) ** 2) / np.sum(np.abs(X0[:, b]) ** 2))
    rep = mse_report(results, m)
    assert rep.distorted_mse_db == pytest.approx(direct, abs=1e-10)
    # reference-power weighted mean of the per-subcarrier ratios over the noisy set
    ref = np.sum(np.abs(X0) ** 2, axis=0)
    on_noisy = np.isin(rep.subcarriers, m.noisy_set)
    w = ref[rep.subcarriers[on_noisy] % small.transform_size]
    weighted = np.sum(rep.per_subcarrier_error_power[on_noisy] * w) / w.sum()
    assert 10 * np.log10(weighted) == pytest.approx(direct, abs=1e-10)


def test_accumulator_merge_is_order_free(small, rng):
    a, b = MseAccumulator(small.transform_size), MseAccumulator(small.transform_size)
    X0 = rng.standard_normal((4, small.transform_size)) + 0j
    X = X0 + 0.1 * rng.standard_normal(X0.shape)
    a.add(X0[:2], X[:2])
    b.add(X0[2:], X[2:])
    whole = MseAccumulator(small.transform_size).add(X0, X)
    merged = MseAccumulator(small.transform_size).merge(a).merge(b)
    np.testing.assert_allclose(merged.error, whole.error, rtol=1e-14)
    assert merged.count == 4


def test_empty_collections():
    with pytest.raises(StatisticsError):
        mse_report([], None)
    with pytest.raises(StatisticsError):
        MseAccumulator(8).noise_spectrum_db()


@pytest.mark.slow
def test_icf_error_is_flat_across_band(nr):
    res = simulate(nr, icf_mask(nr), "QPSK", [6.0], [10], symbols=10 ** 4, seed=8, method="ICF")
    rep = res.cells[(6.0, 10)].mse.report(icf_mask(nr))
    per_sc = rep.per_subcarrier_db()
    assert per_sc.max() - per_sc.min() <= 3.0


def test_noise_spectrum_sentinels(small):
    m = centered_clean_mask(small, 4)
    results = [run(s, ClipperConfig.for_symbol(s, 5.0, 8), m) for s in (qpsk_symbol(small, i) for i in range(10))]
    spec = noise_spectrum(results, m)
    assert spec.shape == (small.transform_size,)
    assert np.all(spec[m.bins("clean")] == -np.inf)
    assert np.all(spec[m.bins("null")] == -np.inf)
    assert np.all(np.isfinite(spec[m.bins("noisy")]))


def test_noise_spectrum_icf_covers_band(small):
    m = icf_mask(small)
    results = [run(s, ClipperConfig.for_symbol(s, 5.0, 8), m) for s in (qpsk_symbol(small, i) for i in range(20))]
    spec = noise_spectrum(results, m)
    assert np.all(np.isfinite(spec[m.bins("noisy")]))
    assert np.all(spec[m.bins("null")] == -np.inf)


def test_noise_confined_to_noisy_subbands(small):
    m = subband_mask(small, SubBandLayout(10, 12, {3, 4, 5, 6}))
    res = simulate(small, m, "QPSK", [5.0], [8], symbols=64, seed=3)
    spec = res.cells[(5.0, 8)].mse.noise_spectrum_db()
    assert np.all(np.isfinite(spec[m.bins("noisy")]))
    assert np.all(spec[m.bins("clean")] == -np.inf)


def test_to_db():
    assert to_db(0.0) == -math.inf
    assert to_db(10.0) == pytest.approx(10.0)
    assert to_db([0.0, 1.0]).tolist() == [-math.inf, 0.0]


def test_format_db():
    assert format_db(1.23456) == "1.2346"
    assert format_db(math.inf) == "inf"
    with pytest.raises(StatisticsError):
        format_db(math.nan)


# -- feasibility ----------------------------------------------------------

def test_requirement_table():
    t = MseRequirementTable()
    assert t.limit_db("QPSK") == -18.0 and t.limit_db("16QAM") == -21.0
    with pytest.raises(StatisticsError):
        MseRequirementTable({"QPSK": -15.0, "QAM16": -10.0})


@pytest.mark.parametrize("achieved, target, mse, mod, expected", [
    (6.1, 6.0, -20.0, "QPSK", Feasibility.FEASIBLE),
    (6.5, 6.0, -30.0, "QPSK", Feasibility.PAPR_LIMITED),
    (6.0, 6.0, -10.0, "QPSK", Feasibility.MSE_LIMITED),
    (7.0, 6.0, -10.0, "QPSK", Feasibility.BOTH_LIMITED),
    (6.2, 6.0, -18.0, "QPSK", Feasibility.FEASIBLE),
    (8.0, 8.0, -32.0, "QAM256", Feasibility.FEASIBLE),
    (6.0, 6.0, -31.0, "QAM256", Feasibility.MSE_LIMITED),
])
def test_feasibility_rules(achieved, target, mse, mod, expected):
    assert feasibility(achieved, target, 0.2, mse, mod) is expected
    assert feasibility(achieved, target, 0.2, mse, mod).value == expected.value
