import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from icef.engine import (
    clipping_noise,
    complexity,
    icef_step,
    icf_step,
    iterate_batch,
    overhead,
    run,
    transform_cost,
)
from icef.ensemble import simulate
from icef.errors import ContractError, DimensionError
from icef.masks import FrequencyMask, SubBandLayout, centered_clean_mask, icf_mask, subband_mask
from icef.metrics import papr_quantile_db
from icef.waveform import ClipperConfig, ofdm_modulate, papr_db

from helpers import qpsk_symbol
from oracles import icef_literal_step, icf_loop, naive_dft, naive_idft, polar_clip


def clipper_for(symbol, target, iterations=20, mode="fixed"):
    return ClipperConfig.for_symbol(symbol, target, iterations, mode)


# -- single steps ---------------------------------------------------------

def test_step_below_threshold_is_identity(small):
    sym = qpsk_symbol(small, 1)
    c = ClipperConfig(6.0, 5, amplitude_threshold=10 * np.abs(sym.current_time).max())
    out = icf_step(sym, c, icf_mask(small))
    np.testing.assert_allclose(out.current_time, sym.current_time, rtol=0, atol=1e-15)
    assert out.iteration == 1


def test_icf_step_one_sample_clip_matches_naive(toy):
    sym = ofdm_modulate(toy, np.array([1, 1j, -1, 1], complex))
    mag = np.sort(np.abs(sym.current_time))
    a = 0.5 * (mag[-1] + mag[-2])  # only the largest sample is clipped
    c = ClipperConfig(0.0, 1, amplitude_threshold=a)
    out = icf_step(sym, c, icf_mask(toy))
    Xbar = naive_dft(polar_clip(sym.current_time, a))
    keep = np.zeros(16, bool)
    keep[toy.active_bins] = True
    Xbar[~keep] = 0
    np.testing.assert_allclose(out.current_spectrum, Xbar, rtol=0, atol=1e-13)
    np.testing.assert_allclose(out.current_time, naive_idft(Xbar), rtol=0, atol=1e-13)


def test_icf_step_rejects_clean_mask(small):
    sym = qpsk_symbol(small, 2)
    with pytest.raises(ContractError, match="icef_step"):
        icf_step(sym, clipper_for(sym, 6), centered_clean_mask(small, 4))


def test_step_dimension_mismatch(small, toy):
    sym = qpsk_symbol(small, 2)
    with pytest.raises(DimensionError):
        icef_step(sym, clipper_for(sym, 6), icf_mask(toy))


def test_icef_without_clean_set_equals_icf(small):
    sym = qpsk_symbol(small, 3)
    c = clipper_for(sym, 5.0)
    m = icf_mask(small)
    for _ in range(4):
        a, b = icf_step(sym, c, m), icef_step(sym, c, m)
        assert np.array_equal(a.current_spectrum, b.current_spectrum)
        assert np.array_equal(a.current_time, b.current_time)
        sym = a


def test_icef_all_clean_returns_reference(small):
    sym = qpsk_symbol(small, 4)
    m = subband_mask(small, SubBandLayout(10, 12, set(range(10))))
    out = icef_step(sym, clipper_for(sym, 4.0), m)
    assert np.array_equal(out.current_spectrum, sym.reference_spectrum)
    assert np.array_equal(out.current_time, sym.reference_time)


def test_weighted_half_matches_hand_oracle(toy):
    sym = ofdm_modulate(toy, np.array([1, -1j, 1j, 1], complex))
    a = 0.8 * np.abs(sym.current_time).max()
    c = ClipperConfig(0.0, 1, amplitude_threshold=a)
    m = FrequencyMask.from_sets(toy, toy.active_indices, [], weights=[0.5] * 4)
    out = icef_step(sym, c, m)
    h = m.dense()
    X, x = icef_literal_step(sym.current_time, sym.reference_spectrum, h, a)
    np.testing.assert_allclose(out.current_spectrum, X, rtol=0, atol=1e-13)
    np.testing.assert_allclose(out.current_time, x, rtol=0, atol=1e-13)
    Xbar = naive_dft(polar_clip(sym.current_time, a))
    X0 = sym.reference_spectrum
    b = toy.active_bins
    np.testing.assert_allclose(out.current_spectrum[b], X0[b] + 0.5 * (Xbar[b] - X0[b]), atol=1e-13)


@settings(deadline=None, max_examples=25)
@given(seed=st.integers(0, 2 ** 31), clean=st.integers(0, 5), target=st.floats(3.0, 8.0))
def test_fast_path_matches_literal(small, seed, clean, target):
    sym = qpsk_symbol(small, seed)
    m = centered_clean_mask(small, 2 * clean)
    c = clipper_for(sym, target)
    fast = icef_step(sym, c, m)
    lit = icef_step(sym, c, m, literal=True)
    err = np.linalg.norm(fast.current_spectrum - lit.current_spectrum)
    assert err <= 1e-12 * np.linalg.norm(lit.current_spectrum)


@settings(deadline=None, max_examples=25)
@given(seed=st.integers(0, 2 ** 31), clean=st.integers(0, 5), steps=st.integers(1, 4))
def test_clean_and_null_bins_exact(small, seed, clean, steps):
    sym = qpsk_symbol(small, seed)
    m = centered_clean_mask(small, 2 * clean)
    c = clipper_for(sym, 4.0)
    for _ in range(steps):
        sym = icef_step(sym, c, m)
        assert np.array_equal(sym.current_spectrum[m.bins("clean")], sym.reference_spectrum[m.bins("clean")])
        assert not sym.current_spectrum[m.bins("null")].any()


def test_clipping_noise_definition(small):
    sym = qpsk_symbol(small, 9)
    c = clipper_for(sym, 5.0)
    noise = clipping_noise(sym, c)
    Xbar = np.fft.fft(polar_clip(sym.current_time, c.amplitude_threshold)) / small.transform_size
    np.testing.assert_allclose(noise.spectrum, Xbar - sym.reference_spectrum, atol=1e-14)


# -- full loop ------------------------------------------------------------

def test_run_target_above_papr(small):
    sym = qpsk_symbol(small, 5)
    res = run(sym, clipper_for(sym, 40.0), centered_clean_mask(small, 4))
    assert res.iterations_used == 0 and res.converged
    assert res.symbol is sym
    assert res.papr_trace_db.size == 1


def test_run_single_iteration_cap(small):
    sym = qpsk_symbol(small, 6)
    res = run(sym, clipper_for(sym, 2.0, iterations=1), icf_mask(small))
    assert res.iterations_used == 1 and not res.converged
    assert res.papr_trace_db.size == 2


@pytest.mark.parametrize("method", ["ICF", "ICEF"])
def test_run_matches_numpy_icf_loop(small, method):
    # ICF written against numpy.fft; ICEF with an empty clean set must agree
    for seed in range(5):
        sym = qpsk_symbol(small, seed)
        res = run(sym, clipper_for(sym, 6.0), icf_mask(small), method)
        x, it = icf_loop(sym.current_time, small.active_bins, 6.0, 20)
        assert res.iterations_used == it
        np.testing.assert_allclose(res.symbol.current_time, x, rtol=0, atol=1e-12)


def test_run_trace_and_guard(small):
    sym = qpsk_symbol(small, 7)
    res = run(sym, clipper_for(sym, 5.0, iterations=15), centered_clean_mask(small, 2))
    assert res.papr_trace_db.size == res.iterations_used + 1
    assert np.all(res.papr_trace_db[:-1] > 5.0)
    assert res.converged == (res.final_papr_db <= 5.0)
    assert res.converged or res.iterations_used == 15
    assert res.final_papr_db == pytest.approx(papr_db(res.symbol.current_time))


def test_run_without_trace(small):
    sym = qpsk_symbol(small, 7)
    c = clipper_for(sym, 5.0, iterations=6)
    full = run(sym, c, icf_mask(small))
    short = run(sym, c, icf_mask(small), keep_trace=False)
    assert np.array_equal(short.symbol.current_time, full.symbol.current_time)
    assert short.papr_trace_db.tolist() == [full.initial_papr_db, full.final_papr_db]


def test_run_errors(small):
    sym = qpsk_symbol(small, 8)
    c = clipper_for(sym, 5.0)
    with pytest.raises(ContractError):
        run(sym, c, icf_mask(small), "TR")
    stepped = icf_step(sym, c, icf_mask(small))
    with pytest.raises(ContractError):
        run(stepped, c, icf_mask(small))


def test_post_clip_bound_and_regrowth(small):
    sym = qpsk_symbol(small, 10)
    c = clipper_for(sym, 4.0)
    out = icf_step(sym, c, icf_mask(small))
    assert papr_db(out.current_time) < papr_db(sym.current_time)
    assert np.abs(out.current_time).max() > c.amplitude_threshold  # peak regrowth after filtering


def test_tracking_threshold_mode(small):
    sym = qpsk_symbol(small, 12)
    fixed = run(sym, clipper_for(sym, 5.0, 10), icf_mask(small))
    track = run(sym, clipper_for(sym, 5.0, 10, "tracking"), icf_mask(small))
    assert track.papr_trace_db[1] == fixed.papr_trace_db[1]  # first step: same power
    assert track.iterations_used >= 1


# -- batch kernel ---------------------------------------------------------

@pytest.mark.parametrize("clean", [0, 4])
def test_batch_equals_single_runs(small, clean):
    m = centered_clean_mask(small, clean)
    syms = [qpsk_symbol(small, 100 + i) for i in range(6)]
    X0 = np.stack([s.reference_spectrum for s in syms])
    states = {s.cap: (s.spectra.copy(), s.iterations.copy()) for s in iterate_batch(X0, 6.0, [1, 3, 8], m)}
    for cap, (spectra, iters) in states.items():
        for i, sym in enumerate(syms):
            res = run(sym, clipper_for(sym, 6.0, cap), m)
            assert iters[i] == res.iterations_used
            assert np.array_equal(spectra[i], res.symbol.current_spectrum)


def test_batch_argument_checks(small):
    m = icf_mask(small)
    X0 = np.zeros((2, 8), complex)
    with pytest.raises(DimensionError):
        next(iterate_batch(X0, 6.0, [1], m))
    good = np.stack([qpsk_symbol(small, 1).reference_spectrum])
    with pytest.raises(ContractError):
        next(iterate_batch(good, 6.0, [0], m))
    with pytest.raises(ContractError):
        next(iterate_batch(good, 6.0, [1], centered_clean_mask(small, 2), "ICF"))


@pytest.mark.slow
def test_one_icf_iteration_is_not_enough(nr):
    res = simulate(nr, icf_mask(nr), "QPSK", [6.0], [1], symbols=1000, seed=21, method="ICF")
    one = papr_quantile_db(res.cells[(6.0, 1)].papr_db)
    start = papr_quantile_db(res.initial_papr_db)
    assert one < start
    assert one > 6.0


# -- operation counts -----------------------------------------------------

def test_complexity_table_i(nr):
    assert transform_cost(16384) == (180228, 638980)
    icf = complexity(nr, "ICF")
    assert (icf.real_mults_per_iter, icf.real_adds_per_iter) == (360456, 1277960)
    binary = complexity(nr, "ICEF-binary")
    assert (binary.real_mults_per_iter, binary.real_adds_per_iter) == (360456, 1277960)
    w = complexity(16384, "ICEF-weighted")
    assert (w.real_mults_per_iter - 360456, w.real_adds_per_iter - 1277960) == (32768, 65536)
    om, oa = overhead(nr)
    assert round(100 * om, 2) == 9.09 and round(100 * oa, 2) == 5.13


def test_complexity_errors():
    with pytest.raises(DimensionError):
        complexity(1000)
    with pytest.raises(ContractError):
        complexity(1024, "SLM")


@given(m=st.integers(2, 20))
def test_complexity_non_negative(m):
    e = complexity(1 << m, "ICEF-weighted")
    assert e.real_mults_per_iter >= 0 and e.real_adds_per_iter >= 0
