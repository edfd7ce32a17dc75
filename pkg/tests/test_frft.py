import numpy as np
import pytest

import util
from chirplock.frft import (
    FrftOrder,
    MultiOrderTransformer,
    canonicalize_order,
    frft,
    frft_block,
    frft_two_phase,
    predict_matched_order,
    transform_units,
)
from chirplock.signals import ChirpParams, gen_chirp


def cdft(x):
    n = x.size
    return np.fft.fftshift(np.fft.fft(np.fft.ifftshift(x))) / np.sqrt(n)


def cidft(x):
    n = x.size
    return np.fft.fftshift(np.fft.ifft(np.fft.ifftshift(x))) * np.sqrt(n)


def test_order_properties():
    o = FrftOrder(0.5)
    assert o.canonical == 0.5
    assert o.alpha == pytest.approx(np.pi / 4.0)
    assert o.gamma == pytest.approx(1.0)
    assert o.beta == pytest.approx(np.sqrt(2.0))
    assert FrftOrder(-1.5).canonical == pytest.approx(2.5)
    assert FrftOrder(6.0).canonical == pytest.approx(2.0)
    for a in (0.0, 2.0, 4.0, -2.0):
        assert FrftOrder(a).gamma is None
        assert FrftOrder(a).beta is None
    with pytest.raises(ValueError):
        FrftOrder(np.nan)


def test_canonicalize_order():
    assert canonicalize_order(5.0) == pytest.approx(1.0)
    assert canonicalize_order(-0.5) == pytest.approx(3.5)
    assert canonicalize_order(0.0) == 0.0
    with pytest.raises(ValueError):
        canonicalize_order(np.inf)


@pytest.mark.parametrize("tf", [frft, frft_two_phase])
def test_special_orders_exact(tf):
    rng = np.random.default_rng(0)
    x = rng.standard_normal(256) + 1j * rng.standard_normal(256)

    r = tf(x, 0.0)
    assert np.abs(r.coefficients - x).max() <= 1e-9
    assert r.fft_calls == 0

    r = tf(x, 2.0)
    assert np.abs(r.coefficients - np.roll(x[::-1], 1)).max() <= 1e-9
    assert r.fft_calls == 0

    r = tf(x, 1.0)
    assert util.rel_err(r.coefficients, cdft(x)) <= 1e-12
    assert r.fft_calls == 1

    r = tf(x, 3.0)
    assert util.rel_err(r.coefficients, cidft(x)) <= 1e-12
    assert r.fft_calls == 1


def test_transform_units_table():
    cases = {
        0.7: (27, 12), 0.5: (27, 12), 1.5: (27, 12), -0.7: (27, 12),
        0.3: (28, 13), 1.7: (28, 13), -0.2: (28, 13), -1.8: (28, 13),
        1.0: (1, 1), 3.0: (1, 1), 0.0: (0, 0), 2.0: (0, 0), 4.0: (0, 0),
    }
    for a, (single, two) in cases.items():
        assert transform_units(4096, a, "single_phase") == single, a
        assert transform_units(4096, a, "two_phase") == two, a


@pytest.mark.parametrize("tf", [frft, frft_two_phase])
def test_unitarity_on_confined_signals(tf):
    for seed in range(3):
        x = util.confined(256, seed)
        for a in np.arange(0.1, 2.0, 0.2):
            y = tf(x, float(a)).coefficients
            assert abs(np.linalg.norm(y) - 1.0) <= 1e-3, (seed, a)


def test_order_additivity_and_inversion():
    x = util.confined(512, 11)
    ab = frft_two_phase(frft_two_phase(x, 0.4).coefficients, 0.5).coefficients
    direct = frft_two_phase(x, 0.9).coefficients
    assert util.rel_err(ab, direct) <= 1e-2
    back = frft_two_phase(frft_two_phase(x, 0.8).coefficients, -0.8).coefficients
    assert util.rel_err(back, x) <= 1e-2


def test_two_phase_matches_single_phase():
    rng = np.random.default_rng(5)
    for n in (256, 1024):
        x = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        for a in (0.05, 0.3, 0.5, 0.62, 1.0, 1.23, 1.5, 1.77, 2.4, -0.9):
            y1 = frft(x, a).coefficients
            y2 = frft_two_phase(x, a).coefficients
            assert util.rel_err(y2, y1) <= 1e-6, (n, a)


@pytest.mark.parametrize("tf", [frft, frft_two_phase])
def test_against_direct_quadrature(tf):
    """Both pipelines against an independent direct evaluation of the
    fractional-Fourier integral on the same grid."""
    for seed in (1, 2):
        x = util.confined(256, seed)
        for a in (0.3, 0.7, 1.0, 1.3, 1.8, -0.6, -1.2, 2.5):
            ref = util.oracle_frft(x, a)
            got = tf(x, a).coefficients
            assert util.rel_err(got, ref) <= 2e-4, (seed, a)


@pytest.mark.parametrize("variant", ["single_phase", "two_phase"])
def test_multi_order_engine_matches_scalar(variant):
    rng = np.random.default_rng(9)
    X = rng.standard_normal((8, 256)) + 1j * rng.standard_normal((8, 256))
    orders = np.array([0.0, 1.0, 2.0, 3.0, 0.62, 1.44, 0.5, 1.5])
    scalar_tf = frft if variant == "single_phase" else frft_two_phase

    eng = MultiOrderTransformer(X, variant)
    out, units = eng.transform(orders)
    for i, a in enumerate(orders):
        ref = scalar_tf(X[i], float(a))
        assert util.rel_err(out[i], ref.coefficients) <= 1e-10, a
        assert units[i] == ref.fft_calls == transform_units(256, float(a), variant)

    # scalar order broadcasts across the block
    out_b, units_b = eng.transform(0.8)
    for i in range(8):
        ref = scalar_tf(X[i], 0.8)
        assert util.rel_err(out_b[i], ref.coefficients) <= 1e-10
        assert units_b[i] == ref.fft_calls

    # repeated calls reuse staged state without drift
    again, _ = eng.transform(orders)
    assert np.array_equal(again, out)


def test_multi_order_engine_out_of_band_orders():
    rng = np.random.default_rng(10)
    X = rng.standard_normal((4, 128)) + 1j * rng.standard_normal((4, 128))
    orders = np.array([0.2, 1.8, -0.3, -1.7])
    eng = MultiOrderTransformer(X, "two_phase")
    out, units = eng.transform(orders)
    for i, a in enumerate(orders):
        ref = frft_two_phase(X[i], float(a))
        assert util.rel_err(out[i], ref.coefficients) <= 1e-10, a
        assert units[i] == ref.fft_calls == 13


def test_multi_order_engine_single_precision():
    rng = np.random.default_rng(12)
    X = rng.standard_normal((6, 512)) + 1j * rng.standard_normal((6, 512))
    orders = np.array([0.7, 1.2, 0.5, 1.5, 1.0, 0.9])
    ref, _ = MultiOrderTransformer(X, "two_phase").transform(orders)
    got, units = MultiOrderTransformer(
        X.astype(np.complex64), "two_phase").transform(orders)
    assert got.dtype == np.complex64
    for i in range(6):
        assert util.rel_err(got[i].astype(np.complex128), ref[i]) <= 1e-4
    assert np.array_equal(units, [12, 12, 12, 12, 1, 12])


def test_scaled_false_is_uniform_magnitude_scale():
    rng = np.random.default_rng(13)
    X = rng.standard_normal((3, 256)) + 1j * rng.standard_normal((3, 256))
    eng = MultiOrderTransformer(X, "two_phase")
    orders = np.array([0.62, 1.3, 0.8])
    full, _ = eng.transform(orders, scaled=True)
    raw, _ = eng.transform(orders, scaled=False)
    for i in range(3):
        keep = np.abs(raw[i]) > 1e-9
        ratio = np.abs(full[i][keep]) / np.abs(raw[i][keep])
        assert ratio.max() / ratio.min() - 1.0 <= 1e-9
    # exact special orders ignore the flag
    full1, _ = eng.transform(np.array([1.0, 2.0, 0.0]), scaled=True)
    raw1, _ = eng.transform(np.array([1.0, 2.0, 0.0]), scaled=False)
    assert np.array_equal(full1, raw1)


def test_matched_order_prediction_tracks_concentration():
    fs, n = 3e6, 1024
    for a_target in (0.8, 1.15):
        mu = np.tan((a_target - 1.0) * np.pi / 2.0) * fs ** 2 / n
        x = gen_chirp(ChirpParams(0.0, mu, n / fs, 0.0), fs)
        grid = np.linspace(0.5, 1.5, 201)
        peaks = [np.abs(frft_two_phase(x, float(a)).coefficients).max()
                 for a in grid]
        a_best = grid[int(np.argmax(peaks))]
        a_pred = predict_matched_order(mu, n, fs)
        assert abs(a_pred - a_target) <= 1e-12
        assert abs(a_best - a_pred) <= 0.02


def test_matched_order_prediction_limits():
    assert predict_matched_order(0.0, 4096, 3e6) == pytest.approx(1.0)
    assert predict_matched_order(1e30, 4096, 3e6) == pytest.approx(2.0, abs=1e-6)
    assert predict_matched_order(-1e30, 4096, 3e6) == pytest.approx(0.0, abs=1e-6)
    a1 = predict_matched_order(1e6, 4096, 3e6)
    a2 = predict_matched_order(2e6, 4096, 3e6)
    assert 1.0 < a1 < a2 < 2.0


def test_non_power_of_two_input_is_padded():
    x = util.confined(100, 3)
    r = frft(x, 0.8)
    assert r.coefficients.size == 100
    padded = np.zeros(128, dtype=complex)
    padded[:100] = x
    ref = frft(padded, 0.8).coefficients[:100]
    assert np.array_equal(r.coefficients, ref)
    with pytest.raises(ValueError):
        frft_two_phase(util.confined(99, 3), 0.8)


def test_input_validation():
    with pytest.raises(ValueError):
        frft(np.ones((2, 8), complex), 0.5)
    with pytest.raises(ValueError):
        frft(np.array([1.0 + 0j, np.inf]), 0.5)
    with pytest.raises(ValueError):
        frft(np.ones(1, complex), 0.5)
    with pytest.raises(ValueError):
        frft_block(np.ones(16, complex), 0.5)
    with pytest.raises(ValueError):
        frft_block(np.ones((2, 100), complex), 0.5)
    with pytest.raises(ValueError):
        MultiOrderTransformer(np.ones(16, complex))


def test_frft_block_matches_scalar():
    rng = np.random.default_rng(21)
    X = rng.standard_normal((4, 256)) + 1j * rng.standard_normal((4, 256))
    for variant, scalar_tf in (("single_phase", frft), ("two_phase", frft_two_phase)):
        out, units = frft_block(X, 0.73, variant)
        assert units == transform_units(256, 0.73, variant)
        for i in range(4):
            ref = scalar_tf(X[i], 0.73).coefficients
            assert util.rel_err(out[i], ref) <= 1e-12
