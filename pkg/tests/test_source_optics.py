import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from numpy.testing import assert_allclose

from config.config import Config
from src.source_optics import (
    CoherenceCurve,
    DeltaPair,
    DetectorPair,
    DoubleTopHat,
    OpticalContext,
    SampledProfile,
    TopHat,
    coherence_double_source,
    coherence_single_tophat,
    four_path_amplitude,
    two_path_amplitude,
    two_path_intensity,
    vcz_numeric_coherence,
)
from src.utils.errors import ArgumentError, DataFormatError, NumericalError

ALPHA = 1.0e-6


def _three_lobes(ctx, alpha, n=200):
    return np.linspace(0.0, 3.0 * 2.0 * np.pi / (ctx.k * alpha), n)


def test_wavelength_round_trip():
    ctx = OpticalContext.from_wavelength(5.0e-7)
    assert ctx.wavelength == pytest.approx(5.0e-7)
    with pytest.raises(ArgumentError):
        OpticalContext(0.0)


def test_two_path_amplitude_at_coincidence():
    assert two_path_amplitude(1.0, 2.0, DetectorPair(0.3, 0.3)) == pytest.approx(2 * np.exp(0.9j))


def test_two_path_intensity_fringe(rng):
    for _ in range(20):
        k1, k2, x1, x2 = rng.uniform(-5, 5, size=4)
        expected = 2 + 2 * np.cos((k1 - k2) * (x1 - x2))
        assert two_path_intensity(k1, k2, DetectorPair(x1, x2)) == pytest.approx(expected, abs=1e-12)


def test_four_path_amplitude_constraint():
    with pytest.raises(ArgumentError):
        four_path_amplitude((1.0, 2.0, 3.0, 4.0), DetectorPair(0.0, 1.0))
    with pytest.raises(ArgumentError):
        four_path_amplitude((1.0, 2.0, 3.0), DetectorPair(0.0, 1.0))


def test_four_path_intensity_depends_on_k3_minus_k4():
    k = (5.0, 3.0, -1.0, 1.0)
    for b in np.linspace(0, 4, 9):
        intensity = abs(four_path_amplitude(k, DetectorPair(0.0, b))) ** 2
        assert intensity == pytest.approx(2 + 2 * np.cos(2.0 * b), abs=1e-12)


def test_single_tophat_closed_form(ctx):
    assert coherence_single_tophat(ctx, ALPHA, 0.0) == 1.0
    first_zero = 2 * np.pi / (ctx.k * ALPHA)
    assert coherence_single_tophat(ctx, ALPHA, first_zero) == pytest.approx(0.0, abs=1e-20)
    u = ctx.k * ALPHA * 0.3 / 2
    assert coherence_single_tophat(ctx, ALPHA, 0.3) == pytest.approx((np.sin(u) / u) ** 2, rel=1e-12)


def test_single_tophat_series_branch_is_continuous(ctx):
    threshold = Config.SERIES_THRESHOLD
    b_edge = 2 * threshold / (ctx.k * ALPHA)
    below = coherence_single_tophat(ctx, ALPHA, b_edge * 0.999)
    above = coherence_single_tophat(ctx, ALPHA, b_edge * 1.001)
    assert below == pytest.approx(above, abs=1e-12)


def test_coherence_rejects_bad_inputs(ctx):
    with pytest.raises(ArgumentError):
        coherence_single_tophat(ctx, -1.0, 1.0)
    with pytest.raises(ArgumentError):
        coherence_single_tophat(ctx, ALPHA, -1.0)
    with pytest.raises(ArgumentError):
        coherence_double_source(ctx, ALPHA, 0.0, 1.0)


def test_double_source_zeros(ctx):
    alpha, beta = ALPHA, 5 * ALPHA
    zero = np.pi / (2 * ctx.k * beta)
    assert coherence_double_source(ctx, alpha, beta, 0.0) == pytest.approx(1.0)
    assert coherence_double_source(ctx, alpha, beta, zero) == pytest.approx(0.0, abs=1e-20)


def test_vcz_tophat_matches_closed_form(ctx):
    b = _three_lobes(ctx, ALPHA)
    numeric = vcz_numeric_coherence(TopHat(ALPHA), ctx, b)
    assert isinstance(numeric, CoherenceCurve)
    assert np.max(np.abs(numeric.values - coherence_single_tophat(ctx, ALPHA, b))) <= 1e-6


def test_vcz_delta_pair_is_cosine_squared(ctx):
    b = _three_lobes(ctx, ALPHA)
    numeric = vcz_numeric_coherence(DeltaPair(ALPHA), ctx, b)
    assert_allclose(numeric.values, np.cos(ctx.k * ALPHA * b / 2) ** 2, atol=1e-12)


def test_vcz_double_tophat_structure(ctx):
    separation, width = 4 * ALPHA, ALPHA
    b = _three_lobes(ctx, width)
    double = vcz_numeric_coherence(DoubleTopHat(separation, width), ctx, b).values
    single = vcz_numeric_coherence(TopHat(width), ctx, b).values
    pair = vcz_numeric_coherence(DeltaPair(separation), ctx, b).values
    closed = coherence_double_source(ctx, width / 2, separation / 2, b)
    assert np.max(np.abs(double - closed)) <= 1e-6
    assert np.max(np.abs(double - single * pair)) <= 1e-6


def test_vcz_values_within_unit_interval(ctx):
    b = _three_lobes(ctx, ALPHA)
    values = vcz_numeric_coherence(DoubleTopHat(3 * ALPHA, ALPHA), ctx, b).values
    assert values.min() >= 0.0
    assert values.max() <= 1.0 + 1e-9


def test_vcz_sampled_profile_matches_tophat(ctx):
    angles = np.linspace(-ALPHA / 2, ALPHA / 2, 4001)
    profile = SampledProfile(angles, np.ones_like(angles))
    b = _three_lobes(ctx, ALPHA, 50)
    numeric = vcz_numeric_coherence(profile, ctx, b).values
    assert np.max(np.abs(numeric - coherence_single_tophat(ctx, ALPHA, b))) <= 1e-6


def test_vcz_highly_oscillatory_baselines():
    ctx = OpticalContext(1.0e15)
    b = np.linspace(0.0, 10.0, 200)
    numeric = vcz_numeric_coherence(TopHat(1.0e-9), ctx, b).values
    assert numeric[0] == pytest.approx(1.0, abs=1e-12)
    assert np.max(np.abs(numeric - coherence_single_tophat(ctx, 1.0e-9, b))) <= 1e-6


def test_vcz_reports_non_convergence(ctx, monkeypatch):
    monkeypatch.setattr(Config, "QUADRATURE_MAX_DOUBLINGS", 1)
    monkeypatch.setattr(Config, "QUADRATURE_START_POINTS", 5)
    with pytest.raises(NumericalError):
        vcz_numeric_coherence(TopHat(ALPHA), ctx, _three_lobes(ctx, ALPHA))


def test_sampled_profile_needs_three_points():
    with pytest.raises(ArgumentError):
        SampledProfile([0.0, 1.0], [1.0, 1.0])


def test_baselines_must_increase(ctx):
    with pytest.raises(ArgumentError):
        vcz_numeric_coherence(TopHat(ALPHA), ctx, [0.0, 2.0, 1.0])
    with pytest.raises(ArgumentError):
        vcz_numeric_coherence(TopHat(ALPHA), ctx, [])


def test_curve_csv_round_trip(tmp_path, ctx):
    b = _three_lobes(ctx, ALPHA, 20)
    curve = CoherenceCurve(b, coherence_single_tophat(ctx, ALPHA, b))
    path = curve.write_csv(tmp_path / "curve.csv")
    text = path.read_text()
    assert text.startswith("b,C\n")
    loaded = CoherenceCurve.read_csv(path)
    assert_allclose(loaded.values, curve.values, rtol=0, atol=0)


def test_curve_rejects_out_of_range_values():
    with pytest.raises(ArgumentError):
        CoherenceCurve([0.0, 1.0], [1.0, 1.5])
    unbounded = CoherenceCurve([0.0, 1.0], [1.0, 1.5], bounded=False)
    assert len(unbounded) == 2


def test_curve_csv_reports_line_number():
    with pytest.raises(DataFormatError) as excinfo:
        CoherenceCurve.from_csv_text("b,C\n0.0,1.0\n1.0,oops\n")
    assert excinfo.value.line_number == 3
    assert "line 3" in str(excinfo.value)


@settings(max_examples=25, deadline=None)
@given(st.floats(min_value=0.25, max_value=4.0), st.booleans())
def test_vcz_is_covariant_under_angle_scaling(scale, double):
    ctx = OpticalContext(1.0e7)
    b = _three_lobes(ctx, ALPHA, 60)

    def profile(c):
        if double:
            return DoubleTopHat(4 * ALPHA / c, ALPHA / c)
        return TopHat(ALPHA / c)

    reference = vcz_numeric_coherence(profile(1.0), ctx, b).values
    scaled = vcz_numeric_coherence(profile(scale), OpticalContext(scale * ctx.k), b).values
    assert np.max(np.abs(scaled - reference)) <= 1e-7
