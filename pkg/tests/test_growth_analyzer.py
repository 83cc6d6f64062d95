import math

import pytest

from src.algebra.quiver import validate_quiver
from src.growth.growth_analyzer import (
    EntropyReport,
    GrowthSeries,
    delta_bounds,
    deformation_invariance_check,
    entropy_shift,
    entropy_twist_power,
    estimate_growth_rate,
    exact_entropy,
    generator_rep,
    poincare_series,
    spectral_bound_report,
    twist_mass_series,
    upper_profile_series,
)
from src.representations.representation import zero_rep
from src.stability.corpus import standard_charge_family
from src.stability.hn_engine import CohomologyProfile
from src.twists.words import parse_word


def test_estimate_on_linear_logs():
    series = GrowthSeries.from_logs([0.5 * n + 3.0 for n in range(20)], label="line")
    estimate = estimate_growth_rate(series)
    assert estimate.slope == pytest.approx(0.5)
    assert estimate.slope_increment == pytest.approx(0.5)
    assert estimate.gap < 1e-9
    assert estimate.residual_variance < 1e-12
    assert (estimate.tail_start, estimate.tail_end) == (10, 19)
    assert estimate.to_dict()['tail_window'] == [10, 19]


def test_estimate_needs_enough_samples():
    with pytest.raises(ValueError, match="at least 8"):
        estimate_growth_rate(GrowthSeries.from_logs([0.0] * 7))


def test_series_validation():
    with pytest.raises(ValueError):
        GrowthSeries(((0, 0.0), (0, 1.0)))
    with pytest.raises(ValueError):
        GrowthSeries.from_values([1.0, 0.0])
    with pytest.raises(ValueError):
        GrowthSeries.from_logs([0.0, math.inf])
    series = GrowthSeries.from_values([1.0, math.e], start=5)
    assert series.ns == [5, 6]
    assert series.log_values == pytest.approx([0.0, 1.0])


def test_entropy_closed_forms(a2):
    assert entropy_twist_power(3, -1.0) == 2.0
    assert entropy_twist_power(3, 1.0) == 0.0
    assert entropy_twist_power(5, -0.5, a2) == 2.0
    assert entropy_shift(2, 0.5) == 1.0
    with pytest.raises(ValueError):
        entropy_twist_power(2, 0.0)
    with pytest.raises(ValueError):
        entropy_twist_power(3, 0.0, validate_quiver([[0, 0], [0, 0]]))
    with pytest.raises(ValueError):
        entropy_twist_power(3, 0.0, validate_quiver([[0]]))


def test_exact_entropy_only_for_single_generators(a2):
    assert exact_entropy(a2, 3, parse_word("T1"), -1.0) == 2.0
    assert exact_entropy(a2, 3, parse_word("S[2]"), 1.0) == 2.0
    assert exact_entropy(a2, 3, parse_word("T1 T2"), 0.0) is None
    assert exact_entropy(a2, 3, parse_word("T1'"), 0.0) is None


@pytest.mark.parametrize("t, expected", [(-1.0, 2.0), (1.0, 0.0)])
def test_twist_mass_series_slope(sigma0_a2, a2, t, expected):
    series = twist_mass_series(sigma0_a2, a2, 3, 0, t, n_max=16)
    assert len(series) == 17
    assert estimate_growth_rate(series).slope == pytest.approx(expected, abs=1e-3)


def test_poincare_series_slope(a2):
    estimate = estimate_growth_rate(poincare_series(a2, 3, 0, -1.0, n_max=16))
    assert estimate.slope == pytest.approx(2.0, abs=1e-3)


def test_series_need_eight_steps(sigma0_a2, a2):
    with pytest.raises(ValueError):
        twist_mass_series(sigma0_a2, a2, 3, 0, 0.0, n_max=4)
    with pytest.raises(ValueError):
        upper_profile_series(a2, 3, parse_word("T1"), 0.0, n_max=7)


def test_upper_series_dominates_mass_series(sigma0_a2, a2):
    upper = upper_profile_series(a2, 3, parse_word("T1"), -1.0, n_max=12)
    exact = poincare_series(a2, 3, 0, -1.0, n_max=12)
    assert all(u >= e - 1e-9 for u, e in zip(upper.log_values, exact.log_values))


def test_spectral_bound_report_kronecker(k3):
    report = spectral_bound_report(k3, 3, parse_word("T1 T2"), n_max=40)
    assert report.lower_log_rho == pytest.approx(math.log((7 + math.sqrt(45)) / 2), rel=1e-9)
    assert report.exact is None
    assert report.upper >= report.lower - 0.05
    data = report.to_dict()
    assert data['word'] == "T1 T2"
    assert data['upper_bound'] == report.upper
    assert "no closed form for this word" in data['diagnostics']['notes']


def test_spectral_bound_report_single_twist(a2):
    report = spectral_bound_report(a2, 3, parse_word("T1"), n_max=16, t=-1.0)
    assert report.exact == 2.0
    assert report.lower == pytest.approx(2.0, abs=0.01)
    assert report.lower_log_rho is None
    assert report.upper >= 2.0 - 0.05
    at_zero = spectral_bound_report(a2, 3, parse_word("T1"), n_max=16)
    assert at_zero.lower_log_rho == pytest.approx(0.0, abs=1e-12)


def test_general_word_away_from_zero_is_bounds_only(a2):
    report = spectral_bound_report(a2, 3, parse_word("T1 T2"), n_max=12, t=0.5)
    assert report.lower is None
    assert report.mass_estimate is None
    assert any(note.startswith("bounds-only") for note in report.notes)


def test_report_violations():
    report = EntropyReport(word="T1", t=0.0, lower=1.0, exact=0.5, upper=0.2)
    problems = report.violations(0.05)
    assert len(problems) == 3
    assert EntropyReport(word="T1", t=0.0, lower=0.0, exact=0.0, upper=0.04).violations(0.05) == []


def test_delta_bounds(sigma0_a2, extension_a2, a2):
    bounds = delta_bounds(sigma0_a2, extension_a2, 0.0)
    assert bounds.as_tuple() == pytest.approx((1.0, 2.0))
    profile = CohomologyProfile.single(extension_a2)
    assert delta_bounds(sigma0_a2, profile, 0.0) == bounds
    with pytest.raises(ValueError):
        delta_bounds(sigma0_a2, zero_rep(a2, 2), 0.0)


def test_generator_rep(a3):
    assert generator_rep(a3).dims == (1, 1, 1)


def test_deformation_invariance(a2):
    family = standard_charge_family(2)[:3]
    assert deformation_invariance_check(a2, 3, 0, -1.0, family, n_max=16)
    assert deformation_invariance_check(a2, 3, 0, 0.0, family[:1], n_max=16)
