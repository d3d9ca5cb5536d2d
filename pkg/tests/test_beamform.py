"""Coherent-gain mapping tests: phase-error model and Monte Carlo."""

import numpy as np
import pytest
from scipy.constants import c as SPEED_OF_LIGHT

from rangekit.beamform import (
    CoherenceScenario,
    CoherentGainReport,
    analytic_gain_fraction,
    coherent_gain,
    gain_fractions,
    range_to_phase_error,
)

F_ACTION = 1.88e9


def test_phase_error_tenth_wavelength():
    lam = SPEED_OF_LIGHT / F_ACTION
    assert range_to_phase_error(lam / 10.0, F_ACTION) == pytest.approx(2 * np.pi / 10, rel=1e-12)
    assert range_to_phase_error(lam, F_ACTION) == pytest.approx(2 * np.pi, rel=1e-12)
    assert range_to_phase_error(0.0, F_ACTION) == 0.0


def test_phase_error_two_way_doubles():
    one = range_to_phase_error(0.01, F_ACTION)
    assert range_to_phase_error(0.01, F_ACTION, two_way=True) == pytest.approx(2 * one, rel=1e-15)


def test_phase_error_validation():
    with pytest.raises(ValueError):
        range_to_phase_error(-1e-3, F_ACTION)
    with pytest.raises(ValueError):
        range_to_phase_error(1e-3, 0.0)


def test_analytic_gain_values():
    # (1 + 9*exp(-0.25)) / 10, precomputed
    assert analytic_gain_fraction(10, 0.5) == pytest.approx(0.8009207047642644, rel=1e-12)
    assert analytic_gain_fraction(5, 0.0) == 1.0
    # two nodes, huge phase error: cross term dies, half the ideal power
    assert analytic_gain_fraction(2, 50.0) == pytest.approx(0.5, rel=1e-12)
    with pytest.raises(ValueError):
        analytic_gain_fraction(1, 0.5)
    with pytest.raises(ValueError):
        analytic_gain_fraction(4, -0.1)


def sigma_range_for(sigma_phi, f_hz=F_ACTION):
    return sigma_phi * SPEED_OF_LIGHT / (2 * np.pi * f_hz)


def test_coherent_gain_zero_error_is_exact():
    scen = CoherenceScenario(n_nodes=8, f_action_hz=F_ACTION, sigma_range_m=0.0, trials=256)
    report = coherent_gain(scen)
    assert report.mean_gain_fraction == 1.0
    assert report.analytic_gain_fraction == 1.0
    assert report.p_gain_above_90pct == 1.0


def test_coherent_gain_matches_closed_form():
    scen = CoherenceScenario(
        n_nodes=10,
        f_action_hz=F_ACTION,
        sigma_range_m=sigma_range_for(0.5),
        trials=20000,
        seed=7,
    )
    report = coherent_gain(scen)
    assert scen.sigma_phi() == pytest.approx(0.5, rel=1e-12)
    assert report.mean_gain_fraction == pytest.approx(report.analytic_gain_fraction, rel=0.02)
    assert 0.0 < report.p_gain_above_90pct < 1.0


def test_gain_fractions_bounded():
    scen = CoherenceScenario(4, F_ACTION, sigma_range_for(1.5), trials=500)
    g = gain_fractions(scen)
    assert g.shape == (500,)
    assert np.all(g >= 0.0) and np.all(g <= 1.0)


def test_mean_gain_decreases_with_sigma():
    means = []
    for sigma_phi in (0.0, 0.3, 0.6, 0.9):
        scen = CoherenceScenario(10, F_ACTION, sigma_range_for(sigma_phi), trials=4000, seed=11)
        means.append(np.mean(gain_fractions(scen)))
    assert all(a > b for a, b in zip(means, means[1:]))


def test_workers_do_not_change_results():
    scen = CoherenceScenario(6, F_ACTION, sigma_range_for(0.7), trials=999, seed=5)
    base = gain_fractions(scen, workers=1)
    for workers in (2, 8):
        assert np.array_equal(gain_fractions(scen, workers=workers), base)


def test_scenario_validation():
    with pytest.raises(ValueError):
        CoherenceScenario(1, F_ACTION, 0.01, trials=10)
    with pytest.raises(ValueError):
        CoherenceScenario(4, 0.0, 0.01, trials=10)
    with pytest.raises(ValueError):
        CoherenceScenario(4, F_ACTION, -0.01, trials=10)
    with pytest.raises(ValueError):
        CoherenceScenario(4, F_ACTION, 0.01, trials=0)


def test_report_validation():
    with pytest.raises(ValueError):
        CoherentGainReport(1.2, 0.5, 0.5)
    with pytest.raises(ValueError):
        CoherentGainReport(0.5, 0.5, -0.1)
