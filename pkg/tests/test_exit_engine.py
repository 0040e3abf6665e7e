# -*- coding: utf-8 -*-
#
# Copyright (C) 2025 Cottage Labs.
#
# ldpc-iterdesign is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Tests for EXIT curves, trajectories and iteration-constrained thresholds."""

import numpy as np
import pytest

from ldpc_iterdesign import exit_engine
from ldpc_iterdesign.component_codes import get_code
from ldpc_iterdesign.ensemble import DegreeDistributionPair
from ldpc_iterdesign.errors import ConfigError, ConvergenceError, UnsatisfiableBracketError, UnsupportedChannelError
from ldpc_iterdesign.exit_engine import (
    AwgnChannel,
    BecChannel,
    ExitModel,
    ThresholdQuery,
    cn_exit,
    exit_chart,
    iteration_constrained_threshold,
    j_fast,
    j_function,
    j_function_approx,
    j_inverse,
    j_inverse_fast,
    passes,
    run_trajectory,
    vn_exit,
)


def test_node_curves_on_bec():
    """Closed-form VN and SPC curves."""
    assert vn_exit(2, BecChannel(0.4), 0.5) == pytest.approx(0.8)
    assert cn_exit(get_code("spc-7"), "bec", 0.5) == pytest.approx(0.015625)


def test_channel_validation():
    """Channel parameters outside their range are configuration errors."""
    with pytest.raises(ConfigError):
        BecChannel(1.2)
    with pytest.raises(ConfigError):
        AwgnChannel(1.0, 1.0)


def test_awgn_channel_scaling():
    """sigma_ch^2 = 8 R Eb/N0 and the noise variance is 1 / (2 R Eb/N0)."""
    channel = AwgnChannel(0.0, 0.5)
    assert channel.sigma_ch == pytest.approx(2.0)
    assert channel.noise_std == pytest.approx(1.0)


def test_j_function_limits():
    """J(0) = 0 and J saturates."""
    assert j_function(0.0) == 0.0
    assert j_function(50.0) > 1 - 1e-9
    with pytest.raises(ValueError):
        j_function(-1.0)
    with pytest.raises(ValueError):
        j_inverse(1.0)


@pytest.mark.parametrize("sigma", [0.3, 1.0, 2.0, 4.5, 8.0])
def test_j_inverse_round_trip(sigma):
    """J^-1(J(sigma)) recovers sigma."""
    assert j_inverse(j_function(sigma)) == pytest.approx(sigma, abs=1e-6)


def test_j_curve_fit_breakpoint():
    """The curve fit breaks at the sigma where J is about 0.3646."""
    assert j_inverse(0.3646) == pytest.approx(1.6363, abs=2e-3)
    assert float(j_function_approx(1.6363)) == pytest.approx(0.3646, abs=2e-3)
    assert j_inverse(0.5) == pytest.approx(2.04, abs=0.02)


def test_j_approximations_close_to_quadrature():
    """Table interpolation and curve fit track the quadrature values."""
    sigmas = np.array([0.2, 0.9, 1.6363, 3.0, 6.0])
    exact = np.array([j_function(s) for s in sigmas])
    assert np.allclose(j_fast(sigmas), exact, atol=1e-6)
    assert np.allclose(j_function_approx(sigmas), exact, atol=2e-3)
    assert np.allclose(j_inverse_fast(exact), sigmas, atol=1e-4)


def test_awgn_rejects_generalized_checks(published):
    """Hamming check nodes have no AWGN EXIT curve."""
    with pytest.raises(UnsupportedChannelError):
        cn_exit(get_code("hamming-7-4"), "awgn", 0.5)
    with pytest.raises(UnsupportedChannelError):
        ExitModel(published("ensemble-a"), AwgnChannel(1.0, 0.5))


def test_regular_bec_threshold(regular_36):
    """The (3,6) ensemble with practically unlimited iterations sits near 0.4294."""
    threshold = iteration_constrained_threshold(ThresholdQuery(regular_36, i_max=5000, xi=0.9999))
    assert threshold.epsilon == pytest.approx(0.4294, abs=0.002)


def test_regular_awgn_threshold(regular_36):
    """The (3,6) ensemble over AWGN lands a little above 1.1 dB."""
    threshold = iteration_constrained_threshold(ThresholdQuery(regular_36, i_max=5000, channel="awgn"))
    assert 0.9 <= threshold.eb_n0_db <= 1.4


def test_table_one_bec_thresholds(published):
    """Ensembles B and C at their iteration budgets."""
    b = iteration_constrained_threshold(ThresholdQuery(published("ensemble-b"), i_max=10))
    c = iteration_constrained_threshold(ThresholdQuery(published("ensemble-c"), i_max=200))
    assert 0.355 <= b.epsilon <= 0.375
    assert 0.475 <= c.epsilon <= 0.495


def test_threshold_grows_with_iterations(regular_36):
    """More iterations never lower the threshold."""
    values = [
        iteration_constrained_threshold(ThresholdQuery(regular_36, i_max=i)).epsilon for i in (5, 20, 80)
    ]
    assert values == sorted(values)


def test_threshold_brackets_the_boundary(published):
    """The returned channel passes and a slightly worse one fails."""
    query = ThresholdQuery(published("ensemble-a"), i_max=10)
    threshold = iteration_constrained_threshold(query)
    assert passes(query, threshold)
    assert not passes(query, BecChannel(threshold.epsilon + 10 * query.tolerance))


@pytest.mark.parametrize(
    "region",
    [
        lambda e: e < 0.3 or 0.6 < e < 0.7,
        lambda e: e < 0.1 or 0.2 < e < 0.3,
    ],
)
def test_threshold_detects_non_monotone_criterion(monkeypatch, regular_36, region):
    """A criterion passing on two separate intervals is reported, not bisected silently."""
    monkeypatch.setattr(exit_engine, "passes", lambda query, channel: region(channel.epsilon))
    with pytest.raises(ConvergenceError, match="not monotone"):
        iteration_constrained_threshold(ThresholdQuery(regular_36, i_max=10))


def test_threshold_accepts_monotone_criterion(monkeypatch, regular_36):
    """A step criterion is bisected to its edge."""
    monkeypatch.setattr(exit_engine, "passes", lambda query, channel: channel.epsilon < 0.3)
    threshold = iteration_constrained_threshold(ThresholdQuery(regular_36, i_max=10))
    assert threshold.epsilon == pytest.approx(0.3, abs=1e-5)


def test_a_posteriori_criterion(regular_36):
    """The a-posteriori criterion gives a threshold in (0, 1)."""
    threshold = iteration_constrained_threshold(
        ThresholdQuery(regular_36, i_max=50, criterion="a-posteriori")
    )
    assert 0.0 < threshold.epsilon < 0.5


def test_query_validation(regular_36):
    """Malformed queries are configuration errors."""
    with pytest.raises(ConfigError):
        ThresholdQuery(regular_36, i_max=0)
    with pytest.raises(ConfigError):
        ThresholdQuery(regular_36, i_max=10, xi=1.0)
    with pytest.raises(ConfigError):
        ThresholdQuery(regular_36, i_max=10, channel="bsc")
    with pytest.raises(ConfigError):
        ThresholdQuery(regular_36, i_max=10, criterion="bit-error")


def test_unsatisfiable_requirement(regular_36):
    """One AWGN iteration cannot reach a near-certain level at any bracket point."""
    with pytest.raises(UnsatisfiableBracketError):
        iteration_constrained_threshold(
            ThresholdQuery(regular_36, i_max=1, channel="awgn", xi=1 - 1e-12)
        )


def test_trajectory_records(published):
    """Each iteration feeds the previous VN output into the CN."""
    trajectory = run_trajectory(published("ensemble-a"), BecChannel(0.3), 10)
    assert trajectory.records.shape == (10, 4)
    assert trajectory.records[0, 2] == pytest.approx(trajectory.initial_extrinsic)
    assert np.allclose(trajectory.records[1:, 2], trajectory.records[:-1, 1])
    assert (np.diff(trajectory.records[:, 1]) >= -1e-15).all()
    assert trajectory.achieved in (True, False)
    assert [r[0] for r in trajectory.rows()] == list(range(1, 11))


def test_trajectory_without_iterations(published):
    """Zero iterations leave only the channel pass and no verdict."""
    trajectory = run_trajectory(published("ensemble-a"), BecChannel(0.3), 0)
    assert trajectory.records.shape == (0, 4)
    assert trajectory.final_extrinsic == pytest.approx(0.7)
    assert trajectory.achieved is None


def test_exit_chart(regular_36):
    """Chart rows cover the a-priori grid with both curves."""
    chart = exit_chart(regular_36, BecChannel(0.4), points=11)
    rows = chart.rows()
    assert len(rows) == 11
    assert rows[0] == pytest.approx((0.0, 0.6, 0.0))
    assert rows[-1] == pytest.approx((1.0, 1.0, 1.0))
