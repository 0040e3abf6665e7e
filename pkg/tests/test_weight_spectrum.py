# -*- coding: utf-8 -*-
#
# Copyright (C) 2025 Cottage Labs.
#
# ldpc-iterdesign is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Tests for growth rates of the ensemble weight distribution."""

from math import log

import pytest

from ldpc_iterdesign.component_codes import get_code
from ldpc_iterdesign.errors import BadGrowthError, UnrealizableError
from ldpc_iterdesign.weight_spectrum import (
    alpha_star,
    average_enumerator_from_counts,
    brute_force_average_enumerator,
    extrapolate_exponent,
    good_growth,
    growth_curve,
    growth_rate,
)

SEVEN = ["ensemble-a", "ensemble-b", "ensemble-c", "ensemble-d", "ensemble-e", "ensemble-f", "ensemble-g"]


@pytest.mark.parametrize(
    "alpha, expected", [(0.1, 0.065521), (0.2, 0.172574), (0.3, 0.266215), (0.5, log(2) / 2)]
)
def test_regular_growth_rate(regular_36, alpha, expected):
    """Growth rate of the (3,6) ensemble."""
    assert growth_rate(regular_36, alpha) == pytest.approx(expected, abs=1e-3)


def test_growth_rate_domain(regular_36):
    """alpha must lie strictly inside (0, 1)."""
    with pytest.raises(ValueError):
        growth_rate(regular_36, 0.0)
    with pytest.raises(ValueError):
        growth_rate(regular_36, 1.0)


def test_regular_alpha_star(regular_36):
    """The (3,6) ensemble crosses zero near 0.023."""
    assert alpha_star(regular_36, points=60) == pytest.approx(0.0227, abs=0.003)


def test_alpha_star_needs_good_growth(published):
    """Bad-growth ensembles have no alpha*."""
    with pytest.raises(BadGrowthError):
        alpha_star(published("ensemble-c"))


@pytest.mark.parametrize("name", SEVEN)
def test_small_weight_sign_matches_classification(published, name):
    """G(1e-3) is negative exactly for the good-growth ensembles."""
    ddp = published(name)
    assert (growth_rate(ddp, 1e-3) < 0) == good_growth(ddp)


def test_growth_classification(published):
    """A, B and E have good growth; C, D, F and G do not."""
    good = {name for name in SEVEN if good_growth(published(name))}
    assert good == {"ensemble-a", "ensemble-b", "ensemble-e"}


def test_growth_curve(published):
    """Curves carry samples, the class and the crossing point."""
    curve = growth_curve(published("ensemble-c"), points=12)
    assert len(curve.rows()) == 12
    assert curve.good_growth is False
    assert curve.alpha_star is None
    assert curve.samples[-1][0] == pytest.approx(0.5)


def test_degenerate_oracle():
    """Three degree-1 variable nodes on one SPC-3 check give the SPC-3 enumerator."""
    enumerator = average_enumerator_from_counts({1: 3}, [(get_code("spc-3"), 1)])
    assert enumerator == (1, 0, 3, 0)


def test_oracle_socket_mismatch():
    """Variable and check sockets must agree."""
    with pytest.raises(ValueError):
        average_enumerator_from_counts({2: 3}, [(get_code("spc-3"), 1)])


def test_brute_force_enumerator_basics(regular_36):
    """The all-zero word is counted once and odd weights never occur."""
    enumerator = brute_force_average_enumerator(regular_36, 20)
    assert len(enumerator) == 21
    assert enumerator[0] == 1
    assert all(enumerator[w] == 0 for w in range(1, 21, 2))


def test_brute_force_rejects_unrealizable_length(regular_36):
    """(3,6) needs an even block length."""
    with pytest.raises(UnrealizableError):
        brute_force_average_enumerator(regular_36, 21)


@pytest.mark.parametrize("alpha", [0.1, 0.2, 0.3])
def test_growth_rate_matches_finite_length_trend(regular_36, alpha):
    """Extrapolated finite-length exponents approach G(alpha)."""
    lengths = [20, 40, 60]
    values = []
    for n in lengths:
        enumerator = brute_force_average_enumerator(regular_36, n)
        values.append(log(float(enumerator[round(alpha * n)])) / n)
    assert extrapolate_exponent(lengths, values) == pytest.approx(growth_rate(regular_36, alpha), abs=0.02)


def test_extrapolation_of_exact_trend():
    """A pure 1/N trend plus the saddle-point prefactor extrapolates exactly."""
    lengths = [20, 40, 60]
    values = [0.3 + 0.7 / n - 0.5 * log(n) / n for n in lengths]
    assert extrapolate_exponent(lengths, values) == pytest.approx(0.3, abs=1e-12)
