# -*- coding: utf-8 -*-
#
# Copyright (C) 2025 Cottage Labs.
#
# ldpc-iterdesign is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Tests for the ensemble service."""

import pytest

from ldpc_iterdesign.diff_evolution import DeConfig
from ldpc_iterdesign.errors import BadGrowthError, ConfigError
from ldpc_iterdesign.weight_spectrum import alpha_star


def test_threshold_service(service, published):
    """Threshold queries return the trajectory at the threshold."""
    result = service.threshold(published("ensemble-c"), channel="bec", i_max=200)

    data = result.to_dict()

    assert data["ensemble"] == "ensemble-c"
    assert data["channel"] == "bec"
    assert data["i_max"] == 200
    assert 0.475 <= data["threshold"] <= 0.495
    assert data["final_extrinsic"] >= data["xi"]
    assert result.summary().startswith("epsilon*=")
    assert result.chart is None


def test_threshold_service_unlimited(service, regular_36):
    """i_max=0 means the configured iteration cap."""
    result = service.threshold(regular_36, i_max=0, chart_points=11)
    assert result.to_dict()["i_max"] == 5000
    assert len(result.chart.rows()) == 11


def test_threshold_service_awgn(service, published):
    """AWGN thresholds are reported in dB."""
    result = service.threshold(published("ensemble-e"), channel="awgn", i_max=10)
    assert result.summary().startswith("Eb/N0*[dB]=")
    assert -2.0 < result.threshold < 10.0


def test_design_service(service):
    """A small design run yields a named ensemble and its history."""
    de = DeConfig(rate=0.5, vn_degrees=(2, 3, 4, 8), cn_codes=("spc-6", "spc-7"), population=8,
                  generations=2, seed=1)
    result = service.design(de, name="small")

    data = result.to_dict()

    assert result.ddp.name == "small"
    assert data["generations"] == 2
    assert [g for g, _ in result.history_rows()] == [0, 1, 2]
    assert result.history[-1] == pytest.approx(result.threshold)


def test_analyze_service(service, published):
    """Analysis reports the class, the crossing point and the stability value."""
    result = service.analyze(published("ensemble-b"), points=30)

    data = result.to_dict()

    assert data["good_growth"] is True
    assert data["stability"] == 0.0
    assert result.summary().startswith("good_growth=true alpha_star=")


def test_analyze_service_bad_growth(service, published):
    """Bad-growth ensembles report no crossing point."""
    result = service.analyze(published("ensemble-c"), points=10)
    assert result.summary().startswith("good_growth=false alpha_star=none stability=1.908")
    with pytest.raises(BadGrowthError):
        alpha_star(published("ensemble-c"))


def test_build_service(service, regular_36):
    """Builds return the graph and its parity-check matrix."""
    result = service.build(regular_36, 96, method="peg", seed=3)

    data = result.to_dict()

    assert data == {"method": "peg", "seed": 3, "n": 96, "check_nodes": 48, "rows": 48, "edges": 288}
    assert "N=96 (requested 96)" in result.summary()


def test_build_service_unknown_method(service, regular_36):
    """Unknown construction methods are configuration errors."""
    with pytest.raises(ConfigError):
        service.build(regular_36, 96, method="quasi-cyclic")


def test_build_output_formats(service, tmp_path):
    """Code formats come from the suffix or the flag and must be configured."""
    assert service.output_format(tmp_path / "code.json") == "json"
    assert service.output_format(tmp_path / "code.alist") == "alist"
    assert service.output_format(tmp_path / "code.txt", "json") == "json"
    with pytest.raises(ConfigError, match="unknown code format"):
        service.output_format(tmp_path / "code.alist", "mtx")


def test_simulate_service(service, regular_36):
    """Simulation uses the parity-check rate for AWGN scaling."""
    graph = service.build(regular_36, 120, method="random", seed=0).graph
    result = service.simulate(graph, "bec", [0.2, 0.3], 20, max_words=128, seed=4)

    data = result.to_dict()

    assert data["channel"] == "bec"
    assert [p["param"] for p in data["points"]] == [0.2, 0.3]
    assert all(p["words"] == 128 for p in data["points"])
    assert result.seed == 4
