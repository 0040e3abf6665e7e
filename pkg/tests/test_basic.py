# -*- coding: utf-8 -*-
#
# Copyright (C) 2025 Cottage Labs.
#
# ldpc-iterdesign is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Basic tests for ldpc-iterdesign components."""

import hashlib

from ldpc_iterdesign import artifacts
from ldpc_iterdesign.errors import ConfigError, ConvergenceError, IterDesignError, SingularRepair, UnrealizableError
from ldpc_iterdesign.exit_engine import BecChannel
from ldpc_iterdesign.services.results import StudyReport, ThresholdResult


def test_config_defaults():
    """Test that configuration defaults are set."""
    from ldpc_iterdesign import config

    assert hasattr(config, "ITERDESIGN_XI_BEC")
    assert hasattr(config, "ITERDESIGN_DE_POPULATION")
    assert hasattr(config, "ITERDESIGN_OUTPUT_DIR")

    assert config.ITERDESIGN_XI_BEC == 0.9999
    assert config.ITERDESIGN_XI_AWGN == 0.999
    assert config.ITERDESIGN_BISECTION_STEPS == 40
    assert config.ITERDESIGN_EBN0_BRACKET_DB == (-2.0, 10.0)


def test_error_categories():
    """Parse errors exit with 2, everything else with 1."""
    assert ConfigError("x").exit_code == 2
    assert UnrealizableError("x").exit_code == 1
    assert ConvergenceError("x").category == "non-convergence"
    assert issubclass(SingularRepair, IterDesignError)


def test_threshold_result_structure(regular_36):
    """Test ThresholdResult class structure."""
    result = ThresholdResult(ddp=regular_36, channel=BecChannel(0.42), i_max=50, xi=0.9999, criterion="extrinsic")

    result_dict = result.to_dict()

    assert result_dict["ensemble"] == "regular-3-6"
    assert result_dict["threshold"] == 0.42
    assert "final_extrinsic" not in result_dict


def test_study_report_structure():
    """Test StudyReport class structure."""
    report = StudyReport("demo")
    report.check("first", True, "ok")
    report.check("second", False, "too large")
    report.add_table("values", ("a", "b"), [(1, 2)])

    assert not report.passed
    assert report.rows() == [("demo", "first", "PASS", "ok"), ("demo", "second", "FAIL", "too large")]
    assert report.tables["values"] == (("a", "b"), [(1, 2)])


def test_canonical_digest():
    """Digests ignore key order and volatile parameters."""
    first = artifacts.config_digest({"seed": 1, "grid": "0.3", "out": "a.csv"})
    second = artifacts.config_digest({"grid": "0.3", "seed": 1, "out": "b.csv", "threads": 4})
    assert first == second
    assert first == hashlib.sha256(b'{"grid":"0.3","seed":1}').hexdigest()


def test_csv_provenance(tmp_path):
    """CSV files start with version, seed and digest lines."""
    path = artifacts.write_csv(tmp_path / "sub" / "x.csv", ("a", "b"), [(1, 0.5)], seed=7, digest="abc")
    lines = path.read_text().splitlines()
    assert lines[0].startswith("# ldpc-iterdesign ")
    assert lines[1:3] == ["# seed: 7", "# config-digest: abc"]
    assert artifacts.read_csv_body(path) == [["a", "b"], ["1", "0.5"]]
    assert not [p for p in path.parent.iterdir() if p.name.endswith(".tmp")]


def test_resolve_relative_paths(tmp_path):
    """Relative outputs land in the output directory; absolute ones stay put."""
    assert artifacts.resolve("x.csv", tmp_path) == tmp_path / "x.csv"
    assert artifacts.resolve(tmp_path / "y.csv", "/elsewhere") == tmp_path / "y.csv"
