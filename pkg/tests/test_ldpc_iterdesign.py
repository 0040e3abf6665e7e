# -*- coding: utf-8 -*-
#
# Copyright (C) 2025 Cottage Labs.
#
# ldpc-iterdesign is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Module tests."""

import pytest

from ldpc_iterdesign import IterDesign
from ldpc_iterdesign.reproduce import STUDIES, reproduce


def test_version():
    """Test version import."""
    from ldpc_iterdesign import __version__

    assert __version__


def test_init():
    """Test application initialization."""
    app = IterDesign(environ={})
    assert app.config["ITERDESIGN_SEED"] == 0
    assert app.output_dir == "."
    assert app.ensemble_service.threads == 1


def test_init_overrides():
    """Environment and explicit settings take precedence over defaults."""
    app = IterDesign(environ={"ITERDESIGN_OUTPUT_DIR": "/tmp/runs"})
    assert app.output_dir == "/tmp/runs"

    app = IterDesign(overrides={"ITERDESIGN_OUTPUT_DIR": "out", "ITERDESIGN_THREADS": None},
                     environ={"ITERDESIGN_OUTPUT_DIR": "/tmp/runs"})
    assert app.output_dir == "out"
    assert app.config["ITERDESIGN_THREADS"] == 1


def test_studies_registered():
    """Every packaged study is reachable by name."""
    assert set(STUDIES) == {
        "table1-checks", "table2-checks", "fig2-desk", "fig3-desk", "fig4-desk", "fig5-curves",
        "min-distance-desk",
    }


def test_table1_study(service):
    """The rate, stability and threshold checks of Ensembles A-C pass."""
    report = reproduce("table1-checks", service)
    assert report.passed, report.rows()
    header, rows = report.tables["thresholds"]
    assert [r[0] for r in rows] == ["ensemble-a", "ensemble-b", "ensemble-c"]


def test_table2_study_reduced(service):
    """The reduced growth classification study passes without AWGN thresholds."""
    report = reproduce("table2-checks", service, reduced=True)
    assert report.passed, report.rows()
    assert "awgn-thresholds" not in report.tables


@pytest.mark.slow
@pytest.mark.parametrize("study", ["table2-checks", "fig2-desk", "fig3-desk", "fig4-desk", "fig5-curves",
                                   "min-distance-desk"])
def test_desk_studies(service, study):
    """Desk-scale studies pass at reduced size."""
    report = reproduce(study, service, reduced=True)
    assert report.passed, report.rows()
