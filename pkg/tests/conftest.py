# -*- coding: utf-8 -*-
#
# Copyright (C) 2025 Cottage Labs.
#
# ldpc-iterdesign is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Pytest configuration.

Desk-scale runs are marked ``slow`` and only run with ``--runslow``.
"""

import numpy as np
import pytest
from click.testing import CliRunner

from ldpc_iterdesign import IterDesign
from ldpc_iterdesign.component_codes import get_code
from ldpc_iterdesign.construction import TannerGraph
from ldpc_iterdesign.ensemble import DegreeDistributionPair, load_published


def pytest_addoption(parser):
    """Add the --runslow switch."""
    parser.addoption("--runslow", action="store_true", default=False, help="run desk-scale tests")


def pytest_collection_modifyitems(config, items):
    """Skip slow tests unless --runslow is given."""
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture(scope="session")
def published():
    """Loader for the bundled ensembles."""
    return load_published


@pytest.fixture(scope="session")
def regular_36():
    """The (3,6)-regular LDPC ensemble."""
    return DegreeDistributionPair.create({3: 1.0}, [("spc-6", 1.0)], name="regular-3-6")


@pytest.fixture()
def app(tmp_path):
    """Application object writing into a temporary directory."""
    return IterDesign(overrides={"ITERDESIGN_OUTPUT_DIR": str(tmp_path)}, environ={})


@pytest.fixture()
def service(app):
    """Ensemble service of the test application."""
    return app.ensemble_service


@pytest.fixture()
def runner():
    """Click test runner."""
    return CliRunner()


def make_graph(vn_degrees, checks):
    """Tanner graph from explicit (code id, sockets) check nodes."""
    return TannerGraph(
        vn_degrees=np.asarray(vn_degrees, dtype=np.int64),
        cn_codes=tuple(get_code(code) for code, _ in checks),
        cn_sockets=tuple(np.asarray(sockets, dtype=np.int64) for _, sockets in checks),
    )


@pytest.fixture(scope="session")
def graph_factory():
    """Builder of explicit Tanner graphs."""
    return make_graph


@pytest.fixture()
def spc3_graph():
    """Three degree-1 variable nodes on one SPC-3 check (cycle free)."""
    return make_graph([1, 1, 1], [("spc-3", [0, 1, 2])])


@pytest.fixture()
def gldpc_graph():
    """A tiny GLDPC code: one Hamming(7,4) check and two SPC checks on 10 bits."""
    return make_graph(
        [2, 2, 1, 2, 1, 2, 2, 1, 1, 1],
        [
            ("hamming-7-4", [0, 1, 2, 3, 4, 5, 6]),
            ("spc-4", [0, 3, 7, 8]),
            ("spc-4", [1, 5, 9, 6]),
        ],
    )
