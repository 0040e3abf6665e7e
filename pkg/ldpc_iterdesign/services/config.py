# -*- coding: utf-8 -*-
#
# Copyright (C) 2025 Cottage Labs.
#
# ldpc-iterdesign is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Service configuration for ensemble design and analysis."""


class EnsembleServiceConfig:
    """Configuration for the ensemble service."""

    # Threshold queries
    default_channel = "bec"
    default_criterion = "extrinsic"
    chart_points = 101

    # Growth-rate analysis
    growth_points = 200

    # Code construction
    build_methods = ("random", "peg")
    build_formats = ("alist", "json")
    default_build_method = "peg"

    # Simulation
    record_histograms = True
