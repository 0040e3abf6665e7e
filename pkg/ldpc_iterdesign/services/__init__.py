# -*- coding: utf-8 -*-
#
# Copyright (C) 2025 Cottage Labs.
#
# ldpc-iterdesign is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Ensemble services."""

from .config import EnsembleServiceConfig
from .results import AnalysisResult, BuildResult, DesignResult, SimulationResult, StudyReport, ThresholdResult
from .schemas import DegreeDistributionSchema, RunConfigSchema, TannerGraphSchema
from .service.ensemble_service import EnsembleService

__all__ = (
    "AnalysisResult",
    "BuildResult",
    "DegreeDistributionSchema",
    "DesignResult",
    "EnsembleService",
    "EnsembleServiceConfig",
    "RunConfigSchema",
    "SimulationResult",
    "StudyReport",
    "TannerGraphSchema",
    "ThresholdResult",
)
