# -*- coding: utf-8 -*-
#
# Copyright (C) 2025 Cottage Labs.
#
# ldpc-iterdesign is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Ensemble design, analysis, construction and simulation service."""

import logging
from typing import Callable, Mapping, Optional, Sequence

from ... import construction
from ...decoder_sim import SimulationTask, as_layout, channel_grid, monte_carlo, systematic_encoder
from ...diff_evolution import DeConfig, evolve
from ...ensemble import DegreeDistributionPair, design_rate, stability_value
from ...errors import ConfigError
from ...exit_engine import (
    ExitModel,
    ThresholdQuery,
    effective_iterations,
    exit_chart,
    iteration_constrained_threshold,
    run_trajectory,
)
from ...weight_spectrum import growth_curve
from ..results import AnalysisResult, BuildResult, DesignResult, SimulationResult, ThresholdResult

logger = logging.getLogger(__name__)


class EnsembleService:
    """Runs the library operations with application settings as defaults."""

    def __init__(self, config=None, settings: Optional[Mapping] = None):
        """Initialize the ensemble service.

        Args:
            config: Service configuration object
            settings: Application settings (``ITERDESIGN_*`` keys)
        """
        self.config = config or {}
        self.settings = dict(settings or {})

    def _setting(self, key: str, default=None):
        return self.settings.get(f"ITERDESIGN_{key}", default)

    @property
    def threads(self) -> int:
        """Worker count for parallel evaluation."""
        return int(self._setting("THREADS", 1))

    def threshold(
        self,
        ddp: DegreeDistributionPair,
        channel: Optional[str] = None,
        i_max: Optional[int] = 10,
        xi: Optional[float] = None,
        tolerance: Optional[float] = None,
        criterion: Optional[str] = None,
        exact: bool = False,
        chart_points: Optional[int] = None,
    ) -> ThresholdResult:
        """Iteration-constrained threshold with the trajectory at the threshold.

        Args:
            ddp: The ensemble
            channel: ``bec`` or ``awgn`` (default from config)
            i_max: Iteration budget; 0 or None means unlimited
            xi: Required output information (channel default)
            tolerance: Bisection tolerance (channel default)
            criterion: ``extrinsic`` or ``a-posteriori``
            exact: Evaluate J by quadrature instead of tables
            chart_points: Also tabulate the EXIT chart at the threshold

        Returns:
            ThresholdResult
        """
        query = ThresholdQuery(
            ddp=ddp,
            i_max=effective_iterations(i_max),
            xi=xi,
            tolerance=tolerance,
            channel=channel or getattr(self.config, "default_channel", "bec"),
            criterion=criterion or getattr(self.config, "default_criterion", "extrinsic"),
            exact=exact,
        )
        found = iteration_constrained_threshold(query)
        model = ExitModel(ddp, found, exact=exact)
        trajectory = run_trajectory(
            ddp, found, query.i_max, xi=query.xi, criterion=query.criterion, model=model
        )
        chart = exit_chart(ddp, found, chart_points, exact=exact) if chart_points else None
        return ThresholdResult(
            ddp=ddp,
            channel=found,
            i_max=query.i_max,
            xi=query.xi,
            criterion=query.criterion,
            trajectory=trajectory,
            chart=chart,
        )

    def design(self, de: DeConfig, progress: Optional[Callable[[int, float], None]] = None,
               name: Optional[str] = None) -> DesignResult:
        """Differential-evolution design of an ensemble."""
        logger.info(
            "designing rate-%.3f ensemble on %s with N_p=%d, i_max=%d",
            de.rate, de.channel, de.population, de.i_max,
        )
        return DesignResult(evolve(de, progress=progress), name=name)

    def analyze(self, ddp: DegreeDistributionPair, points: Optional[int] = None) -> AnalysisResult:
        """Growth-rate curve, classification and crossing point."""
        points = points or getattr(self.config, "growth_points", 200)
        return AnalysisResult(
            ddp=ddp,
            rate=design_rate(ddp),
            stability=stability_value(ddp),
            curve=growth_curve(ddp, points),
        )

    def build(self, ddp: DegreeDistributionPair, block_length: int, method: Optional[str] = None,
              seed: int = 0) -> BuildResult:
        """Construct a finite-length code from an ensemble."""
        method = method or getattr(self.config, "default_build_method", "peg")
        if method not in getattr(self.config, "build_methods", ("random", "peg")):
            raise ConfigError(f"unknown construction method {method!r}")
        if method == "peg":
            graph = construction.peg_construct(ddp, block_length, seed=seed)
        else:
            graph = construction.sample_random_code(ddp, block_length, seed=seed)
        return BuildResult(
            graph=graph,
            parity_check=construction.expand_parity_check(graph),
            method=method,
            seed=seed,
            requested_length=block_length,
        )

    def output_format(self, path, fmt: Optional[str] = None) -> str:
        """Resolve the artifact format of a built code, from ``fmt`` or the file suffix."""
        fmt = fmt or ("json" if str(path).endswith(".json") else "alist")
        formats = getattr(self.config, "build_formats", ("alist", "json"))
        if fmt not in formats:
            raise ConfigError(f"unknown code format {fmt!r}; expected one of {', '.join(formats)}")
        return fmt

    def simulate(
        self,
        code,
        channel: str,
        values: Sequence[float],
        i_max: int,
        code_rate: Optional[float] = None,
        target_errors: Optional[int] = None,
        max_words: Optional[int] = None,
        seed: int = 0,
        encoded: bool = False,
    ) -> SimulationResult:
        """Monte Carlo error rates of a code over a channel grid.

        Args:
            code: Tanner graph or parity-check matrix
            channel: ``bec`` or ``awgn``
            values: Erasure probabilities or Eb/N0 values in dB
            i_max: Iteration cap
            code_rate: Rate used for Eb/N0 scaling (defaults to the design rate of H)
            target_errors: Bit errors per point
            max_words: Codewords per point
            seed: Random seed
            encoded: Transmit random codewords instead of the all-zero word
        """
        layout = as_layout(code)
        parity_check = (
            construction.expand_parity_check(code) if isinstance(code, construction.TannerGraph) else code
        )
        if code_rate is None:
            code_rate = 1.0 - parity_check.shape[0] / parity_check.shape[1]
        generator = systematic_encoder(parity_check)[0] if encoded else None
        task = SimulationTask(
            code=layout,
            grid=channel_grid(channel, values, code_rate=code_rate),
            i_max=i_max,
            target_errors=target_errors or self._setting("TARGET_ERRORS", 200),
            max_words=max_words or self._setting("MAX_WORDS", 1_000_000),
            seed=seed,
            words_per_batch=self._setting("WORDS_PER_BATCH", 64),
            batches_per_round=self._setting("BATCHES_PER_ROUND", 16),
            threads=self.threads,
            generator=generator,
        )
        return SimulationResult(monte_carlo(task), seed=seed)
