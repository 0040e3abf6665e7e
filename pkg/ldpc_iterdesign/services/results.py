# -*- coding: utf-8 -*-
#
# Copyright (C) 2025 Cottage Labs.
#
# ldpc-iterdesign is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Result classes for the ensemble service."""

from typing import Dict, List, Optional, Tuple

from ..decoder_sim import BerCurve
from ..diff_evolution import DeResult
from ..ensemble import DegreeDistributionPair
from ..exit_engine import ExitChart, ExitTrajectory
from ..weight_spectrum import GrowthRateCurve


class ThresholdResult:
    """Result object for an iteration-constrained threshold query."""

    def __init__(
        self,
        ddp: DegreeDistributionPair,
        channel,
        i_max: int,
        xi: float,
        criterion: str,
        trajectory: Optional[ExitTrajectory] = None,
        chart: Optional[ExitChart] = None,
    ):
        """Initialize threshold result.

        Args:
            ddp: The analysed ensemble
            channel: Worst channel meeting the requirement
            i_max: Iteration budget
            xi: Required output information
            criterion: Success criterion (extrinsic or a-posteriori)
            trajectory: Decoding path at the threshold
            chart: Optional EXIT chart at the threshold
        """
        self._ddp = ddp
        self._channel = channel
        self._i_max = i_max
        self._xi = xi
        self._criterion = criterion
        self._trajectory = trajectory
        self._chart = chart

    @property
    def ddp(self) -> DegreeDistributionPair:
        """Get the ensemble."""
        return self._ddp

    @property
    def channel(self):
        """Get the threshold channel."""
        return self._channel

    @property
    def threshold(self) -> float:
        """Get the threshold (epsilon, or Eb/N0 in dB)."""
        return float(self._channel.parameter)

    @property
    def trajectory(self) -> Optional[ExitTrajectory]:
        """Get the decoding path at the threshold."""
        return self._trajectory

    @property
    def chart(self) -> Optional[ExitChart]:
        """Get the EXIT chart."""
        return self._chart

    def summary(self) -> str:
        """One-line summary."""
        name = "epsilon*" if self._channel.kind == "bec" else "Eb/N0*[dB]"
        return f"{name}={self.threshold:.6f} (i_max={self._i_max}, xi={self._xi:g}, criterion={self._criterion})"

    def to_dict(self) -> Dict:
        """Convert to dictionary representation."""
        result = {
            "ensemble": self._ddp.name,
            "channel": self._channel.kind,
            "threshold": self.threshold,
            "i_max": self._i_max,
            "xi": self._xi,
            "criterion": self._criterion,
        }
        if self._trajectory is not None:
            result["final_extrinsic"] = self._trajectory.final_extrinsic
            result["final_a_posteriori"] = self._trajectory.final_a_posteriori
        return result


class DesignResult:
    """Result object for a differential-evolution run."""

    def __init__(self, outcome: DeResult, name: Optional[str] = None):
        """Initialize design result.

        Args:
            outcome: Optimizer outcome
            name: Label of the designed ensemble
        """
        self._outcome = outcome
        self._ddp = outcome.best.to_ddp(name=name)

    @property
    def ddp(self) -> DegreeDistributionPair:
        """Get the best ensemble."""
        return self._ddp

    @property
    def threshold(self) -> float:
        """Get its threshold."""
        return self._outcome.threshold

    @property
    def history(self) -> List[float]:
        """Get the best threshold per generation."""
        channel = self._outcome.channel
        return [s if channel == "bec" else -s for s in self._outcome.history]

    @property
    def generations(self) -> int:
        """Get the number of generations run."""
        return self._outcome.generations

    def history_rows(self) -> List[Tuple[int, float]]:
        """CSV rows (generation, best_threshold)."""
        return list(enumerate(self.history))

    def to_dict(self) -> Dict:
        """Convert to dictionary representation."""
        return {"threshold": self.threshold, "generations": self.generations, "ddp": str(self._ddp)}


class AnalysisResult:
    """Result object for a growth-rate analysis."""

    def __init__(self, ddp: DegreeDistributionPair, rate: float, stability: float,
                 curve: GrowthRateCurve):
        """Initialize analysis result.

        Args:
            ddp: The analysed ensemble
            rate: Design rate
            stability: lambda'(0) rho'(1), or lambda'(0) C for generalized check nodes
            curve: Growth-rate samples with classification
        """
        self._ddp = ddp
        self._rate = rate
        self._stability = stability
        self._curve = curve

    @property
    def curve(self) -> GrowthRateCurve:
        """Get the growth-rate curve."""
        return self._curve

    @property
    def good_growth(self) -> bool:
        """Get the initial-slope classification."""
        return self._curve.good_growth

    @property
    def alpha_star(self) -> Optional[float]:
        """Get the first zero crossing of the growth rate."""
        return self._curve.alpha_star

    @property
    def stability(self) -> float:
        """Get the stability functional."""
        return self._stability

    def summary(self) -> str:
        """Summary line."""
        star = "none" if self.alpha_star is None else f"{self.alpha_star:.6f}"
        return (
            f"good_growth={'true' if self.good_growth else 'false'} alpha_star={star} "
            f"stability={self._stability:.6f} rate={self._rate:.6f}"
        )

    def to_dict(self) -> Dict:
        """Convert to dictionary representation."""
        return {
            "ensemble": self._ddp.name,
            "rate": self._rate,
            "stability": self._stability,
            "good_growth": self.good_growth,
            "alpha_star": self.alpha_star,
        }


class BuildResult:
    """Result object for a code construction."""

    def __init__(self, graph, parity_check, method: str, seed: int, requested_length: int):
        """Initialize build result.

        Args:
            graph: The Tanner graph
            parity_check: Its expanded parity-check matrix
            method: Construction method
            seed: Random seed
            requested_length: Block length asked for
        """
        self._graph = graph
        self._parity_check = parity_check
        self._method = method
        self._seed = seed
        self._requested_length = requested_length

    @property
    def graph(self):
        """Get the Tanner graph."""
        return self._graph

    @property
    def parity_check(self):
        """Get the parity-check matrix."""
        return self._parity_check

    def summary(self) -> str:
        """One-line summary."""
        n = self._graph.n
        rows = self._parity_check.shape[0]
        return (
            f"{self._method} code: N={n} (requested {self._requested_length}), "
            f"{self._graph.m} check nodes, {rows} parity checks, "
            f"{self._graph.edge_count} edges, design rate {1 - rows / n:.6f}"
        )

    def to_dict(self) -> Dict:
        """Convert to dictionary representation."""
        return {
            "method": self._method,
            "seed": self._seed,
            "n": self._graph.n,
            "check_nodes": self._graph.m,
            "rows": int(self._parity_check.shape[0]),
            "edges": self._graph.edge_count,
        }


class SimulationResult:
    """Result object for a Monte Carlo run."""

    def __init__(self, curve: BerCurve, seed: int):
        """Initialize simulation result.

        Args:
            curve: Error counts per grid point
            seed: Random seed
        """
        self._curve = curve
        self._seed = seed

    @property
    def curve(self) -> BerCurve:
        """Get the error-rate curve."""
        return self._curve

    @property
    def seed(self) -> int:
        """Get the seed."""
        return self._seed

    def to_dict(self) -> Dict:
        """Convert to dictionary representation."""
        return {
            "channel": self._curve.channel,
            "i_max": self._curve.i_max,
            "points": [dict(zip(BerCurve.HEADER, row)) for row in self._curve.rows()],
        }


class StudyReport:
    """Pass/fail report of a packaged study."""

    HEADER = ("study", "check", "status", "detail")

    def __init__(self, study: str):
        """Initialize an empty report.

        Args:
            study: Study identifier
        """
        self._study = study
        self._checks: List[Tuple[str, bool, str]] = []
        self._tables: Dict[str, Tuple[Tuple[str, ...], List[Tuple]]] = {}

    @property
    def study(self) -> str:
        """Get the study identifier."""
        return self._study

    @property
    def passed(self) -> bool:
        """Whether every check passed."""
        return all(ok for _, ok, _ in self._checks)

    @property
    def checks(self) -> List[Tuple[str, bool, str]]:
        """Get the recorded checks."""
        return list(self._checks)

    @property
    def tables(self) -> Dict[str, Tuple[Tuple[str, ...], List[Tuple]]]:
        """Get the data tables produced by the study (name -> (header, rows))."""
        return dict(self._tables)

    def check(self, name: str, ok: bool, detail: str = "") -> bool:
        """Record one check."""
        self._checks.append((name, bool(ok), detail))
        return bool(ok)

    def add_table(self, name: str, header: Tuple[str, ...], rows: List[Tuple]):
        """Attach a data table."""
        self._tables[name] = (tuple(header), list(rows))

    def rows(self) -> List[Tuple[str, str, str, str]]:
        """CSV rows matching ``HEADER``."""
        return [(self._study, name, "PASS" if ok else "FAIL", detail) for name, ok, detail in self._checks]
