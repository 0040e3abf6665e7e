# -*- coding: utf-8 -*-
#
# Copyright (C) 2025 Cottage Labs.
#
# ldpc-iterdesign is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Packaged studies with pinned seeds and pass/fail reports.

Each study returns a StudyReport; data tables attached to the report are
written next to it by the command line.
"""

import logging
from typing import Callable, Dict, List, Optional

import numpy as np

from . import construction
from .ensemble import design_rate, load_published, stability_value, truncate_degrees
from .errors import ConstructionError, DimensionTooLargeError, UnrealizableError
from .exit_engine import effective_iterations
from .services.results import StudyReport
from .services.service.ensemble_service import EnsembleService
from .weight_spectrum import good_growth, growth_curve, growth_rate

logger = logging.getLogger(__name__)

TABLE1 = ("ensemble-a", "ensemble-b", "ensemble-c")
TABLE2 = ("ensemble-d", "ensemble-e", "ensemble-f", "ensemble-g")
GOOD_GROWTH = {"ensemble-a", "ensemble-b", "ensemble-e"}


def _rate_checks(report: StudyReport, names):
    for name in names:
        rate = design_rate(load_published(name))
        report.check(f"{name}-rate", abs(rate - 0.5) <= 1e-3, f"design rate {rate:.6f}")


def table1_checks(service: EnsembleService, reduced: bool = False, seed: int = 0) -> StudyReport:
    """Rates, stability functionals and BEC thresholds of Ensembles A-C."""
    report = StudyReport("table1-checks")
    _rate_checks(report, TABLE1)
    expected = {"ensemble-a": (0.805878, 1e-6), "ensemble-b": (0.0, 1e-12), "ensemble-c": (1.908343, 1e-5)}
    for name, (value, tol) in expected.items():
        got = stability_value(load_published(name))
        report.check(f"{name}-stability", abs(got - value) <= tol, f"{got:.6f} (published {value:.6f})")

    rows = []
    windows = {"ensemble-b": (0.355, 0.375), "ensemble-c": (0.475, 0.495)}
    for name in TABLE1:
        ddp = load_published(name)
        result = service.threshold(ddp, channel="bec", i_max=ddp.published.get("i_max"))
        published = ddp.published.get("threshold")
        rows.append((name, result.threshold, published))
        if name in windows:
            lo, hi = windows[name]
            report.check(
                f"{name}-threshold", lo <= result.threshold <= hi,
                f"epsilon*={result.threshold:.6f} (published {published})",
            )
    report.add_table("thresholds", ("ensemble", "threshold", "published"), rows)
    return report


def table2_checks(service: EnsembleService, reduced: bool = False, seed: int = 0) -> StudyReport:
    """Rates and growth classification of Ensembles A-G; AWGN thresholds of D-G."""
    report = StudyReport("table2-checks")
    _rate_checks(report, TABLE2)
    stability_rows = []
    for name in TABLE1 + TABLE2:
        ddp = load_published(name)
        value = stability_value(ddp)
        good = good_growth(ddp)
        stability_rows.append((name, value, good))
        report.check(
            f"{name}-growth-class", good == (name in GOOD_GROWTH),
            f"stability {value:.6f} -> {'good' if good else 'bad'}",
        )
    report.add_table("stability", ("ensemble", "stability", "good_growth"), stability_rows)

    if not reduced:
        rows = []
        for name in TABLE2:
            ddp = load_published(name)
            result = service.threshold(ddp, channel="awgn", i_max=ddp.published.get("i_max"))
            rows.append((name, effective_iterations(ddp.published.get("i_max")), result.threshold,
                         ddp.published.get("threshold")))
        report.add_table("awgn-thresholds", ("ensemble", "i_max", "threshold_db", "published_db"), rows)
    return report


def _ber_at(service, name, block_length, epsilon, i_max, seed, max_words):
    ddp = load_published(name)
    graph = construction.sample_random_code(ddp, block_length, seed=seed)
    curve = service.simulate(graph, "bec", [epsilon], i_max, max_words=max_words, seed=seed).curve
    return curve.points[0]


def _bec_figure(study, service, epsilon, i_max, reduced, seed, compare):
    report = StudyReport(study)
    block_length = 4000 if reduced else 10000
    max_words = 2000 if reduced else None
    points = {
        name: _ber_at(service, name, block_length, epsilon, i_max, seed, max_words) for name in TABLE1
    }
    ber = {name: p.ber for name, p in points.items()}
    report.add_table(
        "ber",
        ("ensemble", "epsilon", "i_max", "words", "bit_errors", "ber", "cer", "mean_iterations"),
        [(n, epsilon, i_max, p.words, p.bit_errors, p.ber, p.cer, p.mean_iterations) for n, p in points.items()],
    )
    compare(report, ber)
    return report


def fig2_desk(service: EnsembleService, reduced: bool = False, seed: int = 0) -> StudyReport:
    """Codes A-C at epsilon=0.30 after 10 iterations."""
    def compare(report, ber):
        a, b, c = (ber[n] for n in TABLE1)
        report.check("A<=B", a <= b, f"BER A={a:.3e}, B={b:.3e}")
        report.check("B<C", b < c, f"BER B={b:.3e}, C={c:.3e}")

    return _bec_figure("fig2-desk", service, 0.30, 10, reduced, seed, compare)


def fig3_desk(service: EnsembleService, reduced: bool = False, seed: int = 0) -> StudyReport:
    """Codes A-C at epsilon=0.45 after 200 iterations."""
    def compare(report, ber):
        a, b, c = (ber[n] for n in TABLE1)
        report.check("C<A", c < a, f"BER C={c:.3e}, A={a:.3e}")
        report.check("C<B", c < b, f"BER C={c:.3e}, B={b:.3e}")

    return _bec_figure("fig3-desk", service, 0.45, 200, reduced, seed, compare)


def fig4_desk(service: EnsembleService, reduced: bool = False, seed: int = 0) -> StudyReport:
    """Codes D-G over AWGN after 10 iterations."""
    report = StudyReport("fig4-desk")
    block_length = 4000 if reduced else 10000
    grid = [1.5, 2.0, 2.5]
    max_words = 1000 if reduced else None
    rows, last = [], {}
    for name in TABLE2:
        graph = construction.sample_random_code(load_published(name), block_length, seed=seed)
        curve = service.simulate(graph, "awgn", grid, 10, code_rate=0.5, max_words=max_words, seed=seed).curve
        for p in curve.points:
            rows.append((name, p.parameter, p.words, p.bit_errors, p.ber, p.cer, p.mean_iterations))
        last[name] = curve.points[-1].ber
    report.add_table(
        "ber", ("ensemble", "eb_n0_db", "words", "bit_errors", "ber", "cer", "mean_iterations"), rows
    )
    best = min(last, key=last.get)
    report.check(
        "E-best-at-10-iterations", last["ensemble-e"] <= min(last.values()),
        f"lowest BER at {grid[-1]} dB: {best} ({last[best]:.3e})",
    )
    return report


def fig5_curves(service: EnsembleService, reduced: bool = False, seed: int = 0) -> StudyReport:
    """Growth-rate curves of Ensembles A-G and their small-weight sign."""
    report = StudyReport("fig5-curves")
    points = 40 if reduced else 200
    rows = []
    for name in TABLE1 + TABLE2:
        ddp = load_published(name)
        curve = growth_curve(ddp, points)
        rows.extend((name, a, g) for a, g in curve.samples)
        small = growth_rate(ddp, 1e-3)
        expected_good = name in GOOD_GROWTH
        report.check(
            f"{name}-sign-at-1e-3", (small < 0) == expected_good,
            f"G(1e-3)={small:.3e}, {'good' if expected_good else 'bad'} growth expected",
        )
    report.add_table("growth", ("ensemble", "alpha", "growth_rate"), rows)
    return report


def _min_distance(ddp, method, block_length, seed) -> Optional[int]:
    builder = construction.peg_construct if method == "peg" else construction.sample_random_code
    try:
        graph = builder(ddp, block_length, seed=seed)
        return construction.brute_force_min_distance(construction.expand_parity_check(graph))
    except (ConstructionError, DimensionTooLargeError, UnrealizableError) as e:
        logger.info("%s seed %d skipped: %s", method, seed, e)
        return None


def min_distance_desk(service: EnsembleService, reduced: bool = False, seed: int = 0) -> StudyReport:
    """PEG minimum distance of Ensemble E against the growth-constrained design at N=48."""
    report = StudyReport("min-distance-desk")
    block_length, max_degree = 48, 12
    designs = {
        "ensemble-e": truncate_degrees(load_published("ensemble-e"), max_degree),
        "constrained-growth": truncate_degrees(load_published("constrained-growth"), max_degree),
    }
    pairs = 5 if reduced else 20
    rows: List[tuple] = []
    peg: Dict[str, List[Optional[int]]] = {k: [] for k in designs}
    random_values: List[int] = []
    for s in range(seed, seed + pairs):
        for name, ddp in designs.items():
            d_peg = _min_distance(ddp, "peg", block_length, s)
            d_random = _min_distance(ddp, "random", block_length, s)
            peg[name].append(d_peg)
            if d_random is not None:
                random_values.append(d_random)
            rows.append((name, s, d_peg, d_random))
    report.add_table("min-distance", ("design", "seed", "peg", "random"), rows)

    both = [(e, c) for e, c in zip(peg["ensemble-e"], peg["constrained-growth"]) if e is not None and c is not None]
    share = sum(e >= c for e, c in both) / len(both) if both else 0.0
    report.check("E>=constrained in 60% of pairs", share >= 0.6, f"{share:.0%} of {len(both)} pairs")
    median = float(np.median(random_values)) if random_values else float("nan")
    for name, values in peg.items():
        present = [v for v in values if v is not None]
        peg_median = float(np.median(present)) if present else float("nan")
        report.check(
            f"{name}-peg-above-random-median", peg_median > median,
            f"PEG median {peg_median:g}, random median {median:g}",
        )
    return report


STUDIES: Dict[str, Callable[..., StudyReport]] = {
    "table1-checks": table1_checks,
    "table2-checks": table2_checks,
    "fig2-desk": fig2_desk,
    "fig3-desk": fig3_desk,
    "fig4-desk": fig4_desk,
    "fig5-curves": fig5_curves,
    "min-distance-desk": min_distance_desk,
}


def reproduce(study: str, service: EnsembleService, reduced: bool = False, seed: int = 0) -> StudyReport:
    """Run a packaged study by identifier."""
    logger.info("running study %s%s", study, " (reduced)" if reduced else "")
    return STUDIES[study](service, reduced=reduced, seed=seed)
