# -*- coding: utf-8 -*-
#
# Copyright (C) 2025 Cottage Labs.
#
# ldpc-iterdesign is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Tests for degree-distribution pairs and their functionals."""

import json

import numpy as np
import pytest

from ldpc_iterdesign.ensemble import (
    DegreeDistributionPair,
    available_ensembles,
    design_rate,
    dump_ddp,
    edge_count,
    load_ddp,
    node_counts,
    stability_product,
    stability_value,
    truncate_degrees,
    weight2_functional,
)
from ldpc_iterdesign.errors import InvalidDistributionError, WrongVariantError

SEVEN = ["ensemble-a", "ensemble-b", "ensemble-c", "ensemble-d", "ensemble-e", "ensemble-f", "ensemble-g"]


def test_bundled_ensembles_listed():
    """Every published ensemble ships as package data."""
    names = available_ensembles()
    for name in SEVEN + ["constrained-growth", "regular-3-6"]:
        assert name in names


@pytest.mark.parametrize("name", SEVEN)
def test_published_design_rates(published, name):
    """All published designs have rate one half."""
    assert design_rate(published(name)) == pytest.approx(0.5, abs=1e-3)


def test_design_rate_examples(published, regular_36):
    """Rates of the regular code and Ensemble B."""
    assert design_rate(regular_36) == pytest.approx(0.5, abs=1e-15)
    assert design_rate(published("ensemble-b")) == pytest.approx(0.50005, abs=1e-5)


def test_design_rate_invariant_under_merging():
    """Splitting a check type into identical halves leaves the rate alone."""
    merged = DegreeDistributionPair.create({2: 0.4, 3: 0.6}, [("spc-6", 1.0)])
    split = DegreeDistributionPair.create({2: 0.4, 3: 0.6}, [("spc-6", 0.3), ("spc-6", 0.7)])
    relabeled = DegreeDistributionPair.create({2: 0.4, 3: 0.6}, [("spc-6", 0.7), ("spc-6", 0.3)])
    assert design_rate(split) == pytest.approx(design_rate(merged), abs=1e-15)
    assert design_rate(relabeled) == pytest.approx(design_rate(merged), abs=1e-15)


def test_edge_count(published, regular_36):
    """E = N / integral(lambda)."""
    assert edge_count(published("ensemble-a"), 10) == 20
    assert edge_count(regular_36, 6) == 18


def test_node_counts_ensemble_b(published):
    """Ensemble B at N=10000 needs a multiple of 21 edges."""
    counts = node_counts(published("ensemble-b"), 10000)
    assert counts.edges == 34986
    assert counts.check_count == 4998
    assert counts.length == 9997
    assert counts.rate == pytest.approx(0.5, abs=1e-3)


@pytest.mark.parametrize("name", SEVEN)
def test_node_counts_consistent(published, name):
    """Realized sockets agree on both sides and the length stays near the request."""
    ddp = published(name)
    counts = node_counts(ddp, 2000)
    vn_sockets = sum(d * n for d, n in counts.vn_counts.items())
    cn_sockets = sum(t.code.length * c for t, c in counts.cn_counts)
    assert vn_sockets == cn_sockets == counts.edges
    assert abs(counts.length - 2000) <= 40
    assert counts.slack >= ddp.lam.integral / 2


def test_table_one_functionals(published):
    """Stability functionals of Ensembles A-C."""
    assert weight2_functional(published("ensemble-a")) == pytest.approx(0.805878, abs=1e-6)
    assert stability_product(published("ensemble-c")) == pytest.approx(1.908343, abs=1e-5)
    assert stability_product(published("ensemble-b")) == 0.0


def test_stability_product_rejects_generalized(published):
    """Hamming check nodes need the weight-two functional."""
    with pytest.raises(WrongVariantError):
        stability_product(published("ensemble-a"))


def test_weight2_functional_examples(regular_36):
    """Only distance-two check types contribute."""
    spc3 = DegreeDistributionPair.create({2: 1.0}, [("spc-3", 1.0)])
    assert weight2_functional(spc3) == pytest.approx(2.0)
    hamming = DegreeDistributionPair.create({2: 1.0}, [("hamming-7-4", 1.0)])
    assert weight2_functional(hamming) == 0.0
    assert stability_product(regular_36) == 0.0


def test_stability_matches_polynomial_derivatives():
    """lambda'(0) rho'(1) from coefficients equals symbolic differentiation."""
    rng = np.random.default_rng(7)
    for _ in range(20):
        degrees = sorted(rng.choice(np.arange(2, 16), size=4, replace=False).tolist())
        lengths = sorted(rng.choice(np.arange(3, 12), size=2, replace=False).tolist())
        lam = dict(zip(degrees, rng.dirichlet(np.ones(4))))
        rho = list(zip([f"spc-{s}" for s in lengths], rng.dirichlet(np.ones(2))))
        ddp = DegreeDistributionPair.create(lam, rho)

        lam_poly = np.polynomial.Polynomial(
            [lam.get(d + 1, 0.0) for d in range(max(degrees))]
        )
        rho_poly = np.polynomial.Polynomial(
            [dict((int(c[4:]), f) for c, f in rho).get(s + 1, 0.0) for s in range(max(lengths))]
        )
        expected = lam_poly.deriv()(0.0) * rho_poly.deriv()(1.0)
        assert stability_product(ddp) == pytest.approx(expected, rel=1e-12, abs=1e-15)


def test_table_two_recomputed_classification(published):
    """Recomputed products classify exactly A, B and E as good."""
    values = {name: stability_value(published(name)) for name in SEVEN}
    assert values["ensemble-d"] == pytest.approx(1.756, abs=1e-3)
    assert {name for name, v in values.items() if v < 1.0} == {"ensemble-a", "ensemble-b", "ensemble-e"}


def test_normalization_violation_rejected():
    """sum(lambda) != 1 is an error naming the constraint."""
    with pytest.raises(InvalidDistributionError, match="sum\\(lambda\\)"):
        DegreeDistributionPair.create({2: 0.5, 3: 0.6}, [("spc-6", 1.0)])
    with pytest.raises(InvalidDistributionError):
        DegreeDistributionPair.create({1: 1.0}, [("spc-6", 1.0)])


def test_tiny_fractions_pruned():
    """Entries below 1e-12 are dropped."""
    ddp = DegreeDistributionPair.create({2: 1e-14, 3: 1.0 - 1e-14}, [("spc-6", 1.0)])
    assert ddp.lam.as_dict() == {3: pytest.approx(1.0)}


def test_ddp_file_round_trip(tmp_path, published):
    """Dumped documents load back to the same pair."""
    ddp = published("ensemble-a")
    path = tmp_path / "a.json"
    path.write_text(json.dumps(dump_ddp(ddp)))
    loaded = load_ddp(str(path))
    assert loaded.lam == ddp.lam
    assert [t.code for t in loaded.rho.types] == [t.code for t in ddp.rho.types]
    assert design_rate(loaded) == pytest.approx(design_rate(ddp), abs=1e-12)


def test_load_published_reference():
    """published:<name> references resolve to package data."""
    assert load_ddp("published:ensemble-c").name == "ensemble-c"
    with pytest.raises(InvalidDistributionError):
        load_ddp("published:ensemble-z")


def test_precision_rescaling(published):
    """Six-decimal tables are renormalized exactly."""
    ddp = published("ensemble-c")
    assert ddp.lam.fractions.sum() == pytest.approx(1.0, abs=1e-15)


def test_truncate_degrees(published):
    """Mass above the cap folds onto the cap."""
    ddp = truncate_degrees(published("ensemble-e"), 12)
    assert max(ddp.lam.degrees) == 12
    assert ddp.lam.fraction(12) == pytest.approx(0.283606 + 0.046918, abs=1e-5)
