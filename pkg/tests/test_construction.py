# -*- coding: utf-8 -*-
#
# Copyright (C) 2025 Cottage Labs.
#
# ldpc-iterdesign is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Tests for Tanner-graph construction and parity-check expansion."""

import math

import numpy as np
import pytest
from marshmallow import ValidationError

from ldpc_iterdesign import gf2
from ldpc_iterdesign.component_codes import hamming_parity_check
from ldpc_iterdesign.construction import (
    brute_force_min_distance,
    code_dimension,
    count_four_cycles,
    edge_fractions,
    expand_parity_check,
    girth,
    peg_construct,
    sample_random_code,
)
from ldpc_iterdesign.ensemble import DegreeDistributionPair
from ldpc_iterdesign.errors import ConstructionError, DimensionTooLargeError
from ldpc_iterdesign.services.schemas import TannerGraphSchema


@pytest.mark.parametrize("builder", [sample_random_code, peg_construct])
def test_smallest_regular_graph(regular_36, builder):
    """(3,6) at N=6: three checks, every variable node on all of them."""
    graph = builder(regular_36, 6, seed=1)
    assert (graph.n, graph.m, graph.edge_count) == (6, 3, 18)
    graph.check_invariants()
    assert edge_fractions(graph) == {3: 1.0}


@pytest.mark.parametrize("builder", [sample_random_code, peg_construct])
def test_seed_determinism(published, builder):
    """Equal seeds give equal graphs; different seeds do not."""
    ddp = published("ensemble-b")
    first, second = builder(ddp, 300, seed=4), builder(ddp, 300, seed=4)
    assert all(np.array_equal(a, b) for a, b in zip(first.cn_sockets, second.cn_sockets))
    other = builder(ddp, 300, seed=5)
    assert not all(np.array_equal(a, b) for a, b in zip(first.cn_sockets, other.cn_sockets))


def test_random_graph_matches_node_counts(published):
    """Degrees and check types follow the ensemble realization."""
    graph = sample_random_code(published("ensemble-a"), 500, seed=2)
    graph.check_invariants()
    identifiers = {code.identifier for code in graph.cn_codes}
    assert identifiers == {"spc-7", "hamming-15-11"}
    assert set(np.unique(graph.vn_degrees).tolist()) == {2}


def test_peg_avoids_four_cycles(regular_36):
    """PEG on (3,6) at N=96 has girth at least 6."""
    graph = peg_construct(regular_36, 96, seed=0)
    assert count_four_cycles(graph) == 0
    assert girth(graph) >= 6


def test_peg_ties_follow_seeded_labels(regular_36):
    """The first variable node joins the checks ranked first by the seeded label permutation."""
    first_checks = set()
    for seed in range(8):
        graph = peg_construct(regular_36, 96, seed=seed)
        neighbours = sorted(c for c, sockets in enumerate(graph.cn_sockets) if 0 in sockets)
        ranked = np.argsort(np.random.default_rng(seed).permutation(graph.m))[:3]
        assert neighbours == sorted(int(c) for c in ranked)
        first_checks.update(neighbours)
    assert first_checks != {0, 1, 2}


def test_peg_girth_not_below_random(regular_36):
    """Across seeds PEG girth is at least the random girth in 90% of cases."""
    wins = sum(
        girth(peg_construct(regular_36, 96, seed=s)) >= girth(sample_random_code(regular_36, 96, seed=s))
        for s in range(10)
    )
    assert wins >= 9


def test_cycle_code_girth_four():
    """lambda_2=1 with SPC-4 at N=4 forces every variable node onto both checks."""
    ddp = DegreeDistributionPair.create({2: 1.0}, [("spc-4", 1.0)])
    graph = peg_construct(ddp, 4, seed=0)
    graph.check_invariants()
    assert graph.m == 2
    assert girth(graph) == 4
    assert count_four_cycles(graph) == 6


def test_girth_of_forest(spc3_graph):
    """A single check node has no cycles."""
    assert girth(spc3_graph) == math.inf
    assert count_four_cycles(spc3_graph) == 0


def test_duplicate_edge_detected(graph_factory):
    """A check node may not see the same variable node twice."""
    graph = graph_factory([2, 1], [("spc-3", [0, 0, 1])])
    with pytest.raises(ConstructionError):
        graph.check_invariants()



@pytest.mark.parametrize(
    "document, message",
    [
        ({"n": 3, "vn_degrees": [2, 1, 1], "checks": [{"code": "spc-3", "sockets": [0, 0, 1]}]}, "duplicate edge"),
        ({"n": 3, "vn_degrees": [2, 1, 1], "checks": [{"code": "spc-3", "sockets": [0, 1, 2]}]}, "degrees"),
        ({"n": 3, "vn_degrees": [1, 1, 1], "checks": [{"code": "spc-4", "sockets": [0, 1, 2]}]}, "sockets"),
        ({"n": 3, "vn_degrees": [1, 1, 1], "checks": [{"code": "golay-23", "sockets": [0, 1, 2]}]}, "unknown"),
    ],
)
def test_graph_document_invariants(document, message):
    """Graph documents that break the Tanner-graph invariants fail to load."""
    with pytest.raises(ValidationError, match=message):
        TannerGraphSchema().load(document)


def test_graph_document_loads(gldpc_graph):
    """A dumped graph loads back with its check codes."""
    graph = TannerGraphSchema().load(TannerGraphSchema().dump(gldpc_graph))
    assert [c.identifier for c in graph.cn_codes] == ["hamming-7-4", "spc-4", "spc-4"]


def test_expanded_rows(published):
    """Each check contributes s - k rows."""
    graph = sample_random_code(published("ensemble-a"), 500, seed=3)
    h = expand_parity_check(graph)
    expected = sum(code.length - code.dimension for code in graph.cn_codes)
    assert h.shape == (expected, graph.n)
    assert h.nnz == sum(int(code.parity_check.sum()) for code in graph.cn_codes)


def test_generalized_rate(published):
    """Ensemble A at N=1500 has rank(H)/N close to one half."""
    h = expand_parity_check(sample_random_code(published("ensemble-a"), 1500, seed=0))
    assert gf2.rank(h) / h.shape[1] == pytest.approx(0.5, abs=0.01)


def test_codewords_satisfy_every_local_code(gldpc_graph):
    """Restricted to any check node, a codeword is a local codeword."""
    h = expand_parity_check(gldpc_graph)
    basis, _ = gf2.nullspace(h)
    assert code_dimension(h) == basis.shape[0] == 10 - 5
    rng = np.random.default_rng(0)
    for _ in range(16):
        word = gf2.encode(basis, rng.integers(0, 2, basis.shape[0]))
        for code, sockets in zip(gldpc_graph.cn_codes, gldpc_graph.cn_sockets):
            local = (code.parity_check.astype(int) @ word[sockets]) % 2
            assert not local.any()


def test_min_distance_examples():
    """Exhaustive minimum distance of textbook codes."""
    assert brute_force_min_distance(hamming_parity_check(3)) == 3
    assert brute_force_min_distance(hamming_parity_check(4)) == 3
    assert brute_force_min_distance(np.ones((1, 5), dtype=np.uint8)) == 2
    assert brute_force_min_distance(np.eye(6, dtype=np.uint8)) is None


def test_min_distance_dimension_cap():
    """Codes of dimension above the cap are refused."""
    with pytest.raises(DimensionTooLargeError):
        brute_force_min_distance(np.ones((1, 30), dtype=np.uint8))


def test_min_distance_of_expanded_graph(gldpc_graph):
    """Exhaustive search agrees with listing all codewords."""
    h = expand_parity_check(gldpc_graph)
    basis, _ = gf2.nullspace(h)
    k = basis.shape[0]
    messages = (np.arange(1, 2**k)[:, None] >> np.arange(k)) & 1
    weights = gf2.encode(basis, messages).sum(axis=1)
    assert brute_force_min_distance(h) == int(weights.min())
