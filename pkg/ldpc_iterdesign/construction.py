# -*- coding: utf-8 -*-
#
# Copyright (C) 2025 Cottage Labs.
#
# ldpc-iterdesign is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Finite-length Tanner graphs.

Graphs are sampled from the integer node counts of an ensemble either by a
random socket matching with duplicate-edge repair or by progressive edge
growth (PEG). They expand to binary parity-check matrices; small codes can
be checked exhaustively for their minimum distance.
"""

import logging
import math
from collections import deque
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np
from scipy import sparse

from . import config, gf2
from .component_codes import ComponentCode
from .ensemble import DegreeDistributionPair, NodeCounts, node_counts
from .errors import ConstructionError, DimensionTooLargeError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class TannerGraph:
    """A bipartite graph of variable nodes and component-code check nodes.

    ``cn_sockets[c][j]`` is the variable node attached to socket ``j`` of
    check node ``c``; local-code column ``j`` binds to that socket.
    """

    vn_degrees: np.ndarray
    cn_codes: Tuple[ComponentCode, ...]
    cn_sockets: Tuple[np.ndarray, ...]

    @property
    def n(self) -> int:
        """Number of variable nodes."""
        return int(self.vn_degrees.size)

    @property
    def m(self) -> int:
        """Number of check nodes."""
        return len(self.cn_codes)

    @property
    def edge_count(self) -> int:
        """Number of edges."""
        return int(sum(s.size for s in self.cn_sockets))

    def edges(self) -> np.ndarray:
        """Edge list with columns (vn, cn, socket)."""
        rows = [
            np.column_stack([sockets, np.full(sockets.size, c), np.arange(sockets.size)])
            for c, sockets in enumerate(self.cn_sockets)
        ]
        if not rows:
            return np.zeros((0, 3), dtype=np.int64)
        return np.concatenate(rows).astype(np.int64)

    def incidence(self) -> sparse.csr_matrix:
        """The ``n x m`` VN-CN incidence matrix."""
        e = self.edges()
        return sparse.csr_matrix(
            (np.ones(len(e), dtype=np.int64), (e[:, 0], e[:, 1])), shape=(self.n, self.m)
        )

    def check_invariants(self) -> None:
        """Raise ConstructionError unless the graph is simple and degree-consistent."""
        for c, (code, sockets) in enumerate(zip(self.cn_codes, self.cn_sockets)):
            if sockets.size != code.length:
                raise ConstructionError(
                    f"check node {c} has {sockets.size} sockets, {code.identifier} needs {code.length}"
                )
            if np.unique(sockets).size != sockets.size:
                raise ConstructionError(f"check node {c} has a duplicate edge")
        realized = np.bincount(self.edges()[:, 0], minlength=self.n)
        if not np.array_equal(realized, self.vn_degrees):
            raise ConstructionError("variable-node edge counts differ from their degrees")


def edge_fractions(graph: TannerGraph) -> Dict[int, float]:
    """Realized edge-perspective VN degree fractions."""
    degrees, counts = np.unique(graph.vn_degrees, return_counts=True)
    edges = graph.edge_count
    return {int(d): float(d * c / edges) for d, c in zip(degrees, counts)}


def _layout(counts: NodeCounts):
    vn_degrees = np.concatenate(
        [np.full(c, d, dtype=np.int64) for d, c in sorted(counts.vn_counts.items())]
    )
    codes = tuple(t.code for t, c in counts.cn_counts for _ in range(c))
    return vn_degrees, codes


def _realize(ddp: DegreeDistributionPair, block_length: int) -> NodeCounts:
    counts = node_counts(ddp, block_length)
    if counts.length != block_length:
        logger.info("ensemble realized at N=%d instead of %d", counts.length, block_length)
    return counts


def _split_sockets(vn_of_edge: np.ndarray, codes) -> Tuple[np.ndarray, ...]:
    bounds = np.cumsum([0] + [code.length for code in codes])
    return tuple(vn_of_edge[bounds[i]:bounds[i + 1]].copy() for i in range(len(codes)))


def _repair_duplicates(vn_of_edge, cn_of_edge, m, rng, max_attempts) -> bool:
    """Swap edge endpoints until no (vn, cn) pair repeats.

    Returns:
        Whether the matching became simple within ``max_attempts`` swaps
    """
    keys = vn_of_edge * m + cn_of_edge
    pair_count: Dict[int, int] = {}
    for key in keys.tolist():
        pair_count[key] = pair_count.get(key, 0) + 1
    duplicates = [e for e, key in enumerate(keys.tolist()) if pair_count[key] > 1]
    edges = vn_of_edge.size
    attempts = 0
    while duplicates:
        e1 = duplicates[-1]
        if pair_count[int(vn_of_edge[e1] * m + cn_of_edge[e1])] < 2:
            duplicates.pop()
            continue
        if attempts >= max_attempts:
            return False
        attempts += 1
        e2 = int(rng.integers(edges))
        v1, c1 = int(vn_of_edge[e1]), int(cn_of_edge[e1])
        v2, c2 = int(vn_of_edge[e2]), int(cn_of_edge[e2])
        if v1 == v2 or c1 == c2:
            continue
        new1, new2 = v2 * m + c1, v1 * m + c2
        if pair_count.get(new1, 0) or pair_count.get(new2, 0):
            continue
        for old in (v1 * m + c1, v2 * m + c2):
            pair_count[old] -= 1
        pair_count[new1] = 1
        pair_count[new2] = 1
        vn_of_edge[e1], vn_of_edge[e2] = v2, v1
        duplicates.pop()
    logger.debug("duplicate edges repaired with %d swap attempts", attempts)
    return True


def sample_random_code(ddp: DegreeDistributionPair, block_length: int, seed: int = 0) -> TannerGraph:
    """Random socket matching with duplicate-edge repair.

    Args:
        ddp: ensemble to realize
        block_length: requested number of variable nodes
        seed: random seed; equal seeds give identical graphs

    Raises:
        ConstructionError: repair failed on every resample
    """
    counts = _realize(ddp, block_length)
    vn_degrees, codes = _layout(counts)
    m = len(codes)
    vn_sockets = np.repeat(np.arange(vn_degrees.size), vn_degrees)
    cn_of_edge = np.repeat(np.arange(m), [code.length for code in codes])
    rng = np.random.default_rng(seed)
    max_attempts = config.ITERDESIGN_SWAP_FACTOR * vn_sockets.size

    for attempt in range(config.ITERDESIGN_RESAMPLE_LIMIT):
        vn_of_edge = rng.permutation(vn_sockets)
        if _repair_duplicates(vn_of_edge, cn_of_edge, m, rng, max_attempts):
            graph = TannerGraph(vn_degrees, codes, _split_sockets(vn_of_edge, codes))
            graph.check_invariants()
            logger.info(
                "random graph: N=%d, %d check nodes, %d edges (resamples: %d)",
                graph.n, graph.m, graph.edge_count, attempt,
            )
            return graph
        logger.debug("swap repair stalled, resampling (attempt %d)", attempt + 1)
    raise ConstructionError(
        f"duplicate-edge repair failed after {config.ITERDESIGN_RESAMPLE_LIMIT} resamples"
    )


def _check_distances(start: int, vn_adj: List[List[int]], cn_adj: List[List[int]], m: int) -> np.ndarray:
    """Distance (in check-node layers) from a variable node to every check node."""
    distance = np.full(m, np.inf)
    seen_vn = {start}
    frontier = [start]
    depth = 0
    while frontier:
        reached = []
        for v in frontier:
            for c in vn_adj[v]:
                if distance[c] == np.inf:
                    distance[c] = depth
                    reached.append(c)
        frontier = []
        for c in reached:
            for v in cn_adj[c]:
                if v not in seen_vn:
                    seen_vn.add(v)
                    frontier.append(v)
        depth += 1
    return distance


def peg_construct(ddp: DegreeDistributionPair, block_length: int, seed: int = 0) -> TannerGraph:
    """Progressive edge growth.

    Variable nodes are processed in nondecreasing degree order. Each new
    edge goes to a check node with free sockets, not yet adjacent, at the
    largest distance from the current variable node (unreachable counts as
    infinitely far). Ties go to the lowest fill. Remaining ties are broken
    by a seeded random permutation of the check-node labels, not by the
    lowest check-node index, so the seed changes which check wins.

    Raises:
        ConstructionError: no eligible check node is left for an edge
    """
    counts = _realize(ddp, block_length)
    vn_degrees, codes = _layout(counts)
    n, m = vn_degrees.size, len(codes)
    rng = np.random.default_rng(seed)
    label = rng.permutation(m)
    capacity = np.array([code.length for code in codes], dtype=np.int64)
    fill = np.zeros(m, dtype=np.int64)
    vn_adj: List[List[int]] = [[] for _ in range(n)]
    cn_adj: List[List[int]] = [[] for _ in range(m)]

    for v in np.argsort(vn_degrees, kind="stable"):
        v = int(v)
        for _ in range(int(vn_degrees[v])):
            eligible = fill < capacity
            eligible[vn_adj[v]] = False
            if not eligible.any():
                raise ConstructionError(f"no eligible check node for variable node {v}")
            if vn_adj[v]:
                distance = _check_distances(v, vn_adj, cn_adj, m)
            else:
                distance = np.full(m, np.inf)
            candidates = np.flatnonzero(eligible)
            far = distance[candidates]
            candidates = candidates[far == far.max()]
            candidates = candidates[fill[candidates] == fill[candidates].min()]
            c = int(candidates[np.argmin(label[candidates])])
            vn_adj[v].append(c)
            cn_adj[c].append(v)
            fill[c] += 1

    graph = TannerGraph(
        vn_degrees, codes, tuple(np.asarray(sockets, dtype=np.int64) for sockets in cn_adj)
    )
    graph.check_invariants()
    logger.info("PEG graph: N=%d, %d check nodes, %d edges", graph.n, graph.m, graph.edge_count)
    return graph


def expand_parity_check(graph: TannerGraph) -> sparse.csr_matrix:
    """Binary parity-check matrix of a graph.

    Each check node contributes the rows of its local parity-check matrix,
    with local column ``j`` placed at the variable node on socket ``j``.
    """
    rows, cols = [], []
    row = 0
    for code, sockets in zip(graph.cn_codes, graph.cn_sockets):
        local = code.parity_check
        r, j = np.nonzero(local)
        rows.append(r + row)
        cols.append(sockets[j])
        row += local.shape[0]
    rows = np.concatenate(rows) if rows else np.zeros(0, dtype=np.int64)
    cols = np.concatenate(cols) if cols else np.zeros(0, dtype=np.int64)
    return sparse.csr_matrix(
        (np.ones(rows.size, dtype=np.uint8), (rows, cols)), shape=(row, graph.n), dtype=np.uint8
    )


def brute_force_min_distance(parity_check) -> Optional[int]:
    """Minimum nonzero codeword weight by exhaustive enumeration.

    Codewords are the XOR of a table of the first (up to 16) generator rows'
    combinations with each combination of the remaining rows, over
    bit-packed words.

    Returns:
        The minimum distance, or None for a zero-dimensional code

    Raises:
        DimensionTooLargeError: dimension above the configured cap
    """
    generator, _ = gf2.systematic_generator(parity_check)
    k = generator.shape[0]
    if k == 0:
        return None
    if k > config.ITERDESIGN_MAX_ENUM_DIMENSION:
        raise DimensionTooLargeError(
            f"code dimension {k} exceeds {config.ITERDESIGN_MAX_ENUM_DIMENSION}"
        )
    packed = np.packbits(generator, axis=1)
    low_rows, high_rows = packed[: min(k, 16)], packed[min(k, 16):]

    table = np.zeros((1, packed.shape[1]), dtype=np.uint8)
    for g in low_rows:
        table = np.concatenate([table, table ^ g], axis=0)
    low_weights = np.bitwise_count(table).sum(axis=1, dtype=np.int64)
    best = int(low_weights[1:].min()) if table.shape[0] > 1 else math.inf

    high = np.zeros(packed.shape[1], dtype=np.uint8)
    for index in range(1, 2 ** high_rows.shape[0]):
        # Gray-code walk over the high combinations
        flip = (index & -index).bit_length() - 1
        high ^= high_rows[flip]
        weights = np.bitwise_count(table ^ high).sum(axis=1, dtype=np.int64)
        best = min(best, int(weights.min()))
    return int(best)


def girth(graph: TannerGraph) -> float:
    """Length of the shortest cycle (``inf`` for a forest)."""
    n = graph.n
    adjacency: List[List[int]] = [[] for _ in range(n + graph.m)]
    for c, sockets in enumerate(graph.cn_sockets):
        for v in sockets.tolist():
            adjacency[v].append(n + c)
            adjacency[n + c].append(v)

    best = math.inf
    for root in range(n):
        depth = {root: 0}
        parent = {root: -1}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            if 2 * depth[u] + 1 >= best:
                break
            for w in adjacency[u]:
                if w not in depth:
                    depth[w] = depth[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif w != parent[u]:
                    best = min(best, depth[u] + depth[w] + 1)
    return best


def count_four_cycles(graph: TannerGraph) -> int:
    """Number of length-4 cycles (pairs of check nodes sharing two variable nodes)."""
    a = graph.incidence()
    overlap = sparse.triu(a.T @ a, k=1).tocoo()
    shared = overlap.data.astype(np.int64)
    return int(np.sum(shared * (shared - 1) // 2))


def code_dimension(parity_check) -> int:
    """Dimension ``N - rank(H)`` of the code defined by a parity-check matrix."""
    return parity_check.shape[1] - gf2.rank(parity_check)

