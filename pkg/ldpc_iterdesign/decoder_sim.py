# -*- coding: utf-8 -*-
#
# Copyright (C) 2025 Cottage Labs.
#
# ldpc-iterdesign is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Belief-propagation decoding and Monte Carlo error-rate simulation.

Words are decoded in batches (rows of a 2-D array). On the BEC every check
node applies MAP erasure decoding of its component code to its sockets; on
BI-AWGN the flooding sum-product algorithm runs on SPC check nodes. One
iteration is one check-node update followed by one variable-node update.
"""

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from joblib import Parallel, delayed
from scipy import sparse

from . import config, gf2
from .component_codes import ERASURE, ComponentCode, erasure_resolver
from .construction import TannerGraph
from .errors import ConfigError, InconsistentWordError, UnsupportedChannelError
from .exit_engine import AwgnChannel, BecChannel, ChannelParameter

logger = logging.getLogger(__name__)


@dataclass
class CheckLayout:
    """Check nodes grouped for vectorized processing.

    ``spc`` holds one ``(m, s)`` socket array per SPC length; ``generalized``
    holds ``(code, (m, s) sockets)`` per non-SPC component code.
    """

    n: int
    spc: List[np.ndarray] = field(default_factory=list)
    generalized: List[Tuple[ComponentCode, np.ndarray]] = field(default_factory=list)

    @classmethod
    def from_graph(cls, graph: TannerGraph) -> "CheckLayout":
        """Group the check nodes of a Tanner graph."""
        spc, generalized = defaultdict(list), defaultdict(list)
        codes = {}
        for code, sockets in zip(graph.cn_codes, graph.cn_sockets):
            if code.is_spc:
                spc[code.length].append(sockets)
            else:
                codes[code.identifier] = code
                generalized[code.identifier].append(sockets)
        return cls(
            n=graph.n,
            spc=[np.asarray(spc[s], dtype=np.int64) for s in sorted(spc)],
            generalized=[(codes[k], np.asarray(v, dtype=np.int64)) for k, v in sorted(generalized.items())],
        )

    @classmethod
    def from_matrix(cls, parity_check) -> "CheckLayout":
        """One single parity check per row of a binary matrix."""
        h = sparse.csr_matrix(parity_check)
        rows = defaultdict(list)
        for r in range(h.shape[0]):
            sockets = np.sort(h.indices[h.indptr[r]:h.indptr[r + 1]])
            if sockets.size:
                rows[sockets.size].append(sockets)
        return cls(n=h.shape[1], spc=[np.asarray(rows[s], dtype=np.int64) for s in sorted(rows)])

    @property
    def spc_only(self) -> bool:
        """Whether every check is a single parity check."""
        return not self.generalized

    def syndrome_ok(self, hard: np.ndarray) -> np.ndarray:
        """Per-word flag: all single parity checks satisfied."""
        ok = np.ones(hard.shape[0], dtype=bool)
        for sockets in self.spc:
            ok &= ~(hard[:, sockets].sum(axis=-1) % 2).astype(bool).any(axis=-1)
        for code, sockets in self.generalized:
            local = hard[:, sockets].astype(np.int64) @ code.parity_check.T.astype(np.int64)
            ok &= ~(local % 2).astype(bool).any(axis=(-1, -2))
        return ok


CodeLike = Union[TannerGraph, CheckLayout, sparse.spmatrix, np.ndarray]


def as_layout(code: CodeLike) -> CheckLayout:
    """Build a CheckLayout from a graph, a parity-check matrix or a layout."""
    if isinstance(code, CheckLayout):
        return code
    if isinstance(code, TannerGraph):
        return CheckLayout.from_graph(code)
    return CheckLayout.from_matrix(code)


@dataclass
class DecodeResult:
    """Decoder output for a batch of words."""

    words: np.ndarray
    iterations: np.ndarray
    llrs: Optional[np.ndarray] = None


#
# Erasure decoding
#
def _bec_round(words: np.ndarray, layout: CheckLayout) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """One flooding round; returns (word index, position, value) of resolved bits."""
    hits_b, hits_v, hits_x = [], [], []
    for sockets in layout.spc:
        values = words[:, sockets]
        erased = values == ERASURE
        single = erased.sum(axis=-1) == 1
        if not single.any():
            continue
        b, c = np.nonzero(single)
        known = np.where(erased[b, c], 0, values[b, c])
        hits_b.append(b)
        hits_v.append(sockets[c, np.argmax(erased[b, c], axis=-1)])
        hits_x.append(known.sum(axis=-1) % 2)

    for code, sockets in layout.generalized:
        values = words[:, sockets]
        erased = values == ERASURE
        masks = erased.astype(np.int64) @ (1 << np.arange(code.length, dtype=np.int64))
        b, c = np.nonzero(masks)
        if b.size == 0:
            continue
        for mask in np.unique(masks[b, c]):
            solution = erasure_resolver(code, int(mask))
            if solution.positions.size == 0:
                continue
            select = masks[b, c] == mask
            bb, cc = b[select], c[select]
            known = np.where(erased[bb, cc], 0, values[bb, cc]).astype(np.int64)
            resolved = (known @ solution.coefficients.T.astype(np.int64)) % 2
            hits_b.append(np.repeat(bb, solution.positions.size))
            hits_v.append(sockets[cc][:, solution.positions].ravel())
            hits_x.append(resolved.ravel())

    if not hits_b:
        empty = np.zeros(0, dtype=np.int64)
        return empty, empty, empty
    return np.concatenate(hits_b), np.concatenate(hits_v), np.concatenate(hits_x)


def decode_bec_batch(code: CodeLike, received: np.ndarray, i_max: int) -> DecodeResult:
    """Iterative erasure decoding of a batch of words.

    Args:
        code: Tanner graph, parity-check matrix or CheckLayout
        received: ``(B, N)`` array of 0, 1 and ``ERASURE``
        i_max: iteration cap

    Returns:
        DecodeResult whose ``iterations`` is the last round that resolved a bit
    """
    layout = as_layout(code)
    words = np.array(received, dtype=np.int8, ndmin=2)
    iterations = np.zeros(words.shape[0], dtype=np.int64)
    for round_ in range(1, i_max + 1):
        b, v, x = _bec_round(words, layout)
        fresh = words[b, v] == ERASURE
        if not fresh.any():
            break
        b, v, x = b[fresh], v[fresh], x[fresh]
        words[b, v] = x
        iterations[np.unique(b)] = round_
    return DecodeResult(words=words, iterations=iterations)


def decode_bec(code: CodeLike, received, i_max: int) -> DecodeResult:
    """Iterative erasure decoding of a single word."""
    result = decode_bec_batch(code, np.asarray(received)[None, :], i_max)
    return DecodeResult(words=result.words[0], iterations=result.iterations[0])


def ml_erasure_decode(parity_check, received) -> np.ndarray:
    """Maximum-likelihood erasure decoding by elimination on the full matrix.

    Raises:
        InconsistentWordError: the known positions match no codeword
    """
    word = np.asarray(received, dtype=np.int8).copy()
    erased = word == ERASURE
    solution = gf2.solve_erasures(parity_check, erased)
    known = np.where(erased, 0, word).astype(np.int64)
    if solution.checks.size and ((solution.checks.astype(np.int64) @ known) % 2).any():
        raise InconsistentWordError("received word matches no codeword")
    if solution.positions.size:
        word[solution.positions] = (solution.coefficients.astype(np.int64) @ known) % 2
    return word


#
# Sum-product decoding
#
def boxplus(a, b):
    """Exact check-node combination of two LLRs."""
    return (
        np.sign(a) * np.sign(b) * np.minimum(np.abs(a), np.abs(b))
        + np.log1p(np.exp(-np.abs(a + b)))
        - np.log1p(np.exp(-np.abs(a - b)))
    )


def _extrinsic_boxplus(messages: np.ndarray) -> np.ndarray:
    """Leave-one-out boxplus along the last axis (forward-backward)."""
    s = messages.shape[-1]
    forward = np.empty_like(messages)
    backward = np.empty_like(messages)
    forward[..., 0] = messages[..., 0]
    backward[..., -1] = messages[..., -1]
    for j in range(1, s):
        forward[..., j] = boxplus(forward[..., j - 1], messages[..., j])
        backward[..., s - 1 - j] = boxplus(backward[..., s - j], messages[..., s - 1 - j])
    out = np.empty_like(messages)
    out[..., 0] = backward[..., 1]
    out[..., -1] = forward[..., -2]
    if s > 2:
        out[..., 1:-1] = boxplus(forward[..., :-2], backward[..., 2:])
    return out


def decode_awgn_batch(code: CodeLike, channel_llrs: np.ndarray, i_max: int,
                      early_exit: bool = True) -> DecodeResult:
    """Flooding sum-product decoding of a batch of words.

    Words whose hard decisions satisfy every check stop early; their
    iteration count is the iteration at which that happened.

    Raises:
        UnsupportedChannelError: generalized check nodes
    """
    layout = as_layout(code)
    if not layout.spc_only:
        raise UnsupportedChannelError("sum-product decoding supports SPC check nodes only")
    clamp = config.ITERDESIGN_LLR_CLAMP
    llr = np.clip(np.array(channel_llrs, dtype=float, ndmin=2), -clamp, clamp)
    batch = llr.shape[0]
    posterior = llr.copy()
    iterations = np.zeros(batch, dtype=np.int64)
    if i_max == 0:
        return DecodeResult(words=(llr < 0).astype(np.int8), iterations=iterations, llrs=posterior)

    groups = layout.spc
    incidence = sparse.csr_matrix(
        (
            np.ones(sum(g.size for g in groups)),
            (np.concatenate([g.ravel() for g in groups]), np.arange(sum(g.size for g in groups))),
        ),
        shape=(layout.n, sum(g.size for g in groups)),
    )
    active = np.arange(batch)
    v2c = [llr[:, g] for g in groups]
    for it in range(1, i_max + 1):
        c2v = [np.clip(_extrinsic_boxplus(m), -clamp, clamp) for m in v2c]
        flat = np.concatenate([m.reshape(m.shape[0], -1) for m in c2v], axis=1)
        total = llr[active] + (incidence @ flat.T).T
        posterior[active] = total
        iterations[active] = it
        v2c = [np.clip(total[:, g] - m, -clamp, clamp) for g, m in zip(groups, c2v)]
        if early_exit:
            done = layout.syndrome_ok((total < 0).astype(np.int8))
            if done.any():
                keep = ~done
                active = active[keep]
                v2c = [m[keep] for m in v2c]
                if active.size == 0:
                    break
    return DecodeResult(words=(posterior < 0).astype(np.int8), iterations=iterations, llrs=posterior)


def decode_awgn(code: CodeLike, channel_llrs, i_max: int) -> DecodeResult:
    """Sum-product decoding of a single word."""
    result = decode_awgn_batch(code, np.asarray(channel_llrs, dtype=float)[None, :], i_max)
    return DecodeResult(words=result.words[0], iterations=result.iterations[0], llrs=result.llrs[0])


def systematic_encoder(parity_check) -> Tuple[np.ndarray, List[int]]:
    """Systematic generator matrix of ``H`` with its information positions."""
    return gf2.systematic_generator(parity_check)


#
# Monte Carlo
#
@dataclass(frozen=True)
class SimulationTask:
    """Error-rate simulation of one code over a grid of channel parameters."""

    code: CodeLike
    grid: Tuple[ChannelParameter, ...]
    i_max: int
    target_errors: int = config.ITERDESIGN_TARGET_ERRORS
    max_words: int = config.ITERDESIGN_MAX_WORDS
    seed: int = config.ITERDESIGN_SEED
    words_per_batch: int = config.ITERDESIGN_WORDS_PER_BATCH
    batches_per_round: int = config.ITERDESIGN_BATCHES_PER_ROUND
    threads: int = config.ITERDESIGN_THREADS
    generator: Optional[np.ndarray] = None

    def __post_init__(self):
        """Validate the task."""
        object.__setattr__(self, "grid", tuple(self.grid))
        if not self.grid:
            raise ConfigError("channel grid is empty")
        if self.i_max < 1:
            raise ConfigError("i_max must be >= 1")
        if len({c.kind for c in self.grid}) != 1:
            raise ConfigError("channel grid mixes channel kinds")


@dataclass
class BerPoint:
    """Error counts at one channel parameter."""

    parameter: float
    words: int
    word_errors: int
    bits: int
    bit_errors: int
    histogram: np.ndarray

    @property
    def ber(self) -> float:
        """Bit error rate."""
        return self.bit_errors / self.bits if self.bits else 0.0

    @property
    def cer(self) -> float:
        """Codeword error rate."""
        return self.word_errors / self.words if self.words else 0.0

    @property
    def mean_iterations(self) -> float:
        """Average number of iterations used."""
        return float(np.arange(self.histogram.size) @ self.histogram / max(self.words, 1))


@dataclass
class BerCurve:
    """Simulation results along a channel grid."""

    channel: str
    i_max: int
    points: List[BerPoint]

    HEADER = ("param", "words", "word_errors", "bits", "bit_errors", "ber", "cer", "mean_iterations")

    def rows(self) -> List[Tuple]:
        """CSV rows matching ``HEADER``."""
        return [
            (p.parameter, p.words, p.word_errors, p.bits, p.bit_errors, p.ber, p.cer, p.mean_iterations)
            for p in self.points
        ]

    def histogram_rows(self) -> List[Tuple]:
        """CSV rows (param, iterations, words)."""
        return [
            (p.parameter, i, int(c)) for p in self.points for i, c in enumerate(p.histogram) if c
        ]


def batch_rng(seed: int, point: int, batch: int) -> np.random.Generator:
    """Counter-based random stream for one batch of one grid point."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, point, batch])))


def _simulate_batch(layout: CheckLayout, channel: ChannelParameter, i_max: int, words: int,
                    seed: int, point: int, batch: int, generator: Optional[np.ndarray]):
    rng = batch_rng(seed, point, batch)
    n = layout.n
    if generator is not None and generator.shape[0]:
        info = rng.integers(0, 2, size=(words, generator.shape[0]))
        sent = gf2.encode(generator, info).astype(np.int8)
    else:
        sent = np.zeros((words, n), dtype=np.int8)

    if channel.kind == "bec":
        erased = rng.random((words, n)) < channel.epsilon
        result = decode_bec_batch(layout, np.where(erased, ERASURE, sent), i_max)
    else:
        std = channel.noise_std
        received = (1.0 - 2.0 * sent) + std * rng.standard_normal((words, n))
        result = decode_awgn_batch(layout, 2.0 * received / std**2, i_max)
    wrong = result.words != sent
    histogram = np.bincount(result.iterations, minlength=i_max + 1)
    return int(wrong.sum()), int(wrong.any(axis=1).sum()), histogram


def monte_carlo(task: SimulationTask) -> BerCurve:
    """Simulate every grid point until enough bit errors or words are collected.

    Batches run in rounds of ``batches_per_round``; a point stops after the
    round in which either limit is reached. Unresolved erasures count as bit
    errors.
    """
    layout = as_layout(task.code)
    kind = task.grid[0].kind
    if kind == "awgn" and not layout.spc_only:
        raise UnsupportedChannelError("AWGN simulation supports SPC check nodes only")
    points = []
    with Parallel(n_jobs=task.threads) as parallel:
        for index, channel in enumerate(task.grid):
            words = bit_errors = word_errors = 0
            histogram = np.zeros(task.i_max + 1, dtype=np.int64)
            batch = 0
            while bit_errors < task.target_errors and words < task.max_words:
                sizes = []
                planned = words
                for _ in range(task.batches_per_round):
                    size = min(task.words_per_batch, task.max_words - planned)
                    if size <= 0:
                        break
                    sizes.append(size)
                    planned += size
                results = parallel(
                    delayed(_simulate_batch)(
                        layout, channel, task.i_max, size, task.seed, index, batch + k, task.generator
                    )
                    for k, size in enumerate(sizes)
                )
                batch += len(sizes)
                words = planned
                for bits_wrong, words_wrong, counts in results:
                    bit_errors += bits_wrong
                    word_errors += words_wrong
                    histogram += counts
            point = BerPoint(
                parameter=float(channel.parameter),
                words=words,
                word_errors=word_errors,
                bits=words * layout.n,
                bit_errors=bit_errors,
                histogram=histogram,
            )
            logger.info(
                "%s=%g: BER %.3e, CER %.3e over %d words",
                kind, point.parameter, point.ber, point.cer, point.words,
            )
            points.append(point)
    return BerCurve(channel=kind, i_max=task.i_max, points=points)


def channel_grid(kind: str, values: Sequence[float], code_rate: Optional[float] = None) -> Tuple[ChannelParameter, ...]:
    """Channel parameters for a list of erasure probabilities or Eb/N0 values in dB."""
    if kind == "bec":
        return tuple(BecChannel(float(v)) for v in values)
    if code_rate is None:
        raise ConfigError("AWGN simulation needs the code rate")
    return tuple(AwgnChannel(float(v), code_rate) for v in values)


def parse_grid(text: str) -> List[float]:
    """Parse ``start:stop:step`` (inclusive stop) or a comma-separated list."""
    try:
        if ":" in text:
            start, stop, step = (float(p) for p in text.split(":"))
            if step <= 0:
                raise ConfigError("grid step must be > 0")
            count = int(np.floor((stop - start) / step + 1e-9)) + 1
            return [round(start + i * step, 12) for i in range(max(count, 0))]
        return [float(p) for p in text.split(",") if p.strip()]
    except ValueError as e:
        raise ConfigError(f"cannot parse grid {text!r}: {e}") from e
