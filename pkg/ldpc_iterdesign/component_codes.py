# -*- coding: utf-8 -*-
#
# Copyright (C) 2025 Cottage Labs.
#
# ldpc-iterdesign is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Local component codes placed at check nodes.

Single parity-check (SPC) codes and the (7,4) and (15,11) Hamming codes,
with their weight enumerators, MAP erasure decoding and exact EXIT
functions on the binary erasure channel.
"""

import logging
import re
import threading
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Dict, Sequence, Tuple

import numpy as np

from . import gf2
from .errors import ComponentCodeError, InconsistentWordError

logger = logging.getLogger(__name__)

ERASURE = -1
"""Symbol value marking an erased position."""

SUPPORTED_CODES = ("spc-<s>", "hamming-7-4", "hamming-15-11")

_SPC_PATTERN = re.compile(r"^spc-(\d+)$")


@dataclass(frozen=True, eq=False)
class ComponentCode:
    """A binary linear block code used as a check-node constraint.

    Codes are identified by ``identifier``; two instances with the same
    identifier compare equal.
    """

    identifier: str
    length: int
    dimension: int
    min_distance: int
    generator: np.ndarray
    parity_check: np.ndarray
    weight_enumerator: Tuple[int, ...]

    @property
    def rate(self) -> float:
        """Code rate k/s."""
        return self.dimension / self.length

    @property
    def is_spc(self) -> bool:
        """Whether this is a single parity-check code."""
        return self.identifier.startswith("spc-")

    @property
    def weight2_count(self) -> int:
        """Number of weight-2 codewords."""
        return self.weight_enumerator[2] if self.length >= 2 else 0

    def __eq__(self, other):
        """Codes compare by identifier."""
        if not isinstance(other, ComponentCode):
            return NotImplemented
        return self.identifier == other.identifier

    def __hash__(self):
        """Hash by identifier."""
        return hash(self.identifier)

    def __repr__(self):
        """Short representation."""
        return f"ComponentCode({self.identifier!r})"


def enumerate_codewords(generator: np.ndarray) -> np.ndarray:
    """All ``2^k`` codewords spanned by the rows of ``generator``."""
    k = generator.shape[0]
    messages = (np.arange(2**k)[:, None] >> np.arange(k)[None, :]) & 1
    return gf2.encode(generator, messages).astype(np.uint8)


def weight_enumerator(generator: np.ndarray) -> Tuple[int, ...]:
    """Weight distribution ``(A_0, ..., A_n)`` of the code spanned by ``generator``."""
    n = generator.shape[1]
    weights = enumerate_codewords(generator).sum(axis=1)
    return tuple(int(c) for c in np.bincount(weights, minlength=n + 1))


def macwilliams_transform(enumerator: Sequence[int], dimension: int) -> Tuple[int, ...]:
    """Weight enumerator of the dual code.

    Args:
        enumerator: ``(A_0, ..., A_n)`` of a code of dimension ``dimension``

    Returns:
        ``(B_0, ..., B_n)`` of the dual code
    """
    n = len(enumerator) - 1
    dual = []
    for w in range(n + 1):
        total = 0
        for i, a in enumerate(enumerator):
            if a:
                krawtchouk = sum(
                    (-1) ** j * comb(i, j) * comb(n - i, w - j) for j in range(w + 1)
                )
                total += a * krawtchouk
        if total % (2**dimension):
            raise ComponentCodeError("enumerator is not the enumerator of a linear code")
        dual.append(total // 2**dimension)
    return tuple(dual)


def _build(identifier, generator, parity_check) -> ComponentCode:
    generator = np.asarray(generator, dtype=np.uint8)
    parity_check = np.asarray(parity_check, dtype=np.uint8)
    k, n = generator.shape
    if ((generator.astype(np.int64) @ parity_check.T.astype(np.int64)) % 2).any():
        raise ComponentCodeError(f"{identifier}: G H^T != 0")
    if gf2.rank(generator) != k or gf2.rank(parity_check) != n - k:
        raise ComponentCodeError(f"{identifier}: rank mismatch")
    enumerator = weight_enumerator(generator)
    min_distance = next(w for w in range(1, n + 1) if enumerator[w] > 0)
    return ComponentCode(
        identifier=identifier,
        length=n,
        dimension=k,
        min_distance=min_distance,
        generator=generator,
        parity_check=parity_check,
        weight_enumerator=enumerator,
    )


def make_spc(s: int) -> ComponentCode:
    """The (s, s-1) even-weight single parity-check code."""
    if s < 3:
        raise ComponentCodeError(f"SPC length {s} is too small (need s >= 3)")
    generator = np.concatenate(
        [np.eye(s - 1, dtype=np.uint8), np.ones((s - 1, 1), dtype=np.uint8)], axis=1
    )
    return _build(f"spc-{s}", generator, np.ones((1, s), dtype=np.uint8))


def hamming_parity_check(m: int, systematic: bool = True) -> np.ndarray:
    """Parity-check matrix of the length ``2^m - 1`` Hamming code.

    Columns are the non-zero m-bit vectors. In systematic form the
    weight-two-or-more columns come first in natural binary counting order,
    followed by the unit vectors (``H = [P^T | I]``); otherwise all columns
    are in natural counting order.
    """
    values = np.arange(1, 2**m)
    if systematic:
        is_unit = (values & (values - 1)) == 0
        values = np.concatenate([values[~is_unit], values[is_unit][::-1]])
    # row 0 holds the most significant bit
    return ((values[None, :] >> np.arange(m - 1, -1, -1)[:, None]) & 1).astype(np.uint8)


def make_hamming(m: int, systematic: bool = True) -> ComponentCode:
    """The (2^m - 1, 2^m - 1 - m) Hamming code for ``m`` in {3, 4}."""
    if m not in (3, 4):
        raise ComponentCodeError(f"unsupported Hamming parameter m={m}")
    n = 2**m - 1
    k = n - m
    h = hamming_parity_check(m, systematic=systematic)
    identifier = f"hamming-{n}-{k}"
    if systematic:
        p_t = h[:, :k]
        generator = np.concatenate([np.eye(k, dtype=np.uint8), p_t.T], axis=1)
    else:
        identifier += "-natural"
        generator, _ = gf2.nullspace(h)
    return _build(identifier, generator, h)


@lru_cache(maxsize=None)
def get_code(identifier: str) -> ComponentCode:
    """Look up a component code by its identifier.

    Args:
        identifier: ``spc-<s>``, ``hamming-7-4`` or ``hamming-15-11``

    Returns:
        The (shared) ComponentCode instance
    """
    match = _SPC_PATTERN.match(identifier)
    if match:
        return make_spc(int(match.group(1)))
    if identifier == "hamming-7-4":
        return make_hamming(3)
    if identifier == "hamming-15-11":
        return make_hamming(4)
    raise ComponentCodeError(
        f"unknown component code {identifier!r} (supported: {', '.join(SUPPORTED_CODES)})"
    )


@lru_cache(maxsize=4096)
def erasure_resolver(code: ComponentCode, erased_mask: int) -> gf2.ErasureSolution:
    """Cached MAP erasure solution for an erasure bitmask (bit j = position j)."""
    erased = (int(erased_mask) >> np.arange(code.length)) & 1
    return gf2.solve_erasures(code.parity_check, erased.astype(bool))


def erased_mask(word: np.ndarray) -> int:
    """Bitmask of erased positions of a word."""
    positions = np.flatnonzero(np.asarray(word) == ERASURE)
    return int(np.sum(1 << positions.astype(np.int64))) if positions.size else 0


def map_erasure_decode(code: ComponentCode, word) -> np.ndarray:
    """MAP erasure decoding of a single component-code word.

    Every erased position whose value is the same in all codewords agreeing
    with the known positions is filled in; the others stay erased.

    Args:
        code: the component code
        word: length-``s`` sequence of 0, 1 or ``ERASURE``

    Returns:
        The decoded word as an ``int8`` array

    Raises:
        InconsistentWordError: no codeword matches the known positions
    """
    word = np.asarray(word, dtype=np.int8)
    if word.shape != (code.length,):
        raise ValueError(f"word length {word.size} does not match code length {code.length}")
    solution = erasure_resolver(code, erased_mask(word))
    known = np.where(word == ERASURE, 0, word).astype(np.int64)
    if solution.checks.size and ((solution.checks.astype(np.int64) @ known) % 2).any():
        raise InconsistentWordError(f"word {word.tolist()} matches no codeword of {code.identifier}")
    out = word.copy()
    if solution.positions.size:
        out[solution.positions] = (solution.coefficients.astype(np.int64) @ known) % 2
    return out


# Resolution profiles: profile[e] counts the pairs (position j, erased set E
# of size e among the other positions) for which j is determined.
_profiles: Dict[str, np.ndarray] = {}
_profiles_lock = threading.Lock()


def resolution_profile(code: ComponentCode) -> np.ndarray:
    """Exact erasure-resolution counts by number of other erased positions.

    Position ``j`` is determined by MAP decoding when the other erased set is
    ``E`` iff column ``h_j`` of the parity-check matrix is not in the span of
    the columns indexed by ``E``. All ``2^(s-1)`` patterns per position are
    enumerated through a table of column spans indexed by subset bitmask.
    """
    with _profiles_lock:
        cached = _profiles.get(code.identifier)
    if cached is not None:
        return cached

    s = code.length
    if code.is_spc:
        profile = np.zeros(s, dtype=np.int64)
        profile[0] = s
    else:
        h = code.parity_check
        m = h.shape[0]
        column_values = (h.astype(np.int64) * (1 << np.arange(m - 1, -1, -1))[:, None]).sum(axis=0)
        vectors = np.arange(2**m)
        spans = np.zeros((1, 2**m), dtype=bool)
        spans[0, 0] = True
        for value in column_values:
            spans = np.concatenate([spans, spans | spans[:, vectors ^ value]], axis=0)
        subsets = np.arange(2**s)
        sizes = np.bitwise_count(subsets)
        profile = np.zeros(s, dtype=np.int64)
        for j, value in enumerate(column_values):
            determined = (((subsets >> j) & 1) == 0) & ~spans[:, value]
            profile += np.bincount(sizes[determined], minlength=s)[:s]

    with _profiles_lock:
        _profiles.setdefault(code.identifier, profile)
    logger.debug("resolution profile %s: %s", code.identifier, profile.tolist())
    return profile


def bec_exit_function(code: ComponentCode, i_a):
    """Extrinsic information of a component code on the BEC.

    Each of the other ``s - 1`` positions is known independently with
    probability ``i_a``; the result is the probability, averaged over
    positions, that MAP decoding determines the position.

    Args:
        code: the component code
        i_a: a-priori information (scalar or array) in [0, 1]

    Returns:
        Extrinsic information with the shape of ``i_a``
    """
    i_a = np.clip(np.asarray(i_a, dtype=float), 0.0, 1.0)
    s = code.length
    if code.is_spc:
        return i_a ** (s - 1)
    profile = resolution_profile(code)
    e = np.arange(s)
    terms = profile * np.power.outer(1.0 - i_a, e) * np.power.outer(i_a, s - 1 - e)
    return terms.sum(axis=-1) / s
