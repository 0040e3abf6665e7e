# -*- coding: utf-8 -*-
#
# Copyright (C) 2025 Cottage Labs.
#
# ldpc-iterdesign is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Linear algebra over GF(2).

Rows are bit-packed into ``uint8`` words during elimination so that a row
operation touches ``ceil(n / 8)`` bytes instead of ``n``.
"""

from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np
from scipy import sparse


def as_dense(matrix) -> np.ndarray:
    """Return a dense ``uint8`` 0/1 copy of a matrix (dense or scipy.sparse)."""
    if sparse.issparse(matrix):
        matrix = matrix.toarray()
    return (np.asarray(matrix) % 2).astype(np.uint8)


def rref(matrix, pivot_columns: Optional[int] = None) -> Tuple[np.ndarray, List[int]]:
    """Reduced row echelon form over GF(2).

    Args:
        matrix: binary matrix (dense or sparse)
        pivot_columns: only the first ``pivot_columns`` columns are used as
            pivots; the remaining columns are carried along (augmented part)

    Returns:
        Tuple of the reduced matrix and the list of pivot columns
    """
    a = as_dense(matrix)
    rows, cols = a.shape
    limit = cols if pivot_columns is None else pivot_columns
    packed = np.packbits(a, axis=1)
    pivots: List[int] = []
    r = 0
    for c in range(limit):
        if r == rows:
            break
        column = (packed[:, c >> 3] >> (7 - (c & 7))) & 1
        candidates = np.flatnonzero(column[r:])
        if candidates.size == 0:
            continue
        p = r + candidates[0]
        if p != r:
            packed[[r, p]] = packed[[p, r]]
            column[[r, p]] = column[[p, r]]
        mask = column.astype(bool)
        mask[r] = False
        packed[mask] ^= packed[r]
        pivots.append(c)
        r += 1
    reduced = np.unpackbits(packed, axis=1, count=cols)
    return reduced, pivots


def rank(matrix) -> int:
    """Rank over GF(2)."""
    return len(rref(matrix)[1])


def nullspace(matrix) -> Tuple[np.ndarray, List[int]]:
    """Basis of the right null space of ``matrix`` over GF(2).

    The basis is in systematic form: restricted to the returned free
    columns it is the identity.

    Returns:
        Tuple of the ``k x n`` basis and the ``k`` free (information) columns
    """
    reduced, pivots = rref(matrix)
    n = reduced.shape[1]
    pivot_set = set(pivots)
    free = [c for c in range(n) if c not in pivot_set]
    basis = np.zeros((len(free), n), dtype=np.uint8)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for row, p in enumerate(pivots):
            basis[i, p] = reduced[row, f]
    return basis, free


def systematic_generator(parity_check) -> Tuple[np.ndarray, List[int]]:
    """Generator matrix of the code ``{x : H x = 0}`` with its information set."""
    return nullspace(parity_check)


def encode(generator: np.ndarray, info: np.ndarray) -> np.ndarray:
    """Encode information rows with a generator matrix."""
    return (np.asarray(info, dtype=np.int64) @ generator.astype(np.int64)) % 2


@dataclass(frozen=True)
class ErasureSolution:
    """Which erased positions a set of parity checks determines.

    ``coefficients[i]`` is a 0/1 row over all ``n`` positions, zero on the
    erased ones: the value of ``positions[i]`` is the GF(2) inner product of
    that row with the known values. ``checks`` holds rows that must evaluate
    to zero on a consistent word.
    """

    positions: np.ndarray
    coefficients: np.ndarray
    checks: np.ndarray


def solve_erasures(parity_check, erased: np.ndarray) -> ErasureSolution:
    """Gaussian elimination on the parity checks restricted to erased columns.

    Args:
        parity_check: ``m x n`` binary parity-check matrix
        erased: boolean mask of length ``n``

    Returns:
        ErasureSolution for this erasure pattern
    """
    h = as_dense(parity_check)
    m, n = h.shape
    erased = np.asarray(erased, dtype=bool)
    columns = np.flatnonzero(erased)
    e = columns.size
    if e == 0:
        return ErasureSolution(
            positions=np.zeros(0, dtype=np.int64),
            coefficients=np.zeros((0, n), dtype=np.uint8),
            checks=h.copy(),
        )
    augmented = np.concatenate([h[:, columns], np.eye(m, dtype=np.uint8)], axis=1)
    reduced, pivots = rref(augmented, pivot_columns=e)
    left = reduced[:, :e]
    transform = reduced[:, e:]
    pivot_set = set(pivots)
    free = [c for c in range(e) if c not in pivot_set]
    combined = (transform.astype(np.int64) @ h.astype(np.int64)) % 2
    combined[:, columns] = 0
    combined = combined.astype(np.uint8)

    positions = []
    coefficients = []
    for row, p in enumerate(pivots):
        if free and left[row, free].any():
            continue
        positions.append(columns[p])
        coefficients.append(combined[row])
    return ErasureSolution(
        positions=np.asarray(positions, dtype=np.int64),
        coefficients=(
            np.asarray(coefficients, dtype=np.uint8)
            if coefficients
            else np.zeros((0, n), dtype=np.uint8)
        ),
        checks=combined[len(pivots):],
    )
