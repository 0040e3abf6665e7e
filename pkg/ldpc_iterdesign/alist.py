# -*- coding: utf-8 -*-
#
# Copyright (C) 2025 Cottage Labs.
#
# ldpc-iterdesign is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Reading and writing parity-check matrices in alist format.

Layout: ``N M``; max column and row weights; the N column weights; the M
row weights; N lines of 1-based row indices per column; M lines of 1-based
column indices per row. Index lines are zero-padded to the maximum weight.
"""

import io
from pathlib import Path
from typing import List, TextIO, Union

import numpy as np
from scipy import sparse

from .errors import ConfigError


def format_alist(matrix) -> str:
    """Render a binary matrix as alist text."""
    h = sparse.csc_matrix(matrix, dtype=np.uint8)
    h.eliminate_zeros()
    m, n = h.shape
    columns = [np.sort(h.indices[h.indptr[j]:h.indptr[j + 1]]) for j in range(n)]
    hr = h.tocsr()
    rows = [np.sort(hr.indices[hr.indptr[i]:hr.indptr[i + 1]]) for i in range(m)]
    max_col = max((c.size for c in columns), default=0)
    max_row = max((r.size for r in rows), default=0)

    def padded(indices, width):
        values = [str(int(i) + 1) for i in indices] + ["0"] * (width - indices.size)
        return " ".join(values)

    out = io.StringIO()
    out.write(f"{n} {m}\n")
    out.write(f"{max_col} {max_row}\n")
    out.write(" ".join(str(c.size) for c in columns) + "\n")
    out.write(" ".join(str(r.size) for r in rows) + "\n")
    for c in columns:
        out.write(padded(c, max_col) + "\n")
    for r in rows:
        out.write(padded(r, max_row) + "\n")
    return out.getvalue()


def write_alist(matrix, target: Union[str, Path, TextIO]) -> None:
    """Write a binary matrix to a path or an open text stream."""
    text = format_alist(matrix)
    if hasattr(target, "write"):
        target.write(text)
    else:
        Path(target).write_text(text, encoding="utf-8")


def _numbers(text: str) -> List[List[int]]:
    lines = []
    for line in text.splitlines():
        try:
            values = [int(word) for word in line.split()]
        except ValueError as e:
            raise ConfigError(f"alist: non-integer entry in line {line!r}") from e
        if values:
            lines.append(values)
    return lines


def parse_alist(text: str) -> sparse.csr_matrix:
    """Parse alist text into a sparse binary matrix.

    The row lists are checked against the column lists.

    Raises:
        ConfigError: malformed or inconsistent input
    """
    lines = _numbers(text)
    if len(lines) < 4:
        raise ConfigError("alist: missing header lines")
    n, m = lines[0][:2]
    col_weights, row_weights = lines[2], lines[3]
    if len(col_weights) != n or len(row_weights) != m or len(lines) < 4 + n + m:
        raise ConfigError("alist: header does not match the number of index lines")

    entries = set()
    for j, (weight, line) in enumerate(zip(col_weights, lines[4:4 + n])):
        indices = [i for i in line if i != 0]
        if len(indices) != weight:
            raise ConfigError(f"alist: column {j + 1} lists {len(indices)} entries, expected {weight}")
        entries.update((i - 1, j) for i in indices)
    from_rows = set()
    for i, (weight, line) in enumerate(zip(row_weights, lines[4 + n:4 + n + m])):
        indices = [j for j in line if j != 0]
        if len(indices) != weight:
            raise ConfigError(f"alist: row {i + 1} lists {len(indices)} entries, expected {weight}")
        from_rows.update((i, j - 1) for j in indices)
    if entries != from_rows:
        raise ConfigError("alist: row lists disagree with column lists")
    if any(not (0 <= i < m and 0 <= j < n) for i, j in entries):
        raise ConfigError("alist: index out of range")

    rows, cols = zip(*sorted(entries)) if entries else ((), ())
    return sparse.csr_matrix(
        (np.ones(len(rows), dtype=np.uint8), (rows, cols)), shape=(m, n), dtype=np.uint8
    )


def read_alist(source: Union[str, Path, TextIO]) -> sparse.csr_matrix:
    """Read an alist file from a path or an open text stream."""
    if hasattr(source, "read"):
        return parse_alist(source.read())
    try:
        return parse_alist(Path(source).read_text(encoding="utf-8"))
    except OSError as e:
        raise ConfigError(f"cannot read {source}: {e}") from e
