# -*- coding: utf-8 -*-
#
# Copyright (C) 2025 Cottage Labs.
#
# ldpc-iterdesign is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Output files with provenance headers, written atomically."""

import csv
import hashlib
import io
import json
import os
import tempfile
from pathlib import Path
from typing import Iterable, Mapping, Optional, Sequence, Union

PathLike = Union[str, Path]

# parameters that do not change results
_VOLATILE = ("output_dir", "threads", "out", "report", "chart", "verbose")


def canonical_json(data) -> bytes:
    """Sorted-key, whitespace-free JSON encoding."""
    return json.dumps(data, sort_keys=True, separators=(",", ":"), default=str).encode("utf-8")


def config_digest(params: Mapping) -> str:
    """SHA-256 of the canonical JSON of the effective parameters."""
    relevant = {k: v for k, v in params.items() if k not in _VOLATILE}
    return hashlib.sha256(canonical_json(relevant)).hexdigest()


def resolve(path: PathLike, output_dir: Optional[PathLike] = None) -> Path:
    """Place relative paths under the output directory."""
    path = Path(path)
    if output_dir is not None and not path.is_absolute():
        path = Path(output_dir) / path
    return path


def atomic_write(path: PathLike, data: Union[str, bytes]) -> Path:
    """Write to a temporary file next to ``path`` and rename it into place."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    payload = data.encode("utf-8") if isinstance(data, str) else data
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as handle:
            handle.write(payload)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def provenance_lines(seed: Optional[int], digest: str) -> Sequence[str]:
    """Comment lines heading every CSV output."""
    from . import __version__

    return (
        f"# ldpc-iterdesign {__version__}",
        f"# seed: {'none' if seed is None else seed}",
        f"# config-digest: {digest}",
    )


def write_csv(path: PathLike, header: Sequence[str], rows: Iterable[Sequence], seed: Optional[int],
              digest: str) -> Path:
    """Write a CSV file with provenance comment lines and a header row."""
    buffer = io.StringIO()
    for line in provenance_lines(seed, digest):
        buffer.write(line + "\n")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(row)
    return atomic_write(path, buffer.getvalue())


def write_json(path: PathLike, document) -> Path:
    """Write an indented JSON document."""
    return atomic_write(path, json.dumps(document, indent=2, sort_keys=False) + "\n")


def read_csv_body(path: PathLike):
    """Rows of a CSV written by ``write_csv`` without the comment lines."""
    with open(path, newline="", encoding="utf-8") as handle:
        return list(csv.reader(line for line in handle if not line.startswith("#")))
