# -*- coding: utf-8 -*-
#
# Copyright (C) 2025 Cottage Labs.
#
# ldpc-iterdesign is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""(G)LDPC ensembles as edge-perspective degree-distribution pairs."""

import json
import logging
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from . import config
from .component_codes import ComponentCode, get_code
from .errors import InvalidDistributionError, UnrealizableError, WrongVariantError

logger = logging.getLogger(__name__)

PUBLISHED_PREFIX = "published:"


def _check_fractions(label: str, fractions: Sequence[float], tol: float):
    for f in fractions:
        if not np.isfinite(f) or f < 0.0 or f > 1.0:
            raise InvalidDistributionError(f"{label} fraction {f!r} outside [0, 1]")
    total = float(sum(fractions))
    if abs(total - 1.0) > tol:
        raise InvalidDistributionError(
            f"sum({label}) = {total:.12g} violates normalization (must be 1 within {tol:g})"
        )


@dataclass(frozen=True)
class VariableDistribution:
    """Edge-perspective variable-node degree distribution lambda."""

    entries: Tuple[Tuple[int, float], ...]

    def __init__(self, entries: Union[Mapping[int, float], Sequence[Tuple[int, float]]],
                 tol: float = config.ITERDESIGN_NORMALIZATION_TOL):
        """Validate and store the distribution.

        Args:
            entries: mapping from degree (>= 2) to edge fraction
            tol: normalization tolerance
        """
        items = dict(entries).items() if not isinstance(entries, dict) else entries.items()
        cleaned = []
        for degree, fraction in items:
            degree, fraction = int(degree), float(fraction)
            if degree < 2:
                raise InvalidDistributionError(f"variable-node degree {degree} < 2")
            if abs(fraction) < config.ITERDESIGN_PRUNE_BELOW:
                continue
            cleaned.append((degree, fraction))
        if not cleaned:
            raise InvalidDistributionError("lambda has no entries")
        _check_fractions("lambda", [f for _, f in cleaned], tol)
        object.__setattr__(self, "entries", tuple(sorted(cleaned)))

    @property
    def degrees(self) -> np.ndarray:
        """Degrees in increasing order."""
        return np.array([d for d, _ in self.entries], dtype=np.int64)

    @property
    def fractions(self) -> np.ndarray:
        """Edge fractions aligned with ``degrees``."""
        return np.array([f for _, f in self.entries], dtype=float)

    @property
    def integral(self) -> float:
        """Integral of lambda over [0, 1], i.e. sum of lambda_d / d."""
        return float(np.sum(self.fractions / self.degrees))

    @property
    def node_fractions(self) -> np.ndarray:
        """Node-perspective fractions L_d aligned with ``degrees``."""
        weights = self.fractions / self.degrees
        return weights / weights.sum()

    def fraction(self, degree: int) -> float:
        """Edge fraction of one degree (zero when absent)."""
        return dict(self.entries).get(degree, 0.0)

    def as_dict(self) -> Dict[int, float]:
        """Mapping from degree to fraction."""
        return dict(self.entries)


@dataclass(frozen=True)
class CheckType:
    """One check-node type: an edge fraction and a component code."""

    name: str
    code: ComponentCode
    fraction: float


@dataclass(frozen=True)
class CheckDistribution:
    """Edge-perspective check-node type mixture rho."""

    types: Tuple[CheckType, ...]

    def __init__(self, types: Sequence[Union[CheckType, Tuple[str, float]]],
                 tol: float = config.ITERDESIGN_NORMALIZATION_TOL):
        """Validate and store the mixture.

        Args:
            types: CheckType instances or ``(code identifier, fraction)`` pairs
            tol: normalization tolerance
        """
        cleaned = []
        for i, item in enumerate(types):
            if not isinstance(item, CheckType):
                identifier, fraction = item
                item = CheckType(name=str(i + 1), code=get_code(identifier), fraction=float(fraction))
            if item.code.length < 3:
                raise InvalidDistributionError(f"check type {item.name}: code length < 3")
            if abs(item.fraction) < config.ITERDESIGN_PRUNE_BELOW:
                continue
            cleaned.append(item)
        if not cleaned:
            raise InvalidDistributionError("rho has no entries")
        _check_fractions("rho", [t.fraction for t in cleaned], tol)
        object.__setattr__(self, "types", tuple(cleaned))

    @property
    def fractions(self) -> np.ndarray:
        """Edge fractions rho_t."""
        return np.array([t.fraction for t in self.types], dtype=float)

    @property
    def lengths(self) -> np.ndarray:
        """Component-code lengths s_t."""
        return np.array([t.code.length for t in self.types], dtype=np.int64)

    @property
    def rates(self) -> np.ndarray:
        """Component-code rates R_t."""
        return np.array([t.code.rate for t in self.types], dtype=float)

    @property
    def spc_only(self) -> bool:
        """Whether every check node is a single parity check."""
        return all(t.code.is_spc for t in self.types)


@dataclass(frozen=True)
class DegreeDistributionPair:
    """A degree-distribution pair (lambda, rho)."""

    lam: VariableDistribution
    rho: CheckDistribution
    name: Optional[str] = field(default=None, compare=False)
    published: Mapping = field(default_factory=dict, compare=False, hash=False)

    @classmethod
    def create(cls, lam: Mapping[int, float], rho: Sequence[Tuple[str, float]],
               name: Optional[str] = None, tol: float = config.ITERDESIGN_NORMALIZATION_TOL):
        """Build a pair from plain mappings.

        Args:
            lam: degree -> edge fraction
            rho: sequence of (code identifier, edge fraction)
            name: optional label
            tol: normalization tolerance
        """
        return cls(
            lam=VariableDistribution(lam, tol=tol),
            rho=CheckDistribution(list(rho), tol=tol),
            name=name,
        )

    def __str__(self):
        """Compact polynomial-style rendering."""
        lam = " + ".join(f"{f:.6f} x^{d - 1}" for d, f in self.lam.entries)
        rho = " + ".join(f"{t.fraction:.6f} [{t.code.identifier}]" for t in self.rho.types)
        return f"lambda(x) = {lam}; rho = {rho}"


def design_rate(ddp: DegreeDistributionPair) -> float:
    """Design rate 1 - sum_t rho_t (1 - R_t) / sum_d lambda_d / d."""
    rho = ddp.rho
    return 1.0 - float(np.sum(rho.fractions * (1.0 - rho.rates))) / ddp.lam.integral


def edge_count(ddp: DegreeDistributionPair, block_length: int) -> int:
    """Number of Tanner-graph edges E = round(N / integral(lambda))."""
    if block_length < 1:
        raise ValueError("block length must be >= 1")
    return int(round(block_length / ddp.lam.integral))


def check_node_counts(ddp: DegreeDistributionPair, edges: int) -> Dict[str, float]:
    """Real-valued check-node count per type, E * rho_t / s_t."""
    return {t.name: edges * t.fraction / t.code.length for t in ddp.rho.types}


@dataclass(frozen=True)
class NodeCounts:
    """An integer realization of an ensemble at finite length."""

    vn_counts: Dict[int, int]
    cn_counts: List[Tuple[CheckType, int]]
    edges: int
    requested_length: int
    slack: float

    @property
    def length(self) -> int:
        """Realized number of variable nodes."""
        return sum(self.vn_counts.values())

    @property
    def check_count(self) -> int:
        """Total number of check nodes."""
        return sum(c for _, c in self.cn_counts)

    @property
    def constraint_count(self) -> int:
        """Number of binary parity checks after expansion."""
        return sum(c * (t.code.length - t.code.dimension) for t, c in self.cn_counts)

    @property
    def rate(self) -> float:
        """Realized design rate."""
        return 1.0 - self.constraint_count / self.length


def _candidate_shifts(bound: int):
    yield 0
    for k in range(1, bound + 1):
        yield k
        yield -k


def node_counts(ddp: DegreeDistributionPair, block_length: int) -> NodeCounts:
    """Integer node counts realizing ``ddp`` near ``block_length``.

    Check-node counts are rounded from ``E rho_t / s_t`` (at least one per
    present type). The count of the largest-fraction check type is then moved
    by 0, +-1, +-2, ... and, for each candidate edge total (closest to the
    nominal one first), all variable-node counts except the largest-fraction
    degree are rounded; that degree absorbs the residue, which must divide.

    Raises:
        UnrealizableError: no candidate within the search bound works
    """
    lam, rho = ddp.lam, ddp.rho
    nominal = block_length / lam.integral
    base = [max(1, int(round(nominal * t.fraction / t.code.length))) for t in rho.types]
    pivot_type = int(np.argmax(rho.fractions))
    pivot_degree = int(lam.degrees[np.argmax(lam.fractions)])
    bound = max(50, base[pivot_type])

    candidates = []
    for k in _candidate_shifts(bound):
        counts = list(base)
        counts[pivot_type] += k
        if counts[pivot_type] < 1:
            continue
        edges = sum(c * t.code.length for c, t in zip(counts, rho.types))
        candidates.append((abs(edges - nominal), abs(k), -k, edges, counts))
    candidates.sort(key=lambda c: c[:3])

    for _, _, _, edges, counts in candidates:
        vn_counts = {}
        residue = edges
        for d, f in lam.entries:
            if d == pivot_degree:
                continue
            n = int(round(edges * f / d))
            vn_counts[d] = n
            residue -= n * d
        if residue <= 0 or residue % pivot_degree:
            continue
        vn_counts[pivot_degree] = residue // pivot_degree
        vn_counts = {d: n for d, n in sorted(vn_counts.items()) if n > 0}
        slack = max(lam.integral / 2.0, abs(edges * lam.integral - block_length))
        realized = NodeCounts(
            vn_counts=vn_counts,
            cn_counts=[(t, c) for t, c in zip(rho.types, counts)],
            edges=edges,
            requested_length=block_length,
            slack=slack,
        )
        logger.debug(
            "realized N=%d (requested %d) with E=%d and %d check nodes",
            realized.length, block_length, edges, realized.check_count,
        )
        return realized
    raise UnrealizableError(f"no integer realization of {ddp.name or 'ensemble'} near N={block_length}")


def stability_product(ddp: DegreeDistributionPair) -> float:
    """lambda'(0) rho'(1) = lambda_2 sum_t rho_t (s_t - 1) for SPC-only ensembles."""
    if not ddp.rho.spc_only:
        raise WrongVariantError("stability_product needs SPC check nodes only; use weight2_functional")
    rho = ddp.rho
    return ddp.lam.fraction(2) * float(np.sum(rho.fractions * (rho.lengths - 1)))


def weight2_functional(ddp: DegreeDistributionPair) -> float:
    """lambda'(0) C with C = 2 sum over distance-2 types of rho_t A_2 / s_t."""
    c = sum(
        2.0 * t.fraction * t.code.weight2_count / t.code.length
        for t in ddp.rho.types
        if t.code.min_distance == 2
    )
    return ddp.lam.fraction(2) * c


def stability_value(ddp: DegreeDistributionPair) -> float:
    """The initial-slope functional appropriate for the ensemble."""
    if ddp.rho.spc_only:
        return stability_product(ddp)
    return weight2_functional(ddp)


def truncate_degrees(ddp: DegreeDistributionPair, max_degree: int) -> DegreeDistributionPair:
    """Fold the lambda mass of degrees above ``max_degree`` onto ``max_degree``."""
    folded: Dict[int, float] = {}
    for d, f in ddp.lam.entries:
        key = min(d, max_degree)
        folded[key] = folded.get(key, 0.0) + f
    return DegreeDistributionPair(
        lam=VariableDistribution(folded),
        rho=ddp.rho,
        name=f"{ddp.name}-dmax{max_degree}" if ddp.name else None,
    )


def load_ddp(source: Union[str, Path]) -> DegreeDistributionPair:
    """Load a DDP from a JSON file path or a ``published:<name>`` reference."""
    from .services.schemas import load_ddp_document

    text = str(source)
    if text.startswith(PUBLISHED_PREFIX):
        return load_published(text[len(PUBLISHED_PREFIX):])
    try:
        document = json.loads(Path(text).read_text(encoding="utf-8"))
    except OSError as e:
        raise InvalidDistributionError(f"cannot read {text}: {e}") from e
    except json.JSONDecodeError as e:
        raise InvalidDistributionError(f"{text} is not valid JSON: {e}") from e
    return load_ddp_document(document)


def dump_ddp(ddp: DegreeDistributionPair) -> Dict:
    """JSON-ready document for a DDP."""
    from .services.schemas import DegreeDistributionSchema

    return DegreeDistributionSchema().dump(ddp)


def available_ensembles() -> List[str]:
    """Names of the bundled published ensembles."""
    folder = resources.files("ldpc_iterdesign.ensembles")
    return sorted(p.name[:-5] for p in folder.iterdir() if p.name.endswith(".json"))


def load_published(name: str) -> DegreeDistributionPair:
    """Load one of the bundled published ensembles by name."""
    from .services.schemas import load_ddp_document

    if name not in available_ensembles():
        raise InvalidDistributionError(
            f"unknown published ensemble {name!r} (available: {', '.join(available_ensembles())})"
        )
    path = resources.files("ldpc_iterdesign.ensembles") / f"{name}.json"
    return load_ddp_document(json.loads(path.read_text(encoding="utf-8")))
