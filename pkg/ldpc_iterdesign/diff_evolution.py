# -*- coding: utf-8 -*-
#
# Copyright (C) 2025 Cottage Labs.
#
# ldpc-iterdesign is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Differential evolution over rate-constrained degree-distribution pairs.

Each member is a vector of lambda entries over the allowed VN degrees
followed by rho entries over the allowed check types. Trial vectors are
built by rand/1 mutation and binomial crossover, then repaired to the
normalization and rate constraints by adjusting three designated entries.
A trial replaces its parent only if its iteration-constrained threshold is
strictly better.
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from joblib import Parallel, delayed

from . import config
from .component_codes import get_code
from .ensemble import CheckDistribution, CheckType, DegreeDistributionPair, VariableDistribution, stability_value
from .errors import (
    ConfigError,
    InfeasibleSupportError,
    RepairRejected,
    SingularRepair,
    UnsatisfiableBracketError,
    UnsupportedChannelError,
)
from .exit_engine import CHANNELS, CRITERIA, ThresholdQuery, iteration_constrained_threshold, threshold_score

logger = logging.getLogger(__name__)

_CLIP = 1e-12


@dataclass(frozen=True)
class DeConfig:
    """Settings of one optimization run."""

    rate: float
    vn_degrees: Tuple[int, ...]
    cn_codes: Tuple[str, ...]
    channel: str = "bec"
    i_max: int = 10
    xi: Optional[float] = None
    criterion: str = "extrinsic"
    population: int = config.ITERDESIGN_DE_POPULATION
    weight: float = config.ITERDESIGN_DE_F
    crossover: float = config.ITERDESIGN_DE_ETA
    generations: int = config.ITERDESIGN_DE_GENERATIONS
    stall_generations: int = config.ITERDESIGN_DE_STALL_GENERATIONS
    stall_improvement: float = config.ITERDESIGN_DE_STALL_IMPROVEMENT
    retry_cap: int = config.ITERDESIGN_DE_RETRY_CAP
    init_support: int = config.ITERDESIGN_DE_INIT_SUPPORT
    max_stability: Optional[float] = None
    seed: int = config.ITERDESIGN_SEED
    threads: int = config.ITERDESIGN_THREADS

    def __post_init__(self):
        """Validate the settings."""
        object.__setattr__(self, "vn_degrees", tuple(sorted({int(d) for d in self.vn_degrees})))
        object.__setattr__(self, "cn_codes", tuple(dict.fromkeys(self.cn_codes)))
        if self.population < 5:
            raise ConfigError(f"population {self.population} < 5 (mutation needs four distinct members)")
        if self.weight <= 0:
            raise ConfigError(f"mutation weight F={self.weight} must be > 0")
        if not 0.0 <= self.crossover <= 1.0:
            raise ConfigError(f"crossover rate {self.crossover} outside [0, 1]")
        if not 0.0 < self.rate < 1.0:
            raise ConfigError(f"target rate {self.rate} outside (0, 1)")
        if not self.vn_degrees or min(self.vn_degrees) < 2:
            raise ConfigError("VN degree support must be non-empty with degrees >= 2")
        if not self.cn_codes:
            raise ConfigError("CN type support must be non-empty")
        if self.channel not in CHANNELS:
            raise ConfigError(f"unknown channel {self.channel!r}")
        if self.criterion not in CRITERIA:
            raise ConfigError(f"unknown criterion {self.criterion!r}")
        if self.i_max < 1:
            raise ConfigError("i_max must be >= 1")
        if self.generations < 0:
            raise ConfigError("generations must be >= 0")
        codes = [get_code(c) for c in self.cn_codes]
        if self.channel == "awgn" and not all(c.is_spc for c in codes):
            raise UnsupportedChannelError("AWGN design supports SPC check nodes only")

    @property
    def dimension(self) -> int:
        """Length D of a design vector."""
        return len(self.vn_degrees) + len(self.cn_codes)

    def constraints(self) -> Tuple[np.ndarray, np.ndarray]:
        """Linear system ``A x = b``: sum(lambda) = 1, sum(rho) = 1, design rate = R."""
        degrees = np.asarray(self.vn_degrees, dtype=float)
        rates = np.array([get_code(c).rate for c in self.cn_codes])
        n_lambda = len(degrees)
        a = np.zeros((3, self.dimension))
        a[0, :n_lambda] = 1.0
        a[1, n_lambda:] = 1.0
        a[2, :n_lambda] = -(1.0 - self.rate) / degrees
        a[2, n_lambda:] = 1.0 - rates
        return a, np.array([1.0, 1.0, 0.0])


@dataclass(frozen=True)
class DesignVector:
    """A repaired member: lambda entries then rho entries."""

    values: np.ndarray
    vn_degrees: Tuple[int, ...]
    cn_codes: Tuple[str, ...]

    @property
    def lam(self) -> np.ndarray:
        """The lambda part."""
        return self.values[: len(self.vn_degrees)]

    @property
    def rho(self) -> np.ndarray:
        """The rho part."""
        return self.values[len(self.vn_degrees):]

    def to_ddp(self, name: Optional[str] = None) -> DegreeDistributionPair:
        """The degree-distribution pair this vector encodes."""
        lam = {d: float(f) for d, f in zip(self.vn_degrees, self.lam) if f > config.ITERDESIGN_PRUNE_BELOW}
        types = [
            CheckType(name=str(i + 1), code=get_code(c), fraction=float(f))
            for i, (c, f) in enumerate(zip(self.cn_codes, self.rho))
        ]
        return DegreeDistributionPair(
            lam=VariableDistribution(lam, tol=config.ITERDESIGN_DE_RATE_TOL),
            rho=CheckDistribution(types, tol=config.ITERDESIGN_DE_RATE_TOL),
            name=name,
        )


def mutant(x_r1: np.ndarray, x_r2: np.ndarray, x_r3: np.ndarray, weight: float) -> np.ndarray:
    """Mutant vector ``x_r1 + F (x_r2 - x_r3)``."""
    return np.asarray(x_r1, dtype=float) + weight * (np.asarray(x_r2, dtype=float) - np.asarray(x_r3, dtype=float))


def crossover(x: np.ndarray, v: np.ndarray, eta: float, rng: np.random.Generator) -> np.ndarray:
    """Binomial crossover; coordinate ``Y`` always comes from the mutant."""
    x = np.asarray(x, dtype=float)
    v = np.asarray(v, dtype=float)
    forced = rng.integers(x.size)
    take = rng.random(x.size) <= eta
    take[forced] = True
    return np.where(take, v, x)


def _designated(raw: np.ndarray, de: DeConfig) -> List[int]:
    n_lambda = len(de.vn_degrees)
    lam, rho = raw[:n_lambda], raw[n_lambda:]
    largest = int(np.argmax(lam))
    chosen = [largest, n_lambda + int(np.argmax(rho))]
    others = [i for i in range(n_lambda) if i != largest]
    if others:
        in_support = [i for i in others if lam[i] > 0]
        chosen.append(min(in_support) if in_support else min(others))
    elif len(rho) > 1:
        ranked = [n_lambda + int(i) for i in np.argsort(-rho, kind="stable")]
        chosen.append(next(i for i in ranked if i not in chosen))
    return chosen


def repair(raw, de: DeConfig) -> DesignVector:
    """Adjust three designated entries so that all constraints hold.

    The designated entries are the largest lambda, the largest rho and the
    smallest in-support lambda degree (the second-largest rho when only one
    VN degree is allowed).

    Raises:
        SingularRepair: the designated columns are linearly dependent
        RepairRejected: an entry leaves [0, 1] or the stability bound is exceeded
    """
    x = np.array(raw, dtype=float)
    a, b = de.constraints()
    idx = _designated(x, de)
    residual = b - a @ x
    sub = a[:, idx]
    if len(idx) == 3:
        if np.linalg.matrix_rank(sub) < 3:
            raise SingularRepair("repair system is singular")
        delta = np.linalg.solve(sub, residual)
    else:
        delta, *_ = np.linalg.lstsq(sub, residual, rcond=None)
    x[idx] += delta
    if np.abs(a @ x - b).max() > config.ITERDESIGN_DE_RATE_TOL:
        raise SingularRepair("constraints cannot be met with the designated entries")

    if (x < -_CLIP).any() or (x > 1.0 + _CLIP).any():
        raise RepairRejected("repaired vector leaves [0, 1]")
    x = np.clip(x, 0.0, 1.0)
    vector = DesignVector(values=x, vn_degrees=de.vn_degrees, cn_codes=de.cn_codes)
    if de.max_stability is not None:
        if stability_value(vector.to_ddp()) > de.max_stability:
            raise RepairRejected("stability bound exceeded")
    return vector


def member_rng(seed: int, generation: int, member: int) -> np.random.Generator:
    """Independent random stream per (generation, member)."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, generation, member])))


def _check_feasible(de: DeConfig):
    one_minus = 1.0 - np.array([get_code(c).rate for c in de.cn_codes])
    lo = (1.0 - de.rate) / max(de.vn_degrees)
    hi = (1.0 - de.rate) / min(de.vn_degrees)
    slack = config.ITERDESIGN_DE_RATE_TOL
    if one_minus.min() > hi + slack or one_minus.max() < lo - slack:
        raise InfeasibleSupportError(
            f"rate {de.rate} is not reachable with VN degrees {list(de.vn_degrees)} "
            f"and check codes {list(de.cn_codes)}"
        )


def _sample_face(de: DeConfig, rng: np.random.Generator) -> np.ndarray:
    """Uniform draw on a random face of both simplices."""
    n_lambda, n_rho = len(de.vn_degrees), len(de.cn_codes)
    x = np.zeros(de.dimension)
    lam_support = rng.choice(n_lambda, size=min(n_lambda, de.init_support), replace=False)
    rho_support = rng.choice(n_rho, size=min(n_rho, 2), replace=False)
    x[lam_support] = rng.dirichlet(np.ones(lam_support.size))
    x[n_lambda + rho_support] = rng.dirichlet(np.ones(rho_support.size))
    return x


def random_population(de: DeConfig) -> List[DesignVector]:
    """``N_p`` repaired vectors sampled on random faces of the simplices.

    Raises:
        InfeasibleSupportError: the supports cannot reach the target rate
    """
    _check_feasible(de)
    population = []
    for member in range(de.population):
        rng = member_rng(de.seed, 0, member)
        for _ in range(config.ITERDESIGN_DE_INIT_ATTEMPTS):
            try:
                population.append(repair(_sample_face(de, rng), de))
                break
            except RepairRejected:
                continue
        else:
            raise InfeasibleSupportError(
                f"no valid initial vector after {config.ITERDESIGN_DE_INIT_ATTEMPTS} attempts"
            )
    return population


def fitness(vector: DesignVector, de: DeConfig) -> float:
    """Threshold score of a vector (``-inf`` when the requirement is never met)."""
    query = ThresholdQuery(
        ddp=vector.to_ddp(), i_max=de.i_max, xi=de.xi, channel=de.channel, criterion=de.criterion
    )
    try:
        return threshold_score(iteration_constrained_threshold(query))
    except UnsatisfiableBracketError:
        return -np.inf


def _evaluate(vectors: Sequence[Optional[DesignVector]], de: DeConfig) -> List[float]:
    jobs = [(i, v) for i, v in enumerate(vectors) if v is not None]
    scores = Parallel(n_jobs=de.threads)(delayed(fitness)(v, de) for _, v in jobs)
    out = [-np.inf] * len(vectors)
    for (i, _), score in zip(jobs, scores):
        out[i] = score
    return out


def _trial(population: List[DesignVector], i: int, de: DeConfig, generation: int) -> Optional[DesignVector]:
    rng = member_rng(de.seed, generation, i)
    others = [j for j in range(len(population)) if j != i]
    for _ in range(de.retry_cap):
        r1, r2, r3 = rng.choice(others, size=3, replace=False)
        v = mutant(population[r1].values, population[r2].values, population[r3].values, de.weight)
        u = crossover(population[i].values, v, de.crossover, rng)
        try:
            return repair(u, de)
        except RepairRejected:
            continue
    logger.debug("generation %d member %d: retry cap reached, member kept", generation, i)
    return None


@dataclass
class DeResult:
    """Outcome of an optimization run."""

    best: DesignVector
    score: float
    channel: str
    history: List[float] = field(default_factory=list)
    generations: int = 0

    @property
    def threshold(self) -> float:
        """Best threshold (epsilon, or Eb/N0 in dB)."""
        return self.score if self.channel == "bec" else -self.score

    @property
    def ddp(self) -> DegreeDistributionPair:
        """Best degree-distribution pair."""
        return self.best.to_ddp()


ProgressSink = Callable[[int, float], None]


def evolve(de: DeConfig, progress: Optional[ProgressSink] = None) -> DeResult:
    """Run the generational loop and return the best member.

    Args:
        de: optimization settings
        progress: called with (generation, best threshold) after each generation

    Returns:
        DeResult with the best vector and the best threshold per generation
    """
    population = random_population(de)
    scores = _evaluate(population, de)
    best = int(np.argmax(scores))
    history = [scores[best]]
    reference = scores[best]
    stalled = 0
    generation = 0

    def report(g, score):
        value = score if de.channel == "bec" else -score
        logger.info("generation %d: best threshold %.6f", g, value)
        if progress:
            progress(g, value)

    report(0, scores[best])
    for generation in range(1, de.generations + 1):
        trials = [_trial(population, i, de, generation) for i in range(de.population)]
        trial_scores = _evaluate(trials, de)
        for i, (trial, score) in enumerate(zip(trials, trial_scores)):
            if trial is not None and score > scores[i]:
                population[i] = trial
                scores[i] = score
        best = int(np.argmax(scores))
        history.append(scores[best])
        report(generation, scores[best])

        if scores[best] - reference >= de.stall_improvement:
            reference = scores[best]
            stalled = 0
        else:
            stalled += 1
            if stalled >= de.stall_generations:
                logger.info("stopping after %d generations without improvement", stalled)
                break

    return DeResult(
        best=population[best],
        score=float(scores[best]),
        channel=de.channel,
        history=[float(s) for s in history],
        generations=generation,
    )
