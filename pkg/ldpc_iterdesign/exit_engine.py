# -*- coding: utf-8 -*-
#
# Copyright (C) 2025 Cottage Labs.
#
# ldpc-iterdesign is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""EXIT analysis with a finite iteration budget.

Channels are the binary erasure channel (exact erasure evolution) and the
binary-input AWGN channel (consistent-Gaussian approximation through the
``J`` function). A threshold here is the worst channel parameter for which
the decoder's output information exceeds ``xi`` after ``i_max`` iterations.
"""

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import List, Optional, Tuple, Union

import numpy as np
from scipy import integrate

from . import config
from .component_codes import ComponentCode, bec_exit_function
from .ensemble import DegreeDistributionPair, design_rate
from .errors import ConfigError, ConvergenceError, UnsatisfiableBracketError, UnsupportedChannelError

logger = logging.getLogger(__name__)

CRITERIA = ("extrinsic", "a-posteriori")
CHANNELS = ("bec", "awgn")

_Z_LIMIT = 38.0
_LN2 = np.log(2.0)


@dataclass(frozen=True)
class BecChannel:
    """Binary erasure channel with erasure probability ``epsilon``."""

    epsilon: float
    kind: str = field(default="bec", init=False)

    def __post_init__(self):
        """Validate the erasure probability."""
        if not 0.0 <= self.epsilon <= 1.0:
            raise ConfigError(f"erasure probability {self.epsilon} outside [0, 1]")

    @property
    def parameter(self) -> float:
        """The channel parameter as reported to users."""
        return self.epsilon


@dataclass(frozen=True)
class AwgnChannel:
    """BPSK over AWGN at ``eb_n0_db`` for a code of rate ``code_rate``."""

    eb_n0_db: float
    code_rate: float
    kind: str = field(default="awgn", init=False)

    def __post_init__(self):
        """Validate the code rate."""
        if not 0.0 < self.code_rate < 1.0:
            raise ConfigError(f"code rate {self.code_rate} outside (0, 1)")

    @property
    def parameter(self) -> float:
        """The channel parameter as reported to users."""
        return self.eb_n0_db

    @property
    def sigma_ch(self) -> float:
        """Standard deviation of the channel LLRs, sqrt(8 R Eb/N0)."""
        return float(np.sqrt(8.0 * self.code_rate * 10.0 ** (self.eb_n0_db / 10.0)))

    @property
    def noise_std(self) -> float:
        """Noise standard deviation for unit-energy BPSK symbols."""
        return float(np.sqrt(1.0 / (2.0 * self.code_rate * 10.0 ** (self.eb_n0_db / 10.0))))


ChannelParameter = Union[BecChannel, AwgnChannel]


def default_xi(kind: str) -> float:
    """Default success level for a channel kind."""
    return config.ITERDESIGN_XI_BEC if kind == "bec" else config.ITERDESIGN_XI_AWGN


def effective_iterations(i_max: Optional[int]) -> int:
    """Map ``None`` or 0 ("unlimited") to the configured iteration cap."""
    if not i_max:
        return config.ITERDESIGN_UNLIMITED_ITERATIONS
    return int(i_max)


#
# J function
#
def _j_integrand(z, sigma):
    llr = 0.5 * sigma * sigma + sigma * z
    return np.exp(-0.5 * z * z) / np.sqrt(2.0 * np.pi) * np.logaddexp(0.0, -llr) / _LN2


def j_function(sigma: float) -> float:
    """Mutual information between a bit and a consistent Gaussian LLR.

    The LLR has mean ``sigma^2 / 2`` and variance ``sigma^2``; the expectation
    is evaluated by adaptive quadrature.
    """
    if sigma < 0:
        raise ValueError(f"J is defined for sigma >= 0, got {sigma}")
    if sigma == 0:
        return 0.0
    # the integrand has its knee where the LLR changes sign
    knee = min(max(-0.5 * sigma, -_Z_LIMIT), _Z_LIMIT)
    left, _ = integrate.quad(_j_integrand, -_Z_LIMIT, knee, args=(sigma,), epsabs=0.0, epsrel=1e-12, limit=200)
    right, _ = integrate.quad(_j_integrand, knee, _Z_LIMIT, args=(sigma,), epsabs=0.0, epsrel=1e-12, limit=200)
    return float(min(max(1.0 - left - right, 0.0), 1.0))


def j_inverse(i: float) -> float:
    """Inverse of ``j_function`` by bisection to 1e-10."""
    if not 0.0 <= i < 1.0:
        raise ValueError(f"J^-1 is defined on [0, 1), got {i}")
    if i == 0:
        return 0.0
    lo, hi = 0.0, 1.0
    while j_function(hi) < i:
        lo, hi = hi, 2.0 * hi
    while hi - lo > 1e-10:
        mid = 0.5 * (lo + hi)
        if j_function(mid) < i:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def j_function_approx(sigma):
    """Piecewise curve fit of ``J`` (breakpoint at sigma = 1.6363)."""
    sigma = np.asarray(sigma, dtype=float)
    low = -0.0421061 * sigma**3 + 0.209252 * sigma**2 - 0.00640081 * sigma
    high = 1.0 - np.exp(0.00181491 * sigma**3 - 0.142675 * sigma**2 - 0.0822054 * sigma + 0.0549608)
    return np.where(sigma <= 1.6363, low, np.where(sigma < 10.0, high, 1.0))


@lru_cache(maxsize=1)
def _j_table() -> Tuple[np.ndarray, np.ndarray]:
    """Tabulated J on a uniform sigma grid, truncated where it saturates."""
    sigmas = np.linspace(0.0, config.ITERDESIGN_J_TABLE_SIGMA_MAX, config.ITERDESIGN_J_TABLE_POINTS)
    integral, _ = integrate.quad_vec(
        lambda z: _j_integrand(z, sigmas), -_Z_LIMIT, _Z_LIMIT, epsabs=1e-14, epsrel=1e-10
    )
    values = np.clip(1.0 - integral, 0.0, 1.0)
    values[0] = 0.0
    rising = np.flatnonzero(np.diff(values) <= 0)
    stop = rising[0] + 1 if rising.size else values.size
    logger.debug("J table with %d points up to sigma=%.3f", stop, sigmas[stop - 1])
    return sigmas[:stop], values[:stop]


def j_fast(sigma):
    """Table-interpolated ``J`` for arrays."""
    sigmas, values = _j_table()
    return np.interp(sigma, sigmas, values, right=1.0)


def j_inverse_fast(i):
    """Table-interpolated ``J^-1`` for arrays."""
    sigmas, values = _j_table()
    return np.interp(i, values, sigmas)


#
# Node EXIT functions
#
def vn_exit(degree: int, channel: ChannelParameter, i_a, exact: bool = False):
    """Extrinsic information of a degree-``degree`` variable node.

    Args:
        degree: variable-node degree (>= 2)
        channel: BecChannel or AwgnChannel
        i_a: a-priori information, scalar or array in [0, 1]
        exact: use quadrature for ``J`` instead of the interpolation table
    """
    i_a = np.clip(np.asarray(i_a, dtype=float), 0.0, 1.0)
    if channel.kind == "bec":
        return 1.0 - channel.epsilon * (1.0 - i_a) ** (degree - 1)
    return _awgn_node(degree - 1, channel.sigma_ch, i_a, exact)


def _awgn_node(edges: int, sigma_ch: float, i_a, exact: bool):
    saturated = i_a >= 1.0
    safe = np.where(saturated, 0.0, i_a)
    if exact:
        inverse = np.vectorize(j_inverse)(safe)
        out = np.vectorize(j_function)(np.sqrt(edges * inverse**2 + sigma_ch**2))
    else:
        out = j_fast(np.sqrt(edges * j_inverse_fast(safe) ** 2 + sigma_ch**2))
    return np.where(saturated, 1.0, out)


def _awgn_spc(length: int, i_a, exact: bool):
    i_a = np.clip(np.asarray(i_a, dtype=float), 0.0, 1.0)
    dead = i_a <= 0.0
    dual = np.where(dead, 0.5, 1.0 - i_a)
    if exact:
        out = 1.0 - np.vectorize(j_function)(np.sqrt(length - 1) * np.vectorize(j_inverse)(dual))
    else:
        out = 1.0 - j_fast(np.sqrt(length - 1) * j_inverse_fast(dual))
    return np.where(dead, 0.0, out)


@lru_cache(maxsize=256)
def _awgn_spc_grid(length: int) -> np.ndarray:
    grid = np.linspace(0.0, 1.0, 2**config.ITERDESIGN_EXIT_GRID_BITS + 1)
    return _awgn_spc(length, grid, exact=False)


def cn_exit(code: ComponentCode, kind: str, i_a, exact: bool = False):
    """Extrinsic information of a check node.

    On the BEC this is the exact MAP erasure EXIT function of the component
    code. On AWGN only SPC check nodes are supported (duality
    approximation); outside exact mode the curve is interpolated from a
    memoized grid of spacing 2^-12.

    Raises:
        UnsupportedChannelError: generalized check node on AWGN
    """
    if kind == "bec":
        return bec_exit_function(code, i_a)
    if not code.is_spc:
        raise UnsupportedChannelError(
            f"AWGN EXIT analysis supports SPC check nodes only, not {code.identifier}"
        )
    if exact:
        return _awgn_spc(code.length, i_a, exact=True)
    grid = np.linspace(0.0, 1.0, 2**config.ITERDESIGN_EXIT_GRID_BITS + 1)
    return np.interp(np.clip(i_a, 0.0, 1.0), grid, _awgn_spc_grid(code.length))


class ExitModel:
    """Mixture EXIT curves of an ensemble on one channel."""

    def __init__(self, ddp: DegreeDistributionPair, channel: ChannelParameter, exact: bool = False):
        """Bind an ensemble to a channel.

        Raises:
            UnsupportedChannelError: generalized check nodes on AWGN
        """
        self.ddp = ddp
        self.channel = channel
        self.exact = exact
        self._degrees = ddp.lam.degrees
        self._lam = ddp.lam.fractions
        self._node_fractions = ddp.lam.node_fractions
        self._rho = ddp.rho.fractions
        self._codes = [t.code for t in ddp.rho.types]
        if channel.kind == "awgn" and not ddp.rho.spc_only:
            raise UnsupportedChannelError("AWGN EXIT analysis supports SPC check nodes only")

    def vn(self, i_a):
        """Edge-averaged VN extrinsic information."""
        i_a = np.asarray(i_a, dtype=float)
        if self.channel.kind == "bec":
            erased = np.power.outer(1.0 - np.clip(i_a, 0.0, 1.0), self._degrees - 1)
            return 1.0 - self.channel.epsilon * (erased @ self._lam)
        curves = [vn_exit(int(d), self.channel, i_a, self.exact) for d in self._degrees]
        return np.tensordot(self._lam, np.asarray(curves), axes=1)

    def cn(self, i_a):
        """Edge-averaged CN extrinsic information."""
        curves = [cn_exit(code, self.channel.kind, i_a, self.exact) for code in self._codes]
        return np.tensordot(self._rho, np.asarray(curves), axes=1)

    def a_posteriori(self, i_a):
        """Node-averaged VN a-posteriori information (all edges plus channel)."""
        i_a = np.asarray(i_a, dtype=float)
        if self.channel.kind == "bec":
            erased = np.power.outer(1.0 - np.clip(i_a, 0.0, 1.0), self._degrees)
            return 1.0 - self.channel.epsilon * (erased @ self._node_fractions)
        curves = [_awgn_node(int(d), self.channel.sigma_ch, np.clip(i_a, 0.0, 1.0), self.exact)
                  for d in self._degrees]
        return np.tensordot(self._node_fractions, np.asarray(curves), axes=1)


@dataclass
class ExitTrajectory:
    """Iteration-by-iteration EXIT values.

    ``records[l]`` holds ``(i_av, i_ev, i_ac, i_ec)`` of iteration ``l + 1``.
    ``initial_extrinsic`` is the channel-only VN output that starts the
    decoder.
    """

    records: np.ndarray
    i_max: int
    initial_extrinsic: float
    final_a_posteriori: float
    xi: float
    criterion: str = "extrinsic"

    @property
    def final_extrinsic(self) -> float:
        """VN extrinsic information after the last iteration."""
        return float(self.records[-1, 1]) if len(self.records) else self.initial_extrinsic

    @property
    def achieved(self) -> Optional[bool]:
        """Whether the success criterion holds (undefined without iterations)."""
        if self.i_max == 0:
            return None
        value = self.final_a_posteriori if self.criterion == "a-posteriori" else self.final_extrinsic
        return bool(value >= self.xi)

    def rows(self) -> List[Tuple]:
        """CSV rows (iter, i_av, i_ev, i_ac, i_ec)."""
        return [(l + 1, *map(float, r)) for l, r in enumerate(self.records)]


def run_trajectory(ddp: DegreeDistributionPair, channel: ChannelParameter, i_max: int,
                   xi: Optional[float] = None, criterion: str = "extrinsic",
                   exact: bool = False, model: Optional[ExitModel] = None) -> ExitTrajectory:
    """Follow the decoding path for exactly ``i_max`` iterations.

    The decoder starts with the channel-only VN pass; each iteration is one
    CN update followed by one VN update. Intersections of the curves do not
    stop the recursion.
    """
    if criterion not in CRITERIA:
        raise ConfigError(f"unknown criterion {criterion!r} (use one of {', '.join(CRITERIA)})")
    model = model or ExitModel(ddp, channel, exact=exact)
    xi = default_xi(channel.kind) if xi is None else xi
    records = np.zeros((i_max, 4))
    i_ev = float(model.vn(0.0))
    initial = i_ev
    i_av = 0.0
    for l in range(i_max):
        i_ac = i_ev
        i_ec = float(model.cn(i_ac))
        i_av = i_ec
        i_ev = float(model.vn(i_av))
        records[l] = (i_av, i_ev, i_ac, i_ec)
        if l and np.array_equal(records[l], records[l - 1]):
            # fixed point reached; the remaining iterations repeat it
            records[l + 1:] = records[l]
            break
    return ExitTrajectory(
        records=records,
        i_max=i_max,
        initial_extrinsic=initial,
        final_a_posteriori=float(model.a_posteriori(i_av)),
        xi=xi,
        criterion=criterion,
    )


@dataclass(frozen=True)
class ThresholdQuery:
    """An iteration-constrained threshold question."""

    ddp: DegreeDistributionPair
    i_max: int
    xi: Optional[float] = None
    tolerance: Optional[float] = None
    channel: str = "bec"
    criterion: str = "extrinsic"
    exact: bool = False

    def __post_init__(self):
        """Validate the query and fill channel-dependent defaults."""
        if self.channel not in CHANNELS:
            raise ConfigError(f"unknown channel {self.channel!r}")
        if self.criterion not in CRITERIA:
            raise ConfigError(f"unknown criterion {self.criterion!r}")
        if self.i_max < 1:
            raise ConfigError("i_max must be >= 1")
        if self.xi is None:
            object.__setattr__(self, "xi", default_xi(self.channel))
        if self.tolerance is None:
            tol = config.ITERDESIGN_TOL_BEC if self.channel == "bec" else config.ITERDESIGN_TOL_AWGN_DB
            object.__setattr__(self, "tolerance", tol)
        if not 0.0 < self.xi < 1.0:
            raise ConfigError(f"xi={self.xi} outside (0, 1)")
        if self.tolerance <= 0:
            raise ConfigError("tolerance must be > 0")


def _channel_at(query: ThresholdQuery, parameter: float, rate: float) -> ChannelParameter:
    if query.channel == "bec":
        return BecChannel(parameter)
    return AwgnChannel(parameter, rate)


def passes(query: ThresholdQuery, channel: ChannelParameter) -> bool:
    """Whether the success criterion holds on ``channel`` after ``i_max`` iterations."""
    trajectory = run_trajectory(
        query.ddp, channel, query.i_max, xi=query.xi, criterion=query.criterion, exact=query.exact
    )
    return bool(trajectory.achieved)


def _check_monotone(query: ThresholdQuery, rate: float, points: Tuple[float, float, float, float]):
    """Raise ConvergenceError unless the predicate is consistent on the final bracket.

    ``points`` is (passing end, final good, final bad, failing end).
    """
    good_end, good, bad, bad_end = points
    expected = (
        (good, True),
        (bad, False),
        (0.5 * (good_end + good), True),
        (0.5 * (bad + bad_end), False),
    )
    for parameter, outcome in expected:
        if passes(query, _channel_at(query, parameter, rate)) != outcome:
            raise ConvergenceError(
                f"success criterion is not monotone in the {query.channel} parameter: "
                f"{'fails' if outcome else 'passes'} at {parameter:.9g} "
                f"(bisection bracket {good:.9g}..{bad:.9g})"
            )


def iteration_constrained_threshold(query: ThresholdQuery) -> ChannelParameter:
    """Worst channel parameter meeting ``xi`` after ``i_max`` iterations.

    Bisection over the erasure probability in [0, 1] or over Eb/N0 in the
    configured dB bracket.

    The predicate is assumed monotone in the channel parameter. After the
    bisection both ends are re-evaluated together with one point inside
    each outer interval of the bracket.

    Raises:
        UnsatisfiableBracketError: even the best end of the bracket fails
        ConvergenceError: the predicate is not monotone over the bracket
    """
    rate = design_rate(query.ddp)
    if query.channel == "bec":
        good, bad = 0.0, 1.0
    else:
        if not 0.0 < rate < 1.0:
            raise ConfigError(f"design rate {rate:.6f} outside (0, 1)")
        bad, good = config.ITERDESIGN_EBN0_BRACKET_DB
    good_end, bad_end = good, bad

    if not passes(query, _channel_at(query, good, rate)):
        raise UnsatisfiableBracketError(
            f"requirement xi={query.xi} not met after {query.i_max} iterations even at "
            f"{query.channel} parameter {good}"
        )
    if passes(query, _channel_at(query, bad, rate)):
        return _channel_at(query, bad, rate)

    for step in range(config.ITERDESIGN_BISECTION_STEPS):
        if abs(bad - good) <= query.tolerance:
            break
        mid = 0.5 * (good + bad)
        if passes(query, _channel_at(query, mid, rate)):
            good = mid
        else:
            bad = mid
        logger.debug("bisection step %d: good=%.9f bad=%.9f", step, good, bad)
    _check_monotone(query, rate, (good_end, good, bad, bad_end))
    logger.info(
        "threshold %s=%.6f (i_max=%d, xi=%g)",
        "epsilon" if query.channel == "bec" else "Eb/N0[dB]", good, query.i_max, query.xi,
    )
    return _channel_at(query, good, rate)


def threshold_score(channel: ChannelParameter) -> float:
    """Larger-is-better score of a threshold (epsilon or -Eb/N0)."""
    return channel.epsilon if channel.kind == "bec" else -channel.eb_n0_db


@dataclass
class ExitChart:
    """Tabulated VN and CN EXIT curves on a grid of a-priori values."""

    i_a: np.ndarray
    vn: np.ndarray
    cn: np.ndarray

    def rows(self) -> List[Tuple[float, float, float]]:
        """CSV rows (i_a, i_e_vn, i_e_cn); plot the CN curve with swapped axes."""
        return [tuple(map(float, r)) for r in zip(self.i_a, self.vn, self.cn)]


def exit_chart(ddp: DegreeDistributionPair, channel: ChannelParameter, points: int = 101,
               exact: bool = False) -> ExitChart:
    """VN and CN EXIT curves of an ensemble on ``points`` equally spaced a-priori values."""
    model = ExitModel(ddp, channel, exact=exact)
    grid = np.linspace(0.0, 1.0, points)
    return ExitChart(i_a=grid, vn=np.asarray(model.vn(grid)), cn=np.asarray(model.cn(grid)))
