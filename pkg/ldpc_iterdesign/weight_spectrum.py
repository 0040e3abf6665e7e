# -*- coding: utf-8 -*-
#
# Copyright (C) 2025 Cottage Labs.
#
# ldpc-iterdesign is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Asymptotic weight spectrum of (G)LDPC ensembles.

The growth rate ``G(alpha)`` is the exponent of the ensemble-average number
of codewords of weight ``alpha N`` in the edge-matching ensemble. It is
evaluated at the saddle point of the generating-function expression: a
variable-node term, a check-node term built from each component code's
weight enumerator and the edge-permutation entropy. Stationary points are
parametrized by ``v = ln y`` (the edge-weight variable) and located as sign
changes of a residual over a grid in ``v``.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy import optimize, special

from . import config
from .component_codes import ComponentCode
from .ensemble import DegreeDistributionPair, node_counts, stability_value
from .errors import BadGrowthError, ConvergenceError, UnrealizableError

logger = logging.getLogger(__name__)

_V_GRID = np.linspace(-30.0, 10.0, 401)
_BISECTION_STEPS = 200


class _Spectrum:
    """Saddle-point equations of one ensemble."""

    def __init__(self, ddp: DegreeDistributionPair):
        self.node_fractions = ddp.lam.node_fractions
        self.degrees = ddp.lam.degrees.astype(float)
        self.lam = ddp.lam.fractions
        self.integral = ddp.lam.integral
        self.cn_weights = ddp.rho.fractions / ddp.rho.lengths
        self.enumerators = []
        for t in ddp.rho.types:
            counts = np.asarray(t.code.weight_enumerator, dtype=float)
            k = np.flatnonzero(counts)
            self.enumerators.append((np.log(counts[k]), k.astype(float)))

    def solve_u(self, v: np.ndarray, alpha: float) -> np.ndarray:
        """Solve ``sum_d L_d sigmoid(u + d v) = alpha`` for ``u`` at every ``v``."""
        dv = np.multiply.outer(v, self.degrees)
        target = special.logit(alpha)
        lo = target - dv.max(axis=-1)
        hi = target - dv.min(axis=-1)
        for _ in range(_BISECTION_STEPS):
            mid = 0.5 * (lo + hi)
            low_side = special.expit(mid[..., None] + dv) @ self.node_fractions < alpha
            lo = np.where(low_side, mid, lo)
            hi = np.where(low_side, hi, mid)
            if np.all(hi - lo < 1e-13):
                break
        return 0.5 * (lo + hi)

    def state(self, v, alpha):
        """Stationary ``(u, beta, w)`` for given ``v``."""
        v = np.atleast_1d(np.asarray(v, dtype=float))
        u = self.solve_u(v, alpha)
        beta = special.expit(u[:, None] + np.multiply.outer(v, self.degrees)) @ self.lam
        beta = np.clip(beta, 1e-300, 1.0 - 1e-16)
        w = special.logit(beta) - v
        return u, beta, w

    def _cn_moments(self, w):
        log_a = np.zeros((len(self.enumerators), w.size))
        mean = np.zeros_like(log_a)
        for i, (log_counts, k) in enumerate(self.enumerators):
            exponents = log_counts[None, :] + np.multiply.outer(w, k)
            log_a[i] = special.logsumexp(exponents, axis=1)
            mean[i] = np.exp(exponents - log_a[i][:, None]) @ k
        return log_a, mean

    def residual(self, v, alpha):
        """Check-node stationarity residual at ``v``."""
        _, beta, w = self.state(v, alpha)
        _, mean = self._cn_moments(w)
        return self.cn_weights @ mean - beta

    def objective(self, v, alpha):
        """Saddle-point exponent at ``v``."""
        v = np.atleast_1d(np.asarray(v, dtype=float))
        u, beta, w = self.state(v, alpha)
        log_a, _ = self._cn_moments(w)
        dv = np.multiply.outer(v, self.degrees)
        vn = np.logaddexp(0.0, u[:, None] + dv) @ self.node_fractions - alpha * u - beta * v / self.integral
        cn = (self.cn_weights @ log_a - beta * w) / self.integral
        entropy = -(special.xlogy(beta, beta) + special.xlog1py(1.0 - beta, -beta))
        return vn + cn - entropy / self.integral


def growth_rate(ddp: DegreeDistributionPair, alpha: float) -> float:
    """Growth rate ``G(alpha)`` of the ensemble weight distribution.

    Args:
        ddp: the ensemble
        alpha: normalized weight in (0, 1)

    Raises:
        ConvergenceError: no stationary point was found
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha={alpha} outside (0, 1)")
    spectrum = _Spectrum(ddp)
    residual = spectrum.residual(_V_GRID, alpha)
    roots = []
    for i in range(len(_V_GRID) - 1):
        a, b = residual[i], residual[i + 1]
        if a == 0.0:
            roots.append(_V_GRID[i])
        elif a * b < 0.0:
            roots.append(
                optimize.brentq(
                    lambda v: float(spectrum.residual(v, alpha)[0]),
                    _V_GRID[i], _V_GRID[i + 1], xtol=1e-12,
                )
            )
    if not roots:
        raise ConvergenceError(f"no saddle point found for G({alpha:g})")
    values = spectrum.objective(np.asarray(roots), alpha)
    return float(values.max())


def good_growth(ddp: DegreeDistributionPair) -> bool:
    """Whether the initial slope of ``G`` is negative."""
    return stability_value(ddp) < 1.0


@dataclass
class GrowthRateCurve:
    """Samples of ``G`` on (0, 0.5] with the classification and crossing point."""

    samples: List[Tuple[float, float]]
    alpha_star: Optional[float]
    good_growth: bool

    def rows(self) -> List[Tuple[float, float]]:
        """CSV rows (alpha, growth_rate)."""
        return list(self.samples)


def _alphas(points: int) -> np.ndarray:
    return np.geomspace(config.ITERDESIGN_GROWTH_ALPHA_MIN, 0.5, points)


def alpha_star(ddp: DegreeDistributionPair, points: int = config.ITERDESIGN_GROWTH_POINTS) -> Optional[float]:
    """Smallest positive zero of ``G``, or None when ``G < 0`` on (0, 0.5].

    Raises:
        BadGrowthError: the ensemble does not have good growth
    """
    if not good_growth(ddp):
        raise BadGrowthError(
            f"{ddp.name or 'ensemble'} has a positive initial growth-rate slope (stability "
            f"{stability_value(ddp):.6f} >= 1); alpha* is undefined"
        )
    alphas = _alphas(points)
    previous = alphas[0]
    for alpha in alphas[1:]:
        if growth_rate(ddp, alpha) >= 0.0:
            root = optimize.bisect(
                lambda a: growth_rate(ddp, a), previous, alpha, xtol=config.ITERDESIGN_GROWTH_ALPHA_TOL
            )
            logger.info("alpha* = %.6f", root)
            return float(root)
        previous = alpha
    return None


def growth_curve(ddp: DegreeDistributionPair, points: int = config.ITERDESIGN_GROWTH_POINTS) -> GrowthRateCurve:
    """``G`` at ``points`` log-spaced normalized weights on (0, 0.5]."""
    alphas = _alphas(points)
    samples = [(float(a), growth_rate(ddp, a)) for a in alphas]
    good = good_growth(ddp)
    star = None
    if good:
        for (a0, g0), (a1, g1) in zip(samples, samples[1:]):
            if g0 < 0.0 <= g1:
                star = float(optimize.bisect(
                    lambda a: growth_rate(ddp, a), a0, a1, xtol=config.ITERDESIGN_GROWTH_ALPHA_TOL
                ))
                break
    return GrowthRateCurve(samples=samples, alpha_star=star, good_growth=good)


def _vn_polynomial(vn_counts: Dict[int, int]) -> Dict[Tuple[int, int], int]:
    """Coefficients of ``prod_d (1 + x y^d)^{n_d}`` keyed by (x power, y power)."""
    poly = {(0, 0): 1}
    for degree, count in vn_counts.items():
        factor = {(j, j * degree): comb(count, j) for j in range(count + 1)}
        product: Dict[Tuple[int, int], int] = {}
        for (w1, e1), c1 in poly.items():
            for (w2, e2), c2 in factor.items():
                key = (w1 + w2, e1 + e2)
                product[key] = product.get(key, 0) + c1 * c2
        poly = product
    return poly


def _cn_polynomial(cn_counts: Sequence[Tuple[ComponentCode, int]]) -> List[int]:
    """Coefficients of ``prod_t A_t(y)^{m_t}``."""
    poly = [1]
    for code, count in cn_counts:
        for _ in range(count):
            product = [0] * (len(poly) + code.length)
            for i, a in enumerate(poly):
                if a:
                    for k, b in enumerate(code.weight_enumerator):
                        if b:
                            product[i + k] += a * b
            poly = product
    return poly


def average_enumerator_from_counts(vn_counts: Dict[int, int],
                                   cn_counts: Sequence[Tuple[ComponentCode, int]]) -> Tuple[Fraction, ...]:
    """Exact ensemble-average weight enumerator for explicit node counts.

    ``E[A_w] = sum_e [x^w y^e] V(x, y) * [y^e] C(y) / binom(E, e)`` over the
    uniform edge matchings.
    """
    edges = sum(d * n for d, n in vn_counts.items())
    if edges != sum(code.length * m for code, m in cn_counts):
        raise ValueError("variable and check sockets differ in number")
    length = sum(vn_counts.values())
    vn_poly = _vn_polynomial(vn_counts)
    cn_poly = _cn_polynomial(cn_counts)
    totals = [Fraction(0)] * (length + 1)
    for (w, e), count in vn_poly.items():
        if e < len(cn_poly) and cn_poly[e]:
            totals[w] += Fraction(count * cn_poly[e], comb(edges, e))
    return tuple(totals)


def brute_force_average_enumerator(ddp: DegreeDistributionPair, block_length: int) -> Tuple[Fraction, ...]:
    """Exact expected weight enumerator at block length ``block_length`` (<= 64).

    Raises:
        UnrealizableError: the ensemble has no integer realization at exactly this length
    """
    if block_length > 64:
        raise ValueError("exact enumeration is limited to block lengths <= 64")
    counts = node_counts(ddp, block_length)
    if counts.length != block_length:
        raise UnrealizableError(f"ensemble realizes N={counts.length}, not {block_length}")
    return average_enumerator_from_counts(
        counts.vn_counts, [(t.code, c) for t, c in counts.cn_counts]
    )


def extrapolate_exponent(lengths: Sequence[int], values: Sequence[float]) -> float:
    """Extrapolate finite-length exponents ``(1/N) ln E[A]`` to ``N -> inf``.

    The polynomial saddle-point prefactor is removed by adding
    ``ln(N) / (2N)`` before a linear fit in ``1/N``.
    """
    n = np.asarray(lengths, dtype=float)
    corrected = np.asarray(values, dtype=float) + 0.5 * np.log(n) / n
    slope, intercept = np.polyfit(1.0 / n, corrected, 1)
    return float(intercept)
