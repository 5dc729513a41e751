"""Classical side of the inequality: local-hidden-variable strategies.

A deterministic strategy assigns each of m parties two binary outcomes and
a sign choice; the party's contribution is (sigma1 + i s sigma2)/2, a
Gaussian unit over 2, so every deterministic product has squared modulus
exactly 2^-m and mixtures can only interfere destructively.  Products are
kept as exact Gaussian-integer pairs (scaled by 2^m) so the bound can be
asserted with equality, not a tolerance.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Tuple

Party = Tuple[int, int, int]  # (sigma1, sigma2, s), each +-1

_PM_ONE = (-1, 1)
MAX_ENUMERATION_PARTIES = 16


@dataclass(frozen=True)
class LhvStrategy:
    """Deterministic outcomes (sigma1, sigma2) and sign choice s per party."""

    parties: Tuple[Party, ...]

    def __post_init__(self):
        if not self.parties:
            raise ValueError("a strategy needs at least one party")
        for triple in self.parties:
            if len(triple) != 3 or any(v not in _PM_ONE for v in triple):
                raise ValueError(f"party entries must be +-1, got {triple}")

    @property
    def n_parties(self) -> int:
        return len(self.parties)


@dataclass(frozen=True)
class LhvMixture:
    """Convex combination of deterministic strategies."""

    strategies: Tuple[LhvStrategy, ...]
    weights: Tuple[float, ...]

    def __post_init__(self):
        if len(self.strategies) != len(self.weights) or not self.strategies:
            raise ValueError("need matching, nonempty strategies and weights")
        if any(w < 0 for w in self.weights):
            raise ValueError("weights must be nonnegative")
        if abs(math.fsum(self.weights) - 1.0) > 1e-12:
            raise ValueError("weights must sum to 1 within 1e-12")
        m = self.strategies[0].n_parties
        if any(s.n_parties != m for s in self.strategies):
            raise ValueError("all strategies must share the party count")


def _gaussian_product(parties: Sequence[Party]) -> tuple[int, int]:
    """prod (sigma1 + i s sigma2) as an exact Gaussian integer (re, im)."""
    re, im = 1, 0
    for sigma1, sigma2, s in parties:
        b = s * sigma2
        re, im = re * sigma1 - im * b, re * b + im * sigma1
    return re, im


def strategy_correlator(strategy: LhvStrategy) -> complex:
    """prod_k (sigma1 + i s sigma2)/2; each factor has modulus 1/sqrt(2)."""
    re, im = _gaussian_product(strategy.parties)
    scale = 0.5 ** strategy.n_parties  # exact power of two
    return complex(re * scale, im * scale)


def mixture_correlator_sq(mixture: LhvMixture) -> float:
    """|sum_j w_j strategy_correlator_j|^2, never above 2^-m."""
    total = sum(w * strategy_correlator(s)
                for s, w in zip(mixture.strategies, mixture.weights))
    return abs(total) ** 2


def brute_force_max(n_parties: int) -> float:
    """Maximum of the squared correlator over all 8^m deterministic strategies.

    Convexity puts the maximum at a deterministic vertex, so mixtures need
    not be searched.  The enumeration runs party by party: the set of exact
    Gaussian-integer partial products is extended by all eight per-party
    factors and deduplicated, which visits the value of every one of the
    8^m strategies without materializing them.  The result is exactly 2^-m.
    """
    if not 1 <= n_parties <= MAX_ENUMERATION_PARTIES:
        raise ValueError(
            f"party count must be in [1, {MAX_ENUMERATION_PARTIES}], got {n_parties}")
    factors = {(s1, s * s2) for s1 in _PM_ONE for s2 in _PM_ONE for s in _PM_ONE}
    values = {(1, 0)}
    for _ in range(n_parties):
        values = {(re * a - im * b, re * b + im * a)
                  for re, im in values for a, b in factors}
    best = max(re * re + im * im for re, im in values)
    return float(Fraction(best, 4 ** n_parties))


def all_strategies(n_parties: int):
    """Iterate every deterministic strategy (8^m of them); use with small m."""
    triples = [(s1, s2, s) for s1 in _PM_ONE for s2 in _PM_ONE for s in _PM_ONE]
    for combo in itertools.product(triples, repeat=n_parties):
        yield LhvStrategy(combo)
