"""Shared fixtures: dense substitution oracles and random spec generators.

The oracles deliberately use plain row-wise substitution on the materialized
dense matrix, sharing no code with the structured O(n*i) solvers they check.
"""

from __future__ import annotations

import random
from fractions import Fraction

import numpy as np
import pytest

from toeptri.cli import REFERENCE_MU, REFERENCE_SETS
from toeptri.matrix_core import MatrixSpec, parse_rational


def dense_forward_oracle(dense: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Forward substitution on a dense lower-triangular matrix, row by row."""
    n = dense.shape[0]
    x = np.zeros(n)
    for r in range(n):
        x[r] = (b[r] - dense[r, :r] @ x[:r]) / dense[r, r]
    return x


def dense_backward_oracle(upper: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Backward substitution on a dense upper-triangular matrix, row by row."""
    n = upper.shape[0]
    x = np.zeros(n)
    for r in range(n - 1, -1, -1):
        x[r] = (b[r] - upper[r, r + 1 :] @ x[r + 1 :]) / upper[r, r]
    return x


def random_rational(rng: random.Random, lo: int, hi: int, max_den: int = 9) -> Fraction:
    """Uniform-ish rational in [lo, hi] with denominator <= max_den."""
    den = rng.randint(1, max_den)
    num = rng.randint(lo * den, hi * den)
    return Fraction(num, den)


def random_spec(rng: random.Random, n: int, i_max: int = 9) -> MatrixSpec:
    """Arbitrary valid spec (nonneg rationals <= 10); no feasibility imposed."""
    i = rng.randint(2, i_max)
    mu = random_rational(rng, 0, 10)
    a = tuple(random_rational(rng, 0, 10) for _ in range(i))
    return MatrixSpec(mu=mu, a=a, i=i, n=n)


def random_feasible_spec(rng: random.Random, n: int, i_max: int = 9) -> MatrixSpec:
    """Rejection-sample the full feasibility region.

    mu in (0, 150], a_1 in [1, 4] with a_1 <= mu + 3, 0 <= a_j <= a_1, and the
    strict partial-sum gap sum(a_1..a_{i-1}) - a_i < i - 1. The whole region is
    sampled, not any convenient sub-box.
    """
    while True:
        i = rng.randint(2, i_max)
        mu = random_rational(rng, 0, 150)
        if mu <= 0:
            continue
        a1 = random_rational(rng, 1, 4)
        if not (1 <= a1 <= mu + 3):
            continue
        rest = [random_rational(rng, 0, 4) for _ in range(i - 1)]
        if any(v > a1 for v in rest):
            continue
        a = (a1, *rest)
        if sum(a[:-1]) - a[-1] >= i - 1:
            continue
        return MatrixSpec(mu=mu, a=a, i=i, n=n)


_REFERENCE_BY_PERIOD = {period: strs for period, strs in REFERENCE_SETS}


def make_reference_spec(i: int, n: int) -> MatrixSpec:
    """One of the eight built-in reference sets at dimension n."""
    a = tuple(parse_rational(s) for s in _REFERENCE_BY_PERIOD[i])
    return MatrixSpec(mu=parse_rational(REFERENCE_MU), a=a, i=i, n=n)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240811)
