"""Feasibility predicates, the closed-form spectral lower bound, and the
contraction-ratio sequences.

All feasibility verdicts are computed by exact rational comparison — no
floating point — so boundary cases (a_1 exactly 1, the strict sum condition
hit exactly) are decided correctly. The bound evaluations themselves are plain
binary64.

Notation used throughout (S := a_1 + ... + a_{i-1}):
    E := i + a_i - S   (the decay exponent of the bound),
    G := E - 1         (the positive gap required by the strict sum condition),
    theta := a_1^2 * mu * (1 + 4/mu)^E / (G * (mu + 2)^2),
    omega := sqrt((mu + 1) / (1 + theta)).

The per-step contraction ratio is psi_k := (mu + 2k - E) / (mu + 2k); its
running product phi_k starts from the empty product phi_1 = 1. psi_k is
evaluated for every k >= 2 even though its defining text is ambiguous about
the intended smallest k — a deliberate, recorded choice.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import exp, log1p, sqrt

import numpy as np

from . import _kernels
from .errors import DomainError, SingularDiagonal
from .matrix_core import PIVOT_FLOOR, MatrixSpec


def _partial_sum(spec: MatrixSpec) -> Fraction:
    """S = a_1 + ... + a_{i-1} (empty for i = 1), exact."""
    return sum(spec.a[:-1], start=Fraction(0))


def exponent_rational(spec: MatrixSpec) -> Fraction:
    """E = i + a_i - S, exact."""
    return spec.i + spec.a[-1] - _partial_sum(spec)


@dataclass(frozen=True)
class HypothesisVerdict:
    """Outcome of the exact feasibility predicates.

    ``satisfies_eq2``: 0 <= a_2, ..., a_i <= a_1 <= mu + 3, a_1 >= 1, mu >= 0.
    ``satisfies_eq3``: a_1 + ... + a_{i-1} - a_i < i - 1 (strict).
    ``i_at_least_2``: the period is at least 2.
    ``mu_strictly_positive``: mu > 0 (required by theta; reported separately
    because the non-strict mu >= 0 belongs to the first predicate).
    """

    satisfies_eq2: bool
    satisfies_eq3: bool
    i_at_least_2: bool
    mu_strictly_positive: bool
    violations: tuple[str, ...]

    @property
    def passed(self) -> bool:
        return (
            self.satisfies_eq2
            and self.satisfies_eq3
            and self.i_at_least_2
            and self.mu_strictly_positive
        )


def check_hypotheses(spec: MatrixSpec) -> HypothesisVerdict:
    """Exact rational evaluation of the feasibility conditions.

    Never raises; returns verdicts plus human-readable violation strings.
    """
    violations: list[str] = []
    a1 = spec.a[0]

    eq2 = True
    if not a1 >= 1:
        eq2 = False
        violations.append(f"a_1 = {a1} < 1")
    if not a1 <= spec.mu + 3:
        eq2 = False
        violations.append(f"a_1 = {a1} > mu + 3 = {spec.mu + 3}")
    if not spec.mu >= 0:
        eq2 = False
        violations.append(f"mu = {spec.mu} < 0")
    for j, aj in enumerate(spec.a[1:], start=2):
        if not 0 <= aj <= a1:
            eq2 = False
            violations.append(f"a_{j} = {aj} outside [0, a_1] = [0, {a1}]")

    gap = spec.i - 1 + spec.a[-1] - _partial_sum(spec)  # i - 1 - (S - a_i)
    eq3 = gap > 0
    if not eq3:
        violations.append(
            f"a_1 + ... + a_{spec.i - 1} - a_{spec.i} = {_partial_sum(spec) - spec.a[-1]}"
            f" not < i - 1 = {spec.i - 1}"
        )

    i_ok = spec.i >= 2
    if not i_ok:
        violations.append(f"period i = {spec.i} < 2")

    mu_pos = spec.mu > 0
    if not mu_pos:
        violations.append(f"mu = {spec.mu} not > 0 (required by the closed-form bound)")

    return HypothesisVerdict(
        satisfies_eq2=eq2,
        satisfies_eq3=eq3,
        i_at_least_2=i_ok,
        mu_strictly_positive=mu_pos,
        violations=tuple(violations),
    )


@dataclass(frozen=True)
class TheoremBound:
    """theta, omega, and the two exact-derived exponents for one spec."""

    theta: float
    omega: float
    exponent: float  # E = i + a_i - S
    denom_gap: float  # G = i - 1 + a_i - S


def theta(spec: MatrixSpec) -> float:
    """Closed-form theta = a_1^2 * mu * (1 + 4/mu)^E / (G * (mu + 2)^2).

    The power is evaluated as exp(E * ln(1 + 4/mu)). Requires mu > 0 and
    G > 0 (DomainError otherwise); feasible specs always satisfy G > 0.
    """
    if not spec.mu > 0:
        raise DomainError(f"theta requires mu > 0, got mu = {spec.mu}")
    gap = spec.i - 1 + spec.a[-1] - _partial_sum(spec)
    if not gap > 0:
        raise DomainError(f"theta requires i - 1 + a_i - (a_1 + ... + a_(i-1)) > 0, got {gap}")
    mu = spec.mu_float
    a1 = float(spec.a[0])
    e_f = float(exponent_rational(spec))
    power = exp(e_f * log1p(4.0 / mu))
    return a1 * a1 * mu * power / (float(gap) * (mu + 2.0) ** 2)


def omega(spec: MatrixSpec) -> float:
    """The dimension-independent lower bound sqrt((mu + 1) / (1 + theta))."""
    th = theta(spec)
    return sqrt((spec.mu_float + 1.0) / (1.0 + th))


def theorem_bound(spec: MatrixSpec) -> TheoremBound:
    """Bundle theta, omega, E, and G for one spec."""
    th = theta(spec)
    om = sqrt((spec.mu_float + 1.0) / (1.0 + th))
    return TheoremBound(
        theta=th,
        omega=om,
        exponent=float(exponent_rational(spec)),
        denom_gap=float(spec.i - 1 + spec.a[-1] - _partial_sum(spec)),
    )


@dataclass(frozen=True)
class BoundSequence:
    """psi_k for k = 2..k_max and the running product phi_k for k = 1..k_max.

    phi_1 = 1 (empty product) and phi_k = phi_{k-1} * psi_k. Use psi_at/phi_at
    for 1-based-by-k access; the arrays are internal-positional.
    """

    psi: np.ndarray
    phi: np.ndarray

    @property
    def k_max(self) -> int:
        return len(self.phi)

    def psi_at(self, k: int) -> float:
        if not 2 <= k <= self.k_max:
            raise IndexError(f"psi_at requires 2 <= k <= {self.k_max}, got {k}")
        return float(self.psi[k - 2])

    def phi_at(self, k: int) -> float:
        if not 1 <= k <= self.k_max:
            raise IndexError(f"phi_at requires 1 <= k <= {self.k_max}, got {k}")
        return float(self.phi[k - 1])


def psi_phi(spec: MatrixSpec, k_max: int) -> BoundSequence:
    """Contraction ratios psi_k = (mu + 2k - E)/(mu + 2k) and products phi_k."""
    if not spec.mu > 0:
        raise DomainError(f"psi_phi requires mu > 0, got mu = {spec.mu}")
    if k_max < 1:
        raise DomainError(f"k_max must be >= 1, got {k_max}")
    mu = spec.mu_float
    e_f = float(exponent_rational(spec))
    ks = np.arange(2, k_max + 1, dtype=np.float64)
    denom = mu + 2.0 * ks
    psi = (denom - e_f) / denom
    phi = np.empty(k_max, dtype=np.float64)
    phi[0] = 1.0
    if k_max > 1:
        phi[1:] = np.cumprod(psi)
    return BoundSequence(psi=psi, phi=phi)


@dataclass(frozen=True)
class InverseColumn:
    """First column c of A^{-1}: c_1 = 1/(mu+1), then the banded recurrence."""

    c: np.ndarray


def inverse_first_column(spec: MatrixSpec, *, pivot_floor: float = PIVOT_FLOOR) -> InverseColumn:
    """First column of A^{-1} in O(n*i) via the banded recurrence.

    Plain substitution covers entries m <= i+1; from m >= i+2 the recurrence
    c_m = (-a_1 c_{m-1} - ... - a_{i-1} c_{m-i+1} + (mu + m - i - a_i) c_{m-i})
          / (mu + m)
    applies (the (mu + m - i - a_i) coefficient enters with a plus sign: it is
    the negated subdiagonal entry a_i - (mu + m - i) of the transformed banded
    matrix).
    """
    out = np.empty(spec.n, dtype=np.float64)
    _ops, bad = _kernels.first_column_kernel(
        spec.mu_float, spec.a_floats, out, pivot_floor
    )
    if bad:
        raise SingularDiagonal(f"|mu + {bad}| below pivot floor {pivot_floor}")
    return InverseColumn(c=out)
