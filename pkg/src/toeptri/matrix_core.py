"""Periodic lower-triangular Toeplitz matrices with linearly increasing diagonals.

The family is parameterized by an exact rational offset ``mu``, a period-``i``
tuple of exact rational subdiagonal values ``a``, and a dimension ``n``
(1-based entry semantics):

    A[r][c] = mu + r                          if r = c,
    A[r][c] = a[((r - c - 1) mod i) + 1]      if r > c,
    A[r][c] = 0                               if r < c.

Parameters stay exact (:class:`fractions.Fraction`) so feasibility predicates
elsewhere never round; all vector numerics are binary64. Dense materialization
exists only as a small-n oracle — matvec and both triangular solves run in
O(n*i) time through the compiled kernels, never forming the matrix.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from . import _kernels
from .errors import DimensionMismatch, DimensionTooLarge, SingularDiagonal

# Arbitrary-precision signed rational scalar; reduced form and correctly
# rounded float conversion come with the stdlib type.
Rational = Fraction

# Small-n oracle representation: an (n, n) float64 array, zero above the
# diagonal.
DenseMatrix = np.ndarray

DENSE_CAP = 4096
PIVOT_FLOOR = _kernels.PIVOT_FLOOR

_COMPOSITE = re.compile(r"^(?P<base>.+?)\s*(?P<op>[+-])\s*(?P<num>\d+)\s*/\s*(?P<den>\d+)$")

# Cumulative multiply/divide counts per public operation, fed by the kernels'
# in-kernel counters. Diagnostics only: plain dict updates, not synchronized
# across threads.
OP_COUNTS = {"matvec": 0, "forward_solve": 0, "transpose_solve": 0}


def operation_counts() -> dict[str, int]:
    """Snapshot of the cumulative kernel operation counters."""
    return dict(OP_COUNTS)


def reset_operation_counts() -> None:
    """Zero all kernel operation counters."""
    for key in OP_COUNTS:
        OP_COUNTS[key] = 0


def parse_rational(text: str) -> Fraction:
    """Parse an exact rational from "p/q", decimal, or composite "c+p/q"/"c-p/q".

    Examples: "7/3", "-1/6", "2", "0.25", "100-1/6" (= 599/6).
    Raises ValueError for anything else.
    """
    stripped = text.strip()
    try:
        return Fraction(stripped)
    except (ValueError, ZeroDivisionError):
        pass
    match = _COMPOSITE.match(stripped)
    if match:
        base = Fraction(match.group("base"))
        frac = Fraction(int(match.group("num")), int(match.group("den")))
        return base + frac if match.group("op") == "+" else base - frac
    raise ValueError(f"not a rational literal: {text!r}")


@dataclass(frozen=True)
class MatrixSpec:
    """The tuple (mu, a_1..a_i, i, n) defining one matrix of the family.

    Parameters are exact rationals; any real values are accepted here (the
    feasibility predicates live in :mod:`toeptri.bounds`). ``i`` must equal
    ``len(a)``; ``i >= 1`` and ``n >= 1``.
    """

    mu: Fraction
    a: tuple[Fraction, ...]
    i: int
    n: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "mu", Fraction(self.mu))
        object.__setattr__(self, "a", tuple(Fraction(v) for v in self.a))
        if self.i != len(self.a):
            raise ValueError(f"i = {self.i} but len(a) = {len(self.a)}")
        if self.i < 1:
            raise ValueError("period i must be >= 1")
        if self.n < 1:
            raise ValueError("dimension n must be >= 1")

    @cached_property
    def mu_float(self) -> float:
        return float(self.mu)

    @cached_property
    def a_floats(self) -> np.ndarray:
        arr = np.array([float(v) for v in self.a], dtype=np.float64)
        arr.setflags(write=False)
        return arr


def materialize_dense(spec: MatrixSpec, *, cap: int = DENSE_CAP) -> DenseMatrix:
    """Dense (n, n) float64 form of the matrix; small-n oracle only."""
    if spec.n > cap:
        raise DimensionTooLarge(f"n = {spec.n} exceeds dense cap {cap}")
    n, i = spec.n, spec.i
    a = spec.a_floats
    dense = np.zeros((n, n), dtype=np.float64)
    cols = np.arange(n)
    for r in range(n):
        if r:
            dense[r, :r] = a[(r - 1 - cols[:r]) % i]
        dense[r, r] = spec.mu_float + r + 1
    return dense


def _as_vector(spec: MatrixSpec, v, name: str) -> np.ndarray:
    arr = np.ascontiguousarray(v, dtype=np.float64)
    if arr.ndim != 1 or arr.shape[0] != spec.n:
        raise DimensionMismatch(
            f"{name} must be a length-{spec.n} vector, got shape {arr.shape}"
        )
    return arr


def matvec(spec: MatrixSpec, x) -> np.ndarray:
    """y = A @ x in O(n*i) time and O(i) extra space."""
    arr = _as_vector(spec, x, "x")
    y, ops = _kernels.matvec_kernel(spec.mu_float, spec.a_floats, arr)
    OP_COUNTS["matvec"] += int(ops)
    return y


def forward_solve(spec: MatrixSpec, b, *, pivot_floor: float = PIVOT_FLOOR) -> np.ndarray:
    """Solve A x = b in O(n*i) via the row-difference transform.

    Raises SingularDiagonal when some |mu + m| falls below ``pivot_floor``.
    """
    arr = _as_vector(spec, b, "b")
    x, ops, bad = _kernels.forward_kernel(spec.mu_float, spec.a_floats, arr, pivot_floor)
    OP_COUNTS["forward_solve"] += int(ops)
    if bad:
        raise SingularDiagonal(f"|mu + {bad}| below pivot floor {pivot_floor}")
    return x


def transpose_solve(spec: MatrixSpec, b, *, pivot_floor: float = PIVOT_FLOOR) -> np.ndarray:
    """Solve A^T x = b in O(n*i); mirror of forward_solve for the transpose."""
    arr = _as_vector(spec, b, "b")
    x, ops, bad = _kernels.transpose_kernel(spec.mu_float, spec.a_floats, arr, pivot_floor)
    OP_COUNTS["transpose_solve"] += int(ops)
    if bad:
        raise SingularDiagonal(f"|mu + {bad}| below pivot floor {pivot_floor}")
    return x
