"""Compiled O(n*i) kernels behind the public matrix operations.

The public functions in :mod:`toeptri.matrix_core` validate their inputs,
convert exact rational parameters to float64 once, and dispatch here. Every
kernel returns an in-kernel count of its multiply/divide operations so callers
can assert that cost scales linearly in n*i, plus a failure row index
(1-based; 0 means success) raised as :class:`~toeptri.errors.SingularDiagonal`
by the wrappers.

Matrix convention (1-based row r, column c, period i, offset mu):
    A[r][c] = mu + r                         if r = c,
    A[r][c] = a[((r - c - 1) mod i) + 1]     if r > c,
    A[r][c] = 0                              if r < c.

Solves use the row-difference transform: subtracting row m-i from row m for
every m >= i+2 leaves a bandwidth-i lower-triangular matrix whose extra
subdiagonal entry at (m, m-i) is a_i - (mu + m - i). Forward substitution on
that banded matrix gives the recurrence used below; the transposed solve runs
the banded system backwards and then undoes the row transform on the result.
"""

import numpy as np
from numba import njit

PIVOT_FLOOR = 1e-300

_LCG_MULT = np.uint64(6364136223846793005)
_LCG_INC = np.uint64(1442695040888963407)
_LCG_SHIFT = np.uint64(11)
_INV_2_53 = 1.0 / 9007199254740992.0  # 2**-53


@njit(cache=True)
def lcg_fill(n, seed):
    """Deterministic start vector in [-1, 1).

    64-bit linear congruential generator: state <- state * 6364136223846793005
    + 1442695040888963407 (mod 2**64), seeded directly with ``seed``. Each
    output takes the top 53 bits as a float in [0, 1) and maps it affinely to
    [-1, 1). Platform-independent and allocation-free apart from the result.
    """
    out = np.empty(n, dtype=np.float64)
    state = np.uint64(seed)
    for k in range(n):
        state = state * _LCG_MULT + _LCG_INC
        out[k] = 2.0 * (np.float64(state >> _LCG_SHIFT) * _INV_2_53) - 1.0
    return out


@njit(cache=True)
def matvec_kernel(mu, a, x):
    """y = A @ x in O(n*i) time and O(i) extra space.

    Maintains one running partial sum per residue class of the column index:
    part[c] = sum of x[k] over processed k with k mod i == c. Row m then adds
    a[(m - c - 1) mod i] * part[c] for each class c (all columns in a class
    share the same subdiagonal value for a fixed row).
    """
    n = x.shape[0]
    i = a.shape[0]
    y = np.empty(n)
    part = np.zeros(i)
    ops = 0
    for m0 in range(n):
        acc = (mu + m0 + 1.0) * x[m0]
        for c in range(i):
            acc += a[(m0 - c - 1) % i] * part[c]
        part[m0 % i] += x[m0]
        y[m0] = acc
        ops += i + 1
    return y, ops


@njit(cache=True)
def forward_kernel(mu, a, b, pivot_floor):
    """Solve A x = b via the row-difference transform plus banded substitution.

    Rows m <= i+1 are plain forward substitution (they involve at most one
    period of subdiagonal values); rows m >= i+2 use the transformed RHS
    b[m] - b[m-i] and the bandwidth-i recurrence.
    """
    n = b.shape[0]
    i = a.shape[0]
    x = np.empty(n)
    bt = b.copy()
    ops = 0
    for m0 in range(i + 1, n):
        bt[m0] = b[m0] - b[m0 - i]
        ops += 1
    head = min(i, n - 1)
    for m0 in range(head + 1):
        d = mu + m0 + 1.0
        if abs(d) < pivot_floor:
            return x, ops, m0 + 1
        acc = bt[m0]
        for j in range(1, m0 + 1):
            acc -= a[j - 1] * x[m0 - j]
            ops += 1
        x[m0] = acc / d
        ops += 1
    for m0 in range(i + 1, n):
        d = mu + m0 + 1.0
        if abs(d) < pivot_floor:
            return x, ops, m0 + 1
        acc = bt[m0]
        for j in range(1, i):
            acc -= a[j - 1] * x[m0 - j]
            ops += 1
        acc += (mu + m0 + 1.0 - i - a[i - 1]) * x[m0 - i]
        x[m0] = acc / d
        ops += 2
    return x, ops, 0


@njit(cache=True)
def transpose_kernel(mu, a, b, pivot_floor):
    """Solve A^T x = b.

    With T the transformed banded matrix (row-difference transform of A),
    A^T = T^T R^{-T}, so u solves T^T u = b by backward substitution over the
    bandwidth-i upper-triangular T^T, and x recovers R^T u:
    x[c] = u[c] - u[c+i] for 2 <= c <= n-i, x[c] = u[c] otherwise.
    """
    n = b.shape[0]
    i = a.shape[0]
    u = np.empty(n)
    ops = 0
    for r0 in range(n - 1, -1, -1):
        d = mu + r0 + 1.0
        if abs(d) < pivot_floor:
            return u, ops, r0 + 1
        acc = b[r0]
        jmax = min(i - 1, n - 1 - r0)
        for j in range(1, jmax + 1):
            acc -= a[j - 1] * u[r0 + j]
            ops += 1
        if r0 + i <= n - 1:
            if r0 >= 1:
                kappa = a[i - 1] - (mu + r0 + 1.0)
            else:
                kappa = a[i - 1]
            acc -= kappa * u[r0 + i]
            ops += 1
        u[r0] = acc / d
        ops += 1
    x = np.empty(n)
    for c0 in range(n):
        if c0 >= 1 and c0 + i <= n - 1:
            x[c0] = u[c0] - u[c0 + i]
            ops += 1
        else:
            x[c0] = u[c0]
    return x, ops, 0


@njit(cache=True)
def first_column_kernel(mu, a, out, pivot_floor):
    """First column of A^{-1} into ``out`` (length = dimension).

    Specialization of forward_kernel to b = e_1: the transformed RHS is still
    e_1 (the subtracted row i entries vanish), so only the recurrence remains.
    """
    n = out.shape[0]
    i = a.shape[0]
    ops = 0
    d = mu + 1.0
    if abs(d) < pivot_floor:
        return ops, 1
    out[0] = 1.0 / d
    ops += 1
    head = min(i, n - 1)
    for m0 in range(1, head + 1):
        d = mu + m0 + 1.0
        if abs(d) < pivot_floor:
            return ops, m0 + 1
        acc = 0.0
        for j in range(1, m0 + 1):
            acc -= a[j - 1] * out[m0 - j]
            ops += 1
        out[m0] = acc / d
        ops += 1
    for m0 in range(i + 1, n):
        d = mu + m0 + 1.0
        if abs(d) < pivot_floor:
            return ops, m0 + 1
        acc = (mu + m0 + 1.0 - i - a[i - 1]) * out[m0 - i]
        for j in range(1, i):
            acc -= a[j - 1] * out[m0 - j]
            ops += 1
        out[m0] = acc / d
        ops += 2
    return ops, 0


@njit(cache=True)
def frobenius_sq_kernel(mu, a, n, pivot_floor):
    """Squared Frobenius norm of A^{-1} via n column solves in O(n) memory.

    Column j of A^{-1} is zero above row j, and rows j..n equal the first
    inverse column of the trailing principal submatrix, which belongs to the
    same family with offset mu + j - 1 and dimension n - j + 1. Each column is
    therefore one first-column recurrence into a shared scratch buffer.
    """
    scratch = np.empty(n)
    total = 0.0
    ops = 0
    for j0 in range(n):
        col = scratch[: n - j0]
        col_ops, bad = first_column_kernel(mu + j0, a, col, pivot_floor)
        ops += col_ops
        if bad != 0:
            return total, ops, j0 + bad
        s = 0.0
        for k in range(n - j0):
            s += col[k] * col[k]
            ops += 1
        total += s
    return total, ops, 0
