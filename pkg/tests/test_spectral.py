"""Power iteration on the inverse Gram operator, Frobenius norm of the
inverse via structured column solves, and the dense Jacobi eigen oracle."""

from __future__ import annotations

import math
from dataclasses import asdict
from fractions import Fraction

import numpy as np
import pytest

from toeptri.bounds import omega
from toeptri.errors import DimensionTooLarge
from toeptri.matrix_core import MatrixSpec, materialize_dense
from toeptri.spectral import (
    dense_gram_eigen_oracle,
    frobenius_inverse_norm,
    smallest_singular_value,
    spectral_report,
)

from conftest import make_reference_spec, random_feasible_spec, random_spec

F = Fraction


def spec_of(mu, a, n) -> MatrixSpec:
    a = tuple(F(v) for v in a)
    return MatrixSpec(mu=F(mu), a=a, i=len(a), n=n)


class TestSmallestSingularValue:
    def test_diagonal_matrix(self):
        report = smallest_singular_value(spec_of(3, (0, 0), 10))
        assert report.converged
        assert abs(report.sigma_min - 4.0) <= 1e-10 * 4.0

    def test_three_by_three_against_jacobi(self):
        spec = spec_of(0, (1, 1), 3)
        report = smallest_singular_value(spec)
        eigs = dense_gram_eigen_oracle(materialize_dense(spec))
        want = math.sqrt(min(eigs))
        assert abs(report.sigma_min - want) <= 1e-8 * want

    @pytest.mark.parametrize("n", [8, 24, 64])
    def test_random_cohort_against_jacobi(self, rng, n):
        for _ in range(5):
            spec = random_feasible_spec(rng, n=n)
            report = smallest_singular_value(spec)
            assert report.converged
            want = math.sqrt(min(dense_gram_eigen_oracle(materialize_dense(spec))))
            assert abs(report.sigma_min - want) <= 1e-8 * want

    def test_partial_report_leaves_frobenius_unset(self):
        report = smallest_singular_value(spec_of(2, (1, 1), 12))
        assert report.frob_inv is None and report.frob_inv_reciprocal is None

    def test_unconverged_reported_not_raised(self):
        report = smallest_singular_value(spec_of(2, (1, 1), 64), max_iter=2)
        assert not report.converged and report.iterations <= 2

    def test_deterministic_across_runs(self, rng):
        spec = random_feasible_spec(rng, n=100)
        first = spectral_report(spec, seed=777)
        second = spectral_report(spec, seed=777)
        assert asdict(first) == asdict(second)  # bitwise-identical floats

    def test_seed_changes_start_but_not_limit(self, rng):
        spec = random_feasible_spec(rng, n=60)
        a = smallest_singular_value(spec, seed=1)
        b = smallest_singular_value(spec, seed=2)
        assert abs(a.sigma_min - b.sigma_min) <= 1e-8 * a.sigma_min


class TestFrobeniusInverseNorm:
    def test_diagonal_closed_form(self):
        got = frobenius_inverse_norm(spec_of(3, (0, 0, 0), 50))
        want = math.sqrt(sum(1.0 / (3 + m) ** 2 for m in range(1, 51)))
        assert abs(got - want) <= 1e-14 * want

    def test_hand_three_by_three(self):
        got = frobenius_inverse_norm(spec_of(0, (1, 1), 3))
        want = math.sqrt(5.0 / 3.0)
        assert abs(got - want) <= 1e-14 * want

    @pytest.mark.parametrize("n", [8, 32, 64])
    def test_against_dense_inverse(self, rng, n):
        for _ in range(3):
            spec = random_spec(rng, n=n, i_max=5)
            got = frobenius_inverse_norm(spec)
            want = float(np.linalg.norm(np.linalg.inv(materialize_dense(spec))))
            assert abs(got - want) <= 1e-10 * want

    def test_cap_enforced(self):
        with pytest.raises(DimensionTooLarge):
            frobenius_inverse_norm(spec_of(1, (1, 1), 64), cap=32)


class TestDenseGramEigenOracle:
    def test_identity(self):
        eigs = dense_gram_eigen_oracle(np.eye(3))
        np.testing.assert_allclose(eigs, [1.0, 1.0, 1.0], rtol=1e-12)

    def test_diagonal(self):
        eigs = dense_gram_eigen_oracle(np.diag([1.0, 2.0, 3.0]))
        np.testing.assert_allclose(sorted(eigs), [1.0, 4.0, 9.0], rtol=1e-12)

    def test_determinant_identity_eight_by_eight(self, rng):
        for _ in range(5):
            lower = np.tril(
                np.array([[rng.uniform(-2, 2) for _ in range(8)] for _ in range(8)])
            )
            np.fill_diagonal(lower, [rng.uniform(1, 3) for _ in range(8)])
            eigs = dense_gram_eigen_oracle(lower)
            want = float(np.prod(np.diag(lower))) ** 2
            got = float(np.prod(eigs))
            assert abs(got - want) <= 1e-10 * abs(want)

    def test_size_cap(self):
        with pytest.raises(DimensionTooLarge):
            dense_gram_eigen_oracle(np.eye(65))


class TestOrderingChain:
    @pytest.mark.parametrize("i", [2, 5, 9])
    def test_reference_sets(self, i):
        spec = make_reference_spec(i, 300)
        report = spectral_report(spec, cap=300)
        w = omega(spec)
        assert report.sigma_min >= report.frob_inv_reciprocal * (1 - 1e-8)
        assert report.frob_inv_reciprocal >= w * (1 - 1e-8)

    def test_random_feasible(self, rng):
        for _ in range(10):
            spec = random_feasible_spec(rng, n=120)
            report = spectral_report(spec, cap=120)
            assert report.converged
            assert report.sigma_min >= report.frob_inv_reciprocal * (1 - 1e-8)
            assert report.frob_inv_reciprocal >= omega(spec) * (1 - 1e-8)
