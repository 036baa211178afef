import unittest

import numpy as np
import numpy.testing as npt

from rho_ortho.exceptions import DimensionError, ZeroBasePoint, ZeroOperator
from rho_ortho.geometry import norm_attainment_subspace
from rho_ortho.linalg import gaussian_matrix, operator_norm, random_unitary
from rho_ortho.rho import (DerivativeReport, finite_difference_rho_minus, finite_difference_rho_plus, is_bj_orthogonal,
                           is_rho_orthogonal, midpoint_shift, rho_operator, rho_vec)


class VectorDerivativeTest(unittest.TestCase):
    def test_real_part_of_inner_product(self):
        report = rho_vec([1.0, 0.0], [3.0, 4.0])
        self.assertEqual((report.rho_plus, report.rho_minus, report.rho, report.norm_T), (3.0, 3.0, 3.0, 1.0))
        self.assertEqual(rho_vec([1j, 0], [1, 0]).rho, 0.0)

    def test_zero_base_point(self):
        self.assertEqual(rho_vec([0, 0], [1, 2]), DerivativeReport.zero())
        with self.assertRaises(ZeroBasePoint):
            rho_vec([0, 0], [1, 2], strict=True)

    def test_length_mismatch(self):
        with self.assertRaises(DimensionError):
            rho_vec([1, 0], [1, 0, 0])


class OperatorDerivativeTest(unittest.TestCase):
    def setUp(self):
        self.rng = np.random.default_rng(5)

    def test_identity_against_reflection(self):
        verdict = is_rho_orthogonal(np.eye(2), np.diag([1.0, -1.0]))
        self.assertTrue(verdict.rho_orthogonal)
        self.assertTrue(verdict.bj_orthogonal)
        self.assertAlmostEqual(verdict.report.rho_plus, 1.0)
        self.assertAlmostEqual(verdict.report.rho_minus, -1.0)

    def test_attained_on_single_vector(self):
        T = np.diag([1.0, 0.5])
        A = np.array([[0.0, 1.0], [1.0, 0.0]])
        report = rho_operator(T, A)
        self.assertAlmostEqual(report.rho_plus, 0.0, places=12)
        self.assertTrue(is_rho_orthogonal(T, A).rho_orthogonal)
        self.assertFalse(is_rho_orthogonal(T, np.eye(2)).rho_orthogonal)

    def test_zero_operands(self):
        self.assertEqual(rho_operator(np.zeros((2, 2)), np.eye(2)), DerivativeReport.zero())
        with self.assertRaises(ZeroOperator):
            rho_operator(np.zeros((2, 2)), np.eye(2), strict=True)
        self.assertTrue(is_rho_orthogonal(np.eye(2), np.zeros((2, 2))).rho_orthogonal)
        self.assertTrue(is_rho_orthogonal(np.zeros((2, 2)), np.eye(2)).rho_orthogonal)

    def test_finite_difference_agreement(self):
        for _ in range(20):
            n = int(self.rng.integers(2, 6))
            complex_field = bool(self.rng.integers(2))
            T, A = gaussian_matrix(n, n, self.rng, complex_field), gaussian_matrix(n, n, self.rng, complex_field)
            report = rho_operator(T, A)
            scale = operator_norm(T) * operator_norm(A)
            self.assertLessEqual(abs(finite_difference_rho_plus(T, A, 1e-6) - report.rho_plus), 1e-4 * scale)
            self.assertLessEqual(abs(finite_difference_rho_minus(T, A, 1e-6) - report.rho_minus), 1e-4 * scale)

    def test_finite_difference_step(self):
        with self.assertRaises(ValueError):
            finite_difference_rho_plus(np.eye(2), np.eye(2), 0.0)
        with self.assertRaises(ValueError):
            finite_difference_rho_minus(np.eye(2), np.eye(2), -1e-3)

    def test_homogeneity(self):
        T, A = gaussian_matrix(3, 3, self.rng, True), gaussian_matrix(3, 3, self.rng, True)
        base = rho_operator(T, A)
        flipped = rho_operator(T, -2.0 * A)
        self.assertAlmostEqual(flipped.rho_plus, -2.0 * base.rho_minus, places=9)
        self.assertAlmostEqual(flipped.rho_minus, -2.0 * base.rho_plus, places=9)
        rotated = rho_operator(1j * T, 1j * A)
        self.assertAlmostEqual(rotated.rho, base.rho, places=9)

    def test_unitary_invariance(self):
        T, A = gaussian_matrix(3, 3, self.rng, True), gaussian_matrix(3, 3, self.rng, True)
        U, V = random_unitary(3, self.rng, True), random_unitary(3, self.rng, True)
        base, moved = rho_operator(T, A), rho_operator(U @ T @ V, U @ A @ V)
        self.assertAlmostEqual(base.rho_plus, moved.rho_plus, places=9)
        self.assertAlmostEqual(base.rho_minus, moved.rho_minus, places=9)

    def test_predicate_real_homogeneity(self):
        for complex_field in (False, True):
            T, A = gaussian_matrix(3, 3, self.rng, complex_field), gaussian_matrix(3, 3, self.rng, complex_field)
            for B in (A, midpoint_shift(T, A)):
                base = is_rho_orthogonal(T, B)
                for alpha, beta in ((-3.0, 0.5), (2.5, -0.01), (-1.0, -7.0)):
                    scaled = is_rho_orthogonal(alpha * T, beta * B)
                    self.assertEqual(scaled.rho_orthogonal, base.rho_orthogonal)
                    self.assertEqual(scaled.bj_orthogonal, base.bj_orthogonal)

    def test_rho_implies_bj(self):
        for _ in range(20):
            n = int(self.rng.integers(2, 5))
            complex_field = bool(self.rng.integers(2))
            T, A = gaussian_matrix(n, n, self.rng, complex_field), gaussian_matrix(n, n, self.rng, complex_field)
            for B in (A, midpoint_shift(T, A)):
                verdict = is_rho_orthogonal(T, B)
                self.assertTrue(verdict.bj_orthogonal or not verdict.rho_orthogonal)

    def test_precomputed_subspace_and_norm(self):
        T, A = gaussian_matrix(4, 4, self.rng, True), gaussian_matrix(4, 4, self.rng, True)
        subspace = norm_attainment_subspace(T)
        for samples in (None, 32):
            direct = is_rho_orthogonal(T, A, samples=samples)
            given = is_rho_orthogonal(T, A, samples=samples, subspace=subspace, norm_A=operator_norm(A))
            self.assertEqual(given.to_dict(), direct.to_dict())
        self.assertEqual(rho_operator(T, A, subspace=subspace), rho_operator(T, A))
        npt.assert_array_equal(midpoint_shift(T, A, subspace=subspace), midpoint_shift(T, A))

    def test_bj_predicate(self):
        T = np.diag([1.0, 0.5])
        self.assertTrue(is_bj_orthogonal(T, np.diag([0.0, 1.0])))
        self.assertFalse(is_bj_orthogonal(T, np.eye(2)))

    def test_shape_mismatch(self):
        with self.assertRaises(DimensionError):
            rho_operator(np.eye(2), np.eye(3))


class MidpointShiftTest(unittest.TestCase):
    def test_shift_makes_orthogonal(self):
        rng = np.random.default_rng(9)
        for complex_field in (False, True):
            T, A = gaussian_matrix(4, 4, rng, complex_field), gaussian_matrix(4, 4, rng, complex_field)
            shifted = midpoint_shift(T, A)
            verdict = is_rho_orthogonal(T, shifted)
            self.assertTrue(verdict.rho_orthogonal)
            self.assertTrue(verdict.bj_orthogonal)

    def test_orthogonal_input_unchanged(self):
        A = np.diag([1.0, -1.0])
        self.assertIs(midpoint_shift(np.eye(2), A), A)

    def test_zero_base(self):
        with self.assertRaises(ZeroOperator):
            midpoint_shift(np.zeros((2, 2)), np.eye(2))


if __name__ == "__main__":
    unittest.main()
