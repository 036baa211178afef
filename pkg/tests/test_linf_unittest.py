import unittest

import numpy as np
import numpy.testing as npt

from rho_ortho.exceptions import MatrixFormatError, UnsupportedDimension, ZeroOperator, ZeroVector
from rho_ortho.goldens import NECESSITY_A, NECESSITY_T, SUFFICIENCY_A, SUFFICIENCY_T
from rho_ortho.linf import (LinfOperator, SupportFunctional, ext_support_functionals, extreme_sign_pair,
                            is_rho_orthogonal_linf, mt_ext, operator_from_fixture, pointwise_witness_scan,
                            rho_pm_linf_op, rho_pm_linf_vec)


def sup_norm_quotient(x, y, t):
    """|x| (|x + ty| - |x|) / t in the sup norm; t < 0 gives the left quotient."""
    peak = np.max(np.abs(x))
    return peak * (np.max(np.abs(x + t * y)) - peak) / t


def centred(T, A):
    """A - cT with c chosen so that the operator derivatives at T sum to zero."""
    report = rho_pm_linf_op(T, A)
    return LinfOperator(A.matrix - (report.rho_plus + report.rho_minus) / (2 * T.norm ** 2) * T.matrix)


class SupportFunctionalTest(unittest.TestCase):
    def test_ties_and_signs(self):
        functionals = ext_support_functionals([1.0, -1.0, 0.5])
        self.assertEqual(functionals, [SupportFunctional(0, 1), SupportFunctional(1, -1)])
        self.assertEqual(str(functionals[1]), "-e*_2")
        self.assertEqual(functionals[1]([3.0, 2.0, 0.0]), -2.0)

    def test_zero_vector(self):
        with self.assertRaises(ZeroVector):
            ext_support_functionals([0.0, 0.0])
        with self.assertRaises(ValueError):
            SupportFunctional(0, 0)

    def test_vector_derivatives(self):
        report = rho_pm_linf_vec([2.0, -2.0], [1.0, 3.0])
        self.assertEqual((report.rho_plus, report.rho_minus), (2.0, -6.0))
        single = rho_pm_linf_vec([1.0, 0.5], [0.5, 0.0])
        self.assertEqual((single.rho_plus, single.rho_minus), (0.5, 0.5))
        self.assertEqual(rho_pm_linf_vec([0.0, 0.0], [1.0, 1.0]).rho, 0.0)
        with self.assertRaises(ZeroVector):
            rho_pm_linf_vec([0.0, 0.0], [1.0, 1.0], strict=True)

    def test_one_sided_differences_of_sup_norm(self):
        rng = np.random.default_rng(41)
        for _ in range(200):
            n = int(rng.integers(2, 6))
            x, y = rng.standard_normal(n), rng.standard_normal(n)
            report = rho_pm_linf_vec(x, y)
            bound = 1e-5 * np.max(np.abs(x)) * np.max(np.abs(y))
            self.assertLessEqual(abs(sup_norm_quotient(x, y, 1e-7) - report.rho_plus), bound)
            self.assertLessEqual(abs(sup_norm_quotient(x, y, -1e-7) - report.rho_minus), bound)

    def test_one_sided_differences_at_ties(self):
        x, y = np.array([2.0, -2.0]), np.array([1.0, 3.0])
        report = rho_pm_linf_vec(x, y)
        self.assertAlmostEqual(sup_norm_quotient(x, y, 1e-7), report.rho_plus, places=6)
        self.assertAlmostEqual(sup_norm_quotient(x, y, -1e-7), report.rho_minus, places=6)


class FixtureTest(unittest.TestCase):
    def test_images_reproduced(self):
        T = operator_from_fixture(NECESSITY_T)
        npt.assert_array_equal(T.matrix, [[1.0, 0.0], [0.0, 0.5]])
        npt.assert_array_equal(T([1.0, -1.0]), [1.0, -0.5])
        self.assertEqual(T.norm, 1.0)

    def test_bad_fixtures(self):
        bad = [
            {"space": "l2", "images": {"(1,1)": [1, 0], "(1,-1)": [0, 1]}},
            {"space": "linf2", "images": {"(1,1)": [1, 0]}},
            {"space": "linf2", "images": {"1,1": [1, 0], "(1,-1)": [0, 1]}},
            {"space": "linf2", "images": {"(1,1)": [1, 0], "(2,2)": [0, 1]}},
            {"space": "linf2"},
        ]
        for document in bad:
            with self.subTest(document=document):
                with self.assertRaises(MatrixFormatError):
                    operator_from_fixture(document)

    def test_complex_rejected(self):
        with self.assertRaises(MatrixFormatError):
            LinfOperator([[1j, 0], [0, 1]])


class OperatorDerivativeTest(unittest.TestCase):
    def test_norm_attaining_sign_vectors(self):
        T = operator_from_fixture(NECESSITY_T)
        self.assertEqual(len(mt_ext(T)), 4)
        D = LinfOperator(np.diag([1.0, 0.5]))
        self.assertEqual(len(mt_ext(D)), 4)
        with self.assertRaises(ZeroOperator):
            mt_ext(LinfOperator(np.zeros((2, 2))))
        with self.assertRaises(UnsupportedDimension):
            mt_ext(LinfOperator(np.eye(13)))

    def test_necessity_values_are_exact(self):
        T, A = operator_from_fixture(NECESSITY_T), operator_from_fixture(NECESSITY_A)
        report = rho_pm_linf_op(T, A)
        self.assertEqual(report.rho_plus, 0.5)
        self.assertEqual(report.rho_minus, -1.0)
        self.assertFalse(is_rho_orthogonal_linf(T, A).rho_orthogonal)

    def test_sufficiency_values_are_exact(self):
        T, A = operator_from_fixture(SUFFICIENCY_T), operator_from_fixture(SUFFICIENCY_A)
        report = rho_pm_linf_op(T, A)
        self.assertEqual((report.rho_plus, report.rho_minus), (1.0, -1.0))
        self.assertTrue(is_rho_orthogonal_linf(T, A).rho_orthogonal)
        self.assertEqual(rho_pm_linf_vec(T([1.0, 1.0]), A([1.0, 1.0])).rho, 1.0)
        x, y = extreme_sign_pair(T, A)
        self.assertGreaterEqual(rho_pm_linf_vec(T(x), A(x)).rho, 0.0)
        self.assertLessEqual(rho_pm_linf_vec(T(y), A(y)).rho, 0.0)

    def test_no_sign_pair_when_all_positive(self):
        self.assertIsNone(extreme_sign_pair(np.eye(2), np.eye(2)))

    def test_orthogonality_yields_extreme_sign_pair(self):
        rng = np.random.default_rng(42)
        for _ in range(30):
            n = int(rng.integers(2, 4))
            T = LinfOperator(rng.standard_normal((n, n)))
            A = centred(T, LinfOperator(rng.standard_normal((n, n))))
            self.assertTrue(is_rho_orthogonal_linf(T, A).rho_orthogonal)
            bound = 1e-8 * T.norm * A.norm
            x, y = extreme_sign_pair(T, A)
            self.assertGreaterEqual(rho_pm_linf_vec(T(x), A(x)).rho, -bound)
            self.assertLessEqual(rho_pm_linf_vec(T(y), A(y)).rho, bound)

    def test_pointwise_orthogonality_gives_operator_orthogonality(self):
        rng = np.random.default_rng(43)
        checked = 0
        for _ in range(30):
            T = LinfOperator(rng.standard_normal((2, 2)))
            A = centred(T, LinfOperator(rng.standard_normal((2, 2))))
            bound = 1e-8 * T.norm * A.norm
            if all(abs(rho_pm_linf_vec(T(x), A(x)).rho) <= bound for x in mt_ext(T)):
                checked += 1
                self.assertLessEqual(abs(rho_pm_linf_op(T, A).rho), bound)
                self.assertTrue(is_rho_orthogonal_linf(T, A).rho_orthogonal)
        self.assertGreater(checked, 0)
        T, A = operator_from_fixture(SUFFICIENCY_T), operator_from_fixture(SUFFICIENCY_A)
        pointwise = [rho_pm_linf_vec(T(x), A(x)).rho for x in mt_ext(T)]
        self.assertTrue(any(value != 0 for value in pointwise))


class PointwiseScanTest(unittest.TestCase):
    def test_necessity_witness(self):
        T, A = operator_from_fixture(NECESSITY_T), operator_from_fixture(NECESSITY_A)
        x0 = pointwise_witness_scan(T, A)
        npt.assert_allclose(x0, [1.0, 1 / 3], atol=1e-9)
        npt.assert_allclose(A(x0), [0.0, 0.0], atol=1e-9)

    def test_sufficiency_has_no_face_witness(self):
        T, A = operator_from_fixture(SUFFICIENCY_T), operator_from_fixture(SUFFICIENCY_A)
        self.assertIsNone(pointwise_witness_scan(T, A, grid=2001))

    def test_dimension_restricted(self):
        with self.assertRaises(UnsupportedDimension):
            pointwise_witness_scan(np.eye(3), np.eye(3))


if __name__ == "__main__":
    unittest.main()
