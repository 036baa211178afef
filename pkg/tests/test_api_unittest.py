import unittest
from unittest.mock import patch

import numpy as np

from rho_ortho.api import OrthogonalityToolkit
from rho_ortho.exceptions import MatrixFormatError
from rho_ortho.goldens import NECESSITY_A, NECESSITY_T
from rho_ortho.linalg import DEFAULT_TOLERANCES
from rho_ortho.linf import LinfOperator

IDENTITY = {"rows": 2, "cols": 2, "field": "real", "entries": [1, 0, 0, 1]}
REFLECTION = {"rows": 2, "cols": 2, "field": "real", "entries": [1, 0, 0, -1]}


class OrthogonalityToolkitTest(unittest.TestCase):
    def setUp(self):
        with patch("rho_ortho.api.setup_logging") as mock_setup:
            self.toolkit = OrthogonalityToolkit(samples=16, trials=5)
            mock_setup.assert_called_once()

    def test_operator_dispatch(self):
        self.assertIsInstance(self.toolkit.operator(NECESSITY_T), LinfOperator)
        matrix = self.toolkit.operator(IDENTITY)
        np.testing.assert_array_equal(matrix, np.eye(2))
        self.toolkit.field = "complex"
        self.assertTrue(np.iscomplexobj(self.toolkit.operator(IDENTITY)))

    def test_matrix_pair(self):
        T, A = self.toolkit.operator(IDENTITY), self.toolkit.operator(REFLECTION)
        report = self.toolkit.derivative(T, A)
        self.assertAlmostEqual(report.rho_plus, 1.0)
        self.assertAlmostEqual(report.rho_minus, -1.0)
        self.assertTrue(self.toolkit.check(T, A).rho_orthogonal)

    def test_linf_pair(self):
        T, A = self.toolkit.operator(NECESSITY_T), self.toolkit.operator(NECESSITY_A)
        self.assertEqual(self.toolkit.derivative(T, A).rho_plus, 0.5)
        self.assertFalse(self.toolkit.check(T, A).rho_orthogonal)

    def test_mixed_pair(self):
        with self.assertRaises(MatrixFormatError):
            self.toolkit.check(self.toolkit.operator(NECESSITY_T), np.eye(2))

    def test_ranges(self):
        self.assertEqual(len(self.toolkit.numerical_range(np.eye(2)).thetas), 16)
        sample = self.toolkit.maximal_numerical_range(np.diag([1.0, 0.5]), np.eye(2))
        np.testing.assert_allclose(sample.boundary_points, 1.0, atol=1e-12)

    def test_witness_and_probe(self):
        self.assertEqual(self.toolkit.witness("right", np.diag([1.0, 1.0, 0.5])).construction_tag,
                         "lemma-diagonal-case-I")
        self.assertIsNone(self.toolkit.witness("left", np.eye(2)))
        self.assertEqual(self.toolkit.probe("left", np.eye(2)).trials, 5)
        with self.assertRaises(ValueError):
            self.toolkit.witness("up", np.eye(2))
        with self.assertRaises(ValueError):
            self.toolkit.probe("down", np.eye(2))

    @patch("rho_ortho.api.run_selftest")
    def test_selftest_settings(self, mock_run):
        self.toolkit.selftest(trials=3)
        mock_run.assert_called_once_with(3, 0, DEFAULT_TOLERANCES)

    @patch("rho_ortho.api.run_selftest")
    def test_selftest_uses_toolkit_trials(self, mock_run):
        self.toolkit.selftest()
        mock_run.assert_called_once_with(5, 0, DEFAULT_TOLERANCES)

    def test_reproduce(self):
        self.assertTrue(self.toolkit.reproduce("linf-sufficiency").passed)


if __name__ == "__main__":
    unittest.main()
