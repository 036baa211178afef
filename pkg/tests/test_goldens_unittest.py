import unittest
from unittest.mock import patch

from rho_ortho.goldens import GOLDENS, GoldenResult, reproduce


class GoldensTest(unittest.TestCase):
    def test_every_golden_reproduces(self):
        for name in GOLDENS:
            with self.subTest(name=name):
                result = reproduce(name)
                self.assertTrue(result.passed, result.values)
                self.assertEqual(result.name, name)

    def test_linf_values(self):
        necessity = reproduce("linf-necessity").values
        self.assertEqual((necessity["rho_plus"], necessity["rho_minus"]), (0.5, -1.0))
        self.assertEqual(necessity["verdict"], "not rho-orthogonal")
        sufficiency = reproduce("linf-sufficiency").values
        self.assertEqual(sufficiency["verdict"], "rho-orthogonal")
        self.assertEqual(sufficiency["rho_at_corner"], 1.0)

    def test_result_serializes(self):
        payload = reproduce("right-diagonal-3d").to_dict()
        self.assertEqual(payload["values"]["construction_tag"], "lemma-diagonal-case-I")
        self.assertIn("expected", payload)

    @patch("logging.warning")
    def test_mismatch_is_reported(self, mock_warning):
        with patch.dict(GOLDENS, {"truncation": lambda tol: GoldenResult("truncation", False, {}, {})}):
            result = reproduce("truncation")
        self.assertFalse(result.passed)
        mock_warning.assert_called_once()

    def test_unknown_name(self):
        with self.assertRaises(ValueError):
            reproduce("no-such-golden")


if __name__ == "__main__":
    unittest.main()
