import io
import json
import unittest
from unittest.mock import patch

from rho_ortho.cli import EXIT_INPUT, EXIT_MISMATCH, EXIT_NUMERICAL, EXIT_OK, RhoOrthoCLI, main
from rho_ortho.exceptions import ConstructionFailed
from rho_ortho.goldens import GoldenResult
from rho_ortho.linalg import DEFAULT_TOLERANCES
from rho_ortho.selftest import DEFAULT_CHECK_TRIALS

IDENTITY = '{"rows": 2, "cols": 2, "entries": [1, 0, 0, 1]}'
REFLECTION = '{"rows": 2, "cols": 2, "entries": [1, 0, 0, -1]}'
DIAGONAL = '{"rows": 3, "cols": 3, "entries": [1, 0, 0, 0, 1, 0, 0, 0, 0.5]}'


@patch("rho_ortho.api.setup_logging")
class RhoOrthoCLITest(unittest.TestCase):
    def setUp(self):
        self.rho_ortho_cli = RhoOrthoCLI()

    def run_cli(self, *argv):
        with patch("sys.stdout", new_callable=io.StringIO) as stdout, \
                patch("sys.stderr", new_callable=io.StringIO) as stderr:
            code = self.rho_ortho_cli.main(list(argv))
        return code, stdout.getvalue(), stderr.getvalue()

    def test_check(self, mock_setup):
        code, out, _ = self.run_cli("check", IDENTITY, REFLECTION)
        self.assertEqual(code, EXIT_OK)
        payload = json.loads(out)
        self.assertTrue(payload["rho_orthogonal"])
        self.assertTrue(payload["bj_orthogonal"])

    def test_derivative(self, mock_setup):
        code, out, _ = self.run_cli("derivative", IDENTITY, IDENTITY)
        self.assertEqual(code, EXIT_OK)
        self.assertAlmostEqual(json.loads(out)["rho"], 1.0)

    def test_witness(self, mock_setup):
        code, out, _ = self.run_cli("witness", "right", DIAGONAL)
        self.assertEqual(code, EXIT_OK)
        payload = json.loads(out)
        self.assertEqual(payload["construction_tag"], "lemma-diagonal-case-I")
        self.assertFalse(payload["reverse_verdict"]["rho_orthogonal"])

    def test_missing_witness(self, mock_setup):
        code, out, _ = self.run_cli("witness", "left", IDENTITY)
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(json.loads(out), {"witness": None})

    def test_probe(self, mock_setup):
        code, out, _ = self.run_cli("probe", "left", IDENTITY, "--trials", "3", "--seed", "7")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(json.loads(out)["failures"], 0)

    def test_numrange_csv(self, mock_setup):
        code, out, _ = self.run_cli("numrange", REFLECTION, "--csv", "--samples", "8")
        self.assertEqual(code, EXIT_OK)
        lines = out.splitlines()
        self.assertEqual(lines[0], "theta,re,im,support")
        self.assertEqual(len(lines), 9)

    def test_maxrange_json(self, mock_setup):
        code, out, _ = self.run_cli("maxrange", IDENTITY, REFLECTION, "--samples", "8")
        self.assertEqual(code, EXIT_OK)
        extent = json.loads(out)["extent"]
        self.assertAlmostEqual(extent["lo"], -1.0)
        self.assertAlmostEqual(extent["hi"], 1.0)

    def test_reproduce(self, mock_setup):
        code, out, _ = self.run_cli("reproduce", "linf-necessity")
        self.assertEqual(code, EXIT_OK)
        payload = json.loads(out)
        self.assertTrue(payload["passed"])
        self.assertEqual(payload["values"]["rho_minus"], -1.0)

    @patch("rho_ortho.api.reproduce")
    def test_reproduce_mismatch(self, mock_reproduce, mock_setup):
        mock_reproduce.return_value = GoldenResult("truncation", False, {}, {})
        code, _, err = self.run_cli("reproduce", "truncation")
        self.assertEqual(code, EXIT_MISMATCH)
        self.assertIn("truncation", err)

    def test_malformed_input(self, mock_setup):
        code, out, err = self.run_cli("check", '{"rows": 2, "cols": 2, "entries": [1, 0]}', IDENTITY)
        self.assertEqual(code, EXIT_INPUT)
        self.assertEqual(out, "")
        self.assertTrue(err.startswith("Error:"))
        code, _, _ = self.run_cli("check", "{not json", IDENTITY)
        self.assertEqual(code, EXIT_INPUT)
        code, _, _ = self.run_cli("check", "missing.json", IDENTITY)
        self.assertEqual(code, EXIT_INPUT)
        code, _, _ = self.run_cli("check", IDENTITY, REFLECTION, "--tol", "0.5")
        self.assertEqual(code, EXIT_INPUT)

    @patch("rho_ortho.api.right_witness", side_effect=ConstructionFailed("does not verify"))
    def test_numerical_failure(self, mock_witness, mock_setup):
        code, _, err = self.run_cli("witness", "right", DIAGONAL)
        self.assertEqual(code, EXIT_NUMERICAL)
        self.assertTrue(err.startswith("Numerical error:"))

    @patch("rho_ortho.cli.export_json", return_value=True)
    def test_output_file(self, mock_export, mock_setup):
        code, out, _ = self.run_cli("check", IDENTITY, REFLECTION, "-o", "verdict.json")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(out, "")
        self.assertEqual(mock_export.call_args.args[1], "verdict.json")

    @patch("rho_ortho.cli.export_json", return_value=False)
    def test_output_file_failure(self, mock_export, mock_setup):
        code, _, _ = self.run_cli("check", IDENTITY, REFLECTION, "-o", "verdict.json")
        self.assertEqual(code, EXIT_INPUT)

    @patch("rho_ortho.api.run_selftest")
    def test_selftest(self, mock_run, mock_setup):
        mock_run.return_value = []
        code, out, _ = self.run_cli("selftest")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(json.loads(out), {"passed": True, "checks": []})
        mock_run.assert_called_once_with(DEFAULT_CHECK_TRIALS, 0, DEFAULT_TOLERANCES)

    @patch("rho_ortho.api.run_selftest")
    def test_selftest_trials(self, mock_run, mock_setup):
        mock_run.return_value = []
        code, _, _ = self.run_cli("selftest", "--trials", "500")
        self.assertEqual(code, EXIT_OK)
        mock_run.assert_called_once_with(500, 0, DEFAULT_TOLERANCES)

    def test_main_exit_code(self, mock_setup):
        with patch("sys.argv", ["rho_ortho", "witness", "left", IDENTITY]), \
                patch("sys.stdout", new_callable=io.StringIO):
            with patch("sys.exit") as mock_sys_exit:
                main()
                mock_sys_exit.assert_called_once_with(EXIT_OK)


if __name__ == "__main__":
    unittest.main()
