import io
import json
import os
import tempfile
import unittest
from contextlib import redirect_stderr, redirect_stdout
from unittest.mock import patch

from src.main import EXIT_FAILED, EXIT_OK, EXIT_USAGE, main
from src.services.schema_service import SchemaService

EXAMPLE_P13 = [0, 3, 1, 3, 2, 0, 1, 2, 3, 3, 2, 2, 2, 2, 0, 0, 0, 1, 1, 0, 3, 2, 0, 1, 3, 1]


def run_cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        status = main(list(argv))
    return status, out.getvalue(), err.getvalue()


class TestGen(unittest.TestCase):
    def test_example_sequence(self):
        status, out, _ = run_cli("gen", "--p", "13", "--preset", "eq6", "--format", "json")
        self.assertEqual(status, EXIT_OK)
        document = json.loads(out)
        self.assertEqual(document["values"], EXAMPLE_P13)
        self.assertEqual(document["g"], 2)
        self.assertTrue(SchemaService().is_valid("gen", document))

    def test_custom_vectors_zeroed(self):
        status, out, _ = run_cli("gen", "--p", "13", "--jvec", "0,1,2,3", "--lvec", "1,2,3,0",
                                 "--variant", "zeroed", "--format", "json")
        self.assertEqual(status, EXIT_OK)
        values = json.loads(out)["values"]
        self.assertEqual(values[13], 0)
        self.assertEqual(values[:13], EXAMPLE_P13[:13])

    def test_csv(self):
        status, out, _ = run_cli("gen", "--p", "5", "--format", "csv")
        self.assertEqual(status, EXIT_OK)
        lines = out.splitlines()
        self.assertEqual(lines[0], "t,value")
        self.assertEqual(len(lines), 11)

    def test_deterministic(self):
        first = run_cli("acf", "--p", "13", "--preset", "eq7", "--format", "json")
        second = run_cli("acf", "--p", "13", "--preset", "eq7", "--format", "json")
        self.assertEqual(first, second)


class TestUsageErrors(unittest.TestCase):
    def test_not_prime(self):
        status, out, err = run_cli("verify", "--p", "15")
        self.assertEqual(status, EXIT_USAGE)
        self.assertEqual(out, "")
        self.assertIn("参数错误", err)

    def test_wrong_residue(self):
        self.assertEqual(run_cli("gen", "--p", "7")[0], EXIT_USAGE)

    def test_preset_with_vectors(self):
        status, _, _ = run_cli("gen", "--p", "13", "--preset", "eq6", "--jvec", "0,1,2,3", "--lvec", "1,2,3,0")
        self.assertEqual(status, EXIT_USAGE)

    def test_bad_vector(self):
        self.assertEqual(run_cli("gen", "--p", "13", "--jvec", "0,1,1,3", "--lvec", "1,2,3,0")[0], EXIT_USAGE)
        self.assertEqual(run_cli("gen", "--p", "13", "--jvec", "a,b", "--lvec", "1,2,3,0")[0], EXIT_USAGE)

    def test_missing_p(self):
        self.assertEqual(run_cli("gen")[0], EXIT_USAGE)

    def test_lc_has_no_csv(self):
        self.assertEqual(run_cli("lc", "--p", "5", "--format", "csv")[0], EXIT_USAGE)


class TestSubcommands(unittest.TestCase):
    def test_acf_csv_header(self):
        status, out, _ = run_cli("acf", "--p", "13", "--preset", "eq6", "--format", "csv")
        self.assertEqual(status, EXIT_OK)
        lines = out.splitlines()
        self.assertEqual(lines[0], "w,re,im,norm_sq")
        self.assertEqual(lines[1], "0,26,0,676")
        self.assertEqual(len(lines), 27)

    def test_numbers(self):
        status, out, _ = run_cli("numbers", "--p", "13", "--format", "json")
        self.assertEqual(status, EXIT_OK)
        document = json.loads(out)
        self.assertTrue(SchemaService().is_valid("numbers", document))
        self.assertEqual(document["total"], 11)
        self.assertEqual(document["identity_value"], -1)
        partition = document["partition"]
        self.assertEqual(partition["x"] ** 2 + 4 * partition["y"] ** 2, 13)

    def test_lc_f4(self):
        status, out, _ = run_cli("lc", "--p", "13", "--preset", "eq6", "--format", "json")
        self.assertEqual(status, EXIT_OK)
        document = json.loads(out)
        self.assertEqual(document["L"], 20)
        self.assertEqual(document["bm_L"], 20)
        self.assertEqual(document["method"], "gcd")
        self.assertIsNone(document["diagnostics"])

    def test_lc_z4(self):
        status, out, _ = run_cli("lc", "--p", "13", "--ring", "z4", "--format", "json")
        self.assertEqual(status, EXIT_OK)
        document = json.loads(out)
        self.assertEqual(document["L"], 26)
        self.assertEqual(document["certificate"]["degree"], 25)
        self.assertTrue(document["certificate"]["verified"])

    def test_lc_diagnostics(self):
        status, out, _ = run_cli("lc", "--p", "13", "--diagnostics", "--format", "json", "--seed", "7")
        self.assertEqual(status, EXIT_OK)
        diagnostics = json.loads(out)["diagnostics"]
        self.assertEqual(diagnostics["ext_degree"], 6)
        self.assertNotIn(False, diagnostics["checks"].values())

    def test_lc_diagnostics_eq7(self):
        status, out, _ = run_cli("lc", "--p", "13", "--preset", "eq7", "--diagnostics", "--format", "json")
        self.assertEqual(status, EXIT_OK)
        checks = json.loads(out)["diagnostics"]["checks"]
        self.assertNotIn(False, checks.values())
        self.assertIsNone(checks["u_split"])
        self.assertTrue(checks["class_power_sums"])

    def test_lc_diagnostics_over_limit(self):
        status, out, _ = run_cli("lc", "--p", "13", "--diagnostics", "--diagnostic-limit", "2", "--format", "json")
        self.assertEqual(status, EXIT_OK)
        diagnostics = json.loads(out)["diagnostics"]
        self.assertTrue(diagnostics["notices"])

    def test_survey(self):
        status, out, _ = run_cli("survey", "--p", "5", "--format", "json")
        self.assertEqual(status, EXIT_OK)
        document = json.loads(out)
        self.assertEqual(document["class_count"], 72)
        self.assertEqual(len(document["records"]), 576)
        self.assertIsNone(document["records"][0]["lc_z4"])
        self.assertTrue(document["symmetries"]["holds"])

    def test_verify(self):
        status, out, err = run_cli("verify", "--p", "13", "--format", "json", "--verbose")
        self.assertEqual(status, EXIT_OK)
        document = json.loads(out)
        self.assertTrue(document["passed"])
        self.assertEqual(document["failed_claims"], [])
        claims = {r["claim"] for r in document["results"]}
        for name in ("theorem1", "theorem2", "theorem3", "lemma3", "lemma5", "lemma7"):
            self.assertIn(name, claims)
        self.assertIn("📐", err)

    def test_verify_reports_zeroed_remark_without_failing(self):
        status, out, _ = run_cli("verify", "--p", "13", "--format", "json")
        self.assertEqual(status, EXIT_OK)
        document = json.loads(out)
        zeroed = next(r for r in document["results"] if r["claim"] == "zeroed_endpoints")
        self.assertEqual(zeroed["status"], "not-reproduced")
        self.assertIn("w=[2, 4", zeroed["detail"])
        self.assertNotIn("zeroed_endpoints", document["failed_claims"])
        self.assertTrue(SchemaService().is_valid("verify", document))

    def test_verify_text_lists_remarks(self):
        status, out, _ = run_cli("verify", "--p", "13")
        self.assertEqual(status, EXIT_OK)
        self.assertIn("未复现", out)
        self.assertIn("zeroed_endpoints", out)

    def test_verify_failure_exit_code(self):
        failing = [{"claim": "theorem2", "status": "fail", "detail": "x"}]
        with patch("src.main.ClaimVerifier.verify", return_value=failing):
            status, out, err = run_cli("verify", "--p", "5")
        self.assertEqual(status, EXIT_FAILED)
        self.assertIn("theorem2", err)
        self.assertIn("❌", out)


class TestOutputFile(unittest.TestCase):
    def test_out_uses_output_dir(self):
        with tempfile.TemporaryDirectory() as tmp:
            with patch.dict(os.environ, {"CYCLO_OUTPUT_DIR": tmp}):
                status, out, _ = run_cli("gen", "--p", "5", "--format", "json", "--out", "gen.json")
            self.assertEqual(status, EXIT_OK)
            self.assertEqual(out, "")
            with open(os.path.join(tmp, "gen.json"), encoding="utf-8") as f:
                self.assertEqual(len(json.load(f)["values"]), 10)


if __name__ == "__main__":
    unittest.main()
