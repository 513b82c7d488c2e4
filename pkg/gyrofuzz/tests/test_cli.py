import io
import json
import tempfile
from fractions import Fraction
from pathlib import Path
from unittest import mock

from gyrofuzz import testsettings
from gyrofuzz.cli import EXIT_ERROR, EXIT_FAIL, EXIT_PASS, main
from gyrofuzz.conf import settings
from gyrofuzz.exceptions import ConfigurationError
from gyrofuzz.gyro_core import MobiusGyrogroup
from gyrofuzz.instances import registered_kinds, resolve_instance

from . import GyrofuzzTestCase


class CommandTestCase(GyrofuzzTestCase):
    def run_cli(self, *argv):
        with mock.patch("sys.stdout", new_callable=io.StringIO) as stdout, mock.patch(
            "sys.stderr", new_callable=io.StringIO
        ) as stderr:
            code = main(list(argv))
        return code, stdout.getvalue(), stderr.getvalue()

    def run_json(self, *argv):
        code, out, _ = self.run_cli(*argv, "--output", "json")
        return code, json.loads(out)


def laws(report):
    return {check["law"]: check["status"] for check in report["checks"]}


class EvalCommandTests(CommandTestCase):
    def test_oplus(self):
        code, out, _ = self.run_cli("eval", "oplus", "1/2+0i", "1/2+0i")
        self.assertEqual((code, out.strip()), (EXIT_PASS, "4/5+0i"))

    def test_gyr(self):
        code, out, _ = self.run_cli("eval", "gyr", "1/2+0i", "0+1/2i", "1/3+0i")
        self.assertEqual(out.strip(), "5/17-8/51i")

    def test_norm_and_metric(self):
        self.assertEqual(self.run_cli("eval", "norm", "3/10+2/5i")[1].strip(), "1/2")
        code, out, _ = self.run_cli("eval", "metric", "0+0i", "1/2+0i", "--t", "1")
        self.assertEqual(out.strip(), "2/3")
        code, out, _ = self.run_cli("eval", "norm", "1/2+1/2i")
        self.assertTrue(out.startswith("0.7071067811865"))

    def test_fuzzynorm_on_a_cyclic_group(self):
        code, out, _ = self.run_cli(
            "eval", "fuzzynorm", "2", "--t", "1", "--instance", "group:z5", "--tnorm", "product"
        )
        self.assertEqual(out.strip(), "1/2")

    def test_json_output(self):
        code, data = self.run_json("eval", "neg", "1/2-1/3i")
        self.assertEqual(code, EXIT_PASS)
        self.assertEqual(
            data, {"expression": "neg", "operands": ["1/2-1/3i"], "value": "-1/2+1/3i"}
        )

    def test_float_instance(self):
        code, out, _ = self.run_cli(
            "eval", "oplus", "0.5+0i", "0.5+0i", "--instance", "mobius-float"
        )
        self.assertAlmostEqual(complex(out.strip().replace("i", "j")), 0.8)

    def test_errors_exit_with_two(self):
        for argv in (
            ("eval", "oplus", "1/2+0i"),
            ("eval", "fuzzynorm", "1/2+0i"),
            ("eval", "oplus", "1+0i", "0+0i"),
            ("eval", "oplus", "0.5+0i", "0+0i"),
            ("eval", "neg", "1", "--instance", "group:w5"),
            ("eval", "metric", "0+0i", "0+0i", "--t", "-1"),
        ):
            with self.subTest(argv=argv):
                code, out, err = self.run_cli(*argv)
                self.assertEqual(code, EXIT_ERROR)
                self.assertIn("gyrofuzz: error:", err)

    def test_usage_errors(self):
        with mock.patch("sys.stderr", new_callable=io.StringIO):
            with self.assertRaises(SystemExit) as caught:
                main(["eval"])
        self.assertEqual(caught.exception.code, EXIT_ERROR)


class VerifyCommandTests(CommandTestCase):
    def test_cyclic_group(self):
        code, report = self.run_json("verify", "--instance", "group:z4")
        self.assertEqual(code, EXIT_PASS)
        self.assertEqual(report["suite"], "verify:group:z4:min")
        self.assertIn("fuzzy-metric:triangle", laws(report))
        self.assertIn("round-trip:round-trip", laws(report))

    def test_rationals(self):
        code, report = self.run_json("verify", "--instance", "group:q-add", "--samples", "20")
        self.assertEqual(code, EXIT_PASS)
        self.assertEqual(report["samples"], 20)

    def test_mobius_exact(self):
        code, report = self.run_json("verify", "--samples", "4", "--tnorm", "product")
        self.assertEqual(code, EXIT_PASS, report)
        self.assertIn("gyronorm:sharp-bound", laws(report))

    def test_mobius_float(self):
        code, _ = self.run_json("verify", "--instance", "mobius-float", "--samples", "40")
        self.assertEqual(code, EXIT_PASS)

    def test_broken_table(self):
        code, report = self.run_json("verify", "--instance", "table:broken")
        self.assertEqual(code, EXIT_FAIL)
        self.assertEqual(laws(report)["table:gyr-automorphism"], "fail")
        self.assertNotIn("gyrogroup:G1", laws(report))

    def test_group_table(self):
        code, report = self.run_json("verify", "--instance", "table:q8")
        self.assertEqual(code, EXIT_PASS)
        self.assertEqual(laws(report)["table:G4"], "pass")

    def test_text_report_file(self):
        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory) / "report.txt"
            code, out, _ = self.run_cli(
                "verify", "--instance", "group:z3", "--report-file", str(path)
            )
            self.assertEqual((code, out), (EXIT_PASS, ""))
            self.assertTrue(path.read_text(encoding="utf-8").strip().endswith("PASS"))

    def test_seed_is_reported_and_settings_restored(self):
        code, report = self.run_json("verify", "--instance", "group:z2", "--seed", "99")
        self.assertEqual(report["seed"], 99)
        self.assertEqual(settings.SEED, testsettings.SEED)

    def test_seeded_runs_are_byte_identical(self):
        argv = ("verify", "--seed", "5", "--samples", "10", "--output", "json")
        first = self.run_cli(*argv)
        second = self.run_cli(*argv)
        self.assertEqual(first[0], EXIT_PASS, first[1])
        self.assertEqual(first[1], second[1])
        self.assertEqual(json.loads(first[1])["seed"], 5)

    def test_t_grid(self):
        code, report = self.run_json(
            "verify", "--instance", "group:z3", "--t-grid", "2,1/2,2"
        )
        self.assertEqual(code, EXIT_PASS)
        with mock.patch("sys.stderr", new_callable=io.StringIO):
            with self.assertRaises(SystemExit):
                main(["verify", "--t-grid", "0,1"])

    def test_unknown_instance(self):
        self.assertEqual(self.run_cli("verify", "--instance", "torus")[0], EXIT_ERROR)


class KleeAndInvarianceCommandTests(CommandTestCase):
    def test_klee_on_the_reals(self):
        code, report = self.run_json("klee", "--instance", "group:r-add")
        self.assertEqual(code, EXIT_PASS)
        self.assertEqual(laws(report)["condition:I'"], "pass")

    def test_mobius_invariance(self):
        left = self.run_json("invariance", "--side", "left", "--samples", "10")
        right = self.run_json("invariance", "--side", "right", "--samples", "10")
        self.assertEqual(left[0], EXIT_PASS)
        self.assertEqual(right[0], EXIT_FAIL)
        self.assertEqual(laws(right[1]), {"right-invariance": "fail"})

    def test_table_without_norm(self):
        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory) / "noid.gt"
            path.write_text("gyrotable 2\np q\nq p\np p\n", encoding="utf-8")
            code, _, err = self.run_cli("klee", "--instance", f"table:{path}")
        self.assertEqual(code, EXIT_ERROR)
        self.assertIn("no gyronorm", err)


class TableCheckCommandTests(CommandTestCase):
    def test_verdicts(self):
        code, out, _ = self.run_cli("table-check", "broken")
        self.assertEqual(code, EXIT_FAIL)
        self.assertEqual(out.splitlines()[0], "not-gyrogroup")
        code, out, _ = self.run_cli("table-check", "d4")
        self.assertEqual(code, EXIT_PASS)
        self.assertEqual(out.splitlines()[0], "group")

    def test_json_suite_names_the_verdict(self):
        code, report = self.run_json("table-check", "z5")
        self.assertEqual(report["suite"], "table:z5:group")

    def test_parse_errors(self):
        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory) / "bad.gt"
            path.write_text("gyrotable 2\ne a\ne a\na b\n", encoding="utf-8")
            code, _, err = self.run_cli("table-check", str(path))
        self.assertEqual(code, EXIT_ERROR)
        self.assertIn("line 4, column 3", err)

    def test_missing_table(self):
        self.assertEqual(self.run_cli("table-check", "z99")[0], EXIT_ERROR)


class CompleteCommandTests(CommandTestCase):
    def test_rationals(self):
        code, report = self.run_json(
            "complete", "--fixture", "sqrt2", "--fixture", "half", "--samples", "5"
        )
        self.assertEqual(code, EXIT_PASS, report)
        statuses = laws(report)
        for law in (
            "gate:right-invariance",
            "modulus:sqrt2:modulus-soundness",
            "completion:lifted:G3",
            "completion:density",
            "transfer:transfer",
        ):
            self.assertEqual(statuses[law], "pass")

    def test_tiny_eps(self):
        fixtures = ("--fixture", "sqrt2", "--fixture", "golden")
        code, report = self.run_json("complete", *fixtures, "--eps", "1e-20", "--samples", "3")
        self.assertEqual(code, EXIT_PASS, report)
        statuses = laws(report)
        for law in ("completion:oracle", "completion:oracle-neg", "completion:oracle-oplus"):
            self.assertEqual(statuses[law], "pass")

    def test_mobius_base_stops_at_the_gate(self):
        code, report = self.run_json("complete", "--base", "mobius-exact")
        self.assertEqual(code, EXIT_FAIL)
        self.assertEqual(laws(report)["gate:right-invariance"], "fail")
        self.assertFalse(any(law.startswith("completion:") for law in laws(report)))

    def test_fixture_errors(self):
        self.assertEqual(self.run_cli("complete", "--fixture", "pi")[0], EXIT_ERROR)
        self.assertEqual(self.run_cli("complete", "--fixture", "alternating")[0], EXIT_ERROR)
        self.assertEqual(self.run_cli("complete", "--eps", "0")[0], EXIT_ERROR)

    def test_custom_fixture_file(self):
        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory) / "fixtures.json"
            path.write_text(
                json.dumps(
                    [
                        {
                            "name": "quarter",
                            "kind": "constant",
                            "params": {"value": "1/4"},
                            "cauchy": True,
                            "oracle": "1/4",
                        }
                    ]
                ),
                encoding="utf-8",
            )
            code, report = self.run_json(
                "complete", "--fixtures-file", str(path), "--samples", "3"
            )
        self.assertEqual(code, EXIT_PASS)
        self.assertEqual(laws(report)["completion:oracle"], "pass")


class InstanceTests(GyrofuzzTestCase):
    def test_registered_kinds(self):
        self.assertEqual(
            set(registered_kinds()), {"mobius-exact", "mobius-float", "group", "table"}
        )

    def test_resolution(self):
        instance = resolve_instance("mobius-exact")
        self.assertIsInstance(instance.group, MobiusGyrogroup)
        self.assertTrue(instance.is_mobius)
        self.assertEqual(resolve_instance("group:q-add").metric(Fraction(1), Fraction(3)), 2)
        self.assertEqual(resolve_instance("table:z6").group.name, "z6")

    def test_invalid_selectors(self):
        for selector in ("mobius-exact:x", "group:", "group:zx", "table:", "cube"):
            with self.subTest(selector=selector):
                with self.assertRaises(ConfigurationError):
                    resolve_instance(selector)

    def test_float_tolerance_is_passed_on(self):
        self.assertEqual(resolve_instance("mobius-float", 1e-6).group.tolerance, 1e-6)
