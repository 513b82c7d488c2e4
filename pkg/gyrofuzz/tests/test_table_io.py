import tempfile
from pathlib import Path

from gyrofuzz.exceptions import ConfigurationError, DomainError, TableParseError
from gyrofuzz.gyro_core import verify_gyrogroup_axioms, verify_identities
from gyrofuzz.table_io import (
    CayleyTable,
    TableGyrogroup,
    Verdict,
    find_identity,
    fixture_path,
    load_table,
    parse_table,
    prove_gyrogroup,
    serialize_table,
)

from . import GyrofuzzTestCase

GROUP_FIXTURES = ("z2", "z3", "z4", "z5", "z6", "z7", "z8", "klein4", "s3", "d4", "q8")


class ParseTests(GyrofuzzTestCase):
    def test_parse_bundled(self):
        table = load_table(fixture_path("z3"))
        self.assertEqual(table.names, ("e", "a", "a2"))
        self.assertEqual(table.op(1, 2), 0)
        self.assertEqual(table.order, 3)

    def test_serialize_parses_back(self):
        table = load_table(fixture_path("q8"))
        self.assertEqual(parse_table(serialize_table(table)), table)

    def test_comments_and_blank_lines(self):
        table = parse_table("# z2\n\ngyrotable 2\ne a\n  # body\ne a\na e\n")
        self.assertEqual(table.cells, ((0, 1), (1, 0)))

    def test_missing_row_points_past_the_end(self):
        with self.assertRaises(TableParseError) as caught:
            parse_table("gyrotable 2\ne a\ne a\n")
        self.assertEqual(caught.exception.line, 4)

    def test_unknown_element_position(self):
        with self.assertRaises(TableParseError) as caught:
            parse_table("gyrotable 2\ne a\ne a\na b\n")
        self.assertEqual((caught.exception.line, caught.exception.column), (4, 3))
        self.assertIn("line 4, column 3", str(caught.exception))

    def test_header_errors(self):
        for text, line in (
            ("", 1),
            ("table 2\ne a\n", 1),
            ("# header below\ngyrotable two\n", 2),
            ("gyrotable 0\n", 1),
        ):
            with self.subTest(text=text):
                with self.assertRaises(TableParseError) as caught:
                    parse_table(text)
                self.assertEqual(caught.exception.line, line)

    def test_name_errors(self):
        with self.assertRaises(TableParseError) as caught:
            parse_table("gyrotable 2\ne e\n")
        self.assertEqual(caught.exception.column, 3)
        with self.assertRaises(TableParseError):
            parse_table("gyrotable 2\ne a-b\n")
        with self.assertRaises(TableParseError):
            parse_table("gyrotable 2\ne a b\n")

    def test_short_row(self):
        with self.assertRaises(TableParseError) as caught:
            parse_table("gyrotable 2\ne a\ne\na e\n")
        self.assertEqual((caught.exception.line, caught.exception.column), (3, 2))

    def test_gyration_tables_are_refused(self):
        with self.assertRaises(TableParseError) as caught:
            parse_table("gyrotable 2\ne a\ne a\na e\ngyr a a\n")
        self.assertEqual(caught.exception.line, 5)
        self.assertIn("derived", str(caught.exception))

    def test_trailing_content(self):
        with self.assertRaises(TableParseError):
            parse_table("gyrotable 2\ne a\ne a\na e\na a\n")

    def test_missing_files(self):
        with self.assertRaises(ConfigurationError):
            fixture_path("z99")
        with self.assertRaises(ConfigurationError):
            load_table("/nonexistent/table.gt")

    def test_load_from_disk(self):
        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory) / "z2.gt"
            path.write_text("gyrotable 2\ne a\ne a\na e\n", encoding="utf-8")
            self.assertEqual(load_table(path), load_table(fixture_path("z2")))

    def test_table_invariants(self):
        with self.assertRaises(DomainError):
            CayleyTable(("e", "e"), ((0, 1), (1, 0)))
        with self.assertRaises(DomainError):
            CayleyTable(("e", "a"), ((0, 1), (1, 2)))


class ProofTests(GyrofuzzTestCase):
    def test_bundled_groups(self):
        for name in GROUP_FIXTURES:
            with self.subTest(table=name):
                diagnosis = prove_gyrogroup(load_table(fixture_path(name)))
                self.assertEqual(diagnosis.verdict, Verdict.GROUP)
                self.assertIsNone(diagnosis.failing_axiom)
                self.assertEqual(
                    diagnosis.passed_stages,
                    ["G1", "G2", "gyr-bijective", "gyr-automorphism", "G3", "G4"],
                )

    def test_broken_table(self):
        diagnosis = prove_gyrogroup(load_table(fixture_path("broken")))
        self.assertEqual(diagnosis.verdict, Verdict.NOT_GYROGROUP)
        self.assertEqual(diagnosis.failing_axiom, "gyr-automorphism")
        self.assertEqual(diagnosis.witness, ("e", "a", "a", "a"))
        self.assertEqual(diagnosis.passed_stages, ["G1", "G2", "gyr-bijective"])

    def test_swapped_cells_lose_an_inverse(self):
        table = load_table(fixture_path("z3")).swapped((1, 1), (1, 2))
        diagnosis = prove_gyrogroup(table)
        self.assertEqual(diagnosis.verdict, Verdict.NOT_GYROGROUP)
        self.assertEqual((diagnosis.failing_axiom, diagnosis.witness), ("G2", ("a2",)))

    def test_no_identity(self):
        table = CayleyTable(("p", "q"), ((1, 0), (0, 0)))
        self.assertIsNone(find_identity(table))
        diagnosis = prove_gyrogroup(table)
        self.assertEqual((diagnosis.failing_axiom, diagnosis.witness), ("G1", ("p", "p")))

    def test_diagnosis_report(self):
        diagnosis = prove_gyrogroup(load_table(fixture_path("broken")))
        report = diagnosis.to_report("table:broken")
        self.assertFalse(report.passed)
        self.assertTrue(report["G2"].passed)
        self.assertEqual(
            report["gyr-automorphism"].witness, {"w0": "e", "w1": "a", "w2": "a", "w3": "a"}
        )


class TableGyrogroupTests(GyrofuzzTestCase):
    def test_sampled_suites_agree_with_the_proof(self):
        G = TableGyrogroup(load_table(fixture_path("s3")), name="s3")
        self.assertTrue(verify_gyrogroup_axioms(G).passed)
        self.assertTrue(verify_identities(G).passed)

    def test_sampled_suite_finds_the_broken_table(self):
        G = TableGyrogroup(load_table(fixture_path("broken")), name="broken")
        self.assertFalse(verify_gyrogroup_axioms(G).passed)

    def test_elements(self):
        G = TableGyrogroup(load_table(fixture_path("klein4")))
        self.assertEqual(G.elements(), (0, 1, 2, 3))
        self.assertEqual(G.name, "table4")
        self.assertEqual(G.neg(G.parse("a")), G.parse("a"))
        with self.assertRaises(DomainError):
            G.validate(4)

    def test_missing_inverse(self):
        table = load_table(fixture_path("z3")).swapped((1, 1), (1, 2))
        with self.assertRaises(DomainError):
            TableGyrogroup(table).neg(2)
