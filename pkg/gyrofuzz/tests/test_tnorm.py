import math
import tempfile
from fractions import Fraction
from pathlib import Path

from hypothesis import given, settings as hypothesis_settings, strategies as st

from gyrofuzz.exceptions import ConfigurationError, DomainError
from gyrofuzz.reals import compare, sqrt
from gyrofuzz.tnorm import (
    LUKASIEWICZ,
    MIN,
    PRODUCT,
    by_name,
    load_tnorm,
    oscillation,
    parse_tnorm,
    tabulated,
    tnorm_check_axioms,
    tnorm_eval,
    tnorm_root,
)

from . import GyrofuzzTestCase

unit = st.fractions(min_value=0, max_value=1, max_denominator=50)

PRODUCT_TABLE = "tnorm 2\n0 0 0\n0 1/4 1/2\n0 1/2 1\n"


class EvalTests(GyrofuzzTestCase):
    def test_builtins(self):
        a, b = Fraction(2, 3), Fraction(3, 4)
        self.assertEqual(tnorm_eval(MIN, a, b), a)
        self.assertEqual(tnorm_eval(PRODUCT, a, b), Fraction(1, 2))
        self.assertEqual(tnorm_eval(LUKASIEWICZ, a, b), Fraction(5, 12))
        self.assertEqual(tnorm_eval(LUKASIEWICZ, Fraction(1, 4), Fraction(1, 4)), 0)

    def test_call_delegates(self):
        self.assertEqual(PRODUCT(Fraction(1, 2), Fraction(1, 2)), Fraction(1, 4))

    def test_floating(self):
        value = PRODUCT.as_floating()(Fraction(1, 2), Fraction(1, 2))
        self.assertIsInstance(value, float)
        self.assertEqual(value, 0.25)

    def test_symbolic_reals_pass_through(self):
        half_root = sqrt(2) / 2
        self.assertEqual(compare(tnorm_eval(MIN, half_root, 1), half_root), 0)
        self.assertEqual(compare(tnorm_eval(PRODUCT, half_root, half_root), Fraction(1, 2)), 0)

    def test_outside_unit_interval(self):
        with self.assertRaises(DomainError):
            tnorm_eval(MIN, 2, Fraction(1, 2))
        with self.assertRaises(DomainError):
            tnorm_eval(PRODUCT, Fraction(-1, 2), 1)
        with self.assertRaises(DomainError):
            tnorm_eval(PRODUCT, math.nan, 1)
        with self.assertRaises(DomainError):
            tnorm_eval(PRODUCT, "1/2", 1)

    def test_tabulated_product_interpolates_exactly(self):
        t = parse_tnorm(PRODUCT_TABLE)
        self.assertEqual(t.resolution, 2)
        self.assertEqual(tnorm_eval(t, Fraction(1, 3), Fraction(3, 4)), Fraction(1, 4))
        self.assertEqual(tnorm_eval(t, 1, Fraction(2, 7)), Fraction(2, 7))

    @hypothesis_settings(max_examples=50, deadline=None)
    @given(unit, unit)
    def test_commutative_and_bounded(self, a, b):
        for t in (MIN, PRODUCT, LUKASIEWICZ):
            self.assertEqual(tnorm_eval(t, a, b), tnorm_eval(t, b, a))
            self.assertLessEqual(tnorm_eval(t, a, b), min(a, b))
            self.assertEqual(tnorm_eval(t, a, 1), a)


class AxiomTests(GyrofuzzTestCase):
    def test_builtins_pass(self):
        for t in (MIN, PRODUCT, LUKASIEWICZ):
            with self.subTest(t=t.name):
                report = tnorm_check_axioms(t, resolution=8)
                self.assertTrue(report.passed, report.to_text())

    def test_floating_builtins_pass(self):
        report = tnorm_check_axioms(PRODUCT.as_floating(), resolution=8)
        self.assertTrue(report.passed, report.to_text())

    def test_tabulated_product_passes(self):
        self.assertTrue(tnorm_check_axioms(parse_tnorm(PRODUCT_TABLE), resolution=4).passed)

    def test_bad_table_fails(self):
        t = tabulated([[0, 0, 0], [0, 1, Fraction(1, 2)], [0, Fraction(1, 2), 1]])
        report = tnorm_check_axioms(t, resolution=2)
        self.assertFalse(report.passed)
        self.assertFalse(report["bounded-by-min"].passed)
        self.assertEqual(report["bounded-by-min"].witness, {"a": "1/2", "b": "1/2"})

    def test_resolution_too_small(self):
        with self.assertRaises(DomainError):
            tnorm_check_axioms(MIN, resolution=1)

    def test_oscillation_halves(self):
        self.assertEqual(oscillation(MIN, 8), 1 / 8)
        self.assertEqual(oscillation(MIN, 16), 1 / 16)


class RootTests(GyrofuzzTestCase):
    def test_product_root(self):
        root = tnorm_root(PRODUCT, Fraction(1, 10))
        self.assertGreater((1 - root) * (1 - root), Fraction(9, 10))
        self.assertAlmostEqual(float(root), 1 - math.sqrt(0.9), delta=1e-5)

    def test_min_root_approaches_target(self):
        root = tnorm_root(MIN, Fraction(1, 4), tol=Fraction(1, 2**30))
        self.assertLess(root, Fraction(1, 4))
        self.assertLess(Fraction(1, 4) - root, Fraction(1, 2**29))

    def test_root_postcondition_on_twenty_targets(self):
        targets = [Fraction(k, 21) for k in range(1, 21)]
        for t in (MIN, PRODUCT, LUKASIEWICZ):
            for target in targets:
                with self.subTest(tnorm=t.name, target=target):
                    root = tnorm_root(t, target)
                    self.assertTrue(0 < root < 1)
                    self.assertGreater(tnorm_eval(t, 1 - root, 1 - root), 1 - target)

    def test_floating_root(self):
        root = tnorm_root(PRODUCT.as_floating(), 0.5)
        self.assertIsInstance(root, float)
        self.assertAlmostEqual(root, 1 - math.sqrt(0.5), delta=1e-5)

    def test_target_out_of_range(self):
        for target in (0, 1, Fraction(3, 2)):
            with self.assertRaises(DomainError):
                tnorm_root(MIN, target)
        with self.assertRaises(DomainError):
            tnorm_root(MIN, Fraction(1, 2), tol=0)


class ResolutionTests(GyrofuzzTestCase):
    def test_by_name(self):
        self.assertIs(by_name("min"), MIN)
        self.assertIs(by_name("Product"), PRODUCT)
        with self.assertRaises(ConfigurationError):
            by_name("drastic")

    def test_by_name_file(self):
        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory) / "product.tn"
            path.write_text("# bilinear product\n" + PRODUCT_TABLE, encoding="utf-8")
            t = by_name(f"file:{path}")
            self.assertEqual(t, load_tnorm(path))
            self.assertEqual(t.name, "tabulated")

    def test_missing_file(self):
        with self.assertRaises(ConfigurationError):
            load_tnorm("/nonexistent/product.tn")

    def test_malformed_tables(self):
        for text in (
            "",
            "tnorm x\n0 0\n0 1\n",
            "tnorm 2\n0 0 0\n0 1 1\n",
            "tnorm 1\n0 0\n0\n",
            "tnorm 1\n0 zero\n0 1\n",
            "tnorm 1\n0 0\n0 2\n",
        ):
            with self.subTest(text=text):
                with self.assertRaises((ConfigurationError, DomainError)):
                    parse_tnorm(text)
