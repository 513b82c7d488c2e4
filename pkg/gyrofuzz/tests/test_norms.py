import math
from fractions import Fraction

from gyrofuzz.exceptions import DomainError
from gyrofuzz.gyro_core import MobiusGyrogroup, MobiusPoint, cyclic_group, rational_additive
from gyrofuzz.norms import (
    Gyronorm,
    absolute_gyronorm,
    check_mobius_sharp_bound,
    discrete_gyronorm,
    fuzzy_from_gyronorm,
    mobius_abs_gyronorm,
    mobius_norm_abs,
    mobius_norm_rapidity,
    mobius_rapidity_gyronorm,
    refinement_oscillation,
    verify_fuzzy_gyronorm,
    verify_gyronorm,
)
from gyrofuzz.reals import is_symbolic
from gyrofuzz.tnorm import LUKASIEWICZ, MIN, PRODUCT

from . import GyrofuzzTestCase


class MobiusNormTests(GyrofuzzTestCase):
    def test_rational_modulus_stays_exact(self):
        value = mobius_norm_abs(MobiusPoint(Fraction(3, 10), Fraction(2, 5)))
        self.assertEqual(value, Fraction(1, 2))

    def test_irrational_modulus_is_symbolic(self):
        value = mobius_norm_abs(MobiusPoint(Fraction(1, 2), Fraction(1, 2)))
        self.assertTrue(is_symbolic(value))
        self.assertAlmostEqual(float(value), math.sqrt(0.5), places=12)

    def test_floating_modulus(self):
        self.assertEqual(mobius_norm_abs(MobiusPoint(0.6, 0.0)), 0.6)

    def test_rapidity(self):
        self.assertAlmostEqual(mobius_norm_rapidity(MobiusPoint(0.5, 0.0)), math.atanh(0.5))
        with self.assertRaises(DomainError):
            mobius_norm_rapidity(MobiusPoint(1 - 1e-13, 0.0))

    def test_abs_gyronorm(self):
        report = verify_gyronorm(mobius_abs_gyronorm(MobiusGyrogroup()), n=15)
        self.assertTrue(report.passed, report.to_text())

    def test_rapidity_gyronorm(self):
        G = MobiusGyrogroup(floating=True)
        report = verify_gyronorm(mobius_rapidity_gyronorm(G), n=100)
        self.assertTrue(report.passed, report.to_text())

    def test_sharp_bound(self):
        report = check_mobius_sharp_bound(MobiusGyrogroup(), n=15)
        self.assertTrue(report.passed, report.to_text())
        self.assertEqual(report.samples, 15)


class GyronormTests(GyrofuzzTestCase):
    def test_absolute_and_discrete(self):
        Q = rational_additive()
        self.assertTrue(verify_gyronorm(absolute_gyronorm(Q)).passed)
        report = verify_gyronorm(discrete_gyronorm(cyclic_group(4)))
        self.assertTrue(report.passed)
        self.assertEqual(report.samples, 64)

    def test_square_is_not_subadditive(self):
        Q = rational_additive()
        report = verify_gyronorm(Gyronorm(Q, lambda x: x * x, "square"))
        self.assertTrue(report["nonnegative"].passed)
        self.assertFalse(report["subadditivity"].passed)
        self.assertEqual(sorted(report["subadditivity"].witness), ["x", "y"])

    def test_negative_values_are_reported(self):
        Q = rational_additive()
        report = verify_gyronorm(Gyronorm(Q, lambda x: x, "identity"))
        self.assertFalse(report["nonnegative"].passed)
        self.assertFalse(report["inverse-invariance"].passed)


class FuzzyGyronormTests(GyrofuzzTestCase):
    def test_standard_construction(self):
        N = fuzzy_from_gyronorm(absolute_gyronorm(rational_additive()), PRODUCT)
        self.assertEqual(N(Fraction(1, 2), Fraction(1)), Fraction(2, 3))
        self.assertEqual(N(Fraction(0), Fraction(3)), 1)
        self.assertEqual(N.name, "N[abs]")

    def test_time_must_be_positive(self):
        N = fuzzy_from_gyronorm(absolute_gyronorm(rational_additive()), MIN)
        for t in (0, -1, Fraction(-1, 2)):
            with self.assertRaises(DomainError):
                N(Fraction(1), t)

    def test_standard_fuzzy_gyronorm_passes(self):
        nrm = absolute_gyronorm(rational_additive())
        for t in (MIN, PRODUCT, LUKASIEWICZ):
            with self.subTest(tnorm=t.name):
                report = verify_fuzzy_gyronorm(fuzzy_from_gyronorm(nrm, t))
                self.assertTrue(report.passed, report.to_text())
                self.assertIn("min-triangle", report)

    def test_mobius_fuzzy_gyronorm_passes(self):
        nrm = mobius_abs_gyronorm(MobiusGyrogroup())
        report = verify_fuzzy_gyronorm(fuzzy_from_gyronorm(nrm, PRODUCT), n=6)
        self.assertTrue(report.passed, report.to_text())

    def test_float_carrier(self):
        nrm = mobius_abs_gyronorm(MobiusGyrogroup(floating=True))
        N = fuzzy_from_gyronorm(nrm, PRODUCT.as_floating())
        report = verify_fuzzy_gyronorm(N, n=100)
        self.assertTrue(report.passed, report.to_text())

    def test_decreasing_in_t_is_caught(self):
        Q = rational_additive()
        nrm = absolute_gyronorm(Q)
        base = fuzzy_from_gyronorm(nrm, MIN)
        flipped = type(base)(Q, MIN, lambda x, t: 1 / (1 + t * abs(x)), "flipped")
        report = verify_fuzzy_gyronorm(flipped)
        self.assertFalse(report["nondecreasing-in-t"].passed)
        self.assertNotIn("min-triangle", report)

    def test_refinement_oscillation(self):
        coarse, fine = refinement_oscillation(lambda t: t, 0, 1)
        self.assertAlmostEqual(coarse, 1 / 64)
        self.assertAlmostEqual(fine, 1 / 128)
