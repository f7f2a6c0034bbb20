"""
Scalar tests – exact Gaussian-rational polynomials with a formal pi.
"""
from fractions import Fraction

from django.test import SimpleTestCase

from core.algebra.scalar import ONE, ZERO, Scalar
from core.exceptions import DivisionError, NonConstantError


class ScalarArithmeticTest(SimpleTestCase):
    """Ring operations and normal forms."""

    def setUp(self):
        self.t = Scalar.parameter('t')
        self.s = Scalar.parameter('s')
        self.i = Scalar.i()

    def test_imaginary_unit_squares_to_minus_one(self):
        self.assertEqual(self.i * self.i, -ONE)

    def test_difference_of_squares(self):
        self.assertEqual((self.t + 1) * (self.t - 1), self.t ** 2 - 1)

    def test_parameters_merge_across_rings(self):
        value = self.t * self.s + self.s
        self.assertEqual(value.parameters, ('s', 't'))
        self.assertEqual(value - self.t * self.s, self.s)
        self.assertEqual((value - value).parameters, ())

    def test_division_by_constant(self):
        half = ONE / 2
        self.assertEqual(half + half, ONE)
        self.assertEqual(Scalar.gaussian(0, 2) / Scalar.gaussian(0, 2), ONE)

    def test_division_by_parameter_rejected(self):
        with self.assertRaises(DivisionError):
            ONE / self.t

    def test_division_by_zero_rejected(self):
        with self.assertRaises(DivisionError):
            ONE / ZERO

    def test_pi_is_formal(self):
        pi = Scalar.pi()
        self.assertFalse(pi.is_constant)
        self.assertEqual(pi.pi_power, 1)
        self.assertEqual((pi * pi).pi_power, 2)
        with self.assertRaises(NonConstantError):
            pi.to_gaussian()

    def test_mixed_pi_powers(self):
        self.assertIsNone((Scalar.pi() + 1).pi_power)


class ScalarOperationsTest(SimpleTestCase):
    """Conjugation, substitution, derivatives and printing."""

    def setUp(self):
        self.t = Scalar.parameter('t')

    def test_conjugate_keeps_parameters_real(self):
        value = Scalar.i() * self.t + 3
        self.assertEqual(value.conjugate(), -Scalar.i() * self.t + 3)
        self.assertTrue((value * value.conjugate()).is_real)

    def test_substitute(self):
        value = self.t ** 2 + Scalar.i() * self.t
        self.assertEqual(value.substitute({'t': 2}), Scalar.gaussian(4, 2))
        self.assertEqual(value.substitute({'t': Fraction(1, 2)}), Scalar.gaussian(Fraction(1, 4), Fraction(1, 2)))
        self.assertEqual(value.substitute({'u': 1}), value)

    def test_diff(self):
        value = self.t ** 3 + self.t
        self.assertEqual(value.diff('t'), self.t ** 2 * 3 + 1)
        self.assertEqual(value.diff('mu1'), ZERO)

    def test_degree_in(self):
        self.assertEqual((self.t ** 2 + 1).degree_in('t'), 2)
        self.assertEqual(Scalar.of(5).degree_in('t'), 0)

    def test_factored_density(self):
        density = Scalar.of(-2) * Scalar.pi() * (self.t + 1)
        self.assertEqual(density.factored(), '-2*pi*(t+1)')

    def test_str_uses_i(self):
        self.assertEqual(str(Scalar.i()), 'i')
        self.assertEqual(str(Scalar.of(Fraction(-1, 2)) * Scalar.pi()), '-pi/2')

    def test_reserved_parameter_names(self):
        for name in ('pi', 'i', 'exp'):
            with self.assertRaises(ValueError):
                Scalar.parameter(name)

    def test_equality_with_ints(self):
        self.assertEqual(Scalar.of(3), 3)
        self.assertNotEqual(self.t, 0)
        self.assertEqual(hash(Scalar.of(3)), hash(Scalar.of(1) + 2))
