"""
Exterior algebra tests – wedge, contraction, reversal, Mukai pairing and
the Clifford action, with randomized property suites.
"""
from django.test import SimpleTestCase

from core.algebra.exterior import (
    Form,
    basis,
    clifford,
    contract,
    exp_two_form,
    integrate,
    mukai,
    operator_matrix,
    pairing,
    reversal,
    wedge,
)
from core.algebra.scalar import ONE, Scalar
from core.exceptions import DegreeError, GeneratorMismatch, IndexOutOfRange
from core.testing import random_form, random_homogeneous, random_vector, seeded


def e(n, *indices):
    return Form.monomial(n, indices)


class FormBasicsTest(SimpleTestCase):
    """Construction, canonical order and error cases."""

    def test_canonical_basis_order(self):
        self.assertEqual(basis(2), (0b00, 0b01, 0b10, 0b11))
        self.assertEqual(basis(3)[4:], (0b011, 0b101, 0b110, 0b111))

    def test_vector_round_trip(self):
        form = e(3, 1) * Scalar.i() + e(3, 2, 3) * 2
        self.assertEqual(Form.from_vector(3, form.to_vector()), form)

    def test_monomial_applies_sign(self):
        self.assertEqual(e(3, 2, 1), -e(3, 1, 2))
        self.assertTrue(e(3, 1, 1).is_zero)

    def test_index_out_of_range(self):
        with self.assertRaises(IndexOutOfRange):
            Form.generator(2, 3)
        with self.assertRaises(IndexOutOfRange):
            Form(2, {0b100: 1})

    def test_generator_mismatch(self):
        with self.assertRaises(GeneratorMismatch):
            e(2, 1) + e(3, 1)
        with self.assertRaises(GeneratorMismatch):
            wedge(e(2, 1), e(3, 1))

    def test_parts(self):
        form = Form.one(3) + e(3, 1) + e(3, 1, 2) + e(3, 1, 2, 3)
        self.assertEqual(form.degrees, [0, 1, 2, 3])
        self.assertEqual(form.homogeneous_part(2), e(3, 1, 2))
        self.assertEqual(form.parity_part(1), e(3, 1) + e(3, 1, 2, 3))
        self.assertIsNone(form.parity)
        self.assertEqual(e(3, 1, 2).parity, 0)

    def test_printing(self):
        form = e(2, 1) * Scalar.i() + e(2, 1, 2)
        self.assertEqual(str(form), 'i*e1 + e1^e2')
        self.assertEqual(str(Form.zero(2)), '0')
        self.assertEqual(str(-e(2, 2) + e(2, 1) * (Scalar.parameter('t') + 1)), '(t + 1)*e1 - e2')

    def test_parameters_and_substitute(self):
        t = Scalar.parameter('t')
        form = e(2, 1) * t + e(2, 2)
        self.assertEqual(form.parameters, ('t',))
        self.assertFalse(form.is_constant)
        self.assertEqual(form.substitute({'t': 2}), e(2, 1) * 2 + e(2, 2))


class WedgeContractionTest(SimpleTestCase):
    """Graded commutativity and the antiderivation rule for ι."""

    def test_graded_commutativity(self):
        rng = seeded(10)
        for _ in range(30):
            n = rng.randint(2, 5)
            p, q = rng.randint(0, n), rng.randint(0, n)
            a = random_homogeneous(rng, n, p)
            b = random_homogeneous(rng, n, q)
            sign = -1 if (p * q) % 2 else 1
            self.assertEqual(wedge(a, b), wedge(b, a) * sign)

    def test_contraction_is_antiderivation(self):
        rng = seeded(11)
        for _ in range(30):
            n = rng.randint(2, 5)
            p = rng.randint(0, n)
            a = random_homogeneous(rng, n, p)
            b = random_form(rng, n, density=0.4)
            i = rng.randint(1, n)
            sign = -1 if p % 2 else 1
            expected = wedge(contract(i, a), b) + wedge(a, contract(i, b)) * sign
            self.assertEqual(contract(i, wedge(a, b)), expected)

    def test_contract_generators(self):
        self.assertEqual(contract(1, e(2, 1, 2)), e(2, 2))
        self.assertEqual(contract(2, e(2, 1, 2)), -e(2, 1))

    def test_operator_matrix_of_wedge(self):
        matrix = operator_matrix(2, lambda form: wedge(e(2, 1), form))
        column_of_e2 = [row[2] for row in matrix]
        self.assertEqual(Form.from_vector(2, column_of_e2), e(2, 1, 2))


class ReversalExponentialTest(SimpleTestCase):
    """σ is an anti-automorphism; exp turns sums of 2-forms into products."""

    def test_reversal_signs(self):
        self.assertEqual(reversal(e(3, 1)), e(3, 1))
        self.assertEqual(reversal(e(3, 1, 2)), -e(3, 1, 2))
        self.assertEqual(reversal(e(3, 1, 2, 3)), -e(3, 1, 2, 3))
        self.assertEqual(reversal(e(4, 1, 2, 3, 4)), e(4, 1, 2, 3, 4))

    def test_reversal_reverses_products(self):
        rng = seeded(12)
        for _ in range(25):
            n = rng.randint(2, 5)
            a = random_form(rng, n, density=0.4)
            b = random_form(rng, n, density=0.4)
            self.assertEqual(reversal(wedge(a, b)), wedge(reversal(b), reversal(a)))

    def test_exp_of_sum(self):
        rng = seeded(13)
        for _ in range(20):
            n = rng.randint(2, 6)
            b1 = random_homogeneous(rng, n, 2, density=0.3)
            b2 = random_homogeneous(rng, n, 2, density=0.3)
            self.assertEqual(exp_two_form(b1 + b2), wedge(exp_two_form(b1), exp_two_form(b2)))

    def test_exp_needs_two_form(self):
        with self.assertRaises(DegreeError):
            exp_two_form(e(3, 1))

    def test_exp_symplectic(self):
        omega = e(4, 1, 2) + e(4, 3, 4)
        self.assertEqual(exp_two_form(omega), Form.one(4) + omega + e(4, 1, 2, 3, 4))


class MukaiPairingTest(SimpleTestCase):
    """(e^B a, e^B b) = (a, b) on 2, 4, 6 and 8 generators."""

    CASES_PER_SIZE = 50

    def test_b_invariance(self):
        rng = seeded(14)
        checked = 0
        for n, density, b_density in ((2, 0.8, 1.0), (4, 0.5, 0.6), (6, 0.2, 0.3), (8, 0.06, 0.12)):
            for _ in range(self.CASES_PER_SIZE):
                a = random_form(rng, n, density=density)
                b = random_form(rng, n, density=density)
                B = random_homogeneous(rng, n, 2, density=b_density)
                shear = exp_two_form(B)
                self.assertEqual(mukai(wedge(shear, a), wedge(shear, b)), mukai(a, b))
                checked += 1
        self.assertGreaterEqual(checked, 200)

    def test_pairing_is_top_part(self):
        a = e(2, 1)
        b = e(2, 2)
        self.assertEqual(mukai(a, b), ONE)
        self.assertEqual(mukai(b, a), -ONE)

    def test_symplectic_spinor(self):
        rho = exp_two_form(e(2, 1, 2) * Scalar.i())
        self.assertEqual(mukai(rho, rho.conjugate()), Scalar.gaussian(0, -2))

    def test_integrate_orientation(self):
        top = Form.top(4, 3)
        self.assertEqual(integrate(top), 3)
        self.assertEqual(integrate(top, volume=2, orientation=-1), -6)


class CliffordRelationTest(SimpleTestCase):
    """(X + ξ)·(X + ξ)·φ = ξ(X)·φ."""

    def test_square_is_pairing(self):
        rng = seeded(15)
        for case in range(200):
            n = 1 + case % 5
            v = random_vector(rng, 2 * n)
            phi = random_form(rng, n, density=0.5)
            self.assertEqual(clifford(v, clifford(v, phi)), phi * pairing(v, v))

    def test_pairing_value(self):
        v = [1, 0, 0, 3]
        self.assertEqual(pairing(v, v), 0)
        w = [2, 0, 5, 0]
        self.assertEqual(pairing(w, w), 10)

    def test_length_mismatch(self):
        with self.assertRaises(GeneratorMismatch):
            clifford([1, 0, 0], e(2, 1))
