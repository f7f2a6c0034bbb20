"""
Generalized Calabi–Yau and Duistermaat–Heckman tests.
"""
from django.test import SimpleTestCase

from core.algebra.exterior import Form, exp_two_form, reversal, wedge
from core.algebra.scalar import Scalar
from core.exceptions import (
    CalabiYauError,
    DegenerateForm,
    DegreeBoundViolated,
    PreconditionError,
)
from core.geometry import gcydh
from core.geometry.dgamodel import Model
from core.modelfile import load_model
from core.testing import model_path


def e(n, *indices):
    return Form.monomial(n, indices)


def standard_omega(n):
    omega = Form.zero(2 * n)
    for j in range(1, n + 1):
        omega = omega + e(2 * n, 2 * j - 1, 2 * j)
    return omega


class QuotientFamilyTest(SimpleTestCase):
    """The two quotient families over the reduced four-torus."""

    def setUp(self):
        self.t = Scalar.parameter('t')
        self.m = Model.torus(4)
        self.c = e(4, 1, 2)
        self.dz1 = e(4, 1) + e(4, 2) * Scalar.i()
        self.dz2 = e(4, 3) + e(4, 4) * Scalar.i()

    def test_first_family_pairing(self):
        rho = wedge(exp_two_form(self.c * -Scalar.i()), self.dz2)
        family = gcydh.quotient_family(self.m, rho, self.c, 't', n=3, k=1)
        expected = (self.t + 1) * 4
        self.assertEqual(wedge(reversal(family.rho), family.rho.conjugate()), Form.top(4, expected))
        self.assertEqual(gcydh.pairing_polynomial(family.structure), expected)
        self.assertEqual(family.structure.type, 1)

    def test_second_family_is_constant(self):
        rho = wedge(self.dz1, self.dz2)
        family = gcydh.quotient_family(self.m, rho, self.c, 't', n=3, k=1)
        self.assertEqual(family.rho, rho)
        self.assertEqual(wedge(reversal(rho), rho.conjugate()), Form.top(4, -4))
        self.assertEqual(family.structure.type, 2)

    def test_normalization(self):
        self.assertEqual(gcydh.dh_normalization(3, 1), Scalar.pi() * Scalar.of(-1) / 2)

    def test_densities_from_fixtures(self):
        first = load_model(model_path('t4_rho1')).family('f1')
        second = load_model(model_path('t4_rho2')).family('f2')
        result = gcydh.dh_density(first)
        self.assertEqual(result.density.factored(), '-2*pi*(t+1)')
        self.assertEqual(result.degree_bound, 2)
        self.assertEqual(result.diagnostics, [])
        result = gcydh.dh_density(second)
        self.assertEqual(result.orientation, -1)
        self.assertEqual(result.density.factored(), '-2*pi')

    def test_orientation_flag_overrides_model(self):
        second = load_model(model_path('t4_rho2')).family('f2')
        self.assertEqual(gcydh.dh_density(second, orientation=1).density.factored(), '2*pi')

    def test_b_transform_keeps_density(self):
        rho = wedge(exp_two_form(self.c * -Scalar.i()), self.dz2)
        family = gcydh.quotient_family(self.m, rho, self.c, 't', n=3, k=1)
        for B in (e(4, 3, 4), e(4, 1, 3) * 2 - e(4, 2, 4)):
            moved = gcydh.b_transform_family(family, B)
            self.assertEqual(gcydh.dh_density(moved).density, gcydh.dh_density(family).density)
        with self.assertRaises(PreconditionError):
            gcydh.b_transform_family(family, e(4, 1, 3) * self.t)

    def test_degree_bound(self):
        rho = wedge(exp_two_form(self.c * -Scalar.i()), self.dz2)
        family = gcydh.quotient_family(self.m, rho, self.c, 't', n=3, k=1, type=2)
        with self.assertRaises(DegreeBoundViolated):
            gcydh.dh_density(family)

    def test_dimension_mismatch(self):
        family = gcydh.quotient_family(self.m, wedge(self.dz1, self.dz2), self.c, 't')
        with self.assertRaises(PreconditionError):
            gcydh.dh_density(family)
        with self.assertRaises(PreconditionError):
            gcydh.dh_density(family, n=2, k=1)

    def test_c_must_be_closed(self):
        kt = Model(4, [Form.zero(4), Form.zero(4), e(4, 1, 2), Form.zero(4)])
        with self.assertRaises(PreconditionError):
            gcydh.quotient_family(kt, wedge(self.dz1, e(4, 4)), e(4, 3, 4), 't')


class CalabiYauTest(SimpleTestCase):

    def test_volume_form_of_symplectic_spinor(self):
        for n in (1, 2, 3):
            omega = standard_omega(n)
            structure = gcydh.gcy_check(Model.torus(2 * n), exp_two_form(omega * Scalar.i()))
            self.assertEqual(structure.type, 0)
            self.assertEqual(gcydh.volume_form(structure), exp_two_form(omega).homogeneous_part(2 * n))

    def test_rejections(self):
        with self.assertRaises(CalabiYauError):
            gcydh.gcy_check(Model.torus(3), Form.one(3))
        with self.assertRaises(CalabiYauError):
            gcydh.gcy_check(Model.torus(2), Form.one(2))
        with self.assertRaises(CalabiYauError):
            gcydh.gcy_check(Model.torus(4), Form.one(4) + e(4, 1, 2, 3, 4))
        kt = Model(4, [Form.zero(4), Form.zero(4), e(4, 1, 2), Form.zero(4)])
        with self.assertRaises(CalabiYauError):
            gcydh.gcy_check(kt, exp_two_form(standard_omega(2) * Scalar.i()))

    def test_pairing_vanishing_at_a_sample(self):
        t = Scalar.parameter('t')
        rho = Form.one(2) + e(2, 1, 2) * (t * Scalar.i())
        with self.assertRaises(CalabiYauError):
            gcydh.gcy_check(Model.torus(2), rho, samples={'t': (0, 1)})
        self.assertEqual(gcydh.gcy_check(Model.torus(2), rho, samples={'t': (1, 2)}).type, 0)

    def test_missing_samples(self):
        t = Scalar.parameter('t')
        rho = Form.one(2) + e(2, 1, 2) * ((t + 1) * Scalar.i())
        with self.assertRaises(CalabiYauError):
            gcydh.gcy_check(Model.torus(2), rho, samples={})


class LefschetzTest(SimpleTestCase):

    def test_standard_forms(self):
        for n in (1, 2, 3):
            report = gcydh.lefschetz_check(Model.torus(2 * n), standard_omega(n))
            self.assertTrue(report.ok)
            self.assertEqual(report.details['rank'], 2 * n)

    def test_degenerate(self):
        with self.assertRaises(DegenerateForm) as ctx:
            gcydh.lefschetz_check(Model.torus(4), e(4, 1, 2))
        self.assertEqual(ctx.exception.detail, 'e1')
        with self.assertRaises(DegenerateForm) as ctx:
            gcydh.lefschetz_check(Model.torus(2), Form.zero(2))
        self.assertEqual(ctx.exception.message, 'ω^n vanishes')
        with self.assertRaises(DegenerateForm):
            gcydh.lefschetz_check(Model.torus(3), e(3, 1, 2))
