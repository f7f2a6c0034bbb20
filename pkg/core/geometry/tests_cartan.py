"""
Cartan model tests – equivariant differentials, truncated ranks, the
Cartan map on free circle actions, Hamiltonian data and Γ descent.
"""
from django.test import SimpleTestCase

from core.algebra.exterior import Form, exp_two_form
from core.algebra.scalar import Scalar
from core.exceptions import (
    ActionValidationError,
    DegreeError,
    ExtensionInfeasible,
    GeneratorMismatch,
    NotBasic,
    NotFree,
    PreconditionError,
)
from core.geometry import cartan, gclinear
from core.geometry.cartan import EqForm, TorusAction
from core.geometry.dgamodel import BettiPair, Model, ModelMorphism, twisted_cohomology
from core.testing import random_form, seeded


def e(n, *indices):
    return Form.monomial(n, indices)


def translation(m, direction=1, **kwargs):
    n = m.n_generators
    xi = [[1 if i == direction else 0 for i in range(1, n + 1)]]
    return TorusAction(m, xi, **kwargs)


def random_eqform(rng, k, n, trunc):
    terms = {
        exponents: random_form(rng, n, density=0.4)
        for degree in range(trunc + 1)
        for exponents in cartan.monomials(k, degree)
    }
    return EqForm(k, n, terms, trunc)


class EqFormTest(SimpleTestCase):

    def test_monomials(self):
        self.assertEqual(cartan.monomials(2, 2), [(2, 0), (1, 1), (0, 2)])
        self.assertEqual(cartan.monomials(1, 3), [(3,)])
        self.assertEqual(cartan.monomials(0, 1), [])

    def test_truncation_drops_high_terms(self):
        eta = EqForm(1, 2, {(0,): Form.one(2), (3,): e(2, 1)}, trunc=2)
        self.assertTrue(eta.truncated)
        self.assertEqual(eta.max_degree, 0)

    def test_wedge_adds_exponents(self):
        x = EqForm.monomial((1,), Form.one(2), 3)
        eta = x.wedge(EqForm.monomial((1,), e(2, 1), 3))
        self.assertEqual(eta.component((2,)), e(2, 1))

    def test_printing(self):
        eta = EqForm(1, 2, {(0,): e(2, 1), (1,): Form.one(2) + e(2, 2)}, trunc=2)
        self.assertEqual(str(eta), 'e1 + x1*(1 + e2)')


class ActionValidationTest(SimpleTestCase):

    def test_vector_must_preserve_differential(self):
        heisenberg = Model(3, [Form.zero(3), Form.zero(3), e(3, 1, 2)])
        with self.assertRaises(ActionValidationError):
            translation(heisenberg, 1)
        self.assertEqual(translation(heisenberg, 3).k, 1)

    def test_shapes(self):
        m = Model.torus(2)
        with self.assertRaises(ActionValidationError):
            TorusAction(m, [[1, 0, 0]])
        with self.assertRaises(ActionValidationError):
            TorusAction(m, [])
        with self.assertRaises(DegreeError):
            translation(m, mu_diff=[e(2, 1, 2)])


class EquivariantDifferentialTest(SimpleTestCase):
    """d_G² = 0 and d_{G,H_G}² = 0 on invariant models."""

    def test_d_g_squares_to_zero(self):
        rng = seeded(30)
        cases = (
            translation(Model.torus(3)),
            translation(Model(3, [Form.zero(3), Form.zero(3), e(3, 1, 2)]), 3),
            TorusAction(Model.torus(4), [[1, 0, 0, 0], [0, 1, 0, 0]]),
        )
        for act in cases:
            for _ in range(5):
                eta = random_eqform(rng, act.k, act.model.n_generators, 3)
                twice = cartan.d_equivariant(act, cartan.d_equivariant(act, eta))
                self.assertTrue(twice.is_zero)

    def test_twisted_square_with_basic_twist(self):
        rng = seeded(31)
        act = translation(Model.torus(4, H=e(4, 2, 3, 4)))
        H_G = cartan.equivariant_twist(act, 4)
        for _ in range(5):
            eta = random_eqform(rng, 1, 4, 3)
            once = cartan.d_equivariant_twisted(act, H_G, eta)
            self.assertTrue(cartan.d_equivariant_twisted(act, H_G, once).is_zero)

    def test_non_closed_twist_rejected(self):
        act = translation(Model.torus(3, H=e(3, 1, 2, 3)))
        with self.assertRaises(PreconditionError):
            cartan.equivariant_cohomology(act, trunc=2)

    def test_x_is_exact_for_translations(self):
        act = translation(Model.torus(2))
        theta = EqForm.from_form(e(2, 1), 1, 2)
        self.assertEqual(cartan.d_equivariant(act, theta), EqForm.monomial((1,), -Form.one(2), 2))


class FreeActionRanksTest(SimpleTestCase):
    """Free circle translations: equivariant ranks are those of the quotient."""

    def test_translation_on_tori(self):
        for m_dim in (2, 3, 4):
            act = translation(Model.torus(m_dim))
            expected = twisted_cohomology(Model.torus(m_dim - 1))
            for trunc in (2, 3):
                result = cartan.equivariant_cohomology(act, trunc=trunc)
                self.assertEqual(result.total, BettiPair(expected.even, expected.odd))
                self.assertTrue(result.stable)
                self.assertFalse(result.free)
                self.assertTrue(all(p['even'] == p['odd'] == 0 for p in result.pieces[1:]))

    def test_twisted_translation(self):
        act = translation(Model.torus(4, H=e(4, 2, 3, 4)))
        for trunc in (2, 3):
            result = cartan.equivariant_cohomology(act, trunc=trunc)
            self.assertEqual(result.total, BettiPair(3, 3))
            self.assertTrue(result.stable)


class CartanMapTest(SimpleTestCase):

    def test_flat_connection(self):
        act = translation(Model.torus(4), theta=[e(4, 1)])
        conn = cartan.connection_for(act)
        self.assertEqual(conn.curvature, (Form.zero(4),))
        self.assertTrue(cartan.cartan_map(conn, EqForm.from_form(e(4, 1, 2), 1, 2)).is_zero)
        self.assertEqual(cartan.cartan_map(conn, EqForm.from_form(e(4, 2, 3), 1, 2)), e(4, 2, 3))
        self.assertTrue(cartan.cartan_map(conn, EqForm.monomial((1,), e(4, 2), 2)).is_zero)

    def test_heisenberg_circle_bundle(self):
        m = Model(3, [Form.zero(3), Form.zero(3), e(3, 1, 2)], name='heisenberg')
        act = translation(m, 3)
        conn = cartan.connection_for(act)
        self.assertEqual(conn.theta, (e(3, 3),))
        self.assertEqual(conn.curvature, (e(3, 1, 2),))
        image = cartan.cartan_map(conn, EqForm.monomial((1,), Form.one(3), 2))
        self.assertEqual(image, e(3, 1, 2))
        target = cartan.quotient(conn)
        self.assertEqual(target.model.generator_names, ('e1', 'e2'))
        self.assertTrue(target.model.is_abelian)
        self.assertEqual(target.descend(image), e(2, 1, 2))

    def test_kirwan_identity_restriction(self):
        m = Model.torus(4)
        act = translation(m)
        conn = cartan.connection_for(act)
        eta = EqForm(1, 4, {(0,): e(4, 2, 3) + e(4, 1, 4), (1,): e(4, 4)}, 2)
        image = cartan.kirwan_map(act, conn, ModelMorphism.identity(m), eta)
        self.assertEqual(image, e(3, 1, 2))

    def test_kirwan_rejects_mismatched_forms(self):
        m = Model.torus(4)
        act = translation(m)
        conn = cartan.connection_for(act)
        sub = ModelMorphism.identity(m)
        with self.assertRaises(GeneratorMismatch):
            cartan.kirwan_map(act, conn, sub, EqForm(2, 4, {(0, 0): e(4, 2)}, 2))
        with self.assertRaises(GeneratorMismatch):
            cartan.kirwan_map(act, conn, sub, EqForm(1, 3, {(0,): e(3, 2)}, 2))

    def test_not_free(self):
        act = translation(Model.torus(2))
        with self.assertRaises(NotFree):
            cartan.Connection(act, (e(2, 2),))
        with self.assertRaises(NotFree):
            cartan.connection_for(TorusAction(Model.torus(2), [[0, 0]]))

    def test_not_basic(self):
        conn = cartan.connection_for(translation(Model.torus(3)))
        with self.assertRaises(NotBasic):
            cartan.descend(conn, e(3, 1, 2))


class TwistDescentTest(SimpleTestCase):
    """Γ = θ∧α and the descended twist."""

    def test_three_torus_gamma(self):
        act = translation(Model.torus(3), alpha=[e(3, 2)], theta=[e(3, 1)])
        conn = cartan.connection_for(act)
        gamma = cartan.gamma_from_connection(conn)
        self.assertEqual(gamma, e(3, 1, 2))
        self.assertEqual(act.contract(0, gamma), e(3, 2))
        twist = cartan.descended_twist(conn)
        self.assertTrue(twist.H_tilde.is_zero)
        report = cartan.twisting_class_check(act, conn)
        self.assertTrue(report.ok)
        self.assertEqual(report.details['betti'], [1, 2, 1])
        self.assertEqual(report.details['odd_rank'], 2)

    def test_volume_twist_descends(self):
        act = translation(Model.torus(4, H=e(4, 2, 3, 4)), theta=[e(4, 1)])
        conn = cartan.connection_for(act)
        twist = cartan.descended_twist(conn)
        self.assertEqual(twist.H_tilde, Form.top(3))
        self.assertEqual(twisted_cohomology(twist.quotient.model), BettiPair(3, 3))
        report = cartan.twisting_class_check(act, conn)
        self.assertFalse(report.ok)
        self.assertEqual(report.failures[0].identity, 'H̃ exact on the quotient')

    def test_alpha_must_be_horizontal(self):
        act = translation(Model.torus(3), alpha=[e(3, 1)])
        with self.assertRaises(PreconditionError):
            cartan.gamma_from_connection(cartan.connection_for(act))


class HamiltonianTest(SimpleTestCase):
    """T² with ξ = ∂1, m = e2 and ρ = e^{i e12}."""

    def setUp(self):
        self.m = Model.torus(2)
        self.omega = e(2, 1, 2)
        self.rho = exp_two_form(self.omega * Scalar.i())
        self.act = translation(self.m, mu_diff=[e(2, 2)])

    def test_check_passes(self):
        report = cartan.hamiltonian_check(self.act, self.rho)
        self.assertTrue(report.ok, report.failures)

    def test_check_fails_without_moment(self):
        report = cartan.hamiltonian_check(translation(self.m), self.rho)
        self.assertFalse(report.ok)
        failure = report.failures[0]
        self.assertEqual(failure.identity, '(−ξ1 + i(m1 + iα1))·ρ = 0')
        self.assertEqual(failure.residual, -e(2, 2) * Scalar.i())

    def test_extension_is_closed(self):
        for trunc in (1, 2, 3):
            extension = cartan.equivariant_extension(self.act, self.rho, trunc)
            self.assertTrue(extension.ok)

    def test_exp_i_mu_series(self):
        series = cartan.exp_i_mu(self.act, 2)
        mu = Scalar.parameter('mu1')
        self.assertEqual(series.component((1,)), Form.scalar(2, Scalar.i() * mu))
        self.assertEqual(series.component((2,)), Form.scalar(2, mu * mu * Scalar.of(-1) / 2))

    def test_moment_differential_squares_to_zero(self):
        self.assertTrue(cartan.moment_differential_residual(self.act).ok)

    def test_conjugation_identity(self):
        rng = seeded(32)
        for _ in range(5):
            gamma = random_eqform(rng, 1, 2, 2)
            self.assertTrue(cartan.conjugation_residual(self.act, gamma).is_zero)

    def test_canonical_extension_of_spinor(self):
        J = gclinear.symplectic_structure(self.omega)
        result = cartan.canonical_extension(self.act, J, self.m, self.rho, trunc=2)
        self.assertEqual(result, EqForm.from_form(self.rho, 1, 2))
        self.assertTrue(cartan.moment_differential(self.act, result).is_zero)

    def test_canonical_extension_infeasible(self):
        J = gclinear.symplectic_structure(self.omega)
        with self.assertRaises(ExtensionInfeasible):
            cartan.canonical_extension(self.act, J, self.m, Form.one(2), trunc=2)


class FormalityPatternTest(SimpleTestCase):
    """Trivial Hamiltonian data on tori: ranks form a free C[x]-module."""

    def test_free_pattern(self):
        for n, omega in ((2, e(2, 1, 2)), (4, e(4, 1, 2) + e(4, 3, 4))):
            m = Model.torus(n)
            act = TorusAction(m, [[0] * n])
            rho = exp_two_form(omega * Scalar.i())
            J = gclinear.symplectic_structure(omega)
            self.assertTrue(cartan.hamiltonian_check(act, rho).ok)
            for trunc in (2, 3):
                plain = cartan.equivariant_cohomology(act, trunc=trunc)
                moment = cartan.generalized_equivariant_cohomology(act, trunc=trunc)
                self.assertTrue(plain.free)
                self.assertTrue(moment.free)
                self.assertTrue(moment.stable)
                extension = cartan.canonical_extension(act, J, m, rho, trunc=trunc)
                self.assertTrue(cartan.moment_differential(act, extension).is_zero)
