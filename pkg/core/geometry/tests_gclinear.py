"""
Generalized complex linear algebra tests on ℝ² and ℝ⁴.
"""
from math import comb

from django.test import SimpleTestCase

from core.algebra import linalg
from core.algebra.exterior import Form, exp_two_form, wedge
from core.algebra.scalar import Scalar
from core.exceptions import InvalidStructure
from core.geometry import gclinear

ROTATION = [[0, -1], [1, 0]]
ANTI_ROTATION = [[0, 1], [-1, 0]]
KT_COMPLEX = [[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]]


def e(n, *indices):
    return Form.monomial(n, indices)


class ConstructorTest(SimpleTestCase):

    def test_symplectic_is_valid(self):
        for omega in (e(2, 1, 2), e(4, 1, 2) + e(4, 3, 4), e(4, 1, 3) - e(4, 2, 4) * 3):
            J = gclinear.symplectic_structure(omega)
            self.assertTrue(gclinear.validate(J).ok)

    def test_degenerate_symplectic_rejected(self):
        with self.assertRaises(InvalidStructure):
            gclinear.symplectic_structure(e(4, 1, 2))

    def test_complex_needs_square_minus_one(self):
        with self.assertRaises(InvalidStructure):
            gclinear.complex_structure([[1, 0], [0, 1]])

    def test_from_rows_shape(self):
        with self.assertRaises(InvalidStructure):
            gclinear.GCMap.from_rows([[0, 1, 0], [1, 0, 0], [0, 0, 1]])

    def test_identity_fails_validation(self):
        J = gclinear.GCMap.from_rows(linalg.identity(4))
        report = gclinear.validate(J)
        self.assertFalse(report.ok)
        self.assertEqual(report.failures[0].identity, 'J^2 = -1')
        with self.assertRaises(InvalidStructure):
            gclinear.i_eigenspace(J)

    def test_b_transform_of_zero_is_identity(self):
        J = gclinear.symplectic_structure(e(2, 1, 2))
        self.assertIs(gclinear.b_transform(J, Form.zero(2)), J)


class EigenspaceTest(SimpleTestCase):
    """+i eigenspaces, types and pure spinors."""

    def test_symplectic_type_and_spinor(self):
        omega = e(2, 1, 2)
        J = gclinear.symplectic_structure(omega)
        L = gclinear.i_eigenspace(J)
        self.assertEqual(L.rank, 2)
        self.assertEqual(gclinear.type_of(J), 0)
        self.assertEqual(gclinear.pure_spinor(L), exp_two_form(omega * Scalar.i()))

    def test_complex_type_and_spinor(self):
        J = gclinear.complex_structure(ROTATION)
        self.assertEqual(gclinear.type_of(J), 1)
        spinor = gclinear.pure_spinor(gclinear.i_eigenspace(J))
        self.assertEqual(spinor, e(2, 1) + e(2, 2) * Scalar.i())

    def test_types_on_r4(self):
        symplectic = gclinear.symplectic_structure(e(4, 1, 2) + e(4, 3, 4))
        self.assertEqual(gclinear.type_of(symplectic), 0)
        self.assertEqual(gclinear.type_of(gclinear.complex_structure(KT_COMPLEX)), 2)
        mixed = gclinear.direct_sum(
            gclinear.symplectic_structure(e(2, 1, 2)), gclinear.complex_structure(ROTATION),
        )
        self.assertTrue(gclinear.validate(mixed).ok)
        self.assertEqual(gclinear.type_of(mixed), 1)

    def test_b_transform_moves_the_spinor(self):
        omega = e(2, 1, 2)
        B = e(2, 1, 2) * 2
        J = gclinear.b_transform(gclinear.symplectic_structure(omega), B)
        self.assertTrue(gclinear.validate(J).ok)
        self.assertEqual(gclinear.type_of(J), 0)
        moved = wedge(exp_two_form(-B), exp_two_form(omega * Scalar.i()))
        self.assertTrue(gclinear.spinor_annihilated(gclinear.i_eigenspace(J), moved))

    def test_eigenspace_is_isotropic(self):
        J = gclinear.complex_structure(KT_COMPLEX)
        vectors = gclinear.i_eigenspace(J).vectors()
        for u in vectors:
            for v in vectors:
                self.assertEqual(gclinear.pair(u, v), linalg.ZERO)


class AnnihilatorTest(SimpleTestCase):

    def test_pure_spinor_annihilator(self):
        rho = exp_two_form(e(2, 1, 2) * Scalar.i())
        result = gclinear.annihilator(rho)
        self.assertTrue(result.is_maximal_isotropic)
        self.assertTrue(result.nondegenerate)
        self.assertTrue(result.transverse)

    def test_unit_is_degenerate(self):
        result = gclinear.annihilator(Form.one(2))
        self.assertTrue(result.is_maximal_isotropic)
        self.assertFalse(result.nondegenerate)
        self.assertFalse(result.transverse)

    def test_zero_rejected(self):
        with self.assertRaises(InvalidStructure):
            gclinear.annihilator(Form.zero(2))

    def test_annihilator_of_a_covector(self):
        # e1 on R^2 is killed by d2 (contraction) and by e1 (wedge)
        result = gclinear.annihilator(e(2, 1))
        O, I = linalg.ZERO, linalg.ONE
        expected = gclinear.IsotropicSubspace(2, ((O, I, O, O), (O, O, I, O)))
        self.assertTrue(result.subspace.equals(expected))
        self.assertTrue(result.is_maximal_isotropic)

    def test_annihilator_of_pure_spinor_is_the_eigenspace(self):
        for J in (
            gclinear.symplectic_structure(e(2, 1, 2)),
            gclinear.complex_structure(ROTATION),
            gclinear.symplectic_structure(e(4, 1, 2) + e(4, 3, 4)),
            gclinear.complex_structure(KT_COMPLEX),
            gclinear.b_transform(gclinear.complex_structure(KT_COMPLEX), e(4, 1, 3)),
            gclinear.b_transform(gclinear.symplectic_structure(e(4, 1, 3) + e(4, 2, 4)), e(4, 1, 2)),
        ):
            L = gclinear.i_eigenspace(J)
            found = gclinear.annihilator(gclinear.pure_spinor(L)).subspace
            self.assertEqual(found.rank, L.rank)
            self.assertTrue(found.equals(L))


class GradingTest(SimpleTestCase):
    """dim U^k = C(2n, n−k) and U^n is the pure-spinor line."""

    def _check(self, J):
        n = J.half_dim
        pieces = gclinear.uk_grading(J)
        self.assertEqual([p.k for p in pieces], list(range(-n, n + 1)))
        self.assertEqual([p.dimension for p in pieces], [comb(2 * n, n - k) for k in range(-n, n + 1)])
        spinor = gclinear.pure_spinor(gclinear.i_eigenspace(J))
        top = gclinear.basis_forms(pieces[-1], J.dim)
        self.assertEqual(len(top), 1)
        self.assertTrue(linalg.span_equal([top[0].to_vector()], [spinor.to_vector()]))
        return pieces

    def test_symplectic_r2(self):
        self._check(gclinear.symplectic_structure(e(2, 1, 2)))

    def test_complex_r2(self):
        pieces = self._check(gclinear.complex_structure(ROTATION))
        self.assertEqual([p.dimension for p in pieces], [1, 2, 1])

    def test_r4_structures(self):
        for J in (
            gclinear.symplectic_structure(e(4, 1, 2) + e(4, 3, 4)),
            gclinear.complex_structure(KT_COMPLEX),
            gclinear.b_transform(gclinear.complex_structure(KT_COMPLEX), e(4, 1, 3)),
        ):
            pieces = self._check(J)
            self.assertEqual([p.dimension for p in pieces], [1, 4, 6, 4, 1])


class KahlerTest(SimpleTestCase):

    def test_symplectic_and_complex_pair(self):
        J1 = gclinear.complex_structure(ANTI_ROTATION)
        J2 = gclinear.symplectic_structure(e(2, 1, 2))
        report = gclinear.kahler_check(J1, J2)
        self.assertTrue(report.ok, report.failures)
        self.assertEqual(len(report.details['minors']), 4)

    def test_wrong_orientation_is_indefinite(self):
        J1 = gclinear.complex_structure(ROTATION)
        J2 = gclinear.symplectic_structure(e(2, 1, 2))
        report = gclinear.kahler_check(J1, J2)
        self.assertFalse(report.ok)
        self.assertEqual(report.failures[-1].identity, '<-J1 J2 ., .> positive definite')

    def test_symplectic_with_itself_is_not_positive(self):
        J = gclinear.symplectic_structure(e(2, 1, 2))
        report = gclinear.kahler_check(J, J)
        self.assertFalse(report.ok)
        self.assertEqual(report.failures[-1].identity, '<-J1 J2 ., .> positive definite')

    def test_non_commuting(self):
        J1 = gclinear.complex_structure(KT_COMPLEX)
        J2 = gclinear.symplectic_structure(e(4, 1, 3) + e(4, 2, 4))
        report = gclinear.kahler_check(J1, J2)
        self.assertFalse(report.ok)
        self.assertEqual(report.failures[0].identity, 'J1 J2 = J2 J1')
