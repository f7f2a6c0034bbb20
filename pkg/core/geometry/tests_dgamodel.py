"""
DGA model tests – differentials, twisted cohomology against a dense sympy
oracle, the exp(λ) isomorphism, σ-closedness and the ∂̄∂-lemma check.
"""
import sympy
from django.test import SimpleTestCase
from sympy.polys.domains import QQ_I

from core.algebra import linalg
from core.algebra.exterior import Form, basis, mask_indices, parity_basis, reversal
from core.algebra.scalar import Scalar
from core.exceptions import (
    D_SQUARED_NONZERO,
    H_NOT_CLOSED,
    IntegrabilityError,
    ModelValidationError,
    PreconditionError,
)
from core.geometry import dgamodel, gclinear
from core.geometry.dgamodel import BettiPair, Model, ModelMorphism
from core.modelfile import load_model
from core.testing import MODELS, model_path, random_homogeneous, random_scalar, seeded


def e(n, *indices):
    return Form.monomial(n, indices)


def heisenberg(H=None):
    return Model(3, [Form.zero(3), Form.zero(3), e(3, 1, 2)], H=H, name='heisenberg')


def kodaira_thurston(H=None):
    return Model(4, [Form.zero(4), Form.zero(4), e(4, 1, 2), Form.zero(4)], H=H, name='kt')


def random_closed(rng, m, kernel):
    """Random combination of a basis of ker d_H."""
    total = Form.zero(m.n_generators)
    for vector in kernel:
        total = total + Form.from_vector(m.n_generators, vector) * random_scalar(rng)
    return total


def kernel_of(m):
    return linalg.nullspace(m.d_twisted_matrix, 1 << m.n_generators)


# ── Oracle ───────────────────────────────────────────────────────────

def _inversions(sequence):
    return sum(
        1 for a in range(len(sequence)) for b in range(a + 1, len(sequence))
        if sequence[a] > sequence[b]
    )


def oracle_torus_cohomology(n, H_terms):
    """
    (even, odd) ranks of d_H = −H∧ on the flat n-torus, built as a dense
    sympy matrix with signs from inversion counts.
    """
    masks = sorted(range(1 << n), key=lambda mask: (bin(mask).count('1'), mask_indices(mask)))
    position = {mask: p for p, mask in enumerate(masks)}
    matrix = sympy.zeros(len(masks), len(masks))
    for col, mask in enumerate(masks):
        for indices, coeff in H_terms.items():
            h_mask = sum(1 << (i - 1) for i in indices)
            if h_mask & mask:
                continue
            sign = -1 if _inversions(list(indices) + list(mask_indices(mask))) % 2 else 1
            matrix[position[h_mask | mask], col] -= sign * coeff
    columns = {
        parity: [c for c, mask in enumerate(masks) if bin(mask).count('1') % 2 == parity]
        for parity in (0, 1)
    }
    ranks = {parity: matrix.extract(list(range(len(masks))), cols).rank() for parity, cols in columns.items()}
    dims = {parity: len(cols) for parity, cols in columns.items()}
    return dims[0] - ranks[0] - ranks[1], dims[1] - ranks[0] - ranks[1]


class ModelValidationTest(SimpleTestCase):

    def test_rejects_non_closed_twist(self):
        with self.assertRaises(ModelValidationError) as ctx:
            Model(5, [Form.zero(5), Form.zero(5), e(5, 1, 2), Form.zero(5), Form.zero(5)], H=e(5, 3, 4, 5))
        self.assertEqual(ctx.exception.code, H_NOT_CLOSED)

    def test_rejects_d_squared_nonzero(self):
        table = [e(5, 2, 3), Form.zero(5), Form.zero(5), e(5, 1, 5), Form.zero(5)]
        with self.assertRaises(ModelValidationError) as ctx:
            Model(5, table)
        self.assertEqual(ctx.exception.code, D_SQUARED_NONZERO)

    def test_rejects_wrong_degrees(self):
        with self.assertRaises(ModelValidationError):
            Model(3, [e(3, 2), Form.zero(3), Form.zero(3)])
        with self.assertRaises(ModelValidationError):
            Model.torus(3, H=e(3, 1, 2))
        with self.assertRaises(ModelValidationError):
            Model.torus(3, orientation=2)

    def test_bad_fixture_is_rejected(self):
        with self.assertRaises(ModelValidationError) as ctx:
            load_model(model_path('bad'))
        self.assertEqual(ctx.exception.code, H_NOT_CLOSED)

    def test_shipped_models_square_to_zero(self):
        for path in sorted(MODELS.glob('*.model')):
            if path.stem == 'bad':
                continue
            m = load_model(path).model
            n = m.n_generators
            for mask in basis(n):
                form = Form(n, {mask: 1})
                self.assertTrue(m.d(m.d(form)).is_zero, (path.stem, mask))
                self.assertTrue(m.d_twisted(m.d_twisted(form)).is_zero, (path.stem, mask))

    def test_heisenberg_differential(self):
        m = heisenberg()
        self.assertEqual(m.d(e(3, 3)), e(3, 1, 2))
        self.assertTrue(m.d(e(3, 2, 3)).is_zero)
        self.assertTrue(m.d(e(3, 1, 3)).is_zero)
        self.assertFalse(m.is_abelian)


class TwistedCohomologyTest(SimpleTestCase):

    def test_three_torus(self):
        self.assertEqual(dgamodel.twisted_cohomology(Model.torus(3)), BettiPair(4, 4))
        self.assertEqual(dgamodel.twisted_cohomology(Model.torus(3, H=e(3, 1, 2, 3))), BettiPair(3, 3))

    def test_oracle_on_three_torus(self):
        self.assertEqual(oracle_torus_cohomology(3, {}), (4, 4))
        self.assertEqual(oracle_torus_cohomology(3, {(1, 2, 3): 1}), (3, 3))

    def test_random_twists_match_oracle(self):
        rng = seeded(20)
        for _ in range(12):
            n = rng.choice((4, 5))
            H = random_homogeneous(rng, n, 3, density=0.4, gaussian=False)
            terms = {
                mask_indices(mask): QQ_I.to_sympy(coeff.to_gaussian())
                for mask, coeff in H.items()
            }
            result = dgamodel.twisted_cohomology(Model.torus(n, H=H))
            self.assertEqual((result.even, result.odd), oracle_torus_cohomology(n, terms))

    def test_euler_characteristic_ignores_twist(self):
        for m in (Model.torus(3, H=e(3, 1, 2, 3)), heisenberg(e(3, 1, 2, 3)), kodaira_thurston(e(4, 1, 3, 4))):
            twisted = dgamodel.twisted_cohomology(m)
            plain = dgamodel.twisted_cohomology(m.with_twist(Form.zero(m.n_generators)))
            self.assertEqual(twisted.euler_characteristic, plain.euler_characteristic)

    def test_betti_numbers(self):
        self.assertEqual(dgamodel.betti_numbers(Model.torus(3)), [1, 3, 3, 1])
        self.assertEqual(dgamodel.betti_numbers(heisenberg()), [1, 2, 2, 1])
        self.assertEqual(dgamodel.betti_numbers(kodaira_thurston()), [1, 3, 4, 3, 1])
        with self.assertRaises(PreconditionError):
            dgamodel.betti_numbers(Model.torus(3, H=e(3, 1, 2, 3)))

    def test_is_exact(self):
        m = Model.torus(3, H=e(3, 1, 2, 3))
        self.assertTrue(dgamodel.is_exact(m, e(3, 1, 2, 3)))
        self.assertFalse(dgamodel.is_exact(m, Form.one(3)))
        self.assertFalse(dgamodel.is_exact(m, e(3, 1)))


class ExpLambdaTest(SimpleTestCase):
    """e^λ∧ carries d_H-closed forms to d_{H+dλ}-closed ones, ranks unchanged."""

    def test_random_transports(self):
        rng = seeded(21)
        models = [
            Model.torus(3, H=e(3, 1, 2, 3)),
            Model.torus(4, H=e(4, 2, 3, 4)),
            heisenberg(),
            heisenberg(e(3, 1, 2, 3)),
            kodaira_thurston(e(4, 1, 3, 4) + e(4, 1, 2, 4)),
        ]
        kernels = [kernel_of(m) for m in models]
        for case in range(50):
            m, kernel = models[case % len(models)], kernels[case % len(models)]
            lam = random_homogeneous(rng, m.n_generators, 2, density=0.5, gaussian=False)
            target = dgamodel.transported_model(m, lam)
            self.assertEqual(dgamodel.twisted_cohomology(target), dgamodel.twisted_cohomology(m))
            closed = random_closed(rng, m, kernel)
            moved = dgamodel.exp_lambda_transport(m, lam, closed)
            self.assertTrue(target.d_twisted(moved).is_zero)

    def test_kodaira_thurston_shifts_twist(self):
        target = dgamodel.transported_model(kodaira_thurston(), e(4, 3, 4))
        self.assertEqual(target.H, e(4, 1, 2, 4))
        target = dgamodel.transported_model(Model.torus(4), e(4, 1, 2))
        self.assertFalse(target.is_twisted)


class ModuleStructureTest(SimpleTestCase):

    def test_closed_times_twisted_closed(self):
        m = Model.torus(3, H=e(3, 1, 2, 3))
        product = dgamodel.module_wedge(m, e(3, 1), e(3, 2, 3))
        self.assertEqual(product, e(3, 1, 2, 3))
        self.assertTrue(m.d_twisted(product).is_zero)

    def test_requires_closed_factors(self):
        m = heisenberg()
        with self.assertRaises(PreconditionError):
            dgamodel.module_wedge(m, e(3, 3), Form.one(3))
        with self.assertRaises(PreconditionError):
            dgamodel.module_wedge(m, e(3, 1), e(3, 3))

    def test_morphisms(self):
        m = heisenberg()
        identity = ModelMorphism.identity(m)
        self.assertEqual(identity.pullback(e(3, 2, 3)), e(3, 2, 3))
        with self.assertRaises(ModelValidationError):
            ModelMorphism(Model.torus(3), m, tuple(Form.generator(3, i) for i in (1, 2, 3)))


class SigmaTwistTest(SimpleTestCase):
    """σ of a d_H-closed form is d_{−H}-closed."""

    def test_random_closed_forms(self):
        rng = seeded(22)
        models = [
            Model.torus(3, H=e(3, 1, 2, 3)),
            Model.torus(4, H=e(4, 2, 3, 4)),
            heisenberg(),
            heisenberg(e(3, 1, 2, 3)),
            kodaira_thurston(e(4, 1, 3, 4)),
        ]
        kernels = [kernel_of(m) for m in models]
        for case in range(100):
            m, kernel = models[case % len(models)], kernels[case % len(models)]
            closed = random_closed(rng, m, kernel)
            result = dgamodel.sigma_twist(m, closed)
            self.assertTrue(result.closed)
            self.assertEqual(reversal(result.form), closed)

    def test_quotient_spinor(self):
        c = e(4, 1, 2)
        dz2 = e(4, 3) + e(4, 4) * Scalar.i()
        a = (Form.one(4) - c * Scalar.i()) * dz2
        result = dgamodel.sigma_twist(Model.torus(4), a)
        self.assertEqual(result.form, dz2 + (c * Scalar.i()) * dz2)
        self.assertTrue(result.closed)

    def test_requires_closed_input(self):
        with self.assertRaises(PreconditionError):
            dgamodel.sigma_twist(heisenberg(), e(3, 3))

    def test_annihilator_clause(self):
        rho = Form.one(2) + e(2, 1, 2) * Scalar.i()
        report = dgamodel.sigma_annihilator_check([1, 0], [0, -Scalar.i()], rho)
        self.assertTrue(report.ok, report.failures)
        report = dgamodel.sigma_annihilator_check([1, 0], [0, Scalar.i()], rho)
        self.assertEqual(report.failures[0].identity, '(X + γ)·a = 0')

    def test_annihilator_clause_on_structures(self):
        structures = (
            gclinear.symplectic_structure(e(4, 1, 2) + e(4, 3, 4)),
            gclinear.complex_structure([[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]]),
            gclinear.b_transform(gclinear.symplectic_structure(e(4, 1, 3) + e(4, 2, 4)), e(4, 1, 2)),
        )
        for J in structures:
            L = gclinear.i_eigenspace(J)
            spinor = gclinear.pure_spinor(L)
            for vector in L.vectors():
                report = dgamodel.sigma_annihilator_check(vector[:4], vector[4:], spinor)
                self.assertTrue(report.ok, report.failures)


class DolbeaultTest(SimpleTestCase):
    """∂/∂̄ split and the ∂̄∂-lemma on tori and Kodaira–Thurston."""

    def test_split_on_torus(self):
        omega = e(2, 1, 2)
        J = gclinear.symplectic_structure(omega)
        m = Model.torus(2)
        rho = Form.one(2) + omega * Scalar.i()
        self.assertEqual(dgamodel.del_delbar_split(m, J, rho), (Form.zero(2), Form.zero(2)))
        self.assertEqual(dgamodel.del_delbar_split(m, J, Form.one(2)), (Form.zero(2), Form.zero(2)))

    def test_torus_satisfies_lemma(self):
        cases = (
            (Model.torus(2), gclinear.symplectic_structure(e(2, 1, 2))),
            (Model.torus(2), gclinear.complex_structure([[0, -1], [1, 0]])),
            (Model.torus(4), gclinear.symplectic_structure(e(4, 1, 2) + e(4, 3, 4))),
        )
        for m, J in cases:
            split = dgamodel.DolbeaultSplit(m, J)
            self.assertTrue(split.integrable)
            report = dgamodel.ddbar_lemma_check(m, J, split)
            self.assertTrue(report.ok, report.failures)
            self.assertEqual(
                dgamodel.delbar_closed_cohomology(m, J, split), dgamodel.twisted_cohomology(m),
            )

    def test_kodaira_thurston_fails_with_witness(self):
        m = kodaira_thurston()
        J = gclinear.complex_structure([[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]])
        split = dgamodel.DolbeaultSplit(m, J)
        self.assertTrue(split.integrable)
        report = dgamodel.ddbar_lemma_check(m, J, split)
        self.assertFalse(report.ok)
        self.assertIsNotNone(report.witness)
        dims = report.details
        self.assertLess(dims['im_delbar_del'], max(dims['ker_del_im_delbar'], dims['im_del_ker_delbar']))

    def test_non_closed_symplectic_is_not_integrable(self):
        m = kodaira_thurston()
        J = gclinear.symplectic_structure(e(4, 1, 2) + e(4, 3, 4))
        self.assertFalse(dgamodel.DolbeaultSplit(m, J).integrable)
        with self.assertRaises(IntegrabilityError):
            dgamodel.ddbar_lemma_check(m, J)

    def test_parity_blocks_cover_basis(self):
        m = kodaira_thurston()
        even = m.parity_block(0)
        self.assertEqual(len(even), len(parity_basis(4, 1)))
        self.assertEqual(len(even[0]), len(parity_basis(4, 0)))
