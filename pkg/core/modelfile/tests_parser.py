"""
Model-file tests – expressions, statements, located errors and the
print/parse round trip.
"""
from fractions import Fraction

from django.test import SimpleTestCase

from core.algebra.exterior import Form, wedge
from core.algebra.scalar import Scalar
from core.exceptions import (
    ActionValidationError,
    ModelValidationError,
    ParseError,
    PreconditionError,
)
from core.modelfile import format_form, format_model, load_model, parse_model
from core.testing import MODELS, model_path


def e(n, *indices):
    return Form.monomial(n, indices)


def form_of(expression, generators='e1 e2 e3', header=''):
    text = f'generators {generators}\n{header}form a = {expression}\n'
    return parse_model(text).forms['a']


class ExpressionTest(SimpleTestCase):

    def test_wedge_and_scalars(self):
        self.assertEqual(form_of('e1^e2 - e2^e1'), e(3, 1, 2) * 2)
        self.assertEqual(form_of('e1*e2'), e(3, 1, 2))
        self.assertEqual(form_of('1/2*e1 + e1/2'), e(3, 1))
        self.assertEqual(form_of('-(e1 + e2)^e3'), -e(3, 1, 3) - e(3, 2, 3))

    def test_powers_and_functions(self):
        self.assertTrue(form_of('(e1 + e2)**2').is_zero)
        self.assertEqual(form_of('exp(e1^e2)'), Form.one(3) + e(3, 1, 2))
        self.assertEqual(form_of('sigma(e1^e2 + e3)'), e(3, 3) - e(3, 1, 2))
        self.assertEqual(form_of('conj(i*e1)'), e(3, 1) * -Scalar.i())

    def test_named_forms_and_parameters(self):
        text = (
            'generators x y\n'
            'parameters s\n'
            'form w = x^y\n'
            'spinor rho = exp(i*s*w)\n'
        )
        mf = parse_model(text)
        s = Scalar.parameter('s')
        self.assertEqual(mf.spinors['rho'], Form.one(2) + e(2, 1, 2) * (Scalar.i() * s))
        self.assertEqual(mf.form('w'), e(2, 1, 2))
        self.assertEqual(mf.generators, ('x', 'y'))

    def test_pi_is_formal(self):
        self.assertEqual(form_of('2*pi*e1').coefficient((1,)), Scalar.pi() * 2)

    def test_printing_uses_generator_names(self):
        self.assertEqual(format_form(e(2, 1, 2) - e(2, 1), ('x', 'y')), '-x + x^y')


class StatementTest(SimpleTestCase):

    def test_fixture_contents(self):
        mf = load_model(model_path('t3_twisted'))
        self.assertEqual(mf.name, 't3_twisted')
        self.assertEqual(mf.model.H, e(3, 1, 2, 3))
        mf = load_model(model_path('t4_rho1'))
        self.assertEqual(mf.samples, {'t': (0, 1, Fraction(-1, 2))})
        self.assertEqual(mf.family().n, 3)
        mf = load_model(model_path('t4_rho2'))
        self.assertEqual(mf.model.orientation, -1)

    def test_comments_and_blank_lines(self):
        text = '# leading comment\n\nmodel m  # trailing\ngenerators a b\n\nd b = 0\n'
        mf = parse_model(text)
        self.assertEqual(mf.name, 'm')
        self.assertTrue(mf.model.is_abelian)

    def test_bare_assignment_declares_a_spinor(self):
        mf = parse_model('generators e1 e2\nrho = e1 + i*e2\n')
        self.assertEqual(mf.spinors['rho'], e(2, 1) + e(2, 2) * Scalar.i())
        self.assertEqual(mf.spinor(), mf.form('rho'))

        text = (
            'generators e1 e2 e3 e4\n'
            'parameters t\n'
            'c = e1^e2\n'
            'rho1 = exp(-i*(t+1)*c) ^ (e3 + i*e4)\n'
        )
        mf = parse_model(text)
        t = Scalar.parameter('t')
        shift = Form.one(4) + e(4, 1, 2) * (-(Scalar.i() * (t + 1)))
        self.assertEqual(mf.spinors['rho1'], wedge(shift, e(4, 3) + e(4, 4) * Scalar.i()))

    def test_structures_and_btransform(self):
        text = (
            'generators e1 e2\n'
            'structure Jw = symplectic(e1^e2)\n'
            'structure Jb = btransform(Jw, 2*e1^e2)\n'
            'structure Jm = matrix([[0, 0, 0, 1], [0, 0, -1, 0], [0, 1, 0, 0], [-1, 0, 0, 0]])\n'
        )
        mf = parse_model(text)
        self.assertEqual(set(mf.structures), {'Jw', 'Jb', 'Jm'})
        self.assertEqual(mf.structure('Jm').dim, 2)

    def test_action_block(self):
        mf = load_model(model_path('t4_s1_twisted'))
        act = mf.action()
        self.assertEqual(act.k, 1)
        self.assertEqual(act.theta, (e(4, 1),))
        self.assertEqual(act.name, 'circle')

    def test_pickers(self):
        mf = load_model(model_path('kodaira_thurston'))
        with self.assertRaises(PreconditionError):
            mf.structure()
        with self.assertRaises(PreconditionError):
            mf.structure('missing')
        with self.assertRaises(PreconditionError):
            mf.action()
        self.assertEqual(mf.structure('Jc').dim, 4)


class LocatedErrorTest(SimpleTestCase):
    """Errors name the line and column of the offending token."""

    def assertParseError(self, text, line, column=None):
        with self.assertRaises(ParseError) as ctx:
            parse_model(text)
        self.assertEqual(ctx.exception.line, line)
        if column is not None:
            self.assertEqual(ctx.exception.column, column)
        return ctx.exception

    def test_unexpected_character(self):
        self.assertParseError('generators e1 e2\nH = e1 $ e2\n', 2, 8)

    def test_undeclared_symbol(self):
        error = self.assertParseError('generators e1 e2\nform a = e1 ^ e3\n', 2, 15)
        self.assertIn("'e3'", error.message)

    def test_function_failure_is_located(self):
        self.assertParseError('generators e1 e2\nform a = exp(e1)\n', 2, 10)

    def test_division_by_parameter(self):
        self.assertParseError('generators e1\nparameters t\nform a = e1 / t\n', 3, 13)

    def test_structural_errors(self):
        self.assertParseError('model x\n', 1)
        self.assertParseError('generators e1 pi\n', 1, 15)
        self.assertParseError('generators e1\nfoo bar = 1\n', 2, 1)
        self.assertParseError('generators e1 e2\ne2 = e1\n', 2, 1)
        self.assertParseError('generators e1\naction a\n  xi = 1\n', 2)
        self.assertParseError('generators e1\norientation = 2\n', 2, 15)
        self.assertParseError('form a = 1\ngenerators e1\n', 1)
        self.assertParseError('generators e1 e1\n', 1, 15)

    def test_family_needs_dimensions(self):
        text = 'generators e1 e2\nparameters t\nfamily f = quotient(e1 + i*e2, e1^e2, t) n=2\n'
        self.assertParseError(text, 3)

    def test_domain_errors_keep_their_class(self):
        with self.assertRaises(ModelValidationError) as ctx:
            load_model(model_path('bad'))
        self.assertEqual(ctx.exception.message, 'line 5: H not closed')
        text = 'generators e1 e2 e3\nd e3 = e1^e2\naction bad\n  xi = 1, 0, 0\nend\n'
        with self.assertRaises(ActionValidationError) as ctx:
            parse_model(text)
        self.assertTrue(ctx.exception.message.startswith('line 3: '))


class RoundTripTest(SimpleTestCase):
    """format_model output loads back to the same objects."""

    def test_shipped_models(self):
        for path in sorted(MODELS.glob('*.model')):
            if path.stem == 'bad':
                continue
            original = load_model(path)
            again = parse_model(format_model(original))
            self.assertEqual(again.generators, original.generators, path.stem)
            self.assertEqual(again.model.d_table, original.model.d_table, path.stem)
            self.assertEqual(again.model.H, original.model.H, path.stem)
            self.assertEqual(again.model.orientation, original.model.orientation, path.stem)
            self.assertEqual(again.forms, original.forms, path.stem)
            self.assertEqual(again.spinors, original.spinors, path.stem)
            self.assertEqual(again.structures, original.structures, path.stem)
            self.assertEqual(again.samples, original.samples, path.stem)
            for name, act in original.actions.items():
                self.assertEqual(again.actions[name].xi, act.xi)
                self.assertEqual(again.actions[name].mu_diff, act.mu_diff)
                self.assertEqual(again.actions[name].theta, act.theta)
            for name, family in original.families.items():
                self.assertEqual(again.families[name].rho, family.rho)

    def test_compound_coefficients(self):
        text = 'generators e1 e2\nparameters t\nform a = (t + 1)*e1 - 1/3*e1^e2 + (2 - i)\n'
        original = parse_model(text)
        again = parse_model(format_model(original))
        self.assertEqual(again.forms['a'], original.forms['a'])
