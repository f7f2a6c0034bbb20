"""
Command tests – golden JSON, exit codes and the per-subcommand payloads.
"""
import json
from io import StringIO

from django.test import SimpleTestCase

from core.management.dispatch import SUBCOMMANDS, run
from core.testing import GOLDEN, model_path


def invoke(subcommand, model, **flags):
    buffer = StringIO()
    code = run(subcommand, model_path(model), stdout=buffer, **flags)
    return code, buffer.getvalue()


def golden_case(path):
    """``model.subcommand[.flag=value...].json`` -> (model, subcommand, flags)."""
    model, subcommand, *parts = path.name.removesuffix('.json').split('.')
    flags = {}
    for part in parts:
        key, value = part.split('=', 1)
        flags[key] = int(value) if value.lstrip('-').isdigit() else value
    return model, subcommand, flags


class GoldenOutputTest(SimpleTestCase):
    """Byte-for-byte comparison against core/fixtures/golden."""

    def test_golden_files(self):
        files = sorted(GOLDEN.glob('*.json'))
        self.assertGreaterEqual(len(files), 18)
        for path in files:
            model, subcommand, flags = golden_case(path)
            with self.subTest(golden=path.name):
                code, text = invoke(subcommand, model, **flags)
                self.assertEqual(code, 1 if model == 'bad' else 0)
                self.assertEqual(text, path.read_text(encoding='utf-8'))

    def test_every_subcommand_has_a_golden_file(self):
        covered = {golden_case(path)[1] for path in GOLDEN.glob('*.json')}
        self.assertEqual(covered, set(SUBCOMMANDS))

    def test_flags_in_file_names(self):
        path = GOLDEN / 't2_symplectic.extension.structure=Jw.form=rho.json'
        self.assertEqual(
            golden_case(path), ('t2_symplectic', 'extension', {'structure': 'Jw', 'form': 'rho'}),
        )
        self.assertEqual(golden_case(GOLDEN / 't3.cohomology.json'), ('t3', 'cohomology', {}))
        self.assertEqual(golden_case(GOLDEN / 'x.equivariant.trunc=2.json')[2], {'trunc': 2})


class ExitCodeTest(SimpleTestCase):

    def test_missing_file_is_a_parse_error(self):
        buffer = StringIO()
        code = run('cohomology', model_path('does_not_exist'), stdout=buffer)
        self.assertEqual(code, 2)
        self.assertEqual(json.loads(buffer.getvalue())['code'], 'PARSE_ERROR')

    def test_unknown_subcommand(self):
        code, text = invoke('frobnicate', 't3')
        self.assertEqual(code, 1)
        envelope = json.loads(text)
        self.assertEqual(envelope['code'], 'UNKNOWN_SUBCOMMAND')
        self.assertEqual(envelope['detail'], list(SUBCOMMANDS))

    def test_pretty_output_is_indented(self):
        code, text = invoke('cohomology', 't3', pretty=True)
        self.assertEqual(code, 0)
        self.assertIn('\n  "even": 4', text)
        self.assertEqual(json.loads(text)['degrees'], [1, 3, 3, 1])


class GeneralizedComplexCommandTest(SimpleTestCase):

    def test_gclinear_symplectic(self):
        code, text = invoke('gclinear', 't2_symplectic', structure='Jw')
        self.assertEqual(code, 0)
        data = json.loads(text)
        self.assertEqual(data['type'], 0)
        self.assertEqual(data['eigenspace_dimension'], 2)
        self.assertEqual(data['pure_spinor'], '1 + i*e1^e2')
        self.assertTrue(data['annihilator']['maximal_isotropic'])
        self.assertTrue(data['annihilator']['nondegenerate'])
        self.assertNotIn('kahler', data)

    def test_gclinear_kahler_pair(self):
        code, text = invoke('gclinear', 't2_symplectic', structure='Jw', kahler='Jc')
        self.assertEqual(code, 0)
        self.assertTrue(json.loads(text)['kahler']['ok'])

    def test_gclinear_needs_a_name_when_ambiguous(self):
        code, text = invoke('gclinear', 't2_symplectic')
        self.assertEqual(code, 1)
        self.assertEqual(json.loads(text)['code'], 'PRECONDITION_FAILED')

    def test_grading_dimensions(self):
        code, text = invoke('grading', 't2_symplectic', structure='Jc')
        self.assertEqual(code, 0)
        pieces = json.loads(text)['pieces']
        self.assertEqual([p['k'] for p in pieces], [-1, 0, 1])
        self.assertEqual([p['dimension'] for p in pieces], [1, 2, 1])
        self.assertEqual([len(p['basis']) for p in pieces], [1, 2, 1])

    def test_ddbar_on_kodaira_thurston(self):
        code, text = invoke('ddbar', 'kodaira_thurston', structure='Jc')
        self.assertEqual(code, 0)
        data = json.loads(text)
        self.assertFalse(data['ok'])
        self.assertIsNotNone(data['witness'])
        self.assertEqual(data['cohomology'], {'even': 6, 'odd': 6})

    def test_ddbar_rejects_non_integrable(self):
        code, text = invoke('ddbar', 'kodaira_thurston', structure='Jw')
        self.assertEqual(code, 1)
        self.assertEqual(json.loads(text)['code'], 'NOT_INTEGRABLE')


class EquivariantCommandTest(SimpleTestCase):

    def test_free_circle_ranks(self):
        code, text = invoke('equivariant', 't4_s1_twisted', trunc=2)
        self.assertEqual(code, 0)
        data = json.loads(text)
        self.assertEqual(data['total'], {'even': 3, 'odd': 3})
        self.assertEqual(data['trunc'], 2)
        self.assertFalse(data['free'])
        self.assertTrue(data['stable'])

    def test_cartanmap_descends_the_twist(self):
        code, text = invoke('cartanmap', 't4_s1_twisted', form='H4')
        self.assertEqual(code, 0)
        data = json.loads(text)
        self.assertEqual(data['image'], 'e2^e3^e4')
        self.assertEqual(data['descended'], 'e2^e3^e4')
        self.assertEqual(len(data['quotient_generators']), 3)
        self.assertEqual(data['twist']['gamma'], '0')
        self.assertFalse(data['twist']['exact'])

    def test_kirwan_of_unit(self):
        code, text = invoke('kirwan', 't4_s1_twisted', form='one')
        self.assertEqual(code, 0)
        data = json.loads(text)
        self.assertEqual(data['image'], '1')
        self.assertEqual(data['action'], 'circle')

    def test_extension_of_symplectic_spinor(self):
        code, text = invoke('extension', 't2_symplectic', structure='Jw', form='rho')
        self.assertEqual(code, 0)
        data = json.loads(text)
        self.assertTrue(data['closed'])
        self.assertEqual(data['max_degree'], 0)
        self.assertEqual(data['form'], '(1 + i*e1^e2)')

    def test_extension_infeasible(self):
        code, text = invoke('extension', 't2_symplectic', structure='Jw', form='omega')
        self.assertEqual(code, 1)
        self.assertEqual(json.loads(text)['code'], 'EXTENSION_INFEASIBLE')


class DensityCommandTest(SimpleTestCase):

    def test_orientation_flag(self):
        code, text = invoke('dh', 't4_rho2', orientation=1)
        self.assertEqual(code, 0)
        self.assertEqual(json.loads(text)['density'], '2*pi')

    def test_validate_lists_contents(self):
        code, text = invoke('validate', 't2_symplectic')
        self.assertEqual(code, 0)
        data = json.loads(text)
        self.assertEqual(data['forms'], ['omega'])
        self.assertEqual(data['spinors'], ['rho'])
        self.assertEqual(
            [(s['name'], s['valid'], s['type']) for s in data['structures']],
            [('Jw', True, 0), ('Jc', True, 1)],
        )
        self.assertEqual(data['actions'], [{'name': 'rot', 'k': 1, 'moment_squared_zero': True}])
