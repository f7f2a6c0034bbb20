"""
Management command: extension

Canonical equivariant extension φ_g of a ∂- and ∂̄-closed form, solved
degree by degree through the ∂̄∂-lemma and checked to be D_G-closed.

Usage:
    python manage.py extension core/fixtures/models/t2_symplectic.model --form rho --trunc 2
"""
from core.api.serializers import ExtensionSerializer
from core.geometry.cartan import canonical_extension, moment_differential
from core.management.base import ModelCommand
from core.management.commands.gclinear import structure_name


class Command(ModelCommand):
    help = 'Canonical equivariant extension of a closed form.'
    serializer_class = ExtensionSerializer
    flags = ('action', 'structure', 'form', 'trunc')

    def compute(self, mf, options):
        act = mf.action(options.get('action'))
        J = mf.structure(options.get('structure'))
        phi = mf.form(options.get('form'))
        extension = canonical_extension(act, J, mf.model, phi, self.truncation(mf, options))
        return {
            'action': act.name,
            'structure': structure_name(mf, J),
            'form': extension,
            'max_degree': extension.max_degree,
            'closed': moment_differential(act, extension).is_zero,
        }
