"""
Management command: equivariant

Ranks of the truncated Cartan complex of an action, graded by x-degree,
with the free-module verdict and a stability check one degree higher.
``--moment`` switches from d_{G,H_G} to D_G = d_H + 𝒜.

Usage:
    python manage.py equivariant core/fixtures/models/t4_s1_twisted.model --trunc 2
    python manage.py equivariant core/fixtures/models/t2_symplectic.model --moment --trunc 3
"""
from core.api.serializers import EquivariantSerializer
from core.geometry.cartan import equivariant_cohomology, generalized_equivariant_cohomology
from core.management.base import ModelCommand


class Command(ModelCommand):
    help = 'Truncated equivariant cohomology ranks of a torus action.'
    serializer_class = EquivariantSerializer
    flags = ('action', 'trunc', 'moment')

    def compute(self, mf, options):
        act = mf.action(options.get('action'))
        trunc = self.truncation(mf, options)
        if options.get('moment'):
            ranks = generalized_equivariant_cohomology(act, trunc=trunc)
            complex_name = 'D_G'
        else:
            ranks = equivariant_cohomology(act, trunc=trunc)
            complex_name = 'd_G,H_G'
        return {
            'action': act.name,
            'complex': complex_name,
            'trunc': trunc,
            'pieces': ranks.pieces,
            'total': ranks.total,
            'base': ranks.expected,
            'free': ranks.free,
            'stable': ranks.stable,
        }
