"""
Management command: dh

Exact Duistermaat–Heckman density of a quotient family.

Usage:
    python manage.py dh core/fixtures/models/t4_rho1.model --orientation +1
    python manage.py dh core/fixtures/models/t4_rho2.model --orientation -1
"""
from core.api.serializers import DHSerializer
from core.geometry.gcydh import dh_density
from core.management.base import ModelCommand


class Command(ModelCommand):
    help = 'Duistermaat–Heckman density of a declared family.'
    serializer_class = DHSerializer
    flags = ('family', 'orientation')

    def compute(self, mf, options):
        family = mf.family(options.get('family'))
        result = dh_density(family, orientation=options.get('orientation'))
        payload = {
            'density': result.density,
            'degree_bound': result.degree_bound,
            'normalization': result.normalization,
        }
        if result.diagnostics:
            payload['diagnostics'] = result.diagnostics
        return payload
