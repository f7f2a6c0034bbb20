"""
Management command: cohomology

ℤ₂-graded twisted cohomology ranks of the model; the full ℤ-graded Betti
numbers are added when H = 0.

Usage:
    python manage.py cohomology core/fixtures/models/t3_twisted.model
    python manage.py cohomology core/fixtures/models/heisenberg.model --pretty
"""
from core.api.serializers import CohomologySerializer
from core.geometry.dgamodel import betti_numbers, twisted_cohomology
from core.management.base import ModelCommand


class Command(ModelCommand):
    help = 'Twisted cohomology ranks (even, odd) of a model file.'
    serializer_class = CohomologySerializer

    def compute(self, mf, options):
        ranks = twisted_cohomology(mf.model)
        payload = {'even': ranks.even, 'odd': ranks.odd}
        if not mf.model.is_twisted:
            payload['degrees'] = betti_numbers(mf.model)
        return payload
