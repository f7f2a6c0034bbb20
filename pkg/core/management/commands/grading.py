"""
Management command: grading

The U^k decomposition of the forms induced by a generalized complex
structure, with a basis of each piece.

Usage:
    python manage.py grading core/fixtures/models/t2_symplectic.model --structure Jw
"""
from core.api.serializers import GradingSerializer
from core.geometry import gclinear
from core.management.base import ModelCommand
from core.management.commands.gclinear import structure_name


def _eigenvalue(k):
    if k == 0:
        return '0'
    if k == 1:
        return '-i'
    if k == -1:
        return 'i'
    return f'{-k}*i'


class Command(ModelCommand):
    help = 'U^k grading of the exterior algebra for a structure.'
    serializer_class = GradingSerializer
    flags = ('structure',)

    def context(self, mf, payload):
        return {'names': mf.generators if len(mf.generators) == payload['dim'] else None}

    def compute(self, mf, options):
        J = mf.structure(options.get('structure'))
        pieces = [
            {
                'k': piece.k,
                'dimension': piece.dimension,
                'eigenvalue': _eigenvalue(piece.k),
                'basis': gclinear.basis_forms(piece, J.dim),
            }
            for piece in gclinear.uk_grading(J)
        ]
        return {'structure': structure_name(mf, J), 'dim': J.dim, 'pieces': pieces}
