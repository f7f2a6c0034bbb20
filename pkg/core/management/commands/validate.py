"""
Management command: validate

Loads a model file, runs every construction-time check and re-verifies
d² = 0 and d_H² = 0 on the full exterior algebra.

Usage:
    python manage.py validate core/fixtures/models/t3_twisted.model
    python manage.py validate bad.model            # exit 1, H_NOT_CLOSED
"""
from core.algebra import linalg
from core.algebra.exterior import operator_matrix
from core.api.serializers import ValidateSerializer
from core.geometry import gclinear
from core.geometry.cartan import moment_differential_residual
from core.management.base import ModelCommand


def _squares_to_zero(matrix):
    return linalg.is_zero_matrix(linalg.matmul(matrix, matrix))


class Command(ModelCommand):
    help = 'Load a model file and report its validated contents.'
    serializer_class = ValidateSerializer

    def compute(self, mf, options):
        model = mf.model
        structures = []
        for name, J in mf.structures.items():
            valid = gclinear.validate(J).ok
            structures.append({
                'name': name,
                'dim': J.dim,
                'valid': valid,
                'type': gclinear.type_of(J) if valid else None,
            })
        actions = [
            {
                'name': name,
                'k': act.k,
                'moment_squared_zero': moment_differential_residual(act).ok,
            }
            for name, act in mf.actions.items()
        ]
        families = [
            {
                'name': name,
                'parameter': fam.parameter,
                'n': fam.n,
                'k': fam.k,
                'type': fam.type,
                'pairing': fam.structure.pairing,
            }
            for name, fam in mf.families.items()
        ]
        return {
            'model': mf.name,
            'generators': list(mf.generators),
            'parameters': list(mf.parameters),
            'twisted': model.is_twisted,
            'd_squared_zero': _squares_to_zero(operator_matrix(model.n_generators, model.d)),
            'd_twisted_squared_zero': _squares_to_zero(model.d_twisted_matrix),
            'forms': list(mf.forms),
            'spinors': list(mf.spinors),
            'structures': structures,
            'actions': actions,
            'families': families,
        }
