"""
Management command: gclinear

Linear algebra of one generalized complex structure: +i eigenspace, type,
pure spinor and its annihilator; optionally the generalized Kähler check
against a second structure.

Usage:
    python manage.py gclinear core/fixtures/models/t2_symplectic.model
    python manage.py gclinear core/fixtures/models/t2_symplectic.model --structure Jw --kahler Jc
"""
from core.api.serializers import GCLinearSerializer
from core.exceptions import InvalidStructure
from core.geometry import gclinear
from core.management.base import ModelCommand
from core.modelfile.printer import format_scalar


def structure_name(mf, J):
    return next(name for name, value in mf.structures.items() if value is J)


class Command(ModelCommand):
    help = 'Eigenspace, type and pure spinor of a generalized complex structure.'
    serializer_class = GCLinearSerializer
    flags = ('structure', 'kahler')

    def context(self, mf, payload):
        # the structure acts on its own dim generators, which may differ from the model's
        names = mf.generators if len(mf.generators) == payload['dim'] else None
        return {'names': names}

    def compute(self, mf, options):
        J = mf.structure(options.get('structure'))
        report = gclinear.validate(J)
        if not report.ok:
            raise InvalidStructure(
                'not a generalized complex structure',
                detail=[failure.identity for failure in report.failures],
            )
        space = gclinear.i_eigenspace(J)
        spinor = gclinear.pure_spinor(space)
        ann = gclinear.annihilator(spinor)
        payload = {
            'structure': structure_name(mf, J),
            'dim': J.dim,
            'type': gclinear.type_of(J),
            'eigenspace_dimension': space.rank,
            'eigenspace': [[format_scalar(value) for value in vector] for vector in space.vectors()],
            'pure_spinor': spinor,
            'annihilator': {
                'isotropic': ann.is_isotropic,
                'maximal_isotropic': ann.is_maximal_isotropic,
                'nondegenerate': ann.nondegenerate,
                'transverse': ann.transverse,
            },
        }
        if options.get('kahler'):
            payload['kahler'] = gclinear.kahler_check(J, mf.structure(options['kahler']))
        return payload
