"""
Management command: ddbar

∂̄∂-lemma test for a structure on the model, with the twisted cohomology
of the ∂̄-closed subcomplex next to that of the whole complex.

Usage:
    python manage.py ddbar core/fixtures/models/kodaira_thurston.model --structure Jc
"""
from core.api.serializers import DdbarSerializer
from core.geometry.dgamodel import (
    DolbeaultSplit,
    ddbar_lemma_check,
    delbar_closed_cohomology,
    twisted_cohomology,
)
from core.management.base import ModelCommand
from core.management.commands.gclinear import structure_name


class Command(ModelCommand):
    help = 'Check the ∂̄∂-lemma for a structure on the model.'
    serializer_class = DdbarSerializer
    flags = ('structure',)

    def compute(self, mf, options):
        J = mf.structure(options.get('structure'))
        split = DolbeaultSplit(mf.model, J)
        report = ddbar_lemma_check(mf.model, J, split)
        return {
            'structure': structure_name(mf, J),
            'ok': report.ok,
            'failures': report.failures,
            'witness': report.witness,
            'dimensions': report.details,
            'delbar_closed': delbar_closed_cohomology(mf.model, J, split),
            'cohomology': twisted_cohomology(mf.model),
        }
