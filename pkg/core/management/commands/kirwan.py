"""
Management command: kirwan

Kirwan map of an equivariant form: restriction to the level model (the
identity restriction, since model files carry no morphisms), Cartan map,
descent to the quotient.

Usage:
    python manage.py kirwan core/fixtures/models/t4_s1_twisted.model --form H4
"""
from core.api.serializers import KirwanSerializer
from core.geometry.cartan import connection_for, kirwan_map, quotient
from core.geometry.dgamodel import ModelMorphism
from core.management.base import ModelCommand
from core.management.commands.cartanmap import equivariant_input


class Command(ModelCommand):
    help = 'Kirwan map of an equivariant form to the quotient model.'
    serializer_class = KirwanSerializer
    flags = ('action', 'form', 'x_power')

    def context(self, mf, payload):
        return {'names': mf.generators, 'quotient_names': payload['quotient_generators']}

    def compute(self, mf, options):
        act = mf.action(options.get('action'))
        conn = connection_for(act)
        eta = equivariant_input(act, mf.form(options.get('form')), options.get('x_power'))
        image = kirwan_map(act, conn, ModelMorphism.identity(act.model), eta)
        return {
            'action': act.name,
            'input': eta,
            'quotient_generators': list(quotient(conn).model.generator_names),
            'image': image,
        }
