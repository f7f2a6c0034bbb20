"""
Management command: cartanmap

Applies the Cartan map of the action's connection to x^I ⊗ (named form),
descends the basic result to the quotient model and reports the
descended twist H̃ when the moment one-forms are horizontal.

Usage:
    python manage.py cartanmap core/fixtures/models/t4_s1_twisted.model --form H4
    python manage.py cartanmap core/fixtures/models/t4_s1_twisted.model --form one --x-power 1
"""
from core.api.serializers import CartanMapSerializer
from core.exceptions import PreconditionError
from core.geometry.cartan import (
    EqForm,
    cartan_map,
    connection_for,
    gamma_from_connection,
    quotient,
    twisting_class_check,
)
from core.management.base import ModelCommand


def equivariant_input(act, form, exponents):
    exponents = tuple(exponents) if exponents else (0,) * act.k
    if len(exponents) != act.k:
        raise PreconditionError(
            f'--x-power needs {act.k} exponents for a rank-{act.k} action', detail=list(exponents),
        )
    return EqForm.monomial(exponents, form, sum(exponents))


class Command(ModelCommand):
    help = 'Cartan map and descent of an equivariant form.'
    serializer_class = CartanMapSerializer
    flags = ('action', 'form', 'x_power')

    def context(self, mf, payload):
        return {'names': mf.generators, 'quotient_names': payload['quotient_generators']}

    def compute(self, mf, options):
        act = mf.action(options.get('action'))
        conn = connection_for(act)
        eta = equivariant_input(act, mf.form(options.get('form')), options.get('x_power'))
        image = cartan_map(conn, eta)
        target = quotient(conn)
        try:
            gamma = gamma_from_connection(conn, act)
        except PreconditionError:
            twist = None
        else:
            check = twisting_class_check(act, conn)
            twist = {'gamma': gamma, 'H_tilde': check.details['H_tilde'], 'exact': check.ok}
        return {
            'action': act.name,
            'input': eta,
            'image': image,
            'quotient_generators': list(target.model.generator_names),
            'descended': target.descend(image),
            'twist': twist,
        }
