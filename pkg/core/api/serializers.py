"""
DRF Serializers for command output.

Every subcommand builds a plain dict and hands it to one of these
serializers; field order fixes the key order of the JSON, so identical
inputs give byte-identical output.  Forms are printed with the model
printer using the generator names found in the serializer context
(``names`` for the model, ``quotient_names`` for a quotient model).
"""
from rest_framework import serializers
from rest_framework.renderers import JSONRenderer

from core.api.exceptions import render_detail
from core.modelfile.printer import format_eqform, format_form, format_scalar


def render_json(data, indent=None):
    media_type = f'application/json; indent={indent}' if indent else None
    return JSONRenderer().render(data, accepted_media_type=media_type).decode('utf-8')


# ── Custom fields ────────────────────────────────────────────────────

class FormField(serializers.Field):
    """A Form rendered as model-file text."""

    def __init__(self, names_key='names', **kwargs):
        self.names_key = names_key
        kwargs.setdefault('read_only', True)
        super().__init__(**kwargs)

    def to_representation(self, value):
        return format_form(value, self.context.get(self.names_key))


class EqFormField(FormField):
    def to_representation(self, value):
        return format_eqform(value, self.context.get(self.names_key))


class ScalarField(serializers.Field):
    """Exact scalar; ``factored`` output for densities and pairings."""

    def __init__(self, factored=False, **kwargs):
        self.factored = factored
        kwargs.setdefault('read_only', True)
        super().__init__(**kwargs)

    def to_representation(self, value):
        if self.factored:
            return value.factored()
        return format_scalar(value)


class DetailField(serializers.Field):
    def __init__(self, **kwargs):
        kwargs.setdefault('read_only', True)
        super().__init__(**kwargs)

    def to_representation(self, value):
        return render_detail(value, self.context.get('names'))


# ── Shared pieces ────────────────────────────────────────────────────

class BettiPairSerializer(serializers.Serializer):
    even = serializers.IntegerField()
    odd = serializers.IntegerField()


class FailureSerializer(serializers.Serializer):
    identity = serializers.CharField()
    residual = DetailField(allow_null=True)


class ReportSerializer(serializers.Serializer):
    ok = serializers.BooleanField()
    failures = FailureSerializer(many=True)


class RankPieceSerializer(serializers.Serializer):
    degree = serializers.IntegerField()
    even = serializers.IntegerField()
    odd = serializers.IntegerField()


# ── validate ─────────────────────────────────────────────────────────

class StructureSummarySerializer(serializers.Serializer):
    name = serializers.CharField()
    dim = serializers.IntegerField()
    valid = serializers.BooleanField()
    type = serializers.IntegerField(allow_null=True)


class ActionSummarySerializer(serializers.Serializer):
    name = serializers.CharField()
    k = serializers.IntegerField()
    moment_squared_zero = serializers.BooleanField()


class FamilySummarySerializer(serializers.Serializer):
    name = serializers.CharField()
    parameter = serializers.CharField()
    n = serializers.IntegerField()
    k = serializers.IntegerField()
    type = serializers.IntegerField(allow_null=True)
    pairing = ScalarField(factored=True)


class ValidateSerializer(serializers.Serializer):
    model = serializers.CharField(allow_blank=True)
    generators = serializers.ListField(child=serializers.CharField())
    parameters = serializers.ListField(child=serializers.CharField())
    twisted = serializers.BooleanField()
    d_squared_zero = serializers.BooleanField()
    d_twisted_squared_zero = serializers.BooleanField()
    forms = serializers.ListField(child=serializers.CharField())
    spinors = serializers.ListField(child=serializers.CharField())
    structures = StructureSummarySerializer(many=True)
    actions = ActionSummarySerializer(many=True)
    families = FamilySummarySerializer(many=True)


# ── cohomology ───────────────────────────────────────────────────────

class CohomologySerializer(BettiPairSerializer):
    """``degrees`` only appears for untwisted models."""
    degrees = serializers.ListField(child=serializers.IntegerField(), required=False)


# ── gclinear / grading ───────────────────────────────────────────────

class GCLinearSerializer(serializers.Serializer):
    structure = serializers.CharField()
    dim = serializers.IntegerField()
    type = serializers.IntegerField()
    eigenspace_dimension = serializers.IntegerField()
    eigenspace = serializers.ListField(child=serializers.ListField(child=serializers.CharField()))
    pure_spinor = FormField()
    annihilator = serializers.DictField(child=serializers.BooleanField())
    kahler = ReportSerializer(required=False)


class GradingPieceSerializer(serializers.Serializer):
    k = serializers.IntegerField()
    dimension = serializers.IntegerField()
    eigenvalue = serializers.CharField()
    basis = serializers.ListField(child=FormField())


class GradingSerializer(serializers.Serializer):
    structure = serializers.CharField()
    pieces = GradingPieceSerializer(many=True)


# ── equivariant / cartanmap / kirwan ─────────────────────────────────

class EquivariantSerializer(serializers.Serializer):
    action = serializers.CharField()
    complex = serializers.CharField()
    trunc = serializers.IntegerField()
    pieces = RankPieceSerializer(many=True)
    total = BettiPairSerializer()
    base = BettiPairSerializer()
    free = serializers.BooleanField()
    stable = serializers.BooleanField(allow_null=True)


class DescendedTwistSerializer(serializers.Serializer):
    gamma = FormField()
    H_tilde = FormField(names_key='quotient_names')
    exact = serializers.BooleanField()


class CartanMapSerializer(serializers.Serializer):
    action = serializers.CharField()
    input = EqFormField()
    image = FormField()
    quotient_generators = serializers.ListField(child=serializers.CharField())
    descended = FormField(names_key='quotient_names')
    twist = DescendedTwistSerializer(allow_null=True)


class KirwanSerializer(serializers.Serializer):
    action = serializers.CharField()
    input = EqFormField()
    quotient_generators = serializers.ListField(child=serializers.CharField())
    image = FormField(names_key='quotient_names')


# ── dh ───────────────────────────────────────────────────────────────

class DHSerializer(serializers.Serializer):
    density = ScalarField(factored=True)
    degree_bound = serializers.IntegerField()
    normalization = ScalarField(factored=True)
    diagnostics = serializers.ListField(child=serializers.CharField(), required=False)


# ── ddbar / extension ────────────────────────────────────────────────

class DdbarSerializer(serializers.Serializer):
    structure = serializers.CharField()
    ok = serializers.BooleanField()
    failures = FailureSerializer(many=True)
    witness = FormField(allow_null=True)
    dimensions = serializers.DictField(child=serializers.IntegerField())
    delbar_closed = BettiPairSerializer()
    cohomology = BettiPairSerializer()


class ExtensionSerializer(serializers.Serializer):
    action = serializers.CharField()
    structure = serializers.CharField()
    form = EqFormField()
    max_degree = serializers.IntegerField()
    closed = serializers.BooleanField()


# ── Errors ───────────────────────────────────────────────────────────

class ErrorSerializer(serializers.Serializer):
    error = serializers.CharField()
    code = serializers.CharField()
    detail = serializers.JSONField(allow_null=True)
