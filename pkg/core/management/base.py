"""
Shared plumbing for the model-file subcommands.

A subcommand subclasses ModelCommand, lists the flags it accepts in
``flags``, names its ``serializer_class`` and implements ``compute``,
which returns a plain dict.  Output is JSON on stdout; failures write the
error envelope and exit with 1 (domain error) or 2 (parse error).
"""
import logging
from fractions import Fraction

from django.conf import settings
from django.core.management.base import BaseCommand

from core.api.exceptions import error_envelope, exit_code_for
from core.api.serializers import ErrorSerializer, render_json
from core.exceptions import ParseError, TwistcalcError
from core.modelfile import load_model

logger = logging.getLogger('twistcalc.cli')

DEFAULTS = {
    'DEFAULT_TRUNCATION': None,
    'JSON_INDENT': 2,
    'DEFAULT_SAMPLES': (0, 1, Fraction(-1, 2)),
    'RANDOM_SEED': 20240611,
}


def twistcalc_setting(key):
    return getattr(settings, 'TWISTCALC', {}).get(key, DEFAULTS[key])


def default_truncation(model):
    """Configured truncation, else 2·n for 2n generators (at least 1)."""
    configured = twistcalc_setting('DEFAULT_TRUNCATION')
    if configured is not None:
        return configured
    return max(2 * (model.n_generators // 2), 1)


def _exponents(text):
    return tuple(int(part) for part in text.split(',') if part.strip())


# ── Flags ────────────────────────────────────────────────────────────

FLAG_SPECS = {
    'structure': (('--structure',), {'help': 'structure name (default: the only one declared)'}),
    'kahler': (('--kahler',), {'help': 'second structure for the generalized Kähler check'}),
    'action': (('--action',), {'help': 'action name (default: the only one declared)'}),
    'form': (('--form',), {'help': 'named form or spinor (default: the only one declared)'}),
    'family': (('--family',), {'help': 'family name (default: the only one declared)'}),
    'orientation': (('--orientation',), {
        'type': int, 'choices': (1, -1), 'help': 'orientation sign, +1 or -1 (default: model file)',
    }),
    'trunc': (('--trunc',), {'type': int, 'help': 'Cartan truncation degree'}),
    'moment': (('--moment',), {
        'action': 'store_true', 'help': 'use the D_G = d_H + 𝒜 complex',
    }),
    'x_power': (('--x-power',), {
        'type': _exponents, 'default': None,
        'help': 'x-exponents of the input, comma separated (default: all zero)',
    }),
}


class ModelCommand(BaseCommand):
    requires_system_checks = []
    flags = ()
    serializer_class = None

    def add_arguments(self, parser):
        parser.add_argument('model', help='path to a .model file')
        parser.add_argument(
            '--json', action='store_true',
            help='compact JSON output (default)',
        )
        parser.add_argument(
            '--pretty', action='store_true',
            help='indented JSON output',
        )
        for flag in self.flags:
            names, kwargs = FLAG_SPECS[flag]
            parser.add_argument(*names, **kwargs)

    def compute(self, mf, options):
        raise NotImplementedError

    def context(self, mf, payload):
        return {'names': mf.generators}

    def handle(self, *args, **options):
        mf = None
        try:
            mf = self.load(options['model'])
            payload = self.compute(mf, options)
            data = self.serializer_class(payload, context=self.context(mf, payload)).data
        except TwistcalcError as exc:
            names = mf.generators if mf is not None else None
            envelope = ErrorSerializer(error_envelope(exc, names)).data
            logger.error('%s failed on %s: %s', self.command_name, options['model'], exc.message)
            self.emit(envelope, options)
            raise SystemExit(exit_code_for(exc))
        logger.info('%s on %s done', self.command_name, options['model'])
        self.emit(data, options)

    @property
    def command_name(self):
        return self.__class__.__module__.rsplit('.', 1)[-1]

    def load(self, path):
        try:
            return load_model(path, default_samples=twistcalc_setting('DEFAULT_SAMPLES'))
        except OSError as exc:
            raise ParseError(f'cannot read {path}: {exc.strerror or exc}') from exc

    def emit(self, data, options):
        indent = twistcalc_setting('JSON_INDENT') if options.get('pretty') else None
        self.stdout.write(render_json(data, indent))

    def truncation(self, mf, options):
        trunc = options.get('trunc')
        return trunc if trunc is not None else default_truncation(mf.model)
