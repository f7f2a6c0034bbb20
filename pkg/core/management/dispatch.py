"""
Programmatic entry point: run one subcommand on a model file.

Usage:
    from core.management.dispatch import run

    code = run('cohomology', 'core/fixtures/models/t3_twisted.model')
    code = run('dh', 'core/fixtures/models/t4_rho1.model', orientation=1, stdout=buffer)
"""
import sys

from django.core.management import call_command

from core.api.exceptions import EXIT_DOMAIN_ERROR, EXIT_OK, UNKNOWN_SUBCOMMAND
from core.api.serializers import render_json

SUBCOMMANDS = (
    'validate',
    'cohomology',
    'gclinear',
    'grading',
    'equivariant',
    'cartanmap',
    'kirwan',
    'dh',
    'ddbar',
    'extension',
)


def run(subcommand, path, stdout=None, **flags):
    """JSON on ``stdout``; returns the exit code (0, 1 or 2)."""
    stdout = stdout or sys.stdout
    if subcommand not in SUBCOMMANDS:
        stdout.write(render_json({
            'error': f'unknown subcommand {subcommand!r}',
            'code': UNKNOWN_SUBCOMMAND,
            'detail': list(SUBCOMMANDS),
        }) + '\n')
        return EXIT_DOMAIN_ERROR
    try:
        call_command(subcommand, str(path), stdout=stdout, **flags)
    except SystemExit as exc:
        return exc.code
    return EXIT_OK
