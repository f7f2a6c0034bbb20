"""
Uniform error envelope for command output.

Every failed command writes:
{
    "error": "Human-readable message",
    "code":  "MACHINE_CODE",
    "detail": "Extra context or null"
}

Residual forms in ``detail`` are rendered with the model printer, so they
read exactly like model-file expressions.
"""
from core.algebra.exterior import Form
from core.algebra.scalar import Scalar
from core.exceptions import PARSE_ERROR, ParseError, TwistcalcError
from core.geometry.cartan import EqForm
from core.modelfile.printer import format_eqform, format_form, format_scalar

# ── Error codes ──────────────────────────────────────────────────────
SERVER_ERROR = 'SERVER_ERROR'
UNKNOWN_SUBCOMMAND = 'UNKNOWN_SUBCOMMAND'

# ── Exit codes ───────────────────────────────────────────────────────
EXIT_OK = 0
EXIT_DOMAIN_ERROR = 1
EXIT_PARSE_ERROR = 2


def render_detail(value, names=None):
    """Turn residuals and nested containers into JSON-safe values."""
    if value is None or isinstance(value, (bool, int, str)):
        return value
    if isinstance(value, Form):
        return format_form(value, names)
    if isinstance(value, EqForm):
        return format_eqform(value, names)
    if isinstance(value, Scalar):
        return format_scalar(value)
    if isinstance(value, dict):
        return {str(key): render_detail(item, names) for key, item in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = sorted(value) if isinstance(value, (set, frozenset)) else value
        return [render_detail(item, names) for item in items]
    return str(value)


def error_envelope(exc, names=None):
    if isinstance(exc, ParseError):
        detail = exc.detail
        if detail is None and exc.line is not None:
            detail = {'line': exc.line, 'column': exc.column}
        return {
            'error': exc.message,
            'code': PARSE_ERROR,
            'detail': render_detail(detail, names),
        }
    if isinstance(exc, TwistcalcError):
        return {
            'error': exc.message,
            'code': exc.code,
            'detail': render_detail(exc.detail, names),
        }
    # Unexpected failure; the message is still useful to the caller
    return {
        'error': str(exc) or exc.__class__.__name__,
        'code': SERVER_ERROR,
        'detail': None,
    }


def exit_code_for(exc):
    if isinstance(exc, ParseError):
        return EXIT_PARSE_ERROR
    return EXIT_DOMAIN_ERROR
