"""
Domain exceptions for the twisted cohomology toolkit.

Every error carries a machine-readable ``code`` that ends up in the
command-line error envelope (see core.api.exceptions):

{
    "error": "Human-readable message",
    "code":  "MACHINE_CODE",
    "detail": "Extra context or null"
}

Usage:
    from core.exceptions import DegreeError

    if not form.is_homogeneous(2):
        raise DegreeError('B must be a pure 2-form', detail=str(form))
"""

# ── Error codes ──────────────────────────────────────────────────────
GENERATOR_MISMATCH = 'GENERATOR_MISMATCH'
INDEX_OUT_OF_RANGE = 'INDEX_OUT_OF_RANGE'
DEGREE_ERROR = 'DEGREE_ERROR'
DIVISION_ERROR = 'DIVISION_ERROR'
NON_CONSTANT = 'NON_CONSTANT'
D_SQUARED_NONZERO = 'D_SQUARED_NONZERO'
H_NOT_CLOSED = 'H_NOT_CLOSED'
MODEL_INVALID = 'MODEL_INVALID'
INVALID_STRUCTURE = 'INVALID_STRUCTURE'
NOT_INTEGRABLE = 'NOT_INTEGRABLE'
PRECONDITION_FAILED = 'PRECONDITION_FAILED'
ACTION_INVALID = 'ACTION_INVALID'
NOT_BASIC = 'NOT_BASIC'
NOT_FREE = 'NOT_FREE'
EXTENSION_INFEASIBLE = 'EXTENSION_INFEASIBLE'
NOT_CALABI_YAU = 'NOT_CALABI_YAU'
DEGENERATE_FORM = 'DEGENERATE_FORM'
DEGREE_BOUND_VIOLATED = 'DEGREE_BOUND_VIOLATED'
PARSE_ERROR = 'PARSE_ERROR'


class TwistcalcError(Exception):
    """Base class; ``detail`` holds residuals or other context."""

    code = MODEL_INVALID

    def __init__(self, message, detail=None, code=None):
        super().__init__(message)
        self.message = message
        self.detail = detail
        if code is not None:
            self.code = code


# ── Algebra ──────────────────────────────────────────────────────────

class GeneratorMismatch(TwistcalcError):
    code = GENERATOR_MISMATCH


class IndexOutOfRange(TwistcalcError):
    code = INDEX_OUT_OF_RANGE


class DegreeError(TwistcalcError):
    code = DEGREE_ERROR


class DivisionError(TwistcalcError):
    code = DIVISION_ERROR


class NonConstantError(TwistcalcError):
    """A parameter-dependent value reached exact linear algebra."""
    code = NON_CONSTANT


# ── Models and structures ────────────────────────────────────────────

class ModelValidationError(TwistcalcError):
    code = MODEL_INVALID


class InvalidStructure(TwistcalcError):
    code = INVALID_STRUCTURE


class IntegrabilityError(TwistcalcError):
    code = NOT_INTEGRABLE


class PreconditionError(TwistcalcError):
    code = PRECONDITION_FAILED


# ── Equivariant layer ────────────────────────────────────────────────

class ActionValidationError(TwistcalcError):
    code = ACTION_INVALID


class NotBasic(TwistcalcError):
    code = NOT_BASIC


class NotFree(TwistcalcError):
    code = NOT_FREE


class ExtensionInfeasible(TwistcalcError):
    code = EXTENSION_INFEASIBLE


# ── Calabi-Yau / DH ──────────────────────────────────────────────────

class CalabiYauError(TwistcalcError):
    code = NOT_CALABI_YAU


class DegenerateForm(TwistcalcError):
    code = DEGENERATE_FORM


class DegreeBoundViolated(TwistcalcError):
    code = DEGREE_BOUND_VIOLATED


# ── Model files ──────────────────────────────────────────────────────

class ParseError(TwistcalcError):
    """Lexical, syntactic or validation error with a source location."""

    code = PARSE_ERROR

    def __init__(self, message, line=None, column=None, detail=None):
        location = f'line {line}, column {column}: ' if line is not None else ''
        super().__init__(f'{location}{message}', detail=detail)
        self.line = line
        self.column = column
