"""
Model-file loader: statements → validated Model, structures, actions and
families.

Evaluation runs in two passes.  The first evaluates the header, the
differential table, H, named forms, structures and samples in file order;
the Model is then built and validated; the second pass builds actions and
families against it.  Validation failures of the model, an action or a
family keep their own error class and gain the line of the offending
statement.

Usage:
    from core.modelfile.loader import load_model

    mf = load_model('core/fixtures/models/t3_twisted.model')
    mf.model.H      # Form e1^e2^e3
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from core.algebra.exterior import Form
from core.algebra.scalar import ONE
from core.exceptions import H_NOT_CLOSED, ParseError, PreconditionError, TwistcalcError
from core.geometry import gclinear
from core.geometry.cartan import TorusAction
from core.geometry.dgamodel import Model
from core.geometry.gcydh import quotient_family
from core.modelfile.expressions import (
    Scope,
    TokenStream,
    check_name,
    parse_expression,
    scalar_value,
)
from core.modelfile.lexer import END, NAME, NUMBER, OP, logical_lines

logger = logging.getLogger('twistcalc.modelfile')

DEFAULT_SAMPLES = (0, 1, Fraction(-1, 2))

HEADER_KEYWORDS = {'model', 'generators', 'parameters'}
ACTION_KEYS = ('xi', 'mu_diff', 'alpha', 'theta')


@dataclass
class ModelFile:
    name: str
    generators: tuple
    parameters: tuple
    model: Model
    forms: dict = field(default_factory=dict)
    spinors: dict = field(default_factory=dict)
    structures: dict = field(default_factory=dict)
    actions: dict = field(default_factory=dict)
    families: dict = field(default_factory=dict)
    samples: dict = field(default_factory=dict)
    path: str = ''

    def _pick(self, table, kind, name):
        if name is not None:
            if name not in table:
                raise PreconditionError(f'no {kind} named {name!r}', detail=sorted(table))
            return table[name]
        if len(table) == 1:
            return next(iter(table.values()))
        if not table:
            raise PreconditionError(f'the model file declares no {kind}')
        raise PreconditionError(f'several {kind}s declared; choose one', detail=sorted(table))

    def structure(self, name=None):
        return self._pick(self.structures, 'structure', name)

    def action(self, name=None):
        return self._pick(self.actions, 'action', name)

    def family(self, name=None):
        return self._pick(self.families, 'family', name)

    def form(self, name=None):
        return self._pick({**self.forms, **self.spinors}, 'form', name)

    def spinor(self, name=None):
        return self._pick(self.spinors, 'spinor', name)


@dataclass
class _Statement:
    keyword: str
    line: int
    tokens: list
    body: list = field(default_factory=list)


def _is_assignment(tokens):
    return tokens[0].kind == NAME and tokens[1].kind == OP and tokens[1].text == '='


def _located(exc, line):
    """Attach a source line to a domain error without changing its class."""
    if getattr(exc, 'line', None) is None:
        exc.line = line
        exc.message = f'line {line}: {exc.message}'
        exc.args = (exc.message,)
    return exc


class Loader:
    def __init__(self, text, default_samples=DEFAULT_SAMPLES, path=''):
        self.text = text
        self.default_samples = tuple(default_samples)
        self.path = path
        self.name = ''
        self.generators = ()
        self.parameters = ()
        self.scope = None
        self.d_table = {}
        self.H = None
        self.volume = ONE
        self.orientation = 1
        self.forms = {}
        self.spinors = {}
        self.structures = {}
        self.samples = {}
        self.deferred = []
        self.lines = {}

    # ── Statement splitting ──────────────────────────────────────────

    def statements(self):
        current = None
        for line, tokens in logical_lines(self.text):
            head = tokens[0]
            if current is not None:
                if head.kind == NAME and head.text == 'end' and tokens[1].kind == END:
                    yield current
                    current = None
                    continue
                current.body.append((line, tokens))
                continue
            if head.kind != NAME:
                raise ParseError(f'expected a keyword, found {head.text!r}', line, head.column)
            statement = _Statement(head.text, line, tokens)
            if head.text == 'action':
                current = statement
                continue
            yield statement
        if current is not None:
            raise ParseError("action block is missing 'end'", current.line, 1)

    # ── Loading ──────────────────────────────────────────────────────

    def load(self):
        for statement in self.statements():
            handler = getattr(self, f'_stmt_{statement.keyword}', None)
            if handler is None and _is_assignment(statement.tokens):
                handler = self._assignment
            if handler is None:
                head = statement.tokens[0]
                raise ParseError(f'unknown statement {head.text!r}', head.line, head.column)
            if statement.keyword not in HEADER_KEYWORDS and self.scope is None:
                raise ParseError("'generators' must come before any expression", statement.line, 1)
            handler(statement)
        if self.scope is None:
            raise ParseError("model file declares no 'generators'", 1, 1)
        model = self._build_model()
        actions, families = {}, {}
        for kind, statement, payload in self.deferred:
            try:
                if kind == 'action':
                    actions[payload['name']] = self._build_action(model, payload)
                else:
                    families[payload['name']] = self._build_family(model, payload)
            except ParseError:
                raise
            except TwistcalcError as exc:
                raise _located(exc, statement.line) from exc
        logger.debug('loaded model file %s: %d forms, %d actions, %d families',
                     self.path or self.name, len(self.forms), len(actions), len(families))
        return ModelFile(
            name=self.name, generators=self.generators, parameters=self.parameters,
            model=model, forms=self.forms, spinors=self.spinors, structures=self.structures,
            actions=actions, families=families, samples=self.samples, path=self.path,
        )

    def _build_model(self):
        n = len(self.generators)
        d_table = [self.d_table.get(i, Form.zero(n)) for i in range(1, n + 1)]
        try:
            return Model(
                n, d_table, self.H, volume=self.volume, orientation=self.orientation,
                name=self.name, generator_names=self.generators,
            )
        except TwistcalcError as exc:
            line = self.lines.get('H') if exc.code == H_NOT_CLOSED else self.lines.get('d')
            raise _located(exc, line or self.lines.get('generators', 1)) from exc

    # ── Header ───────────────────────────────────────────────────────

    def _names_after(self, stream):
        names = []
        while stream.current.kind != END:
            if stream.peek(','):
                stream.advance()
                continue
            names.append(stream.expect_kind(NAME, 'a name'))
        return names

    def _stmt_model(self, statement):
        stream = TokenStream(statement.tokens, 1)
        self.name = stream.expect_kind(NAME, 'a model name').text
        stream.expect_end()

    def _stmt_generators(self, statement):
        if self.scope is not None:
            raise ParseError('generators declared twice', statement.line, 1)
        stream = TokenStream(statement.tokens, 1)
        taken = set()
        for token in self._names_after(stream):
            check_name(token, taken | set(self.parameters))
            taken.add(token.text)
        self.generators = tuple(t.text for t in statement.tokens[1:-1] if t.kind == NAME)
        self.scope = Scope(self.generators, self.parameters, {})
        self.H = Form.zero(len(self.generators))
        self.lines['generators'] = statement.line

    def _stmt_parameters(self, statement):
        stream = TokenStream(statement.tokens, 1)
        taken = set(self.parameters) | set(self.generators)
        for token in self._names_after(stream):
            check_name(token, taken)
            taken.add(token.text)
            self.parameters += (token.text,)
        if self.scope is not None:
            self.scope.parameters = set(self.parameters)

    # ── Model data ───────────────────────────────────────────────────

    def _expression(self, stream):
        value = parse_expression(stream, self.scope)
        stream.expect_end()
        return value

    def _scalar(self, stream):
        token = stream.current
        return scalar_value(parse_expression(stream, self.scope), token)

    def _stmt_d(self, statement):
        stream = TokenStream(statement.tokens, 1)
        token = stream.expect_kind(NAME, 'a generator name')
        if token.text not in self.scope.generators:
            raise ParseError(f'{token.text!r} is not a generator', token.line, token.column)
        index = self.scope.generators[token.text]
        if index in self.d_table:
            raise ParseError(f'd {token.text} assigned twice', token.line, token.column)
        stream.expect('=')
        self.d_table[index] = self._expression(stream)
        self.lines.setdefault('d', statement.line)

    def _stmt_H(self, statement):
        stream = TokenStream(statement.tokens, 1)
        stream.expect('=')
        self.H = self._expression(stream)
        self.lines['H'] = statement.line

    def _stmt_volume(self, statement):
        stream = TokenStream(statement.tokens, 1)
        stream.expect('=')
        self.volume = self._scalar(stream)
        stream.expect_end()

    def _stmt_orientation(self, statement):
        stream = TokenStream(statement.tokens, 1)
        stream.expect('=')
        token = stream.current
        value = self._scalar(stream)
        stream.expect_end()
        if value not in (ONE, -ONE):
            raise ParseError('orientation must be +1 or -1', token.line, token.column)
        self.orientation = 1 if value == ONE else -1

    def _named(self, statement, table, start=1):
        stream = TokenStream(statement.tokens, start)
        token = stream.expect_kind(NAME, 'a name')
        check_name(token, set(self.generators) | set(self.parameters) | set(self.scope.forms))
        stream.expect('=')
        value = self._expression(stream)
        table[token.text] = value
        self.scope.forms[token.text] = value

    def _stmt_form(self, statement):
        self._named(statement, self.forms)

    def _stmt_spinor(self, statement):
        self._named(statement, self.spinors)

    def _assignment(self, statement):
        # bare `NAME = expr` declares a spinor
        self._named(statement, self.spinors, start=0)

    def _stmt_samples(self, statement):
        stream = TokenStream(statement.tokens, 1)
        token = stream.expect_kind(NAME, 'a parameter name')
        if token.text not in self.parameters:
            raise ParseError(f'{token.text!r} is not a declared parameter', token.line, token.column)
        stream.expect('=')
        values = []
        while True:
            start = stream.current
            value = self._scalar(stream)
            if not value.is_constant or not value.is_real:
                raise ParseError('samples must be rational numbers', start.line, start.column)
            gaussian = value.to_gaussian()
            values.append(Fraction(int(gaussian.x.numerator), int(gaussian.x.denominator)))
            if not stream.peek(','):
                break
            stream.advance()
        stream.expect_end()
        self.samples[token.text] = tuple(values)

    # ── Structures ───────────────────────────────────────────────────

    def _matrix(self, stream):
        rows = []
        stream.expect('[')
        while True:
            stream.expect('[')
            row = []
            while True:
                start = stream.current
                value = self._scalar(stream)
                if not value.is_constant:
                    raise ParseError('matrix entries must be constants', start.line, start.column)
                row.append(value.to_gaussian())
                if not stream.peek(','):
                    break
                stream.advance()
            stream.expect(']')
            rows.append(row)
            if not stream.peek(','):
                break
            stream.advance()
        stream.expect(']')
        return rows

    def _stmt_structure(self, statement):
        stream = TokenStream(statement.tokens, 1)
        token = stream.expect_kind(NAME, 'a structure name')
        check_name(token, set(self.structures))
        stream.expect('=')
        kind = stream.expect_kind(NAME, 'symplectic, complex, matrix or btransform')
        stream.expect('(')
        try:
            if kind.text == 'symplectic':
                structure = gclinear.symplectic_structure(parse_expression(stream, self.scope))
            elif kind.text == 'complex':
                structure = gclinear.complex_structure(self._matrix(stream))
            elif kind.text == 'matrix':
                structure = gclinear.GCMap.from_rows(self._matrix(stream))
            elif kind.text == 'btransform':
                base = stream.expect_kind(NAME, 'a structure name')
                if base.text not in self.structures:
                    raise ParseError(f'undeclared structure {base.text!r}', base.line, base.column)
                stream.expect(',')
                structure = gclinear.b_transform(
                    self.structures[base.text], parse_expression(stream, self.scope),
                )
            else:
                raise ParseError(f'unknown structure kind {kind.text!r}', kind.line, kind.column)
        except ParseError:
            raise
        except TwistcalcError as exc:
            raise ParseError(exc.message, kind.line, kind.column, detail=exc.detail) from exc
        stream.expect(')')
        stream.expect_end()
        self.structures[token.text] = structure

    # ── Deferred: actions and families ───────────────────────────────

    def _stmt_action(self, statement):
        stream = TokenStream(statement.tokens, 1)
        token = stream.expect_kind(NAME, 'an action name')
        check_name(token, {p['name'] for kind, _, p in self.deferred if kind == 'action'})
        stream.expect_end()
        payload = {'name': token.text, 'xi': [], 'mu_diff': [], 'alpha': [], 'theta': []}
        for _line, tokens in statement.body:
            inner = TokenStream(tokens)
            key = inner.expect_kind(NAME, 'xi, mu_diff, alpha or theta')
            if key.text not in ACTION_KEYS:
                raise ParseError(f'unknown action entry {key.text!r}', key.line, key.column)
            inner.expect('=')
            if key.text == 'xi':
                vector = []
                while True:
                    start = inner.current
                    value = self._scalar(inner)
                    if not value.is_constant:
                        raise ParseError('xi entries must be constants', start.line, start.column)
                    vector.append(value)
                    if not inner.peek(','):
                        break
                    inner.advance()
                inner.expect_end()
                payload['xi'].append(vector)
            else:
                payload[key.text].append(self._expression(inner))
        if not payload['xi']:
            raise ParseError('action declares no xi', statement.line, 1)
        self.deferred.append(('action', statement, payload))

    def _build_action(self, model, payload):
        return TorusAction(
            model, payload['xi'],
            mu_diff=payload['mu_diff'] or None,
            alpha=payload['alpha'] or None,
            theta=payload['theta'] or None,
            name=payload['name'],
        )

    def _stmt_family(self, statement):
        stream = TokenStream(statement.tokens, 1)
        token = stream.expect_kind(NAME, 'a family name')
        check_name(token, {p['name'] for kind, _, p in self.deferred if kind == 'family'})
        stream.expect('=')
        head = stream.expect_kind(NAME, 'quotient')
        if head.text != 'quotient':
            raise ParseError(f'unknown family kind {head.text!r}', head.line, head.column)
        stream.expect('(')
        rho = parse_expression(stream, self.scope)
        stream.expect(',')
        c = parse_expression(stream, self.scope)
        stream.expect(',')
        parameter = stream.expect_kind(NAME, 'a parameter name')
        if parameter.text not in self.parameters:
            raise ParseError(f'{parameter.text!r} is not a declared parameter',
                             parameter.line, parameter.column)
        stream.expect(')')
        options = {}
        while stream.current.kind != END:
            key = stream.expect_kind(NAME, 'n, k or type')
            if key.text not in ('n', 'k', 'type'):
                raise ParseError(f'unknown family option {key.text!r}', key.line, key.column)
            stream.expect('=')
            options[key.text] = int(stream.expect_kind(NUMBER, 'an integer').text)
        for required in ('n', 'k'):
            if required not in options:
                raise ParseError(f'family needs {required}=INT', statement.line, 1)
        self.deferred.append(('family', statement, {
            'name': token.text, 'rho': rho, 'c': c, 'parameter': parameter.text, **options,
        }))

    def _build_family(self, model, payload):
        parameter = payload['parameter']
        samples = {parameter: self.samples.get(parameter, self.default_samples)}
        return quotient_family(
            model, payload['rho'], payload['c'], parameter, samples,
            n=payload['n'], k=payload['k'], type=payload.get('type'), name=payload['name'],
        )


def parse_model(text, default_samples=DEFAULT_SAMPLES, path=''):
    return Loader(text, default_samples, path).load()


def load_model(path, default_samples=DEFAULT_SAMPLES):
    path = Path(path)
    return parse_model(path.read_text(encoding='utf-8'), default_samples, str(path))
