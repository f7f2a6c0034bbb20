"""
Recursive-descent evaluator for form expressions.

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('-' | '+') unary | wedge
    wedge  := power ('^' power)*
    power  := atom ('**' NUMBER)?
    atom   := NUMBER | NAME | NAME '(' expr ')' | '(' expr ')'

Every value is a Form; scalars are 0-forms, so ``*`` and ``^`` agree.
"""
from core.algebra.exterior import Form, exp_two_form, reversal, wedge
from core.algebra.scalar import RESERVED_NAMES, Scalar
from core.exceptions import DivisionError, ParseError, TwistcalcError
from core.modelfile.lexer import END, NAME, NUMBER, OP

FUNCTIONS = {
    'exp': exp_two_form,
    'conj': lambda form: form.conjugate(),
    'sigma': reversal,
}


class Scope:
    """Names visible to an expression: generators, parameters, named forms."""

    def __init__(self, generators, parameters=(), forms=None):
        self.generators = {name: i for i, name in enumerate(generators, start=1)}
        self.parameters = set(parameters)
        self.forms = forms if forms is not None else {}

    @property
    def n(self):
        return len(self.generators)

    def resolve(self, token):
        name = token.text
        if name in self.generators:
            return Form.generator(self.n, self.generators[name])
        if name in self.parameters:
            return Form.scalar(self.n, Scalar.parameter(name))
        if name == 'i':
            return Form.scalar(self.n, Scalar.i())
        if name == 'pi':
            return Form.scalar(self.n, Scalar.pi())
        if name in self.forms:
            return self.forms[name]
        raise ParseError(f'undeclared symbol {name!r}', token.line, token.column)


class TokenStream:
    def __init__(self, tokens, position=0):
        self.tokens = tokens
        self.position = position

    @property
    def current(self):
        return self.tokens[self.position]

    def peek(self, text):
        token = self.current
        return token.kind in (OP, NAME) and token.text == text

    def advance(self):
        token = self.current
        if token.kind != END:
            self.position += 1
        return token

    def expect(self, text):
        token = self.current
        if not self.peek(text):
            raise ParseError(f'expected {text!r}, found {str(token)!r}', token.line, token.column)
        return self.advance()

    def expect_kind(self, kind, what):
        token = self.current
        if token.kind != kind:
            raise ParseError(f'expected {what}, found {str(token)!r}', token.line, token.column)
        return self.advance()

    def expect_end(self):
        token = self.current
        if token.kind != END:
            raise ParseError(f'unexpected {token.text!r}', token.line, token.column)

    def fail(self, message):
        raise ParseError(message, self.current.line, self.current.column)


class ExpressionParser:
    def __init__(self, stream, scope):
        self.stream = stream
        self.scope = scope

    def parse(self):
        return self.expr()

    def _guard(self, token, fn, *args):
        """Run an algebra operation and pin its failure to ``token``."""
        try:
            return fn(*args)
        except ParseError:
            raise
        except TwistcalcError as exc:
            raise ParseError(exc.message, token.line, token.column, detail=exc.detail) from exc

    def expr(self):
        value = self.term()
        while self.stream.peek('+') or self.stream.peek('-'):
            op = self.stream.advance()
            right = self.term()
            value = value + right if op.text == '+' else value - right
        return value

    def term(self):
        value = self.unary()
        while self.stream.peek('*') or self.stream.peek('/'):
            op = self.stream.advance()
            right = self.unary()
            if op.text == '*':
                value = wedge(value, right)
            else:
                value = self._guard(op, _divide, value, right)
        return value

    def unary(self):
        if self.stream.peek('-'):
            self.stream.advance()
            return -self.unary()
        if self.stream.peek('+'):
            self.stream.advance()
            return self.unary()
        return self.wedge()

    def wedge(self):
        value = self.power()
        while self.stream.peek('^'):
            self.stream.advance()
            value = wedge(value, self.power())
        return value

    def power(self):
        base = self.atom()
        if self.stream.peek('**'):
            self.stream.advance()
            exponent = int(self.stream.expect_kind(NUMBER, 'an integer exponent').text)
            result = Form.one(self.scope.n)
            for _ in range(exponent):
                result = wedge(result, base)
            return result
        return base

    def atom(self):
        token = self.stream.current
        if token.kind == NUMBER:
            self.stream.advance()
            return Form.scalar(self.scope.n, int(token.text))
        if token.kind == NAME:
            self.stream.advance()
            if self.stream.peek('(') and token.text in FUNCTIONS:
                self.stream.advance()
                argument = self.expr()
                self.stream.expect(')')
                return self._guard(token, FUNCTIONS[token.text], argument)
            if token.text in FUNCTIONS:
                raise ParseError(f'{token.text} needs an argument', token.line, token.column)
            return self.scope.resolve(token)
        if self.stream.peek('('):
            self.stream.advance()
            value = self.expr()
            self.stream.expect(')')
            return value
        self.stream.fail(f'expected an expression, found {str(token)!r}')


def _divide(value, divisor):
    if not divisor.is_homogeneous(0):
        raise DivisionError('division only by scalars')
    return value / divisor.coefficient(())


def parse_expression(stream, scope):
    return ExpressionParser(stream, scope).parse()


def scalar_value(form, token):
    """The coefficient of a 0-form, or a located error."""
    if not form.is_homogeneous(0):
        raise ParseError('expected a scalar', token.line, token.column)
    return form.coefficient(())


def check_name(token, taken):
    if token.text in RESERVED_NAMES or token.text in FUNCTIONS:
        raise ParseError(f'{token.text!r} is reserved', token.line, token.column)
    if token.text in taken:
        raise ParseError(f'{token.text!r} is already declared', token.line, token.column)
