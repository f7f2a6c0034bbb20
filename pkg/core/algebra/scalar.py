"""
Exact scalars: Gaussian-rational polynomials in named real parameters and
the formal unit ``pi``.

A Scalar wraps a sympy ``PolyElement`` over the field ``QQ_I``.  The ring
generators are the sorted parameter names followed by ``pi``; ``pi`` is a
formal symbol and is never evaluated numerically.  Scalars are immutable
and compare by value, independently of which parameters were declared when
they were built.

Usage:
    from core.algebra.scalar import Scalar

    t = Scalar.parameter('t')
    f = Scalar.of(-2) * Scalar.pi() * (t + 1)
    f.factored()          # '-2*pi*(t+1)'
    (Scalar.i() * t).conjugate() == -Scalar.i() * t
"""
from fractions import Fraction
from functools import lru_cache

import sympy
from sympy.polys.domains import QQ_I
from sympy.polys.orderings import lex
from sympy.polys.rings import PolyRing
from sympy.printing.str import StrPrinter

from core.exceptions import DivisionError, NonConstantError

PI_NAME = 'pi'
RESERVED_NAMES = frozenset({PI_NAME, 'i', 'exp', 'conj', 'sigma'})

GaussianRational = QQ_I.dtype


@lru_cache(maxsize=None)
def _ring(names):
    symbols = [sympy.Symbol(name, real=True) for name in names]
    symbols.append(sympy.Symbol(PI_NAME, positive=True))
    return PolyRing(symbols, QQ_I, lex)


def _reindex(poly, names, new_names):
    """Move ``poly`` from the ring over ``names`` to the ring over ``new_names``."""
    ring = _ring(new_names)
    if names == new_names:
        return poly
    positions = [new_names.index(name) for name in names]
    width = len(new_names) + 1
    terms = {}
    for monom, coeff in poly.items():
        exps = [0] * width
        for src, dst in enumerate(positions):
            exps[dst] = monom[src]
        exps[-1] = monom[-1]
        terms[tuple(exps)] = coeff
    return ring.from_dict(terms)


def gaussian(value):
    """Coerce an int, Fraction or QQ_I element to a QQ_I element."""
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, bool):
        value = int(value)
    if isinstance(value, (int, Fraction)):
        value = Fraction(value)
        return QQ_I.from_sympy(sympy.Rational(value.numerator, value.denominator))
    raise TypeError(f'cannot convert {type(value).__name__} to a Gaussian rational')


def gaussian_conjugate(value):
    return QQ_I(value.x, -value.y)


class _ScalarPrinter(StrPrinter):
    """sympy string printer spelling the imaginary unit as ``i``."""

    def _print_ImaginaryUnit(self, expr):
        return 'i'


_PRINTER = _ScalarPrinter({'order': 'lex'})


class Scalar:
    """Immutable exact coefficient."""

    __slots__ = ('_poly', '_names')

    def __init__(self, poly, names=()):
        names = tuple(names)
        if names:
            used = [
                name for position, name in enumerate(names)
                if any(monom[position] for monom in poly.keys())
            ]
            if len(used) != len(names):
                poly = _reindex_down(poly, names, tuple(used))
                names = tuple(used)
        self._poly = poly
        self._names = names

    # ── Constructors ─────────────────────────────────────────────────

    @classmethod
    def of(cls, value):
        """Coerce ints, Fractions, QQ_I elements and Scalars."""
        if isinstance(value, Scalar):
            return value
        return cls(_ring(()).ground_new(gaussian(value)))

    @classmethod
    def gaussian(cls, real, imag=0):
        value = gaussian(real) + gaussian(imag) * QQ_I(0, 1)
        return cls(_ring(()).ground_new(value))

    @classmethod
    def zero(cls):
        return cls(_ring(()).zero)

    @classmethod
    def one(cls):
        return cls(_ring(()).one)

    @classmethod
    def i(cls):
        return cls(_ring(()).ground_new(QQ_I(0, 1)))

    @classmethod
    def pi(cls):
        ring = _ring(())
        return cls(ring.gens[-1])

    @classmethod
    def parameter(cls, name):
        if name in RESERVED_NAMES:
            raise ValueError(f'{name!r} is reserved and cannot name a parameter')
        ring = _ring((name,))
        return cls(ring.gens[0], (name,))

    # ── Introspection ────────────────────────────────────────────────

    @property
    def parameters(self):
        return self._names

    @property
    def is_zero(self):
        return not self._poly

    @property
    def is_constant(self):
        """True for parameter-free, pi-free values (plain Gaussian rationals)."""
        if self._names:
            return False
        return all(monom[-1] == 0 for monom in self._poly.keys())

    @property
    def pi_power(self):
        """Common exponent of pi, or None when terms disagree."""
        powers = {monom[-1] for monom in self._poly.keys()}
        if not powers:
            return 0
        if len(powers) == 1:
            return powers.pop()
        return None

    def degree_in(self, name):
        if name not in self._names or self.is_zero:
            return 0
        position = self._names.index(name)
        return max(monom[position] for monom in self._poly.keys())

    def to_gaussian(self):
        if not self.is_constant:
            raise NonConstantError(
                'expected a parameter-free Gaussian rational', detail=str(self),
            )
        ring = _ring(())
        return self._poly.get(ring.zero_monom, QQ_I.zero)

    @property
    def is_real(self):
        return self == self.conjugate()

    # ── Arithmetic ───────────────────────────────────────────────────

    def _unify(self, other):
        if self._names == other._names:
            return self._poly, other._poly, self._names
        names = tuple(sorted(set(self._names) | set(other._names)))
        return (
            _reindex(self._poly, self._names, names),
            _reindex(other._poly, other._names, names),
            names,
        )

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        a, b, names = self._unify(other)
        return Scalar(a + b, names)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(-self._poly, self._names)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        a, b, names = self._unify(other)
        return Scalar(a - b, names)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, GaussianRational):
            return Scalar(self._poly.mul_ground(other), self._names)
        other = _coerce(other)
        if other is NotImplemented:
            return other
        a, b, names = self._unify(other)
        return Scalar(a * b, names)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not other.is_constant:
            raise DivisionError(
                'division only by parameter-free Gaussian rationals', detail=str(other),
            )
        divisor = other.to_gaussian()
        if divisor == QQ_I.zero:
            raise DivisionError('division by zero')
        return Scalar(self._poly.mul_ground(QQ_I.one / divisor), self._names)

    def __pow__(self, exponent):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError('only non-negative integer powers are supported')
        return Scalar(self._poly ** exponent, self._names)

    def conjugate(self):
        """Parameters and pi are real, so only the coefficients conjugate."""
        ring = _ring(self._names)
        terms = {monom: gaussian_conjugate(coeff) for monom, coeff in self._poly.items()}
        return Scalar(ring.from_dict(terms), self._names)

    def substitute(self, values):
        """Evaluate parameters at rational values; unknown names are kept."""
        values = {name: gaussian(Fraction(v)) for name, v in values.items() if name in self._names}
        if not values:
            return self
        keep = tuple(name for name in self._names if name not in values)
        keep_positions = [self._names.index(name) for name in keep]
        ring = _ring(keep)
        terms = {}
        for monom, coeff in self._poly.items():
            for position, name in enumerate(self._names):
                if name in values and monom[position]:
                    coeff = coeff * values[name] ** monom[position]
            reduced = tuple(monom[p] for p in keep_positions) + (monom[-1],)
            terms[reduced] = terms.get(reduced, QQ_I.zero) + coeff
        return Scalar(ring.from_dict(terms), keep)

    def diff(self, name):
        """Formal derivative with respect to a parameter."""
        if name not in self._names:
            return Scalar.zero()
        ring = _ring(self._names)
        return Scalar(self._poly.diff(ring.gens[self._names.index(name)]), self._names)

    # ── Comparison / output ──────────────────────────────────────────

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        a, b, _ = self._unify(other)
        return a == b

    def __hash__(self):
        return hash((self._names, frozenset(self._poly.items())))

    def __bool__(self):
        return not self.is_zero

    def as_expr(self):
        return self._poly.as_expr()

    def __str__(self):
        return _PRINTER.doprint(self.as_expr())

    def factored(self):
        """Factored, space-free rendering used for densities: ``-2*pi*(t+1)``."""
        return _PRINTER.doprint(sympy.factor(self.as_expr())).replace(' ', '')

    def __repr__(self):
        return f'Scalar({self})'

    @property
    def is_compound(self):
        """More than one term; printers parenthesize these."""
        return len(self._poly) > 1


def _reindex_down(poly, names, kept):
    ring = _ring(kept)
    positions = [names.index(name) for name in kept]
    terms = {}
    for monom, coeff in poly.items():
        reduced = tuple(monom[p] for p in positions) + (monom[-1],)
        terms[reduced] = coeff
    return ring.from_dict(terms)


def _coerce(value):
    if isinstance(value, Scalar):
        return value
    try:
        return Scalar.of(value)
    except TypeError:
        return NotImplemented


ZERO = Scalar.zero()
ONE = Scalar.one()
