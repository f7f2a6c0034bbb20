"""
Sparse exact exterior algebra on N degree-1 generators e1..eN.

A Form maps generator subsets (stored as bitmasks, bit i-1 for e_i) to
Scalars.  All signs come from the canonical increasing order of indices.

Usage:
    from core.algebra.exterior import Form, wedge, mukai, exp_two_form

    e1, e2 = Form.generator(2, 1), Form.generator(2, 2)
    wedge(e2, e1) == -wedge(e1, e2)
    rho = exp_two_form(Form.scalar(2, Scalar.i()) * wedge(e1, e2))   # 1 + i*e1^e2
"""
import logging
from functools import lru_cache

from core.algebra.scalar import ONE, ZERO, Scalar
from core.exceptions import DegreeError, GeneratorMismatch, IndexOutOfRange

logger = logging.getLogger('twistcalc.algebra')


# ── Index subsets ────────────────────────────────────────────────────

def mask_indices(mask):
    """1-based generator indices of a bitmask, increasing."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def indices_mask(indices):
    mask = 0
    for i in indices:
        mask |= 1 << (i - 1)
    return mask


def term_key(mask):
    """Canonical term order: degree first, then lexicographic indices."""
    return (mask.bit_count(), mask_indices(mask))


@lru_cache(maxsize=None)
def basis(n):
    """All 2^n subsets of n generators in canonical term order."""
    return tuple(sorted(range(1 << n), key=term_key))


@lru_cache(maxsize=None)
def basis_index(n):
    return {mask: position for position, mask in enumerate(basis(n))}


@lru_cache(maxsize=None)
def parity_basis(n, parity):
    return tuple(mask for mask in basis(n) if mask.bit_count() % 2 == parity)


@lru_cache(maxsize=None)
def degree_basis(n, q):
    return tuple(mask for mask in basis(n) if mask.bit_count() == q)


def wedge_sign(a, b):
    """Sign of e_a ∧ e_b = ±e_{a∪b} for disjoint masks."""
    inversions = 0
    rest = b
    j = 0
    while rest:
        if rest & 1:
            inversions += (a >> (j + 1)).bit_count()
        rest >>= 1
        j += 1
    return -1 if inversions % 2 else 1


def reversal_sign(mask):
    q = mask.bit_count()
    return -1 if (q * (q - 1) // 2) % 2 else 1


# ── Form ─────────────────────────────────────────────────────────────

class Form:
    """Immutable sparse multivector with exact coefficients."""

    __slots__ = ('_n', '_terms')

    def __init__(self, n, terms=None):
        if n < 0:
            raise ValueError('generator count must be non-negative')
        full = (1 << n) - 1
        clean = {}
        for mask, coeff in (terms or {}).items():
            if mask & ~full:
                raise IndexOutOfRange(f'term {mask_indices(mask)} exceeds {n} generators')
            coeff = Scalar.of(coeff)
            if not coeff.is_zero:
                clean[mask] = coeff
        self._n = n
        self._terms = clean

    # ── Constructors ─────────────────────────────────────────────────

    @classmethod
    def zero(cls, n):
        return cls(n)

    @classmethod
    def scalar(cls, n, value):
        return cls(n, {0: Scalar.of(value)})

    @classmethod
    def one(cls, n):
        return cls(n, {0: ONE})

    @classmethod
    def generator(cls, n, i):
        _check_index(n, i)
        return cls(n, {1 << (i - 1): ONE})

    @classmethod
    def monomial(cls, n, indices, coeff=ONE):
        """Wedge of generators in the given order (signs applied)."""
        form = cls.scalar(n, coeff)
        for i in indices:
            form = wedge(form, cls.generator(n, i))
        return form

    @classmethod
    def top(cls, n, coeff=ONE):
        return cls(n, {(1 << n) - 1: Scalar.of(coeff)})

    @classmethod
    def from_vector(cls, n, vector, masks=None):
        masks = basis(n) if masks is None else masks
        return cls(n, {mask: Scalar.of(v) for mask, v in zip(masks, vector)})

    # ── Introspection ────────────────────────────────────────────────

    @property
    def n_generators(self):
        return self._n

    def items(self):
        """(mask, coefficient) pairs in canonical term order."""
        for mask in sorted(self._terms, key=term_key):
            yield mask, self._terms[mask]

    def coefficient(self, indices):
        return self._terms.get(indices_mask(indices), ZERO)

    def coefficient_mask(self, mask):
        return self._terms.get(mask, ZERO)

    @property
    def top_coefficient(self):
        return self._terms.get((1 << self._n) - 1, ZERO)

    @property
    def is_zero(self):
        return not self._terms

    @property
    def degrees(self):
        return sorted({mask.bit_count() for mask in self._terms})

    def is_homogeneous(self, q):
        return all(mask.bit_count() == q for mask in self._terms)

    @property
    def parity(self):
        """0 or 1 when all terms share a parity, otherwise None."""
        parities = {mask.bit_count() % 2 for mask in self._terms}
        if len(parities) > 1:
            return None
        return parities.pop() if parities else 0

    def homogeneous_part(self, q):
        return Form(self._n, {m: c for m, c in self._terms.items() if m.bit_count() == q})

    def parity_part(self, parity):
        return Form(self._n, {m: c for m, c in self._terms.items() if m.bit_count() % 2 == parity})

    @property
    def parameters(self):
        names = set()
        for coeff in self._terms.values():
            names.update(coeff.parameters)
        return tuple(sorted(names))

    @property
    def is_constant(self):
        return all(coeff.is_constant for coeff in self._terms.values())

    def to_vector(self, masks=None):
        """Gaussian-rational coordinates in the given (default: full) basis."""
        masks = basis(self._n) if masks is None else masks
        return [self._terms.get(mask, ZERO).to_gaussian() for mask in masks]

    def to_scalar_vector(self, masks=None):
        masks = basis(self._n) if masks is None else masks
        return [self._terms.get(mask, ZERO) for mask in masks]

    # ── Coefficient maps ─────────────────────────────────────────────

    def map_coefficients(self, fn):
        return Form(self._n, {mask: fn(coeff) for mask, coeff in self._terms.items()})

    def conjugate(self):
        return self.map_coefficients(Scalar.conjugate)

    def substitute(self, values):
        return self.map_coefficients(lambda c: c.substitute(values))

    # ── Arithmetic ───────────────────────────────────────────────────

    def _check(self, other):
        if not isinstance(other, Form):
            raise TypeError(f'expected Form, got {type(other).__name__}')
        if other._n != self._n:
            raise GeneratorMismatch(
                f'forms on {self._n} and {other._n} generators cannot be combined',
            )

    def __add__(self, other):
        self._check(other)
        terms = dict(self._terms)
        for mask, coeff in other._terms.items():
            terms[mask] = terms.get(mask, ZERO) + coeff
        return Form(self._n, terms)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Form(self._n, {m: -c for m, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, Form):
            return wedge(self, other)
        value = Scalar.of(other)
        return Form(self._n, {m: c * value for m, c in self._terms.items()})

    def __rmul__(self, other):
        value = Scalar.of(other)
        return Form(self._n, {m: value * c for m, c in self._terms.items()})

    def __truediv__(self, other):
        return Form(self._n, {m: c / other for m, c in self._terms.items()})

    def __eq__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        return self._n == other._n and self._terms == other._terms

    def __hash__(self):
        return hash((self._n, frozenset(self._terms.items())))

    def __bool__(self):
        return not self.is_zero

    def __str__(self):
        from core.modelfile.printer import format_form
        return format_form(self)

    def __repr__(self):
        return f'Form({self._n}, {self})'


def _check_index(n, i):
    if not 1 <= i <= n:
        raise IndexOutOfRange(f'generator index {i} outside 1..{n}')


def _same_n(a, b):
    if a.n_generators != b.n_generators:
        raise GeneratorMismatch(
            f'forms on {a.n_generators} and {b.n_generators} generators cannot be combined',
        )


# ── Operations ───────────────────────────────────────────────────────

def wedge(a, b):
    _same_n(a, b)
    terms = {}
    for ma, ca in a._terms.items():
        for mb, cb in b._terms.items():
            if ma & mb:
                continue
            mask = ma | mb
            value = ca * cb
            if wedge_sign(ma, mb) < 0:
                value = -value
            terms[mask] = terms.get(mask, ZERO) + value
    return Form(a.n_generators, terms)


def contract(i, a):
    """ι_i, the interior product with the i-th dual vector."""
    _check_index(a.n_generators, i)
    bit = 1 << (i - 1)
    below = bit - 1
    terms = {}
    for mask, coeff in a._terms.items():
        if mask & bit:
            terms[mask ^ bit] = -coeff if (mask & below).bit_count() % 2 else coeff
    return Form(a.n_generators, terms)


def contract_vector(vector, a):
    """ι_X for X = Σ vector[i]·∂_{i+1}."""
    if len(vector) != a.n_generators:
        raise GeneratorMismatch(f'vector of length {len(vector)} on {a.n_generators} generators')
    result = Form.zero(a.n_generators)
    for i, value in enumerate(vector, start=1):
        value = Scalar.of(value)
        if not value.is_zero:
            result = result + contract(i, a) * value
    return result


def one_form(n, covector):
    return Form(n, {1 << i: Scalar.of(v) for i, v in enumerate(covector)})


def reversal(a):
    """σ: degree-q terms pick up (−1)^{q(q−1)/2}."""
    return Form(a.n_generators, {
        mask: (-coeff if reversal_sign(mask) < 0 else coeff)
        for mask, coeff in a._terms.items()
    })


def mukai(a, b):
    """Top coefficient of σ(a) ∧ b."""
    _same_n(a, b)
    full = (1 << a.n_generators) - 1
    total = ZERO
    for ma, ca in a._terms.items():
        mb = full ^ ma
        cb = b._terms.get(mb)
        if cb is None:
            continue
        value = ca * cb
        if reversal_sign(ma) * wedge_sign(ma, mb) < 0:
            value = -value
        total = total + value
    return total


def exp_two_form(B):
    """e^B = Σ B^k / k!, finite."""
    if not B.is_homogeneous(2):
        raise DegreeError('exponential needs a pure 2-form', detail=B.degrees)
    result = Form.one(B.n_generators)
    power = Form.one(B.n_generators)
    k = 0
    while True:
        k += 1
        power = wedge(power, B) / k
        if power.is_zero:
            return result
        result = result + power


def clifford(v, a):
    """(X + ξ)·a = ι_X a + ξ ∧ a with v = (X-part, ξ-part)."""
    n = a.n_generators
    if len(v) != 2 * n:
        raise GeneratorMismatch(f'Clifford vector of length {len(v)} for {n} generators')
    return contract_vector(v[:n], a) + wedge(one_form(n, v[n:]), a)


def pairing(u, v):
    """⟨X+α, Y+β⟩ = ½(β(X) + α(Y)) on coefficient vectors."""
    n = len(u) // 2
    total = ZERO
    for i in range(n):
        total = total + Scalar.of(v[n + i]) * Scalar.of(u[i]) + Scalar.of(u[n + i]) * Scalar.of(v[i])
    return total / 2


def integrate(a, volume=ONE, orientation=1):
    if orientation not in (1, -1):
        raise ValueError('orientation must be +1 or -1')
    value = Scalar.of(volume) * a.top_coefficient
    return value if orientation > 0 else -value


# ── Dense operator matrices ──────────────────────────────────────────

def operator_matrix(n, fn, domain=None, codomain=None):
    """
    Matrix of a linear map on forms, rows indexed by ``codomain`` masks and
    columns by ``domain`` masks (default: the full canonical basis).
    """
    domain = basis(n) if domain is None else domain
    codomain = basis(n) if codomain is None else codomain
    columns = [fn(Form(n, {mask: ONE})).to_vector(codomain) for mask in domain]
    logger.debug('operator matrix %dx%d on %d generators', len(codomain), len(domain), n)
    if not columns:
        return [[] for _ in codomain]
    return [list(row) for row in zip(*columns)]
