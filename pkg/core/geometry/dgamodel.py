"""
Invariant DGA models: generators e1..eN of degree 1, a structure
differential given on generators, and a closed twisting 3-form H.

d extends to all forms as a graded derivation:
    d(e_S) = Σ_{i∈S} (−1)^{#(S below i)} d(e_i) ∧ e_{S∖i}
and d_H = d − H∧ is the twisted differential.  Cohomology ranks are exact
(Gaussian-rational elimination) and ℤ₂-graded, because d_H mixes degrees.

Usage:
    from core.geometry.dgamodel import Model, twisted_cohomology

    t3 = Model.torus(3, H=Form.monomial(3, (1, 2, 3)))
    twisted_cohomology(t3)      # BettiPair(even=3, odd=3)
"""
import logging
from dataclasses import dataclass
from functools import cached_property

from core.algebra import linalg
from core.algebra.exterior import (
    Form,
    basis,
    clifford,
    degree_basis,
    exp_two_form,
    mask_indices,
    operator_matrix,
    parity_basis,
    reversal,
    wedge,
)
from core.algebra.scalar import ONE, Scalar
from core.exceptions import (
    D_SQUARED_NONZERO,
    H_NOT_CLOSED,
    DegreeError,
    GeneratorMismatch,
    IntegrabilityError,
    ModelValidationError,
    PreconditionError,
)
from core.geometry import gclinear
from core.geometry.report import Report

logger = logging.getLogger('twistcalc.dga')

COEFFICIENT_FIELD = 'Q(i)'


# ── Model ────────────────────────────────────────────────────────────

class Model:
    """Validated invariant model; immutable after construction."""

    def __init__(self, n_generators, d_table=None, H=None, volume=ONE, orientation=1,
                 name='', generator_names=None):
        self.n_generators = n_generators
        self.d_table = tuple(d_table) if d_table is not None else tuple(
            Form.zero(n_generators) for _ in range(n_generators)
        )
        self.H = H if H is not None else Form.zero(n_generators)
        self.volume = Scalar.of(volume)
        if orientation not in (1, -1):
            raise ModelValidationError('orientation must be +1 or -1', detail=orientation)
        self.orientation = orientation
        self.name = name
        self.generator_names = tuple(generator_names) if generator_names else tuple(
            f'e{i}' for i in range(1, n_generators + 1)
        )
        self._d_cache = {}
        self._validate()

    @classmethod
    def torus(cls, n, H=None, **kwargs):
        return cls(n, H=H, **kwargs)

    def _validate(self):
        n = self.n_generators
        if len(self.d_table) != n:
            raise ModelValidationError(f'{len(self.d_table)} differentials for {n} generators')
        if len(self.generator_names) != n:
            raise ModelValidationError('one name per generator required')
        for i, image in enumerate(self.d_table, start=1):
            if image.n_generators != n:
                raise GeneratorMismatch(f'd e{i} lives on {image.n_generators} generators')
            if not image.is_homogeneous(2):
                raise ModelValidationError(f'd e{i} must be a 2-form', detail=str(image))
            if not image.is_constant:
                raise ModelValidationError(f'd e{i} must have constant coefficients', detail=str(image))
        if self.H.n_generators != n:
            raise GeneratorMismatch(f'H lives on {self.H.n_generators} generators')
        if not self.H.is_homogeneous(3):
            raise ModelValidationError('H must be a 3-form', detail=str(self.H))
        if not self.H.is_constant:
            raise ModelValidationError('H must have constant coefficients', detail=str(self.H))
        for i, image in enumerate(self.d_table, start=1):
            residual = self.d(image)
            if not residual.is_zero:
                raise ModelValidationError(
                    f'd∘d is nonzero on e{i}', detail=residual, code=D_SQUARED_NONZERO,
                )
        residual = self.d(self.H)
        if not residual.is_zero:
            raise ModelValidationError('H not closed', detail=residual, code=H_NOT_CLOSED)

    def with_twist(self, H):
        return Model(self.n_generators, self.d_table, H, self.volume, self.orientation,
                     self.name, self.generator_names)

    @property
    def is_twisted(self):
        return not self.H.is_zero

    @property
    def is_abelian(self):
        return all(image.is_zero for image in self.d_table)

    # ── Differentials ────────────────────────────────────────────────

    def _d_mask(self, mask):
        cached = self._d_cache.get(mask)
        if cached is not None:
            return cached
        n = self.n_generators
        result = Form.zero(n)
        for i in mask_indices(mask):
            image = self.d_table[i - 1]
            if image.is_zero:
                continue
            bit = 1 << (i - 1)
            rest = Form(n, {mask ^ bit: ONE})
            term = wedge(image, rest)
            if (mask & (bit - 1)).bit_count() % 2:
                term = -term
            result = result + term
        self._d_cache[mask] = result
        return result

    def d(self, a):
        self._check(a)
        result = Form.zero(self.n_generators)
        for mask, coeff in a.items():
            image = self._d_mask(mask)
            if not image.is_zero:
                result = result + image * coeff
        return result

    def d_twisted(self, a):
        return self.d(a) - wedge(self.H, a)

    def _check(self, a):
        if a.n_generators != self.n_generators:
            raise GeneratorMismatch(
                f'form on {a.n_generators} generators, model has {self.n_generators}',
            )

    # ── Dense matrices ───────────────────────────────────────────────

    @cached_property
    def d_twisted_matrix(self):
        return operator_matrix(self.n_generators, self.d_twisted)

    def parity_block(self, parity):
        """Matrix of d_H from the given parity to the opposite one."""
        n = self.n_generators
        return operator_matrix(
            n, self.d_twisted, domain=parity_basis(n, parity), codomain=parity_basis(n, 1 - parity),
        )

    def __repr__(self):
        return f'Model({self.name or self.n_generators})'


@dataclass(frozen=True)
class BettiPair:
    even: int
    odd: int
    over: str = COEFFICIENT_FIELD

    @property
    def euler_characteristic(self):
        return self.even - self.odd


# ── Module operations ────────────────────────────────────────────────

def d(m, a):
    return m.d(a)


def d_twisted(m, a):
    return m.d_twisted(a)


def twisted_cohomology(m):
    n = m.n_generators
    even_dim = len(parity_basis(n, 0))
    odd_dim = len(parity_basis(n, 1))
    rank_even = linalg.rank(m.parity_block(0))
    rank_odd = linalg.rank(m.parity_block(1))
    result = BettiPair(even=even_dim - rank_even - rank_odd, odd=odd_dim - rank_odd - rank_even)
    logger.debug('twisted cohomology of %r: %s', m, result)
    return result


def betti_numbers(m):
    """ℤ-graded Betti numbers b_0..b_N; only defined for H = 0."""
    if m.is_twisted:
        raise PreconditionError('ℤ-graded Betti numbers need H = 0; use the ℤ₂-graded ranks')
    n = m.n_generators
    ranks = []
    for q in range(n + 1):
        if q == n:
            ranks.append(0)
            continue
        block = operator_matrix(n, m.d, domain=degree_basis(n, q), codomain=degree_basis(n, q + 1))
        ranks.append(linalg.rank(block))
    return [
        len(degree_basis(n, q)) - ranks[q] - (ranks[q - 1] if q else 0)
        for q in range(n + 1)
    ]


def exp_lambda_transport(m, lam, a):
    """e^λ ∧ a; carries d_H-closed forms to d_{H+dλ}-closed ones."""
    if not lam.is_homogeneous(2):
        raise DegreeError('λ must be a 2-form', detail=lam.degrees)
    m._check(lam)
    return wedge(exp_two_form(lam), a)


def transported_model(m, lam):
    """The model with twist H + dλ."""
    return m.with_twist(m.H + m.d(lam))


def module_wedge(m, a, b):
    residual = m.d(a)
    if not residual.is_zero:
        raise PreconditionError('first factor is not d-closed', detail=residual)
    residual = m.d_twisted(b)
    if not residual.is_zero:
        raise PreconditionError('second factor is not d_H-closed', detail=residual)
    product = wedge(a, b)
    residual = m.d_twisted(product)
    if not residual.is_zero:
        raise PreconditionError('product is not d_H-closed', detail=residual)
    return product


@dataclass(frozen=True)
class SigmaTwist:
    form: Form
    closed: bool


def sigma_twist(m, a):
    """σ(a) for a d_H-closed a, checked to be d_{−H}-closed."""
    residual = m.d_twisted(a)
    if not residual.is_zero:
        raise PreconditionError('form is not d_H-closed', detail=residual)
    image = reversal(a)
    closed = (m.d(image) + wedge(m.H, image)).is_zero
    return SigmaTwist(image, closed)


def sigma_annihilator_check(vector, covector, a):
    """If (X + γ)·a = 0 then (X − γ)·σ(a) = 0."""
    report = Report()
    forward = clifford(list(vector) + list(covector), a)
    if not forward.is_zero:
        return report.fail('(X + γ)·a = 0', forward)
    negated = [-Scalar.of(v) for v in covector]
    backward = clifford(list(vector) + negated, reversal(a))
    if not backward.is_zero:
        report.fail('(X − γ)·σ(a) = 0', backward)
    return report


def is_exact(m, a):
    """a ∈ im d_H."""
    columns = linalg.transpose(m.d_twisted_matrix)
    return linalg.span_contains(columns, a.to_vector())


# ── Dolbeault split ──────────────────────────────────────────────────

class DolbeaultSplit:
    """
    ∂ and ∂̄ of d_H for a constant structure J on the model frame, as dense
    operators over the full exterior algebra.
    """

    def __init__(self, m, J):
        if J.dim != m.n_generators:
            raise GeneratorMismatch(f'structure on dimension {J.dim}, model has {m.n_generators} generators')
        self.model = m
        self.J = J
        self.size = 1 << m.n_generators
        self.pieces = gclinear.uk_grading(J)
        self.labels = [piece.k for piece in self.pieces]
        columns = [list(v) for piece in self.pieces for v in piece.basis]
        frame = linalg.transpose(columns)
        inverse = linalg.inverse(frame)
        self.projections = {}
        start = 0
        for piece in self.pieces:
            stop = start + piece.dimension
            block = [row[start:stop] for row in frame]
            coords = inverse[start:stop]
            self.projections[piece.k] = linalg.matmul(block, coords)
            start = stop
        D = m.d_twisted_matrix
        n = J.half_dim
        self.del_ = linalg.zeros(self.size, self.size)
        self.delbar = linalg.zeros(self.size, self.size)
        self.residual = linalg.zeros(self.size, self.size)
        for k in self.labels:
            moved = linalg.matmul(D, self.projections[k])
            for j in self.labels:
                part = linalg.matmul(self.projections[j], moved)
                if linalg.is_zero_matrix(part):
                    continue
                if j == k - 1:
                    self.del_ = linalg.add(self.del_, part)
                elif j == k + 1:
                    self.delbar = linalg.add(self.delbar, part)
                else:
                    self.residual = linalg.add(self.residual, part)
                    logger.debug('integrability residual U^%d -> U^%d (n=%d)', k, j, n)

    @property
    def integrable(self):
        return linalg.is_zero_matrix(self.residual)

    def component(self, a, k):
        return self._apply(self.projections[k], a)

    def _apply(self, matrix, a):
        n = self.model.n_generators
        return Form.from_vector(n, linalg.matvec(matrix, a.to_vector()))

    def split(self, a):
        for k in self.labels:
            piece = self.component(a, k)
            if piece.is_zero:
                continue
            image = self.model.d_twisted(piece)
            for j in self.labels:
                if j in (k - 1, k + 1):
                    continue
                stray = self.component(image, j)
                if not stray.is_zero:
                    raise IntegrabilityError(
                        f'd_H maps U^{k} into U^{j}', detail={'k': k, 'j': j, 'residual': stray},
                    )
        return self._apply(self.del_, a), self._apply(self.delbar, a)


def del_delbar_split(m, J, a):
    return DolbeaultSplit(m, J).split(a)


def _image(matrix, vectors):
    return [linalg.matvec(matrix, v) for v in vectors]


def _columns(matrix):
    return [list(col) for col in zip(*matrix)] if matrix else []


def ddbar_lemma_check(m, J, split=None):
    """
    ker∂ ∩ im∂̄ = im∂ ∩ ker∂̄ = im∂̄∂, by ranks.  Both intersections always
    contain im∂̄∂, so the lemma holds when the dimensions agree.
    """
    split = split or DolbeaultSplit(m, J)
    if not split.integrable:
        raise IntegrabilityError('structure is not integrable on this model', detail='residual operator nonzero')
    size = split.size
    delbar_del = linalg.matmul(split.delbar, split.del_)
    first = _image(split.delbar, linalg.nullspace(linalg.matmul(split.del_, split.delbar), size))
    second = _image(split.del_, linalg.nullspace(linalg.matmul(split.delbar, split.del_), size))
    exact = _columns(delbar_del)
    report = Report()
    target = linalg.span_rank(exact)
    dims = {
        'ker_del_im_delbar': linalg.span_rank(first),
        'im_del_ker_delbar': linalg.span_rank(second),
        'im_delbar_del': target,
    }
    report.details.update(dims)
    for identity, vectors in (('ker∂ ∩ im∂̄ = im∂̄∂', first), ('im∂ ∩ ker∂̄ = im∂̄∂', second)):
        if linalg.span_rank(vectors) == target:
            continue
        report.fail(identity)
        if report.witness is None:
            for v in vectors:
                if not linalg.span_contains(exact, v):
                    report.witness = Form.from_vector(m.n_generators, v)
                    break
    return report


def _parity_of(vector, n):
    lead = next(p for p, value in enumerate(vector) if value != linalg.ZERO)
    return basis(n)[lead].bit_count() % 2


def delbar_closed_cohomology(m, J, split=None):
    """ℤ₂-graded d_H-cohomology of the subcomplex ker ∂̄."""
    split = split or DolbeaultSplit(m, J)
    n = m.n_generators
    kernel = {0: [], 1: []}
    for piece in split.pieces:
        frame = linalg.transpose([list(v) for v in piece.basis])
        parity = _parity_of(piece.basis[0], n)
        restricted = linalg.matmul(split.delbar, frame)
        for coeffs in linalg.nullspace(restricted, piece.dimension):
            kernel[parity].append(linalg.matvec(frame, coeffs))
    D = m.d_twisted_matrix
    image_rank = {p: linalg.span_rank(_image(D, kernel[p])) for p in (0, 1)}
    ranks = {
        p: len(kernel[p]) - image_rank[p] - image_rank[1 - p]
        for p in (0, 1)
    }
    return BettiPair(even=ranks[0], odd=ranks[1])


# ── Morphisms ────────────────────────────────────────────────────────

@dataclass(frozen=True)
class ModelMorphism:
    """DGA morphism fixed by the images of the source generators."""

    source: Model
    target: Model
    images: tuple

    def __post_init__(self):
        if len(self.images) != self.source.n_generators:
            raise ModelValidationError('one image per source generator required')
        for i, image in enumerate(self.images, start=1):
            if image.n_generators != self.target.n_generators:
                raise GeneratorMismatch(f'image of e{i} is not on the target model')
            if not image.is_homogeneous(1):
                raise DegreeError(f'image of e{i} must be a 1-form', detail=str(image))
            residual = self.target.d(image) - self.pullback(self.source.d_table[i - 1])
            if not residual.is_zero:
                raise ModelValidationError(f'morphism does not commute with d on e{i}', detail=residual)

    @classmethod
    def identity(cls, m):
        return cls(m, m, tuple(Form.generator(m.n_generators, i) for i in range(1, m.n_generators + 1)))

    def pullback(self, a):
        if a.n_generators != self.source.n_generators:
            raise GeneratorMismatch('form is not on the source model')
        n = self.target.n_generators
        result = Form.zero(n)
        for mask, coeff in a.items():
            term = Form.scalar(n, coeff)
            for i in mask_indices(mask):
                term = wedge(term, self.images[i - 1])
            result = result + term
        return result
