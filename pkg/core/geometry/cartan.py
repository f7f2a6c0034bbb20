"""
Truncated Cartan model for torus actions on invariant models.

An equivariant form is a polynomial in x_1..x_k with Form coefficients,
kept up to a total x-degree ``trunc``.  Operators follow the sign

    d_G = d − x^j ι_j
    d_{G,H_G} = d_G − H_G∧,          H_G = H + x^j α^j
    𝒜 = x^j (−ι_j + i·m^j∧ − α^j∧),   D_G = d_H + 𝒜

where m^j stands for the formal dμ^j.  The moment map itself is carried as
formal parameters ``mu1..muk``; d acts on them through dμ^j = m^j.

Ranks of the truncated complexes are the graded pieces of the x-degree
filtration, computed with one buffer degree above ``trunc``.
"""
import logging
from dataclasses import dataclass, field
from math import comb

from core.algebra import linalg
from core.algebra.exterior import (
    Form,
    basis,
    contract_vector,
    mask_indices,
    wedge,
)
from core.algebra.scalar import ONE, Scalar
from core.exceptions import (
    ActionValidationError,
    DegreeError,
    ExtensionInfeasible,
    GeneratorMismatch,
    IntegrabilityError,
    NotBasic,
    NotFree,
    PreconditionError,
)
from core.geometry.dgamodel import (
    BettiPair,
    DolbeaultSplit,
    Model,
    betti_numbers,
    ddbar_lemma_check,
    is_exact,
    twisted_cohomology,
)
from core.geometry.report import Report

logger = logging.getLogger('twistcalc.cartan')

MU_PREFIX = 'mu'


# ── Polynomial bookkeeping ───────────────────────────────────────────

def monomials(k, degree):
    """Exponent vectors of total ``degree`` in k variables, x_1 first."""
    if k == 0:
        return [()] if degree == 0 else []
    out = []
    for first in range(degree, -1, -1):
        for rest in monomials(k - 1, degree - first):
            out.append((first,) + rest)
    return out


def _shift(exponents, j):
    return exponents[:j] + (exponents[j] + 1,) + exponents[j + 1:]


def _monomial_key(exponents):
    return (sum(exponents), tuple(-e for e in exponents))


def mu_name(j):
    return f'{MU_PREFIX}{j + 1}'


# ── EqForm ───────────────────────────────────────────────────────────

class EqForm:
    """Σ_I x^I ⊗ γ_I truncated at total degree ``trunc``."""

    __slots__ = ('k', 'n', 'trunc', 'truncated', '_terms')

    def __init__(self, k, n, terms=None, trunc=0, truncated=False):
        self.k = k
        self.n = n
        self.trunc = trunc
        clean = {}
        for exponents, form in (terms or {}).items():
            exponents = tuple(exponents)
            if len(exponents) != k:
                raise GeneratorMismatch(f'exponent vector {exponents} for a rank-{k} torus')
            if form.n_generators != n:
                raise GeneratorMismatch(f'coefficient on {form.n_generators} generators, expected {n}')
            if form.is_zero:
                continue
            if sum(exponents) > trunc:
                truncated = True
                continue
            clean[exponents] = form
        self.truncated = truncated
        self._terms = clean

    @classmethod
    def zero(cls, k, n, trunc):
        return cls(k, n, trunc=trunc)

    @classmethod
    def from_form(cls, form, k, trunc):
        return cls(k, form.n_generators, {(0,) * k: form}, trunc)

    @classmethod
    def monomial(cls, exponents, form, trunc):
        return cls(len(exponents), form.n_generators, {tuple(exponents): form}, trunc)

    def items(self):
        for exponents in sorted(self._terms, key=_monomial_key):
            yield exponents, self._terms[exponents]

    def component(self, exponents):
        return self._terms.get(tuple(exponents), Form.zero(self.n))

    def degree_part(self, degree):
        return EqForm(self.k, self.n, {
            e: f for e, f in self._terms.items() if sum(e) == degree
        }, self.trunc)

    @property
    def is_zero(self):
        return not self._terms

    @property
    def max_degree(self):
        return max((sum(e) for e in self._terms), default=0)

    def _like(self, terms, other=None):
        trunc = self.trunc if other is None else min(self.trunc, other.trunc)
        flag = self.truncated or (other is not None and other.truncated)
        return EqForm(self.k, self.n, terms, trunc, flag)

    def __add__(self, other):
        terms = dict(self._terms)
        for exponents, form in other._terms.items():
            terms[exponents] = terms[exponents] + form if exponents in terms else form
        return self._like(terms, other)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return self._like({e: -f for e, f in self._terms.items()})

    def scale(self, value):
        return self._like({e: f * value for e, f in self._terms.items()})

    def map_forms(self, fn):
        return self._like({e: fn(f) for e, f in self._terms.items()})

    def wedge(self, other):
        """(x^I a)(x^J b) = x^{I+J} a∧b."""
        terms = {}
        for ea, fa in self._terms.items():
            for eb, fb in other._terms.items():
                exponents = tuple(p + q for p, q in zip(ea, eb))
                value = wedge(fa, fb)
                terms[exponents] = terms[exponents] + value if exponents in terms else value
        return self._like(terms, other)

    def with_trunc(self, trunc):
        return EqForm(self.k, self.n, self._terms, trunc, self.truncated)

    def substitute(self, values):
        return self.map_forms(lambda f: f.substitute(values))

    def __eq__(self, other):
        if not isinstance(other, EqForm):
            return NotImplemented
        return self.k == other.k and self._terms == other._terms

    def __hash__(self):
        return hash((self.k, frozenset(self._terms.items())))

    def __str__(self):
        from core.modelfile.printer import format_eqform
        return format_eqform(self)

    def __repr__(self):
        return f'EqForm({self})'


# ── Torus actions ────────────────────────────────────────────────────

class TorusAction:
    """
    Rank-k torus acting on ``model`` through constant vector fields xi[j].
    ``mu_diff`` and ``alpha`` default to zero 1-forms.
    """

    def __init__(self, model, xi, mu_diff=None, alpha=None, name='', theta=None):
        n = model.n_generators
        self.model = model
        self.name = name
        self.xi = tuple(tuple(Scalar.of(v) for v in vector) for vector in xi)
        self.k = len(self.xi)
        zero = Form.zero(n)
        self.mu_diff = tuple(mu_diff) if mu_diff is not None else (zero,) * self.k
        self.alpha = tuple(alpha) if alpha is not None else (zero,) * self.k
        self.theta = tuple(theta) if theta is not None else None
        self._validate()

    def _validate(self):
        n = self.model.n_generators
        if self.k == 0:
            raise ActionValidationError('an action needs at least one vector field')
        for j, vector in enumerate(self.xi, start=1):
            if len(vector) != n:
                raise ActionValidationError(f'xi{j} has {len(vector)} entries for {n} generators')
            if not all(v.is_constant for v in vector):
                raise ActionValidationError(f'xi{j} must have constant coefficients')
        for label, forms in (('mu_diff', self.mu_diff), ('alpha', self.alpha)):
            if len(forms) != self.k:
                raise ActionValidationError(f'{label} needs {self.k} entries, got {len(forms)}')
            for j, form in enumerate(forms, start=1):
                if form.n_generators != n:
                    raise GeneratorMismatch(f'{label}{j} is not on the model generators')
                if not form.is_homogeneous(1):
                    raise DegreeError(f'{label}{j} must be a 1-form', detail=str(form))
        for j in range(self.k):
            for i, image in enumerate(self.model.d_table, start=1):
                residual = self.contract(j, image)
                if not residual.is_zero:
                    raise ActionValidationError(
                        f'xi{j + 1} does not preserve d e{i}', detail=residual,
                    )
            residual = self.model.d(self.contract(j, self.model.H))
            if not residual.is_zero:
                raise ActionValidationError(f'H is not invariant under xi{j + 1}', detail=residual)
            residual = self.model.d(self.mu_diff[j])
            if not residual.is_zero:
                raise ActionValidationError(f'mu_diff{j + 1} is not closed', detail=residual)

    def contract(self, j, form):
        return contract_vector(list(self.xi[j]), form)

    def xi_matrix(self):
        return [[v.to_gaussian() for v in vector] for vector in self.xi]

    @property
    def is_trivial(self):
        return all(v.is_zero for vector in self.xi for v in vector)

    def __repr__(self):
        return f'TorusAction({self.name or self.k})'


def _formal_d(act, form):
    """d on forms whose coefficients may involve the formal μ parameters."""
    result = act.model.d(form)
    for j in range(act.k):
        name = mu_name(j)
        if name in form.parameters:
            partial = form.map_coefficients(lambda c: c.diff(name))
            result = result + wedge(act.mu_diff[j], partial)
    return result


def _check_eq(act, eta):
    if eta.k != act.k or eta.n != act.model.n_generators:
        raise GeneratorMismatch(
            f'equivariant form over rank {eta.k} / {eta.n} generators, action has rank {act.k} / '
            f'{act.model.n_generators}',
        )


def _raise(act, eta, operator):
    """Σ_j x^j · operator(j, γ_I) placed at I + e_j."""
    terms = {}
    for exponents, form in eta.items():
        for j in range(act.k):
            image = operator(j, form)
            if image.is_zero:
                continue
            target = _shift(exponents, j)
            terms[target] = terms[target] + image if target in terms else image
    return EqForm(act.k, eta.n, terms, eta.trunc, eta.truncated)


# ── Differentials ────────────────────────────────────────────────────

def d_equivariant(act, eta):
    _check_eq(act, eta)
    vertical = eta.map_forms(lambda f: _formal_d(act, f))
    horizontal = _raise(act, eta, lambda j, f: -act.contract(j, f))
    result = vertical + horizontal
    if result.truncated and not eta.truncated:
        logger.debug('d_G dropped terms above x-degree %d', eta.trunc)
    return result


def equivariant_twist(act, trunc):
    """H_G = H + x^j α^j."""
    n = act.model.n_generators
    terms = {(0,) * act.k: act.model.H}
    for j in range(act.k):
        terms[_shift((0,) * act.k, j)] = act.alpha[j]
    return EqForm(act.k, n, terms, trunc)


def _require_closed_twist(act, H_G):
    residual = d_equivariant(act, H_G.with_trunc(max(H_G.trunc, H_G.max_degree + 1)))
    if not residual.is_zero:
        raise PreconditionError('H_G is not equivariantly closed', detail=residual)


def d_equivariant_twisted(act, H_G, eta, check=True):
    _check_eq(act, H_G)
    if check:
        _require_closed_twist(act, H_G)
    return d_equivariant(act, eta) - H_G.with_trunc(eta.trunc).wedge(eta)


def moment_operator(act, gamma):
    """𝒜γ = Σ_j x^j (−ι_j + i·m^j∧ − α^j∧) γ."""
    _check_eq(act, gamma)
    unit = Scalar.i()

    def piece(j, form):
        return (
            -act.contract(j, form)
            + wedge(act.mu_diff[j], form) * unit
            - wedge(act.alpha[j], form)
        )

    return _raise(act, gamma, piece)


def moment_differential(act, gamma):
    """D_G = d_H + 𝒜."""
    model = act.model
    twisted = gamma.map_forms(lambda f: _formal_d(act, f) - wedge(model.H, f))
    return twisted + moment_operator(act, gamma)


def moment_differential_residual(act, trunc=2):
    """D_G² on every basis form; D_G commutes with x, so x-degree 0 suffices."""
    report = Report()
    n = act.model.n_generators
    for mask in basis(n):
        gamma = EqForm.from_form(Form(n, {mask: ONE}), act.k, max(trunc, 2))
        residual = moment_differential(act, moment_differential(act, gamma))
        if not residual.is_zero:
            report.fail(f'D_G² = 0 on {Form(n, {mask: ONE})}', residual)
    return report


# ── Hamiltonian data ─────────────────────────────────────────────────

def hamiltonian_check(act, rho):
    report = Report()
    model = act.model
    if rho.n_generators != model.n_generators:
        raise GeneratorMismatch('spinor is not on the model generators')
    residual = model.d_twisted(rho)
    if not residual.is_zero:
        report.fail('d_H ρ = 0', residual)
    unit = Scalar.i()
    for j in range(act.k):
        residual = (
            -act.contract(j, rho)
            + wedge(act.mu_diff[j], rho) * unit
            - wedge(act.alpha[j], rho)
        )
        if not residual.is_zero:
            report.fail(f'(−ξ{j + 1} + i(m{j + 1} + iα{j + 1}))·ρ = 0', residual)
    residual = d_equivariant(act, equivariant_twist(act, 2))
    if not residual.is_zero:
        report.fail('d_G(H + x·α) = 0', residual)
    return report


def exp_i_mu(act, trunc, sign=1):
    """e^{±iμ(ξ)} as a truncated series in x with formal μ coefficients."""
    n = act.model.n_generators
    unit = Scalar.i() * sign
    generator = EqForm(act.k, n, {
        _shift((0,) * act.k, j): Form.scalar(n, unit * Scalar.parameter(mu_name(j)))
        for j in range(act.k)
    }, trunc)
    result = EqForm.from_form(Form.one(n), act.k, trunc)
    term = result
    for p in range(1, trunc + 1):
        term = term.wedge(generator).scale(Scalar.of(1) / p)
        if term.is_zero:
            break
        result = result + term
    return result


@dataclass
class EquivariantExtension:
    form: EqForm
    residual: EqForm

    @property
    def ok(self):
        return self.residual.is_zero


def equivariant_extension(act, rho, trunc):
    """e^{iμ}ρ and its d_{G,H_G} residual."""
    extension = exp_i_mu(act, trunc).wedge(EqForm.from_form(rho, act.k, trunc))
    residual = d_equivariant_twisted(act, equivariant_twist(act, trunc), extension, check=False)
    return EquivariantExtension(extension, residual)


def conjugation_residual(act, gamma):
    """
    D_G(e^{−iμ}γ) − e^{−iμ}·d_{G,H_G}(γ), below the truncation of γ.
    D_G on μ-dependent coefficients equals d_{G, H_G − i·d_Gμ}.
    """
    trunc = gamma.trunc
    conjugator = exp_i_mu(act, trunc, sign=-1)
    left = moment_differential(act, conjugator.wedge(gamma))
    right = conjugator.wedge(
        d_equivariant_twisted(act, equivariant_twist(act, trunc), gamma, check=False),
    )
    return left - right


# ── Truncated cohomology ─────────────────────────────────────────────

@dataclass
class EquivariantRanks:
    trunc: int
    pieces: list
    expected: BettiPair
    k: int
    stable: bool = None

    @property
    def total(self):
        return BettiPair(
            even=sum(p['even'] for p in self.pieces),
            odd=sum(p['odd'] for p in self.pieces),
        )

    @property
    def free(self):
        """Graded ranks equal (#degree-p monomials) × the base ranks."""
        for piece in self.pieces:
            count = comb(piece['degree'] + self.k - 1, self.k - 1)
            if piece['even'] != count * self.expected.even or piece['odd'] != count * self.expected.odd:
                return False
        return True


def _chain_basis(k, n, top):
    return [
        (exponents, mask)
        for degree in range(top + 1)
        for exponents in monomials(k, degree)
        for mask in basis(n)
    ]


def filtered_ranks(k, n, trunc, operator):
    """
    Graded pieces F^p/F^{p+1}, p = 0..trunc, of the cohomology of an odd
    operator on the x-truncated complex, per parity.

    Chains live up to degree W = trunc + 1.  Cycles must vanish in every
    degree ≤ W; boundaries come only from chains whose image has no part
    in degree W + 1.
    """
    buffer = trunc + 1
    chains = _chain_basis(k, n, buffer)
    overflow = [(e, mask) for e in monomials(k, buffer + 1) for mask in basis(n)]
    position = {key: i for i, key in enumerate(chains)}
    over_position = {key: i for i, key in enumerate(overflow)}
    low_columns, high_columns = [], []
    for exponents, mask in chains:
        image = operator(EqForm.monomial(exponents, Form(n, {mask: ONE}), buffer + 1))
        low = [linalg.ZERO] * len(chains)
        high = [linalg.ZERO] * len(overflow)
        for img_exponents, form in image.items():
            for img_mask, coeff in form.items():
                value = coeff.to_gaussian()
                key = (img_exponents, img_mask)
                if key in position:
                    low[position[key]] = value
                else:
                    high[over_position[key]] = value
        low_columns.append(low)
        high_columns.append(high)
    degree_of = [sum(e) for e, _ in chains]
    parity_of = [mask.bit_count() % 2 for _, mask in chains]
    ranks = {}
    for parity in (0, 1):
        own = [i for i in range(len(chains)) if parity_of[i] == parity]
        other = [i for i in range(len(chains)) if parity_of[i] != parity]
        local = {i: r for r, i in enumerate(own)}
        # boundaries landing in this parity
        high_rows = linalg.transpose([high_columns[i] for i in other], len(overflow))
        sources = linalg.nullspace(high_rows, len(other)) if other else []
        boundaries = []
        for coeffs in sources:
            image = [linalg.ZERO] * len(own)
            for c, i in zip(coeffs, other):
                if c == linalg.ZERO:
                    continue
                for row, value in enumerate(low_columns[i]):
                    if value != linalg.ZERO:
                        image[local[row]] = image[local[row]] + c * value
            boundaries.append(image)
        boundaries = linalg.span_basis(boundaries)
        spans = []
        for p in range(buffer + 2):
            selected = [i for i in own if degree_of[i] >= p]
            if not selected:
                spans.append(linalg.span_rank(boundaries))
                continue
            rows = linalg.transpose([low_columns[i] for i in selected], len(chains))
            cycles = []
            for coeffs in linalg.nullspace(rows, len(selected)):
                vector = [linalg.ZERO] * len(own)
                for c, i in zip(coeffs, selected):
                    vector[local[i]] = c
                cycles.append(vector)
            spans.append(linalg.span_rank(cycles + boundaries))
        ranks[parity] = [spans[p] - spans[p + 1] for p in range(trunc + 1)]
    logger.debug('filtered ranks (k=%d, n=%d, trunc=%d): %s', k, n, trunc, ranks)
    return [
        {'degree': p, 'even': ranks[0][p], 'odd': ranks[1][p]}
        for p in range(trunc + 1)
    ]


def _ranks(act, trunc, operator, base, check_stability):
    n = act.model.n_generators
    pieces = filtered_ranks(act.k, n, trunc, operator)
    result = EquivariantRanks(trunc=trunc, pieces=pieces, expected=base, k=act.k)
    if check_stability:
        longer = filtered_ranks(act.k, n, trunc + 1, operator)
        result.stable = longer[:trunc + 1] == pieces
        if not result.stable:
            logger.warning('equivariant ranks of %r change between truncation %d and %d',
                           act, trunc, trunc + 1)
    return result


def equivariant_cohomology(act, H_G=None, trunc=2, check_stability=True):
    H_G = H_G if H_G is not None else equivariant_twist(act, trunc + 2)
    _check_eq(act, H_G)
    _require_closed_twist(act, H_G)
    base = twisted_cohomology(act.model.with_twist(H_G.component((0,) * act.k)))

    def operator(eta):
        return d_equivariant_twisted(act, H_G, eta, check=False)

    return _ranks(act, trunc, operator, base, check_stability)


def generalized_equivariant_cohomology(act, trunc=2, check_stability=True):
    residual = moment_differential_residual(act)
    if not residual.ok:
        raise PreconditionError(
            'D_G does not square to zero for this action', detail=residual.failures[0].residual,
        )
    base = twisted_cohomology(act.model)
    return _ranks(act, trunc, lambda eta: moment_differential(act, eta), base, check_stability)


# ── Connections and quotients ────────────────────────────────────────

@dataclass
class Connection:
    action: TorusAction
    theta: tuple
    curvature: tuple = field(default=())

    def __post_init__(self):
        act = self.action
        if len(self.theta) != act.k:
            raise NotFree(f'{len(self.theta)} connection forms for a rank-{act.k} torus')
        for j, form in enumerate(self.theta):
            if not form.is_homogeneous(1) or form.is_zero:
                raise NotFree(f'theta{j + 1} must be a nonzero 1-form', detail=str(form))
            for i in range(act.k):
                pairing = act.contract(i, form).coefficient(())
                expected = ONE if i == j else Scalar.zero()
                if pairing != expected:
                    raise NotFree(
                        f'xi{i + 1} pairs with theta{j + 1} to {pairing}, expected {expected}',
                    )
        # torus: structure constants vanish, so c^j = dθ^j
        self.curvature = tuple(act.model.d(form) for form in self.theta)

    def horizontal(self, form):
        """Π_j (1 − θ^j∧ι_j)."""
        for j in range(self.action.k):
            form = form - wedge(self.theta[j], self.action.contract(j, form))
        return form

    def curvature_power(self, exponents):
        n = self.action.model.n_generators
        result = Form.one(n)
        for j, power in enumerate(exponents):
            for _ in range(power):
                result = wedge(result, self.curvature[j])
        return result


def connection_for(act):
    """θ^j from the given action block, or solved from ξ when absent."""
    if act.theta is not None:
        return Connection(act, act.theta)
    n = act.model.n_generators
    xi = act.xi_matrix()
    if linalg.rank(xi) != act.k:
        raise NotFree('the vector fields of the action are linearly dependent')
    theta = []
    for j in range(act.k):
        target = [linalg.ONE if i == j else linalg.ZERO for i in range(act.k)]
        solution = linalg.solve(xi, target)
        theta.append(Form(n, {1 << i: Scalar.of(v) for i, v in enumerate(solution)}))
    return Connection(act, tuple(theta))


def is_basic(act, form):
    return all(act.contract(j, form).is_zero for j in range(act.k))


def cartan_map(conn, eta):
    """x^I ⊗ γ ↦ c^I ∧ γ_hor."""
    _check_eq(conn.action, eta)
    result = Form.zero(eta.n)
    for exponents, form in eta.items():
        horizontal = conn.horizontal(form)
        if horizontal.is_zero:
            continue
        result = result + wedge(conn.curvature_power(exponents), horizontal)
    return result


class Quotient:
    """
    Basic forms of a free action as a model of their own: the generators
    span the annihilator of the ξ frame.
    """

    def __init__(self, conn, H=None):
        act = conn.action
        model = act.model
        n = model.n_generators
        self.connection = conn
        xi = act.xi_matrix()
        frame = linalg.nullspace(xi, n)
        _, pivots = linalg.rref(xi)
        free_columns = [c for c in range(n) if c not in pivots]
        self.frame = tuple(
            Form(n, {1 << i: Scalar.of(v) for i, v in enumerate(vector)}) for vector in frame
        )
        self.size = len(self.frame)
        self._columns = []
        for mask in basis(self.size):
            image = Form.one(n)
            for i in mask_indices(mask):
                image = wedge(image, self.frame[i - 1])
            self._columns.append(image.to_vector())
        self._matrix = linalg.transpose(self._columns)
        names = [model.generator_names[c] for c in free_columns]
        d_table = [self._descend_vector(model.d(f)) for f in self.frame]
        H = H if H is not None else Form.zero(self.size)
        self.model = Model(
            self.size, d_table, H, name=f'{model.name or "model"}/{act.name or "T"}',
            generator_names=names,
        )

    def _descend_vector(self, form):
        solution = linalg.solve(self._matrix, form.to_vector())
        if solution is None:
            raise NotBasic('form is not a combination of basic generators', detail=form)
        return Form.from_vector(self.size, solution)

    def pullback(self, form):
        n = self.connection.action.model.n_generators
        result = Form.zero(n)
        for mask, coeff in form.items():
            image = Form.scalar(n, coeff)
            for i in mask_indices(mask):
                image = wedge(image, self.frame[i - 1])
            result = result + image
        return result

    def descend(self, form):
        act = self.connection.action
        for j in range(act.k):
            residual = act.contract(j, form)
            if not residual.is_zero:
                raise NotBasic(f'form is not basic: ι_{j + 1} is nonzero', detail=residual)
        return self._descend_vector(form)


def quotient(conn, H=None):
    return Quotient(conn, H)


def descend(conn, form, target=None):
    return (target or Quotient(conn)).descend(form)


def gamma_from_connection(conn, act=None):
    """Γ = Σ_j θ^j ∧ α^j with ι_i Γ = α^i."""
    act = act or conn.action
    n = act.model.n_generators
    for j, alpha in enumerate(act.alpha):
        if not is_basic(act, alpha):
            raise PreconditionError(
                f'alpha{j + 1} is not horizontal; project it with α − θ^j·ι_jα first',
                detail=str(alpha),
            )
    gamma = Form.zero(n)
    for theta, alpha in zip(conn.theta, act.alpha):
        gamma = gamma + wedge(theta, alpha)
    for i in range(act.k):
        residual = act.contract(i, gamma) - act.alpha[i]
        if not residual.is_zero:
            raise PreconditionError(f'ι_{i + 1}Γ differs from alpha{i + 1}', detail=residual)
    return gamma


@dataclass
class DescendedTwist:
    gamma: Form
    basic: Form
    H_tilde: Form
    quotient: Quotient


def descended_twist(conn, act=None):
    """H + x^jα^j + d_GΓ = H + dΓ, descended to the quotient."""
    act = act or conn.action
    gamma = gamma_from_connection(conn, act)
    basic = act.model.H + act.model.d(gamma)
    target = Quotient(conn)
    H_tilde = target.descend(basic)
    return DescendedTwist(gamma, basic, H_tilde, Quotient(conn, H_tilde))


def twisting_class_check(act, conn=None):
    """Is the descended twist exact on the quotient?"""
    conn = conn or connection_for(act)
    twist = descended_twist(conn, act)
    plain = twist.quotient.model.with_twist(Form.zero(twist.quotient.size))
    report = Report()
    betti = betti_numbers(plain)
    report.details['betti'] = betti
    report.details['odd_rank'] = sum(betti[1::2])
    report.details['H_tilde'] = twist.H_tilde
    if not is_exact(plain, twist.H_tilde):
        report.fail('H̃ exact on the quotient', twist.H_tilde)
    return report


def kirwan_map(act, conn, sub, eta):
    """
    Restrict along ``sub`` (ambient → level model), apply the Cartan map and
    descend to the quotient of the level model.
    """
    if eta.k != act.k or eta.n != sub.source.n_generators:
        raise GeneratorMismatch(
            f'equivariant form over rank {eta.k} / {eta.n} generators, restriction expects rank '
            f'{act.k} / {sub.source.n_generators}',
        )
    if sub.target is not act.model:
        raise GeneratorMismatch('the restriction must land on the model the action lives on')
    restricted = EqForm(act.k, sub.target.n_generators, {
        exponents: sub.pullback(form) for exponents, form in eta.items()
    }, eta.trunc, eta.truncated)
    return descend(conn, cartan_map(conn, restricted))


# ── Canonical extension ──────────────────────────────────────────────

def canonical_extension(act, J, m, phi, trunc=None):
    """
    φ_g = φ + Σ ∂γ^p, solving ∂̄∂γ^{p+1} = −𝒜(∂γ^p) one x-degree at a time.

    None of the shipped models takes a nonzero correction step: on tori
    (twisted T⁴ included) ∂̄∂ is zero, so 𝒜φ either vanishes or raises
    ExtensionInfeasible, and kodaira_thurston fails the ∂̄∂-lemma.
    """
    if m.n_generators != act.model.n_generators:
        raise GeneratorMismatch('action and model have different generator counts')
    n = m.n_generators
    trunc = trunc if trunc is not None else max(n, 1)
    split = DolbeaultSplit(m, J)
    if not split.integrable:
        raise IntegrabilityError('structure is not integrable on this model')
    del_phi, delbar_phi = split.split(phi)
    if not del_phi.is_zero or not delbar_phi.is_zero:
        raise PreconditionError('φ must be ∂- and ∂̄-closed', detail=del_phi + delbar_phi)
    lemma = ddbar_lemma_check(m, J, split)
    if not lemma.ok:
        raise PreconditionError('the ∂̄∂-lemma fails on this model', detail=lemma.witness)
    ddbar = linalg.matmul(split.delbar, split.del_)
    current = EqForm.from_form(phi, act.k, trunc)
    result = current
    for step in range(trunc):
        image = moment_operator(act, current)
        if image.is_zero:
            break
        corrections = {}
        for exponents, form in image.items():
            rhs = [-v for v in form.to_vector()]
            gamma = linalg.solve(ddbar, rhs)
            if gamma is None:
                raise ExtensionInfeasible(
                    f'𝒜φ is not ∂̄∂-exact at x-degree {step + 1}',
                    detail={'degree': step + 1, 'witness': form},
                )
            corrections[exponents] = Form.from_vector(n, linalg.matvec(split.del_, gamma))
        current = EqForm(act.k, n, corrections, trunc)
        result = result + current
    residual = moment_differential(act, result)
    if not residual.is_zero:
        raise ExtensionInfeasible('extension is not D_G-closed', detail=residual)
    logger.debug('canonical extension of degree %d found', result.max_degree)
    return result
