"""
Generalized complex linear algebra on V ⊕ V*.

Coordinates on W = V ⊕ V* are ordered (∂1..∂d, e1..ed).  A GCMap is a
2d×2d matrix over the Gaussian rationals acting on those coordinates; the
canonical pairing is ⟨X+α, Y+β⟩ = ½(β(X) + α(Y)).

Conventions:
  symplectic ω   J_ω = [[0, −ω⁻¹], [ω, 0]] with ω: X ↦ ι_Xω
  complex K      J_K = [[−K, 0], [0, K*]]   (pure spinor dz for K∂1 = ∂2)
  B-transform    J_B = e^B J e^{−B}, e^B = [[1, 0], [B, 1]]

U^k grading: the Clifford lift Ĵ₀ = ½ Σ_a [(J∂_a)·e_a· + (Je_a)·ι_a]
satisfies [Ĵ₀, u] = Ju.  The grading operator is −Ĵ₀ shifted so that the
pure-spinor line has eigenvalue −n·i; U^k is then its −k·i eigenspace,
k = −n..n, with U^n the pure-spinor line.

Usage:
    from core.geometry import gclinear

    J = gclinear.symplectic_structure(omega)
    gclinear.type_of(J)                          # 0
    gclinear.pure_spinor(gclinear.i_eigenspace(J))  # 1 + i*e1^e2
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from sympy.polys.domains import QQ_I

from core.algebra import linalg
from core.algebra.exterior import (
    Form,
    basis,
    clifford,
    contract,
    mukai,
    operator_matrix,
    wedge,
)
from core.algebra.scalar import gaussian, gaussian_conjugate
from core.exceptions import DegreeError, InvalidStructure, NonConstantError
from core.geometry.report import Report

logger = logging.getLogger('twistcalc.gc')

I_UNIT = QQ_I(0, 1)
HALF = gaussian(Fraction(1, 2))


# ── Types ────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class GCMap:
    """Candidate generalized complex structure on V of dimension ``dim``."""

    dim: int
    matrix: tuple

    @classmethod
    def from_rows(cls, rows):
        rows = linalg.matrix(rows)
        size = len(rows)
        if size % 2 or any(len(row) != size for row in rows):
            raise InvalidStructure(f'GC map must be a square matrix of even size, got {size} rows')
        for row in rows:
            for value in row:
                if value.y != 0:
                    raise InvalidStructure('GC map entries must be real rationals')
        return cls(size // 2, tuple(tuple(row) for row in rows))

    @property
    def rows(self):
        return [list(row) for row in self.matrix]

    @property
    def half_dim(self):
        return self.dim // 2

    def column(self, c):
        return [row[c] for row in self.matrix]


@dataclass(frozen=True)
class IsotropicSubspace:
    """Span of complex vectors in W_ℂ, each of length 2·dim."""

    dim: int
    basis: tuple

    @property
    def rank(self):
        return linalg.span_rank([list(v) for v in self.basis])

    def conjugate(self):
        return IsotropicSubspace(
            self.dim, tuple(tuple(gaussian_conjugate(x) for x in v) for v in self.basis),
        )

    def vectors(self):
        return [list(v) for v in self.basis]

    def equals(self, other):
        return linalg.span_equal(self.vectors(), other.vectors())

    def projection_rank(self):
        """Rank of the V-projection π(L)."""
        return linalg.span_rank([list(v[:self.dim]) for v in self.basis])


@dataclass(frozen=True)
class Annihilator:
    subspace: IsotropicSubspace
    is_isotropic: bool
    is_maximal_isotropic: bool
    nondegenerate: bool
    transverse: bool


@dataclass(frozen=True)
class GradingPiece:
    k: int
    basis: tuple

    @property
    def dimension(self):
        return len(self.basis)


# ── Pairing helpers ──────────────────────────────────────────────────

def pairing_matrix(dim):
    """Gram matrix of ⟨·,·⟩ in (V, V*) coordinates."""
    rows = linalg.zeros(2 * dim, 2 * dim)
    for a in range(dim):
        rows[a][dim + a] = HALF
        rows[dim + a][a] = HALF
    return rows


def pair(u, v):
    dim = len(u) // 2
    total = QQ_I.zero
    for a in range(dim):
        total = total + u[a] * v[dim + a] + u[dim + a] * v[a]
    return total * HALF


def two_form_matrix(form):
    """Matrix of X ↦ ι_X form (column i = ι_{∂i} form as a covector)."""
    if not form.is_homogeneous(2):
        raise DegreeError('expected a pure 2-form', detail=str(form))
    if not form.is_constant:
        raise NonConstantError('2-form must be parameter-free', detail=str(form))
    d = form.n_generators
    rows = linalg.zeros(d, d)
    for i in range(1, d + 1):
        image = contract(i, form)
        for j in range(1, d + 1):
            rows[j - 1][i - 1] = image.coefficient((j,)).to_gaussian()
    return rows


def _blocks(a, b, c, d):
    top = [ra + rb for ra, rb in zip(a, b)]
    bottom = [rc + rd for rc, rd in zip(c, d)]
    return top + bottom


# ── Constructors ─────────────────────────────────────────────────────

def symplectic_structure(omega):
    d = omega.n_generators
    w = two_form_matrix(omega)
    try:
        w_inv = linalg.inverse(w)
    except ValueError:
        raise InvalidStructure('symplectic form is degenerate', detail=str(omega))
    rows = _blocks(linalg.zeros(d, d), linalg.scale(w_inv, -1), w, linalg.zeros(d, d))
    return GCMap(d, tuple(tuple(r) for r in rows))


def complex_structure(k_rows):
    """J_K = [[−K, 0], [0, K*]] for a complex structure K on V (K² = −1)."""
    k = linalg.matrix(k_rows)
    d = len(k)
    if not linalg.is_zero_matrix(linalg.add(linalg.matmul(k, k), linalg.identity(d))):
        raise InvalidStructure('K does not square to -1')
    rows = _blocks(linalg.scale(k, -1), linalg.zeros(d, d), linalg.zeros(d, d), linalg.transpose(k))
    return GCMap(d, tuple(tuple(r) for r in rows))


def direct_sum(first, second):
    """Structure on V1 ⊕ V2, coordinates (V1, V2, V1*, V2*)."""
    d1, d2 = first.dim, second.dim
    d = d1 + d2

    def position(block_dim, offset, index):
        # index inside a single structure -> index inside the sum
        if index < block_dim:
            return offset + index
        return d + offset + (index - block_dim)

    rows = linalg.zeros(2 * d, 2 * d)
    for structure, offset in ((first, 0), (second, d1)):
        size = structure.dim
        for r in range(2 * size):
            for c in range(2 * size):
                rows[position(size, offset, r)][position(size, offset, c)] = structure.matrix[r][c]
    return GCMap(d, tuple(tuple(r) for r in rows))


def b_transform(J, B):
    """J_B = e^B J e^{−B}; the identity for B = 0."""
    d = J.dim
    if B.n_generators != d:
        raise DegreeError(f'B lives on {B.n_generators} generators, J on {d}')
    if B.is_zero:
        return J
    b = two_form_matrix(B)
    shear = _blocks(linalg.identity(d), linalg.zeros(d, d), b, linalg.identity(d))
    inverse_shear = _blocks(linalg.identity(d), linalg.zeros(d, d), linalg.scale(b, -1), linalg.identity(d))
    rows = linalg.matmul(linalg.matmul(shear, J.rows), inverse_shear)
    return GCMap(d, tuple(tuple(r) for r in rows))


# ── Operations ───────────────────────────────────────────────────────

def validate(J):
    report = Report()
    size = 2 * J.dim
    if len(J.matrix) != size or any(len(row) != size for row in J.matrix):
        return report.fail('square matrix of even size')
    rows = J.rows
    square = linalg.add(linalg.matmul(rows, rows), linalg.identity(size))
    if not linalg.is_zero_matrix(square):
        report.fail('J^2 = -1', square)
    gram = pairing_matrix(J.dim)
    preserved = linalg.matmul(linalg.matmul(linalg.transpose(rows), gram), rows)
    defect = linalg.add(preserved, linalg.scale(gram, -1))
    if not linalg.is_zero_matrix(defect):
        report.fail('J orthogonal for the canonical pairing', defect)
    return report


def _require_valid(J):
    report = validate(J)
    if not report.ok:
        raise InvalidStructure(
            'not a generalized complex structure',
            detail=[f.identity for f in report.failures],
        )


def i_eigenspace(J):
    _require_valid(J)
    size = 2 * J.dim
    shifted = [
        [value - (I_UNIT if r == c else QQ_I.zero) for c, value in enumerate(row)]
        for r, row in enumerate(J.matrix)
    ]
    vectors = linalg.nullspace(shifted, size)
    if len(vectors) != J.dim:
        raise InvalidStructure(f'+i eigenspace has dimension {len(vectors)}, expected {J.dim}')
    space = IsotropicSubspace(J.dim, tuple(tuple(v) for v in vectors))
    for u in vectors:
        for v in vectors:
            if pair(u, v) != QQ_I.zero:
                raise InvalidStructure('+i eigenspace is not isotropic')
    if linalg.span_rank(space.vectors() + space.conjugate().vectors()) != 2 * J.dim:
        raise InvalidStructure('+i eigenspace meets its conjugate')
    return space


def type_of(J):
    space = i_eigenspace(J)
    return J.dim - space.projection_rank()


def clifford_matrix(vector, dim):
    return operator_matrix(dim, lambda form: clifford(vector, form))


def pure_spinor(L):
    """Generator of the annihilator line, first nonzero coefficient 1."""
    d = L.dim
    rows = []
    for v in L.basis:
        rows.extend(clifford_matrix(list(v), d))
    solutions = linalg.nullspace(rows, 1 << d)
    if len(solutions) != 1:
        raise InvalidStructure(f'annihilator line has dimension {len(solutions)}, expected 1')
    vector = solutions[0]
    lead = next(value for value in vector if value != QQ_I.zero)
    vector = [value / lead for value in vector]
    return Form.from_vector(d, vector)


def annihilator(phi):
    if phi.is_zero:
        raise InvalidStructure('the zero form has no annihilator line')
    d = phi.n_generators
    columns = []
    for a in range(1, d + 1):
        columns.append(contract(a, phi).to_vector())
    for a in range(1, d + 1):
        columns.append(wedge(Form.generator(d, a), phi).to_vector())
    rows = [list(row) for row in zip(*columns)]
    vectors = linalg.nullspace(rows, 2 * d)
    space = IsotropicSubspace(d, tuple(tuple(v) for v in vectors))
    isotropic = all(pair(u, v) == QQ_I.zero for u in vectors for v in vectors)
    dimension = len(vectors)
    transverse = linalg.span_rank(space.vectors() + space.conjugate().vectors()) == 2 * dimension
    return Annihilator(
        subspace=space,
        is_isotropic=isotropic,
        is_maximal_isotropic=isotropic and dimension == d,
        nondegenerate=not mukai(phi, phi.conjugate()).is_zero,
        transverse=transverse,
    )


def clifford_operator(J):
    """Matrix of Ĵ₀ = ½ Σ_a [(J∂_a)·e_a· + (Je_a)·ι_a] on ∧V*_ℂ."""
    d = J.dim

    def lifted(form):
        total = Form.zero(d)
        for a in range(1, d + 1):
            total = total + clifford(J.column(a - 1), wedge(Form.generator(d, a), form))
            total = total + clifford(J.column(d + a - 1), contract(a, form))
        return total * HALF

    return operator_matrix(d, lifted)


def uk_grading(J):
    """[GradingPiece(k, basis)] for k = −n..n, U^k the −k·i eigenspace."""
    spinor = pure_spinor(i_eigenspace(J))
    d = J.dim
    n = J.half_dim
    size = 1 << d
    lift = clifford_operator(J)
    spinor_vector = spinor.to_vector()
    image = linalg.matvec(lift, spinor_vector)
    lead = next(p for p, value in enumerate(spinor_vector) if value != QQ_I.zero)
    eigenvalue = image[lead] / spinor_vector[lead]
    if any(img != eigenvalue * value for img, value in zip(image, spinor_vector)):
        raise InvalidStructure('pure spinor is not an eigenvector of the Clifford lift')
    shift = eigenvalue - I_UNIT * gaussian(n)
    grading = [
        [(-value) + (shift if r == c else QQ_I.zero) for c, value in enumerate(row)]
        for r, row in enumerate(lift)
    ]
    pieces = []
    total = 0
    for k in range(-n, n + 1):
        target = -I_UNIT * gaussian(k)
        shifted = [
            [value - (target if r == c else QQ_I.zero) for c, value in enumerate(row)]
            for r, row in enumerate(grading)
        ]
        vectors = linalg.nullspace(shifted, size)
        if len(vectors) != comb(2 * n, n - k):
            raise InvalidStructure(
                f'U^{k} has dimension {len(vectors)}, expected {comb(2 * n, n - k)}',
            )
        total += len(vectors)
        pieces.append(GradingPiece(k, tuple(tuple(v) for v in vectors)))
    if total != size:
        raise InvalidStructure(f'eigenspaces span {total} of {size} dimensions')
    logger.debug('U^k grading on %d generators: %s', d, [p.dimension for p in pieces])
    return pieces


def kahler_check(J1, J2):
    report = Report()
    for label, J in (('J1', J1), ('J2', J2)):
        report.merge(validate(J), prefix=f'{label}: ')
    if not report.ok:
        return report
    a, b = J1.rows, J2.rows
    ab, ba = linalg.matmul(a, b), linalg.matmul(b, a)
    if ab != ba:
        report.fail('J1 J2 = J2 J1', linalg.add(ab, linalg.scale(ba, -1)))
        return report
    metric = linalg.scale(ab, -1)
    form = linalg.matmul(linalg.transpose(metric), pairing_matrix(J1.dim))
    if form != linalg.transpose(form):
        report.fail('<-J1 J2 ., .> symmetric', form)
        return report
    minors = linalg.leading_principal_minors(form)
    report.details['minors'] = minors
    if not all(m.y == 0 and m.x > 0 for m in minors):
        report.fail('<-J1 J2 ., .> positive definite', minors)
    return report


def spinor_annihilated(L, phi):
    """True when every vector of L kills phi under the Clifford action."""
    return all(clifford(list(v), phi).is_zero for v in L.basis)


def basis_forms(piece, dim):
    return [Form.from_vector(dim, list(v), basis(dim)) for v in piece.basis]
