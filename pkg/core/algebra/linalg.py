"""
Exact linear algebra over the Gaussian rationals.

Matrices are plain lists of rows whose entries are sympy ``QQ_I`` field
elements.  Elimination is Gauss-Jordan with deterministic pivoting: the
first nonzero entry in column order, scanning rows top to bottom.

Usage:
    from core.algebra import linalg

    rows = linalg.matrix([[1, 2], [2, 4]])
    linalg.rank(rows)                  # 1
    linalg.nullspace(rows, ncols=2)    # [[-2, 1]]
"""
import logging

from sympy.polys.domains import QQ_I

from core.algebra.scalar import gaussian

logger = logging.getLogger('twistcalc.linalg')

ZERO = QQ_I.zero
ONE = QQ_I.one


def matrix(rows):
    """Build a matrix from nested ints / Fractions / QQ_I elements."""
    return [[gaussian(v) for v in row] for row in rows]


def zeros(nrows, ncols):
    return [[ZERO] * ncols for _ in range(nrows)]


def identity(n):
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def transpose(rows, ncols=None):
    if not rows:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*rows)]


def matmul(a, b):
    if not a:
        return []
    inner = len(b)
    ncols = len(b[0]) if b else 0
    out = []
    for row in a:
        new = [ZERO] * ncols
        for k in range(inner):
            v = row[k]
            if v == ZERO:
                continue
            brow = b[k]
            for j in range(ncols):
                w = brow[j]
                if w != ZERO:
                    new[j] = new[j] + v * w
        out.append(new)
    return out


def matvec(a, vec):
    return [sum((x * y for x, y in zip(row, vec) if x != ZERO and y != ZERO), ZERO) for row in a]


def scale(rows, factor):
    factor = gaussian(factor)
    return [[v * factor for v in row] for row in rows]


def add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def is_zero_matrix(rows):
    return all(v == ZERO for row in rows for v in row)


# ── Elimination ──────────────────────────────────────────────────────

def rref(rows):
    """
    Reduced row echelon form.

    Returns (reduced rows, pivot columns).  Zero rows are dropped, so the
    number of returned rows equals the rank.
    """
    work = [list(row) for row in rows if any(v != ZERO for v in row)]
    if not work:
        return [], []
    ncols = len(work[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, len(work)):
            if work[i][c] != ZERO:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        work[r], work[pivot_row] = work[pivot_row], work[r]
        inv = ONE / work[r][c]
        work[r] = [v * inv for v in work[r]]
        prow = work[r]
        for i in range(len(work)):
            if i == r:
                continue
            factor = work[i][c]
            if factor == ZERO:
                continue
            work[i] = [x - factor * y if y != ZERO else x for x, y in zip(work[i], prow)]
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    logger.debug('rref: %d rows x %d cols, rank %d', len(rows), ncols, r)
    return work[:r], pivots


def rank(rows):
    reduced, _ = rref(rows)
    return len(reduced)


def nullspace(rows, ncols):
    """Basis of {v : rows·v = 0}; one vector per free column, in column order."""
    reduced, pivots = rref(rows)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = [ZERO] * ncols
        vec[free] = ONE
        for row, p in zip(reduced, pivots):
            vec[p] = -row[free]
        basis.append(vec)
    return basis


def solve(rows, rhs):
    """One solution of rows·v = rhs (free variables zero), or None."""
    ncols = len(rows[0]) if rows else 0
    augmented = [list(row) + [b] for row, b in zip(rows, rhs)]
    reduced, pivots = rref(augmented)
    if ncols in pivots:
        return None
    solution = [ZERO] * ncols
    for row, p in zip(reduced, pivots):
        solution[p] = row[ncols]
    return solution


def inverse(rows):
    n = len(rows)
    augmented = [list(row) + ident for row, ident in zip(rows, identity(n))]
    reduced, pivots = rref(augmented)
    if pivots[:n] != list(range(n)) or len(reduced) < n:
        raise ValueError('matrix is not invertible')
    return [row[n:] for row in reduced]


# ── Spans of vector lists ────────────────────────────────────────────

def span_rank(vectors):
    return rank(vectors) if vectors else 0


def span_basis(vectors):
    """Row-reduced basis of the span of ``vectors``."""
    reduced, _ = rref(vectors) if vectors else ([], [])
    return reduced


def span_equal(a, b):
    ra, rb = span_rank(a), span_rank(b)
    return ra == rb and span_rank(list(a) + list(b)) == ra


def span_contains(basis, vector):
    return span_rank(list(basis) + [vector]) == span_rank(basis)


def intersection_dim(a, b):
    return span_rank(a) + span_rank(b) - span_rank(list(a) + list(b))


def leading_principal_minors(rows):
    """Determinants of the upper-left k×k blocks, k = 1..n."""
    n = len(rows)
    minors = []
    for k in range(1, n + 1):
        minors.append(_determinant([row[:k] for row in rows[:k]]))
    return minors


def _determinant(rows):
    work = [list(row) for row in rows]
    n = len(work)
    det = ONE
    for c in range(n):
        pivot_row = next((i for i in range(c, n) if work[i][c] != ZERO), None)
        if pivot_row is None:
            return ZERO
        if pivot_row != c:
            work[c], work[pivot_row] = work[pivot_row], work[c]
            det = -det
        pivot = work[c][c]
        det = det * pivot
        for i in range(c + 1, n):
            factor = work[i][c] / pivot
            if factor != ZERO:
                work[i] = [x - factor * y for x, y in zip(work[i], work[c])]
    return det
