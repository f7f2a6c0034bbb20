"""
Linear algebra tests – elimination over the Gaussian rationals.
"""
from fractions import Fraction

import sympy
from django.test import SimpleTestCase
from sympy.polys.domains import QQ_I

from core.algebra import linalg
from core.testing import seeded


def _to_sympy(rows):
    return sympy.Matrix([[QQ_I.to_sympy(v) for v in row] for row in rows])


class EliminationTest(SimpleTestCase):
    """rref, rank, nullspace and solve on small exact matrices."""

    def test_rank_deficient(self):
        rows = linalg.matrix([[1, 2], [2, 4]])
        self.assertEqual(linalg.rank(rows), 1)
        self.assertEqual(linalg.nullspace(rows, 2), [linalg.matrix([[-2, 1]])[0]])

    def test_first_nonzero_pivoting(self):
        rows = linalg.matrix([[0, 1, 2], [0, 0, 0], [1, 0, 3]])
        reduced, pivots = linalg.rref(rows)
        self.assertEqual(pivots, [0, 1])
        self.assertEqual(reduced, linalg.matrix([[1, 0, 3], [0, 1, 2]]))

    def test_complex_entries(self):
        i = QQ_I(0, 1)
        rows = [[linalg.ONE, i], [i, -linalg.ONE]]
        self.assertEqual(linalg.rank(rows), 1)
        kernel = linalg.nullspace(rows, 2)
        self.assertEqual(len(kernel), 1)
        self.assertTrue(linalg.is_zero_matrix([linalg.matvec(rows, kernel[0])]))

    def test_solve_and_infeasible(self):
        rows = linalg.matrix([[1, 1], [1, -1]])
        solution = linalg.solve(rows, linalg.matrix([[3, 1]])[0])
        self.assertEqual(solution, linalg.matrix([[2, 1]])[0])
        singular = linalg.matrix([[1, 1], [2, 2]])
        self.assertIsNone(linalg.solve(singular, linalg.matrix([[1, 3]])[0]))

    def test_inverse(self):
        rows = linalg.matrix([[2, 1], [1, 1]])
        self.assertEqual(linalg.matmul(rows, linalg.inverse(rows)), linalg.identity(2))
        with self.assertRaises(ValueError):
            linalg.inverse(linalg.matrix([[1, 2], [2, 4]]))

    def test_spans(self):
        a = linalg.matrix([[1, 0, 0], [0, 1, 0]])
        b = linalg.matrix([[1, 1, 0], [1, -1, 0]])
        self.assertTrue(linalg.span_equal(a, b))
        self.assertTrue(linalg.span_contains(a, linalg.matrix([[3, 4, 0]])[0]))
        self.assertFalse(linalg.span_contains(a, linalg.matrix([[0, 0, 1]])[0]))
        self.assertEqual(linalg.intersection_dim(a, linalg.matrix([[0, 1, 1], [0, 1, 0]])), 1)

    def test_leading_minors(self):
        rows = linalg.matrix([[2, 1], [1, Fraction(3, 2)]])
        self.assertEqual(linalg.leading_principal_minors(rows), linalg.matrix([[2, 2]])[0])


class RankOracleTest(SimpleTestCase):
    """Random Gaussian-rational matrices against sympy's Matrix.rank."""

    def test_random_ranks_match_sympy(self):
        rng = seeded(1)
        for _ in range(40):
            nrows, ncols = rng.randint(1, 6), rng.randint(1, 6)
            rows = [
                [QQ_I(rng.randint(-2, 2), rng.choice((0, 0, 1, -1))) for _ in range(ncols)]
                for _ in range(nrows)
            ]
            # force some dependent rows
            if nrows > 1 and rng.random() < 0.5:
                rows[-1] = [a + b for a, b in zip(rows[0], rows[1 % nrows])]
            self.assertEqual(linalg.rank(rows), _to_sympy(rows).rank())
            for vector in linalg.nullspace(rows, ncols):
                self.assertTrue(all(v == linalg.ZERO for v in linalg.matvec(rows, vector)))
