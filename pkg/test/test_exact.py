#!/usr/bin/python
# -*- coding: utf-8 -*-
# Copyright 2025 Arcangelo Massari <arcangelo.massari@unibo.it>
#
# Permission to use, copy, modify, and/or distribute this software for any purpose
# with or without fee is hereby granted, provided that the above copyright notice
# and this permission notice appear in all copies.
#
# THE SOFTWARE IS PROVIDED 'AS IS' AND THE AUTHOR DISCLAIMS ALL WARRANTIES WITH
# REGARD TO THIS SOFTWARE INCLUDING ALL IMPLIED WARRANTIES OF MERCHANTABILITY AND
# FITNESS. IN NO EVENT SHALL THE AUTHOR BE LIABLE FOR ANY SPECIAL, DIRECT, INDIRECT,
# OR CONSEQUENTIAL DAMAGES OR ANY DAMAGES WHATSOEVER RESULTING FROM LOSS OF USE,
# DATA OR PROFITS, WHETHER IN AN ACTION OF CONTRACT, NEGLIGENCE OR OTHER TORTIOUS
# ACTION, ARISING OUT OF OR IN CONNECTION WITH THE USE OR PERFORMANCE OF THIS
# SOFTWARE.
import unittest

from sympy import I, Rational, S, conjugate, expand, sqrt
from sympy.polys.domains import EX, QQ_I
from tightmaps.exact import (
    CoordinateSystem,
    add,
    block_diagonal,
    column_rank,
    commutator,
    dagger,
    eigenvalues,
    gaussian_root_of_norm,
    hermitian_signature,
    identity_matrix,
    is_zero,
    kron,
    matrix_from_entries,
    nullspace_rows,
    place,
    residual_norm,
    scale,
    subtract,
    trace,
)


class TestExact(unittest.TestCase):
    def setUp(self):
        """Set up a few small matrices."""
        self.e11 = matrix_from_entries({(0, 0): 1}, 2)
        self.e22 = matrix_from_entries({(1, 1): 1}, 2)
        self.e12 = matrix_from_entries({(0, 1): 1}, 2)

    def test_gaussian_entries_stay_in_qq_i(self):
        """Test that Gaussian rational entries give a QQ_I matrix."""
        M = matrix_from_entries({(0, 0): Rational(1, 2), (0, 1): I}, 2)
        self.assertEqual(M.domain, QQ_I)

    def test_surd_entries_move_to_ex(self):
        """Test that a square root moves the whole matrix to EX."""
        M = matrix_from_entries({(0, 0): 1, (1, 1): sqrt(2)}, 2)
        self.assertEqual(M.domain, EX)
        self.assertEqual(trace(M), 1 + sqrt(2))

    def test_residual_norm_takes_largest_part(self):
        """Test the max over real and imaginary parts of all entries."""
        M = matrix_from_entries({(0, 0): Rational(3, 2), (1, 1): -2 * I}, 2)
        self.assertEqual(residual_norm(M), 2)
        self.assertTrue(is_zero(subtract(M, M)))

    def test_scale_and_dagger(self):
        """Test scaling by i and the conjugate transpose."""
        M = scale(self.e12, I)
        self.assertTrue(is_zero(subtract(dagger(M), matrix_from_entries({(1, 0): -I}, 2))))

    def test_hermitian_signature(self):
        """Test signatures of diagonal and hyperbolic forms."""
        diagonal = matrix_from_entries({(0, 0): 1, (1, 1): -1}, 3)
        self.assertEqual(hermitian_signature(diagonal), (1, 1, 1))
        hyperbolic = matrix_from_entries({(0, 1): 1, (1, 0): 1}, 2)
        self.assertEqual(hermitian_signature(hyperbolic), (1, 1, 0))
        skew = matrix_from_entries({(0, 1): I, (1, 0): -I}, 2)
        self.assertEqual(hermitian_signature(skew), (1, 1, 0))

    def test_gaussian_root_of_norm(self):
        """Test that sums of two squares get Gaussian roots."""
        for value in (2, Rational(1, 2), 4, Rational(5, 9)):
            root = gaussian_root_of_norm(value)
            self.assertEqual(expand(root * conjugate(root)), value)
        self.assertEqual(gaussian_root_of_norm(2), 1 + I)
        self.assertEqual(gaussian_root_of_norm(3), sqrt(3))

    def test_eigenvalues_gaussian_first(self):
        """Test explicit eigenvalues of a diagonal matrix."""
        M = matrix_from_entries({(0, 0): 2, (1, 1): I}, 2)
        self.assertEqual(eigenvalues(M), [S(2), I])

    def test_eigenvalues_warn_on_implicit_roots(self):
        """Test that a companion matrix of x^5 - x - 1 logs the skipped roots."""
        entries = {(i + 1, i): 1 for i in range(4)}
        entries.update({(0, 4): 1, (1, 4): 1})
        companion = matrix_from_entries(entries, 5)
        with self.assertLogs("tightmaps.exact", level="WARNING") as logs:
            self.assertEqual(eigenvalues(companion), [])
        self.assertIn("5 of 5 eigenvalues", logs.output[0])

    def test_sum_of_surd_matrices_with_disjoint_entries(self):
        """Test add and subtract on EX matrices whose nonzero entries differ."""
        A = matrix_from_entries({(0, 1): sqrt(3)}, 2)
        B = matrix_from_entries({(1, 0): sqrt(3), (1, 1): 1}, 2)
        total = add(A, B)
        self.assertEqual(total.domain, EX)
        self.assertEqual(total.to_dok()[(1, 0)], EX.from_sympy(sqrt(3)))
        self.assertEqual(trace(total), 1)
        difference = subtract(A, B)
        self.assertEqual(difference.to_dok()[(1, 0)], EX.from_sympy(-sqrt(3)))
        self.assertTrue(is_zero(subtract(add(difference, B), A)))
        self.assertTrue(is_zero(add(self.e11, self.e22, scale(identity_matrix(2), -1))))
        with self.assertRaises(ValueError):
            add(A, identity_matrix(3))

    def test_commutator_of_surd_matrices(self):
        """Test a commutator whose products have different supports."""
        X = matrix_from_entries({(0, 1): sqrt(2)}, 2)
        Y = matrix_from_entries({(1, 0): sqrt(2)}, 2)
        expected = matrix_from_entries({(0, 0): 2, (1, 1): -2}, 2)
        self.assertTrue(is_zero(subtract(commutator(X, Y), expected)))

    def test_nullspace_rows_span_kernel(self):
        """Test that kernel rows are annihilated by the matrix."""
        A = matrix_from_entries({(0, 0): 1, (0, 1): 1}, (1, 2))
        kernel = nullspace_rows(A)
        self.assertEqual(kernel.shape, (1, 2))
        self.assertTrue(is_zero(A * kernel.transpose()))

    def test_column_rank(self):
        """Test the rank of dependent columns."""
        columns = matrix_from_entries({(0, 0): 1, (0, 1): 2, (1, 0): 1, (1, 1): 2}, 2)
        self.assertEqual(column_rank(columns), 1)

    def test_coordinate_system(self):
        """Test coordinates, recombination and span membership."""
        system = CoordinateSystem([self.e11, self.e22])
        diagonal = matrix_from_entries({(0, 0): 3, (1, 1): 4}, 2)
        coords = system.coordinates(diagonal)
        self.assertTrue(is_zero(subtract(system.combine(coords), diagonal)))
        self.assertTrue(system.contains(diagonal))
        self.assertFalse(system.contains(self.e12))
        with self.assertRaises(ValueError):
            system.coordinates(self.e12)

    def test_coordinate_system_rejects_dependent_basis(self):
        """Test that a repeated basis vector raises ValueError."""
        with self.assertRaises(ValueError):
            CoordinateSystem([self.e11, scale(self.e11, 2)])

    def test_block_layout(self):
        """Test place, block_diagonal and kron shapes."""
        placed = place(self.e12, [1, 3], 4)
        self.assertTrue(is_zero(subtract(placed, matrix_from_entries({(1, 3): 1}, 4))))
        blocks = block_diagonal([self.e11, identity_matrix(1)])
        self.assertEqual(blocks.shape, (3, 3))
        self.assertEqual(trace(blocks), 2)
        self.assertEqual(kron(self.e12, identity_matrix(3)).shape, (6, 6))


if __name__ == "__main__":  # pragma: no cover
    unittest.main()
