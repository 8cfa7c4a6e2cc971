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

from sympy.polys.matrices import DomainMatrix

from tightmaps.algebra_core import (
    SO2N,
    SOSTAR,
    SU,
    SU11,
    form_gram,
    identity,
    make_algebra,
    polydisc,
)
from tightmaps.branching import (
    COMPLETE,
    ISOTROPIC_OBSTRUCTION,
    apply_quaternionic,
    commutant,
    invariant_decomposition_sostar,
    invariant_decomposition_su,
    orthonormal_columns,
    split_by_factor,
    su_level,
)
from tightmaps.catalog import (
    SU_TO_SOSTAR,
    SU_TO_SP,
    compose,
    direct_product,
    direct_sum,
    disc,
    gl2_example,
    rho_odd,
    spin,
    std_inclusion,
    tensor_product,
)
from tightmaps.exact import (
    CoordinateSystem,
    column_rank,
    common_domain,
    dagger,
    hstack,
    identity_matrix,
    is_zero,
    matrix_from_entries,
    subtract,
    unify,
)
from tightmaps.tightness import certify


def assert_equal_matrices(test, first, second):
    a, b = unify(first, second)
    test.assertTrue(is_zero(subtract(a, b)))


def generated_algebra(generators, size):
    """Basis of the unital associative algebra spanned by words in the generators."""
    elements = [identity_matrix(size)]
    system = CoordinateSystem(elements)
    frontier = list(elements)
    while frontier:
        fresh = []
        for A in frontier:
            for X in generators:
                product = X * A
                if not system.contains(product):
                    elements.append(product)
                    system = CoordinateSystem(elements)
                    fresh.append(product)
        frontier = fresh
    return elements


def restricted_dimension(algebra, block):
    """Dimension of the algebra restricted to the column span of ``block``."""
    n, d = block.shape
    products = [A * block for A in algebra]
    domain = common_domain(*(P.domain for P in products))
    dok = {}
    for k, P in enumerate(products):
        for (i, j), value in P.convert_to(domain).to_dok().items():
            dok[(i * d + j, k)] = value
    return column_rank(DomainMatrix.from_dok(dok, (n * d, len(products)), domain))


class TestSuDecomposition(unittest.TestCase):
    def _assert_valid_blocks(self, rho, report):
        H = form_gram(rho.target)
        blocks = [b.basis for b in report.blocks]
        self.assertEqual(sum(b.shape[1] for b in blocks), rho.target.size)
        for i, first in enumerate(blocks):
            for second in blocks[i + 1:]:
                self.assertTrue(is_zero(dagger(first) * H * second))
            for X in rho.images:
                moved = hstack(first, X * first)
                self.assertEqual(column_rank(moved), first.shape[1])

    def test_irreducible_maps_give_one_block(self):
        """Test that irreducible representations come back as a single block"""
        cases = [
            (identity(make_algebra(SU, 2, 3)), (2, 3)),
            (rho_odd(2), (2, 2)),
            (su_level(spin(3)), (2, 2)),
        ]
        for rho, signature in cases:
            report = invariant_decomposition_su(rho)
            self.assertEqual(report.residual_kind, COMPLETE, rho.label)
            self.assertEqual(report.signatures, [signature], rho.label)
            self.assertEqual(report.commutant_dimension, 1, rho.label)

    def test_diagonal_sum_splits_into_its_summands(self):
        """Test that a diagonal sum of two odd representations splits into both"""
        rho = direct_sum(rho_odd(1), rho_odd(2), same_source=True)
        report = invariant_decomposition_su(rho)
        self.assertTrue(report.complete)
        self.assertEqual(report.signatures, [(1, 1), (2, 2)])
        self.assertEqual(report.commutant_dimension, 2)
        self._assert_valid_blocks(rho, report)

    def test_blocks_are_orthogonal_and_invariant(self):
        """Test that blocks are invariant, pairwise orthogonal and exhaust the space"""
        for rho in (
            polydisc(make_algebra(SU, 2, 3)),
            std_inclusion(SU_TO_SP, 1, 2),
            su_level(std_inclusion(SU_TO_SOSTAR, 2, 3)),
        ):
            report = invariant_decomposition_su(rho)
            self.assertTrue(report.complete, rho.label)
            self._assert_valid_blocks(rho, report)
            positive = sum(s[0] for s in report.signatures)
            negative = sum(s[1] for s in report.signatures)
            self.assertEqual(positive + negative, rho.target.size)

    def test_blocks_carry_the_full_matrix_algebra(self):
        """Test each block against the algebra its images generate

        A block of dimension d has no proper invariant subspace exactly when
        the images generate all d x d matrices on it.
        """
        cases = [
            polydisc(make_algebra(SU, 2, 3)),
            identity(make_algebra(SU, 1, 2)),
            direct_sum(rho_odd(1), rho_odd(2), same_source=True),
            std_inclusion(SU_TO_SP, 1, 2),
            tensor_product(identity(SU11), identity(SU11)),
        ]
        for rho in cases:
            report = invariant_decomposition_su(rho)
            self.assertTrue(report.complete, rho.label)
            algebra = generated_algebra(rho.images, rho.target.size)
            for block in report.blocks:
                d = block.basis.shape[1]
                self.assertEqual(restricted_dimension(algebra, block.basis), d * d, rho.label)

    def test_reducible_span_is_detected_by_the_algebra(self):
        """Test that two summands together do not carry the full matrix algebra"""
        rho = direct_sum(rho_odd(1), rho_odd(2), same_source=True)
        algebra = generated_algebra(rho.images, rho.target.size)
        self.assertLess(restricted_dimension(algebra, identity_matrix(6)), 36)

    def test_gl2_example_is_an_isotropic_obstruction(self):
        """Test that the sl(2,C) example reports two isotropic planes"""
        report = invariant_decomposition_su(gl2_example())
        self.assertEqual(report.residual_kind, ISOTROPIC_OBSTRUCTION)
        self.assertFalse(report.complete)
        self.assertEqual(report.blocks, ())
        detail = report.obstruction_detail
        self.assertEqual(len(detail.subspaces), 2)
        self.assertEqual([s.shape[1] for s in detail.subspaces], [2, 2])
        self.assertEqual(detail.signature, (2, 2))
        self.assertIn("isotropic", detail.describe())
        H = form_gram(gl2_example().target)
        for subspace in detail.subspaces:
            self.assertTrue(is_zero(dagger(subspace) * H * subspace))

    def test_rejects_non_unitary_targets(self):
        """Test that a target outside the unitary families raises ValueError"""
        with self.assertRaises(ValueError):
            invariant_decomposition_su(identity(make_algebra(SO2N, 3)))


class TestCommutant(unittest.TestCase):
    def test_commutant_of_scalars_is_everything(self):
        """Test that the commutant of the identity is the full matrix algebra"""
        self.assertEqual(len(commutant([identity_matrix(3)], 3)), 9)

    def test_commutant_of_diagonal_matrix(self):
        """Test that a diagonal matrix with distinct entries commutes only with diagonals"""
        D = matrix_from_entries({(0, 0): 1, (1, 1): 2, (2, 2): 3}, 3)
        elements = commutant([D], 3)
        self.assertEqual(len(elements), 3)
        for C in elements:
            self.assertTrue(is_zero(subtract(C * D, D * C)))


class TestSostarDecomposition(unittest.TestCase):
    def test_identity_of_so_star_6_is_quaternionic(self):
        """Test that the defining representation of so*(6) is one quaternionic block"""
        report = invariant_decomposition_sostar(identity(make_algebra(SOSTAR, 3)))
        self.assertTrue(report.complete)
        self.assertEqual(len(report.blocks), 1)
        block = report.blocks[0]
        self.assertTrue(block.quaternionic)
        self.assertFalse(block.anti_isomorphic_pair)
        self.assertEqual(block.signature, (3, 3))

    def test_su_1_2_inclusion_pairs_anti_isomorphic_modules(self):
        """Test that su(1,2) in so*(6) fills one block made of V and JV"""
        rho = std_inclusion(SU_TO_SOSTAR, 1, 2)
        report = invariant_decomposition_sostar(rho)
        self.assertTrue(report.complete)
        self.assertEqual(len(report.blocks), 1)
        block = report.blocks[0]
        self.assertEqual(block.dimension, 6)
        self.assertTrue(block.anti_isomorphic_pair)
        self.assertFalse(block.irreducible)
        self.assertEqual(block.signature, (3, 3))
        first, second = block.components
        self.assertEqual(sorted(block.components), [(1, 2), (2, 1)])
        self.assertEqual(second, (first[1], first[0]))
        J_stable = hstack(block.basis, apply_quaternionic(block.basis, 3))
        self.assertEqual(column_rank(J_stable), 6)

    def test_requires_so_star_target(self):
        """Test that a non so* target raises ValueError"""
        with self.assertRaises(ValueError):
            invariant_decomposition_sostar(identity(make_algebra(SU, 2, 2)))


class TestSplitByFactor(unittest.TestCase):
    def test_polydisc_factors_through_its_discs(self):
        """Test that the split reproduces the map through the embedding"""
        rho = polydisc(make_algebra(SU, 2, 2))
        result = split_by_factor(rho)
        self.assertTrue(result.split)
        self.assertEqual(len(result.maps), 2)
        for m in result.maps:
            self.assertEqual(m.source, SU11)
            self.assertEqual(m.target, make_algebra(SU, 1, 1))
        rebuilt = compose(result.embedding, direct_product(result.maps))
        expected = su_level(rho)
        self.assertEqual(len(rebuilt.images), len(expected.images))
        for got, want in zip(rebuilt.images, expected.images):
            assert_equal_matrices(self, got, want)

    def test_orthonormal_columns_have_unit_norm(self):
        """Test that the frame returned for a block is orthonormal with signs"""
        H = form_gram(make_algebra(SU, 1, 2))
        frame = orthonormal_columns(identity_matrix(3), H)
        self.assertEqual(sorted(s for _, s in frame), [-1, -1, 1])
        for i, (u, s) in enumerate(frame):
            for j, (w, _) in enumerate(frame):
                value = (dagger(u) * H * w).to_Matrix()[0, 0]
                self.assertEqual(value, s if i == j else 0)

    def test_simple_source_is_rejected(self):
        """Test that a simple source raises ValueError"""
        with self.assertRaises(ValueError):
            split_by_factor(rho_odd(2))

    def test_non_tight_map_needs_permission(self):
        """Test that a non-tight map is refused unless explicitly allowed"""
        rho = tensor_product(identity(SU11), identity(SU11))
        certificate = certify(rho)
        self.assertFalse(certificate.tight)
        self.assertEqual(certificate.coefficients, [0, 0])
        with self.assertRaises(ValueError):
            split_by_factor(rho)

    def test_tensor_product_does_not_split(self):
        """Test the diagnostic for a block seen by both source factors"""
        rho = tensor_product(identity(SU11), identity(SU11))
        result = split_by_factor(rho, allow_non_tight=True)
        self.assertFalse(result.split)
        self.assertEqual(result.maps, ())
        self.assertIsNone(result.embedding)
        self.assertIn("sees source factors [0, 1]", result.diagnostic)

    def test_antiholomorphic_summand_still_splits(self):
        """Test that a tight map with a negative coefficient splits without permission"""
        rho = direct_sum(identity(SU11), disc(SU11, [-1]))
        certificate = certify(rho)
        self.assertTrue(certificate.tight)
        self.assertFalse(certificate.positive)
        result = split_by_factor(rho)
        self.assertTrue(result.split)
        self.assertEqual(len(result.maps), 2)


if __name__ == "__main__":  # pragma: no cover
    unittest.main()
