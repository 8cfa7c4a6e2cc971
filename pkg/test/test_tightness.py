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

from tightmaps.algebra_core import (
    SO2N,
    SOSTAR,
    SP,
    SU,
    SU11,
    Homomorphism,
    basis,
    factor_slices,
    identity,
    make_algebra,
    polydisc,
)
from tightmaps.catalog import (
    SOSTAR_TO_SU,
    SP_TO_SU,
    SU_TO_SOSTAR,
    SU_TO_SP,
    compose,
    direct_sum,
    disc,
    gl2_example,
    pad_target,
    rho_odd,
    spin,
    std_inclusion,
)
from tightmaps.exact import scale
from tightmaps.tightness import (
    PreconditionSkipped,
    alignment_residual,
    certify,
    forced_holomorphy_check,
    holomorphy_residual,
    pullback_coefficients,
)


def unitary_pairs(limit):
    """Signatures (m, n) with 1 <= m <= n and m + n <= limit."""
    return [(m, n) for n in range(1, limit) for m in range(1, n + 1) if m + n <= limit]


def tight_positive_catalog():
    """Tight positive maps without su(1,1) source factors."""
    maps = [std_inclusion(SP_TO_SU, n) for n in (2, 3, 4, 5)]
    maps += [std_inclusion(SOSTAR_TO_SU, n) for n in (4, 6)]
    maps += [std_inclusion(SU_TO_SP, m, m) for m in (2, 3)]
    maps += [std_inclusion(SU_TO_SOSTAR, m, n) for m, n in ((1, 2), (2, 2), (2, 3), (3, 3), (3, 4))]
    maps += [
        identity(algebra)
        for algebra in (
            make_algebra(SU, 1, 2),
            make_algebra(SU, 2, 2),
            make_algebra(SU, 2, 3),
            make_algebra(SP, 2),
            make_algebra(SP, 3),
            make_algebra(SOSTAR, 4),
            make_algebra(SOSTAR, 5),
            make_algebra(SO2N, 3),
        )
    ]
    maps += [spin(p) for p in (3, 4, 5)]
    maps += [
        pad_target(identity(make_algebra(SU, 2, 2)), make_algebra(SU, 2, 4)),
        pad_target(std_inclusion(SP_TO_SU, 2), make_algebra(SU, 2, 3)),
        compose(std_inclusion(SOSTAR_TO_SU, 4), std_inclusion(SU_TO_SOSTAR, 2, 2)),
        compose(std_inclusion(SU_TO_SP, 2, 2), std_inclusion(SP_TO_SU, 2)),
        compose(std_inclusion(SP_TO_SU, 4), std_inclusion(SU_TO_SP, 2, 2)),
        direct_sum(identity(make_algebra(SU, 1, 2)), identity(make_algebra(SU, 2, 2))),
        direct_sum(identity(make_algebra(SP, 2)), identity(make_algebra(SP, 3))),
        direct_sum(std_inclusion(SP_TO_SU, 2), identity(make_algebra(SU, 1, 2))),
    ]
    return maps


class TestStandardInclusionTable(unittest.TestCase):
    def test_sp_to_su_always_tight(self):
        """Test that sp(2n,R) -> su(n,n) is tight for every n."""
        for n in range(1, 7):
            certificate = certify(std_inclusion(SP_TO_SU, n))
            self.assertTrue(certificate.tight, n)
            self.assertTrue(certificate.holomorphic, n)

    def test_sostar_to_su_tight_iff_even(self):
        """Test so*(2n) -> su(n,n): coefficient 2, tight exactly for even n."""
        for n in range(2, 7):
            certificate = certify(std_inclusion(SOSTAR_TO_SU, n))
            self.assertEqual(certificate.coefficients, [2])
            self.assertEqual(certificate.tight, n % 2 == 0, n)

    def test_su_to_sp_tight_iff_equal(self):
        """Test su(m,n) -> sp(2(m+n),R) is tight exactly when m = n."""
        for m, n in unitary_pairs(8):
            certificate = certify(std_inclusion(SU_TO_SP, m, n))
            self.assertEqual(certificate.tight, m == n, (m, n))

    def test_su_to_sostar_tight_iff_balanced(self):
        """Test su(m,n) -> so*(2(m+n)) is tight exactly when n is m or m+1."""
        for m, n in unitary_pairs(8):
            certificate = certify(std_inclusion(SU_TO_SOSTAR, m, n))
            self.assertEqual(certificate.tight, n in (m, m + 1), (m, n))

    def test_tau_coefficient(self):
        """Test that so*(2p) -> su(p,p) pulls the Kaehler form back with factor 2."""
        for p in range(2, 7):
            self.assertEqual(pullback_coefficients(std_inclusion(SOSTAR_TO_SU, p)), [2])


class TestCertificates(unittest.TestCase):
    def test_spin_is_tight_and_holomorphic(self):
        """Test spin representations for small p."""
        for p in range(3, 11):
            certificate = certify(spin(p))
            self.assertTrue(certificate.tight, p)
            self.assertTrue(certificate.holomorphic, p)

    def test_rho_odd_is_tight_but_not_holomorphic(self):
        """Test that only the two-dimensional representation is holomorphic."""
        for n in range(2, 6):
            certificate = certify(rho_odd(n))
            self.assertTrue(certificate.tight)
            self.assertTrue(certificate.positive)
            self.assertFalse(certificate.holomorphic)
            self.assertEqual(certificate.coefficients, [n])
            self.assertNotEqual(holomorphy_residual(rho_odd(n)), 0)
        certificate = certify(rho_odd(1))
        self.assertTrue(certificate.holomorphic)
        self.assertEqual(alignment_residual(rho_odd(1)), 0)

    def test_diagonal_disc_accounting(self):
        """Test that the diagonal disc pulls back rank times the form."""
        algebras = [make_algebra(SU, m, n) for m, n in unitary_pairs(8) if m <= 4]
        algebras += [make_algebra(SP, n) for n in range(1, 5)]
        algebras += [make_algebra(SOSTAR, n) for n in range(3, 10)]
        algebras += [make_algebra(SO2N, p) for p in range(3, 9)]
        for algebra in algebras:
            self.assertLessEqual(algebra.rank, 4)
            certificate = certify(disc(algebra, [1]))
            self.assertEqual(certificate.weighted_sum, algebra.rank, str(algebra))
            self.assertTrue(certificate.tight)
            flipped = pullback_coefficients(disc(algebra, [-1]))
            self.assertEqual(flipped, [-algebra.rank], str(algebra))

    def test_coefficient_checked_on_a_second_direction(self):
        """Test that a rank-one factor is checked outside its polydisc plane too."""
        algebra = make_algebra(SU, 1, 2)
        vectors = list(basis(algebra))
        _, p_range = factor_slices(algebra)[0]
        for i in list(p_range)[-2:]:
            vectors[i] = scale(vectors[i], 2)
        tampered = Homomorphism(algebra, algebra, tuple(vectors), "stretched")
        with self.assertRaises(ValueError) as context:
            pullback_coefficients(tampered, check=False)
        self.assertIn("not a multiple", str(context.exception))
        self.assertEqual(pullback_coefficients(identity(algebra)), [1])
        self.assertEqual(pullback_coefficients(identity(SU11)), [1])

    def test_polydisc_is_holomorphic(self):
        """Test that the polydisc is tight and holomorphic."""
        certificate = certify(polydisc(make_algebra(SU, 2, 3)))
        self.assertEqual(certificate.coefficients, [1, 1])
        self.assertTrue(certificate.tight)
        self.assertTrue(certificate.holomorphic)

    def test_gl2_example_is_not_tight(self):
        """Test that the non-Hermitian source has coefficient zero."""
        certificate = certify(gl2_example())
        self.assertEqual(certificate.coefficients, [0])
        self.assertFalse(certificate.tight)
        self.assertFalse(certificate.holomorphic)

    def test_non_tight_inclusion(self):
        """Test the weighted sum of a non-tight inclusion."""
        certificate = certify(std_inclusion(SU_TO_SP, 1, 2))
        self.assertEqual(certificate.weighted_sum, 2)
        self.assertEqual(certificate.target_rank, 3)
        self.assertFalse(certificate.tight)


class TestForcedHolomorphy(unittest.TestCase):
    def test_catalog_never_falsifies_holomorphy(self):
        """Test that every tight positive map without su(1,1) factors is holomorphic."""
        catalog = tight_positive_catalog()
        self.assertGreaterEqual(len(catalog), 30)
        families = set()
        for rho in catalog:
            self.assertTrue(forced_holomorphy_check(rho), rho.label)
            families.add(rho.target.factors[0].family)
        self.assertEqual(families, {SU, SP, SOSTAR, SO2N})

    def test_preconditions(self):
        """Test that maps outside the hypotheses are skipped."""
        with self.assertRaises(PreconditionSkipped):
            forced_holomorphy_check(rho_odd(2))
        with self.assertRaises(PreconditionSkipped):
            forced_holomorphy_check(gl2_example())
        with self.assertRaises(PreconditionSkipped):
            forced_holomorphy_check(std_inclusion(SOSTAR_TO_SU, 3))
        with self.assertRaises(PreconditionSkipped):
            forced_holomorphy_check(identity(make_algebra(SO2N, 2)))


if __name__ == "__main__":  # pragma: no cover
    unittest.main()
