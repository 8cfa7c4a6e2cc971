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
"""Kaehler pullback coefficients and tightness certificates.

A homomorphism between Hermitian algebras pulls the Kaehler form of the
target back to a combination of the Kaehler forms of the source factors.
The coefficients decide everything here: the map is tight when their
rank-weighted absolute sum equals the rank of the target, and positive when
none of them is negative.
"""

import logging
from dataclasses import dataclass
from typing import List, Tuple

from sympy import Abs, Expr, S
from sympy.polys.matrices import DomainMatrix

from tightmaps.algebra_core import (
    SU11,
    AlgebraDescriptor,
    Homomorphism,
    SimpleFactor,
    basis,
    canonical_factors,
    complex_structure,
    disc_generators,
    factor_slices,
    k_projection,
    kahler_form,
)
from tightmaps.catalog import verify_homomorphism
from tightmaps.exact import add, max_norm, residual_norm, scale, subtract

# Configure logging
logger = logging.getLogger(__name__)


class PreconditionSkipped(ValueError):
    """The map falls outside the hypotheses of a property check."""


@dataclass(frozen=True)
class TightnessCertificate:
    label: str
    per_factor: Tuple[Tuple[SimpleFactor, Expr], ...]
    weighted_sum: Expr
    target_rank: int
    tight: bool
    positive: bool
    holomorphic: bool
    holomorphy_residual: Expr
    aligned: bool

    @property
    def coefficients(self) -> List[Expr]:
        return [alpha for _, alpha in self.per_factor]


def _check_input(rho: Homomorphism) -> None:
    residual = verify_homomorphism(rho)
    if residual != 0:
        raise ValueError(f"{rho.label} is not a homomorphism (residual {residual})")
    for factor in rho.target.factors:
        if not factor.is_hermitian:
            raise ValueError(f"target {rho.target} of {rho.label} is not Hermitian")


def _p_part(algebra: AlgebraDescriptor, Y: DomainMatrix) -> DomainMatrix:
    return scale(complex_structure(algebra, complex_structure(algebra, Y)), -1)


def _tangent_pairs(source: AlgebraDescriptor, index: int):
    """Pairs (X, J X) spanning independent directions of one factor's p.

    Always at least two: the polydisc directions, their sum when the factor
    has rank above one, and the last p basis vector, which lies outside the
    first disc whenever p is more than two-dimensional.
    """
    discs = disc_generators(source, index)
    pairs = [(P1, P2) for _, P1, P2 in discs]
    if len(discs) > 1:
        pairs.append(
            (add(*(P1 for P1, _ in pairs)), add(*(P2 for _, P2 in pairs)))
        )
    _, p_range = factor_slices(source)[index]
    X = basis(source)[p_range[-1]]
    pairs.append((X, complex_structure(source, X)))
    return pairs


def _factor_coefficient(rho: Homomorphism, index: int) -> Expr:
    source, target = rho.source, rho.target
    values = []
    for X, JX in _tangent_pairs(source, index):
        denominator = kahler_form(source, X, JX)
        if denominator == 0:
            raise RuntimeError(
                f"zero Kaehler denominator on factor {index} of {source}"
            )
        image_x = _p_part(target, rho.apply(X))
        image_jx = _p_part(target, rho.apply(JX))
        values.append(kahler_form(target, image_x, image_jx) / denominator)
    first = values[0]
    if any(value != first for value in values[1:]):
        raise ValueError(
            f"pullback of the Kaehler form under {rho.label} is not a multiple "
            f"of the Kaehler form on factor {index}: {values}"
        )
    return first


def pullback_coefficients(rho: Homomorphism, check: bool = True) -> List[Expr]:
    """Pullback coefficient of the target Kaehler form on each source factor.

    Args:
        rho: Homomorphism with a Hermitian target
        check: Verify the bracket relations first

    Returns:
        One exact rational per source factor, zero for non-Hermitian factors

    Raises:
        ValueError: If rho is not a homomorphism, the target is not Hermitian,
            or the pullback is not proportional to a Kaehler form
    """
    if check:
        _check_input(rho)
    coefficients = []
    for index, factor in enumerate(rho.source.factors):
        if not factor.is_hermitian:
            coefficients.append(S.Zero)
            continue
        coefficients.append(_factor_coefficient(rho, index))
    logger.debug(f"Pullback coefficients of {rho.label}: {coefficients}")
    return coefficients


def _hermitian_basis_ranges(rho: Homomorphism):
    for factor, (k_range, p_range) in zip(rho.source.factors, factor_slices(rho.source)):
        if factor.is_hermitian:
            yield k_range, p_range


def alignment_residual(rho: Homomorphism) -> Expr:
    """Zero iff rho maps k into k and p into p on every Hermitian source factor."""
    target = rho.target
    values = []
    for k_range, p_range in _hermitian_basis_ranges(rho):
        for i in k_range:
            values.append(residual_norm(_p_part(target, rho.images[i])))
        for i in p_range:
            values.append(residual_norm(k_projection(target, rho.images[i])))
    return max_norm(values)


def holomorphy_residual(rho: Homomorphism) -> Expr:
    """Largest entry of d rho(J X) - J d rho(X) over the p basis vectors X."""
    vectors = basis(rho.source)
    values = []
    for _, p_range in _hermitian_basis_ranges(rho):
        for i in p_range:
            lhs = rho.apply(complex_structure(rho.source, vectors[i]))
            rhs = complex_structure(rho.target, rho.images[i])
            values.append(residual_norm(subtract(lhs, rhs)))
    return max_norm(values)


def certify(rho: Homomorphism) -> TightnessCertificate:
    """Tightness, positivity and holomorphy certificate of a homomorphism.

    Raises:
        ValueError: If rho is not a homomorphism into a Hermitian target
    """
    coefficients = pullback_coefficients(rho)
    factors = rho.source.factors
    weighted = sum((Abs(alpha) * f.rank for f, alpha in zip(factors, coefficients)), S.Zero)
    target_rank = rho.target.rank
    positive = all(alpha >= 0 for alpha in coefficients)
    aligned = alignment_residual(rho) == 0
    residual = holomorphy_residual(rho)
    holomorphic = (
        aligned and residual == 0 and all(f.is_hermitian for f in factors)
    )
    if not aligned:
        logger.info(f"{rho.label} is not aligned with the chosen Cartan data")
    if holomorphic and not positive:
        logger.error(f"{rho.label} is holomorphic with coefficients {coefficients}")
        raise RuntimeError(f"holomorphic map {rho.label} has a negative coefficient")
    certificate = TightnessCertificate(
        label=rho.label,
        per_factor=tuple(zip(factors, coefficients)),
        weighted_sum=weighted,
        target_rank=target_rank,
        tight=weighted == target_rank,
        positive=positive,
        holomorphic=holomorphic,
        holomorphy_residual=residual,
        aligned=aligned,
    )
    logger.info(
        f"Certified {rho.label}: tight={certificate.tight}, "
        f"positive={positive}, holomorphic={holomorphic}"
    )
    return certificate


def forced_holomorphy_check(rho: Homomorphism) -> bool:
    """Holomorphy of a tight positive map none of whose source factors is su(1,1).

    Such maps are expected to be holomorphic; this only spot-checks that
    expectation on the given instance.

    Raises:
        PreconditionSkipped: If a source factor is su(1,1) up to isomorphism,
            is not Hermitian, or the map is not tight and positive
    """
    for factor in rho.source.factors:
        if not factor.is_hermitian:
            raise PreconditionSkipped(f"{factor} is not Hermitian")
        if SU11.factors[0] in canonical_factors(factor):
            raise PreconditionSkipped(f"{factor} is isomorphic to a sum of su(1,1)")
    certificate = certify(rho)
    if not (certificate.tight and certificate.positive):
        raise PreconditionSkipped(f"{rho.label} is not tight and positive")
    return certificate.holomorphic
