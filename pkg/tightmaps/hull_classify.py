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
"""Hermitian hulls of tight maps and canonical forms of descriptors.

The hull of a tight positive map is assembled factor by factor. A factor
isomorphic to su(1,1) contributes one sp(2m,R) for every isotypic component
of even dimension 2m in its action, and any other factor contributes itself.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from sympy.polys.matrices import DomainMatrix

from tightmaps.algebra_core import (
    SO2N,
    SOSTAR,
    SP,
    AlgebraDescriptor,
    Homomorphism,
    basis,
    canonical_factors,
    direct_sum_algebra,
    factor_slices,
    form_gram,
    is_su11,
    make_algebra,
    make_factor,
)
from tightmaps.branching import (
    DecompositionReport,
    acting_factors,
    invariant_decomposition_su,
    projector_inverse,
    su_level,
)
from tightmaps.catalog import compose, rho_odd
from tightmaps.exact import add, common_domain, extract_block, nullspace_rows, place
from tightmaps.tightness import TightnessCertificate, certify

# Configure logging
logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class HullResult:
    hull: AlgebraDescriptor
    per_factor_detail: Tuple[Tuple[int, Tuple[int, ...]], ...]
    holomorphic_tight_into_target: bool
    inclusion: Optional[Homomorphism] = None
    certificate: Optional[TightnessCertificate] = None


def isomorphism_table() -> List[Tuple[AlgebraDescriptor, AlgebraDescriptor]]:
    """Low-dimensional coincidences as (descriptor, canonical descriptor) pairs."""
    entries = [
        make_factor(SP, 1),
        make_factor(SO2N, 1),
        make_factor(SO2N, 2),
        make_factor(SOSTAR, 3),
        make_factor(SO2N, 3),
        make_factor(SO2N, 4),
        make_factor(SO2N, 6),
    ]
    return [
        (AlgebraDescriptor((factor,)), AlgebraDescriptor(canonical_factors(factor)))
        for factor in entries
    ]


def canonicalize(algebra: AlgebraDescriptor) -> AlgebraDescriptor:
    """Rewrite every factor into its preferred family; idempotent."""
    factors = []
    for factor in algebra.factors:
        factors.extend(canonical_factors(factor))
    return AlgebraDescriptor(tuple(factors))


def canonical_multiset(algebra: AlgebraDescriptor) -> List[str]:
    return sorted(str(f) for f in canonicalize(algebra).factors)


def intertwiners(
    left: List[DomainMatrix], right: List[DomainMatrix], rows: int, cols: int
) -> List[DomainMatrix]:
    """Basis of the matrices T with L T = T R for every pair (L, R)."""
    K = common_domain(*(M.domain for M in left + right))
    system = {}
    for g, (L, R) in enumerate(zip(left, right)):
        base = g * rows * cols
        for (i, k), value in L.convert_to(K).to_dok().items():
            for j in range(cols):
                key = (base + i * cols + j, k * cols + j)
                system[key] = system.get(key, K.zero) + value
        for (k, j), value in R.convert_to(K).to_dok().items():
            for i in range(rows):
                key = (base + i * cols + j, i * cols + k)
                system[key] = system.get(key, K.zero) - value
    count = max(1, len(left)) * rows * cols
    kernel = nullspace_rows(DomainMatrix.from_dok(system, (count, rows * cols), K))
    grouped = [dict() for _ in range(kernel.shape[0])]
    for (r, c), value in kernel.to_dok().items():
        grouped[r][divmod(c, cols)] = value
    return [DomainMatrix.from_dok(dok, (rows, cols), kernel.domain) for dok in grouped]


def _factor_images(rho: Homomorphism, index: int) -> List[DomainMatrix]:
    k_range, p_range = factor_slices(rho.source)[index]
    return [rho.images[i] for i in list(k_range) + list(p_range)]


def _symplectic_piece(rho, index, blocks, m):
    """Action of sp(2m,R) on an isotypic component of an su(1,1) factor."""
    H = form_gram(rho.target)
    model = rho_odd(m)
    images = _factor_images(rho, index)
    frames = []
    for block in blocks:
        B = block.basis
        left = projector_inverse(H, B)
        local = [left * X * B for X in images]
        solutions = intertwiners(local, list(model.images), 2 * m, 2 * m)
        if len(solutions) != 1:
            raise RuntimeError(
                f"expected one intertwiner with rho({m}), found {len(solutions)}"
            )
        T = solutions[0]
        frames.append((B * T, T.inv() * left))

    def action(Y: DomainMatrix) -> DomainMatrix:
        result = None
        for outer, inner in frames:
            term = outer * Y * inner
            result = term if result is None else add(result, term)
        return result

    return action


def _isotypic_groups(rho, report, index):
    groups: Dict[int, list] = {}
    for block in report.blocks:
        if index not in acting_factors(rho, block.basis):
            continue
        dimension = block.dimension
        if dimension % 2:
            logger.warning(
                f"{rho.label}: su(1,1) factor {index} acts on an odd-dimensional "
                f"block of signature {block.signature}"
            )
            continue
        groups.setdefault(dimension // 2, []).append(block)
    return groups


def _hull_pieces(rho: Homomorphism, unitary: Homomorphism, report: DecompositionReport):
    pieces, detail = [], []
    for index, factor in enumerate(rho.source.factors):
        if is_su11(factor):
            if factor.family == SO2N:
                raise ValueError(
                    f"{rho.label}: hulls of so(2,1) factors need the su(1,1) model"
                )
            groups = _isotypic_groups(unitary, report, index)
            detail.append((index, tuple(sorted(groups))))
            for m in sorted(groups):
                action = _symplectic_piece(unitary, index, groups[m], m)
                pieces.append((make_algebra(SP, m), action))
        else:
            sub = rho.source.factor_algebra(index)
            block = rho.source.block(index)
            size = rho.source.size

            def action(X, block=block, size=size):
                return unitary.apply(place(X, block, size))

            pieces.append((sub, action))
    return pieces, tuple(detail)


def _unitary_report(rho, decomposition):
    unitary = su_level(rho)
    report = decomposition or invariant_decomposition_su(unitary)
    if not report.complete:
        raise ValueError(f"{rho.label}: the decomposition is not complete")
    return unitary, report


def _inclusion(rho, unitary, report):
    pieces, detail = _hull_pieces(rho, unitary, report)
    hull = direct_sum_algebra(*(algebra for algebra, _ in pieces))
    blocks = [hull.block(i) for i in range(len(hull.factors))]

    def action(X: DomainMatrix) -> DomainMatrix:
        result = None
        for (_, piece), block in zip(pieces, blocks):
            term = piece(extract_block(X, block))
            result = term if result is None else add(result, term)
        return result

    images = tuple(action(M) for M in basis(hull))
    inclusion = Homomorphism(
        hull, unitary.target, images, f"hull({rho.label})", action=action
    )
    return inclusion, detail


def hull_inclusion(
    rho: Homomorphism, decomposition: Optional[DecompositionReport] = None
) -> Homomorphism:
    """The hull of rho as a block homomorphism into the unitary model of the target.

    Raises:
        ValueError: If the decomposition of rho is not complete
    """
    unitary, report = _unitary_report(rho, decomposition)
    return _inclusion(rho, unitary, report)[0]


def hermitian_hull(
    rho: Homomorphism, decomposition: Optional[DecompositionReport] = None
) -> HullResult:
    """Hermitian hull of a tight positive map, with its certified inclusion.

    Args:
        rho: Tight positive homomorphism into su, sp or so*
        decomposition: Report of ``invariant_decomposition_su`` on the unitary
            model of rho, computed when omitted

    Raises:
        ValueError: If rho is not tight and positive, or the decomposition is
            incomplete
    """
    certificate = certify(rho)
    if not (certificate.tight and certificate.positive):
        raise ValueError(f"{rho.label} is not tight and positive")
    unitary, report = _unitary_report(rho, decomposition)
    inclusion, detail = _inclusion(rho, unitary, report)
    inclusion_certificate = certify(inclusion)
    envelope = 2 if rho.target.factors[0].family == SOSTAR else 1
    embedded = (
        inclusion_certificate.holomorphic
        and inclusion_certificate.weighted_sum == envelope * rho.target.rank
    )
    result = HullResult(inclusion.source, detail, embedded, inclusion, inclusion_certificate)
    logger.info(f"Hull of {rho.label}: {result.hull}")
    return result


def hull_invariance_check(rho: Homomorphism, tau: Homomorphism) -> bool:
    """Whether composing with a tight holomorphic inclusion keeps the hull.

    Raises:
        ValueError: If tau is not tight and holomorphic or does not compose
    """
    tau_certificate = certify(tau)
    if not (tau_certificate.tight and tau_certificate.holomorphic):
        raise ValueError(f"{tau.label} is not a tight holomorphic inclusion")
    before = hermitian_hull(rho).hull
    after = hermitian_hull(compose(tau, rho)).hull
    return canonical_multiset(before) == canonical_multiset(after)
