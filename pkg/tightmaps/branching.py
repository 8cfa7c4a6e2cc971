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
"""Orthogonal decompositions of unitary representations into invariant blocks.

Invariant subspaces are read off the commutant of the image: every element of
the commutant has invariant eigenspaces, and the commutant is one-dimensional
exactly on irreducible pieces. A nondegenerate invariant piece splits off
together with its orthogonal complement for the Hermitian form of the target.
"""

import logging
import random
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from sympy import I, Rational
from sympy.polys.domains import QQ_I
from sympy.polys.matrices import DomainMatrix

from tightmaps.algebra_core import (
    SOSTAR,
    SP,
    SU,
    Homomorphism,
    basis,
    factor_slices,
    form_gram,
    make_algebra,
)
from tightmaps.catalog import (
    SOSTAR_TO_SU,
    SP_TO_SU,
    compose,
    direct_product,
    std_inclusion,
    verify_homomorphism,
)
from tightmaps.exact import (
    add,
    block_diagonal,
    column_basis,
    common_domain,
    column_rank,
    conj,
    dagger,
    eigenvalues,
    gaussian_root_of_norm,
    hermitian_signature,
    hstack,
    identity_matrix,
    is_zero,
    matrix_from_entries,
    nullspace_rows,
    scale,
    subtract,
    trace,
    unify,
)
from tightmaps.tightness import certify

# Configure logging
logger = logging.getLogger(__name__)

COMPLETE = "COMPLETE"
ISOTROPIC_OBSTRUCTION = "ISOTROPIC_OBSTRUCTION"
DEFAULT_SEED = 0
DEFAULT_MAX_DRAWS = 64


@dataclass(frozen=True)
class Block:
    """An invariant subspace, given by the columns of ``basis``."""

    basis: DomainMatrix
    signature: Tuple[int, int]
    irreducible: bool = True
    quaternionic: bool = False
    anti_isomorphic_pair: bool = False
    components: Optional[Tuple[Tuple[int, int], Tuple[int, int]]] = None

    @property
    def dimension(self) -> int:
        return self.basis.shape[1]


@dataclass(frozen=True)
class IsotropicPairing:
    """Isotropic invariant subspaces met where no nondegenerate one exists."""

    subspaces: Tuple[DomainMatrix, ...]
    signature: Tuple[int, int]

    def describe(self) -> str:
        dims = ", ".join(str(s.shape[1]) for s in self.subspaces)
        return (
            f"isotropic invariant subspaces of dimensions {dims} "
            f"spanning a space of signature {self.signature}"
        )


@dataclass(frozen=True)
class DecompositionReport:
    label: str
    blocks: Tuple[Block, ...]
    residual_kind: str
    obstruction_detail: Optional[IsotropicPairing] = None
    commutant_dimension: int = 0

    @property
    def complete(self) -> bool:
        return self.residual_kind == COMPLETE

    @property
    def signatures(self) -> List[Tuple[int, int]]:
        return sorted(b.signature for b in self.blocks)


@dataclass(frozen=True, eq=False)
class SplitResult:
    split: bool
    maps: Tuple[Homomorphism, ...] = ()
    embedding: Optional[Homomorphism] = None
    diagnostic: Optional[str] = None


def _pairing(u: DomainMatrix, H: DomainMatrix, w: DomainMatrix):
    """u* H w for two column vectors, as a SymPy number."""
    return trace(dagger(u) * H * w)


def restricted_gram(H: DomainMatrix, B: DomainMatrix) -> DomainMatrix:
    return dagger(B) * H * B


def _signature(H: DomainMatrix, B: DomainMatrix) -> Tuple[int, int, int]:
    return hermitian_signature(restricted_gram(H, B))


def projector_inverse(H: DomainMatrix, B: DomainMatrix) -> DomainMatrix:
    """Left inverse of B vanishing on the H-orthogonal complement of its span."""
    return restricted_gram(H, B).inv() * dagger(B) * H


def _restrict(generators: Sequence[DomainMatrix], B: DomainMatrix) -> List[DomainMatrix]:
    left = (dagger(B) * B).inv() * dagger(B)
    return [left * X * B for X in generators]


def commutant(generators: Sequence[DomainMatrix], size: int) -> List[DomainMatrix]:
    """Basis of the matrices commuting with every generator.

    Solves [C, X] = 0 as a linear system in the size**2 entries of C.
    """
    K = common_domain(*(X.domain for X in generators)) if generators else QQ_I
    rows = {}
    for g, X in enumerate(generators):
        base = g * size * size
        entries = X.convert_to(K).to_dok().items()
        for (k, j), value in entries:
            for i in range(size):
                key = (base + i * size + j, i * size + k)
                rows[key] = rows.get(key, K.zero) + value
        for (i, k), value in entries:
            for j in range(size):
                key = (base + i * size + j, k * size + j)
                rows[key] = rows.get(key, K.zero) - value
    count = max(1, len(generators)) * size * size
    kernel = nullspace_rows(DomainMatrix.from_dok(rows, (count, size * size), K))
    grouped = [dict() for _ in range(kernel.shape[0])]
    for (r, c), value in kernel.to_dok().items():
        grouped[r][divmod(c, size)] = value
    return [DomainMatrix.from_dok(dok, (size, size), kernel.domain) for dok in grouped]


def _eigenspaces(C: DomainMatrix) -> List[DomainMatrix]:
    size = C.shape[0]
    spaces = []
    for value in eigenvalues(C):
        shifted, identity = unify(C, scale(identity_matrix(size), value))
        kernel = nullspace_rows(subtract(shifted, identity))
        if 0 < kernel.shape[0] < size:
            spaces.append(kernel.transpose())
    return spaces


def _form_adjoint(C: DomainMatrix, gram: DomainMatrix) -> DomainMatrix:
    return gram.inv() * dagger(C) * gram


def _space_key(space: DomainMatrix) -> Tuple:
    reduced = column_basis(space)
    return (reduced.shape[1], tuple(str(v) for row in reduced.to_Matrix().tolist() for v in row))


def _candidate_tiers(basis_elements, gram, rng, max_draws):
    yield list(basis_elements)
    adjoint_mixes = []
    for C in basis_elements:
        adjoint = _form_adjoint(C, gram)
        adjoint_mixes.append(add(C, adjoint))
        adjoint_mixes.append(scale(subtract(C, adjoint), I))
    yield adjoint_mixes
    for draw in range(max_draws):
        coefficients = [rng.randint(-3, 3) for _ in basis_elements]
        if not any(coefficients):
            continue
        logger.debug(f"Drawing commutant combination {draw}: {coefficients}")
        combination = None
        for c, C in zip(coefficients, basis_elements):
            term = scale(C, c)
            combination = term if combination is None else add(combination, term)
        yield [combination]


def _find_split(basis_elements, gram, rng, max_draws):
    """Smallest nondegenerate invariant subspace, or the degenerate ones seen."""
    seen = {}
    for tier in _candidate_tiers(basis_elements, gram, rng, max_draws):
        for C in tier:
            for space in _eigenspaces(C):
                key = _space_key(space)
                if key not in seen:
                    seen[key] = column_basis(space)
        nondegenerate = [
            (key, space)
            for key, space in sorted(seen.items())
            if hermitian_signature(restricted_gram(gram, space))[2] == 0
        ]
        if nondegenerate:
            return nondegenerate[0][1], []
    return None, [space for _, space in sorted(seen.items())]


def _obstruction(H: DomainMatrix, B: DomainMatrix, spaces) -> IsotropicPairing:
    isotropic = [B * W for W in spaces if is_zero(restricted_gram(restricted_gram(H, B), W))]
    if not isotropic:
        isotropic = [B * W for W in spaces]
    first = isotropic[0]
    for other in isotropic[1:]:
        span = hstack(first, other)
        if column_rank(span) == first.shape[1] + other.shape[1]:
            positive, negative, null = _signature(H, span)
            if null == 0:
                return IsotropicPairing((first, other), (positive, negative))
    positive, negative, _ = _signature(H, first)
    return IsotropicPairing((first,), (positive, negative))


def _decompose(generators, H, space, rng, max_draws):
    """Blocks of an invariant nondegenerate space, in splitting order."""
    pending = [space]
    blocks = []
    first_dimension = None
    while pending:
        B = pending.pop(0)
        size = B.shape[1]
        local_generators = _restrict(generators, B)
        local_gram = restricted_gram(H, B)
        elements = commutant(local_generators, size)
        if first_dimension is None:
            first_dimension = len(elements)
        logger.debug(f"Commutant of a {size}-dimensional piece has dimension {len(elements)}")
        if len(elements) <= 1:
            positive, negative, _ = hermitian_signature(local_gram)
            blocks.append(Block(B, (positive, negative)))
            continue
        found, degenerate = _find_split(elements, local_gram, rng, max_draws)
        if found is None:
            if not degenerate:
                raise RuntimeError(
                    f"no invariant subspace found in a commutant of dimension {len(elements)}"
                )
            return blocks, _obstruction(H, B, degenerate), first_dimension
        complement = nullspace_rows(dagger(found) * local_gram).transpose()
        pending[0:0] = [B * found, B * complement]
    return blocks, None, first_dimension


def _generators(rho: Homomorphism) -> List[DomainMatrix]:
    images = []
    for _, p_range in factor_slices(rho.source):
        images.extend(rho.images[i] for i in p_range)
    return [M for M in images if not is_zero(M)]


def _check(rho: Homomorphism, families: Sequence[str]) -> None:
    residual = verify_homomorphism(rho)
    if residual != 0:
        raise ValueError(f"{rho.label} is not a homomorphism (residual {residual})")
    for factor in rho.target.factors:
        if factor.family not in families:
            raise ValueError(f"{rho.label}: target {rho.target} is not one of {families}")


def invariant_decomposition_su(
    rho: Homomorphism,
    seed: int = DEFAULT_SEED,
    max_draws: int = DEFAULT_MAX_DRAWS,
) -> DecompositionReport:
    """Split the target space into nondegenerate, orthogonal, irreducible pieces.

    Args:
        rho: Homomorphism into su(m,n), sp(2n,R) or so*(2n) (all act on the
            space of the Hermitian form diag(I, -I))
        seed: Seed of the random commutant combinations
        max_draws: Number of random combinations tried before giving up

    Returns:
        DecompositionReport, COMPLETE or ISOTROPIC_OBSTRUCTION

    Raises:
        ValueError: If rho is not a homomorphism into such a target
    """
    _check(rho, (SU, SP, SOSTAR))
    H = form_gram(rho.target)
    rng = random.Random(seed)
    space = identity_matrix(rho.target.size)
    blocks, obstruction, dimension = _decompose(_generators(rho), H, space, rng, max_draws)
    kind = COMPLETE if obstruction is None else ISOTROPIC_OBSTRUCTION
    report = DecompositionReport(rho.label, tuple(blocks), kind, obstruction, dimension)
    logger.info(f"Decomposed {rho.label}: {kind} with {len(blocks)} blocks")
    return report


def quaternionic_structure(n: int) -> DomainMatrix:
    """Matrix M of the antilinear map J(v) = M conj(v) on C^(2n)."""
    entries = {}
    for i in range(n):
        entries[(i, n + i)] = -1
        entries[(n + i, i)] = 1
    return matrix_from_entries(entries, 2 * n)


def apply_quaternionic(W: DomainMatrix, n: int) -> DomainMatrix:
    return quaternionic_structure(n) * conj(W)


def invariant_decomposition_sostar(
    rho: Homomorphism,
    seed: int = DEFAULT_SEED,
    max_draws: int = DEFAULT_MAX_DRAWS,
) -> DecompositionReport:
    """Decomposition of a so*(2n)-valued map into quaternionic and paired blocks.

    Each complex irreducible V is either stable under the quaternionic
    structure J or disjoint from JV; in the second case V + JV is reported
    as one block whose components have reversed signatures.

    Raises:
        ValueError: If rho is not a homomorphism into a simple so*(2n)
    """
    _check(rho, (SOSTAR,))
    if not rho.target.is_simple:
        raise ValueError(f"{rho.label}: expected a simple so* target, got {rho.target}")
    n = rho.target.factors[0].params[0]
    H = form_gram(rho.target)
    rng = random.Random(seed)
    generators = _generators(rho)
    current = identity_matrix(2 * n)
    blocks = []
    dimension = None
    while current.shape[1] > 0:
        pieces, obstruction, found_dimension = _decompose(generators, H, current, rng, max_draws)
        if dimension is None:
            dimension = found_dimension
        if obstruction is not None:
            report = DecompositionReport(
                rho.label, tuple(blocks), ISOTROPIC_OBSTRUCTION, obstruction, dimension
            )
            logger.info(f"Decomposed {rho.label}: {ISOTROPIC_OBSTRUCTION}")
            return report
        V = pieces[0].basis
        JV = apply_quaternionic(V, n)
        span = hstack(V, JV)
        if column_rank(span) == V.shape[1]:
            block = Block(V, pieces[0].signature, quaternionic=True)
        else:
            positive, negative, null = _signature(H, span)
            if null:
                pairing = IsotropicPairing((V, JV), (positive, negative))
                logger.info(f"Decomposed {rho.label}: degenerate pair {pairing.describe()}")
                return DecompositionReport(
                    rho.label, tuple(blocks), ISOTROPIC_OBSTRUCTION, pairing, dimension
                )
            reversed_signature = _signature(H, JV)[:2]
            block = Block(
                span,
                (positive, negative),
                irreducible=False,
                anti_isomorphic_pair=True,
                components=(pieces[0].signature, reversed_signature),
            )
        blocks.append(block)
        remaining = nullspace_rows(dagger(block.basis) * H * current)
        if remaining.shape[0] == 0:
            break
        current = current * remaining.transpose()
    logger.info(f"Decomposed {rho.label}: {COMPLETE} with {len(blocks)} blocks")
    return DecompositionReport(rho.label, tuple(blocks), COMPLETE, None, dimension or 0)


def su_level(rho: Homomorphism) -> Homomorphism:
    """rho followed by the standard inclusion of an sp or so* target into su(n,n)."""
    if not rho.target.is_simple:
        raise ValueError(f"{rho.label}: expected a simple target, got {rho.target}")
    factor = rho.target.factors[0]
    if factor.family == SU:
        return rho
    if factor.family == SP:
        return compose(std_inclusion(SP_TO_SU, factor.params[0]), rho)
    if factor.family == SOSTAR:
        return compose(std_inclusion(SOSTAR_TO_SU, factor.params[0]), rho)
    raise ValueError(f"{rho.label}: no unitary model for the target {rho.target}")


def acting_factors(rho: Homomorphism, block: DomainMatrix) -> List[int]:
    """Indices of the source factors acting nontrivially on an invariant subspace."""
    acting = []
    for index, (k_range, p_range) in enumerate(factor_slices(rho.source)):
        if any(not is_zero(rho.images[i] * block) for i in list(k_range) + list(p_range)):
            acting.append(index)
    return acting


def _norm_root(value):
    value = abs(value)
    if value.is_Rational:
        return gaussian_root_of_norm(value)
    return value ** Rational(1, 2)


def orthonormal_columns(W: DomainMatrix, H: DomainMatrix) -> List[Tuple[DomainMatrix, int]]:
    """H-orthonormal basis of a nondegenerate subspace, with the sign of each vector.

    Raises:
        ValueError: If the restricted form is degenerate
    """
    vectors = [W.extract(list(range(W.shape[0])), [j]) for j in range(W.shape[1])]
    result = []
    while vectors:
        index = next((j for j, v in enumerate(vectors) if _pairing(v, H, v) != 0), None)
        if index is None:
            first = vectors[0]
            for other in vectors[1:]:
                for mixed in (add(first, other), add(first, scale(other, I))):
                    if _pairing(mixed, H, mixed) != 0:
                        vectors[0] = mixed
                        index = 0
                        break
                if index is not None:
                    break
            if index is None:
                raise ValueError("the form is degenerate on the given subspace")
        v = vectors.pop(index)
        norm = _pairing(v, H, v)
        sign = 1 if norm > 0 else -1
        u = scale(v, 1 / _norm_root(norm))
        result.append((u, sign))
        vectors = [subtract(w, scale(u, sign * _pairing(u, H, w))) for w in vectors]
    return result


def split_by_factor(
    rho: Homomorphism,
    allow_non_tight: bool = False,
    seed: int = DEFAULT_SEED,
    max_draws: int = DEFAULT_MAX_DRAWS,
) -> SplitResult:
    """Factor a map from a direct sum through the sum of its restrictions.

    The result satisfies compose(embedding, direct_product(maps)) ==
    su_level(rho), with one map per source factor into su(a_i, b_i).

    Raises:
        ValueError: If the source is simple, or rho is not tight and
            allow_non_tight is False
    """
    if len(rho.source.factors) < 2:
        raise ValueError(f"{rho.label}: split_by_factor needs a direct-sum source")
    if not allow_non_tight and not certify(rho).tight:
        raise ValueError(f"{rho.label} is not tight")
    unitary = su_level(rho)
    report = invariant_decomposition_su(unitary, seed=seed, max_draws=max_draws)
    if not report.complete:
        detail = report.obstruction_detail.describe()
        logger.info(f"{rho.label} does not split: {detail}")
        return SplitResult(False, diagnostic=detail)
    H = form_gram(unitary.target)
    assigned = {index: [] for index in range(len(rho.source.factors))}
    for block in report.blocks:
        acting = acting_factors(unitary, block.basis)
        if len(acting) > 1:
            diagnostic = (
                f"block of signature {block.signature} sees source factors {acting}"
            )
            logger.info(f"{rho.label} does not split: {diagnostic}")
            return SplitResult(False, diagnostic=diagnostic)
        assigned[acting[0] if acting else 0].append(block)

    maps, columns, signs = [], [], []
    for index, factor in enumerate(rho.source.factors):
        frame = []
        for block in assigned[index]:
            frame.extend(orthonormal_columns(block.basis, H))
        positives = [u for u, s in frame if s > 0]
        negatives = [u for u, s in frame if s < 0]
        if not positives or not negatives:
            diagnostic = f"source factor {index} acts on a definite subspace"
            return SplitResult(False, diagnostic=diagnostic)
        if len(positives) > len(negatives):
            ordered = negatives + positives
            local_signs = [-1] * len(negatives) + [1] * len(positives)
        else:
            ordered = positives + negatives
            local_signs = [1] * len(positives) + [-1] * len(negatives)
        B_i = hstack(*ordered)
        G_i = matrix_from_entries({(j, j): s for j, s in enumerate(local_signs)}, len(local_signs))
        left = G_i * dagger(B_i) * H
        k_range, p_range = factor_slices(rho.source)[index]
        images = tuple(left * unitary.images[i] * B_i for i in list(k_range) + list(p_range))
        target = make_algebra(SU, len(positives), len(negatives))
        maps.append(
            Homomorphism(
                rho.source.factor_algebra(index),
                target,
                images,
                f"restrict({rho.label},{index})",
            )
        )
        columns.append(B_i)
        signs.append(G_i)

    frame = hstack(*columns)
    inverse = block_diagonal(signs) * dagger(frame) * H
    embedding_source = direct_product(maps).target

    def embed(M: DomainMatrix) -> DomainMatrix:
        return frame * M * inverse

    embedding = Homomorphism(
        embedding_source,
        unitary.target,
        tuple(embed(M) for M in basis(embedding_source)),
        f"embed({rho.label})",
        action=embed,
    )
    logger.info(f"Split {rho.label} into {len(maps)} factor maps")
    return SplitResult(True, tuple(maps), embedding)
