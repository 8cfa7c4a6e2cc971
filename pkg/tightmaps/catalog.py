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

"""Explicit homomorphisms between Hermitian Lie algebras.

Every constructor returns a :class:`Homomorphism` whose images are exact.
``verify_homomorphism`` is the common check applied to all of them.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Sequence, Tuple

from sympy import I, Rational, S, sqrt
from sympy.polys.matrices import DomainMatrix

from tightmaps.algebra_core import (
    SL2C,
    SO2N,
    SOSTAR,
    SP,
    SU,
    SU11,
    AlgebraDescriptor,
    Homomorphism,
    basis,
    direct_sum_algebra,
    disc_generators,
    make_algebra,
    membership_residual,
    structure_constants,
)
from tightmaps.exact import (
    add,
    block_diagonal,
    commutator,
    conjugate_element,
    dagger,
    extract_block,
    identity_matrix,
    is_zero,
    kron,
    linear_combination,
    matrix_from_entries,
    max_norm,
    place,
    residual_norm,
    scale,
    subtract,
)

# Configure logging
logger = logging.getLogger(__name__)

SP_TO_SU = "SP_TO_SU"
SOSTAR_TO_SU = "SOSTAR_TO_SU"
SU_TO_SP = "SU_TO_SP"
SU_TO_SOSTAR = "SU_TO_SOSTAR"
SO2_TO_SO2 = "SO2_TO_SO2"
INCLUSION_KINDS = (SP_TO_SU, SOSTAR_TO_SU, SU_TO_SP, SU_TO_SOSTAR, SO2_TO_SO2)


def _from_action(source, target, action, label) -> Homomorphism:
    images = tuple(action(b) for b in basis(source))
    return Homomorphism(source, target, images, label, action=action)


def _su_into_pair_model(m: int, n: int, skew: bool):
    """Entry map of su(m,n) into sp(2(m+n),R) or so*(2(m+n))."""
    r1, r2, r3 = m, m + n, 2 * m + n
    size = 2 * (m + n)

    def action(X: DomainMatrix) -> DomainMatrix:
        K = X.domain
        dok = {}
        for (i, j), v in X.to_dok().items():
            if i < m and j < m:
                dok[(i, j)] = v
                dok[(r2 + i, r2 + j)] = conjugate_element(K, v)
            elif i >= m and j >= m:
                dok[(r1 + i - m, r1 + j - m)] = conjugate_element(K, v)
                dok[(r3 + i - m, r3 + j - m)] = v
            elif i < m:
                column = j - m
                dok[(i, r3 + column)] = v
                conjugate = conjugate_element(K, v)
                dok[(r1 + column, r2 + i)] = -v if skew else v
                dok[(r2 + i, r1 + column)] = -conjugate if skew else conjugate
            else:
                dok[(r3 + i - m, j)] = v
        return DomainMatrix.from_dok(dok, (size, size), K)

    return action


def std_inclusion(kind: str, *params: int) -> Homomorphism:
    """Standard inclusions between the classical families.

    Args:
        kind: SP_TO_SU(n), SOSTAR_TO_SU(n), SU_TO_SP(m, n), SU_TO_SOSTAR(m, n)
            or SO2_TO_SO2(m, n)
        *params: Family parameters of the source (and target rank for SO2_TO_SO2)

    Returns:
        The inclusion homomorphism

    Raises:
        ValueError: If the kind is unknown or the parameters are invalid
    """
    label = f"std({kind},{','.join(str(p) for p in params)})"
    if kind in (SP_TO_SU, SOSTAR_TO_SU):
        if len(params) != 1:
            raise ValueError(f"{kind} takes one parameter n")
        (n,) = params
        source = make_algebra(SP if kind == SP_TO_SU else SOSTAR, n)
        target = make_algebra(SU, n, n)
        return _from_action(source, target, lambda X: X, label)
    if kind in (SU_TO_SP, SU_TO_SOSTAR):
        if len(params) != 2:
            raise ValueError(f"{kind} takes two parameters m, n")
        source = make_algebra(SU, *params)
        m, n = source.factors[0].params
        family = SP if kind == SU_TO_SP else SOSTAR
        target = make_algebra(family, m + n)
        action = _su_into_pair_model(m, n, skew=kind == SU_TO_SOSTAR)
        return _from_action(source, target, action, label)
    if kind == SO2_TO_SO2:
        if len(params) != 2:
            raise ValueError(f"{kind} takes two parameters m, n")
        m, n = params
        if not 1 <= m <= n:
            raise ValueError(f"so(2,{m}) does not fit into so(2,{n})")
        source, target = make_algebra(SO2N, m), make_algebra(SO2N, n)
        indices = list(range(m + 2))
        return _from_action(
            source, target, lambda X: place(X, indices, n + 2), label
        )
    raise ValueError(f"unknown inclusion kind {kind!r}, expected one of {INCLUSION_KINDS}")


def rho_odd(n: int) -> Homomorphism:
    """The irreducible representation of su(1,1) of dimension 2n inside sp(2n,R).

    Weight vectors u_k are orthonormal up to sign for the induced Hermitian form;
    they are ordered as e_i = u_{2i}, f_i = u_{2n-1-2i} so that both the
    Hermitian and the symplectic form take their standard shape.

    Raises:
        ValueError: If n < 1
    """
    if n < 1:
        raise ValueError(f"rho_odd requires n >= 1, got n={n}")
    top = 2 * n - 1
    position = {}
    for k in range(top + 1):
        position[k] = k // 2 if k % 2 == 0 else n + (top - k) // 2
    target = make_algebra(SP, n)

    def action(X: DomainMatrix) -> DomainMatrix:
        values = {key: X.domain.to_sympy(v) for key, v in X.to_dok().items()}
        m00, m01 = values.get((0, 0), S.Zero), values.get((0, 1), S.Zero)
        m10, m11 = values.get((1, 0), S.Zero), values.get((1, 1), S.Zero)
        entries = {}
        for k in range(top + 1):
            diagonal = (top - k) * m00 + k * m11
            if diagonal != 0:
                entries[(position[k], position[k])] = diagonal
            if k < top and m10 != 0:
                entries[(position[k + 1], position[k])] = m10 * sqrt((k + 1) * (top - k))
            if k > 0 and m01 != 0:
                entries[(position[k - 1], position[k])] = m01 * sqrt(k * (top - k + 1))
        return matrix_from_entries(entries, 2 * n)

    return _from_action(SU11, target, action, f"rho({n})")


_PAULI = {
    "I": {(0, 0): 1, (1, 1): 1},
    "X": {(0, 1): 1, (1, 0): 1},
    "Y": {(0, 1): -I, (1, 0): I},
    "Z": {(0, 0): 1, (1, 1): -1},
}


def _pauli_string(letters: str) -> DomainMatrix:
    result = matrix_from_entries({(0, 0): 1}, 1)
    for letter in letters:
        result = kron(result, matrix_from_entries(_PAULI[letter], 2))
    return result


@dataclass(frozen=True)
class CliffordAlgebraData:
    """Generators of the complex Clifford algebra of the signature (2,p) form.

    ``gamma[0]`` and ``gamma[1]`` square to -1, the others to +1.
    """

    p: int
    gamma: Tuple[DomainMatrix, ...]
    even_part_dim: int
    hermitian_gram: DomainMatrix

    @property
    def spinor_dim(self) -> int:
        return self.gamma[0].shape[0]

    def relation_residual(self):
        """Largest residual of gamma_a gamma_b + gamma_b gamma_a = 2 S_ab."""
        size = self.spinor_dim
        values = []
        for a, g_a in enumerate(self.gamma):
            for b, g_b in enumerate(self.gamma):
                expected = 0
                if a == b:
                    expected = -2 if a < 2 else 2
                anti = add(g_a * g_b, g_b * g_a)
                values.append(
                    residual_norm(subtract(anti, scale(identity_matrix(size), expected)))
                )
        return max_norm(values)


@lru_cache(maxsize=None)
def clifford_algebra(p: int) -> CliffordAlgebraData:
    """Iterated Kronecker construction of the Clifford generators.

    The Euclidean generators on k = p // 2 qubits are Z..Z X I..I and
    Z..Z Y I..I (plus Z..Z for odd p); the two timelike generators act on an
    extra leading qubit as i*sigma_y and i*sigma_x.
    """
    if p < 1:
        raise ValueError(f"Clifford data needs p >= 1, got p={p}")
    k = p // 2
    euclidean = []
    for l in range(k):
        tail = "I" * (k - l - 1)
        euclidean.append(_pauli_string("Z" * l + "X" + tail))
        euclidean.append(_pauli_string("Z" * l + "Y" + tail))
    if p % 2:
        euclidean.append(_pauli_string("Z" * k))
    identity_k = _pauli_string("I" * k)
    gamma = [
        scale(kron(_pauli_string("Y"), identity_k), I),
        scale(kron(_pauli_string("X"), identity_k), I),
    ]
    gamma.extend(kron(_pauli_string("Z"), g) for g in euclidean)
    gram = kron(_pauli_string("Z"), identity_k)
    return CliffordAlgebraData(p, tuple(gamma), 2 ** (p + 1), gram)


def spin_target(p: int) -> AlgebraDescriptor:
    """Target algebra of the spin representation of so(2,p), by p mod 8."""
    if p < 3:
        raise ValueError(f"spin representations are built for p >= 3, got p={p}")
    residue = p % 8
    if residue in (1, 3):
        return make_algebra(SP, 2 ** ((p - 1) // 2))
    if residue == 2:
        return make_algebra(SP, 2 ** (p // 2 - 1))
    if residue in (5, 7):
        return make_algebra(SOSTAR, 2 ** ((p - 1) // 2))
    if residue == 6:
        return make_algebra(SOSTAR, 2 ** (p // 2 - 1))
    half = 2 ** (p // 2 - 1)
    return make_algebra(SU, half, half)


def spin_capacity(p: int) -> int:
    """Rank of the spin target of so(2,p)."""
    return spin_target(p).rank


def _spin_pairs(p: int) -> List[Tuple[int, int]]:
    """Index pairs (a, b) with basis vector i of so(2,p) equal to M_ab."""
    size = p + 2
    pairs = [(0, 1)]
    pairs += [(b, c) for b in range(2, size) for c in range(b + 1, size)]
    pairs += [(a, b) for a in (0, 1) for b in range(2, size)]
    return pairs


def spin(p: int, chirality: int = 1) -> Homomorphism:
    """Spin representation of so(2,p) in the target family detected from its spinors.

    The basis vector M_ab of so(2,p) goes to gamma_a gamma_b / 2. For even p
    the representation is cut down to the half-spin space of even (chirality
    +1) or odd (chirality -1) parity. An invariant bilinear form, when one
    exists, is normalized to the pairing of the sp or so* model.

    Raises:
        ValueError: If p < 3 or the chirality is not +1 or -1
    """
    if p < 3:
        raise ValueError(f"spin requires p >= 3, got p={p}")
    if chirality not in (1, -1):
        raise ValueError(f"chirality must be +1 or -1, got {chirality}")
    data = clifford_algebra(p)
    full = data.spinor_dim
    if p % 2 == 0:
        parity = 0 if chirality == 1 else 1
        indices = [i for i in range(full) if bin(i).count("1") % 2 == parity]
    else:
        indices = list(range(full))
    d = len(indices)
    half = d // 2
    gamma = data.gamma
    images = [
        extract_block(scale(gamma[a] * gamma[b], Rational(1, 2)), indices)
        for a, b in _spin_pairs(p)
    ]

    antisymmetric = [g for g in gamma if not is_zero(subtract(g.transpose(), g))]
    charge = identity_matrix(full)
    for g in antisymmetric:
        charge = charge * g
    form = extract_block(charge, indices)
    if is_zero(form):
        target = make_algebra(SU, half, half)
    else:
        corner = form.extract(list(range(half)), list(range(half, d)))
        inverse = corner.inv()
        change = block_diagonal([identity_matrix(half), inverse])
        change_inverse = block_diagonal([identity_matrix(half), corner])
        images = [change_inverse * M * change for M in images]
        symmetric = is_zero(subtract(form.transpose(), form))
        target = make_algebra(SOSTAR if symmetric else SP, half)
    label = f"spin({p})" if chirality == 1 else f"spin({p},-1)"
    logger.debug(f"Spin representation of so(2,{p}) lands in {target}")
    return Homomorphism(make_algebra(SO2N, p), target, tuple(images), label)


def _twisted(disc_images: Sequence[DomainMatrix], sign: int) -> List[DomainMatrix]:
    K, P1, P2 = disc_images
    if sign == 1:
        return [K, P1, P2]
    return [scale(K, -1), scale(P1, -1), P2]


def disc(algebra: AlgebraDescriptor, signs: Sequence[int]) -> Homomorphism:
    """Diagonal disc su(1,1) -> algebra, twisted antiholomorphically where sign = -1.

    Raises:
        ValueError: If the sign list does not match the factors
    """
    signs = list(signs)
    if len(signs) != len(algebra.factors):
        raise ValueError(
            f"disc needs {len(algebra.factors)} signs for {algebra}, got {len(signs)}"
        )
    images = [None, None, None]
    for index, sign in enumerate(signs):
        if sign not in (1, -1):
            raise ValueError(f"disc signs must be +1 or -1, got {sign}")
        if not algebra.factors[index].is_hermitian:
            raise ValueError(f"{algebra.factors[index]} has no discs")
        for generators in disc_generators(algebra, index):
            for slot, M in enumerate(_twisted(generators, sign)):
                images[slot] = M if images[slot] is None else add(images[slot], M)
    signs_text = ",".join("+" if s == 1 else "-" for s in signs)
    return Homomorphism(SU11, algebra, tuple(images), f"disc({algebra},{signs_text})")


def _merged_positions(factor, offset_pos: int, offset_neg: int, half_total: int):
    """Target indices of a factor's positive and negative halves in a merged model."""
    if factor.family == SU:
        p, q = factor.params
    else:
        p = q = factor.params[0]
    return [offset_pos + i for i in range(p)] + [half_total + offset_neg + i for i in range(q)]


def _merge_layout(first: AlgebraDescriptor, second: AlgebraDescriptor):
    """Merged simple target and index maps of two simple targets of one family."""
    if not (first.is_simple and second.is_simple):
        raise ValueError("direct sums need simple targets")
    f1, f2 = first.factors[0], second.factors[0]
    if f1.family != f2.family or f1.family not in (SU, SP, SOSTAR):
        raise ValueError(f"incompatible target families {f1} and {f2}")
    if f1.family == SU:
        p1, q1 = f1.params
        p2, q2 = f2.params
        target = make_algebra(SU, p1 + p2, q1 + q2)
        positives = p1 + p2
        map1 = _merged_positions(f1, 0, 0, positives)
        map2 = _merged_positions(f2, p1, q1, positives)
    else:
        n1, n2 = f1.params[0], f2.params[0]
        target = make_algebra(f1.family, n1 + n2)
        map1 = _merged_positions(f1, 0, 0, n1 + n2)
        map2 = _merged_positions(f2, n1, n1, n1 + n2)
    return target, map1, map2


def direct_sum(
    first: Homomorphism, second: Homomorphism, same_source: bool = False
) -> Homomorphism:
    """Block sum of two maps into one simple target of the common family.

    With ``same_source`` the two maps act on one algebra (a diagonal map);
    otherwise the source is the direct sum of both sources.

    Raises:
        ValueError: If targets are incompatible or sources differ when shared
    """
    target, map1, map2 = _merge_layout(first.target, second.target)
    size = target.size
    label = f"dsum({first.label},{second.label}{',same_source=true' if same_source else ''})"
    if same_source:
        if first.source != second.source:
            raise ValueError(
                f"same_source needs equal sources, got {first.source} and {second.source}"
            )

        def shared(X: DomainMatrix) -> DomainMatrix:
            return add(place(first.apply(X), map1, size), place(second.apply(X), map2, size))

        images = tuple(
            add(place(a, map1, size), place(b, map2, size))
            for a, b in zip(first.images, second.images)
        )
        return Homomorphism(first.source, target, images, label, action=shared)
    source = direct_sum_algebra(first.source, second.source)
    split = first.source.size
    first_block = list(range(split))
    second_block = list(range(split, source.size))

    def separate(X: DomainMatrix) -> DomainMatrix:
        return add(
            place(first.apply(extract_block(X, first_block)), map1, size),
            place(second.apply(extract_block(X, second_block)), map2, size),
        )

    images = tuple(place(a, map1, size) for a in first.images) + tuple(
        place(b, map2, size) for b in second.images
    )
    return Homomorphism(source, target, images, label, action=separate)


def direct_product(
    maps: Sequence[Homomorphism], target: AlgebraDescriptor = None
) -> Homomorphism:
    """Block-diagonal sum of maps keeping every target as its own factor.

    The source and the target are the direct sums of the sources and targets.
    """
    if not maps:
        raise ValueError("direct_product needs at least one map")
    source = direct_sum_algebra(*(m.source for m in maps))
    target = target or direct_sum_algebra(*(m.target for m in maps))
    source_blocks, target_blocks = [], []
    s_pos = t_pos = 0
    for m in maps:
        source_blocks.append(list(range(s_pos, s_pos + m.source.size)))
        target_blocks.append(list(range(t_pos, t_pos + m.target.size)))
        s_pos += m.source.size
        t_pos += m.target.size

    def action(X: DomainMatrix) -> DomainMatrix:
        result = None
        for m, s_block, t_block in zip(maps, source_blocks, target_blocks):
            piece = place(m.apply(extract_block(X, s_block)), t_block, target.size)
            result = piece if result is None else add(result, piece)
        return result

    images = []
    for m, t_block in zip(maps, target_blocks):
        images.extend(place(M, t_block, target.size) for M in m.images)
    label = f"prod({','.join(m.label for m in maps)})"
    return Homomorphism(source, target, tuple(images), label, action=action)


def compose(outer: Homomorphism, inner: Homomorphism) -> Homomorphism:
    """outer o inner.

    Raises:
        ValueError: If inner.target differs from outer.source
    """
    if inner.target != outer.source:
        raise ValueError(
            f"cannot compose {outer.label} after {inner.label}: "
            f"{inner.target} is not {outer.source}"
        )
    images = tuple(outer.apply(M) for M in inner.images)
    return Homomorphism(
        inner.source,
        outer.target,
        images,
        f"comp({outer.label},{inner.label})",
        action=lambda X: outer.apply(inner.apply(X)),
    )


def pad_target(rho: Homomorphism, target: AlgebraDescriptor) -> Homomorphism:
    """Corner inclusion of a simple target into a larger algebra of the same family.

    Positive coordinates go to the start of the positive half and negative
    ones to the start of the negative half; so(2,n) targets use the leading
    block.
    """
    if rho.target == target:
        return rho
    if not (rho.target.is_simple and target.is_simple):
        raise ValueError("pad_target needs simple targets")
    small, large = rho.target.factors[0], target.factors[0]
    if small.family != large.family:
        raise ValueError(f"cannot pad {small} into {large}")
    if large.family == SU:
        positives = large.params[0]
        index_map = _merged_positions(small, 0, 0, positives)
        if small.params[0] > large.params[0] or small.params[1] > large.params[1]:
            raise ValueError(f"{small} does not fit into {large}")
    elif large.family in (SP, SOSTAR):
        if small.params[0] > large.params[0]:
            raise ValueError(f"{small} does not fit into {large}")
        index_map = _merged_positions(small, 0, 0, large.params[0])
    else:
        return compose(std_inclusion(SO2_TO_SO2, small.params[0], large.params[0]), rho)
    size = target.size
    images = tuple(place(M, index_map, size) for M in rho.images)
    return Homomorphism(
        rho.source,
        target,
        images,
        f"pad({rho.label},{target})",
        action=lambda X: place(rho.apply(X), index_map, size),
    )


def tensor_product(first: Homomorphism, second: Homomorphism) -> Homomorphism:
    """Tensor product of two unitary representations, g1 + g2 -> su(P,Q).

    Raises:
        ValueError: If a target is not a simple SU algebra
    """
    for rho in (first, second):
        if not rho.target.is_simple or rho.target.factors[0].family != SU:
            raise ValueError(f"tensor products need su targets, got {rho.target}")
    p1, q1 = first.target.factors[0].params
    p2, q2 = second.target.factors[0].params
    d1, d2 = p1 + q1, p2 + q2
    signs = [
        (1 if a < p1 else -1) * (1 if b < p2 else -1) for a in range(d1) for b in range(d2)
    ]
    positives = [i for i, s in enumerate(signs) if s == 1]
    negatives = [i for i, s in enumerate(signs) if s == -1]
    if len(positives) > len(negatives):
        positives, negatives = negatives, positives
    order = positives + negatives
    index_map = [0] * len(order)
    for new, old in enumerate(order):
        index_map[old] = new
    target = make_algebra(SU, len(positives), len(negatives))
    size = target.size
    source = direct_sum_algebra(first.source, second.source)
    left = identity_matrix(d1)
    right = identity_matrix(d2)
    split = first.source.size

    def action(X: DomainMatrix) -> DomainMatrix:
        X1 = extract_block(X, range(split))
        X2 = extract_block(X, range(split, source.size))
        raw = add(kron(first.apply(X1), right), kron(left, second.apply(X2)))
        return place(raw, index_map, size)

    images = tuple(place(kron(M, right), index_map, size) for M in first.images) + tuple(
        place(kron(left, M), index_map, size) for M in second.images
    )
    return Homomorphism(
        source, target, images, f"tensor({first.label},{second.label})", action=action
    )


def gl2_example() -> Homomorphism:
    """sl(2,C) -> su(2,2), X -> [[X^a, X^h], [X^h, X^a]].

    X^a and X^h are the anti-Hermitian and Hermitian parts of X. The image
    splits into two isotropic invariant planes.
    """
    source = make_algebra(SL2C)
    target = make_algebra(SU, 2, 2)

    def action(R: DomainMatrix) -> DomainMatrix:
        A = R.extract([0, 1], [0, 1])
        B = R.extract([2, 3], [0, 1])
        X = add(A, scale(B, I))
        X_star = dagger(X)
        anti = scale(subtract(X, X_star), Rational(1, 2))
        herm = scale(add(X, X_star), Rational(1, 2))
        return _blocks(anti, herm)

    return _from_action(source, target, action, "gl2_example")


def _blocks(anti: DomainMatrix, herm: DomainMatrix) -> DomainMatrix:
    dok = {}
    for (i, j), v in anti.to_dok().items():
        dok[(i, j)] = v
        dok[(i + 2, j + 2)] = v
    for (i, j), v in herm.to_dok().items():
        dok[(i, j + 2)] = v
        dok[(i + 2, j)] = v
    return DomainMatrix.from_dok(dok, (4, 4), anti.domain)


def verify_homomorphism(rho: Homomorphism):
    """Largest residual of the bracket relations and of target membership.

    Zero certifies that the images define a Lie algebra homomorphism.
    """
    values = [membership_residual(rho.target, M) for M in rho.images]
    images = rho.images
    for k, l, coords in structure_constants(rho.source):
        expected = linear_combination(images, coords)
        values.append(residual_norm(subtract(expected, commutator(images[k], images[l]))))
    residual = max_norm(values)
    logger.debug(f"Verified {rho.label}: residual {residual}")
    return residual
