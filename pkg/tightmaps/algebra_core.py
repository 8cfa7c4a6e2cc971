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

"""Matrix models of the classical Hermitian Lie algebras.

The four Hermitian families are realized as follows (n = matrix size):

- ``SU``: su(p,q), anti-Hermitian for diag(I_p, -I_q), traceless.
- ``SP``: sp(2n,R) in its complex model [[A, Z], [conj Z, conj A]], Z symmetric.
- ``SOSTAR``: so*(2n) as [[A, Z], [-conj Z, conj A]], Z skew-symmetric.
- ``SO2N``: so(2,n) as real matrices preserving diag(-1, -1, 1, ..., 1).

``SL2C`` is sl(2,C) seen as a real algebra, realified to 4x4 real matrices.
It is not Hermitian and only appears as a source.
"""

import logging
import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, List, Optional, Sequence, Tuple, Union

from sympy import I, Rational, S, im, re
from sympy.polys.matrices import DomainMatrix

from tightmaps.exact import (
    CoordinateSystem,
    add,
    block_diagonal,
    commutator,
    conj,
    dagger,
    extract_block,
    is_zero,
    linear_combination,
    matrix_from_entries,
    max_norm,
    place,
    residual_norm,
    scale,
    subtract,
    trace,
    zero_matrix,
)

# Configure logging
logger = logging.getLogger(__name__)

SU = "SU"
SP = "SP"
SOSTAR = "SOSTAR"
SO2N = "SO2N"
SL2C = "SL2C"
HERMITIAN_FAMILIES = (SU, SP, SOSTAR, SO2N)
FAMILIES = HERMITIAN_FAMILIES + (SL2C,)

HERMITIAN = "HERMITIAN"
SYMPLECTIC_PAIR = "SYMPLECTIC-PAIR"
SKEW_PAIR = "SKEW-PAIR"
ORTHOGONAL = "ORTHOGONAL"
COMPLEX_STRUCTURE = "COMPLEX-STRUCTURE"


def _matrix(entries, size: int) -> DomainMatrix:
    return matrix_from_entries(entries, size)


@dataclass(frozen=True)
class FormSpec:
    """Defining form of a matrix model.

    ``gram`` is the Hermitian (or, for so(2,n), real symmetric) form the
    algebra is anti-invariant for. ``pairing`` is the extra bilinear form of
    the SP and SOSTAR models, or the complex structure of the SL2C model.
    """

    kind: str
    gram: DomainMatrix = field(compare=False)
    pairing: Optional[DomainMatrix] = field(default=None, compare=False)


@dataclass(frozen=True)
class SimpleFactor:
    family: str
    params: Tuple[int, ...]

    @property
    def size(self) -> int:
        if self.family == SU:
            return self.params[0] + self.params[1]
        if self.family in (SP, SOSTAR):
            return 2 * self.params[0]
        if self.family == SO2N:
            return self.params[0] + 2
        return 4

    @property
    def rank(self) -> int:
        if self.family == SU:
            return min(self.params)
        if self.family == SP:
            return self.params[0]
        if self.family == SOSTAR:
            return self.params[0] // 2
        if self.family == SO2N:
            return 2 if self.params[0] >= 2 else 1
        return 0

    @property
    def is_hermitian(self) -> bool:
        return self.family in HERMITIAN_FAMILIES

    @property
    def form(self) -> FormSpec:
        return standard_form(self)

    def __str__(self) -> str:
        if self.family == SU:
            return f"su({self.params[0]},{self.params[1]})"
        if self.family == SP:
            return f"sp({2 * self.params[0]},R)"
        if self.family == SOSTAR:
            return f"so*({2 * self.params[0]})"
        if self.family == SO2N:
            return f"so(2,{self.params[0]})"
        return "sl(2,C)"


@dataclass(frozen=True)
class AlgebraDescriptor:
    """A Hermitian Lie algebra, possibly a direct sum, laid out block-diagonally."""

    factors: Tuple[SimpleFactor, ...]

    @property
    def size(self) -> int:
        return sum(f.size for f in self.factors)

    @property
    def rank(self) -> int:
        return sum(f.rank for f in self.factors)

    @property
    def is_simple(self) -> bool:
        return len(self.factors) == 1

    @property
    def offsets(self) -> Tuple[int, ...]:
        offsets = []
        position = 0
        for factor in self.factors:
            offsets.append(position)
            position += factor.size
        return tuple(offsets)

    def block(self, index: int) -> List[int]:
        start = self.offsets[index]
        return list(range(start, start + self.factors[index].size))

    def factor_algebra(self, index: int) -> "AlgebraDescriptor":
        return AlgebraDescriptor((self.factors[index],))

    def __str__(self) -> str:
        return " + ".join(str(f) for f in self.factors)


@dataclass(frozen=True)
class Element:
    """A matrix tagged with the algebra it belongs to."""

    algebra: AlgebraDescriptor
    matrix: DomainMatrix


@dataclass(frozen=True)
class CartanData:
    algebra: AlgebraDescriptor
    k_basis: Tuple[Element, ...]
    p_basis: Tuple[Element, ...]
    z0: Element


def _normalize_params(family: str, params: Sequence[int]) -> Tuple[int, ...]:
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}, expected one of {FAMILIES}")
    params = tuple(int(p) for p in params)
    if family == SU:
        if len(params) != 2:
            raise ValueError("SU takes two parameters p, q")
        p, q = params
        if min(p, q) < 1:
            raise ValueError(f"SU({p},{q}) requires p >= 1 and q >= 1")
        if p > q:
            logger.debug(f"Storing su({p},{q}) as su({q},{p})")
            params = (q, p)
        return params
    if family == SL2C:
        if params:
            raise ValueError("SL2C takes no parameters")
        return ()
    if len(params) != 1:
        raise ValueError(f"{family} takes one parameter n")
    (n,) = params
    if family == SOSTAR and n < 2:
        raise ValueError(f"SOSTAR requires n >= 2, got n={n}")
    if n < 1:
        raise ValueError(f"{family} requires n >= 1, got n={n}")
    return params


def make_factor(family: str, *params: int) -> SimpleFactor:
    return SimpleFactor(family, _normalize_params(family, params))


def make_algebra(family: str, *params: int) -> AlgebraDescriptor:
    """Descriptor of a simple algebra in its standard matrix model.

    Args:
        family: One of SU, SP, SOSTAR, SO2N, SL2C
        *params: (p, q) for SU, n for SP/SOSTAR/SO2N, nothing for SL2C

    Returns:
        AlgebraDescriptor with a single factor

    Raises:
        ValueError: If the parameters violate the family constraints
    """
    return AlgebraDescriptor((make_factor(family, *params),))


def direct_sum_algebra(*algebras: AlgebraDescriptor) -> AlgebraDescriptor:
    factors = []
    for algebra in algebras:
        factors.extend(algebra.factors)
    if not factors:
        raise ValueError("a direct sum needs at least one summand")
    return AlgebraDescriptor(tuple(factors))


def power_algebra(algebra: AlgebraDescriptor, count: int) -> AlgebraDescriptor:
    return direct_sum_algebra(*([algebra] * count))


SU11 = make_algebra(SU, 1, 1)


def canonical_factors(factor: SimpleFactor) -> Tuple[SimpleFactor, ...]:
    """Preferred representative of the low-dimensional coincidences of a factor."""
    family, params = factor.family, factor.params
    if (family, params) in ((SP, (1,)), (SO2N, (1,))):
        return (make_factor(SU, 1, 1),)
    if (family, params) == (SO2N, (2,)):
        return (make_factor(SU, 1, 1), make_factor(SU, 1, 1))
    if (family, params) == (SOSTAR, (3,)):
        return (make_factor(SU, 1, 3),)
    if (family, params) == (SO2N, (3,)):
        return (make_factor(SP, 2),)
    if (family, params) == (SO2N, (4,)):
        return (make_factor(SU, 2, 2),)
    if (family, params) == (SO2N, (6,)):
        return (make_factor(SOSTAR, 4),)
    return (factor,)


def is_su11(factor: SimpleFactor) -> bool:
    return canonical_factors(factor) == (make_factor(SU, 1, 1),)


def _signature_matrix(positive: int, negative: int) -> DomainMatrix:
    entries = {(i, i): 1 for i in range(positive)}
    entries.update({(positive + i, positive + i): -1 for i in range(negative)})
    return _matrix(entries, positive + negative)


def _pair_matrix(n: int, lower: int) -> DomainMatrix:
    entries = {}
    for i in range(n):
        entries[(i, n + i)] = 1
        entries[(n + i, i)] = lower
    return _matrix(entries, 2 * n)


def standard_form(factor: SimpleFactor) -> FormSpec:
    if factor.family == SU:
        return FormSpec(HERMITIAN, _signature_matrix(*factor.params))
    if factor.family == SP:
        n = factor.params[0]
        return FormSpec(SYMPLECTIC_PAIR, _signature_matrix(n, n), _pair_matrix(n, -1))
    if factor.family == SOSTAR:
        n = factor.params[0]
        return FormSpec(SKEW_PAIR, _signature_matrix(n, n), _pair_matrix(n, 1))
    if factor.family == SO2N:
        n = factor.params[0]
        gram = _matrix({(i, i): (-1 if i < 2 else 1) for i in range(n + 2)}, n + 2)
        return FormSpec(ORTHOGONAL, gram)
    identity = _matrix({(i, i): 1 for i in range(4)}, 4)
    return FormSpec(COMPLEX_STRUCTURE, identity, _sl2c_structure())


def _sl2c_structure() -> DomainMatrix:
    return _matrix({(0, 2): -1, (1, 3): -1, (2, 0): 1, (3, 1): 1}, 4)


def form_gram(algebra: AlgebraDescriptor) -> DomainMatrix:
    """Block-diagonal gram matrix of the defining forms of all factors."""
    return block_diagonal([f.form.gram for f in algebra.factors])


def _imaginary_part_residual(M: DomainMatrix) -> DomainMatrix:
    return scale(subtract(M, conj(M)), Rational(1, 2))


def _scalar_residual(value) -> object:
    return max_norm([abs(re(value)), abs(im(value))])


def _factor_residuals(factor: SimpleFactor, M: DomainMatrix) -> List[object]:
    form = factor.form
    if factor.family == SO2N:
        G = form.gram
        return [
            residual_norm(add(M.transpose() * G, G * M)),
            residual_norm(_imaginary_part_residual(M)),
        ]
    if factor.family == SL2C:
        structure = form.pairing
        values = [
            residual_norm(_imaginary_part_residual(M)),
            residual_norm(commutator(M, structure)),
        ]
        dok = M.to_dok()
        zero = M.domain.zero
        trace_a = M.domain.to_sympy(dok.get((0, 0), zero) + dok.get((1, 1), zero))
        trace_b = M.domain.to_sympy(dok.get((2, 0), zero) + dok.get((3, 1), zero))
        values.append(_scalar_residual(trace_a))
        values.append(_scalar_residual(trace_b))
        return values
    H = form.gram
    values = [
        residual_norm(add(dagger(M) * H, H * M)),
        _scalar_residual(trace(M)),
    ]
    if form.pairing is not None:
        P = form.pairing
        values.append(residual_norm(add(M.transpose() * P, P * M)))
    return values


def membership_residual(algebra: AlgebraDescriptor, M: DomainMatrix):
    """Exact residual of the defining equations of ``algebra`` at ``M``.

    Args:
        algebra: Ambient algebra
        M: Square matrix of size ``algebra.size``

    Returns:
        Nonnegative SymPy number, zero iff ``M`` lies in the algebra

    Raises:
        ValueError: If the matrix has the wrong dimension
    """
    if isinstance(M, Element):
        M = M.matrix
    if M.shape != (algebra.size, algebra.size):
        raise ValueError(
            f"matrix of shape {M.shape} does not fit {algebra} of size {algebra.size}"
        )
    values = []
    inside = set()
    for index, factor in enumerate(algebra.factors):
        block = algebra.block(index)
        inside.update((i, j) for i in block for j in block)
        values.extend(_factor_residuals(factor, extract_block(M, block)))
    outside = {k: v for k, v in M.to_dok().items() if k not in inside}
    if outside:
        values.append(
            residual_norm(DomainMatrix.from_dok(outside, M.shape, M.domain))
        )
    return max_norm(values)


def make_element(algebra: AlgebraDescriptor, matrix: DomainMatrix) -> Element:
    """Tag ``matrix`` with ``algebra`` after checking membership exactly."""
    residual = membership_residual(algebra, matrix)
    if residual != 0:
        raise ValueError(f"matrix is not in {algebra} (residual {residual})")
    return Element(algebra, matrix)


def bracket(X: Element, Y: Element) -> Element:
    """Commutator XY - YX of two elements of the same algebra.

    Raises:
        ValueError: If the elements live in different algebras
    """
    if X.algebra != Y.algebra:
        raise ValueError(f"cannot bracket elements of {X.algebra} and {Y.algebra}")
    return Element(X.algebra, commutator(X.matrix, Y.matrix))


def _unitary_basis(n: int) -> List[DomainMatrix]:
    basis = [_matrix({(j, j): I}, n) for j in range(n)]
    for j in range(n):
        for k in range(j + 1, n):
            basis.append(_matrix({(j, k): 1, (k, j): -1}, n))
            basis.append(_matrix({(j, k): I, (k, j): I}, n))
    return basis


def _special_unitary_block(size: int, start: int, stop: int) -> List[DomainMatrix]:
    basis = []
    for j in range(start, stop):
        for k in range(j + 1, stop):
            basis.append(_matrix({(j, k): 1, (k, j): -1}, size))
            basis.append(_matrix({(j, k): I, (k, j): I}, size))
    return basis


def _doubled(A: DomainMatrix, n: int) -> DomainMatrix:
    """diag(A, conj A) for an n x n block A."""
    return add(place(A, list(range(n)), 2 * n), place(conj(A), list(range(n, 2 * n)), 2 * n))


def _coupled(Z: DomainMatrix, n: int, lower_sign: int) -> DomainMatrix:
    """[[0, Z], [lower_sign * conj Z, 0]] for an n x n block Z."""
    size = 2 * n
    upper = {(i, n + j): v for (i, j), v in Z.to_dok().items()}
    lower = {(n + i, j): v for (i, j), v in scale(conj(Z), lower_sign).to_dok().items()}
    upper.update(lower)
    return DomainMatrix.from_dok(upper, (size, size), Z.domain)


def _realify(entries) -> DomainMatrix:
    """Real 4x4 form [[A, -B], [B, A]] of a complex 2x2 matrix A + iB."""
    real = {}
    for (i, j), value in entries.items():
        value = S(value)
        a, b = re(value), im(value)
        for key, part in (
            ((i, j), a),
            ((i + 2, j + 2), a),
            ((i, j + 2), -b),
            ((i + 2, j), b),
        ):
            if part != 0:
                real[key] = part
    return _matrix(real, 4)


def _factor_cartan(factor: SimpleFactor) -> Tuple[List[DomainMatrix], List[DomainMatrix], DomainMatrix]:
    n = factor.size
    if factor.family == SU:
        p, q = factor.params
        k_basis = [_matrix({(j, j): I, (j + 1, j + 1): -I}, n) for j in range(n - 1)]
        k_basis += _special_unitary_block(n, 0, p)
        k_basis += _special_unitary_block(n, p, n)
        p_basis = []
        for j in range(p):
            for l in range(q):
                p_basis.append(_matrix({(j, p + l): 1, (p + l, j): 1}, n))
                p_basis.append(_matrix({(j, p + l): I, (p + l, j): -I}, n))
        entries = {(j, j): I * Rational(q, n) for j in range(p)}
        entries.update({(p + j, p + j): -I * Rational(p, n) for j in range(q)})
        return k_basis, p_basis, _matrix(entries, n)
    if factor.family in (SP, SOSTAR):
        m = factor.params[0]
        k_basis = [_doubled(A, m) for A in _unitary_basis(m)]
        blocks = []
        if factor.family == SP:
            for j in range(m):
                blocks.append(_matrix({(j, j): 1}, m))
                blocks.append(_matrix({(j, j): I}, m))
            for j in range(m):
                for k in range(j + 1, m):
                    blocks.append(_matrix({(j, k): 1, (k, j): 1}, m))
                    blocks.append(_matrix({(j, k): I, (k, j): I}, m))
            lower_sign = 1
        else:
            for j in range(m):
                for k in range(j + 1, m):
                    blocks.append(_matrix({(j, k): 1, (k, j): -1}, m))
                    blocks.append(_matrix({(j, k): I, (k, j): -I}, m))
            lower_sign = -1
        p_basis = [_coupled(Z, m, lower_sign) for Z in blocks]
        entries = {(j, j): I / 2 for j in range(m)}
        entries.update({(m + j, m + j): -I / 2 for j in range(m)})
        return k_basis, p_basis, _matrix(entries, n)
    if factor.family == SO2N:
        z0 = _matrix({(1, 0): 1, (0, 1): -1}, n)
        k_basis = [z0]
        for b in range(2, n):
            for c in range(b + 1, n):
                k_basis.append(_matrix({(b, c): 1, (c, b): -1}, n))
        p_basis = [
            _matrix({(a, b): 1, (b, a): 1}, n) for a in (0, 1) for b in range(2, n)
        ]
        return k_basis, p_basis, z0
    k_basis = [
        _realify({(0, 0): I, (1, 1): -I}),
        _realify({(0, 1): 1, (1, 0): -1}),
        _realify({(0, 1): I, (1, 0): I}),
    ]
    p_basis = [
        _realify({(0, 0): 1, (1, 1): -1}),
        _realify({(0, 1): 1, (1, 0): 1}),
        _realify({(0, 1): I, (1, 0): -I}),
    ]
    return k_basis, p_basis, zero_matrix(4)


@lru_cache(maxsize=None)
def cartan_split(algebra: AlgebraDescriptor) -> CartanData:
    """Cartan decomposition g = k + p and the central element Z0 of k.

    For direct sums the factor bases are embedded block-diagonally and Z0 is
    the sum of the factor centers, so ad(Z0) acts as the complex structure
    on every Hermitian factor at once.
    """
    size = algebra.size
    k_basis, p_basis, centers = [], [], []
    for index, factor in enumerate(algebra.factors):
        block = algebra.block(index)
        k_f, p_f, z_f = _factor_cartan(factor)
        k_basis.extend(Element(algebra, place(M, block, size)) for M in k_f)
        p_basis.extend(Element(algebra, place(M, block, size)) for M in p_f)
        centers.append(z_f)
    z0 = Element(algebra, block_diagonal(centers))
    return CartanData(algebra, tuple(k_basis), tuple(p_basis), z0)


@lru_cache(maxsize=None)
def basis(algebra: AlgebraDescriptor) -> Tuple[DomainMatrix, ...]:
    """Fixed real basis: for each factor, its k basis followed by its p basis."""
    size = algebra.size
    matrices = []
    for index, factor in enumerate(algebra.factors):
        block = algebra.block(index)
        k_f, p_f, _ = _factor_cartan(factor)
        matrices.extend(place(M, block, size) for M in k_f + p_f)
    return tuple(matrices)


@lru_cache(maxsize=None)
def factor_slices(algebra: AlgebraDescriptor) -> Tuple[Tuple[range, range], ...]:
    """Positions of each factor's k and p vectors inside ``basis(algebra)``."""
    slices = []
    position = 0
    for factor in algebra.factors:
        k_f, p_f, _ = _factor_cartan(factor)
        k_range = range(position, position + len(k_f))
        p_range = range(k_range.stop, k_range.stop + len(p_f))
        slices.append((k_range, p_range))
        position = p_range.stop
    return tuple(slices)


@lru_cache(maxsize=None)
def coordinate_system(algebra: AlgebraDescriptor) -> CoordinateSystem:
    return CoordinateSystem(basis(algebra))


@lru_cache(maxsize=None)
def structure_constants(
    algebra: AlgebraDescriptor,
) -> Tuple[Tuple[int, int, DomainMatrix], ...]:
    """Coordinates of [b_k, b_l] for every pair k < l of basis vectors."""
    vectors = basis(algebra)
    system = coordinate_system(algebra)
    constants = []
    for k in range(len(vectors)):
        for l in range(k + 1, len(vectors)):
            bracket_kl = commutator(vectors[k], vectors[l])
            constants.append((k, l, system.coordinates(bracket_kl)))
    logger.debug(f"Computed {len(constants)} brackets for {algebra}")
    return tuple(constants)


def dimension(algebra: AlgebraDescriptor) -> int:
    return len(basis(algebra))


def rank(algebra: AlgebraDescriptor) -> int:
    """Real rank: min(p,q), n, floor(n/2), 2 (or 1 for so(2,1)), summed over factors."""
    return algebra.rank


def complex_structure(algebra: AlgebraDescriptor, X: DomainMatrix) -> DomainMatrix:
    """J(X) = [Z0, X]."""
    return commutator(cartan_split(algebra).z0.matrix, X)


def k_projection(algebra: AlgebraDescriptor, X: DomainMatrix) -> DomainMatrix:
    """Component of X in k; ad(Z0)^2 is -1 on p and 0 on k."""
    return add(X, complex_structure(algebra, complex_structure(algebra, X)))


def p_residual(algebra: AlgebraDescriptor, X: DomainMatrix):
    """Zero iff X belongs to the algebra and lies in its p part."""
    return max_norm(
        [membership_residual(algebra, X), residual_norm(k_projection(algebra, X))]
    )


def _disc_su(n: int, i: int, j: int) -> Tuple[DomainMatrix, ...]:
    return (
        _matrix({(i, i): I, (j, j): -I}, n),
        _matrix({(i, j): 1, (j, i): 1}, n),
        _matrix({(i, j): I, (j, i): -I}, n),
    )


def _factor_discs(factor: SimpleFactor) -> List[Tuple[DomainMatrix, ...]]:
    """Images of (K1, P1, P2) of su(1,1) under each disc of the polydisc."""
    n = factor.size
    if factor.family == SU:
        p = factor.params[0]
        return [_disc_su(n, j, p + j) for j in range(p)]
    if factor.family == SP:
        m = factor.params[0]
        return [_disc_su(n, j, m + j) for j in range(m)]
    if factor.family == SOSTAR:
        m = factor.params[0]
        discs = []
        for j in range(m // 2):
            a, b = 2 * j, 2 * j + 1
            discs.append(
                (
                    _matrix(
                        {(a, a): I, (b, b): I, (m + a, m + a): -I, (m + b, m + b): -I},
                        n,
                    ),
                    _matrix(
                        {(a, m + b): 1, (b, m + a): -1, (m + a, b): -1, (m + b, a): 1},
                        n,
                    ),
                    _matrix(
                        {(a, m + b): I, (b, m + a): -I, (m + a, b): I, (m + b, a): -I},
                        n,
                    ),
                )
            )
        return discs
    if factor.family == SO2N:
        if factor.params[0] == 1:
            return [
                (
                    _matrix({(1, 0): 2, (0, 1): -2}, n),
                    _matrix({(0, 2): 2, (2, 0): 2}, n),
                    _matrix({(1, 2): 2, (2, 1): 2}, n),
                )
            ]
        return [
            (
                _matrix({(1, 0): 1, (0, 1): -1, (2, 3): 1, (3, 2): -1}, n),
                _matrix({(0, 2): 1, (2, 0): 1, (1, 3): 1, (3, 1): 1}, n),
                _matrix({(0, 3): -1, (3, 0): -1, (1, 2): 1, (2, 1): 1}, n),
            ),
            (
                _matrix({(1, 0): 1, (0, 1): -1, (3, 2): 1, (2, 3): -1}, n),
                _matrix({(0, 2): 1, (2, 0): 1, (1, 3): -1, (3, 1): -1}, n),
                _matrix({(0, 3): 1, (3, 0): 1, (1, 2): 1, (2, 1): 1}, n),
            ),
        ]
    return []


def disc_generators(algebra: AlgebraDescriptor, index: int = 0) -> List[Tuple[DomainMatrix, ...]]:
    """Polydisc generators of factor ``index``, embedded into the whole algebra."""
    block = algebra.block(index)
    return [
        tuple(place(M, block, algebra.size) for M in disc)
        for disc in _factor_discs(algebra.factors[index])
    ]


@lru_cache(maxsize=None)
def calibration_constant(factor: SimpleFactor):
    """Constant c with c * Re tr(J dP1 . dP2) = 1 on the first polydisc disc."""
    if not factor.is_hermitian:
        raise ValueError(f"{factor} carries no Kaehler form")
    algebra = AlgebraDescriptor((factor,))
    _, p1, p2 = _factor_discs(factor)[0]
    value = re(trace(complex_structure(algebra, p1) * p2))
    if value == 0:
        raise RuntimeError(f"degenerate calibration disc for {factor}")
    return 1 / value


def kahler_form(algebra: AlgebraDescriptor, X: DomainMatrix, Y: DomainMatrix):
    """Sum over factors of c_f * Re tr(J X_f . Y_f), without membership checks."""
    total = S.Zero
    for index, factor in enumerate(algebra.factors):
        if not factor.is_hermitian:
            continue
        block = algebra.block(index)
        sub = algebra.factor_algebra(index)
        X_f, Y_f = extract_block(X, block), extract_block(Y, block)
        if is_zero(X_f) or is_zero(Y_f):
            continue
        value = re(trace(complex_structure(sub, X_f) * Y_f))
        total += calibration_constant(factor) * value
    return total


def _as_matrix(value: Union[Element, DomainMatrix]) -> DomainMatrix:
    return value.matrix if isinstance(value, Element) else value


def kahler_pairing(
    algebra: AlgebraDescriptor,
    X: Union[Element, DomainMatrix],
    Y: Union[Element, DomainMatrix],
):
    """Calibrated Kaehler pairing omega(X, Y) on p.

    Args:
        algebra: Hermitian algebra, simple or a direct sum
        X: Element of p
        Y: Element of p

    Returns:
        Exact rational value

    Raises:
        ValueError: If X or Y is not in p
    """
    X, Y = _as_matrix(X), _as_matrix(Y)
    for name, value in (("X", X), ("Y", Y)):
        residual = p_residual(algebra, value)
        if residual != 0:
            raise ValueError(f"{name} is not in p of {algebra} (residual {residual})")
    return kahler_form(algebra, X, Y)


@dataclass(frozen=True, eq=False)
class Homomorphism:
    """A Lie algebra map given by the images of ``basis(source)``.

    ``action`` optionally evaluates the map on an arbitrary source matrix
    without going through coordinates.
    """

    source: AlgebraDescriptor
    target: AlgebraDescriptor
    images: Tuple[DomainMatrix, ...]
    label: str
    action: Optional[Callable[[DomainMatrix], DomainMatrix]] = field(
        default=None, repr=False
    )

    def __post_init__(self):
        expected = dimension(self.source)
        if len(self.images) != expected:
            raise ValueError(
                f"{self.label}: expected {expected} images for {self.source}, "
                f"got {len(self.images)}"
            )
        for image in self.images:
            if image.shape != (self.target.size, self.target.size):
                raise ValueError(
                    f"{self.label}: image of shape {image.shape} does not fit {self.target}"
                )

    def apply(self, X: DomainMatrix) -> DomainMatrix:
        """Image of an arbitrary element of the source."""
        if self.action is not None:
            return self.action(X)
        coords = coordinate_system(self.source).coordinates(X)
        return linear_combination(self.images, coords)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Homomorphism):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and all(is_zero(subtract(a, b)) for a, b in zip(self.images, other.images))
        )

    __hash__ = None

    def __str__(self) -> str:
        return f"{self.label}: {self.source} -> {self.target}"


def identity(algebra: AlgebraDescriptor) -> Homomorphism:
    return Homomorphism(
        algebra, algebra, basis(algebra), f"identity({algebra})", action=lambda X: X
    )


def polydisc(algebra: AlgebraDescriptor) -> Homomorphism:
    """Holomorphic isometric embedding su(1,1)^rank -> algebra of a simple algebra.

    Raises:
        ValueError: If the algebra is not simple and Hermitian
    """
    if not algebra.is_simple or not algebra.factors[0].is_hermitian:
        raise ValueError(f"polydisc needs a simple Hermitian algebra, got {algebra}")
    discs = disc_generators(algebra)
    source = power_algebra(SU11, len(discs))
    images = tuple(M for disc in discs for M in disc)
    return Homomorphism(source, algebra, images, f"polydisc({algebra})")


def random_element(
    algebra: AlgebraDescriptor, rng: random.Random, part: str = "all", bound: int = 3
) -> DomainMatrix:
    """Random integer combination of basis vectors of ``algebra``.

    Args:
        algebra: Ambient algebra
        rng: Seeded random generator
        part: "all", "k" or "p"
        bound: Coefficients are drawn from [-bound, bound]
    """
    data = cartan_split(algebra)
    if part == "k":
        vectors = [e.matrix for e in data.k_basis]
    elif part == "p":
        vectors = [e.matrix for e in data.p_basis]
    else:
        vectors = list(basis(algebra))
    coefficients = {(0, k): rng.randint(-bound, bound) for k in range(len(vectors))}
    row = matrix_from_entries(coefficients, (1, len(vectors)))
    return linear_combination(vectors, row)
