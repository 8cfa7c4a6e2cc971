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

"""Exact matrix arithmetic over the Gaussian rationals and their surd extensions.

Every matrix in the package is a sparse sympy ``DomainMatrix``. Entries live in
``QQ_I`` whenever possible; matrices that need real quadratic surds are moved to
the expression domain ``EX``. Nothing here ever rounds.
"""

import logging
from math import isqrt
from typing import Dict, List, Mapping, Sequence, Tuple

from sympy import Abs, CRootOf, Expr, Poly, S, Symbol, conjugate, im, re, roots, sqrt, sympify
from sympy.polys.domains import EX, QQ, QQ_I
from sympy.polys.matrices import DomainMatrix
from sympy.polys.polyerrors import CoercionFailed

# Configure logging
logger = logging.getLogger(__name__)

Entry = Tuple[int, int]


def to_domain_value(value) -> Tuple[object, object]:
    """Convert a SymPy-compatible number to a domain element.

    Returns:
        Tuple of (domain, element), preferring QQ_I over EX
    """
    expr = sympify(value)
    try:
        return QQ_I, QQ_I.from_sympy(expr)
    except CoercionFailed:
        return EX, EX.from_sympy(expr)


def common_domain(*domains):
    """Smallest of QQ_I and EX containing all the given domains."""
    return EX if any(K == EX for K in domains) else QQ_I


def to_sympy(domain, element) -> Expr:
    return domain.to_sympy(element)


def matrix_from_entries(entries: Mapping[Entry, object], size) -> DomainMatrix:
    """Build a sparse matrix from SymPy-compatible entries.

    Args:
        entries: Mapping from (row, column) to a number
        size: Matrix size, an integer for square matrices or a shape tuple

    Returns:
        DomainMatrix over QQ_I, or over EX if some entry is not Gaussian
    """
    shape = (size, size) if isinstance(size, int) else tuple(size)
    converted = {}
    domain = QQ_I
    for key, value in entries.items():
        K, element = to_domain_value(value)
        converted[key] = (K, element)
        if K == EX:
            domain = EX
    dok = {}
    for key, (K, element) in converted.items():
        dok[key] = element if K == domain else domain.convert_from(element, K)
    return DomainMatrix.from_dok(dok, shape, domain)


def zero_matrix(size, domain=QQ_I) -> DomainMatrix:
    shape = (size, size) if isinstance(size, int) else tuple(size)
    return DomainMatrix.zeros(shape, domain)


def identity_matrix(size: int, domain=QQ_I) -> DomainMatrix:
    return DomainMatrix.eye(size, domain)


def unify(*matrices: DomainMatrix) -> Tuple[DomainMatrix, ...]:
    first, *rest = matrices
    return first.unify(*rest)


def conjugate_element(domain, element):
    if domain == QQ_I:
        return QQ_I(element.x, -element.y)
    return EX.from_sympy(conjugate(element.ex))


def conj(M: DomainMatrix) -> DomainMatrix:
    """Entrywise complex conjugate."""
    K = M.domain
    return M.applyfunc(lambda e: conjugate_element(K, e))


def dagger(M: DomainMatrix) -> DomainMatrix:
    """Conjugate transpose."""
    return conj(M).transpose()


def scale(M: DomainMatrix, value) -> DomainMatrix:
    """Multiply a matrix by a SymPy-compatible scalar."""
    K, element = to_domain_value(value)
    target = common_domain(K, M.domain)
    if target != M.domain:
        M = M.convert_to(target)
    if target != K:
        element = target.convert_from(element, K)
    return M * element


def _merge(A: DomainMatrix, B: DomainMatrix, negate: bool) -> DomainMatrix:
    # DomainMatrix +/- applies unary + to entries present in one operand only,
    # which EX elements do not implement.
    if A.shape != B.shape:
        raise ValueError(f"cannot combine matrices of shapes {A.shape} and {B.shape}")
    domain = common_domain(A.domain, B.domain)
    dok = dict(A.convert_to(domain).to_dok())
    for key, value in B.convert_to(domain).to_dok().items():
        if negate:
            value = -value
        current = dok.get(key)
        dok[key] = value if current is None else current + value
    return DomainMatrix.from_dok(dok, A.shape, domain)


def add(*matrices: DomainMatrix) -> DomainMatrix:
    """Entrywise sum of one or more matrices of a common shape."""
    if not matrices:
        raise ValueError("cannot add an empty list of matrices")
    result = matrices[0]
    for M in matrices[1:]:
        result = _merge(result, M, negate=False)
    return result


def subtract(A: DomainMatrix, B: DomainMatrix) -> DomainMatrix:
    return _merge(A, B, negate=True)


def commutator(X: DomainMatrix, Y: DomainMatrix) -> DomainMatrix:
    return subtract(X * Y, Y * X)


def trace(M: DomainMatrix):
    """Trace as a SymPy number."""
    K = M.domain
    total = K.zero
    for (i, j), value in M.to_dok().items():
        if i == j:
            total += value
    return K.to_sympy(total)


def real_imag(domain, element) -> Tuple[Expr, Expr]:
    """Real and imaginary parts of a domain element as SymPy numbers."""
    if domain == QQ_I:
        return QQ.to_sympy(element.x), QQ.to_sympy(element.y)
    expr = element.ex
    return re(expr), im(expr)


def residual_norm(M: DomainMatrix) -> Expr:
    """Largest absolute real or imaginary part among the entries of ``M``.

    Zero exactly when ``M`` is the zero matrix.
    """
    K = M.domain
    best = S.Zero
    for value in M.to_dok().values():
        for part in real_imag(K, value):
            size = Abs(part)
            if size > best:
                best = size
    return best


def is_zero(M: DomainMatrix) -> bool:
    return residual_norm(M) == 0


def max_norm(values: Sequence[Expr]) -> Expr:
    """Maximum of a sequence of nonnegative SymPy numbers (zero when empty)."""
    best = S.Zero
    for value in values:
        if value > best:
            best = value
    return best


def place(M: DomainMatrix, index_map: Sequence[int], size: int) -> DomainMatrix:
    """Copy ``M`` into a ``size``-square matrix, row/column i going to index_map[i]."""
    dok = {(index_map[i], index_map[j]): v for (i, j), v in M.to_dok().items()}
    return DomainMatrix.from_dok(dok, (size, size), M.domain)


def embed_block(M: DomainMatrix, offset: int, size: int) -> DomainMatrix:
    n = M.shape[0]
    return place(M, list(range(offset, offset + n)), size)


def extract_block(M: DomainMatrix, indices: Sequence[int]) -> DomainMatrix:
    indices = list(indices)
    return M.extract(indices, indices)


def block_diagonal(blocks: Sequence[DomainMatrix]) -> DomainMatrix:
    size = sum(b.shape[0] for b in blocks)
    domain = common_domain(*(b.domain for b in blocks))
    result = zero_matrix(size, domain)
    offset = 0
    for block in blocks:
        result = add(result, embed_block(block.convert_to(domain), offset, size))
        offset += block.shape[0]
    return result


def linear_combination(
    matrices: Sequence[DomainMatrix], coefficients: DomainMatrix
) -> DomainMatrix:
    """Sum of ``coefficients[0, k] * matrices[k]``.

    Args:
        matrices: Matrices of a common shape
        coefficients: A 1 x len(matrices) row vector
    """
    if not matrices:
        raise ValueError("cannot combine an empty list of matrices")
    domain = common_domain(coefficients.domain, *(m.domain for m in matrices))
    coefficients = coefficients.convert_to(domain)
    acc: Dict[Entry, object] = {}
    for (_, k), c in coefficients.to_dok().items():
        M = matrices[k]
        if M.domain != domain:
            M = M.convert_to(domain)
        for key, value in M.to_dok().items():
            acc[key] = acc.get(key, domain.zero) + c * value
    return DomainMatrix.from_dok(acc, matrices[0].shape, domain)


def nullspace_rows(A: DomainMatrix) -> DomainMatrix:
    """Rows form a basis of the right kernel of ``A``."""
    reduced, pivots = A.rref()
    return reduced.nullspace_from_rref(pivots)


def column_basis(columns: DomainMatrix) -> DomainMatrix:
    """Independent columns spanning the same space, in reduced form."""
    if columns.shape[1] == 0:
        return columns
    reduced, pivots = columns.transpose().rref()
    rows = list(range(len(pivots)))
    if not rows:
        return zero_matrix((columns.shape[0], 0), columns.domain)
    return reduced.extract(rows, list(range(columns.shape[0]))).transpose()


def column_rank(columns: DomainMatrix) -> int:
    if columns.shape[1] == 0:
        return 0
    return len(columns.transpose().rref()[1])


def hstack(*columns: DomainMatrix) -> DomainMatrix:
    columns = [c for c in columns if c.shape[1] > 0]
    if not columns:
        raise ValueError("nothing to stack")
    first, *rest = unify(*columns)
    return first.hstack(*rest) if rest else first


def _real_sign(domain, element) -> int:
    if domain == QQ_I:
        if element.y:
            raise ValueError("Hermitian form has a non-real diagonal entry")
        return 1 if element.x > 0 else -1
    value = element.ex
    if value.is_positive:
        return 1
    if value.is_negative:
        return -1
    raise ValueError(f"cannot decide the sign of {value}")


def hermitian_signature(gram: DomainMatrix) -> Tuple[int, int, int]:
    """Signature of a Hermitian matrix by exact congruence diagonalization.

    Returns:
        Tuple of (positive, negative, null) counts
    """
    K = gram.domain
    rows = gram.to_list()
    active = list(range(gram.shape[0]))
    positive = negative = 0
    while active:
        pivot = next((i for i in active if rows[i][i]), None)
        if pivot is None:
            pair = next(
                ((i, j) for i in active for j in active if i != j and rows[i][j]),
                None,
            )
            if pair is None:
                break
            i, j = pair
            c = conjugate_element(K, rows[i][j])
            for r in active:
                rows[r][i] = rows[r][i] + rows[r][j] * c
            cc = conjugate_element(K, c)
            for s in active:
                rows[i][s] = rows[i][s] + cc * rows[j][s]
            pivot = i
        d = rows[pivot][pivot]
        if _real_sign(K, d) > 0:
            positive += 1
        else:
            negative += 1
        active.remove(pivot)
        for r in active:
            factor = rows[r][pivot] / d
            if factor:
                for s in active:
                    rows[r][s] = rows[r][s] - factor * rows[pivot][s]
    return positive, negative, len(active)


def gaussian_root_of_norm(value) -> Expr:
    """A number z with |z|^2 = value for a positive rational ``value``.

    The result is Gaussian when ``value`` is a sum of two rational squares and a
    real square root otherwise.
    """
    value = sympify(value)
    numerator, denominator = value.p, value.q
    target = numerator * denominator
    for a in range(isqrt(target) + 1):
        b_squared = target - a * a
        b = isqrt(b_squared)
        if b * b == b_squared:
            return (S(a) + S(b) * S.ImaginaryUnit) / denominator
    return sqrt(value)


def eigenvalues(M: DomainMatrix) -> List[Expr]:
    """Explicit eigenvalues of a square matrix, Gaussian-rational ones first.

    Roots that SymPy cannot write explicitly, or only as ``CRootOf``, are left
    out with a warning, since an eigenspace split behind them goes unseen.
    """
    K = M.domain
    x = Symbol("x")
    poly = Poly([K.to_sympy(c) for c in M.charpoly()], x)
    found = {r: m for r, m in roots(poly, multiple=False).items() if not r.has(CRootOf)}
    missing = poly.degree() - sum(found.values())
    if missing:
        logger.warning(
            f"{missing} of {poly.degree()} eigenvalues of a {M.shape[0]}x{M.shape[0]} "
            f"matrix have no explicit form and were skipped"
        )
    return sorted(found, key=lambda r: (to_domain_value(r)[0] != QQ_I, str(r)))


class CoordinateSystem:
    """Coordinates of matrices with respect to a fixed linearly independent basis.

    The basis is flattened row-major and reduced once; afterwards coordinates
    are read from the pivot entries and checked against a recombination.
    """

    def __init__(self, basis: Sequence[DomainMatrix]):
        """Initialize the coordinate system.

        Args:
            basis: Linearly independent square matrices of a common size

        Raises:
            ValueError: If the basis is empty or linearly dependent
        """
        if not basis:
            raise ValueError("a coordinate system needs a nonempty basis")
        self.basis = tuple(basis)
        self.size = basis[0].shape[0]
        domain = common_domain(*(b.domain for b in basis))
        dimension = len(basis)
        width = self.size * self.size
        dok = {}
        for k, element in enumerate(self.basis):
            element = element.convert_to(domain)
            for (i, j), value in element.to_dok().items():
                dok[(k, i * self.size + j)] = value
            dok[(k, width + k)] = domain.one
        augmented = DomainMatrix.from_dok(dok, (dimension, width + dimension), domain)
        reduced, pivots = augmented.rref()
        pivots = list(pivots)
        if len(pivots) < dimension or pivots[dimension - 1] >= width:
            raise ValueError("basis matrices are linearly dependent")
        self.pivots = pivots[:dimension]
        self.transform = reduced.extract(
            list(range(dimension)), list(range(width, width + dimension))
        )
        logger.debug(f"Built coordinate system of dimension {dimension}")

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def coordinates(self, M: DomainMatrix, strict: bool = True) -> DomainMatrix:
        """Coordinates of ``M`` as a 1 x dimension row vector.

        Raises:
            ValueError: If strict and ``M`` is not in the span of the basis
        """
        if M.shape != (self.size, self.size):
            raise ValueError(
                f"matrix of shape {M.shape} does not fit a {self.size}x{self.size} basis"
            )
        entries = M.to_dok()
        dok = {}
        for column, pivot in enumerate(self.pivots):
            value = entries.get(divmod(pivot, self.size))
            if value is not None:
                dok[(0, column)] = value
        row = DomainMatrix.from_dok(dok, (1, self.dimension), M.domain)
        coords = row * self.transform
        if strict and not is_zero(subtract(self.combine(coords), M)):
            raise ValueError("matrix is not in the span of the basis")
        return coords

    def combine(self, coords: DomainMatrix) -> DomainMatrix:
        return linear_combination(self.basis, coords)

    def contains(self, M: DomainMatrix) -> bool:
        try:
            self.coordinates(M)
        except ValueError:
            return False
        return True


def kron(A: DomainMatrix, B: DomainMatrix) -> DomainMatrix:
    """Kronecker product, rows of A outermost."""
    domain = common_domain(A.domain, B.domain)
    A, B = A.convert_to(domain), B.convert_to(domain)
    rows, cols = B.shape
    dok = {}
    for (i, j), a in A.to_dok().items():
        for (k, l), b in B.to_dok().items():
            dok[(i * rows + k, j * cols + l)] = a * b
    shape = (A.shape[0] * rows, A.shape[1] * cols)
    return DomainMatrix.from_dok(dok, shape, domain)
