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
"""Combinatorial shapes of tight holomorphic-type embeddings and their realizations.

A shape lists the source factors of a tight map together with how each of
them sits in the target. Every entry consumes part of the target capacity
(its rank-weighted image), and a shape uses up the capacity exactly.

Entry kinds, with the source factor they stand for:

- ``SU11_VIA_RHO(f)``: su(1,1) acting through the 2f-dimensional rho_odd(f)
- ``SU_PP(p)``: su(p,p), p >= 2
- ``SP(n)``: sp(2n,R), n >= 2
- ``SOSTAR4(m)``: so*(4m), m >= 2
- ``SO2(r)``: so(2,r) through a spin representation, r >= 5, r != 6
- ``SU_PQ(p,q)``: su(p,q), p < q, only in su(m,n) with m < n
- ``SOSTAR_NT(k)``, ``SU_NT(k)``: so*(4k+2) or su(k,k+1) filling the odd
  block of so*(4p+2)

Entries sharing a ``factor_slot`` act on the same su(1,1) factor.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from tightmaps.algebra_core import (
    SO2N,
    SOSTAR,
    SP,
    SU,
    AlgebraDescriptor,
    Homomorphism,
    SimpleFactor,
    direct_sum_algebra,
    identity,
    make_algebra,
    make_factor,
)
from tightmaps.catalog import (
    SOSTAR_TO_SU,
    SP_TO_SU,
    SU_TO_SOSTAR,
    SU_TO_SP,
    compose,
    direct_sum,
    pad_target,
    rho_odd,
    spin,
    spin_capacity,
    spin_target,
    std_inclusion,
)

# Configure logging
logger = logging.getLogger(__name__)

SU11_VIA_RHO = "SU11_VIA_RHO"
SU_PP = "SU_PP"
SP_BLOCK = "SP"
SOSTAR4 = "SOSTAR4"
SO2 = "SO2"
SU_PQ = "SU_PQ"
SOSTAR_NT = "SOSTAR_NT"
SU_NT = "SU_NT"
TUBE_KINDS = (SU11_VIA_RHO, SU_PP, SP_BLOCK, SOSTAR4, SO2)
ENTRY_KINDS = TUBE_KINDS + (SU_PQ, SOSTAR_NT, SU_NT)

Option = Tuple[Tuple[str, Tuple[int, ...], int], ...]


@dataclass(frozen=True, order=True)
class ShapeEntry:
    factor_slot: int
    kind: str
    params: Tuple[int, ...]
    multiplicity: int = 1

    def __str__(self) -> str:
        params = ",".join(str(p) for p in self.params)
        return f"{self.kind}({params})x{self.multiplicity}@{self.factor_slot}"


@dataclass(frozen=True)
class ShapeRecord:
    target: AlgebraDescriptor
    entries: Tuple[ShapeEntry, ...]
    capacity_used: int
    constraint: str

    @property
    def slots(self) -> int:
        return 1 + max(e.factor_slot for e in self.entries) if self.entries else 0

    def slot_entries(self, slot: int) -> List[ShapeEntry]:
        return [e for e in self.entries if e.factor_slot == slot]

    @property
    def source(self) -> AlgebraDescriptor:
        return AlgebraDescriptor(
            tuple(entry_factor(self.slot_entries(s)[0]) for s in range(self.slots))
        )

    def key(self) -> Tuple:
        return tuple((e.factor_slot, e.kind, e.params, e.multiplicity) for e in self.entries)

    def __str__(self) -> str:
        return f"{self.target}: " + " + ".join(str(e) for e in self.entries)


def entry_factor(entry: ShapeEntry) -> SimpleFactor:
    """Source factor an entry stands for."""
    kind, params = entry.kind, entry.params
    if kind == SU11_VIA_RHO:
        return make_factor(SU, 1, 1)
    if kind == SU_PP:
        return make_factor(SU, params[0], params[0])
    if kind == SP_BLOCK:
        return make_factor(SP, params[0])
    if kind == SOSTAR4:
        return make_factor(SOSTAR, 2 * params[0])
    if kind == SO2:
        return make_factor(SO2N, params[0])
    if kind == SU_PQ:
        return make_factor(SU, *params)
    if kind == SOSTAR_NT:
        return make_factor(SOSTAR, 2 * params[0] + 1)
    if kind == SU_NT:
        return make_factor(SU, params[0], params[0] + 1)
    raise ValueError(f"unknown shape entry kind {kind!r}")


def target_capacity(target: AlgebraDescriptor) -> int:
    if not target.is_simple:
        raise ValueError(f"shapes need a simple target, got {target}")
    factor = target.factors[0]
    if factor.family not in (SU, SP, SOSTAR):
        raise ValueError(f"no shape tables for {target}")
    return factor.rank


def tube_context(target: AlgebraDescriptor) -> str:
    """Family whose capacity accounting applies to the tube-type entries."""
    target_capacity(target)
    return target.factors[0].family


def _spin_allowed(r: int, context: str) -> bool:
    if r < 5 or r == 6:
        return False
    if context == SP:
        return r % 8 in (1, 2, 3)
    if context == SOSTAR:
        return r % 8 in (5, 6, 7)
    return True


def entry_capacity(kind: str, params: Sequence[int], context: str) -> int:
    """Capacity consumed by one copy of an entry in a target of the given family."""
    if kind == SU11_VIA_RHO:
        return params[0]
    if kind == SU_PP:
        return 2 * params[0] if context == SP else params[0]
    if kind == SP_BLOCK:
        return params[0]
    if kind == SOSTAR4:
        return {SU: 2, SP: 4, SOSTAR: 1}[context] * params[0]
    if kind == SO2:
        if context == SU:
            return spin_target(params[0]).size // 2
        return spin_capacity(params[0])
    if kind in (SU_PQ, SOSTAR_NT, SU_NT):
        return params[0]
    raise ValueError(f"unknown shape entry kind {kind!r}")


def _partitions(total: int, largest: int) -> List[Tuple[int, ...]]:
    if total == 0:
        return [()]
    result = []
    for part in range(min(total, largest), 0, -1):
        for rest in _partitions(total - part, part):
            result.append((part,) + rest)
    return result


def _tube_options(context: str, capacity: int, bound: int) -> List[Tuple[Option, int]]:
    options = []
    for total in range(1, capacity + 1):
        for partition in _partitions(total, bound):
            counts: Dict[int, int] = {}
            for part in partition:
                counts[part] = counts.get(part, 0) + 1
            option = tuple((SU11_VIA_RHO, (f,), counts[f]) for f in sorted(counts))
            options.append((option, total))
    candidates = [(SU_PP, (p,)) for p in range(2, capacity + 1)]
    candidates += [(SP_BLOCK, (n,)) for n in range(2, capacity + 1)]
    candidates += [(SOSTAR4, (m,)) for m in range(2, capacity + 1)]
    candidates += [
        (SO2, (r,)) for r in range(5, 2 * capacity + 7) if _spin_allowed(r, context)
    ]
    for kind, params in candidates:
        unit = entry_capacity(kind, params, context)
        if unit > min(bound, capacity):
            continue
        for g in range(1, capacity // unit + 1):
            options.append((((kind, params, g),), g * unit))
    return sorted(options)


def _multisets(options, capacity: int) -> List[Tuple]:
    """Multisets of options whose costs add up to ``capacity``."""
    results = []

    def walk(start, remaining, chosen):
        if remaining == 0:
            results.append(tuple(chosen))
            return
        for index in range(start, len(options)):
            option, cost = options[index]
            if cost <= remaining:
                walk(index, remaining - cost, chosen + [(option, cost)])

    walk(0, capacity, [])
    return results


def _pq_multisets(positives: int, negatives: int, bound: int) -> List[Tuple]:
    options = []
    for p in range(1, min(positives, bound) + 1):
        for q in range(p + 1, negatives + 1):
            g = 1
            while g * p <= positives and g * q <= negatives:
                options.append((((SU_PQ, (p, q), g),), (g * p, g * q)))
                g += 1
    options.sort()
    results = []

    def walk(start, left_p, left_q, chosen):
        if left_p == 0:
            results.append(tuple(chosen))
            return
        for index in range(start, len(options)):
            option, (cost_p, cost_q) = options[index]
            if cost_p <= left_p and cost_q <= left_q:
                walk(index, left_p - cost_p, left_q - cost_q, chosen + [(option, cost_p)])

    walk(0, positives, negatives, [])
    return results


def make_shape(target: AlgebraDescriptor, entries: Sequence[ShapeEntry]) -> ShapeRecord:
    """ShapeRecord with the capacity used by the entries and its equation."""
    capacity = target_capacity(target)
    context = tube_context(target)
    costs = [
        entry_capacity(e.kind, e.params, context) * e.multiplicity for e in entries
    ]
    terms = " + ".join(str(c) for c in costs) or "0"
    return ShapeRecord(
        target, tuple(sorted(entries)), sum(costs), f"{terms} = {capacity}"
    )


def _record(target, chosen) -> ShapeRecord:
    entries = []
    for slot, (option, _) in enumerate(chosen):
        for kind, params, g in option:
            entries.append(ShapeEntry(slot, kind, tuple(params), g))
    return make_shape(target, entries)


def enumerate_shapes(target: AlgebraDescriptor, bounds: Optional[int] = None) -> List[ShapeRecord]:
    """All shapes of tight maps into a simple su, sp or so* target.

    Shapes are combinatorial, so there can be more of them than Zariski
    closures of tight images. sp(4,R) has four: rho(2), the diagonal
    rho(1) x 2, su(1,1) + su(1,1) and sp(4,R). The diagonal adds no fourth
    closure; its source su(1,1) is already that of rho(2).

    Args:
        target: su(m,n), sp(2p,R) or so*(2n)
        bounds: Largest capacity a single copy of an entry may consume;
            defaults to the target capacity

    Returns:
        ShapeRecords in a deterministic order

    Raises:
        ValueError: If the target has no shape table
    """
    capacity = target_capacity(target)
    factor = target.factors[0]
    bound = capacity if bounds is None else bounds
    records = []
    if factor.family == SU and factor.params[0] != factor.params[1]:
        m, n = factor.params
        for k in range(m + 1):
            tubes = _multisets(_tube_options(SU, k, bound), k) if k else [()]
            for tube in tubes:
                for rest in _pq_multisets(m - k, n - k, bound):
                    records.append(_record(target, tube + rest))
    elif factor.family == SOSTAR and factor.params[0] % 2:
        for tube in _multisets(_tube_options(SOSTAR, capacity, bound), capacity):
            records.append(_record(target, tube))
        for k in range(1, capacity + 1):
            if k > bound:
                break
            rest = capacity - k
            tubes = _multisets(_tube_options(SOSTAR, rest, bound), rest) if rest else [()]
            for tube in tubes:
                for kind in (SOSTAR_NT, SU_NT):
                    odd = (((kind, (k,), 1),), k)
                    records.append(_record(target, tube + (odd,)))
    else:
        options = _tube_options(factor.family, capacity, bound)
        for chosen in _multisets(options, capacity):
            records.append(_record(target, chosen))
    records.sort(key=ShapeRecord.key)
    logger.info(f"Enumerated {len(records)} shapes for {target}")
    return records


def _to_su(rho: Homomorphism) -> Homomorphism:
    factor = rho.target.factors[0]
    if factor.family == SP:
        return compose(std_inclusion(SP_TO_SU, factor.params[0]), rho)
    if factor.family == SOSTAR:
        return compose(std_inclusion(SOSTAR_TO_SU, factor.params[0]), rho)
    return rho


def _copy_map(kind: str, params: Tuple[int, ...], context: str) -> Homomorphism:
    """One copy of an entry, as a tight map into the smallest block of its family."""
    if kind == SU11_VIA_RHO:
        (f,) = params
        base = rho_odd(f)
        if context == SU:
            return compose(std_inclusion(SP_TO_SU, f), base)
        if context == SOSTAR:
            return compose(
                std_inclusion(SU_TO_SOSTAR, f, f),
                compose(std_inclusion(SP_TO_SU, f), base),
            )
        return base
    if kind == SU_PP:
        (p,) = params
        if context == SP:
            return std_inclusion(SU_TO_SP, p, p)
        if context == SOSTAR:
            return std_inclusion(SU_TO_SOSTAR, p, p)
        return identity(make_algebra(SU, p, p))
    if kind == SP_BLOCK:
        (n,) = params
        if context == SU:
            return std_inclusion(SP_TO_SU, n)
        if context == SOSTAR:
            return compose(std_inclusion(SU_TO_SOSTAR, n, n), std_inclusion(SP_TO_SU, n))
        return identity(make_algebra(SP, n))
    if kind == SOSTAR4:
        (m,) = params
        if context == SU:
            return std_inclusion(SOSTAR_TO_SU, 2 * m)
        if context == SP:
            return compose(
                std_inclusion(SU_TO_SP, 2 * m, 2 * m), std_inclusion(SOSTAR_TO_SU, 2 * m)
            )
        return identity(make_algebra(SOSTAR, 2 * m))
    if kind == SO2:
        (r,) = params
        return _to_su(spin(r)) if context == SU else spin(r)
    if kind == SU_PQ:
        return identity(make_algebra(SU, *params))
    if kind == SOSTAR_NT:
        return identity(make_algebra(SOSTAR, 2 * params[0] + 1))
    if kind == SU_NT:
        return std_inclusion(SU_TO_SOSTAR, params[0], params[0] + 1)
    raise ValueError(f"unknown shape entry kind {kind!r}")


def _repeat(rho: Homomorphism, count: int) -> Homomorphism:
    result = rho
    for _ in range(count - 1):
        result = direct_sum(result, rho, same_source=True)
    return result


def _slot_map(entries: Sequence[ShapeEntry], context: str) -> Homomorphism:
    result = None
    for entry in entries:
        piece = _repeat(_copy_map(entry.kind, entry.params, context), entry.multiplicity)
        result = piece if result is None else direct_sum(result, piece, same_source=True)
    return result


def realize_shape(shape: ShapeRecord) -> Homomorphism:
    """Block-diagonal homomorphism of the given shape into its target.

    Raises:
        ValueError: If the shape is invalid for its target
    """
    capacity = target_capacity(shape.target)
    if shape.capacity_used != capacity or not shape.entries:
        raise ValueError(f"shape {shape} does not fill the capacity {capacity}")
    context = tube_context(shape.target)
    result = None
    for slot in range(shape.slots):
        entries = shape.slot_entries(slot)
        kinds = {e.kind for e in entries}
        if len(entries) > 1 and kinds != {SU11_VIA_RHO}:
            raise ValueError(f"slot {slot} of {shape} mixes entry kinds {sorted(kinds)}")
        for entry in entries:
            if entry.kind not in ENTRY_KINDS or entry.multiplicity < 1:
                raise ValueError(f"invalid shape entry {entry}")
            entry_factor(entry)
        piece = _slot_map(entries, context)
        result = piece if result is None else direct_sum(result, piece)
    if result.target != shape.target:
        result = pad_target(result, shape.target)
    logger.debug(f"Realized {shape} as {result.label}")
    return result


def _entry_blocks(entry: ShapeEntry, context: str) -> List[Tuple[int, int]]:
    kind, params = entry.kind, entry.params
    if kind == SU11_VIA_RHO:
        f = params[0]
        return [(f, f)] * (2 if context == SOSTAR else 1)
    if kind == SU_PP:
        p = params[0]
        return [(p, p)] * (1 if context == SU else 2)
    if kind == SP_BLOCK:
        n = params[0]
        return [(n, n)] * (2 if context == SOSTAR else 1)
    if kind == SOSTAR4:
        m = params[0]
        return [(2 * m, 2 * m)] * (2 if context == SP else 1)
    if kind == SO2:
        half = spin_target(params[0]).size // 2
        return [(half, half)]
    if kind == SU_PQ:
        return [tuple(params)]
    if kind == SOSTAR_NT:
        k = params[0]
        return [(2 * k + 1, 2 * k + 1)]
    k = params[0]
    return [(k, k + 1), (k + 1, k)]


def expected_block_signatures(shape: ShapeRecord) -> List[Tuple[int, int]]:
    """Signatures of the irreducible blocks of the realized shape, sorted."""
    context = tube_context(shape.target)
    signatures = []
    for entry in shape.entries:
        signatures.extend(_entry_blocks(entry, context) * entry.multiplicity)
    factor = shape.target.factors[0]
    used_p = sum(p for p, _ in signatures)
    used_q = sum(q for _, q in signatures)
    if factor.family == SU:
        m, n = factor.params
    else:
        m = n = factor.params[0]
    signatures.extend([(1, 0)] * (m - used_p) + [(0, 1)] * (n - used_q))
    return sorted(signatures)


def _regular_block(entry: ShapeEntry, context: str) -> AlgebraDescriptor:
    if entry.kind in (SU_PQ,):
        return make_algebra(SU, *entry.params)
    if entry.kind in (SOSTAR_NT, SU_NT):
        return make_algebra(SOSTAR, 2 * entry.params[0] + 1)
    unit = entry_capacity(entry.kind, entry.params, context)
    if context == SU:
        return make_algebra(SU, unit, unit)
    if context == SP:
        return make_algebra(SP, unit)
    return make_algebra(SOSTAR, 2 * unit)


def regular_subalgebra(shape: ShapeRecord) -> AlgebraDescriptor:
    """Smallest classical block of the target family around every copy of every entry."""
    context = tube_context(shape.target)
    blocks = []
    for entry in shape.entries:
        blocks.extend([_regular_block(entry, context)] * entry.multiplicity)
    return direct_sum_algebra(*blocks)
