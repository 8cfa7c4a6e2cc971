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
"""Symbolic arrow catalogs for tight maps into so(2,p), e6(-14) and e7(-25).

These targets have no matrix model here. Each catalog is a small directed
graph whose arrows are inclusions, canonical isomorphisms or the
irreducible representation of su(1,1) in sp(4,R); arrows flagged
``noncommuting`` belong to subdiagrams that do not commute.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple, Union

from tightmaps.algebra_core import SO2N, AlgebraDescriptor

# Configure logging
logger = logging.getLogger(__name__)

SO2P_DIAGRAM = "SO2N"
E6_DIAGRAM = "E6"
E7_DIAGRAM = "E7"
DIAGRAM_NAMES = (SO2P_DIAGRAM, E6_DIAGRAM, E7_DIAGRAM)

INCLUSION = "inclusion"
ISOMORPHISM = "isomorphism"
REPRESENTATION = "representation"

SU11 = "su(1,1)"
SU11_SQUARED = "su(1,1)^2"
SP4 = "sp(4,R)"
SU22 = "su(2,2)"


@dataclass(frozen=True)
class DiagramEdge:
    source: str
    target: str
    label: str = ""
    noncommuting: bool = False
    kind: str = INCLUSION

    def __str__(self) -> str:
        arrow = "~" if self.kind == ISOMORPHISM else "->"
        tag = f"[{self.label}]" if self.label else ""
        return f"{self.source} {arrow}{tag} {self.target}"


@dataclass(frozen=True)
class Diagram:
    name: str
    top: str
    nodes: Tuple[str, ...]
    edges: Tuple[DiagramEdge, ...]
    caveat: bool = False

    def successors(self, node: str) -> List[Tuple[str, DiagramEdge]]:
        result = []
        for edge in self.edges:
            if edge.source == node:
                result.append((edge.target, edge))
            elif edge.kind == ISOMORPHISM and edge.target == node:
                result.append((edge.source, edge))
        return result


def _edge(source, target, label="", red=False, kind=INCLUSION) -> DiagramEdge:
    return DiagramEdge(source, target, label, red, kind)


def _build(name, top, edges, caveat=False) -> Diagram:
    nodes = []
    for edge in edges:
        for node in (edge.source, edge.target):
            if node not in nodes:
                nodes.append(node)
    return Diagram(name, top, tuple(nodes), tuple(edges), caveat)


def _so2p_diagram(p: Optional[int]) -> Diagram:
    if p is not None and p < 3:
        raise ValueError(f"the so(2,p) catalog needs p >= 3, got p={p}")
    top = "so(2,p)" if p is None else f"so(2,{p})"
    edges = [
        _edge(SU11, SP4, "rho_3", red=True, kind=REPRESENTATION),
        _edge(SU11, SU11_SQUARED, red=True),
        _edge(SU11_SQUARED, SP4, red=True),
        _edge(SP4, SU22),
        _edge(SP4, "so(2,3)", "~", kind=ISOMORPHISM),
        _edge(SU22, "so(2,4)", "~", kind=ISOMORPHISM),
        _edge("so(2,3)", "so(2,4)", "f"),
    ]
    if p is None:
        edges += [_edge("so(2,4)", "so(2,k)"), _edge("so(2,k)", top)]
    elif p > 4:
        edges.append(_edge("so(2,4)", top))
    return _build(SO2P_DIAGRAM, top, edges)


def _e6_diagram() -> Diagram:
    top = "e6(-14)"
    plain = [
        (SU11_SQUARED, "su(1,1)+su(1,2)"),
        (SP4, SU22),
        ("su(1,1)+su(1,2)", "su(1,2)+su(1,2)"),
        ("su(1,1)+su(1,2)", "su(1,1)+su(1,3)"),
        ("su(1,1)+su(1,2)", "su(2,3)"),
        (SU22, "su(2,3)"),
        (SU22, "so(2,5)"),
        ("so(2,5)", "so(2,6)"),
        ("su(1,1)+su(1,3)", "su(1,1)+su(1,4)"),
        ("su(1,1)+su(1,3)", "su(2,4)"),
        ("su(1,1)+su(1,3)", "so*(10)"),
        ("su(2,3)", "su(2,4)"),
        ("so(2,6)", "so*(10)"),
        ("so(2,6)", "so(2,7)"),
        ("su(1,1)+su(1,4)", "su(1,1)+su(1,5)"),
        ("so(2,7)", "so(2,8)"),
        ("su(1,2)+su(1,2)", "su(2,4)"),
        ("su(1,1)+su(1,5)", top),
        ("su(2,4)", top),
        ("so*(10)", top),
        ("so(2,8)", top),
    ]
    edges = [
        _edge(SU11, SP4, "rho_3", red=True, kind=REPRESENTATION),
        _edge(SU11, SU11_SQUARED, red=True),
        _edge(SU11_SQUARED, SP4, red=True),
    ] + [_edge(a, b) for a, b in plain]
    return _build(E6_DIAGRAM, top, edges)


def _e7_diagram() -> Diagram:
    top = "e7(-25)"
    regular = "so(2,10)+su(1,1)"
    plain = [
        (SU11, "sp(4,R)+su(1,1)"),
        (SU11, "su(1,1)^3"),
        (SU11, "sp(6,R)"),
        ("su(1,1)^3", "sp(6,R)"),
        ("su(1,1)^3", "sp(4,R)+su(1,1)"),
        ("sp(6,R)", "su(3,3)"),
        ("sp(4,R)+su(1,1)", "su(2,2)+su(1,1)"),
        ("su(3,3)", "so*(12)"),
        ("su(2,2)+su(1,1)", "so(2,6)+su(1,1)"),
        ("so(2,6)+su(1,1)", regular),
        ("so(2,6)+su(1,1)", "so*(12)"),
        ("so*(12)", top),
        (regular, top),
    ]
    plain += [(f"so(2,{p})+su(1,1)", regular) for p in (5, 7, 8, 9)]
    edges = [_edge(a, b) for a, b in plain]
    return _build(E7_DIAGRAM, top, edges, caveat=True)


def diagram(target: Union[str, AlgebraDescriptor]) -> Diagram:
    """Catalog for ``"SO2N"``, ``"E6"``, ``"E7"`` or an so(2,p) descriptor.

    Raises:
        ValueError: If no catalog exists for the target
    """
    if isinstance(target, AlgebraDescriptor):
        if not (target.is_simple and target.factors[0].family == SO2N):
            raise ValueError(f"no arrow catalog for {target}")
        return _so2p_diagram(target.factors[0].params[0])
    name = target.upper()
    if name == SO2P_DIAGRAM:
        return _so2p_diagram(None)
    if name == E6_DIAGRAM:
        return _e6_diagram()
    if name == E7_DIAGRAM:
        return _e7_diagram()
    raise ValueError(f"unknown diagram {target!r}, expected one of {DIAGRAM_NAMES}")


def _sources(graph: Diagram) -> List[str]:
    entering = {e.target for e in graph.edges}
    return [n for n in graph.nodes if n not in entering and n != graph.top]


def diagram_paths(
    target: Union[str, AlgebraDescriptor],
    start: Optional[str] = None,
    end: Optional[str] = None,
) -> List[Tuple[DiagramEdge, ...]]:
    """Simple arrow chains of a catalog.

    Isomorphism arrows may be walked in either direction. Without ``start``
    the chains begin at every node no arrow enters; without ``end`` they
    stop at the top node of the diagram.

    Raises:
        ValueError: If ``start`` or ``end`` is not a node of the diagram
    """
    graph = diagram(target)
    end = graph.top if end is None else end
    starts = _sources(graph) if start is None else [start]
    for node in starts + [end]:
        if node not in graph.nodes:
            raise ValueError(f"{node!r} is not a node of the {graph.name} diagram")
    paths: List[Tuple[DiagramEdge, ...]] = []

    def walk(node: str, visited: Tuple[str, ...], chain: Tuple[DiagramEdge, ...]):
        if node == end and chain:
            paths.append(chain)
            return
        for successor, edge in graph.successors(node):
            if successor not in visited:
                walk(successor, visited + (successor,), chain + (edge,))

    for node in starts:
        walk(node, (node,), ())
    logger.debug(f"{len(paths)} arrow chains in the {graph.name} diagram")
    return paths


def is_commuting(chain: Tuple[DiagramEdge, ...]) -> bool:
    return not any(edge.noncommuting for edge in chain)


def chain_nodes(chain: Tuple[DiagramEdge, ...]) -> List[str]:
    """Nodes visited by a chain, in order, following the walking direction."""
    if not chain:
        return []
    nodes = [chain[0].source]
    for edge in chain:
        nodes.append(edge.target if edge.source == nodes[-1] else edge.source)
    return nodes


def describe(graph: Diagram) -> Dict[str, object]:
    return {
        "name": graph.name,
        "top": graph.top,
        "nodes": list(graph.nodes),
        "edges": [str(e) for e in graph.edges],
        "noncommuting": [str(e) for e in graph.edges if e.noncommuting],
        "caveat": graph.caveat,
    }
