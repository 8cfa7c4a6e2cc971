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
"""Expression language for maps and algebras, command dispatch and JSON reports.

Expressions are nested constructor calls such as
``comp(std(SP_TO_SU,2),rho(2))`` or ``dsum(rho(1),rho(2),same_source=true)``.
Lists are written ``[1,-1]``; ``#`` starts a comment running to the end of
the line.
"""

import json
import logging
import os
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Sequence, Tuple, Union

from lark import Lark, Transformer, v_args
from lark.exceptions import UnexpectedInput, VisitError
from sympy import Rational, S, sympify

from tightmaps import __version__
from tightmaps.algebra_core import (
    SO2N,
    SOSTAR,
    AlgebraDescriptor,
    Homomorphism,
    direct_sum_algebra,
    identity,
    make_algebra,
    polydisc,
)
from tightmaps.branching import (
    DecompositionReport,
    invariant_decomposition_sostar,
    invariant_decomposition_su,
    su_level,
)
from tightmaps.catalog import (
    compose,
    direct_product,
    direct_sum,
    disc,
    gl2_example,
    pad_target,
    rho_odd,
    spin,
    std_inclusion,
    tensor_product,
    verify_homomorphism,
)
from tightmaps.config import TightmapsConfig
from tightmaps.diagrams import (
    DIAGRAM_NAMES,
    chain_nodes,
    describe,
    diagram,
    diagram_paths,
    is_commuting,
)
from tightmaps.hull_classify import canonicalize, hermitian_hull
from tightmaps.shapes import (
    ShapeEntry,
    ShapeRecord,
    enumerate_shapes,
    make_shape,
    realize_shape,
)
from tightmaps.tightness import TightnessCertificate, certify

# Configure logging
logger = logging.getLogger(__name__)

COMMANDS = (
    "verify",
    "certify",
    "decompose",
    "hull",
    "enumerate",
    "realize",
    "canonicalize",
    "catalog",
)
EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT_ERROR = 2

GRAMMAR = r"""
?start: expr

?expr: call
     | list
     | NAME -> name
     | SIGNED_INT -> integer

call: NAME "(" _arguments? ")"
_arguments: _argument ("," _argument)*
_argument: expr | kwarg
kwarg: NAME "=" expr
list: "[" (expr ("," expr)*)? "]"

COMMENT: /#[^\n]*/

%import common.CNAME -> NAME
%import common.SIGNED_INT
%import common.WS
%ignore WS
%ignore COMMENT
"""

# name -> (least positional arguments, most positional arguments, keywords)
CONSTRUCTORS = {
    "alg": (1, None, ()),
    "oplus": (2, None, ()),
    "std": (2, 3, ()),
    "rho": (1, 1, ()),
    "spin": (1, 2, ()),
    "disc": (2, 2, ()),
    "dsum": (2, 2, ("same_source",)),
    "comp": (2, 2, ()),
    "polydisc": (1, 1, ()),
    "id": (1, 1, ()),
    "tensor": (2, 2, ()),
    "gl2": (0, 0, ()),
    "pad": (2, 2, ()),
    "prod": (1, None, ()),
    "shape": (2, None, ()),
    "entry": (3, 4, ()),
}


class SpecSyntaxError(ValueError):
    """Malformed expression, with the 1-based position of the problem."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class SpecNode:
    """A constructor call. Arguments are nodes, ints, names or tuples (lists)."""

    name: str
    args: Tuple[Any, ...] = ()
    kwargs: Tuple[Tuple[str, Any], ...] = ()
    line: int = field(default=1, compare=False)
    column: int = field(default=1, compare=False)


@dataclass(frozen=True)
class _Keyword:
    name: str
    value: Any


@v_args(meta=True)
class _SpecBuilder(Transformer):
    def name(self, meta, children):
        return str(children[0])

    def integer(self, meta, children):
        return int(children[0])

    def list(self, meta, children):
        return tuple(children)

    def kwarg(self, meta, children):
        return _Keyword(str(children[0]), children[1])

    def call(self, meta, children):
        token, rest = children[0], children[1:]
        name = str(token)
        if name not in CONSTRUCTORS:
            raise SpecSyntaxError(f"unknown constructor {name!r}", token.line, token.column)
        args = tuple(c for c in rest if not isinstance(c, _Keyword))
        kwargs = tuple((c.name, c.value) for c in rest if isinstance(c, _Keyword))
        least, most, keywords = CONSTRUCTORS[name]
        if len(args) < least or (most is not None and len(args) > most):
            expected = f"{least}" if least == most else f"{least}..{most or 'n'}"
            raise SpecSyntaxError(
                f"{name} takes {expected} arguments, got {len(args)}",
                token.line,
                token.column,
            )
        for key, _ in kwargs:
            if key not in keywords:
                raise SpecSyntaxError(
                    f"{name} has no keyword {key!r}", token.line, token.column
                )
        return SpecNode(name, args, kwargs, token.line, token.column)


_PARSER = Lark(GRAMMAR, parser="lalr", propagate_positions=True)
_BUILDER = _SpecBuilder()


def _end_position(text: str) -> Tuple[int, int]:
    lines = text.split("\n")
    return len(lines), len(lines[-1]) + 1


def parse_spec(text: str) -> SpecNode:
    """Parse an expression into its constructor tree.

    Raises:
        SpecSyntaxError: On lexical errors, unknown constructors or arity
            mismatches, with line and column
    """
    try:
        tree = _PARSER.parse(text)
    except UnexpectedInput as e:
        line, column = (e.line, e.column) if e.line > 0 else _end_position(text)
        raise SpecSyntaxError(f"unexpected input: {str(e).splitlines()[0]}", line, column) from None
    try:
        node = _BUILDER.transform(tree)
    except VisitError as e:
        raise e.orig_exc from None
    if not isinstance(node, SpecNode):
        raise SpecSyntaxError("expected a constructor call", 1, 1)
    return node


def print_spec(value: Any) -> str:
    """Canonical text of an expression; parse_spec reads it back unchanged."""
    if isinstance(value, SpecNode):
        parts = [print_spec(a) for a in value.args]
        parts += [f"{key}={print_spec(v)}" for key, v in value.kwargs]
        return f"{value.name}({','.join(parts)})"
    if isinstance(value, tuple):
        return "[" + ",".join(print_spec(v) for v in value) + "]"
    return str(value)


def _where(node: SpecNode) -> str:
    return f"{node.line}:{node.column}: {node.name}"


def _int(node: SpecNode, value: Any) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise TypeError(f"{_where(node)} expects an integer, got {print_spec(value)}")
    return value


def _word(node: SpecNode, value: Any) -> str:
    if not isinstance(value, str):
        raise TypeError(f"{_where(node)} expects a name, got {print_spec(value)}")
    return value


def _flag(node: SpecNode, value: Any) -> bool:
    word = _word(node, value).lower()
    if word not in ("true", "false"):
        raise TypeError(f"{_where(node)} expects true or false, got {value}")
    return word == "true"


def _ints(node: SpecNode, value: Any) -> Tuple[int, ...]:
    if not isinstance(value, tuple):
        raise TypeError(f"{_where(node)} expects a list, got {print_spec(value)}")
    return tuple(_int(node, v) for v in value)


def _typed(node: SpecNode, value: Any, kind: type, what: str):
    if not isinstance(value, SpecNode):
        raise TypeError(f"{_where(node)} expects {what}, got {print_spec(value)}")
    result = elaborate(value)
    if not isinstance(result, kind):
        raise TypeError(f"{_where(node)} expects {what}, got {print_spec(value)}")
    return result


def _algebra(node, value) -> AlgebraDescriptor:
    return _typed(node, value, AlgebraDescriptor, "an algebra")


def _map(node, value) -> Homomorphism:
    return _typed(node, value, Homomorphism, "a homomorphism")


def _alg(node: SpecNode) -> AlgebraDescriptor:
    family = _word(node, node.args[0]).upper()
    params = [_int(node, v) for v in node.args[1:]]
    # alg(SO2N,2,n) reads as so(2,n)
    if family == SO2N and len(params) == 2 and params[0] == 2:
        params = params[1:]
    return make_algebra(family, *params)


def _entry(node: SpecNode) -> ShapeEntry:
    slot = _int(node, node.args[0])
    kind = _word(node, node.args[1])
    params = _ints(node, node.args[2])
    multiplicity = _int(node, node.args[3]) if len(node.args) > 3 else 1
    return ShapeEntry(slot, kind, params, multiplicity)


def _shape(node: SpecNode) -> ShapeRecord:
    target = _algebra(node, node.args[0])
    entries = [_typed(node, v, ShapeEntry, "a shape entry") for v in node.args[1:]]
    return make_shape(target, entries)


_HANDLERS = {
    "alg": _alg,
    "oplus": lambda n: direct_sum_algebra(*(_algebra(n, v) for v in n.args)),
    "std": lambda n: std_inclusion(_word(n, n.args[0]), *(_int(n, v) for v in n.args[1:])),
    "rho": lambda n: rho_odd(_int(n, n.args[0])),
    "spin": lambda n: spin(*(_int(n, v) for v in n.args)),
    "disc": lambda n: disc(_algebra(n, n.args[0]), _ints(n, n.args[1])),
    "dsum": lambda n: direct_sum(
        _map(n, n.args[0]),
        _map(n, n.args[1]),
        same_source=_flag(n, dict(n.kwargs).get("same_source", "false")),
    ),
    "comp": lambda n: compose(_map(n, n.args[0]), _map(n, n.args[1])),
    "polydisc": lambda n: polydisc(_algebra(n, n.args[0])),
    "id": lambda n: identity(_algebra(n, n.args[0])),
    "tensor": lambda n: tensor_product(_map(n, n.args[0]), _map(n, n.args[1])),
    "gl2": lambda n: gl2_example(),
    "pad": lambda n: pad_target(_map(n, n.args[0]), _algebra(n, n.args[1])),
    "prod": lambda n: direct_product([_map(n, v) for v in n.args]),
    "shape": _shape,
    "entry": _entry,
}


def elaborate(node: SpecNode) -> Union[AlgebraDescriptor, Homomorphism, ShapeRecord, ShapeEntry]:
    """Build the algebra, homomorphism or shape an expression denotes.

    Raises:
        TypeError: If an argument has the wrong kind
        ValueError: If the library rejects the parameters
    """
    return _HANDLERS[node.name](node)


def algebra_spec(algebra: AlgebraDescriptor) -> str:
    parts = [
        f"alg({','.join([f.family] + [str(p) for p in f.params])})"
        for f in algebra.factors
    ]
    return parts[0] if len(parts) == 1 else f"oplus({','.join(parts)})"


def shape_spec(shape: ShapeRecord) -> str:
    entries = [
        f"entry({e.factor_slot},{e.kind},[{','.join(str(p) for p in e.params)}],{e.multiplicity})"
        for e in shape.entries
    ]
    return f"shape({','.join([algebra_spec(shape.target)] + entries)})"


def exact_string(value) -> str:
    """Exact text of a number: ``num/den`` for rationals, sympy syntax otherwise."""
    value = sympify(value)
    if value.is_Rational:
        return str(value.p) if value.q == 1 else f"{value.p}/{value.q}"
    return str(value)


def parse_exact(text: str):
    if "/" in text and "I" not in text and "sqrt" not in text:
        numerator, denominator = text.split("/")
        return Rational(int(numerator), int(denominator))
    return S(text)


@dataclass
class ReportDocument:
    command: str
    expression: str
    payload: Dict[str, Any]
    version: str = __version__
    exact: bool = True

    def to_dict(self) -> Dict[str, Any]:
        return {
            "command": self.command,
            "expression": self.expression,
            "payload": self.payload,
            "version": self.version,
            "exact": self.exact,
        }

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "ReportDocument":
        data = json.loads(text)
        return cls(
            data["command"], data["expression"], data["payload"], data["version"], data["exact"]
        )


def certificate_payload(certificate: TightnessCertificate) -> Dict[str, Any]:
    return {
        "label": certificate.label,
        "factors": [str(f) for f, _ in certificate.per_factor],
        "alpha": [exact_string(a) for a in certificate.coefficients],
        "weighted_sum": exact_string(certificate.weighted_sum),
        "target_rank": certificate.target_rank,
        "tight": certificate.tight,
        "positive": certificate.positive,
        "holomorphic": certificate.holomorphic,
        "holomorphy_residual": exact_string(certificate.holomorphy_residual),
        "aligned": certificate.aligned,
    }


def decomposition_payload(report: DecompositionReport) -> Dict[str, Any]:
    blocks = []
    for block in report.blocks:
        entry = {
            "dimension": block.dimension,
            "signature": list(block.signature),
            "quaternionic": block.quaternionic,
            "anti_isomorphic_pair": block.anti_isomorphic_pair,
        }
        if block.components is not None:
            entry["components"] = [list(c) for c in block.components]
        blocks.append(entry)
    return {
        "label": report.label,
        "residual_kind": report.residual_kind,
        "blocks": blocks,
        "obstruction": report.obstruction_detail.describe()
        if report.obstruction_detail
        else None,
        "commutant_dimension": report.commutant_dimension,
    }


def read_expression(argument: str) -> str:
    """The expression text of a path to a file, or the argument itself."""
    if os.path.isfile(argument):
        with open(argument, encoding="utf-8") as f:
            return f.read()
    return argument


def _single(command: str, arguments: Sequence[str]) -> str:
    if len(arguments) != 1:
        raise ValueError(f"{command} takes one expression, got {len(arguments)} arguments")
    return read_expression(arguments[0])


def _elaborated(text: str, kind: type, what: str):
    value = elaborate(parse_spec(text))
    if not isinstance(value, kind):
        raise TypeError(f"expected {what}, got {text.strip()}")
    return value


def _enumeration_target(arguments: Sequence[str]) -> AlgebraDescriptor:
    if len(arguments) == 1:
        return _elaborated(read_expression(arguments[0]), AlgebraDescriptor, "an algebra")
    if not arguments:
        raise ValueError("enumerate needs a target")
    try:
        params = [int(a) for a in arguments[1:]]
    except ValueError:
        raise ValueError(f"enumerate expects integer parameters, got {arguments[1:]}") from None
    return make_algebra(arguments[0].upper(), *params)


def _dispatch(command, arguments, flags, config) -> Tuple[str, Dict[str, Any], int]:
    seed = config.seed if flags.get("seed") is None else flags["seed"]
    if command == "enumerate":
        target = _enumeration_target(arguments)
        bounds = flags.get("bounds")
        bounds = config.default_bounds if bounds is None else bounds
        shapes = enumerate_shapes(target, bounds)
        payload = {
            "target": str(target),
            "count": len(shapes),
            "shapes": [
                {
                    "shape": shape_spec(s),
                    "source": str(s.source),
                    "capacity_used": s.capacity_used,
                    "constraint": s.constraint,
                }
                for s in shapes
            ],
        }
        return " ".join(arguments), payload, EXIT_OK
    if command == "catalog":
        if len(arguments) != 1:
            raise ValueError(f"catalog takes one of {DIAGRAM_NAMES} or an so(2,p) algebra")
        name = arguments[0]
        target = name if name.upper() in DIAGRAM_NAMES else _elaborated(
            read_expression(name), AlgebraDescriptor, "an algebra"
        )
        payload = describe(diagram(target))
        payload["paths"] = [
            {"nodes": chain_nodes(chain), "commuting": is_commuting(chain)}
            for chain in diagram_paths(target)
        ]
        return name, payload, EXIT_OK

    text = _single(command, arguments)
    expression = text.strip()
    if command == "canonicalize":
        algebra = _elaborated(text, AlgebraDescriptor, "an algebra")
        result = canonicalize(algebra)
        return expression, {"input": str(algebra), "canonical": str(result)}, EXIT_OK
    if command == "realize":
        shape = _elaborated(text, ShapeRecord, "a shape")
        rho = realize_shape(shape)
        residual = verify_homomorphism(rho)
        payload = {
            "shape": shape_spec(shape),
            "label": rho.label,
            "residual": exact_string(residual),
            "certificate": certificate_payload(certify(rho)),
        }
        return expression, payload, EXIT_OK if residual == 0 else EXIT_NEGATIVE

    rho = _elaborated(text, Homomorphism, "a homomorphism")
    if command == "verify":
        residual = verify_homomorphism(rho)
        payload = {
            "label": rho.label,
            "source": str(rho.source),
            "target": str(rho.target),
            "residual": exact_string(residual),
        }
        return expression, payload, EXIT_OK if residual == 0 else EXIT_NEGATIVE
    if command == "certify":
        certificate = certify(rho)
        failed = (flags.get("expect_tight") and not certificate.tight) or (
            flags.get("expect_holomorphic") and not certificate.holomorphic
        )
        return expression, certificate_payload(certificate), EXIT_NEGATIVE if failed else EXIT_OK
    if command == "decompose":
        if rho.target.is_simple and rho.target.factors[0].family == SOSTAR:
            report = invariant_decomposition_sostar(rho, seed, config.max_draws)
        else:
            report = invariant_decomposition_su(rho, seed, config.max_draws)
        return expression, decomposition_payload(report), EXIT_OK
    if command == "hull":
        report = invariant_decomposition_su(su_level(rho), seed, config.max_draws)
        result = hermitian_hull(rho, report)
        payload = {
            "label": rho.label,
            "hull": str(result.hull),
            "per_factor_detail": [
                {"factor": index, "symplectic_ranks": list(ranks)}
                for index, ranks in result.per_factor_detail
            ],
            "holomorphic_tight_into_target": result.holomorphic_tight_into_target,
            "certificate": certificate_payload(result.certificate),
        }
        return expression, payload, EXIT_OK if result.holomorphic_tight_into_target else EXIT_NEGATIVE
    raise ValueError(f"unknown command {command!r}, expected one of {COMMANDS}")


def run(
    command: str,
    arguments: Sequence[str],
    expect_tight: bool = False,
    expect_holomorphic: bool = False,
    bounds: Optional[int] = None,
    seed: Optional[int] = None,
    config: Optional[TightmapsConfig] = None,
) -> Tuple[ReportDocument, int]:
    """Execute one command and build its report.

    Args:
        command: One of COMMANDS
        arguments: Expressions, file paths or enumeration parameters
        expect_tight: Exit with 1 if a certified map is not tight
        expect_holomorphic: Exit with 1 if a certified map is not holomorphic
        bounds: Enumeration cap overriding the configuration
        seed: Decomposition seed overriding the configuration
        config: Loaded configuration, read from the default path when omitted

    Returns:
        The report and the process exit code (0 success, 1 mathematical
        negative, 2 input error)
    """
    config = config or TightmapsConfig()
    flags = {
        "expect_tight": expect_tight,
        "expect_holomorphic": expect_holomorphic,
        "bounds": bounds,
        "seed": seed,
    }
    try:
        expression, payload, code = _dispatch(command, list(arguments), flags, config)
    except (ValueError, TypeError) as e:
        logger.error(f"{command} failed: {e}")
        return ReportDocument(command, " ".join(arguments), {"error": str(e)}), EXIT_INPUT_ERROR
    return ReportDocument(command, expression, payload), code
