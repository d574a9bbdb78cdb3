"""Readers for Lie algebra (``.alg``) and gluing instance (``.glue``) files.

Both formats are line based; ``#`` starts a comment and blank lines are
ignored. An algebra file::

    dim 3
    basis X Y Z
    coordinates x y z
    invariant x^2 + y^2 + z^2
    bracket X Y = Z

A gluing file::

    variables q p
    order 3
    charts 1 2
    product moyal
    weight 1 = q^2
    weight 2 = 1 - q^2
    transition 2 1 = exp(h * (1/2)*d/dq*d/dp)
"""

import logging
import os
import re

from libstarprod.expr import (
    ExpressionError,
    parse_expression,
    parse_operator,
    parse_polynomial,
    to_polynomial,
)
from libstarprod.glue.gluing import GluingInstance
from libstarprod.glue.operators import DifferentialOperator, FormalOperator
from libstarprod.liealg import (
    BUILTINS,
    InvalidAlgebra,
    LieAlgebra,
    builtin,
    structure_from_brackets,
    validate,
)
from libstarprod.poly import PolyContext, total_degree

parent_logger = logging.getLogger(__name__)

EXPONENTIAL = re.compile(r"^exp\(\s*h\s*\*(?P<body>.*)\)$")


def _lines(path):
    """Yield ``(line number, keyword, rest)`` for every meaningful line."""
    try:
        with open(path, encoding="UTF-8") as file:
            content = file.read()
    except OSError as e:
        raise LoaderError(path, 0, e.strerror or str(e)) from e
    for number, raw in enumerate(content.splitlines(), start=1):
        text = raw.split("#", 1)[0].strip()
        if not text:
            continue
        keyword, _, rest = text.partition(" ")
        yield number, keyword, rest.strip()


def _linear(rhs: str, basis, context: PolyContext, path, number) -> dict:
    try:
        value = to_polynomial(parse_expression(rhs, basis), context)
    except ExpressionError as e:
        raise LoaderError(path, number, e.message) from e
    if total_degree(value) > 1 or value.coeff(1):
        reason = f"bracket value {rhs} is not linear in the basis"
        raise LoaderError(path, number, reason)
    return {name: value.coeff(context.var(name)) for name in basis}


def load_algebra(path) -> LieAlgebra:
    """Read and validate an algebra file; raises :class:`InvalidAlgebra` on failure."""
    logger = parent_logger.getChild("load_algebra")
    name = os.path.splitext(os.path.basename(path))[0]
    dim, basis, coordinates, invariant = None, None, None, None
    brackets = {}
    for number, keyword, rest in _lines(path):
        if keyword == "name":
            name = rest
        elif keyword == "dim":
            if not rest.isdigit():
                raise LoaderError(path, number, f"dimension {rest} is not an integer")
            dim = int(rest)
        elif keyword == "basis":
            basis = tuple(rest.split())
        elif keyword == "coordinates":
            coordinates = tuple(rest.split())
        elif keyword == "invariant":
            invariant = rest
        elif keyword == "bracket":
            if basis is None:
                raise LoaderError(path, number, "bracket before basis")
            left, equals, rhs = rest.partition("=")
            pair = tuple(left.split())
            if not equals or len(pair) != 2 or not set(pair) <= set(basis):
                raise LoaderError(path, number, f"malformed bracket {rest}")
            context = PolyContext(basis)
            brackets[pair] = _linear(rhs.strip(), basis, context, path, number)
        else:
            raise LoaderError(path, number, f"unknown keyword {keyword}")
    if basis is None:
        raise LoaderError(path, 0, "missing basis")
    if dim is not None and dim != len(basis):
        raise LoaderError(path, 0, f"dim {dim} does not match {len(basis)} basis names")
    if coordinates is None:
        coordinates = tuple(b.lower() for b in basis)
    if len(coordinates) != len(basis):
        raise LoaderError(path, 0, "coordinates do not match the basis")
    algebra = LieAlgebra(
        name, basis, coordinates, structure_from_brackets(basis, brackets), invariant
    )
    report = validate(algebra)
    if not report.passed:
        raise InvalidAlgebra(report)
    logger.info("loaded %s of dimension %s from %s", name, len(basis), path)
    return algebra


def resolve_algebra(source: str) -> LieAlgebra:
    """A builtin name, or the path of an algebra file."""
    if source in BUILTINS:
        return builtin(source)
    return load_algebra(source)


def _transition(rhs: str, context: PolyContext, order: int, path, number):
    if rhs == "id":
        return FormalOperator.identity(context, order)
    match = EXPONENTIAL.match(rhs)
    if match is None:
        raise LoaderError(path, number, f"transition {rhs} is not id or exp(h * ...)")
    try:
        operator = parse_operator(match.group("body").strip(), context)
    except ExpressionError as e:
        raise LoaderError(path, number, e.message) from e
    zero = DifferentialOperator.zero(context)
    return FormalOperator.exp(FormalOperator.of([zero, operator], order))


def load_gluing(path, order=None) -> GluingInstance:
    """Read a gluing file; ``order`` overrides the file's jet order."""
    name = os.path.splitext(os.path.basename(path))[0]
    variables, charts, file_order = None, None, 3
    weights, transitions = {}, []
    for number, keyword, rest in _lines(path):
        if keyword == "variables":
            variables = tuple(rest.split())
        elif keyword == "order":
            if not rest.isdigit():
                raise LoaderError(path, number, f"order {rest} is not an integer")
            file_order = int(rest)
        elif keyword == "charts":
            charts = tuple(rest.split())
        elif keyword == "product":
            if rest != "moyal":
                raise LoaderError(path, number, f"unsupported product {rest}")
        elif keyword in ("weight", "transition"):
            left, equals, rhs = rest.partition("=")
            labels = tuple(left.split())
            arity = 1 if keyword == "weight" else 2
            if not equals or len(labels) != arity:
                raise LoaderError(path, number, f"malformed {keyword} {rest}")
            if keyword == "weight":
                weights[labels[0]] = (number, rhs.strip())
            else:
                transitions.append((number, labels, rhs.strip()))
        else:
            raise LoaderError(path, number, f"unknown keyword {keyword}")
    if variables is None or charts is None:
        raise LoaderError(path, 0, "variables and charts are required")
    order = file_order if order is None else order
    context = PolyContext(variables)
    parsed_weights = {}
    for chart, (number, rhs) in weights.items():
        try:
            parsed_weights[chart] = parse_polynomial(rhs, context)
        except ExpressionError as e:
            raise LoaderError(path, number, e.message) from e
    parsed_transitions = {
        labels: _transition(rhs, context, order, path, number)
        for number, labels, rhs in transitions
    }
    return GluingInstance(
        name, context, charts, order, parsed_weights, parsed_transitions
    )


class LoaderError(Exception):
    """Raise when an algebra or gluing file cannot be read."""

    def __init__(self, path=None, line: int = 0, reason: str = ""):
        self.path = path
        self.line = line
        self.reason = reason
        self.message = f"{path}:{line}: {reason}"
        super().__init__(self.message)
