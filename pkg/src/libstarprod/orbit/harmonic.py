"""Harmonic decomposition of polynomials on su(2)*.

Every f is written as sum_r p^r f_r with each f_r harmonic.
"""

import logging

from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.exceptions import DMError

from libstarprod.poly import PolyContext, exponent_vectors, partial

parent_logger = logging.getLogger(__name__)


def laplacian(f, variables):
    """Sum of the second derivatives of ``f`` in ``variables``."""
    result = f.ring.zero
    for v in variables:
        first = partial(f, v)
        if first:
            result += partial(first, v)
    return result


def invariant(context: PolyContext):
    """The sum of squares of the coordinates."""
    result = context.zero
    for name in context.coordinates:
        result += context.var(name) ** 2
    return result


def _split(f, context: PolyContext) -> dict:
    """``{(outer monomial, degree): coordinate-only homogeneous part}``."""
    n = len(context.coordinates)
    zeros = (0,) * n
    parts = {}
    for monom, coeff in f.items():
        outer = zeros + monom[n:]
        inner = monom[:n] + (0,) * (len(monom) - n)
        parts.setdefault((outer, sum(monom[:n])), {})[inner] = coeff
    return {key: context.ring.from_dict(terms) for key, terms in parts.items()}


def _coefficients(f, context: PolyContext, degree: int) -> list:
    padding = (0,) * (len(context.names) - len(context.coordinates))
    zero = context.domain.zero
    return [
        dict.get(f, alpha + padding, zero)
        for alpha in exponent_vectors(len(context.coordinates), degree, degree)
    ]


def _homogeneous(g, degree: int, context: PolyContext) -> dict:
    """Decompose a homogeneous coordinate polynomial as ``{power: harmonic}``."""
    if degree < 2:
        return {0: g} if g else {}
    coordinates = context.coordinates
    lower = degree - 2
    p = invariant(context)
    basis = [
        context.coordinate_monomial(alpha)
        for alpha in exponent_vectors(len(coordinates), lower, lower)
    ]
    columns = [
        _coefficients(laplacian(p * m, coordinates), context, lower) for m in basis
    ]
    size = len(basis)
    matrix = DomainMatrix(
        [[columns[j][i] for j in range(size)] for i in range(size)],
        (size, size),
        context.domain,
    )
    target = _coefficients(laplacian(g, coordinates), context, lower)
    rhs = DomainMatrix([[value] for value in target], (size, 1), context.domain)
    try:
        solution = matrix.lu_solve(rhs).flat()
    except DMError as e:
        raise HarmonicSolveError(degree) from e
    u = context.zero
    for m, c in zip(basis, solution):
        if c:
            u += m * c
    harmonic = g - p * u
    if laplacian(harmonic, coordinates):
        raise HarmonicSolveError(degree)
    result = {0: harmonic} if harmonic else {}
    for power, part in _homogeneous(u, lower, context).items():
        result[power + 1] = part
    return result


def harmonic_decompose(f, context: PolyContext) -> list:
    """Unique ``[(r, f_r)]`` with ``f = sum p^r f_r`` and each ``f_r`` harmonic.

    Coefficients may involve ``h`` and parameters; those are carried through
    unchanged. Powers are listed in descending order.
    """
    merged = {}
    for (outer, degree), g in _split(f, context).items():
        scale = context.monomial(outer)
        for power, part in _homogeneous(g, degree, context).items():
            merged[power] = merged.get(power, context.zero) + part * scale
    powers = sorted(merged, reverse=True)
    return [(power, merged[power]) for power in powers if merged[power]]


def harmonic_compose(parts, context: PolyContext):
    """Reassemble ``sum p^r f_r``."""
    p = invariant(context)
    result = context.zero
    for power, part in parts:
        result += p**power * part
    return result


class HarmonicSolveError(Exception):
    """Raise when the degree-wise harmonic solve has no unique solution."""

    def __init__(self, degree: int = 0):
        self.degree = degree
        self.message = f"Harmonic decomposition failed in degree {degree}"
        super().__init__(self.message)
