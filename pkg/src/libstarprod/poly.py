"""Exact commutative polynomials in a fixed variable context."""

from itertools import combinations_with_replacement, product
import logging

from sympy import Symbol
from sympy.polys.domains import QQ, QQ_I
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyRing

DEFORMATION = "h"
AUX_PREFIX = "t"

parent_logger = logging.getLogger(__name__)


class PolyContext:
    """Ordered variable list and coefficient field shared by related polynomials.

    Variables are laid out as coordinates, then ``h``, then commuting
    parameters, then auxiliary parameters. Polynomials are elements of a
    sympy ``PolyRing`` over this list with the graded lexicographic order.
    """

    def __init__(self, coordinates, params=(), aux=(), domain=QQ):
        names = (*coordinates, DEFORMATION, *params, *aux)
        duplicates = sorted({name for name in names if names.count(name) > 1})
        if duplicates:
            raise DuplicateVariable(duplicates)
        self.coordinates = tuple(coordinates)
        self.params = tuple(params)
        self.aux = tuple(aux)
        self.names = names
        self.domain = domain
        self.ring = PolyRing([Symbol(name) for name in names], domain, grlex)
        self.h_index = len(self.coordinates)
        self.aux_start = len(names) - len(self.aux)

    def __eq__(self, other):
        return isinstance(other, PolyContext) and self.ring == other.ring

    def __hash__(self):
        return hash(self.ring)

    def __repr__(self):
        return f"PolyContext({', '.join(self.names)}; {self.domain})"

    @property
    def zero(self):
        return self.ring.zero

    @property
    def one(self):
        return self.ring.one

    @property
    def h(self):
        """The deformation parameter as a polynomial."""
        return self.ring.gens[self.h_index]

    def index(self, name: str) -> int:
        """Return the position of ``name`` in the variable list."""
        try:
            return self.names.index(name)
        except ValueError as e:
            raise VariableNotInContext(name, self.names) from e

    def var(self, name: str):
        """Return the variable ``name`` as a polynomial."""
        return self.ring.gens[self.index(name)]

    def constant(self, value):
        """Return ``value`` as a constant polynomial."""
        return self.ring.ground_new(self.scalar(value))

    def scalar(self, value):
        """Convert an int, a pair ``(numerator, denominator)`` or a field element."""
        if isinstance(value, tuple):
            value = QQ(*value)
        if isinstance(value, int):
            return self.domain.convert(value)
        if self.domain.of_type(value):
            return value
        return self.domain.convert_from(value, QQ)

    def monomial(self, exponents):
        """Return the monomial with the given full exponent vector."""
        return self.ring.term_new(tuple(exponents), self.domain.one)

    def coordinate_monomial(self, alpha):
        """Return the monomial with exponent ``alpha`` in the coordinates."""
        padding = (0,) * (len(self.names) - len(self.coordinates))
        return self.monomial(tuple(alpha) + padding)

    def owns(self, f) -> bool:
        """Return true if ``f`` is a polynomial of this context."""
        return getattr(f, "ring", None) == self.ring

    def convert(self, f):
        """Move ``f`` from another context into this one, matching variables by name."""
        if self.owns(f):
            return f
        source = [str(symbol) for symbol in f.ring.symbols]
        positions = []
        for name in source:
            positions.append(self.names.index(name) if name in self.names else None)
        terms = {}
        for monom, coeff in f.items():
            target = [0] * len(self.names)
            for position, name, exponent in zip(positions, source, monom):
                if not exponent:
                    continue
                if position is None:
                    raise VariableNotInContext(name, self.names)
                target[position] = exponent
            terms[tuple(target)] = self.scalar(coeff)
        return self.ring.from_dict(terms)


def _check(f, g):
    if f.ring != g.ring:
        raise ContextMismatch(f.ring, g.ring)


def _position(ring, v) -> int:
    if isinstance(v, str):
        names = [str(symbol) for symbol in ring.symbols]
        if v not in names:
            raise VariableNotInContext(v, names)
        return names.index(v)
    return ring.index(v)


def _h_position(ring) -> int:
    return _position(ring, DEFORMATION)


def generator(ring, name: str):
    """Return the generator of ``ring`` called ``name``."""
    return ring.gens[_position(ring, name)]


def add(f, g):
    """Return ``f + g``."""
    _check(f, g)
    return f + g


def mul(f, g):
    """Return ``f * g``."""
    _check(f, g)
    return f * g


def partial(f, v):
    """Return the partial derivative of ``f`` in ``v``, a name or a generator."""
    return f.diff(f.ring.gens[_position(f.ring, v)])


def derivative(f, alpha, variables):
    """Apply the iterated partial derivative of multi-index ``alpha``."""
    for v, count in zip(variables, alpha):
        for _ in range(count):
            if not f:
                return f
            f = partial(f, v)
    return f


def coefficient_of(f, m):
    """Return the coefficient of the monomial ``m`` (polynomial or exponent tuple)."""
    if not isinstance(m, tuple):
        if len(m) != 1:
            raise NotConstant(m)
        m = next(iter(m.keys()))
    return dict.get(f, m, f.ring.domain.zero)


def truncate_h(f, order: int):
    """Drop every term whose h-exponent exceeds ``order``."""
    i = _h_position(f.ring)
    if all(monom[i] <= order for monom in f.keys()):
        return f
    return f.ring.from_dict({m: c for m, c in f.items() if m[i] <= order})


def h_coefficient(f, k: int):
    """Return the coefficient of h^k in ``f`` with h removed."""
    i = _h_position(f.ring)
    return f.ring.from_dict(
        {m[:i] + (0,) + m[i + 1 :]: c for m, c in f.items() if m[i] == k}
    )


def divide_h(f):
    """Return ``f / h``; every term of ``f`` must contain ``h``."""
    i = _h_position(f.ring)
    if any(monom[i] == 0 for monom in f.keys()):
        raise NotDivisible(f)
    return f.ring.from_dict(
        {m[:i] + (m[i] - 1,) + m[i + 1 :]: c for m, c in f.items()}
    )


def h_degree(f) -> int:
    """Return the highest power of h in ``f`` (0 for the zero polynomial)."""
    i = _h_position(f.ring)
    return max((monom[i] for monom in f.keys()), default=0)


def total_degree(f, variables=None) -> int:
    """Total degree of ``f`` in ``variables`` (all variables by default)."""
    if variables is None:
        positions = range(f.ring.ngens)
    else:
        positions = [_position(f.ring, v) for v in variables]
    return max((sum(m[i] for i in positions) for m in f.keys()), default=0)


def evaluate(f, values: dict):
    """Substitute exact values for named variables, keeping the context."""
    ring = f.ring
    pairs = [
        (ring.gens[_position(ring, name)], value) for name, value in values.items()
    ]
    return f.subs(pairs) if pairs else f


def ground_value(f):
    """Return the constant value of ``f``; raise if it still has variables."""
    if not f:
        return f.ring.domain.zero
    if not f.is_ground:
        raise NotConstant(f)
    return dict.get(f, f.ring.zero_monom)


def coefficient_in(f, v, exponent: int):
    """Coefficient of ``v**exponent`` in ``f`` as a polynomial of the same ring."""
    i = _position(f.ring, v)
    return f.ring.from_dict(
        {m[:i] + (0,) + m[i + 1 :]: c for m, c in f.items() if m[i] == exponent}
    )


def divide_monic(f, g, v):
    """Divide ``f`` by ``g`` treating both as univariate in ``v``.

    ``g`` must have leading part exactly ``v**d``. Returns ``(quotient,
    remainder)`` with ``f == quotient*g + remainder`` and the ``v``-degree of
    the remainder below ``d``.
    """
    _check(f, g)
    gen = f.ring.gens[_position(f.ring, v)]
    d = g.degree(gen)
    if d < 1 or coefficient_in(g, gen, d) != 1:
        raise NotMonic(g, str(gen))
    quotient, remainder = f.ring.zero, f
    while remainder and remainder.degree(gen) >= d:
        e = remainder.degree(gen)
        term = coefficient_in(remainder, gen, e) * gen ** (e - d)
        quotient += term
        remainder -= term * g
    return quotient, remainder


def coordinate_split(f, context: PolyContext) -> dict:
    """Group ``f`` by coordinate exponent.

    Values are polynomials in the non-coordinate variables (h, parameters,
    auxiliaries) of the same ring.
    """
    n = len(context.coordinates)
    zeros = (0,) * n
    parts = {}
    for monom, coeff in f.items():
        parts.setdefault(monom[:n], {})[zeros + monom[n:]] = coeff
    return {alpha: context.ring.from_dict(terms) for alpha, terms in parts.items()}


def exponent_vectors(n: int, degree: int, min_degree: int = 0):
    """Exponent vectors of length ``n`` by ascending degree, deterministic order."""
    vectors = []
    for d in range(min_degree, degree + 1):
        for combo in combinations_with_replacement(range(n), d):
            alpha = [0] * n
            for i in combo:
                alpha[i] += 1
            vectors.append(tuple(alpha))
    return vectors


def monomials(context: PolyContext, degree: int, min_degree: int = 0) -> list:
    """Coordinate monomials of degree between ``min_degree`` and ``degree``."""
    n = len(context.coordinates)
    return [
        context.coordinate_monomial(alpha)
        for alpha in exponent_vectors(n, degree, min_degree)
    ]


def monomial_tuples(context: PolyContext, arity: int, total_degree: int) -> list:
    """Tuples of coordinate monomials whose degrees sum to at most ``total_degree``."""
    n = len(context.coordinates)
    vectors = exponent_vectors(n, total_degree)
    return [
        tuple(context.coordinate_monomial(alpha) for alpha in combo)
        for combo in product(vectors, repeat=arity)
        if sum(sum(alpha) for alpha in combo) <= total_degree
    ]


def linear_substitution(f, variables, matrix):
    """Substitute ``v_i -> sum_j matrix[i][j] v_j`` simultaneously."""
    ring = f.ring
    gens = [ring.gens[_position(ring, v)] for v in variables]
    images = []
    for row in matrix:
        image = ring.zero
        for entry, gen in zip(row, gens):
            if entry:
                image += gen * entry
        images.append(image)
    return f.compose(list(zip(gens, images)))


def is_gaussian(value) -> bool:
    return hasattr(value, "x") and hasattr(value, "y")


def _format_rational(value, parenthesize=False) -> str:
    numerator, denominator = int(QQ.numer(value)), int(QQ.denom(value))
    if denominator == 1:
        return str(numerator)
    text = f"{numerator}/{denominator}"
    return f"({text})" if parenthesize else text


def format_scalar(value) -> str:
    """Exact text for a rational or Gaussian rational."""
    if not is_gaussian(value):
        return _format_rational(QQ.convert(value) if isinstance(value, int) else value)
    real, imag = value.x, value.y
    if not imag:
        return _format_rational(real)
    magnitude = abs(imag)
    imaginary = "i" if magnitude == 1 else f"{_format_rational(magnitude)}*i"
    if not real:
        return f"-{imaginary}" if imag < 0 else imaginary
    sign = "-" if imag < 0 else "+"
    return f"{_format_rational(real)} {sign} {imaginary}"


def monomial_text(names, monom) -> str:
    """Factors of one term; h and the parameters come before the coordinates."""
    pairs = list(zip(names, monom))
    if DEFORMATION in names:
        split = list(names).index(DEFORMATION)
        pairs = pairs[split:] + pairs[:split]
    return "*".join(name if e == 1 else f"{name}^{e}" for name, e in pairs if e)


def format_term(coeff, body: str, first: bool) -> str:
    """Render one signed term ``coeff*body`` for a sum."""
    if is_gaussian(coeff):
        text = f"({format_scalar(coeff)})"
        text = f"{text}*{body}" if body else text
        return text if first else f" + {text}"
    negative = coeff < 0
    magnitude = -coeff if negative else coeff
    if not body:
        text = _format_rational(magnitude)
    elif magnitude == 1:
        text = body
    else:
        text = f"{_format_rational(magnitude, parenthesize=True)}*{body}"
    if first:
        return f"-{text}" if negative else text
    return f" - {text}" if negative else f" + {text}"


def format_polynomial(f) -> str:
    """Canonical graded-lex text, for example ``x*y + (1/2)*h*z``."""
    if not f:
        return "0"
    names = [str(symbol) for symbol in f.ring.symbols]
    pieces = [
        format_term(coeff, monomial_text(names, monom), first=(k == 0))
        for k, (monom, coeff) in enumerate(f.terms())
    ]
    return "".join(pieces)


def gaussian(value):
    """Embed a rational into the Gaussian rationals."""
    if is_gaussian(value):
        return value
    if isinstance(value, int):
        return QQ_I.convert(value)
    return QQ_I.convert_from(value, QQ)


class ContextMismatch(Exception):
    """Raise when combining polynomials from different variable contexts."""

    def __init__(self, left=None, right=None):
        self.left = left
        self.right = right
        self.message = f"Polynomials live in different contexts: {left} and {right}"
        super().__init__(self.message)


class VariableNotInContext(Exception):
    """Raise when a variable is not part of a context."""

    def __init__(self, name: str = "", names=()):
        self.name = name
        self.names = tuple(names)
        self.message = f"Variable {name} is not one of {', '.join(self.names)}"
        super().__init__(self.message)


class DuplicateVariable(Exception):
    """Raise when a context declares the same variable twice."""

    def __init__(self, names=()):
        self.names = tuple(names)
        self.message = f"Variables declared twice: {', '.join(self.names)}"
        super().__init__(self.message)


class NotMonic(Exception):
    """Raise when dividing by a polynomial without a unit pure-power leading part."""

    def __init__(self, divisor=None, variable: str = ""):
        self.divisor = divisor
        self.variable = variable
        self.message = f"{divisor} is not monic in {variable}"
        super().__init__(self.message)


class NotConstant(Exception):
    """Raise when a constant was expected."""

    def __init__(self, value=None):
        self.value = value
        self.message = f"{value} is not a constant"
        super().__init__(self.message)


class NotDivisible(Exception):
    """Raise when a polynomial is not divisible by h."""

    def __init__(self, value=None):
        self.value = value
        self.message = f"{value} is not divisible by h"
        super().__init__(self.message)
