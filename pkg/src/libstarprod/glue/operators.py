"""Differential operators with polynomial coefficients and their formal h-series."""

from dataclasses import dataclass
from itertools import product
from math import comb, factorial
from types import MappingProxyType
import logging

from sympy.polys.domains import QQ

from libstarprod.poly import PolyContext, derivative, format_polynomial, truncate_h

parent_logger = logging.getLogger(__name__)


def _below(alpha):
    return product(*(range(a + 1) for a in alpha))


def _binomial(alpha, gamma) -> int:
    result = 1
    for a, g in zip(alpha, gamma):
        result *= comb(a, g)
    return result


@dataclass(frozen=True, eq=False)
class DifferentialOperator:
    """Finite sum of ``coefficient * d^alpha`` over the coordinates of a context."""

    context: PolyContext
    terms: MappingProxyType

    @classmethod
    def of(cls, context: PolyContext, terms) -> "DifferentialOperator":
        clean = {}
        for alpha, coeff in dict(terms).items():
            if not context.owns(coeff):
                coeff = context.constant(coeff)
            total = clean.get(tuple(alpha), context.zero) + coeff
            if total:
                clean[tuple(alpha)] = total
            else:
                clean.pop(tuple(alpha), None)
        return cls(context, MappingProxyType(clean))

    @classmethod
    def identity(cls, context: PolyContext) -> "DifferentialOperator":
        return cls.of(context, {(0,) * len(context.coordinates): context.one})

    @classmethod
    def zero(cls, context: PolyContext) -> "DifferentialOperator":
        return cls.of(context, {})

    @classmethod
    def partial(cls, context: PolyContext, name: str) -> "DifferentialOperator":
        alpha = [0] * len(context.coordinates)
        alpha[context.coordinates.index(name)] = 1
        return cls.of(context, {tuple(alpha): context.one})

    @classmethod
    def multiplication(cls, context: PolyContext, f) -> "DifferentialOperator":
        return cls.of(context, {(0,) * len(context.coordinates): f})

    def __eq__(self, other):
        return isinstance(other, DifferentialOperator) and dict(self.terms) == dict(
            other.terms
        )

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other: "DifferentialOperator") -> "DifferentialOperator":
        terms = dict(self.terms)
        for alpha, coeff in other.terms.items():
            terms[alpha] = terms.get(alpha, self.context.zero) + coeff
        return DifferentialOperator.of(self.context, terms)

    def __neg__(self) -> "DifferentialOperator":
        return self.scale(-1)

    def __sub__(self, other: "DifferentialOperator") -> "DifferentialOperator":
        return self + (-other)

    def scale(self, f) -> "DifferentialOperator":
        """Left multiplication by a polynomial or scalar."""
        if not self.context.owns(f):
            f = self.context.constant(f)
        return DifferentialOperator.of(
            self.context, {alpha: f * c for alpha, c in self.terms.items()}
        )

    def __mul__(self, other: "DifferentialOperator") -> "DifferentialOperator":
        """Composition ``self o other`` by the Leibniz rule."""
        variables = self.context.coordinates
        terms = {}
        zero = self.context.zero
        for alpha, a in self.terms.items():
            for beta, b in other.terms.items():
                for gamma in _below(alpha):
                    db = derivative(b, gamma, variables)
                    if not db:
                        continue
                    key = tuple(x - g + y for x, g, y in zip(alpha, gamma, beta))
                    terms[key] = terms.get(key, zero) + a * db * _binomial(alpha, gamma)
        return DifferentialOperator.of(self.context, terms)

    def __call__(self, f):
        result = self.context.zero
        for alpha, coeff in self.terms.items():
            df = derivative(f, alpha, self.context.coordinates)
            if df:
                result += coeff * df
        return result

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for alpha in sorted(self.terms, key=lambda a: (sum(a), a), reverse=True):
            parts = [f"({format_polynomial(self.terms[alpha])})"]
            for name, e in zip(self.context.coordinates, alpha):
                parts.extend([f"d/d{name}"] * e)
            pieces.append("*".join(parts))
        return " + ".join(pieces)


@dataclass(frozen=True, eq=False)
class FormalOperator:
    """D_0 + h D_1 + ... + h^K D_K, every operation truncated at order K."""

    order: int
    components: tuple

    @classmethod
    def of(cls, components, order: int) -> "FormalOperator":
        components = list(components)[: order + 1]
        context = components[0].context
        while len(components) <= order:
            components.append(DifferentialOperator.zero(context))
        return cls(order, tuple(components))

    @classmethod
    def identity(cls, context: PolyContext, order: int) -> "FormalOperator":
        return cls.of([DifferentialOperator.identity(context)], order)

    @classmethod
    def multiplication(cls, context: PolyContext, f, order: int) -> "FormalOperator":
        return cls.of([DifferentialOperator.multiplication(context, f)], order)

    @property
    def context(self) -> PolyContext:
        return self.components[0].context

    def __eq__(self, other):
        return (
            isinstance(other, FormalOperator)
            and self.order == other.order
            and self.components == other.components
        )

    __hash__ = None

    def __add__(self, other: "FormalOperator") -> "FormalOperator":
        return FormalOperator.of(
            [a + b for a, b in zip(self.components, other.components)], self.order
        )

    def __sub__(self, other: "FormalOperator") -> "FormalOperator":
        return FormalOperator.of(
            [a - b for a, b in zip(self.components, other.components)], self.order
        )

    def scale(self, f) -> "FormalOperator":
        """Left multiplication by an h-free polynomial or scalar."""
        return FormalOperator.of([d.scale(f) for d in self.components], self.order)

    def __mul__(self, other: "FormalOperator") -> "FormalOperator":
        """Composition, the Cauchy product of the components."""
        result = []
        for k in range(self.order + 1):
            total = DifferentialOperator.zero(self.context)
            for i in range(k + 1):
                if self.components[i] and other.components[k - i]:
                    total = total + self.components[i] * other.components[k - i]
            result.append(total)
        return FormalOperator.of(result, self.order)

    def __call__(self, f):
        h = self.context.h
        result = self.context.zero
        power = self.context.one
        for component in self.components:
            if component:
                result += power * component(f)
            power = power * h
        return truncate_h(result, self.order)

    def inverse(self) -> "FormalOperator":
        """Neumann series sum_m (Id - A)^m; needs D_0 = Id."""
        identity = FormalOperator.identity(self.context, self.order)
        if self.components[0] != identity.components[0]:
            raise NotInvertible(str(self.components[0]))
        nilpotent = identity - self
        result, power = identity, identity
        for _ in range(self.order):
            power = power * nilpotent
            result = result + power
        return result

    @classmethod
    def exp(cls, generator: "FormalOperator") -> "FormalOperator":
        """sum_m D^m / m! for D without h^0 part."""
        if generator.components[0]:
            raise NotNilpotent(str(generator.components[0]))
        identity = cls.identity(generator.context, generator.order)
        result, power = identity, identity
        for m in range(1, generator.order + 1):
            power = power * generator
            result = result + power.scale(QQ(1, factorial(m)))
        return result

    def agrees_on(self, other: "FormalOperator", basis):
        """First polynomial of ``basis`` where the two operators differ, or ``None``."""
        for f in basis:
            if self(f) != other(f):
                return f
        return None

    def __str__(self):
        return " + ".join(
            f"h^{k}*[{d}]" for k, d in enumerate(self.components) if d
        ) or "0"


class NotInvertible(Exception):
    """Raise when a formal operator does not start with the identity."""

    def __init__(self, leading: str = ""):
        self.leading = leading
        self.message = f"Formal operator with leading part {leading} is not invertible"
        super().__init__(self.message)


class NotNilpotent(Exception):
    """Raise when exponentiating an operator with a nonzero h^0 part."""

    def __init__(self, leading: str = ""):
        self.leading = leading
        self.message = f"Cannot exponentiate an operator with h^0 part {leading}"
        super().__init__(self.message)
