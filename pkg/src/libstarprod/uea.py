"""The h-scaled enveloping algebra: PBW normal forms, products and central ideals.

Generators satisfy ``X_a X_b = X_b X_a + h [X_a, X_b]``; a word is in normal
form when its generator indices are weakly increasing in basis order.
"""

from dataclasses import dataclass
from enum import Enum
import logging
import re
from threading import Lock
from types import MappingProxyType

from libstarprod.liealg import LieAlgebra
from libstarprod.poly import (
    PolyContext,
    coordinate_split,
    format_polynomial,
    format_term,
    monomial_text,
)

parent_logger = logging.getLogger(__name__)


class Strategy(Enum):
    """Which adjacent inversion a rewrite step resolves first."""

    LEFTMOST = "leftmost"
    RIGHTMOST = "rightmost"


def _accumulate(terms: dict, word, coeff):
    total = terms.get(word)
    total = coeff if total is None else total + coeff
    if total:
        terms[word] = total
    else:
        terms.pop(word, None)


class EnvelopingAlgebra:
    """U_h of a Lie algebra with coefficients in a polynomial context."""

    def __init__(self, algebra: LieAlgebra, context: PolyContext):
        self.logger = parent_logger.getChild(self.__class__.__name__)
        self.algebra = algebra
        self.context = context
        h = context.h
        self._rewrites = {
            pair: tuple((k, h * c) for k, c in sorted(terms.items()))
            for pair, terms in algebra.structure.items()
        }
        self._normal_forms = {}
        self._lock = Lock()

    @property
    def dimension(self) -> int:
        return self.algebra.dimension

    def element(self, terms) -> "EnvelopingElement":
        """Wrap ``{word: coefficient}`` without normalizing."""
        clean = {}
        for word, coeff in dict(terms).items():
            if not self.context.owns(coeff):
                coeff = self.context.constant(coeff)
            _accumulate(clean, tuple(word), coeff)
        return EnvelopingElement(self, MappingProxyType(clean))

    def scalar(self, coeff) -> "EnvelopingElement":
        return self.element({(): coeff})

    def one(self) -> "EnvelopingElement":
        return self.scalar(self.context.one)

    def zero(self) -> "EnvelopingElement":
        return self.element({})

    def generator(self, index: int) -> "EnvelopingElement":
        return self.element({(index,): self.context.one})

    def word(self, *indices) -> "EnvelopingElement":
        """Normal form of the product of the listed generators."""
        return pbw_normalize(self.element({tuple(indices): self.context.one}))

    def parse_word(self, text: str) -> "EnvelopingElement":
        """Read a generator word such as ``Z*Y*X`` or ``X^2 Z``."""
        indices = []
        for factor in re.split(r"[\s*]+", text.strip()):
            if not factor:
                continue
            name, _, power = factor.partition("^")
            if name not in self.algebra.basis:
                raise UnknownGenerator(name, self.algebra.basis)
            if power and not power.isdigit():
                raise UnknownGenerator(factor, self.algebra.basis)
            indices.extend([self.algebra.basis.index(name)] * int(power or 1))
        return self.element({tuple(indices): self.context.one})

    def from_ordered(self, f) -> "EnvelopingElement":
        """Send each coordinate monomial to the PBW word with the same exponents."""
        terms = {}
        for alpha, coeff in coordinate_split(f, self.context).items():
            word = tuple(i for i, e in enumerate(alpha) for _ in range(e))
            terms[word] = coeff
        return self.element(terms)

    def to_ordered(self, a: "EnvelopingElement"):
        """Inverse of :meth:`from_ordered` on normal-form elements."""
        result = self.context.zero
        for word, coeff in a.terms.items():
            result += self.word_monomial(word) * coeff
        return result

    def word_monomial(self, word):
        """The commutative monomial with the letter counts of ``word``."""
        alpha = [0] * len(self.context.coordinates)
        for i in word:
            alpha[i] += 1
        return self.context.coordinate_monomial(alpha)

    def normal_form(self, word, strategy: Strategy = Strategy.LEFTMOST) -> dict:
        """Normal form of a single word as ``{word: coefficient}``.

        The leftmost strategy is cached; the rightmost one is computed afresh
        and only serves as an independent confluence check.
        """
        word = tuple(word)
        if strategy is Strategy.LEFTMOST:
            return self._leftmost(word)
        return self._rightmost(word, {})

    def _leftmost(self, word) -> dict:
        cached = self._normal_forms.get(word)
        if cached is not None:
            return cached
        position = next(
            (k for k in range(len(word) - 1) if word[k] > word[k + 1]), None
        )
        if position is None:
            result = {word: self.context.one}
        else:
            result = self._rewrite(word, position, self._leftmost)
        with self._lock:
            cached = self._normal_forms.setdefault(word, result)
            if cached is result:
                self.logger.debug(
                    "cached normal form of %s (%s words)", word, len(result)
                )
        return cached

    def _rightmost(self, word, memo: dict) -> dict:
        if word in memo:
            return memo[word]
        position = next(
            (k for k in reversed(range(len(word) - 1)) if word[k] > word[k + 1]),
            None,
        )
        if position is None:
            result = {word: self.context.one}
        else:
            result = self._rewrite(
                word, position, lambda w: self._rightmost(w, memo)
            )
        memo[word] = result
        return result

    def _rewrite(self, word, k: int, recurse) -> dict:
        a, b = word[k], word[k + 1]
        terms = dict(recurse(word[:k] + (b, a) + word[k + 2 :]))
        for m, coeff in self._rewrites.get((a, b), ()):
            for w, c in recurse(word[:k] + (m,) + word[k + 2 :]).items():
                _accumulate(terms, w, coeff * c)
        return terms

    def format(self, a: "EnvelopingElement") -> str:
        """Render with explicit word order, longest words first."""
        if not a.terms:
            return "0"
        names = self.algebra.basis
        pieces = []
        for k, word in enumerate(sorted(a.terms, key=lambda w: (-len(w), w))):
            pieces.append(_format_term(a.terms[word], _word_text(names, word), k == 0))
        return "".join(pieces)


def _word_text(names, word) -> str:
    parts = []
    k = 0
    while k < len(word):
        run = 1
        while k + run < len(word) and word[k + run] == word[k]:
            run += 1
        parts.append(names[word[k]] if run == 1 else f"{names[word[k]]}^{run}")
        k += run
    return "*".join(parts)


def _format_term(coeff, body: str, first: bool) -> str:
    if len(coeff) == 1:
        monom, c = next(iter(coeff.items()))
        names = [str(symbol) for symbol in coeff.ring.symbols]
        text = "*".join(part for part in (monomial_text(names, monom), body) if part)
        return format_term(c, text, first)
    text = format_polynomial(coeff)
    if body:
        text = f"({text})*{body}"
    elif not first:
        text = f"({text})"
    return text if first else f" + {text}"


@dataclass(frozen=True, eq=False)
class EnvelopingElement:
    """Finite combination of words with polynomial coefficients."""

    algebra: EnvelopingAlgebra
    terms: MappingProxyType

    def __eq__(self, other):
        if not isinstance(other, EnvelopingElement):
            return NotImplemented
        return dict(self.terms) == dict(other.terms)

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other: "EnvelopingElement") -> "EnvelopingElement":
        terms = dict(self.terms)
        for word, coeff in other.terms.items():
            _accumulate(terms, word, coeff)
        return EnvelopingElement(self.algebra, MappingProxyType(terms))

    def __neg__(self) -> "EnvelopingElement":
        return EnvelopingElement(
            self.algebra, MappingProxyType({w: -c for w, c in self.terms.items()})
        )

    def __sub__(self, other: "EnvelopingElement") -> "EnvelopingElement":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, EnvelopingElement):
            return ue_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int) -> "EnvelopingElement":
        result = self.algebra.one()
        for _ in range(n):
            result = ue_mul(result, self)
        return result

    def scale(self, coeff) -> "EnvelopingElement":
        """Multiply every coefficient by a commuting polynomial or scalar."""
        if not self.algebra.context.owns(coeff):
            coeff = self.algebra.context.constant(coeff)
        return self.algebra.element({w: c * coeff for w, c in self.terms.items()})

    @property
    def length(self) -> int:
        """Longest word length (0 for scalars and zero)."""
        return max((len(w) for w in self.terms), default=0)

    def is_normal(self) -> bool:
        return all(
            all(w[k] <= w[k + 1] for k in range(len(w) - 1)) for w in self.terms
        )

    def __str__(self):
        return self.algebra.format(self)


def pbw_normalize(
    a: EnvelopingElement, strategy=Strategy.LEFTMOST
) -> EnvelopingElement:
    """Rewrite every inversion until all words are weakly increasing."""
    algebra = a.algebra
    terms = {}
    for word, coeff in a.terms.items():
        for w, c in algebra.normal_form(word, strategy).items():
            _accumulate(terms, w, coeff * c)
    return EnvelopingElement(algebra, MappingProxyType(terms))


def ue_mul(a: EnvelopingElement, b: EnvelopingElement) -> EnvelopingElement:
    """Concatenate words bilinearly and normalize."""
    algebra = a.algebra
    terms = {}
    for u, cu in a.terms.items():
        for v, cv in b.terms.items():
            coeff = cu * cv
            for w, c in algebra.normal_form(u + v).items():
                _accumulate(terms, w, coeff * c)
    return EnvelopingElement(algebra, MappingProxyType(terms))


def commutator(a: EnvelopingElement, b: EnvelopingElement) -> EnvelopingElement:
    return ue_mul(a, b) - ue_mul(b, a)


def central_witness(a: EnvelopingElement):
    """First generator with a nonzero commutator against ``a``, or ``None``."""
    algebra = a.algebra
    for i in range(algebra.dimension):
        value = commutator(a, algebra.generator(i))
        if value:
            return algebra.algebra.basis[i], value
    return None


def is_central(a: EnvelopingElement) -> bool:
    """True iff ``a`` commutes with every generator."""
    return central_witness(a) is None


def confluent(algebra: EnvelopingAlgebra, word) -> bool:
    """Both rewrite strategies give the same normal form for ``word``."""
    left = algebra.normal_form(word, Strategy.LEFTMOST)
    right = algebra.normal_form(word, Strategy.RIGHTMOST)
    return dict(left) == dict(right)


def leading_power(central: EnvelopingElement):
    """Split ``central`` as ``g^e + rest`` with ``g`` the last generator.

    Words are ranked by length, then by the number of ``g`` letters. The top
    word must be a pure power of ``g`` with coefficient 1.
    """
    algebra = central.algebra
    g = algebra.dimension - 1
    normal = pbw_normalize(central)
    if not normal:
        raise UnsupportedIdeal(str(central))
    lead = max(normal.terms, key=lambda w: (len(w), w.count(g), w))
    if not lead or set(lead) != {g} or normal.terms[lead] != 1:
        raise UnsupportedIdeal(str(central))
    rest = {w: c for w, c in normal.terms.items() if w != lead}
    return lead, algebra.element(rest)


def ideal_reduce(
    a: EnvelopingElement, central: EnvelopingElement, level
) -> EnvelopingElement:
    """Canonical representative of ``a`` modulo the ideal of ``central - level``.

    Every occurrence of the leading power ``g^e`` of ``central`` at the end of a
    PBW word is replaced by ``level - rest`` and the result renormalized,
    largest words first, until no word contains ``g^e``.
    """
    if not is_central(central):
        raise NotCentral(str(central))
    algebra = a.algebra
    lead, rest = leading_power(central)
    g, e = lead[0], len(lead)
    replacement = algebra.scalar(level) - rest
    work = dict(pbw_normalize(a).terms)
    result = {}
    steps = 0
    while work:
        word = max(work, key=lambda w: (len(w), w.count(g), w))
        coeff = work.pop(word)
        if word.count(g) < e:
            _accumulate(result, word, coeff)
            continue
        steps += 1
        prefix = algebra.element({word[:-e]: coeff})
        for w, c in ue_mul(prefix, replacement).terms.items():
            _accumulate(work, w, c)
    algebra.logger.debug(
        "reduced modulo %s in %s steps", algebra.format(central), steps
    )
    return EnvelopingElement(algebra, MappingProxyType(result))


class NotCentral(Exception):
    """Raise when reducing modulo an element that is not central."""

    def __init__(self, element: str = ""):
        self.element = element
        self.message = f"{element} is not central"
        super().__init__(self.message)


class UnsupportedIdeal(Exception):
    """Raise when a central element has no pure-power leading word."""

    def __init__(self, element: str = ""):
        self.element = element
        self.message = (
            f"{element} has no unit pure-power leading word in the last generator"
        )
        super().__init__(self.message)


class UnknownGenerator(Exception):
    """Raise when a word names an unknown generator."""

    def __init__(self, name: str = "", basis=()):
        self.name = name
        self.message = f"{name} is not a generator of {', '.join(basis)}"
        super().__init__(self.message)
