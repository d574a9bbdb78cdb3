"""Symmetrization (Weyl) map between the dual and the enveloping algebra."""

from math import factorial
import logging
from threading import Lock

from sympy.polys.domains import QQ
from sympy.utilities.iterables import multiset_permutations

from libstarprod.liealg import LieAlgebra
from libstarprod.poly import (
    AUX_PREFIX,
    PolyContext,
    coordinate_split,
    format_polynomial,
    monomials,
    partial,
)
from libstarprod.report import collect
from libstarprod.uea import EnvelopingAlgebra, EnvelopingElement, pbw_normalize

parent_logger = logging.getLogger(__name__)


def _multinomial_weight(alpha):
    """alpha! / |alpha|! as an exact rational."""
    numerator = 1
    for e in alpha:
        numerator *= factorial(e)
    return QQ(numerator, factorial(sum(alpha)))


class WeylContext:
    """A Lie algebra with its enveloping algebra and cached symmetrization data.

    The polynomial context holds the dual coordinates, ``h``, the declared
    parameters and one auxiliary commuting parameter ``t_i`` per generator. The
    generic element is ``sum t_i X_i``; its powers and the images of monomials
    are cached and populated under a lock.
    """

    def __init__(self, algebra: LieAlgebra, params=(), domain=QQ):
        self.logger = parent_logger.getChild(self.__class__.__name__)
        self.algebra = algebra
        aux = tuple(f"{AUX_PREFIX}{i + 1}" for i in range(algebra.dimension))
        self.context = PolyContext(algebra.coordinates, params, aux, domain)
        self.enveloping = EnvelopingAlgebra(algebra, self.context)
        generic = self.enveloping.element(
            {(i,): self.context.var(t) for i, t in enumerate(aux)}
        )
        self._generic = generic
        self._powers = [self.enveloping.one()]
        self._images = {}
        self._lock = Lock()

    def generic_power(self, p: int) -> EnvelopingElement:
        """Normal form of (sum t_i X_i)^p."""
        with self._lock:
            while len(self._powers) <= p:
                self._powers.append(self._powers[-1] * self._generic)
                self.logger.debug(
                    "generic power %s has %s words",
                    len(self._powers) - 1,
                    len(self._powers[-1].terms),
                )
            return self._powers[p]

    def monomial_image(self, alpha) -> EnvelopingElement:
        """W(x^alpha) read off the t^alpha coefficient of the generic power."""
        alpha = tuple(alpha)
        cached = self._images.get(alpha)
        if cached is not None:
            return cached
        power = self.generic_power(sum(alpha))
        start = self.context.aux_start
        weight = _multinomial_weight(alpha)
        terms = {}
        for word, coeff in power.terms.items():
            part = {
                m[:start] + (0,) * len(alpha): c * weight
                for m, c in coeff.items()
                if m[start:] == alpha
            }
            if part:
                terms[word] = self.context.ring.from_dict(part)
        image = self.enveloping.element(terms)
        with self._lock:
            return self._images.setdefault(alpha, image)


def weyl_sym(f, ctx: WeylContext) -> EnvelopingElement:
    """Linear extension of monomial symmetrization, in PBW normal form."""
    result = ctx.enveloping.zero()
    for alpha, coeff in coordinate_split(f, ctx.context).items():
        result = result + ctx.monomial_image(alpha).scale(coeff)
    return result


def invert_triangular(a: EnvelopingElement, forward):
    """Invert a map whose top word-length part is the identity on symbols.

    Repeatedly reads the longest words of ``a`` as a commutative symbol,
    records it and subtracts its image under ``forward``.
    """
    algebra = a.algebra
    remaining = pbw_normalize(a)
    result = algebra.context.zero
    while remaining:
        top = remaining.length
        symbol = algebra.context.zero
        for word, coeff in remaining.terms.items():
            if len(word) == top:
                symbol += algebra.word_monomial(word) * coeff
        result += symbol
        remaining = remaining - forward(symbol)
    return result


def weyl_inv(a: EnvelopingElement, ctx: WeylContext):
    """The unique polynomial f with weyl_sym(f) = a."""
    return invert_triangular(a, lambda f: weyl_sym(f, ctx))


def weyl_by_permutations(f, ctx: WeylContext) -> EnvelopingElement:
    """Symmetrize by summing every ordering of each monomial's letters."""
    algebra = ctx.enveloping
    result = algebra.zero()
    for alpha, coeff in coordinate_split(f, ctx.context).items():
        letters = [i for i, e in enumerate(alpha) for _ in range(e)]
        weight = _multinomial_weight(alpha)
        terms = {}
        for word in multiset_permutations(letters):
            for w, c in algebra.normal_form(tuple(word)).items():
                terms[w] = terms.get(w, ctx.context.zero) + c * weight
        result = result + algebra.element(terms).scale(coeff)
    return result


def inner_derivation(algebra: LieAlgebra, i: int) -> tuple:
    """Matrix of ad_{X_i}: entry [k][j] is the X_k coefficient of [X_i, X_j]."""
    n = algebra.dimension
    return tuple(
        tuple(algebra.constant(i, j, k) for j in range(n)) for k in range(n)
    )


def zero_derivation(algebra: LieAlgebra) -> tuple:
    n = algebra.dimension
    return tuple(tuple(QQ.zero for _ in range(n)) for _ in range(n))


def _column(matrix, j):
    return [QQ.convert(row[j]) for row in matrix]


def derivation_witness(algebra: LieAlgebra, matrix):
    """First pair (i, j) with D[X_i,X_j] != [DX_i,X_j] + [X_i,DX_j], or ``None``."""
    n = algebra.dimension
    unit = [[QQ.one if k == i else QQ.zero for k in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            bracket = algebra.bracket_vector(unit[i], unit[j])
            left = [QQ.zero] * n
            for k, c in enumerate(bracket):
                if c:
                    for l, d in enumerate(_column(matrix, k)):
                        left[l] += c * d
            first = algebra.bracket_vector(_column(matrix, i), unit[j])
            second = algebra.bracket_vector(unit[i], _column(matrix, j))
            right = [u + v for u, v in zip(first, second)]
            if left != right:
                return algebra.basis[i], algebra.basis[j]
    return None


def apply_on_polynomials(f, matrix, ctx: WeylContext):
    """Extend xi_j -> sum_k D[k][j] xi_k to polynomials as a derivation."""
    coordinates = ctx.algebra.coordinates
    result = ctx.context.zero
    for j, v in enumerate(coordinates):
        df = partial(f, v)
        if not df:
            continue
        image = ctx.context.zero
        for k, row in enumerate(matrix):
            if row[j]:
                image += ctx.context.var(coordinates[k]) * QQ.convert(row[j])
        result += image * df
    return result


def apply_on_enveloping(a: EnvelopingElement, matrix, ctx: WeylContext):
    """Extend X_j -> sum_k D[k][j] X_k to the enveloping algebra as a derivation."""
    terms = {}
    zero = ctx.context.zero
    for word, coeff in a.terms.items():
        for position, j in enumerate(word):
            for k, row in enumerate(matrix):
                if not row[j]:
                    continue
                w = word[:position] + (k,) + word[position + 1 :]
                terms[w] = terms.get(w, zero) + coeff * QQ.convert(row[j])
    return pbw_normalize(ctx.enveloping.element(terms))


def check_intertwining(matrix, degree: int, ctx: WeylContext, workers=1):
    """Verify W(D f) = D(W f) on coordinate monomials up to ``degree``.

    Raises :class:`NotADerivation` when ``matrix`` is not a derivation of the
    Lie algebra.
    """
    witness = derivation_witness(ctx.algebra, matrix)
    if witness is not None:
        raise NotADerivation(*witness)

    def intertwines(f):
        left = weyl_sym(apply_on_polynomials(f, matrix, ctx), ctx)
        right = apply_on_enveloping(weyl_sym(f, ctx), matrix, ctx)
        if left != right:
            return {
                "monomial": format_polynomial(f),
                "weyl_of_derivative": str(left),
                "derivative_of_weyl": str(right),
            }
        return None

    return collect(
        f"intertwining {ctx.algebra.name}",
        intertwines,
        monomials(ctx.context, degree),
        workers,
    )


def check_oracle(ctx: WeylContext, degree: int, workers=1):
    """Generating-function images equal the permutation sums on monomials."""

    def matches(f):
        fast, slow = weyl_sym(f, ctx), weyl_by_permutations(f, ctx)
        if fast != slow:
            return {
                "monomial": format_polynomial(f),
                "generating": str(fast),
                "permutations": str(slow),
            }
        return None

    return collect(
        f"weyl oracle {ctx.algebra.name}",
        matches,
        monomials(ctx.context, degree),
        workers,
    )


def check_inverse(ctx: WeylContext, degree: int, workers=1):
    """weyl_inv(weyl_sym(f)) = f on monomials."""

    def returns(f):
        back = weyl_inv(weyl_sym(f, ctx), ctx)
        if back != f:
            return {"monomial": format_polynomial(f), "found": format_polynomial(back)}
        return None

    return collect(
        f"weyl inverse {ctx.algebra.name}",
        returns,
        monomials(ctx.context, degree),
        workers,
    )


class NotADerivation(Exception):
    """Raise when a linear map does not preserve the Lie bracket as a derivation."""

    def __init__(self, left: str = "", right: str = ""):
        self.pair = (left, right)
        self.message = f"Not a derivation: fails on the pair ({left}, {right})"
        super().__init__(self.message)
