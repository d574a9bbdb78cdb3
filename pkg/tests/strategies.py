"""Hypothesis strategies for polynomials, words and group elements."""

from hypothesis import strategies as st
from sympy.polys.domains import QQ

from libstarprod.liealg import HeisenbergElement
from libstarprod.poly import exponent_vectors

rationals = st.builds(QQ, st.integers(-6, 6), st.integers(1, 4))


@st.composite
def polynomials(draw, context, degree=3, max_terms=4):
    """Coordinate polynomials of ``context`` with small rational coefficients."""
    vectors = exponent_vectors(len(context.coordinates), degree)
    keys = st.sampled_from(vectors)
    terms = draw(st.dictionaries(keys, rationals, max_size=max_terms))
    result = context.zero
    for alpha, coeff in terms.items():
        result += context.coordinate_monomial(alpha) * coeff
    return result


def words(dimension, max_length=3):
    return st.lists(st.integers(0, dimension - 1), max_size=max_length).map(tuple)


heisenberg_elements = st.builds(HeisenbergElement, rationals, rationals, rationals)
