import pytest
from sympy.polys.domains import QQ

from libstarprod.weyl import (
    NotADerivation,
    apply_on_polynomials,
    check_intertwining,
    check_inverse,
    check_oracle,
    inner_derivation,
    weyl_by_permutations,
    weyl_inv,
    weyl_sym,
    zero_derivation,
)


def test_symmetrization_of_xy(su2_weyl):
    context, enveloping = su2_weyl.context, su2_weyl.enveloping
    x, y, h = context.var("x"), context.var("y"), context.h
    expected = enveloping.element({(0, 1): 1, (2,): -h * QQ(1, 2)})
    assert weyl_sym(x * y, su2_weyl) == expected
    assert str(weyl_sym(x * y, su2_weyl)) == "X*Y - (1/2)*h*Z"
    assert weyl_sym(x, su2_weyl) == enveloping.generator(0)
    assert weyl_sym(context.one, su2_weyl) == enveloping.one()


def test_inverse_of_a_word(su2_weyl):
    context = su2_weyl.context
    x, y, z, h = (context.var(v) for v in "xyzh")
    word = su2_weyl.enveloping.parse_word("Y*X")
    assert weyl_inv(word, su2_weyl) == x * y - h * z * QQ(1, 2)


def test_symmetrization_is_linear_over_parameters(su2_radius):
    context = su2_radius.context
    x, r = context.var("x"), context.var("r")
    assert weyl_sym(r * x**2, su2_radius) == weyl_sym(x**2, su2_radius).scale(r)


def test_permutation_oracle_on_a_cubic(su2_weyl):
    context = su2_weyl.context
    f = context.var("x") * context.var("y") * context.var("z")
    assert weyl_sym(f, su2_weyl) == weyl_by_permutations(f, su2_weyl)


@pytest.mark.parametrize("weyl", ["su2_weyl", "heisenberg_weyl"])
def test_oracle_and_inverse(weyl, request):
    ctx = request.getfixturevalue(weyl)
    assert check_oracle(ctx, 3).passed
    assert check_inverse(ctx, 3).passed


@pytest.mark.slow
def test_oracle_up_to_degree_five(su2_weyl):
    assert check_oracle(su2_weyl, 5, workers=4).passed


def test_inner_derivations_intertwine(su2_weyl):
    for i in range(3):
        derivation = inner_derivation(su2_weyl.algebra, i)
        assert check_intertwining(derivation, 3, su2_weyl).passed


def test_outer_derivation_of_heisenberg(heisenberg_weyl):
    scaling = ((1, 0, 0), (0, 0, 0), (0, 0, 1))
    assert check_intertwining(scaling, 3, heisenberg_weyl).passed
    context = heisenberg_weyl.context
    q, e = context.var("q"), context.var("e")
    assert apply_on_polynomials(q * e, scaling, heisenberg_weyl) == 2 * q * e


def test_zero_derivation(su2_weyl):
    assert check_intertwining(zero_derivation(su2_weyl.algebra), 2, su2_weyl).passed


def test_non_derivation_is_rejected(su2_weyl):
    projection = ((1, 0, 0), (0, 0, 0), (0, 0, 0))
    with pytest.raises(NotADerivation) as info:
        check_intertwining(projection, 2, su2_weyl)
    assert info.value.pair == ("X", "Y")
