from itertools import product

from hypothesis import given, settings
import pytest
from sympy.polys.domains import QQ

from libstarprod.liealg import builtin
from libstarprod.uea import (
    NotCentral,
    Strategy,
    UnknownGenerator,
    UnsupportedIdeal,
    central_witness,
    confluent,
    ideal_reduce,
    is_central,
    pbw_normalize,
    ue_mul,
)
from libstarprod.weyl import WeylContext
from tests.strategies import words

SU2 = WeylContext(builtin("su2")).enveloping


@pytest.fixture
def enveloping(su2_radius):
    return su2_radius.enveloping


def casimir(enveloping):
    one = enveloping.context.one
    return enveloping.element({(0, 0): one, (1, 1): one, (2, 2): one})


def test_swapping_generators_adds_h_bracket(enveloping):
    h = enveloping.context.h
    expected = enveloping.element({(0, 1): enveloping.context.one, (2,): -h})
    assert enveloping.word(1, 0) == expected
    assert str(enveloping.word(1, 0)) == "X*Y - h*Z"


def test_heisenberg_centre(heisenberg_weyl):
    enveloping = heisenberg_weyl.enveloping
    h = enveloping.context.h
    e = enveloping.generator(2)
    assert is_central(e)
    assert enveloping.word(1, 0) == enveloping.element(
        {(0, 1): enveloping.context.one, (2,): -h}
    )


@pytest.mark.parametrize("length", [2, 3])
def test_rewriting_is_confluent(enveloping, length):
    for word in product(range(3), repeat=length):
        assert confluent(enveloping, word), word


def test_strategies_agree_on_elements(enveloping):
    a = enveloping.parse_word("Z*Y*X") + enveloping.parse_word("Y^2 X")
    assert pbw_normalize(a) == pbw_normalize(a, Strategy.RIGHTMOST)
    assert pbw_normalize(a).is_normal()


def test_parse_word(enveloping):
    one = enveloping.context.one
    assert enveloping.parse_word("Z*Y*X") == enveloping.element({(2, 1, 0): one})
    assert enveloping.parse_word("X^2 Z") == enveloping.element({(0, 0, 2): one})
    with pytest.raises(UnknownGenerator):
        enveloping.parse_word("X*W")


def test_casimir_is_central(enveloping):
    assert is_central(casimir(enveloping))
    name, value = central_witness(enveloping.generator(0))
    assert name == "Y"
    assert value == enveloping.generator(2).scale(enveloping.context.h)


def test_reduction_modulo_casimir(enveloping):
    context = enveloping.context
    level = context.var("r") ** 2
    reduced = ideal_reduce(enveloping.parse_word("Z^2"), casimir(enveloping), level)
    assert reduced == enveloping.element({(): level, (0, 0): -1, (1, 1): -1})
    assert str(reduced) == "-X^2 - Y^2 + r^2"
    again = ideal_reduce(reduced, casimir(enveloping), level)
    assert again == reduced


def test_reduction_preconditions(enveloping):
    with pytest.raises(NotCentral):
        ideal_reduce(enveloping.one(), enveloping.generator(0), 0)
    with pytest.raises(UnsupportedIdeal):
        ideal_reduce(enveloping.one(), casimir(enveloping).scale(QQ(2)), 0)


@settings(max_examples=30, deadline=None)
@given(words(3), words(3), words(3))
def test_multiplication_is_associative(u, v, w):
    a, b, c = (SU2.element({word: 1}) for word in (u, v, w))
    assert ue_mul(ue_mul(a, b), c) == ue_mul(a, ue_mul(b, c))
