import math

import pytest

from waring import ring
from waring.ring import DivisionByOmega, Element, RingSpec


def el(spec, *digits):
    return ring.element(spec, digits)


def test_spec_validation():
    with pytest.raises(ValueError):
        RingSpec(4, 1, 2)
    with pytest.raises(ValueError):
        RingSpec(2, 0, 2)
    assert RingSpec(2, 2, 6).N == 5
    assert RingSpec(2, 3, 6).hensel_precision == 7
    assert RingSpec(3, 1, 5).hensel_precision == 1


@pytest.mark.parametrize("p,e,N,n,digits", [
    (2, 2, 5, 2, (0, 0, 1, 0, 0)),
    (2, 1, 5, 17, (1, 0, 0, 0, 1)),
    (3, 3, 7, 7, (1, 0, 0, 2, 0, 0, 0)),
])
def test_from_integer(p, e, N, n, digits):
    assert ring.from_integer(RingSpec(p, e, 1, N), n).digits == digits


def test_add_examples():
    s = RingSpec(2, 2, 1, 5)
    a = el(s, 1, 1)
    assert ring.add(s, a, a).digits == (0, 0, 1, 1, 0)
    t = RingSpec(3, 3, 1, 5)
    o = ring.one(t)
    assert ring.total(t, [o, o, o]) == ring.monomial(t, 3)


def test_neg_examples():
    s = RingSpec(2, 1, 1, 5)
    assert ring.neg(s, ring.one(s)).digits == (1, 1, 1, 1, 1)
    assert ring.neg(s, ring.zero(s)) == ring.zero(s)
    t = RingSpec(3, 1, 1, 3)
    assert ring.neg(t, ring.from_integer(t, 8)) == ring.from_integer(t, 19)
    assert ring.from_integer(t, -8) == ring.from_integer(t, 19)


def test_mul_and_power_examples():
    s = RingSpec(2, 2, 1, 5)
    w = ring.monomial(s, 1)
    assert ring.mul(s, w, w) == ring.from_integer(s, 2)
    z = RingSpec(2, 1, 1, 5)
    assert ring.power(z, ring.from_integer(z, 3), 4) == ring.from_integer(z, 17)
    # (1 + sqrt 2)^6 = 99 + 70 sqrt 2
    assert ring.power(s, el(s, 1, 1), 6).digits == (1, 0, 1, 1, 0)
    expect = ring.add(s, ring.from_integer(s, 99), ring.mul(s, ring.from_integer(s, 70), w))
    assert ring.power(s, el(s, 1, 1), 6) == expect
    t = RingSpec(2, 3, 1, 7)
    assert ring.power(t, ring.monomial(t, 1), 6) == ring.from_integer(t, 4)
    u = RingSpec(3, 1, 1, 3)
    assert ring.power(u, ring.from_integer(u, 2), 3) == ring.from_integer(u, 8)
    assert ring.power(u, ring.from_integer(u, 2), 0) == ring.one(u)


def test_valuation():
    s = RingSpec(2, 3, 1, 10)
    assert ring.valuation(s, ring.zero(s)) == math.inf
    assert ring.valuation(s, ring.from_integer(s, 2)) == 3
    assert ring.valuation(s, ring.from_integer(s, 8)) == 9


def test_shift():
    s = RingSpec(2, 2, 1, 5)
    assert ring.shift(s, ring.one(s), 3) == ring.monomial(s, 3)
    assert ring.shift(s, ring.monomial(s, 4), -2) == ring.monomial(s, 2)
    with pytest.raises(DivisionByOmega):
        ring.shift(s, ring.one(s), -1)
    assert ring.shift(s, ring.one(s), 7) == ring.zero(s)


def test_truncate():
    s = RingSpec(2, 1, 1, 5)
    a = ring.from_integer(s, 17)
    assert ring.truncate(s, a, 4).digits == (1, 0, 0, 0)
    assert ring.truncate(s, a, 5) == a
    with pytest.raises(ValueError):
        ring.truncate(s, a, 6)


def test_element_validation_and_text():
    s = RingSpec(3, 2, 1, 4)
    with pytest.raises(ValueError):
        ring.element(s, [3])
    with pytest.raises(ValueError):
        ring.element(s, [0] * 5)
    a = el(s, 1, 0, 2, 1)
    assert ring.parse_text(s, ring.to_text(a)) == a
    assert ring.pretty(a) == "1 + 2w^2 + w^3"
    assert ring.folded(s, a) == "7 + 3w"
    assert ring.from_index(s, ring.index_of(s, a)) == a
    assert str(a) == "1 0 2 1"


def test_folded_matches_table_style():
    s = RingSpec(2, 2, 1, 5)
    a = el(s, 1, 0, 1, 1)  # 1 + w^2 + w^3 = 3 + 2w
    assert ring.folded(s, a) == "3 + 2w"
    assert ring.folded(s, ring.zero(s)) == "0"
    assert ring.pretty(Element((0, 0))) == "0"
