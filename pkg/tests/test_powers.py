from itertools import product

import pytest

from waring import ring
from waring.powers import (
    PrecisionTooLow,
    attainable_set,
    enumerate_unit_residues,
    full_summand_set,
    hensel_precision,
)
from waring.ring import RingSpec


def poly(spec, terms):
    """Sum of c w^i for (i, c) pairs, carries normalized."""
    return ring.total(spec, [ring.monomial(spec, i, c) for i, c in terms])


def brute_unit_powers(spec):
    out = set()
    for d in product(range(spec.p), repeat=spec.N):
        if d[0]:
            out.add(ring.power(spec, ring.Element(d), spec.k))
    return out


@pytest.mark.parametrize("p,e,k,M", [(2, 2, 6, 5), (2, 3, 6, 7), (3, 1, 5, 1), (2, 1, 4, 5), (3, 6, 6, 13)])
def test_hensel_precision(p, e, k, M):
    assert hensel_precision(RingSpec(p, e, k)) == M


def test_precision_too_low():
    with pytest.raises(PrecisionTooLow):
        enumerate_unit_residues(RingSpec(2, 2, 6), 4)
    with pytest.raises(PrecisionTooLow):
        attainable_set(RingSpec(3, 1, 3), 1)


def test_two_residues_e2():
    s = RingSpec(2, 2, 6)
    assert enumerate_unit_residues(s) == {ring.one(s), poly(s, [(0, 1), (2, 1), (3, 1)])}


def test_seventeen_mod_32():
    s = RingSpec(2, 1, 4)
    got = {ring.index_of(s, a) for a in enumerate_unit_residues(s)}
    assert got == {1, 17}


TABLE4 = [
    [0], [0, 6, 7], [0, 4, 6], [0, 4, 7], [0, 2, 4, 5, 8], [0, 2, 4, 5, 6, 7],
    [0, 2, 5, 6, 7, 8], [0, 2, 5],
]


def test_units_246():
    s = RingSpec(2, 4, 6)
    expect = {poly(s, [(i, 1) for i in row]) for row in TABLE4}
    assert enumerate_unit_residues(s) == expect
    full = full_summand_set(s)
    assert ring.monomial(s, 6) in full
    # w^6 u mod w^9 only sees u mod w^3: w^6 and w^6 + w^8
    assert full - enumerate_unit_residues(s) == {ring.monomial(s, 6), poly(s, [(6, 1), (8, 1)])}


TABLE5 = [
    [], [(6, 1), (8, 1)], [(6, 2), (8, 2)], [(3, 1), (7, 1), (8, 1)],
    [(3, 1), (6, 1), (7, 1), (8, 2)], [(3, 1), (6, 2), (7, 1)], [(3, 2), (7, 2), (8, 1)],
    [(3, 2), (6, 1), (7, 2), (8, 2)], [(3, 2), (6, 2), (7, 2)],
]


def test_units_366_truncated():
    s = RingSpec(3, 6, 6)
    s9 = s.at(9)
    expect = {poly(s9, [(0, 1)] + row) for row in TABLE5}
    got = {ring.truncate(s, a, 9) for a in enumerate_unit_residues(s)}
    assert got == expect
    assert ring.monomial(s, 6) in full_summand_set(s)
    assert ring.from_integer(s, 3) == ring.monomial(s, 6)


@pytest.mark.parametrize("k", [2, 6, 10, 14])
def test_e2_expansion_oracle(k):
    # x^k = x0 + x0 x1 w^2 + x0 x1 w^3 mod w^5 for k = 2 mod 4
    s = RingSpec(2, 2, k)
    expect = {poly(s, [(0, 1), (2, x1), (3, x1)]) for x1 in (0, 1)}
    assert enumerate_unit_residues(s) == expect


@pytest.mark.parametrize("k", [2, 6, 10, 14, 18, 22])
def test_e3_expansion_oracle(k):
    s = RingSpec(2, 3, k)
    de = 1 if k % 8 == 2 else 0
    do = 1 - de
    expect = set()
    for x1, x2 in product((0, 1), repeat=2):
        expect.add(poly(s, [(0, 1), (2, x1), (4, x2 + de * x1), (5, x2 + do * x1),
                            (6, x1 * x2 + do * x1)]))
    assert enumerate_unit_residues(s) == expect


@pytest.mark.parametrize("spec", [RingSpec(2, 2, 6, 6), RingSpec(3, 2, 3, 6), RingSpec(5, 1, 4, 3),
                                  RingSpec(2, 3, 2, 8)])
def test_units_match_brute_force(spec):
    assert enumerate_unit_residues(spec, spec.N) == brute_unit_powers(spec)


@pytest.mark.parametrize("p,e,k", [(2, 2, 6), (2, 3, 6), (3, 3, 3), (2, 1, 4), (3, 2, 6), (5, 1, 5)])
def test_group_and_projection(p, e, k):
    s = RingSpec(p, e, k)
    M = s.hensel_precision
    units = enumerate_unit_residues(s, M + 1)
    s1 = s.at(M + 1)
    assert ring.one(s1) in units
    assert all(a.digits[0] for a in units)
    for a in units:
        for b in units:
            assert ring.mul(s1, a, b) in units
    assert {ring.truncate(s1, a, M) for a in units} == enumerate_unit_residues(s, M)


@pytest.mark.parametrize("p,k", [(5, 2), (7, 3), (11, 5), (13, 4)])
def test_p_free_residues_are_classical(p, k):
    s = RingSpec(p, 1, k)
    assert s.hensel_precision == 1
    got = {a.digits[0] for a in enumerate_unit_residues(s)}
    assert got == {pow(x, k, p) for x in range(1, p)}


def test_full_summands():
    s = RingSpec(2, 3, 6)
    assert ring.from_integer(s, 4) in full_summand_set(s)
    t = RingSpec(2, 3, 10)
    assert full_summand_set(t) == enumerate_unit_residues(t)


def test_attainable_e2():
    s = RingSpec(2, 2, 6)
    att = attainable_set(s)
    expect = {ring.element(s, [x0, 0, x2, x3, x4]) for x0, x2, x3, x4 in product((0, 1), repeat=4)}
    assert set(att) == expect and len(att) == 16
    assert ring.monomial(s, 1) not in att


def test_attainable_cubes_cover_everything():
    s = RingSpec(3, 1, 3)
    att = attainable_set(s)
    assert len(att) == 27
    assert {ring.truncate(s, a, 1) for a in att} == {ring.element(s.at(1), [d]) for d in range(3)}


@pytest.mark.parametrize("p,e,k", [(2, 2, 6), (2, 3, 10), (3, 3, 6), (2, 4, 2)])
def test_attainable_closed(p, e, k):
    s = RingSpec(p, e, k)
    att = attainable_set(s)
    full = full_summand_set(s)
    assert full <= set(att)
    items = list(att)
    for a in items[:64]:
        for b in full:
            assert ring.add(s, a, b) in att
