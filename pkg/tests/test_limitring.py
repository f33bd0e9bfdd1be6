import random
from fractions import Fraction

import pytest

from princlab.core import Poly
from princlab.limitring import LimitElem, LimitError, LimitRing, lr_chain, lr_lift
from princlab.rings import QQ, ZZ

F = Fraction
RQ = LimitRing(QQ)
RZ = LimitRing(ZZ)


def test_lift_spec_cases():
    x1 = RQ.gen(1)
    lifted = lr_lift(x1, 2)
    assert lifted.poly == Poly((F(0), F(1), F(1)))  # x + x^2

    five = RQ.coerce(5)
    assert lr_lift(five, 4).poly == Poly((F(5),))

    l3 = lr_lift(x1, 3)
    assert l3.poly == Poly((F(0), F(1), F(2), F(2), F(1)))

    with pytest.raises(LimitError):
        lr_lift(RQ.gen(3), 2)


def test_lift_coherence_random():
    rng = random.Random(3)
    for _ in range(60):
        lvl = rng.randrange(1, 4)
        e = LimitElem(lvl, Poly([F(rng.randrange(-4, 5)) for _ in range(4)]), RQ)
        m = lvl + rng.randrange(0, 3)
        k = m + rng.randrange(0, 3)
        assert lr_lift(lr_lift(e, m), k).poly == lr_lift(e, k).poly


def test_arith_spec_cases():
    x1, x2 = RQ.gen(1), RQ.gen(2)
    one = RQ.one
    assert x1 - x2 * (one + x2) == RQ.zero
    assert x1 * one == x1
    assert (one + x2) * (one - x2) == one - x2 * x2


def test_equality_lifts_to_common_level():
    x1, x3 = RQ.gen(1), RQ.gen(3)
    assert x1 == lr_lift(x1, 5)
    assert x1 != x3


def test_chain_m2():
    ch = lr_chain(2, RQ)
    x2, one = RQ.gen(2), RQ.one
    assert ch.factors == [x2, one + x2]
    assert len(ch.pairwise) == 1
    i, j, lam, mu = ch.pairwise[0]
    assert lam == -one and mu == one
    assert ch.verify()


def test_chain_m3():
    ch = lr_chain(3, RQ)
    prod = RQ.one
    for f in ch.factors:
        prod = prod * f
    assert prod == lr_lift(RQ.gen(1), 3)
    assert ch.verify()


def test_chain_all_sizes_both_bases():
    for ring in (RQ, RZ):
        for m in range(2, 9):
            ch = lr_chain(m, ring)
            assert len(ch.factors) == m
            assert len(ch.pairwise) == m * (m - 1) // 2
            assert ch.verify()
    with pytest.raises(LimitError):
        lr_chain(1, RQ)


def test_integer_base_rejects_fractions():
    with pytest.raises(LimitError):
        LimitElem(1, Poly((F(1, 2),)), RZ)
    # and the same polynomial is fine over Q
    LimitElem(1, Poly((F(1, 2),)), RQ)


def test_divides():
    x1, x2 = RQ.gen(1), RQ.gen(2)
    one = RQ.one
    q = RQ.divides(x2, x1)
    assert q == one + x2
    assert RQ.divides(x1, x2) is None
    # over Z the quotient coefficients must be integers
    assert RZ.divides(RZ.coerce(2), RZ.gen(1)) is None
    assert RZ.divides(RZ.coerce(2), RZ.coerce(6)) == RZ.coerce(3)


def test_is_unit():
    assert RQ.is_unit(RQ.coerce(F(2, 3)))
    assert not RQ.is_unit(RQ.gen(2))
    assert RZ.is_unit(RZ.coerce(-1))
    assert not RZ.is_unit(RZ.coerce(2))
