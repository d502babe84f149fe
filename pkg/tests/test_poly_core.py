"""Fields, polynomial arithmetic, monomial orders, and the INFINITE sentinel."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from normalcone.errors import INFINITE
from normalcone.fields import PrimeField, QQ, field_from_name
from normalcone.orders import (deglex, degrevlex, enumerate_ascending, lex,
                               order_from_name, smallest_monomial, weighted)
from normalcone.rings import RingContext

from conftest import quotient_xy_y4


# -- coefficient fields -----------------------------------------------------------


def test_prime_field_inverses():
    F = PrimeField(7)
    for a in range(1, 7):
        assert F.mul(a, F.inv(a)) == 1


def test_prime_field_coerces_fractions():
    F = PrimeField(7)
    assert F.coerce(Fraction(1, 2)) == 4          # 2*4 = 8 = 1
    assert F.coerce(Fraction(-3, 5)) == F.mul(F.coerce(-3), F.inv(5))
    with pytest.raises(ZeroDivisionError):
        F.coerce(Fraction(1, 7))


def test_prime_field_rejects_bad_moduli():
    with pytest.raises(ValueError):
        PrimeField(6)
    with pytest.raises(ValueError):
        PrimeField(2 ** 31 + 11)


def test_field_from_name():
    assert field_from_name("Q") is QQ
    assert field_from_name("F32003").p == 32003


@given(a=st.integers(-50, 50), b=st.integers(-50, 50), c=st.integers(-50, 50))
def test_prime_field_ring_axioms(a, b, c):
    F = PrimeField(32003)
    a, b, c = F.coerce(a), F.coerce(b), F.coerce(c)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.mul(a, b) == F.mul(b, a)


# -- polynomials --------------------------------------------------------------------


def _polys(ring, max_terms=4, max_exp=3):
    coeff = st.integers(-3, 3)
    expo = st.tuples(*[st.integers(0, max_exp)] * ring.n_vars)
    term = st.tuples(expo, coeff)
    return st.lists(term, max_size=max_terms).map(
        lambda ts: sum((ring.mono(e, c) for e, c in ts), ring.zero))


R2 = RingContext("x,y")
R2CAP = RingContext("x,y", trunc_cap=5)
R2F = RingContext("x,y", field=PrimeField(32003))


@settings(max_examples=60, deadline=None)
@given(f=_polys(R2), g=_polys(R2), h=_polys(R2))
def test_ring_axioms_rational(f, g, h):
    assert (f + g) + h == f + (g + h)
    assert f * g == g * f
    assert f * (g + h) == f * g + f * h
    assert (f * g) * h == f * (g * h)


@settings(max_examples=60, deadline=None)
@given(f=_polys(R2CAP), g=_polys(R2CAP), h=_polys(R2CAP))
def test_ring_axioms_survive_truncation(f, g, h):
    # dropping terms above the cap is a ring quotient, so identities persist
    assert f * (g + h) == f * g + f * h
    assert (f * g) * h == f * (g * h)


@settings(max_examples=60, deadline=None)
@given(f=_polys(R2F), g=_polys(R2F))
def test_ring_axioms_prime_field(f, g):
    assert f * g == g * f
    assert (f - g) + g == f


def test_truncation_drops_high_terms():
    R = RingContext("x", trunc_cap=4)
    x = R.var(0)
    assert (x ** 3 * x ** 2).is_zero()
    assert not (x ** 2 * x ** 2).is_zero()


def test_parser_roundtrip():
    R = RingContext("x,y,z")
    for text in ("x", "x + y^2", "3/2*x*y - z^3 + 1", "-x^2 + 2*y",
                 "x*y*z - 7"):
        f = R.poly(text)
        assert R.poly(str(f)) == f


def test_parse_rejects_unknowns():
    R = RingContext("x,y")
    with pytest.raises(ValueError):
        R.poly("x + w")


def test_jet_truncates_by_degree():
    R = RingContext("x,y")
    f = R.poly("1 + x + x*y + y^3")
    assert f.jet(1) == R.poly("1 + x")
    assert f.jet(2) == R.poly("1 + x + x*y")
    assert f.jet(0) == R.one


def test_degrees():
    R = RingContext("x,y")
    f = R.poly("x^2 + y^5")
    assert f.degree() == 5
    assert f.min_degree() == 2
    assert R.zero.degree() == -1


def test_quotient_relations_live_in_the_ideal_layer():
    # arithmetic happens in the cover; the zero ideal of the quotient
    # absorbs the relations
    R = quotient_xy_y4()
    xy = R.poly("x*y")
    assert not xy.is_zero()
    assert R.zero_ideal().member(xy)
    assert not R.zero_ideal().member(R.poly("x"))


def test_relations_with_unit_term_rejected():
    with pytest.raises(ValueError):
        RingContext("x,y", relations=["1 + x"])


# -- monomial orders ----------------------------------------------------------------


def test_deglex_compares_degree_first():
    o = deglex(2)
    assert o.key((0, 3)) > o.key((1, 1))
    assert o.key((2, 0)) > o.key((1, 1))     # default priority: x beats y


def test_deglex_priority_flips_ties():
    o = deglex(2, priority=(1, 0))           # now y beats x
    assert o.key((1, 1)) > o.key((2, 0))


def test_degrevlex_vs_deglex_classic_split():
    # x^2 z vs x y^2: same degree; deglex and degrevlex disagree on them
    dl = deglex(3)
    dr = degrevlex(3)
    a, b = (2, 0, 1), (1, 2, 0)
    assert (dl.key(a) > dl.key(b)) != (dr.key(a) > dr.key(b))


def test_lex_is_noetherian_only_in_one_variable():
    assert lex(1).noetherian
    assert not lex(2).noetherian


def test_weighted_needs_positive_weights():
    assert weighted((2, 3)).noetherian
    assert not weighted((1, 0)).noetherian
    assert weighted((2, 3)).weight((1, 1)) == 5


def test_order_from_name():
    assert order_from_name("deglex", 2).name.startswith("deglex")
    assert order_from_name("weighted:2,3", 2).weight((1, 1)) == 5
    with pytest.raises(ValueError):
        order_from_name("mystery", 2)
    with pytest.raises(ValueError):
        order_from_name("weighted:1,2,3", 2)


def test_enumerate_ascending_deglex():
    o = deglex(2, priority=(1, 0))           # x smaller than y
    R = RingContext("x,y")
    first = [str(R.mono(e)) for e in enumerate_ascending(o, 6)]
    assert first == ["1", "x", "y", "x^2", "x*y", "y^2"]


def test_smallest_monomial_is_the_initial_monomial():
    R = RingContext("x,y")
    o = deglex(2)
    assert smallest_monomial(R.poly("x^2 - y^3"), o) == (2, 0)
    assert smallest_monomial(R.poly("y + x*y"), o) == (0, 1)


def test_infinite_sentinel_total_order():
    assert INFINITE > 10 ** 9
    assert not (INFINITE < 5)
    assert INFINITE == INFINITE
    assert INFINITE != 3
    assert min(7, INFINITE) == 7
