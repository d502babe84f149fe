"""Adic machinery on worked examples with hand-checked values.

The recurring test rings:
  * k[x,y]/(xy, y^4): a line with an embedded fat point at the origin.
  * k[x,y,z]/(xz, yz, z^{n+2}): a plane with an embedded z-thickening.
All expected numbers below were derived by hand (annihilator chains,
length counts in monomial quotients) before being frozen here.
"""

import random
from fractions import Fraction

import pytest

from normalcone import (
    AdicEngine,
    IdealHandle,
    QQ,
    RingContext,
    achilles_manaresi,
    hilbert_samuel,
    ideal,
    multiplicity_hs,
    multiplicity_sequence,
    zero_ideal,
)
from normalcone.adic import a_index, divergence_index, first_differences
from normalcone.errors import INFINITE, NotMPrimary

from conftest import quotient_xy_y4, quotient_xz_yz_zk, random_poly


def _xy(R):
    return R.poly({(1, 0): Fraction(1)}), R.poly({(0, 1): Fraction(1)})


# -- Hilbert-Samuel tables -----------------------------------------------


def test_hilbert_samuel_counts_cumulative_lengths():
    R = quotient_xy_y4()
    x, y = _xy(R)
    table = hilbert_samuel(R, [x], R.gens(), 6)
    # R/(x) = k[y]/(y^4), so the lengths saturate at 4
    assert table == [0, 1, 2, 3, 4, 4, 4]
    assert table[0] == 0
    assert first_differences(table) == [1, 1, 1, 1, 0, 0]


def test_hilbert_samuel_rejects_non_primary_input():
    R = RingContext(("x", "y"), QQ, [], 10)
    x, y = _xy(R)
    with pytest.raises(NotMPrimary):
        hilbert_samuel(R, [], [x], 4)


def test_divergence_index_is_first_graded_mismatch():
    assert divergence_index([0, 1, 2, 3], [0, 1, 2, 3]) is None
    assert divergence_index([0, 1, 2, 4], [0, 1, 2, 3]) == 2
    R = quotient_xy_y4()
    x, y = _xy(R)
    hx = hilbert_samuel(R, [x], R.gens(), 6)
    hf = hilbert_samuel(R, [x + y**2], R.gens(), 6)
    assert hf == [0, 1, 2, 3, 3, 3, 3]
    assert divergence_index(hx, hf) == 3


# -- Artin-Rees numbers and initial ideals --------------------------------


def test_artin_rees_two_routes_agree():
    R = quotient_xy_y4()
    x, y = _xy(R)
    ar = AdicEngine(R, [x], R.gens()).artin_rees()
    assert ar["d"] == 1
    assert ar["fresh_route1"] == ar["fresh_route2"] == {1}
    # d' from the Rees-algebra route dominates the degreewise number
    assert ar["d"] <= ar["dprime"]


def test_ar_definition_holds_at_reported_level():
    R = quotient_xy_y4()
    x, y = _xy(R)
    eng = AdicEngine(R, [x + y**2], R.gens())
    d = eng.artin_rees()["d"]
    assert eng.check_ar_definition(d)


def test_zero_ideal_has_artin_rees_zero():
    R = quotient_xy_y4()
    assert AdicEngine(R, [], R.gens()).artin_rees()["d"] == 0


def test_initial_ideal_of_embedded_line():
    R = quotient_xy_y4()
    x, y = _xy(R)
    in_x = AdicEngine(R, [x], R.gens()).initial_ideal()
    assert in_x.d == 1
    assert in_x.generator_levels() == [1]
    assert in_x.equals_forms([x])

    # x + y^2 contributes its order-1 form x, and y^3 = y(x + y^2) is a
    # fresh level-3 generator
    in_f = AdicEngine(R, [x + y**2], R.gens()).initial_ideal()
    assert in_f.d == 3
    assert in_f.generator_levels() == [1, 3]
    assert in_f.equals_forms([x, y**3])
    assert not in_f.equals_forms([x])

    assert in_x.equals(in_x)
    assert not in_x.equals(in_f)
    assert in_x.first_difference_degree(in_f) == 3


def test_a_index_values_and_infinite_case():
    R = quotient_xy_y4()
    x, y = _xy(R)
    m = R.gens()
    # 0 : x = (y) and m^3 y = 0 while m^2 y = (y^3) != 0
    assert a_index(R, [], x, m) == 3
    # 0 : (x + y^2) = (y^2) and m^2 y^2 = 0
    assert a_index(R, [], x + y**2, m) == 2
    # the ceiling fast path must agree with the honest saturation route
    assert a_index(R, [], x, m, ceiling=5) == 3
    assert a_index(R, [], x + y**2, m, ceiling=5) == 2

    Rf = RingContext(("x", "y"), QQ, [], 12)
    xf, yf = _xy(Rf)
    # (x^2) : x = (x) is not inside any J-power back in (x^2)
    assert a_index(Rf, [xf**2], xf, Rf.gens()) is INFINITE
    assert a_index(Rf, [xf**2], xf, Rf.gens(), ceiling=3) is INFINITE
    with pytest.raises(ValueError):
        a_index(Rf, [], Rf.poly({}), Rf.gens())


def test_multiplicity_of_embedded_line_quotients():
    R = quotient_xy_y4()
    x, y = _xy(R)
    m = R.gens()
    # R/(x) = k[y]/(y^4) is artinian of length 4
    assert multiplicity_hs(R, [x], m) == (0, 4)
    # R/(x + y^2) = k[y]/(y^3)
    assert multiplicity_sequence(R, [x + y**2], m) == (0, [3])


# -- the plane-with-thickening family --------------------------------------


@pytest.mark.parametrize("n", [2, 3])
def test_thickened_plane_family(n):
    R = quotient_xz_yz_zk(n)
    m = R.gens()
    x = R.poly({(1, 0, 0): Fraction(1)})
    z = R.poly({(0, 0, 1): Fraction(1)})
    f = x + z**n

    eng_x = AdicEngine(R, [x], m)
    assert eng_x.artin_rees()["d"] == 1
    in_x = eng_x.initial_ideal()
    assert in_x.d == 1 and in_x.equals_forms([x])

    in_f = AdicEngine(R, [f], m).initial_ideal()
    assert in_f.d == n + 1
    assert in_f.equals_forms([x, z ** (n + 1)])

    # 0 : x = (z) and z^{n+2} = 0, so a(x) = n + 1; replacing x by f
    # shortens the chain by one
    assert a_index(R, [], x, m) == n + 1
    assert a_index(R, [], f, m) == n

    hx = hilbert_samuel(R, [x], m, 9)
    hf = hilbert_samuel(R, [f], m, 9)
    # R/(x) = k[y,z]/(yz, z^{n+2}): increments 1,2,2,... until the
    # thickening is exhausted, then 1 forever
    expect_x = [0]
    for s in range(1, 10):
        expect_x.append(expect_x[-1] + (2 if 2 <= s <= n + 2 else 1))
    assert hx == expect_x
    assert divergence_index(hx, hf) == n + 1

    assert multiplicity_hs(R, [x], m) == (1, 1)
    assert multiplicity_hs(R, [f], m) == (1, 1)


# -- Achilles-Manaresi tables ----------------------------------------------


def test_am_function_of_maximal_ideal_matches_hilbert_samuel():
    # for I = 0 and J = m the bigraded pieces collapse onto the m-adic
    # graded pieces, so h(r, s) with r large equals ell(R/m^{s+1})
    R = RingContext(("y", "z"), QQ,
                    [{(1, 1): Fraction(1)}, {(0, 4): Fraction(1)}], 20)
    m = R.gens()
    am = achilles_manaresi(R, [], m, 6, 8)
    hs = hilbert_samuel(R, [], m, 9)
    for s in range(6):
        assert am.h(6, s) == hs[s + 1]
        assert am.row_stabilized_value(s) == hs[s + 1]
    # G_{0v} counts minimal generators of m^v
    assert [am.cell(0, v) for v in range(6)] == [1, 2, 2, 2, 1, 1]


def test_multiplicity_sequence_of_primary_ideal_sits_in_top_slot():
    # for J primary to the maximal ideal the leading form of the AM
    # function lives entirely in the J-direction: (c_0,...,c_d) with
    # c_i = 0 for i < d and c_d the Hilbert-Samuel multiplicity
    R = RingContext(("y", "z"), QQ,
                    [{(1, 1): Fraction(1)}, {(0, 4): Fraction(1)}], 20)
    assert multiplicity_hs(R, [], R.gens()) == (1, 1)
    assert multiplicity_sequence(R, [], R.gens(), r_max=6, s_max=8) == (1, [0, 1])


# -- structural identities --------------------------------------------------


def _graded_piece_identity(ring, i_gens, j_gens, upto):
    """(gr_J(R)/in(I))_n has the same dimension as (J^n+I)/(J^{n+1}+I)."""
    eng = AdicEngine(ring, i_gens, j_gens)
    cap = ring.trunc_cap
    I = IdealHandle(ring, i_gens)
    J = IdealHandle(ring, j_gens)
    for n in range(1, upto + 1):
        gr_piece = eng.j_span(n).dim - eng.j_span(n + 1).dim
        rhs = (J.power(n) + I).span(cap).dim - (J.power(n + 1) + I).span(cap).dim
        assert gr_piece - eng.piece_dim(n) == rhs, n


def test_initial_ideal_pieces_complement_the_quotient_growth():
    R = quotient_xy_y4()
    x, y = _xy(R)
    _graded_piece_identity(R, [x + y**2], R.gens(), 6)
    Rf = RingContext(("x", "y"), QQ, [], 12)
    xf, yf = _xy(Rf)
    _graded_piece_identity(Rf, [xf**2 - yf**3], [xf, yf**2], 5)


def test_quotient_piece_dims_match_cover_differences():
    # for K inside I the initial ideal of I/K in R/K has piece dimensions
    # dim in(I)_n - dim in(K)_n, computable entirely in the cover via
    # I cap (J^n + K) = (J^n cap I) + K
    cap = 16
    R = RingContext(("x", "y"), QQ, [], cap)
    x, y = _xy(R)
    cases = [
        (x**2, y**3, [x, y]),
        (x * y, x**2 - y**3, [x, y]),
        (x**2, y**2, [x, y**2]),
        (x * y - y**3, x**2, [x, y**2]),
        (x**2 + y**3, x * y**2, [x, y]),
    ]
    for k1, extra, j_gens in cases:
        Rq = RingContext(("x", "y"), QQ, [dict(k1.terms)], cap)
        eng_q = AdicEngine(Rq, [Rq.poly(dict(extra.terms))],
                           [Rq.poly(dict(g.terms)) for g in j_gens])
        d_q = eng_q.artin_rees()["d"]
        I, K = ideal(R, k1, extra), ideal(R, k1)
        J = IdealHandle(R, j_gens)
        for n in range(1, d_q + 3):
            Jn, Jn1 = J.power(n), J.power(n + 1)
            a = (Jn.intersect(I) + Jn1).span(cap).dim
            b = (Jn.intersect(K) + Jn1).span(cap).dim
            assert eng_q.piece_dim(n) == a - b, (str(k1), n)
        d_cov = AdicEngine(R, [k1, extra], j_gens).artin_rees()["d"]
        assert d_q <= d_cov


def _exchange_dims(R, f1, f2, n):
    """dim of ((f1):f2) / ((f1) + 0:f2) in the artinian truncation R/m^{n+1},
    or None when either element dies there."""
    Rn = R.with_cap(n)
    g1, g2 = Rn.poly(dict(f1.terms)), Rn.poly(dict(f2.terms))
    if g1.is_zero() or g2.is_zero():
        return None
    A = ideal(Rn, g1).colon_element(g2)
    B = ideal(Rn, g1) + zero_ideal(Rn).colon_element(g2)
    return B.colength() - A.colength()


def test_exchange_quotients_are_symmetric_in_artinian_truncations():
    # ((f1):f2) / ((f1) + 0:f2) and the swap are isomorphic via
    # multiplication, so their lengths agree in every truncation
    rng = random.Random(5)
    cap = 8
    R = RingContext(("x", "y"), QQ, [], cap)
    Rq = RingContext(("x", "y"), QQ,
                     [{(1, 1): Fraction(1)}, {(0, 4): Fraction(1)}], cap)
    pairs = 0
    for trial in range(14):
        ring = R if trial % 2 == 0 else Rq
        f1 = random_poly(ring, rng, 3, 2)
        f2 = random_poly(ring, rng, 3, 2)
        if f1.is_zero() or f2.is_zero():
            continue
        for n in range(2, cap - 1):
            assert _exchange_dims(ring, f1, f2, n) == \
                _exchange_dims(ring, f2, f1, n), (trial, n)
        pairs += 1
    assert pairs >= 6
