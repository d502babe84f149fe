"""Noetherian filtrations: order-induced, adic, and explicit tables.

The order-induced filtration J_n = (all monomials at enumeration position
>= n) depends on the variable priority, so the cusp x^2 - y^3 is the
recurring example: its initial monomial x^2 sits at position 3 when x < y
and position 5 when x > y.
"""

from fractions import Fraction

import pytest

from normalcone import (
    AdicEngine,
    IdealHandle,
    JetInstance,
    QQ,
    RingContext,
    adic_filtration,
    artin_rees_filtration,
    artin_rees_number,
    bound_filtration,
    filtration_from_order,
    initial_ideal,
    initial_ideal_filtration,
    jet_pipeline,
    rees_delta,
    search_destabilizing_filtration,
    table_filtration,
)
from normalcone.filtrations import (
    check_ar_decomposition,
    check_lemma_J1,
    minimal_decomposition_c,
)
from normalcone.orders import deglex
from normalcone.errors import TruncationCapExceeded

from conftest import quotient_xy_y4


def _ring(cap=12):
    R = RingContext(("x", "y"), QQ, [], cap)
    return R, R.poly({(1, 0): Fraction(1)}), R.poly({(0, 1): Fraction(1)})


def _orders():
    return deglex(2, priority=(1, 0)), deglex(2, priority=(0, 1))  # x<y, x>y


# -- level structure ---------------------------------------------------------


def test_order_filtration_positions_follow_the_enumeration():
    R, x, y = _ring()
    lo, hi = _orders()
    F_xly = filtration_from_order(lo, R, cap=32)
    F_xgy = filtration_from_order(hi, R, cap=32)
    # ascending enumeration for x < y: 1, x, y, x^2, xy, y^2, ...
    assert F_xly.position((2, 0)) == 3
    assert F_xgy.position((2, 0)) == 5
    assert F_xly.monomial_level_gens(3) == ((2, 0), (1, 1), (0, 2))
    # J_1 of an order filtration is the whole maximal ideal
    assert sorted(str(g) for g in F_xly.j1_gens()) == ["x", "y"]


def test_filtration_levels_multiply_into_each_other():
    R, x, y = _ring()
    lo, _ = _orders()
    for F in (filtration_from_order(lo, R, cap=32),
              adic_filtration(R, [x, y], cap=16)):
        for i, j in ((1, 1), (1, 2), (2, 2)):
            assert F.level(i + j).contains_ideal(F.level(i) * F.level(j))
        assert F.level(2).contains_ideal(F.level(3))


def test_table_filtration_extends_past_the_table():
    R, x, y = _ring()
    Ft = table_filtration(R, [[x, y], [x**2, x * y, y**2]], cap=8)
    assert sorted(str(g) for g in Ft.level_gens(3)) == [
        "x*y^2", "x^2*y", "x^3", "y^3"]
    assert rees_delta(Ft) == (1, "certified-within-cap")


def test_table_filtration_rejects_non_filtrations():
    R, x, y = _ring()
    with pytest.raises(ValueError, match="not a filtration"):
        table_filtration(R, [[y**2], [x]], cap=8)


def test_filtration_cap_is_enforced():
    R, x, y = _ring()
    Fa = adic_filtration(R, [x, y], cap=4)
    with pytest.raises(ValueError, match="exceeds the cap"):
        Fa.level(5)


# -- Rees generation degree ---------------------------------------------------


def test_rees_delta_statuses():
    R, x, y = _ring()
    lo, hi = _orders()
    # a two-variable order filtration keeps producing fresh generators, so
    # the scan can only report a heuristic value
    assert rees_delta(filtration_from_order(lo, R, cap=32)) == (8, "heuristic")
    assert rees_delta(filtration_from_order(hi, R, cap=32)) == (8, "heuristic")
    # adic and one-variable order filtrations are generated in degree 1
    assert rees_delta(adic_filtration(R, [x, y], cap=16)) == \
        (1, "certified-within-cap")
    R1 = RingContext(("t",), QQ, [], 12)
    assert rees_delta(filtration_from_order(deglex(1), R1, cap=32)) == \
        (1, "certified-within-cap")


def test_rees_delta_sees_fresh_table_level():
    R, x, y = _ring()
    # x*y^3 lies in J_2 but not in J_1^2 = (x^4, x^2 y^2, y^4)
    Ft = table_filtration(
        R, [[x**2, y**2], [x**4, x**2 * y**2, y**4, x * y**3]], cap=8)
    assert rees_delta(Ft) == (2, "certified-within-cap")


def test_powers_of_level_one_bound_the_filtration():
    R, x, y = _ring()
    _, hi = _orders()
    assert check_lemma_J1(filtration_from_order(hi, R, cap=64), 5)
    assert check_lemma_J1(adic_filtration(R, [x, y**2], cap=16), 5)


# -- initial ideals along a filtration ----------------------------------------


def test_initial_ideal_of_cusp_depends_on_priority():
    R, x, y = _ring()
    lo, hi = _orders()
    f = x**2 - y**3
    in_lo = initial_ideal_filtration([f], filtration_from_order(lo, R, cap=32))
    assert in_lo.to_dict() == {"monomials": ["x^2"], "positions": [3], "d": 3}
    in_hi = initial_ideal_filtration([f], filtration_from_order(hi, R, cap=32))
    assert in_hi.to_dict() == {"monomials": ["x^2"], "positions": [5], "d": 5}
    assert in_lo.contains_monomial((2, 0))
    assert not in_lo.contains_monomial((0, 2))
    assert in_lo.equals_monomials([x**2])
    # the degreewise recomputation must reproduce the same graded pieces
    assert in_lo.degreewise_check()


def test_initial_ideal_refuses_uncertified_truncation():
    # reducing (x + y^7, y + x^7) tail-chases between the generators and
    # never settles at any finite cap, so the engine refuses rather than
    # returning an uncertified answer
    R, x, y = _ring()
    lo, _ = _orders()
    F = filtration_from_order(lo, R, cap=32)
    with pytest.raises(TruncationCapExceeded):
        initial_ideal_filtration([x + y**7, y + x**7], F)


def test_adic_filtration_shares_the_adic_code_path():
    R, x, y = _ring()
    f = x**2 - y**3
    Fa = adic_filtration(R, [x, y], cap=16)
    assert artin_rees_filtration([f], Fa) == artin_rees_number(R, [f], [x, y])
    assert initial_ideal_filtration([f], Fa).equals(initial_ideal(R, [f], [x, y]))


# -- Artin-Rees numbers along filtrations --------------------------------------


def test_artin_rees_along_order_filtrations():
    R, x, y = _ring()
    lo, hi = _orders()
    f = x**2 - y**3
    assert artin_rees_filtration([f], filtration_from_order(lo, R, cap=32)) == 3
    assert artin_rees_filtration([f], filtration_from_order(hi, R, cap=32)) == 5


def test_decomposition_windows_match_the_generation_level():
    R, x, y = _ring()
    lo, hi = _orders()
    f = x**2 - y**3
    # beyond c itself the decomposition needs the Rees algebra generated by
    # degree c, which fails for these order filtrations at the window edge
    assert check_ar_decomposition([f], filtration_from_order(lo, R, cap=32), 3) \
        == {3: True, 4: True, 5: False}
    assert check_ar_decomposition([f], filtration_from_order(hi, R, cap=32), 5) \
        == {5: True, 6: True, 7: False}


def test_minimal_decomposition_matches_adic_artin_rees():
    # for adic filtrations the defining decomposition certifies exactly the
    # engine's Artin-Rees number: the window passes at d and fails below
    R, x, y = _ring()
    R16, x16, y16 = _ring(16)
    Rq = quotient_xy_y4()
    xq, yq = Rq.poly({(1, 0): Fraction(1)}), Rq.poly({(0, 1): Fraction(1)})
    cases = [
        (R, [x**2 - y**3], [x, y]),
        (Rq, [xq], [xq, yq]),
        (Rq, [xq + yq**2], [xq, yq]),
        (R, [x * y - y**3], [x, y]),
        (R16, [x16**2 + y16**5], [x16, y16]),
    ]
    for ring, fs, jg in cases:
        Fa = adic_filtration(ring, jg, cap=16)
        d = AdicEngine(ring, fs, jg).artin_rees()["d"]
        assert minimal_decomposition_c(fs, Fa, 8) == d
        if d >= 1:
            assert not all(check_ar_decomposition(fs, Fa, d - 1).values())


# -- perturbation bounds along filtrations --------------------------------------


def test_bound_filtration_order_kind():
    R, x, y = _ring()
    lo, hi = _orders()
    f = x**2 - y**3
    lo_cert = bound_filtration([f], filtration_from_order(lo, R, cap=32))
    assert lo_cert.N == 4
    assert lo_cert.extras["regular_shortcut"]
    assert lo_cert.extras["delta_status"] == "heuristic"
    assert "warning" in lo_cert.extras
    hi_cert = bound_filtration([f], filtration_from_order(hi, R, cap=32))
    assert hi_cert.N == 6
    assert hi_cert.ar_values == (5,)


def test_bound_filtration_adic_kind_reproduces_the_adic_theorem():
    Rq = quotient_xy_y4()
    xq, yq = Rq.poly({(1, 0): Fraction(1)}), Rq.poly({(0, 1): Fraction(1)})
    cert = bound_filtration([xq], adic_filtration(Rq, [xq, yq], cap=16))
    assert cert.N == 4
    assert cert.a_values == (3,)
    assert cert.ar_values == (1,)
    assert cert.extras["kind"] == "adic"
    assert cert.extras["delta_status"] == "certified-within-cap"
    assert cert.extras["theorem_N"] == cert.extras["adic_theorem_N"] == 4
    assert not cert.extras["regular_shortcut"]


# -- jets ----------------------------------------------------------------------


def test_jet_truncation_past_the_bound_changes_nothing():
    R, x, y = _ring()
    lo, hi = _orders()
    rep = jet_pipeline(JetInstance(R, (x**2 - y**3,), lo))
    assert rep.N == 4
    assert rep.admissible_from == 2
    assert rep.baseline == ((2, 0),)
    assert rep.all_pass()
    assert [l.level for l in rep.levels] == [3, 4, 5, 6, 7]
    rep_hi = jet_pipeline(JetInstance(R, (x**2 - y**3,), hi))
    assert rep_hi.N == 6 and rep_hi.all_pass()


def test_jet_pipeline_two_generators():
    R, x, y = _ring()
    lo, _ = _orders()
    inst = JetInstance(R, (x**2 - y**3, y**2 - x**3), lo, levels=(1, 2, 3))
    rep = jet_pipeline(inst)
    assert rep.N == 6
    assert rep.baseline == ((2, 0), (0, 2))
    assert rep.admissible_from == 2
    lv1, lv2, lv3 = rep.levels
    # level 1 jets are x^2, y^2 with dropped tails of degree 3 < N: inadmissible
    assert (lv1.tail_in_JN, lv1.jets_regular, lv1.initials_equal) == \
        (False, None, None)
    assert lv2.tail_in_JN and lv2.jets_regular and lv2.initials_equal
    assert lv3.tail_in_JN and lv3.jets_regular and lv3.initials_equal


def test_jet_pipeline_rejects_irregular_sequences():
    R, x, y = _ring()
    lo, _ = _orders()
    from normalcone.errors import NotFilterRegular
    # (x^2 : xy) = (x) meets every m^n outside (x^2), so the second colon
    # index is INFINITE and the sequence is not even filter-regular
    with pytest.raises(NotFilterRegular):
        jet_pipeline(JetInstance(R, (x**2, x * y), lo))
    with pytest.raises(ValueError, match="regular sequence"):
        JetInstance(R, (x, y, x + y), lo)


# -- destabilization search ------------------------------------------------------


def test_filtration_search_respects_the_certified_level():
    R, x, y = _ring()
    lo, _ = _orders()
    F = filtration_from_order(lo, R, cap=32)
    f = x**2 - y**3
    assert search_destabilizing_filtration([f], F, 4, 3, 0) is None
    w = search_destabilizing_filtration([f], F, 3, 3, 0)
    assert w is not None
    # one level below the bound a random element of J_3 already moves the
    # initial ideal (J_3 contains y^2, which perturbs the order-2 form)
    assert w.degree == 3
