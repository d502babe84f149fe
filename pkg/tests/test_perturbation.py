"""Perturbation bounds, randomized invariance checks, destabilization search.

Expected certificate numbers are hand-derived from annihilator chains in the
fixture rings; see tests/test_adic.py for the underlying a-index and
Artin-Rees values.
"""

from fractions import Fraction

import pytest

from normalcone import (
    AdicEngine,
    IdealHandle,
    QQ,
    RingContext,
    bound_main,
    bound_regular,
    bound_via_hilbert,
    certify_filter_regular,
    sample_perturbation,
    search_destabilizing,
    verify_invariance,
)
from normalcone.errors import NotFilterRegular

from conftest import quotient_x2_xy, quotient_xy_y4, quotient_xz_yz_zk


def _xy(R):
    return R.poly({(1, 0): Fraction(1)}), R.poly({(0, 1): Fraction(1)})


def test_filter_regular_certificate():
    R = quotient_xy_y4()
    x, y = _xy(R)
    cert = certify_filter_regular(R, [x], R.gens())
    assert cert.filter_regular
    assert cert.a_values == (3,)
    assert cert.failing_index is None

    # 0 : y contains x, which has infinite length in this ring
    bad = certify_filter_regular(R, [y], R.gens())
    assert not bad.filter_regular
    assert bad.failing_index == 1
    assert bad.to_dict()["a_values"] == ["INFINITE"]

    with pytest.raises(ValueError):
        certify_filter_regular(R, [], R.gens())
    with pytest.raises(ValueError):
        certify_filter_regular(R, [R.poly({})], R.gens())


def test_bound_main_single_element():
    R = quotient_xy_y4()
    x, y = _xy(R)
    cert = bound_main(R, [x], R.gens())
    assert cert.N == 4
    assert cert.formula == "main"
    assert cert.a_values == (3,)
    assert cert.ar_values == (1,)
    assert cert.extras["c_single"] == 3
    with pytest.raises(NotFilterRegular):
        bound_main(R, [y], R.gens())


def test_bound_main_pair():
    R = quotient_xz_yz_zk(2)
    x = R.poly({(1, 0, 0): Fraction(1)})
    y = R.poly({(0, 1, 0): Fraction(1)})
    # a(x) = 3 via 0:x = (z), and a(y over (x)) = 3 via (x):y = (x, z);
    # the weighted sum a_1 + 2 a_2 = 9 dominates both Artin-Rees numbers
    cert = bound_main(R, [x, y], R.gens())
    assert cert.N == 10
    assert cert.a_values == (3, 3)
    assert cert.ar_values == (1, 1)
    # perturbing only the first element needs just max(a_1+a_2, ar) + 1
    assert cert.extras["c_first_only"] == 7


def test_bound_regular_needs_true_regularity():
    R = RingContext(("x", "y"), QQ, [], 12)
    x, y = _xy(R)
    cert = bound_regular(R, [x**2 - y**3], R.gens())
    assert cert.N == 3
    assert cert.a_values == (0,)
    assert cert.ar_values == (2,)

    Rq = quotient_xy_y4()
    xq, yq = _xy(Rq)
    # x is filter-regular but not regular (a = 3)
    with pytest.raises(NotFilterRegular):
        bound_regular(Rq, [xq], Rq.gens())


def test_bound_via_hilbert():
    R = quotient_xy_y4()
    x, y = _xy(R)
    f = x + y**2
    cert = bound_via_hilbert(R, [f], R.gens(), p=3)
    assert cert.N == 4
    assert cert.ar_values == (3,)
    assert cert.extras == {"p_supplied": True, "p": 3}
    # the sampling estimate finds the same index here, but can only ever
    # certify it as a lower bound
    est = bound_via_hilbert(R, [f], R.gens())
    assert est.N == 4
    assert est.extras["p"] == 3
    assert est.extras["p_status"] == "lower-bound-only"
    with pytest.raises(ValueError):
        bound_via_hilbert(R, [f], R.gens(), p=-1)


def test_sample_perturbation_is_deterministic_and_lands_in_power():
    R = quotient_xy_y4()
    m = R.gens()
    samples = sample_perturbation(R, m, N=2, count=5, seed=3)
    assert samples[0].is_zero()
    again = sample_perturbation(R, m, N=2, count=5, seed=3)
    assert [str(s) for s in samples] == [str(s) for s in again]
    other = sample_perturbation(R, m, N=2, count=5, seed=4)
    assert [str(s) for s in samples] != [str(s) for s in other]
    J2 = IdealHandle(R, m).power(2)
    assert all(s.is_zero() or J2.member(s) for s in samples)
    with pytest.raises(ValueError):
        sample_perturbation(R, m, N=0, count=3, seed=0)


def test_verify_invariance_passes_at_certified_level():
    R = quotient_xy_y4()
    x, y = _xy(R)
    reports = verify_invariance(R, [x], R.gens(), N=4, trials=6, seed=1)
    assert len(reports) == 6
    assert all(r.passed for r in reports)
    assert reports[0].eps == ("0",)
    assert sorted(reports[0].outcomes) == [
        "am_equal",
        "artin_rees_equal",
        "filter_regular_preserved",
        "hilbert_equal",
        "initial_ideal_equal",
        "length_epi",
    ]
    assert all(r.outcomes["initial_ideal_equal"] for r in reports)


def test_verify_invariance_chunks_merge_to_the_sequential_run():
    R = quotient_xy_y4()
    x, y = _xy(R)
    full = [r.to_dict()
            for r in verify_invariance(R, [x], R.gens(), N=4, trials=6, seed=1)]
    c1 = verify_invariance(R, [x], R.gens(), N=4, trials=6, seed=1,
                           trial_range=range(0, 3))
    c2 = verify_invariance(R, [x], R.gens(), N=4, trials=6, seed=1,
                           trial_range=range(3, 6))
    assert [r.to_dict() for r in (*c1, *c2)] == full


def test_verify_invariance_rejects_unstable_input():
    R = quotient_xy_y4()
    x, y = _xy(R)
    with pytest.raises(NotFilterRegular):
        verify_invariance(R, [y], R.gens(), N=2, trials=2, seed=0)


def test_search_finds_structured_witness_below_the_bound():
    R = quotient_xy_y4()
    x, y = _xy(R)
    w = search_destabilizing(R, [x], R.gens(), N=2, trials=5, seed=0)
    assert w is not None
    assert w.eps == "y^2"
    assert w.source == "structured"
    assert w.index == 1 and w.prefix == 1
    # x + y^2 first deviates from x at the level of the fresh generator y^3
    assert w.degree == 3


def test_search_confirms_certified_level():
    R = quotient_xy_y4()
    x, y = _xy(R)
    assert search_destabilizing(R, [x], R.gens(), N=4, trials=5, seed=0) is None


def test_search_runs_without_filter_regularity():
    # here 0 : x = m has infinite length, so no perturbation level is safe:
    # every J^N contains the destabilizing element y^N
    R = quotient_x2_xy()
    x, y = _xy(R)
    assert not certify_filter_regular(R, [x], R.gens()).filter_regular
    for N in (1, 2, 6):
        w = search_destabilizing(R, [x], R.gens(), N=N, trials=3, seed=0)
        assert w is not None
        assert w.eps == (f"y^{N}" if N > 1 else "y")
        assert w.source == "structured"
        assert w.degree == (N + 1 if N > 1 else 1)


def test_certified_bounds_are_sharp_one_level_down():
    # cusp: N = 3 is certified, and eps = y^2 at level 2 already moves the
    # initial ideal (the order-2 form becomes y^2 instead of x^2)
    R = RingContext(("x", "y"), QQ, [], 12)
    x, y = _xy(R)
    f = x**2 - y**3
    assert bound_regular(R, [f], R.gens()).N == 3
    in_f = AdicEngine(R, [f], R.gens()).initial_ideal()
    in_g = AdicEngine(R, [f + y**2], R.gens()).initial_ideal()
    assert in_g.first_difference_degree(in_f) == 2

    # embedded-line ring: N = 4 is certified and eps = y^2 at level 2
    # introduces the fresh level-3 generator y^3
    Rq = quotient_xy_y4()
    xq, yq = _xy(Rq)
    assert bound_main(Rq, [xq], Rq.gens()).N == 4
    in_x = AdicEngine(Rq, [xq], Rq.gens()).initial_ideal()
    in_p = AdicEngine(Rq, [xq + yq**2], Rq.gens()).initial_ideal()
    assert in_p.first_difference_degree(in_x) == 3
