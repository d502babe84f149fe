"""Perturbation stability of initial ideals along the J-adic filtration.

For an ideal generated by a J-filter regular sequence there is an explicit
level N so that replacing each generator f_i by f_i + eps_i with eps_i in
J^N preserves the initial ideal, the Artin-Rees number, the associated
graded ring and hence every invariant derived from it.  This module turns
those statements into executable certificates: filter-regularity with the
per-index nilpotency indices a_i, the bound N itself (several formulas of
differing strength), seeded random sampling of perturbations, trial-by-trial
verification, and the converse search for a destabilizing perturbation when
the sequence is not filter-regular.

A verification failure at a certified level is a bug in the engine or the
certificate, never an acceptable outcome; reports record it loudly instead
of masking it.
"""

import random
from dataclasses import dataclass, field

from .adic import (AdicEngine, _require_m_primary, a_index, achilles_manaresi,
                   first_differences, hilbert_samuel)
from .errors import INFINITE, NotFilterRegular, NotMPrimary
from .ideals import IdealHandle
from .monomials import monomials_of_degree
from .rings import RingContext

_COEFF_BOX = 2  # perturbation coefficients are drawn uniformly from {-2..2}


def _trial_rng(seed, trial):
    # distinct deterministic stream per (seed, trial); plain ints only so the
    # derivation is independent of hash randomization
    return random.Random((seed * 1_000_003 + trial) & 0x7FFFFFFFFFFFFFFF)


def is_m_primary(ring, gens):
    """Honest test in the polynomial cover that (gens) + K is m-primary."""
    try:
        _require_m_primary(ring, IdealHandle(ring, gens), "ideal")
    except NotMPrimary:
        return False
    return True


# -- filter-regularity certificates -------------------------------------------


@dataclass(frozen=True)
class FilterRegularCertificate:
    fs: tuple
    j_gens: tuple
    a_values: tuple          # one entry per certified index, INFINITE stops
    filter_regular: bool
    failing_index: object    # 1-based index of the first failure, else None

    def to_dict(self):
        return {
            "fs": [str(f) for f in self.fs],
            "a_values": [repr(a) if a is INFINITE else a for a in self.a_values],
            "filter_regular": self.filter_regular,
            "failing_index": self.failing_index,
        }


def certify_filter_regular(ring, fs, j_gens, ceilings=None):
    """Certify f_1..f_r as a J-filter regular sequence.

    a_i is the least n with J^n ((f_1..f_{i-1}) : f_i) inside (f_1..f_{i-1});
    the sequence is filter-regular exactly when every a_i is finite.  The walk
    stops at the first infinite index.  Optional per-index ceilings switch
    a_index into its fast path (see a_index)."""
    fs = tuple(ring.poly(f) for f in fs)
    if not fs:
        raise ValueError("empty sequence")
    for f in fs:
        if f.is_zero():
            raise ValueError("zero element in the sequence")
    jt = tuple(ring.poly(g) for g in j_gens)
    a_values = []
    for i, f in enumerate(fs):
        ceiling = None if ceilings is None else ceilings[i]
        a = a_index(ring, list(fs[:i]), f, jt, ceiling=ceiling)
        a_values.append(a)
        if a is INFINITE:
            return FilterRegularCertificate(fs, jt, tuple(a_values), False, i + 1)
    return FilterRegularCertificate(fs, jt, tuple(a_values), True, None)


# -- bound certificates --------------------------------------------------------


@dataclass(frozen=True)
class BoundCertificate:
    N: int
    formula: str             # main | regular | hilbert | filtration
    a_values: tuple
    ar_values: tuple         # ar_J(f_1..f_i) for the prefixes that were needed
    extras: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "N": self.N,
            "formula": self.formula,
            "a_values": list(self.a_values),
            "ar_values": list(self.ar_values),
            "extras": dict(self.extras),
        }


def _prefix_ar(ring, fs, j_gens):
    return tuple(AdicEngine(ring, list(fs[:i + 1]), j_gens).artin_rees()["d"]
                 for i in range(len(fs)))


def bound_main(ring, fs, j_gens, certificate=None):
    """N = max{a_1 + 2a_2 + .. + 2^{r-1}a_r, ar_J(f_1), .., ar_J(f_1..f_r)} + 1.

    For r = 1 the sharper single-element level c = max{a_1, ar_J(f_1)+1} is
    recorded alongside; for r = 2 the single-index level
    c = max{a_1+a_2, ar_J(f_1), ar_J(f_1,f_2)} + 1 (perturbing f_1 only)."""
    cert = certificate or certify_filter_regular(ring, fs, j_gens)
    if not cert.filter_regular:
        raise NotFilterRegular(
            f"sequence is not J-filter regular (index {cert.failing_index})")
    a = cert.a_values
    ars = _prefix_ar(ring, cert.fs, cert.j_gens)
    weighted = sum((2 ** i) * a[i] for i in range(len(a)))
    N = max([weighted] + list(ars)) + 1
    extras = {}
    if len(a) == 1:
        extras["c_single"] = max(a[0], ars[0] + 1)
    if len(a) == 2:
        extras["c_first_only"] = max(a[0] + a[1], ars[0], ars[1]) + 1
    return BoundCertificate(N, "main", a, ars, extras)


def bound_regular(ring, fs, j_gens, certificate=None):
    """N = ar_J(f_1..f_r) + 1, valid when the sequence is regular (all a_i = 0)."""
    cert = certificate or certify_filter_regular(ring, fs, j_gens)
    if not cert.filter_regular or any(a != 0 for a in cert.a_values):
        raise NotFilterRegular("sequence is not regular (some a_i is nonzero)")
    ar = AdicEngine(ring, list(cert.fs), cert.j_gens).artin_rees()["d"]
    return BoundCertificate(ar + 1, "regular", cert.a_values, (ar,), {})


def bound_via_hilbert(ring, fs, j_gens, p=None, **estimate_kwargs):
    """N = max{p, ar_J(I) + 1} for m-primary J, where p is the Hilbert
    perturbation index (supplied, or estimated from below by sampling)."""
    jt = tuple(ring.poly(g) for g in j_gens)
    _require_m_primary(ring, IdealHandle(ring, jt), "J")
    cert = certify_filter_regular(ring, fs, j_gens)
    if not cert.filter_regular:
        raise NotFilterRegular(
            f"sequence is not J-filter regular (index {cert.failing_index})")
    extras = {"p_supplied": p is not None}
    if p is None:
        est = estimate_hilbert_index(ring, fs, jt, **estimate_kwargs)
        p = est.p_hat
        extras["p_status"] = est.status
    if p < 0:
        raise ValueError("Hilbert perturbation index must be >= 0")
    extras["p"] = p
    ar = AdicEngine(ring, list(cert.fs), jt).artin_rees()["d"]
    return BoundCertificate(max(p, ar + 1), "hilbert", cert.a_values, (ar,), extras)


# -- sampling ------------------------------------------------------------------


def _level_basis(ring, j_gens, level, degree_cap):
    """Deterministic list of products (monomial) * (generator of J^level)
    whose order is still at most degree_cap."""
    J = IdealHandle(ring, j_gens)
    power = J.power(level).gens if level > 0 else (ring.one,)
    basis, seen = [], set()
    for g in power:
        if g.is_zero():
            continue
        gd = g.min_degree()
        for k in range(max(0, degree_cap - gd) + 1):
            for mu in monomials_of_degree(ring.base_n, k):
                p = ring.mono(mu) * g
                if p.is_zero() or p.min_degree() > degree_cap or p in seen:
                    continue
                seen.add(p)
                basis.append(p)
    return basis


def _draw(ring, basis, rng):
    eps = ring.zero
    for b in basis:
        c = rng.randint(-_COEFF_BOX, _COEFF_BOX)
        if c:
            eps = eps + b.scale(ring.field.coerce(c))
    return eps


def sample_perturbation(ring, j_gens, N, count, seed, degree_cap=None):
    """count elements of J^N, deterministic per seed; index 0 is always 0.

    Each sample is a box-coefficient combination of monomial multiples of
    the generators of J^N up to degree_cap (default N + 3)."""
    if N < 1:
        raise ValueError("perturbation level must be >= 1")
    if degree_cap is None:
        degree_cap = N + 3
    J = IdealHandle(ring, j_gens)
    mindeg = min(g.min_degree() for g in J.gens)
    if degree_cap < N * mindeg:
        raise ValueError(
            f"degree cap {degree_cap} below the order N*{mindeg} of J^{N}")
    basis = _level_basis(ring, j_gens, N, degree_cap)
    out = [ring.zero]
    for trial in range(1, count):
        out.append(_draw(ring, basis, _trial_rng(seed, trial)))
    return out[:count]


# -- invariance verification ---------------------------------------------------


@dataclass(frozen=True)
class PerturbationReport:
    trial: int
    seed: int
    N: int
    eps: tuple               # printable forms of the sampled eps_i
    outcomes: dict           # name -> True/False/None (None: not applicable)
    passed: bool
    notes: tuple = ()

    def to_dict(self):
        return {
            "trial": self.trial,
            "seed": self.seed,
            "N": self.N,
            "eps": list(self.eps),
            "outcomes": dict(self.outcomes),
            "passed": self.passed,
            "notes": list(self.notes),
        }


def _am_cells(ring, i_gens, j_gens, window):
    table = achilles_manaresi(ring, i_gens, j_gens, window, window)
    return {k: v for k, v in table.cells.items()}


def verify_invariance(ring, fs, j_gens, N, trials, seed, degree_cap=None,
                      hs_upto=None, am_window=None, baseline=None,
                      trial_range=None):
    """Perturb every generator by a random element of J^N and check that the
    certified invariants survive, once per trial.

    Checks per trial: (a) the perturbed sequence is filter-regular with
    a_i' <= 2^{i-1} a_i, (b) the initial ideal is unchanged, (c) the
    Artin-Rees number is unchanged, (d) for m-primary J the Hilbert-Samuel
    table is unchanged and the graded lengths of the perturbed ring never
    exceed the original ones, (e) the bigraded length table agrees on a small
    window.  Trial 0 is the identity perturbation.

    trial_range restricts the run to a subset of absolute trial indices; the
    per-trial RNG stream depends only on (seed, trial), so splitting the range
    across workers and merging by index reproduces the sequential run."""
    fs = tuple(ring.poly(f) for f in fs)
    jt = tuple(ring.poly(g) for g in j_gens)
    if degree_cap is None:
        degree_cap = N + 3
    cap = ring.trunc_cap

    if baseline is None:
        baseline = {}
        cert0 = certify_filter_regular(ring, fs, jt)
        if not cert0.filter_regular:
            raise NotFilterRegular(
                f"sequence is not J-filter regular (index {cert0.failing_index})")
        baseline["cert"] = cert0
        eng0 = AdicEngine(ring, list(fs), jt)
        baseline["ar"] = eng0.artin_rees()["d"]
        baseline["in"] = eng0.initial_ideal()
        baseline["mp"] = is_m_primary(ring, jt)
        if baseline["mp"]:
            upto = hs_upto if hs_upto is not None else min(cap - 1, N + 4)
            baseline["hs_upto"] = upto
            baseline["hs"] = hilbert_samuel(ring, list(fs), jt, upto)
        aw = am_window if am_window is not None else 2
        baseline["am_window"] = aw if cap >= 2 * aw + 2 else None
        if baseline["am_window"] is not None:
            baseline["am"] = _am_cells(ring, list(fs), jt, baseline["am_window"])
    cert0 = baseline["cert"]
    ceilings = [(2 ** i) * cert0.a_values[i] for i in range(len(fs))]

    basis = _level_basis(ring, jt, N, degree_cap)
    if trial_range is None:
        trial_range = range(trials)
    reports = []
    for trial in trial_range:
        if trial == 0:
            eps = [ring.zero] * len(fs)
        else:
            rng = _trial_rng(seed, trial)
            eps = [_draw(ring, basis, rng) for _ in fs]
        fs2 = [f + e for f, e in zip(fs, eps)]
        outcomes, notes = {}, []

        cert2 = certify_filter_regular(ring, fs2, jt, ceilings=ceilings)
        ok_fr = cert2.filter_regular and all(
            a2 <= c for a2, c in zip(cert2.a_values, ceilings))
        outcomes["filter_regular_preserved"] = ok_fr
        if not ok_fr:
            notes.append(f"a-values {cert2.a_values} exceed ceilings {ceilings}")

        eng2 = AdicEngine(ring, fs2, jt)
        outcomes["artin_rees_equal"] = eng2.artin_rees()["d"] == baseline["ar"]
        outcomes["initial_ideal_equal"] = eng2.initial_ideal().equals(baseline["in"])

        if baseline["mp"]:
            hs2 = hilbert_samuel(ring, fs2, jt, baseline["hs_upto"])
            outcomes["hilbert_equal"] = hs2 == baseline["hs"]
            # eps in J^{ar+1} gives a graded epimorphism onto the perturbed
            # ring, so lengths can only drop; N >= ar+1 for every certificate
            d0 = first_differences(baseline["hs"])
            d2 = first_differences(hs2)
            outcomes["length_epi"] = all(a >= b for a, b in zip(d0, d2))
        else:
            outcomes["hilbert_equal"] = None
            outcomes["length_epi"] = None

        if baseline.get("am_window") is not None:
            am2 = _am_cells(ring, fs2, jt, baseline["am_window"])
            outcomes["am_equal"] = am2 == baseline["am"]
        else:
            outcomes["am_equal"] = None

        passed = all(v is not False for v in outcomes.values())
        if not passed:
            notes.append("invariance FAILED at a certified level: engine bug "
                         "or wrong certificate")
        reports.append(PerturbationReport(
            trial, seed, N, tuple(str(e) for e in eps), outcomes, passed,
            tuple(notes)))
    return reports


# -- destabilization search (the converse direction) ---------------------------


@dataclass(frozen=True)
class DestabilizationWitness:
    eps: str
    index: int               # 1-based index of the perturbed element
    prefix: int              # in(f_1..f_prefix) is what changed
    degree: int              # first level where the initial ideals differ
    source: str              # structured | random
    trial: object = None

    def to_dict(self):
        return {
            "eps": self.eps,
            "index": self.index,
            "prefix": self.prefix,
            "degree": self.degree,
            "source": self.source,
            "trial": self.trial,
        }


def _structured_candidates(ring, j_gens, level, degree_cap):
    """Pure variable powers lying in J^level, smallest degrees first.

    Membership is decided honestly in the polynomial cover."""
    cov = ring.cover()
    plain = RingContext(cov.var_names, cov.field, (), None, cov.base_n)
    jpow = IdealHandle(plain, [plain.embed(cov.embed(ring.poly(g)))
                               for g in j_gens]).power(level)
    out = []
    for k in range(1, degree_cap + 1):
        for i in range(ring.base_n):
            exps = tuple(k if j == i else 0 for j in range(ring.base_n))
            if jpow.member(plain.mono(exps)):
                out.append(ring.mono(exps))
    return out


def search_destabilizing(ring, fs, j_gens, N, trials, seed, degree_cap=None):
    """Look for eps in J^N whose insertion changes some prefix initial ideal.

    Structured candidates (pure variable powers in J^N) are tried before
    random samples.  Returns a DestabilizationWitness or None.  For a
    filter-regular sequence at a certified level the search must come back
    empty."""
    fs = tuple(ring.poly(f) for f in fs)
    jt = tuple(ring.poly(g) for g in j_gens)
    if degree_cap is None:
        degree_cap = N + 3
    base_in = [AdicEngine(ring, list(fs[:i + 1]), jt).initial_ideal()
               for i in range(len(fs))]

    candidates = [(e, "structured", None)
                  for e in _structured_candidates(ring, jt, N, degree_cap)]
    basis = _level_basis(ring, jt, N, degree_cap)
    for trial in range(1, trials + 1):
        eps = _draw(ring, basis, _trial_rng(seed, trial))
        if not eps.is_zero():
            candidates.append((eps, "random", trial))

    seen = set()
    for eps, source, trial in candidates:
        if eps in seen:
            continue
        seen.add(eps)
        for i in range(len(fs)):
            for prefix in range(i, len(fs)):
                fs2 = list(fs[:prefix + 1])
                fs2[i] = fs[i] + eps
                in2 = AdicEngine(ring, fs2, jt).initial_ideal()
                diff = in2.first_difference_degree(base_in[prefix])
                if diff is not None:
                    return DestabilizationWitness(
                        str(eps), i + 1, prefix + 1, diff, source, trial)
    return None


# -- Hilbert perturbation index (lower-bound estimation) ------------------------


@dataclass(frozen=True)
class HilbertIndexEstimate:
    p_hat: int
    status: str              # always lower-bound-only: sampling cannot certify
    destabilizing_levels: tuple
    window: int

    def to_dict(self):
        return {
            "p_hat": self.p_hat,
            "status": self.status,
            "destabilizing_levels": list(self.destabilizing_levels),
            "window": self.window,
        }


def estimate_hilbert_index(ring, fs, j_gens, n_window=8, trials=10, seed=0,
                           max_level=None):
    """Lower bound for the least level p above which every perturbation
    preserves the Hilbert-Samuel table.

    Samples perturbations at each level L and records the levels where some
    sample changes the table inside the window; p_hat = 1 + the largest such
    level.  A sampling search can only ever certify a lower bound."""
    fs = tuple(ring.poly(f) for f in fs)
    jt = tuple(ring.poly(g) for g in j_gens)
    _require_m_primary(ring, IdealHandle(ring, jt), "J")
    n_window = min(n_window, ring.trunc_cap - 1)
    hs0 = hilbert_samuel(ring, list(fs), jt, n_window)
    if max_level is None:
        # a perturbation at level L >= window is invisible inside the window
        max_level = n_window - 1
    destabilizing = []
    for level in range(1, max_level + 1):
        cap_l = level + 2
        cands = list(_structured_candidates(ring, jt, level, cap_l))
        basis = _level_basis(ring, jt, level, cap_l)
        for trial in range(1, trials + 1):
            eps = _draw(ring, basis, _trial_rng(seed + 7919 * level, trial))
            if not eps.is_zero():
                cands.append(eps)
        changed = False
        seen = set()
        for eps in cands:
            if eps in seen:
                continue
            seen.add(eps)
            for i in range(len(fs)):
                fs2 = list(fs)
                fs2[i] = fs[i] + eps
                if hilbert_samuel(ring, fs2, jt, n_window) != hs0:
                    changed = True
                    break
            if changed:
                break
        if changed:
            destabilizing.append(level)
    p_hat = 1 + max(destabilizing) if destabilizing else 0
    return HilbertIndexEstimate(p_hat, "lower-bound-only",
                                tuple(destabilizing), n_window)
