"""Multiplicative ideal filtrations: adic, order-induced, and table-based.

A filtration here is a descending chain R = J_0 >= J_1 >= J_2 >= ... with
J_m * J_n <= J_{m+n}.  Three constructions are supported:

* adic: J_n = J^n for a fixed ideal J;
* order-induced: enumerate the monomials of a Noetherian order increasingly
  as 1 = g_0 < g_1 < ...; J_n is generated by all monomials >= g_n, so every
  J_n is a monomial ideal and the graded pieces J_n/J_{n+1} are spanned by
  the single monomial g_n;
* table: J_1..J_k listed explicitly, extended beyond the table by the
  Rees rule J_n = sum_{0<i<n} J_i * J_{n-i}.

The initial ideal of I along an order-induced filtration is the monomial
ideal of initial (order-smallest) monomials, computed by a Mora standard
basis and cross-checkable against the piecewise quotients
(J_n cap I + J_{n+1}) / J_{n+1}.
"""

import math
from dataclasses import dataclass, field

from .adic import a_index, artin_rees_number
from .adic import initial_ideal as adic_initial_ideal
from .errors import InternalCheckFailed, NotFilterRegular, TruncationCapExceeded
from .ideals import IdealHandle
from .monomials import mono_deg, mono_div, mono_divides, mono_mul, monomials_of_degree
from .mora import standard_basis
from .orders import enumerate_ascending
from .perturb import (BoundCertificate, DestabilizationWitness, _draw,
                      _trial_rng, certify_filter_regular)

_AXIOM_WINDOW = 6


def _certify(ring, fs, j1, ceilings=None):
    """Colon-index certificate; uncapped rings get a capped working copy,
    since the index chain needs a series-truncated context."""
    if ring.trunc_cap is not None:
        return certify_filter_regular(ring, fs, j1, ceilings=ceilings)
    degs = [max(sum(m[:ring.base_n]) for m in f.terms)
            for f in list(fs) + list(j1) if not f.is_zero()]
    cap = max(16, 2 * max(degs, default=1) + 8)
    capped = ring.with_cap(cap)
    fs2 = [capped.embed(f) for f in fs]
    j2 = [capped.embed(g) for g in j1]
    return certify_filter_regular(capped, fs2, j2, ceilings=ceilings)


class FiltrationSpec:
    """A multiplicative filtration with capped index access.

    Use the factory functions adic_filtration, filtration_from_order and
    table_filtration; the constructor checks the three filtration axioms
    (J_0 = R, descending, multiplicative) on indices up to min(cap, 6).
    """

    __slots__ = ("ring", "kind", "cap", "order", "j_gens", "_table",
                 "_levels", "_mono_gens", "_enum", "_delta")

    def __init__(self, ring, kind, cap, order=None, j_gens=None, table=None):
        self.ring = ring
        self.kind = kind
        self.cap = cap
        self.order = order
        self.j_gens = j_gens
        self._table = table
        self._levels = {}
        self._mono_gens = {}
        self._enum = []
        self._delta = {}
        if cap < 2:
            raise ValueError("filtration cap must be at least 2")
        if kind == "order":
            if order is None or not order.noetherian:
                raise ValueError("order-induced filtrations need a Noetherian order")
            if order.n_vars != ring.n_vars:
                raise ValueError("order arity does not match the ring")
            if ring.relations:
                raise ValueError("order-induced filtrations live in a free "
                                 "polynomial context; quotient relations are not supported")
        elif kind == "adic":
            self.j_gens = tuple(ring.poly(g) for g in j_gens)
            if all(g.is_zero() for g in self.j_gens):
                raise ValueError("adic filtration needs a nonzero ideal")
        elif kind == "table":
            tab = []
            for row in table:
                gens = tuple(ring.poly(g) for g in row)
                if not any(not g.is_zero() for g in gens):
                    raise ValueError("table filtration has an empty level")
                tab.append(gens)
            if not tab:
                raise ValueError("table filtration needs at least J_1")
            self._table = tuple(tab)
        else:
            raise ValueError(f"unknown filtration kind {kind!r}")
        self._check_axioms()

    # -- level access ----------------------------------------------------------

    def level(self, n):
        """J_n as an ideal handle."""
        if n < 0:
            raise ValueError("filtration index must be >= 0")
        if n > self.cap:
            raise ValueError(f"filtration index {n} exceeds the cap {self.cap}")
        if n not in self._levels:
            self._levels[n] = self._build_level(n)
        return self._levels[n]

    def level_gens(self, n):
        return self.level(n).gens

    def _build_level(self, n):
        ring = self.ring
        if n == 0:
            return IdealHandle(ring, (ring.one,))
        if self.kind == "adic":
            return IdealHandle(ring, self.j_gens).power(n)
        if self.kind == "order":
            gens = [ring.mono(e) for e in self.monomial_level_gens(n)]
            return IdealHandle(ring, gens)
        k = len(self._table)
        if n <= k:
            return IdealHandle(ring, self._table[n - 1])
        # Rees extension; splittings are symmetric and products repeat, so
        # dedupe to keep the generator lists from snowballing level by level
        gens = {}
        for i in range(1, n // 2 + 1):
            for g in (self.level(i) * self.level(n - i)).gens:
                gens[g] = None
        return IdealHandle(ring, list(gens))

    # -- order-induced internals -------------------------------------------------

    def _ascending(self, count):
        if len(self._enum) < count:
            self._enum = enumerate_ascending(self.order, max(count, 2 * len(self._enum), 32))
        return self._enum[:count]

    def position(self, exps):
        """Number of monomials strictly below, i.e. the enumeration index."""
        if self.kind != "order":
            raise ValueError("positions exist for order-induced filtrations only")
        exps = tuple(exps)
        count = 32
        while True:
            seq = self._ascending(count)
            if exps in seq:
                return seq.index(exps)
            if self.order.key(seq[-1]) > self.order.key(exps):
                raise InternalCheckFailed(f"monomial {exps} missing from its own enumeration")
            count *= 2

    def monomial_level_gens(self, n):
        """Minimal monomial generators of J_n (order-induced kind)."""
        if self.kind != "order":
            raise ValueError("monomial generators exist for order-induced filtrations only")
        if n not in self._mono_gens:
            self._mono_gens[n] = self._order_min_gens(n)
        return self._mono_gens[n]

    def _order_min_gens(self, n):
        order = self.order
        nv = order.n_vars
        if n == 0:
            return ((0,) * nv,)
        below = set(self._ascending(n))
        # a minimal generator has every variable quotient below g_n, so its
        # weight is at most max weight below + one variable step
        top = max(order.weight(m) for m in below)
        step = max(order.weight(tuple(1 if j == i else 0 for j in range(nv)))
                   for i in range(nv))
        target = top + step
        count = max(2 * n, 32)
        while order.weight(self._ascending(count)[-1]) <= target:
            count *= 2
        pool = [m for m in self._ascending(count) if order.weight(m) <= target]
        gens = []
        for mu in pool:
            if mu in below:
                continue
            if all(mono_div(mu, tuple(1 if j == i else 0 for j in range(nv))) in below
                   for i in range(nv) if mu[i] > 0):
                gens.append(mu)
        return tuple(sorted(gens, key=order.key))

    def contains_poly(self, f, n):
        """Membership f in J_n; exact monomial test for the order-induced kind."""
        f = self.ring.poly(f)
        if f.is_zero():
            return True
        if self.kind == "order":
            gens = self.monomial_level_gens(n)
            return all(any(mono_divides(g, m) for g in gens) for m in f.terms)
        return self.level(n).member(f)

    def j1_gens(self):
        return self.level_gens(1)

    # -- construction-time axioms --------------------------------------------------

    def _check_axioms(self):
        top = min(self.cap, _AXIOM_WINDOW)
        if self.kind == "order":
            for n in range(1, top + 1):
                prev = self.monomial_level_gens(n - 1)
                for g in self.monomial_level_gens(n):
                    if not any(mono_divides(p, g) for p in prev):
                        raise InternalCheckFailed(
                            f"order filtration is not descending at index {n}")
            for m in range(1, top):
                for n in range(1, top - m + 1):
                    tgt = self.monomial_level_gens(m + n)
                    for a in self.monomial_level_gens(m):
                        for b in self.monomial_level_gens(n):
                            prod = mono_mul(a, b)
                            if not any(mono_divides(t, prod) for t in tgt):
                                raise InternalCheckFailed(
                                    "order filtration is not multiplicative "
                                    f"at indices ({m}, {n})")
            return
        if self.kind == "adic":
            # powers are descending and multiplicative by the very genset
            # construction; assert it literally on the generator sets
            for m in range(1, top):
                for n in range(1, top - m + 1):
                    tgt = set(self.level_gens(m + n))
                    for a in self.level_gens(m):
                        for b in self.level_gens(n):
                            p = a * b
                            # a product that truncates away has no genset twin
                            if not p.is_zero() and p not in tgt:
                                raise InternalCheckFailed(
                                    f"adic power gensets broken at ({m}, {n})")
            return
        for n in range(1, top + 1):
            if not self.level(n - 1).contains_ideal(self.level(n)):
                raise ValueError(f"not a filtration: J_{n} is not inside J_{n - 1}")
        for m in range(1, top):
            for n in range(1, top - m + 1):
                prod = self.level(m) * self.level(n)
                if not self.level(m + n).contains_ideal(prod):
                    raise ValueError(
                        f"not a filtration: J_{m} * J_{n} is not inside J_{m + n}")

    # -- Rees generation degree ------------------------------------------------------

    def delta(self, cap=None):
        """(delta, status) from rees_delta, cached per cap."""
        key = cap
        if key not in self._delta:
            self._delta[key] = rees_delta(self, cap)
        return self._delta[key]

    def __repr__(self):
        return f"FiltrationSpec({self.kind}, cap={self.cap})"


def adic_filtration(ring, j_gens, cap=16):
    return FiltrationSpec(ring, "adic", cap, j_gens=j_gens)


def filtration_from_order(order, ring, cap=64):
    """The filtration with J_n generated by all monomials >= the n-th one."""
    return FiltrationSpec(ring, "order", cap, order=order)


def table_filtration(ring, levels, cap=None):
    """Explicit J_1..J_k generator lists, Rees-extended beyond the table."""
    levels = list(levels)
    if cap is None:
        cap = len(levels) + 8
    return FiltrationSpec(ring, "table", cap, table=levels)


# -- Rees generation degree ---------------------------------------------------------


def rees_delta(F, cap=None):
    """Largest degree contributing a fresh Rees algebra generator, with status.

    Degree n is fresh when J_n is not covered by sum_{0<i<n} J_i * J_{n-i}.
    The scan stops at the cap, so the answer is certified only when the last
    ceil(cap/2) degrees are all covered; otherwise the status is "heuristic"
    and downstream bounds carry the warning.
    """
    if cap is None:
        cap = min(F.cap, 8)
    cap = min(cap, F.cap)
    fresh = []
    for n in range(1, cap + 1):
        if _fresh_at(F, n):
            fresh.append(n)
    delta = max(fresh) if fresh else 0
    tail = cap - math.ceil(cap / 2)
    status = "certified-within-cap" if all(d <= tail for d in fresh) else "heuristic"
    return delta, status


def _fresh_at(F, n):
    if n == 1:
        return bool(F.level_gens(1))
    if F.kind == "order":
        prods = [mono_mul(a, b)
                 for i in range(1, n)
                 for a in F.monomial_level_gens(i)
                 for b in F.monomial_level_gens(n - i)]
        return not all(any(mono_divides(p, g) for p in prods)
                       for g in F.monomial_level_gens(n))
    if F.kind == "adic":
        # J^n literally equals J * J^{n-1} on generator sets
        prods = {a * b for a in F.level_gens(1) for b in F.level_gens(n - 1)}
        return not all(g in prods for g in F.level_gens(n))
    gens = {}
    for i in range(1, n // 2 + 1):
        for g in (F.level(i) * F.level(n - i)).gens:
            gens[g] = None
    return not IdealHandle(F.ring, list(gens)).contains_ideal(F.level(n))


def check_lemma_J1(F, n_max, delta=None):
    """Containment J_{n*delta} <= J_1^n for n = 0..n_max, by generator membership."""
    d = F.delta()[0] if delta is None else delta
    if d == 0:
        return True
    if n_max * d > F.cap:
        raise ValueError(f"index {n_max * d} exceeds the filtration cap {F.cap}")
    for n in range(n_max + 1):
        if n == 0:
            continue
        if F.kind == "order":
            # J_1 is the full maximal ideal, so J_1^n membership of a monomial
            # is just a total-degree threshold
            if not all(mono_deg(g) >= n for g in F.monomial_level_gens(n * d)):
                return False
            continue
        j1n = F.level(1).power(n)
        if not all(j1n.member(g) for g in F.level_gens(n * d)):
            return False
    return True


# -- initial ideals along a filtration ---------------------------------------------


class OrderInitialIdeal:
    """Monomial ideal of initial (order-smallest) monomials of an ideal.

    Graded by enumeration position: the piece at position n is nonzero
    exactly when the n-th monomial lies in the ideal.  d is the largest
    position carried by a minimal generator.
    """

    __slots__ = ("F", "ring", "order", "monomials", "positions", "d", "i_gens")

    def __init__(self, F, i_gens, monomials):
        self.F = F
        self.ring = F.ring
        self.order = F.order
        self.i_gens = tuple(i_gens)
        self.monomials = tuple(sorted(monomials, key=F.order.key))
        self.positions = tuple(F.position(m) for m in self.monomials)
        self.d = max(self.positions) if self.positions else 0

    def is_zero(self):
        return not self.monomials

    def contains_monomial(self, exps):
        return any(mono_divides(g, tuple(exps)) for g in self.monomials)

    def piece_nonzero(self, n):
        """Whether the n-th enumeration monomial lies in the ideal."""
        return self.contains_monomial(self.F._ascending(n + 1)[n])

    def equals(self, other):
        return self.first_difference_degree(other) is None

    def first_difference_degree(self, other):
        """Least position where the two monomial ideals differ, None if equal."""
        if not isinstance(other, OrderInitialIdeal) or self.order != other.order:
            raise ValueError("initial ideals live along different filtrations")
        if set(self.monomials) == set(other.monomials):
            return None
        for n in range(max(self.d, other.d) + 1):
            if self.piece_nonzero(n) != other.piece_nonzero(n):
                return n
        raise InternalCheckFailed("distinct monomial ideals with identical pieces")

    def equals_monomials(self, monos):
        """Compare against explicit generators (exponent tuples or poly strings)."""
        want = set()
        for m in monos:
            if isinstance(m, tuple):
                want.add(m)
            else:
                p = self.ring.poly(m)
                if len(p.terms) != 1:
                    raise ValueError(f"{m!r} is not a monomial")
                want.update(p.terms)
        from .monomials import minimalize_monomials
        return set(minimalize_monomials(want)) == set(self.monomials)

    def degreewise_check(self, upto=None):
        """Cross-check the standard-basis route against the subquotient route.

        Piece n of the initial ideal is (J_n cap I + J_{n+1}) / J_{n+1}; it is
        nonzero exactly when J_n cap I is not inside J_{n+1}.  Verified for
        n = 1..upto (default d + 2); raises InternalCheckFailed on mismatch.
        """
        if upto is None:
            upto = self.d + 2
        F = self.F
        I = IdealHandle(self.ring, self.i_gens)
        for n in range(1, upto + 1):
            meet = F.level(n).intersect(I)
            honest = not F.level(n + 1).contains_ideal(meet)
            if honest != self.piece_nonzero(n):
                raise InternalCheckFailed(
                    f"initial ideal piece at position {n} disagrees with the "
                    "subquotient construction")
        return True

    def to_dict(self):
        return {
            "monomials": [str(self.ring.mono(m)) for m in self.monomials],
            "positions": list(self.positions),
            "d": self.d,
        }

    def __repr__(self):
        gens = ", ".join(str(self.ring.mono(m)) for m in self.monomials) or "0"
        return f"OrderInitialIdeal(({gens}), d={self.d})"


def initial_ideal_filtration(i_gens, F):
    """Initial ideal of (i_gens) along F.

    Adic filtrations delegate to the adic engine (same object, same code
    path); order-induced filtrations return the monomial ideal of initial
    monomials from a Mora standard basis.
    """
    if F.kind == "adic":
        return adic_initial_ideal(F.ring, list(i_gens), list(F.j_gens))
    if F.kind != "order":
        raise ValueError("initial ideals are computed for adic and "
                         "order-induced filtrations only")
    ring = F.ring
    gens = [ring.poly(g) for g in i_gens]
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return OrderInitialIdeal(F, (), ())
    sb = standard_basis(gens, F.order)
    if sb.truncation_used:
        raise TruncationCapExceeded(
            "standard basis touched the truncation cap; raise it")
    return OrderInitialIdeal(F, gens, sb.initial_generators())


# -- Artin-Rees numbers along a filtration -------------------------------------------


def _decomposition_holds(F, I, c, n):
    # J_n cap I == sum_{t=1..c} J_{n-t} * (J_t cap I)
    lhs = F.level(n).intersect(I)
    gens = []
    for t in range(1, min(c, n) + 1):
        gens.extend((F.level(n - t) * (F.level(t).intersect(I))).gens)
    return lhs.equals(IdealHandle(F.ring, gens))


def check_ar_decomposition(i_gens, F, c, window=3):
    """Outcome of the defining decomposition at n = c..c+window-1, per index."""
    I = IdealHandle(F.ring, [F.ring.poly(g) for g in i_gens])
    return {n: _decomposition_holds(F, I, c, n) for n in range(c, c + window)}


def minimal_decomposition_c(i_gens, F, c_max, window=3):
    """Least c <= c_max whose decomposition window passes, None if none does."""
    for c in range(c_max + 1):
        if all(check_ar_decomposition(i_gens, F, c, window).values()):
            return c
    return None


def artin_rees_filtration(i_gens, F, verify=True):
    """d(in_F(I)): the top generation position of the initial ideal along F.

    For adic F this is exactly the adic Artin-Rees number (shared code path).
    With verify=True the defining decomposition
    J_n cap I = sum_{t=1..c} J_{n-t} (J_t cap I) is additionally asserted for
    n = c..c+2.  The assertion needs the Rees algebra of F generated within
    the cap (adic, or delta certified); when delta is heuristic the identity
    holds at n = c by multiplicativity but provably can fail at c+1 already,
    so only n = c is asserted there and the full window stays available
    through check_ar_decomposition.
    """
    ring = F.ring
    gens = [ring.poly(g) for g in i_gens]
    live = [g for g in gens if not g.is_zero()]
    if not live:
        return 0
    handle = IdealHandle(ring, live)
    if handle.member(ring.one):
        # unit ideal: the initial ideal is the whole graded ring, generated
        # in position 0; the decomposition only makes sense for proper ideals
        return 0
    if F.kind == "adic":
        d = artin_rees_number(ring, live, list(F.j_gens))
        if verify:
            report = check_ar_decomposition(live, F, d)
            if not all(report.values()):
                raise InternalCheckFailed(
                    f"adic Artin-Rees decomposition failed on window {report}")
        return d
    if F.kind != "order":
        raise ValueError("Artin-Rees numbers are computed for adic and "
                         "order-induced filtrations only")
    d = initial_ideal_filtration(live, F).d
    if verify:
        certified = F.delta()[1] == "certified-within-cap"
        window = 3 if certified else 1
        report = check_ar_decomposition(live, F, d, window=window)
        if not all(report.values()):
            raise InternalCheckFailed(
                f"order filtration decomposition failed on window {report}")
    return d


# -- the perturbation bound along a filtration ----------------------------------------


def bound_filtration(fs, F, certificate=None):
    """N = max{(a_1 + 2a_2 + .. + 2^{r-1}a_r + 1) delta, ar_F(f_1)+1, ..}.

    The a_i are colon indices w.r.t. J_1.  For a regular sequence (all a_i
    zero) the sharper N = ar_F(f_1..f_r) + 1 is used, which also avoids any
    dependence on a heuristic delta.  Adic filtrations additionally record
    the plain adic theorem value, which the delta = 1 substitution must
    reproduce exactly.
    """
    ring = F.ring
    fs = tuple(ring.poly(f) for f in fs)
    j1 = list(F.j1_gens())
    cert = certificate or _certify(ring, fs, j1)
    if not cert.filter_regular:
        raise NotFilterRegular(
            f"sequence is not J_1-filter regular (index {cert.failing_index})")
    a = cert.a_values
    ars = tuple(artin_rees_filtration(list(fs[:i + 1]), F, verify=False)
                for i in range(len(fs)))
    delta, status = F.delta()
    weighted = sum((2 ** i) * a[i] for i in range(len(a)))
    theorem_N = max([(weighted + 1) * delta] + [ar + 1 for ar in ars])
    regular = all(x == 0 for x in a)
    extras = {"kind": F.kind, "delta": delta, "delta_status": status,
              "theorem_N": theorem_N, "regular_shortcut": regular}
    if status == "heuristic":
        extras["warning"] = ("delta is heuristic: fresh Rees generators persist "
                             "near the cap, so the bound inherits that uncertainty")
    N = ars[-1] + 1 if regular else theorem_N
    if F.kind == "adic":
        from .perturb import bound_main
        sec = bound_main(ring, fs, list(F.j_gens), certificate=cert)
        extras["adic_theorem_N"] = sec.N
        if delta == 1 and theorem_N != sec.N:
            raise InternalCheckFailed(
                f"filtration bound {theorem_N} disagrees with the adic bound {sec.N}")
    return BoundCertificate(N, "filtration", a, ars, extras)


# -- jets ------------------------------------------------------------------------------


@dataclass(frozen=True)
class JetInstance:
    """A sequence to truncate, the inducing order, and the jet levels to test."""
    ring: object
    fs: tuple
    order: object
    levels: tuple = None     # default window: N-1 .. N+3
    regular: bool = True

    def __post_init__(self):
        object.__setattr__(self, "fs", tuple(self.ring.poly(f) for f in self.fs))
        if self.regular and len(self.fs) > self.ring.n_vars:
            raise ValueError("a regular sequence cannot be longer than the "
                             "number of variables")


@dataclass(frozen=True)
class JetLevelReport:
    level: int
    tail_in_JN: bool
    jets_regular: object     # bool, or None when the level is inadmissible
    initials_equal: object
    a_values: tuple = ()

    def to_dict(self):
        return {
            "level": self.level,
            "tail_in_JN": self.tail_in_JN,
            "jets_regular": self.jets_regular,
            "initials_equal": self.initials_equal,
            "a_values": list(self.a_values),
        }


@dataclass(frozen=True)
class JetReport:
    N: int
    bound: BoundCertificate
    admissible_from: int
    baseline: tuple
    levels: tuple

    def all_pass(self):
        return all(lv.tail_in_JN and lv.jets_regular and lv.initials_equal
                   for lv in self.levels)

    def to_dict(self):
        return {
            "N": self.N,
            "bound": self.bound.to_dict(),
            "admissible_from": self.admissible_from,
            "baseline": [str(m) for m in self.baseline],
            "levels": [lv.to_dict() for lv in self.levels],
        }


def _admissible_from(F, N):
    # least n with m^{n+1} <= J_N; a jet tail at level n only has monomials of
    # degree > n, so from here on every tail certifies
    gens = F.monomial_level_gens(N)
    top = max(mono_deg(g) for g in gens)
    nv = F.ring.n_vars
    for n in range(top + 1):
        if all(any(mono_divides(g, m) for g in gens)
               for m in monomials_of_degree(nv, n + 1)):
            return n
    return top


def jet_pipeline(inst):
    """Check that truncating a regular sequence past the bound changes nothing.

    Computes N = bound_filtration for the order-induced filtration, then for
    each requested jet level n: certifies the dropped tails lie in J_N, that
    the jets are again a regular sequence (colon indices all zero), and that
    the initial monomial ideal is unchanged.  Levels whose tails cannot be
    certified are reported as inadmissible rather than raising; the report
    carries the least universally admissible level.
    """
    ring = inst.ring
    F = filtration_from_order(inst.order, ring)
    fs = inst.fs
    cert = _certify(ring, fs, list(F.j1_gens()))
    if inst.regular and (not cert.filter_regular or any(a != 0 for a in cert.a_values)):
        raise NotFilterRegular("jet pipeline needs a regular sequence "
                               f"(colon indices {cert.a_values})")
    bound = bound_filtration(fs, F, certificate=cert)
    N = bound.N
    baseline = initial_ideal_filtration(fs, F)
    admissible = _admissible_from(F, N)
    levels = inst.levels if inst.levels is not None else tuple(range(max(N - 1, 1), N + 4))
    out = []
    zeros = tuple(0 for _ in fs)
    for n in levels:
        jets = [f.jet(n) for f in fs]
        tails_ok = all(F.contains_poly(f - j, N) for f, j in zip(fs, jets))
        if not tails_ok or any(j.is_zero() for j in jets):
            out.append(JetLevelReport(n, tails_ok, None, None))
            continue
        cert2 = _certify(ring, jets, list(F.j1_gens()), ceilings=zeros)
        reg = cert2.filter_regular and all(a == 0 for a in cert2.a_values)
        in2 = initial_ideal_filtration(jets, F)
        out.append(JetLevelReport(n, True, reg, in2.equals(baseline),
                                  cert2.a_values))
    return JetReport(N, bound, admissible, baseline.monomials, tuple(out))


# -- destabilization search along a filtration -----------------------------------------


def _order_level_basis(F, N, degree_cap):
    gens = F.monomial_level_gens(N)
    out = []
    for d in range(degree_cap + 1):
        for m in monomials_of_degree(F.ring.n_vars, d):
            if any(mono_divides(g, m) for g in gens):
                out.append(F.ring.mono(m))
    return out


def search_destabilizing_filtration(fs, F, N, trials, seed, degree_cap=None):
    """Look for eps in J_N whose insertion changes some prefix initial ideal.

    Adic filtrations delegate to the adic search.  Order-induced filtrations
    try pure variable powers in J_N first, then seeded random combinations of
    the monomial basis of J_N up to degree_cap.  Returns a
    DestabilizationWitness or None; a J_1-filter regular sequence at a
    certified N must come back empty.
    """
    ring = F.ring
    fs = tuple(ring.poly(f) for f in fs)
    if F.kind == "adic":
        from .perturb import search_destabilizing
        return search_destabilizing(ring, fs, list(F.j_gens), N, trials, seed,
                                    degree_cap=degree_cap)
    if F.kind != "order":
        raise ValueError("destabilization search supports adic and "
                         "order-induced filtrations only")
    gens = F.monomial_level_gens(N)
    if degree_cap is None:
        degree_cap = max(mono_deg(g) for g in gens) + 2
    base_in = [initial_ideal_filtration(list(fs[:i + 1]), F)
               for i in range(len(fs))]

    candidates = []
    nv = ring.n_vars
    for k in range(1, degree_cap + 1):
        for i in range(nv):
            exps = tuple(k if j == i else 0 for j in range(nv))
            if any(mono_divides(g, exps) for g in gens):
                candidates.append((ring.mono(exps), "structured", None))
    basis = _order_level_basis(F, N, degree_cap)
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
                in2 = initial_ideal_filtration(fs2, F)
                diff = in2.first_difference_degree(base_in[prefix])
                if diff is not None:
                    return DestabilizationWitness(
                        str(eps), i + 1, prefix + 1, diff, source, trial)
    return None
