"""Adic filtration invariants: initial ideals, Artin-Rees numbers, a-indices,
Hilbert-Samuel and Achilles-Manaresi functions.

Everything here runs in series-truncated mode: the ring context must carry a
truncation cap T, and all spans are images in P_{<=T}, i.e. exact data about
P/(m^{T+1} + K).  Freshness tests always carry the quotient relations K on
both sides, which is what makes quotient-ring answers drop out of cover
computations, and it also cancels truncation junk (both sides live modulo the
same stratum).

The Artin-Rees number is computed by two genuinely independent routes:

  1. Rees elimination: eliminate t from I*S + K*S + (y_i - g_i t) in
     S = P[y, t]; the surviving basis is graded in total (y, t)-degree, its
     y-homogeneous members substitute back to generators of J^k cap I, and the
     maximal non-junk y-degree D bounds the search window.

  2. Truncated linear algebra: J^n cap (I+K) as a Zassenhaus intersection of
     row spaces, degree by degree.

Both routes scan the same freshness predicate; disagreement raises
InternalCheckFailed because it can only be a bug.
"""

from itertools import combinations_with_replacement

from .errors import (INFINITE, InternalCheckFailed, NotMPrimary,
                     TruncationCapExceeded)
from .ideals import IdealHandle, eliminate
from .linalg import (RowSpace, ideal_span, intersect_spans, merged_span,
                     poly_to_vec, span_of_polys, vec_to_poly)
from .monomials import monomials_of_degree
from .rings import Polynomial


def order_of(f, j_handle=None):
    """J-adic order of f: the largest n with f in J^n (INFINITE for f = 0).

    With no J given this is the m-adic order, i.e. the minimal base degree."""
    ring = f.ring
    if j_handle is None:
        d = f.min_degree()
        return INFINITE if d < 0 else d
    if f.is_zero() or IdealHandle(ring, ()).member(f):
        return INFINITE
    n = 0
    cap = ring.trunc_cap
    limit = cap + 1 if cap is not None else 10 ** 6
    while n < limit:
        if not j_handle.power(n + 1).member(f):
            return n
        n += 1
    raise TruncationCapExceeded("adic order reaches the truncation cap")


def initial_form(f):
    """(order, lowest homogeneous part) w.r.t. base total degree."""
    d = f.min_degree()
    if d < 0:
        return INFINITE, f
    b = f.ring.base_n
    return d, Polynomial(f.ring, {m: c for m, c in f.terms.items() if sum(m[:b]) == d})


def _homogeneous_part(f, n):
    b = f.ring.base_n
    return Polynomial(f.ring, {m: c for m, c in f.terms.items() if sum(m[:b]) == n})


class AdicEngine:
    """Shared caches for one (ring, I, J) triple."""

    def __init__(self, ring, i_gens, j_gens):
        if ring.trunc_cap is None:
            raise TruncationCapExceeded(
                "adic invariants need a series-truncated context (set trunc_cap)")
        self.ring = ring
        self.cap = ring.trunc_cap
        self.cover = ring.cover()
        self.I = IdealHandle(ring, i_gens)
        self.J = IdealHandle(ring, j_gens)
        if not self.J.gens:
            raise ValueError("J must be a nonzero ideal")
        for g in self.J.gens:
            if g.min_degree() < 1:
                raise ValueError("J must sit inside the maximal ideal")
        self.kgens = tuple(self.cover.embed(k) for k in ring.relations)
        self._cache = {}

    # -- spans ----------------------------------------------------------------

    def j_pow_gens(self, n):
        key = ("jpow", n)
        if key not in self._cache:
            if n == 0:
                self._cache[key] = (self.cover.one,)
            else:
                gens = [self.cover.embed(g) for g in self.J.gens]
                out = []
                for combo in combinations_with_replacement(gens, n):
                    p = combo[0]
                    for q in combo[1:]:
                        p = p * q
                    if not p.is_zero():
                        out.append(p)
                self._cache[key] = tuple(out)
        return self._cache[key]

    def k_span(self):
        key = "kspan"
        if key not in self._cache:
            self._cache[key] = ideal_span(self.cover, list(self.kgens), self.cap)
        return self._cache[key]

    def j_span(self, n):
        """span(J^n + K) in P_{<=cap}."""
        key = ("jspan", n)
        if key not in self._cache:
            gens = list(self.j_pow_gens(n)) + list(self.kgens)
            self._cache[key] = ideal_span(self.cover, gens, self.cap)
        return self._cache[key]

    def ik_span(self):
        key = "ikspan"
        if key not in self._cache:
            gens = [self.cover.embed(g) for g in self.I.gens] + list(self.kgens)
            self._cache[key] = ideal_span(self.cover, gens, self.cap)
        return self._cache[key]

    # -- route 2: linear algebra ----------------------------------------------

    def x_span_linalg(self, n):
        """span((J^n + K) cap (I + K)) via Zassenhaus."""
        key = ("xlin", n)
        if key not in self._cache:
            if n == 0:
                self._cache[key] = self.ik_span()
            else:
                self._cache[key] = intersect_spans(self.ring.field,
                                                   self.j_span(n), self.ik_span())
        return self._cache[key]

    def _span_polys(self, span):
        return [vec_to_poly(self.cover, v) for v in span.basis_vectors()]

    def j_times_span(self, span):
        """Ideal span of J * (elements of span)."""
        jg = [self.cover.embed(g) for g in self.J.gens]
        prods = []
        for p in self._span_polys(span):
            for g in jg:
                q = p * g
                if not q.is_zero():
                    prods.append(q)
        return ideal_span(self.cover, prods, self.cap) if prods else RowSpace(self.ring.field)

    # -- route 1: Rees elimination ----------------------------------------------

    def plain(self):
        """Uncapped polynomial cover: honest data, no stratum anywhere."""
        key = "plain"
        if key not in self._cache:
            from .rings import RingContext
            cov = self.cover
            self._cache[key] = RingContext(cov.var_names, cov.field, (), None, cov.base_n)
        return self._cache[key]

    def rees(self):
        """Honest (uncapped) Rees elimination.

        Truncating here is what must NOT happen: the stratum echoes through I
        (elements congruent to stratum members modulo I) and manufactures
        phantom generators near the cap.  The polynomial computation is exact,
        its substituted basis gives honest generators of J^k cap (I+K), and
        intersections commute with localization, so the generation bound D
        derived from minimal lead monomials is valid for the local ring too."""
        key = "rees"
        if key in self._cache:
            return self._cache[key]
        plain = self.plain()
        s = len(self.J.gens)
        ynames = tuple(f"_y{i}" for i in range(s))
        ext = plain.extend(ynames + ("_t",))
        tpos = ext.n_vars - 1
        t = ext.var(tpos)
        gens = []
        for g in self.I.gens:
            gens.append(ext.embed(plain.embed(self.cover.embed(g))))
        for k in self.kgens:
            gens.append(ext.embed(plain.embed(k)))
        jg = [ext.embed(plain.embed(self.cover.embed(g))) for g in self.J.gens]
        for i in range(s):
            gens.append(ext.var(plain.n_vars + i) - jg[i] * t)
        from .groebner import buchberger, lead_monomial
        from .monomials import minimalize_monomials
        from .orders import elim_order_positions
        order = elim_order_positions(ext.n_vars, [tpos])
        gb = buchberger(gens, order)
        egens, leads = [], []
        for e in gb.polys:
            if all(m[tpos] == 0 for m in e.terms):
                egens.append(e)
                leads.append(lead_monomial(e, order))
        minimal = set(minimalize_monomials(leads))

        from .orders import degrevlex
        kgb = buchberger([plain.embed(k) for k in self.kgens],
                         degrevlex(plain.n_vars), context=plain) if self.kgens else None

        graded = {}
        dprime = 0
        maxdeg = 0
        for e, lm in zip(egens, leads):
            ydegs = {sum(m[plain.n_vars:plain.n_vars + s]) for m in e.terms}
            if len(ydegs) != 1:
                raise InternalCheckFailed(
                    "Rees elimination produced a non-graded basis element")
            k = ydegs.pop()
            ev = self._subst_y(e, s, plain)
            junk = ev.is_zero() or (kgb is not None and kgb.contains(ev))
            graded.setdefault(k, []).append((e, ev, junk))
            if not junk:
                maxdeg = max(maxdeg, ev.degree())
            if k > 0 and not junk and lm in minimal:
                dprime = max(dprime, k)
        self._cache[key] = {"egens": graded, "dprime": dprime, "n_y": s,
                            "maxdeg": maxdeg}
        return self._cache[key]

    def _subst_y(self, e, s, plain):
        """Evaluate y_i -> g_i (t already eliminated) in the plain cover."""
        n = plain.n_vars
        jg = [plain.embed(self.cover.embed(g)) for g in self.J.gens]
        out = plain.zero
        for m, c in e.terms.items():
            p = plain.mono(m[:n], c)
            for i in range(s):
                for _ in range(m[n + i]):
                    p = p * jg[i]
            out = out + p
        return out

    def x_gens_rees(self, n):
        """Generators of J^n cap (I+K) from the substituted Rees basis."""
        key = ("xrees", n)
        if key not in self._cache:
            rees = self.rees()
            out = []
            for k in range(0, n + 1):
                if k == 0:
                    layer = [self.cover.embed(g) for g in self.I.gens] + list(self.kgens)
                else:
                    layer = [self.cover.embed(ev)
                             for (_, ev, junk) in rees["egens"].get(k, [])
                             if not ev.is_zero()]
                    layer = [ev for ev in layer if not ev.is_zero()]
                if not layer:
                    continue
                for mu in self.j_pow_gens(n - k):
                    for ev in layer:
                        p = mu * ev
                        if not p.is_zero():
                            out.append(p)
            self._cache[key] = tuple(out)
        return self._cache[key]

    def x_span_rees(self, n):
        key = ("xreesspan", n)
        if key not in self._cache:
            gens = list(self.x_gens_rees(n)) + list(self.kgens)
            self._cache[key] = ideal_span(self.cover, gens, self.cap)
        return self._cache[key]

    # -- freshness ----------------------------------------------------------

    def _fresh_at(self, xspan_n, xspan_prev, n):
        """Is J^n cap I + K strictly bigger than J(J^{n-1} cap I) + K,
        both taken modulo J^{n+1} + K?"""
        field = self.ring.field
        base = self.j_span(n + 1)
        lhs = merged_span(field, base, xspan_n)
        rhs = merged_span(field, base, self.j_times_span(xspan_prev))
        if lhs.dim < rhs.dim:
            raise InternalCheckFailed("freshness dimensions inverted")
        return lhs.dim > rhs.dim

    def fresh_levels(self, route, bound):
        xspan = self.x_span_rees if route == 1 else self.x_span_linalg
        out = set()
        prev = xspan(0)
        for n in range(1, bound + 1):
            cur = xspan(n)
            if self._fresh_at(cur, prev, n):
                out.add(n)
            prev = cur
        return out

    def artin_rees(self):
        """The Artin-Rees number of (I, J), with the two-route report."""
        key = "ar"
        if key in self._cache:
            return self._cache[key]
        if self.I.is_zero():
            result = {"d": 0, "dprime": 0, "fresh_route1": set(), "fresh_route2": set()}
            self._cache[key] = result
            return result
        rees = self.rees()
        dprime = rees["dprime"]
        bound = dprime + 1
        jdeg = max(g.degree() for g in self.J.gens)
        # the scan must see honest products un-truncated: J^{bound+1} powers and
        # J^bound * (Rees generator) products all need degrees under the cap
        need = max((bound + 1) * jdeg, bound * jdeg + rees["maxdeg"]) + 1
        if need > self.cap:
            raise TruncationCapExceeded(
                f"Artin-Rees window needs trunc_cap >= {need}, have {self.cap}")
        f1 = self.fresh_levels(1, bound)
        f2 = self.fresh_levels(2, bound)
        if f1 != f2:
            raise InternalCheckFailed(
                f"Artin-Rees routes disagree: elimination {sorted(f1)} vs "
                f"linear algebra {sorted(f2)}")
        d = max(f1) if f1 else 0
        if d > dprime:
            raise InternalCheckFailed(
                f"freshness level {d} above the Rees certificate {dprime}")
        result = {"d": d, "dprime": dprime, "fresh_route1": f1, "fresh_route2": f2}
        self._cache[key] = result
        return result

    def check_ar_definition(self, d, extra=2):
        """J^n cap I == J^{n-d}(J^d cap I) for n = d..d+extra (span equality)."""
        field = self.ring.field
        xd = self.x_span_linalg(d)
        for n in range(d, d + extra + 1):
            lhs = merged_span(field, self.x_span_linalg(n), self.k_span())
            gens = []
            for mu in self.j_pow_gens(n - d):
                for p in self._span_polys(xd):
                    q = mu * p
                    if not q.is_zero():
                        gens.append(q)
            rhs = merged_span(field,
                              ideal_span(self.cover, gens, self.cap) if gens
                              else RowSpace(field),
                              self.k_span())
            if lhs.dim != rhs.dim or merged_span(field, lhs, rhs).dim != lhs.dim:
                return False
        return True

    # -- initial ideal --------------------------------------------------------

    def piece_span(self, n):
        """span(J^n cap (I+K) + J^{n+1} + K): the data under the n-th piece."""
        key = ("piece", n)
        if key not in self._cache:
            self._cache[key] = merged_span(self.ring.field,
                                           self.j_span(n + 1), self.x_span_linalg(n))
        return self._cache[key]

    def piece_dim(self, n):
        return self.piece_span(n).dim - self.j_span(n + 1).dim

    def fresh_piece_reps(self, n):
        """Representatives of fresh generator classes at level n."""
        field = self.ring.field
        base = merged_span(field, self.j_span(n + 1),
                           self.j_times_span(self.x_span_linalg(n - 1)))
        reps = []
        probe = base.copy()
        for v in self.x_span_linalg(n).basis_vectors():
            if probe.insert(dict(v)):
                reps.append(vec_to_poly(self.cover, v))
        return reps

    def initial_ideal(self):
        key = "inideal"
        if key in self._cache:
            return self._cache[key]
        ar = self.artin_rees()
        d = ar["d"]
        pieces = {}
        for n in range(1, d + 1):
            reps = self.fresh_piece_reps(n)
            if reps:
                pieces[n] = reps
        out = InitialIdeal(self, d, pieces)
        self._cache[key] = out
        return out


class InitialIdeal:
    """Initial ideal of I in gr_J(R), described degreewise.

    d: the Artin-Rees number (all generators live in levels <= d);
    pieces: level -> representatives in J^n cap (I+K) of the fresh classes.
    """

    def __init__(self, engine, d, pieces):
        self.engine = engine
        self.d = d
        self.pieces = pieces

    def generator_levels(self):
        return sorted(self.pieces)

    def piece_dim(self, n):
        return self.engine.piece_dim(n)

    def _expected_piece_span(self, forms, n):
        """span(sum_f J^{n-deg f} * f + J^{n+1} + K) for homogeneous forms of
        the m-adic grading (J = m case)."""
        eng = self.engine
        gens = []
        for f in forms:
            df = f.min_degree()
            if df > n:
                continue
            for mu in eng.j_pow_gens(n - df):
                q = mu * eng.cover.embed(f)
                if not q.is_zero():
                    gens.append(q)
        extra = ideal_span(eng.cover, gens, eng.cap) if gens else RowSpace(eng.ring.field)
        return merged_span(eng.ring.field, eng.j_span(n + 1), extra)

    def equals_forms(self, forms):
        """Does in(I) equal the gr-ideal generated by the given forms?

        Forms are homogeneous elements of J-adic order equal to their level
        (for J = m: ordinary homogeneous polynomials)."""
        eng = self.engine
        field = eng.ring.field
        forms = [eng.ring.poly(f) if not isinstance(f, Polynomial) else f for f in forms]
        bound = max([self.d] + [f.min_degree() for f in forms]) + 1
        if bound + 1 >= eng.cap:
            raise TruncationCapExceeded("initial-ideal comparison window exceeds cap")
        for n in range(1, bound + 1):
            mine = self.engine.piece_span(n)
            theirs = self._expected_piece_span(forms, n)
            if mine.dim != theirs.dim:
                return False
            if merged_span(field, mine.copy(), theirs).dim != mine.dim:
                return False
        return True

    def equals(self, other):
        """Same initial ideal as another one over the same ring and J."""
        return self.first_difference_degree(other) is None

    def first_difference_degree(self, other):
        """Least level where the two initial ideals differ, None if equal
        on the certified window."""
        eng, oth = self.engine, other.engine
        if eng.ring != oth.ring:
            raise ValueError("initial ideals live over different rings")
        field = eng.ring.field
        bound = max(self.d, other.d) + 1
        for n in range(1, bound + 1):
            a = eng.piece_span(n)
            b = oth.piece_span(n)
            if a.dim != b.dim or merged_span(field, a.copy(), b).dim != a.dim:
                return n
        return None


# -- public wrappers ----------------------------------------------------------


def adic_engine(ring, i_gens, j_gens):
    return AdicEngine(ring, i_gens, j_gens)


def artin_rees_number(ring, i_gens, j_gens):
    eng = AdicEngine(ring, i_gens, j_gens)
    return eng.artin_rees()["d"]


def initial_ideal(ring, i_gens, j_gens):
    return AdicEngine(ring, i_gens, j_gens).initial_ideal()


def a_index(ring, a_gens, f, j_gens, ceiling=None):
    """Least n with J^n (A : f) inside A, or INFINITE.

    Finiteness is decided honestly in the polynomial cover: the index is
    finite iff (A : f) lies inside the J-saturation of A.  The value is then
    read off the truncated chain with a margin guard.

    With a ceiling, the chain is walked first and the saturation test is
    skipped whenever the chain succeeds by the ceiling (success certifies
    finiteness on its own); only a chain miss falls back to the honest
    finiteness decision."""
    f = ring.poly(f)
    if f.is_zero():
        raise ValueError("a-index of the zero element")
    cov = ring.cover()
    from .rings import RingContext
    plain = RingContext(cov.var_names, cov.field, (), None, cov.base_n)
    lift = [plain.embed(cov.embed(g)) for g in IdealHandle(ring, a_gens).gens]
    lift += [plain.embed(cov.embed(k)) for k in ring.relations]
    a0 = IdealHandle(plain, lift)
    f0 = plain.embed(cov.embed(f))
    j0 = IdealHandle(plain, [plain.embed(cov.embed(g))
                             for g in IdealHandle(ring, j_gens).gens])
    colon0 = a0.colon_element(f0)
    if ceiling is None:
        sat = a0.saturate(j0)
        if not sat.contains_ideal(colon0):
            return INFINITE
    certified_finite = ceiling is None

    # the uncapped colon is the honest local colon (colons commute with
    # localization); the truncated one would smuggle in junk near the cap
    A = IdealHandle(ring, a_gens)
    J = IdealHandle(ring, j_gens)
    cap = ring.trunc_cap
    colon_gens = [cov.embed(g) for g in colon0.gens]
    field = ring.field
    base = A.span(cap)
    n = 0
    while True:
        if not certified_finite and n > ceiling:
            sat = a0.saturate(j0)
            if not sat.contains_ideal(colon0):
                return INFINITE
            certified_finite = True
        if n > cap // 2:
            raise TruncationCapExceeded(
                "a-index value too close to the truncation cap to certify")
        gens = []
        for mu in (J.power(n).gens if n else (ring.one,)):
            for c in colon_gens:
                p = cov.embed(mu) * c
                if not p.is_zero():
                    gens.append(p)
        if not gens:
            return n
        prod = ideal_span(cov, gens, cap)
        if merged_span(field, base.copy(), prod).dim == base.dim:
            return n
        n += 1


def hilbert_samuel(ring, i_gens, j_gens, upto):
    """Table of lengths  ell(R/(I + J^n))  for n = 0..upto (cumulative)."""
    I = IdealHandle(ring, i_gens)
    J = IdealHandle(ring, j_gens)
    _require_m_primary(ring, I + J, "I + J")
    out = [0]
    for n in range(1, upto + 1):
        out.append((I + J.power(n)).colength())
    return out


def _require_m_primary(ring, handle, label):
    """Honest m-primary test in the polynomial cover (no truncation)."""
    from .rings import RingContext
    cov = ring.cover()
    plain = RingContext(cov.var_names, cov.field, (), None, cov.base_n)
    gens = [plain.embed(cov.embed(g)) for g in handle.gens]
    gens += [plain.embed(cov.embed(k)) for k in ring.relations]
    if IdealHandle(plain, gens).colength() is INFINITE:
        raise NotMPrimary(f"{label} is not primary to the maximal ideal")


def first_differences(table):
    return [table[i + 1] - table[i] for i in range(len(table) - 1)]


def divergence_index(table_a, table_b):
    """First position where the graded pieces (first differences) differ.

    None when they agree on the whole common window."""
    da, db = first_differences(table_a), first_differences(table_b)
    for i in range(min(len(da), len(db))):
        if da[i] != db[i]:
            return i
    return None


def multiplicity_hs(ring, i_gens, j_gens, upto=None):
    """(dimension, multiplicity) from iterated differences of the HS table."""
    cap = ring.trunc_cap
    upto = upto if upto is not None else cap - 1
    table = hilbert_samuel(ring, i_gens, j_gens, upto)
    row = table
    d = 0
    while True:
        tail = row[-3:]
        if len(tail) == 3 and tail[0] == tail[1] == tail[2]:
            if tail[0] == 0 and d > 0:
                raise InternalCheckFailed("difference table collapsed to zero")
            return d, tail[0]
        if len(row) < 4:
            raise TruncationCapExceeded(
                "Hilbert-Samuel window too short to read off the multiplicity")
        row = first_differences(row)
        d += 1


class AMTable:
    """Bigraded lengths ell(G_uv) of gr_m(gr_J(R/I)) on a finite window."""

    def __init__(self, ring, i_gens, j_gens, r_max, s_max):
        if ring.trunc_cap is None or ring.trunc_cap < r_max + s_max + 2:
            raise TruncationCapExceeded(
                "Achilles-Manaresi window needs trunc_cap >= r_max + s_max + 2")
        self.ring = ring
        self.r_max = r_max
        self.s_max = s_max
        self.I = IdealHandle(ring, i_gens)
        self.J = IdealHandle(ring, j_gens)
        eng = AdicEngine(ring, i_gens, j_gens)
        self.engine = eng
        cap = ring.trunc_cap
        field = ring.field
        cov = ring.cover()
        igens = [cov.embed(g) for g in self.I.gens] + list(eng.kgens)
        ispan = ideal_span(cov, igens, cap) if igens else RowSpace(field)

        def block_span(u, v):
            if u == 0 and v == 0:
                # the unit ideal: span of m plus the constant
                return merged_span(
                    field, ideal_span(cov, list(cov.gens()), cap),
                    span_of_polys(field, [cov.one]),
                    eng.j_span(v + 1), ispan)
            gens = []
            for mu in monomials_of_degree(cov.base_n, u):
                mono = cov.mono(mu + (0,) * (cov.n_vars - cov.base_n))
                for jp in eng.j_pow_gens(v):
                    q = mono * jp
                    if not q.is_zero():
                        gens.append(q)
            span = ideal_span(cov, gens, cap) if gens else RowSpace(field)
            return merged_span(field, span, eng.j_span(v + 1), ispan)

        self.cells = {}
        for v in range(s_max + 1):
            upper = block_span(0, v)
            for u in range(r_max + 1):
                lower = block_span(u + 1, v)
                self.cells[(u, v)] = upper.dim - lower.dim
                upper = lower

    def cell(self, u, v):
        return self.cells[(u, v)]

    def h(self, r, s):
        """Cumulative sum over the rectangle [0..r] x [0..s]."""
        return sum(self.cells[(u, v)] for u in range(r + 1) for v in range(s + 1))

    def row_stabilized_value(self, s):
        """h(r, s) for r at the top of the window, with a stability check."""
        vals = [self.h(r, s) for r in (self.r_max - 2, self.r_max - 1, self.r_max)]
        if not vals[0] == vals[1] == vals[2]:
            raise TruncationCapExceeded(
                f"h(r, {s}) not stabilized in r within the window")
        return vals[2]


def achilles_manaresi(ring, i_gens, j_gens, r_max, s_max):
    return AMTable(ring, i_gens, j_gens, r_max, s_max)


def _mixed_difference(h, a, b, r, s):
    """Delta_r^a Delta_s^b h at (r, s)."""
    from math import comb
    total = 0
    for i in range(a + 1):
        for j in range(b + 1):
            sign = (-1) ** ((a - i) + (b - j))
            total += sign * comb(a, i) * comb(b, j) * h(r + i, s + j)
    return total


def multiplicity_sequence(ring, i_gens, j_gens, r_max=None, s_max=None):
    """Coefficients (c_0..c_d) of the leading form of the AM function,
    for J primary to the maximal ideal."""
    _require_m_primary(ring, IdealHandle(ring, j_gens), "J")
    d, _ = multiplicity_hs(ring, i_gens, ring.gens(),
                           upto=min(ring.trunc_cap - 1, 10))
    cap = ring.trunc_cap
    r_max = r_max if r_max is not None else min(d + 4, cap - d - 4)
    s_max = s_max if s_max is not None else min(d + 4, cap - r_max - 2)
    if r_max < d + 2 or s_max < d + 2:
        raise TruncationCapExceeded("window too small for the multiplicity sequence")
    table = AMTable(ring, i_gens, j_gens, r_max, s_max)
    coeffs = []
    for i in range(d + 1):
        a, b = d - i, i
        samples = []
        for off in (2, 1, 0):
            r = r_max - a - off
            s = s_max - b - off
            samples.append(_mixed_difference(table.h, a, b, r, s))
        if not samples[0] == samples[1] == samples[2]:
            raise TruncationCapExceeded(
                f"mixed difference ({a},{b}) not stabilized on the window")
        coeffs.append(samples[2])
    return d, coeffs
