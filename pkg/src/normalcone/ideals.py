"""Ideal handles and the ideal calculus.

A handle denotes an ideal of its ring context R = P/K; computations never
happen in R directly.  Every query lifts to the cover P by adjoining the
quotient relations, and in series mode the truncation stratum m^{cap+1} rides
along automatically, so all answers are exact in P/(m^{cap+1} + K).

Membership, equality and colength therefore mean membership, equality and
colength in that truncated ring; operations that need to certify statements
about the untruncated ring check degree margins and raise
TruncationCapExceeded when the cap is too small to decide.
"""

from itertools import combinations_with_replacement

from .errors import INFINITE, InternalCheckFailed, TruncationCapExceeded
from .groebner import buchberger, lead_monomial
from .linalg import ideal_span
from .monomials import minimalize_monomials, mono_div, mono_divides
from .orders import degrevlex, elim_order_positions
from .rings import RingContext


class IdealHandle:
    """An ideal of a ring context, given by generators."""

    __slots__ = ("ring", "gens", "_cache")

    def __init__(self, ring, gens):
        self.ring = ring
        out = []
        for g in gens:
            g = ring.poly(g)
            if not g.is_zero():
                out.append(g)
        self.gens = tuple(out)
        self._cache = {}

    # -- lifting -------------------------------------------------------------

    def cover_gens(self):
        """Generators of the preimage in the cover: lifted gens + relations."""
        key = "cover_gens"
        if key not in self._cache:
            cov = self.ring.cover()
            lifted = [cov.embed(g) for g in self.gens]
            lifted.extend(cov.embed(k) for k in self.ring.relations)
            self._cache[key] = tuple(lifted)
        return self._cache[key]

    def gb(self, order=None):
        """Reduced classical basis of the lifted ideal (plus stratum in series mode)."""
        if order is None:
            order = degrevlex(self.ring.n_vars)
        key = ("gb", order)
        if key not in self._cache:
            self._cache[key] = buchberger(list(self.cover_gens()), order,
                                          context=self.ring.cover())
        return self._cache[key]

    def span(self, cap):
        """Row space of the lifted ideal's image in P_{<=cap}."""
        key = ("span", cap)
        if key not in self._cache:
            self._cache[key] = ideal_span(self.ring.cover(), list(self.cover_gens()), cap)
        return self._cache[key]

    # -- predicates ----------------------------------------------------------

    def member(self, f):
        f = self.ring.poly(f)
        return self.gb().contains(self.ring.cover().embed(f))

    def contains_ideal(self, other):
        gb = self.gb()
        cov = self.ring.cover()
        return all(gb.contains(cov.embed(g)) for g in other.gens)

    def equals(self, other):
        if self.ring != other.ring:
            return False
        a, b = self.gb(), other.gb()
        return {frozenset(g.terms.items()) for g in a.polys} == \
               {frozenset(g.terms.items()) for g in b.polys}

    def is_zero(self):
        """Zero as an ideal of the (possibly truncated) ring."""
        gb = self.gb()
        cap = self.ring.trunc_cap
        if cap is None:
            return not gb.polys
        b = gb.ring.base_n
        return all(sum(lead_monomial(g, gb.order)[:b]) > cap for g in gb.polys)

    def min_degree(self):
        """Smallest base-degree of a nonzero element (order of the ideal)."""
        gb = self.gb()
        degs = [g.min_degree() for g in gb.polys if not self._maybe_stratum(g)]
        return min(degs) if degs else INFINITE

    def _maybe_stratum(self, g):
        if self.ring.trunc_cap is None:
            return False
        return g.min_degree() > self.ring.trunc_cap

    # -- calculus ------------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        return IdealHandle(self.ring, self.gens + other.gens)

    def __mul__(self, other):
        other = self._coerce(other)
        prods = [a * b for a in self.gens for b in other.gens]
        return IdealHandle(self.ring, prods)

    def power(self, k):
        if k < 0:
            raise ValueError("negative ideal power")
        if k == 0:
            return IdealHandle(self.ring, (self.ring.one,))
        key = ("power", k)
        if key not in self._cache:
            gens = [prod_all(c) for c in combinations_with_replacement(self.gens, k)]
            self._cache[key] = IdealHandle(self.ring, gens)
        return self._cache[key]

    def _coerce(self, other):
        if isinstance(other, IdealHandle):
            if other.ring != self.ring:
                raise ValueError("ideal handles live in different ring contexts")
            return other
        if isinstance(other, (list, tuple)):
            return IdealHandle(self.ring, other)
        return IdealHandle(self.ring, (other,))

    def intersect(self, other):
        other = self._coerce(other)
        cov = self.ring.cover()
        a = list(self.cover_gens())
        b = list(other.cover_gens())
        if not a or not b:
            return IdealHandle(self.ring, ())
        ext = cov.extend(("_t",))
        t = ext.var(ext.n_vars - 1)
        one = ext.one
        gens = [t * ext.embed(g) for g in a] + [(one - t) * ext.embed(g) for g in b]
        elim = eliminate(ext, gens, [ext.n_vars - 1])
        down = [self.ring.embed(g, var_map=list(range(cov.n_vars)) + [0]) for g in elim]
        return IdealHandle(self.ring, [g for g in down if not g.is_zero()])

    def colon_element(self, g):
        """(I : g) computed as (I cap (g)) / g; exact in the truncated ring."""
        g = self.ring.poly(g)
        if g.is_zero():
            raise ValueError("colon by zero")
        cov = self.ring.cover()
        glift = cov.embed(g)
        a = list(self.cover_gens())
        cap = cov.trunc_cap
        # uncapped computation with explicit one-sided stratum: the stratum
        # joins I but not (g), so every intersection generator divides by g
        plain = RingContext(cov.var_names, cov.field, (), None, cov.base_n)
        ext = plain.extend(("_t",))
        t = ext.var(ext.n_vars - 1)
        one = ext.one
        gens = [t * ext.embed(x) for x in a]
        if cap is not None:
            from .monomials import monomials_of_degree
            for mu in monomials_of_degree(plain.base_n, cap + 1):
                gens.append(t * ext.mono(mu + (0,) * (ext.n_vars - plain.base_n)))
        gens.append((one - t) * ext.embed(glift))
        inter = eliminate(ext, gens, [ext.n_vars - 1])
        gp = plain.embed(glift)
        quot = []
        for e in inter:
            e_down = plain.embed(e, var_map=list(range(plain.n_vars)) + [0])
            if e_down.is_zero():
                continue
            quot.append(exact_divide(e_down, gp))
        down = [self.ring.embed(q) for q in quot]
        return IdealHandle(self.ring, [q for q in down if not q.is_zero()])

    def colon(self, other):
        other = self._coerce(other)
        if not other.gens:
            return IdealHandle(self.ring, (self.ring.one,))
        acc = None
        for g in other.gens:
            part = self.colon_element(g)
            acc = part if acc is None else acc.intersect(part)
        return acc

    def saturate(self, other, max_steps=256):
        from .errors import ResourceBudgetError
        other = self._coerce(other)
        cur = self
        for _ in range(max_steps):
            nxt = cur.colon(other)
            if nxt.contains_ideal(cur) and cur.contains_ideal(nxt):
                return cur
            cur = nxt
        raise ResourceBudgetError("saturation did not stabilize within the step budget")

    # -- numerics ------------------------------------------------------------

    def standard_monomials(self, certify=True):
        """Monomials outside the classical lead ideal of the lift.

        In series mode a standard monomial at degree == cap means the count
        is not certified for the untruncated ring; with certify=True that
        raises.  Returns None when the set is infinite (no cap only)."""
        gb = self.gb()
        leads = minimalize_monomials(list(gb.leads()))
        n = gb.ring.n_vars
        cap = self.ring.trunc_cap
        if cap is None:
            for i in range(n):
                if not any(all(l[j] == 0 for j in range(n) if j != i) for l in leads):
                    return None
        out = []
        from collections import deque
        seen = {(0,) * n}
        queue = deque(seen)
        while queue:
            m = queue.popleft()
            if any(mono_divides(l, m) for l in leads):
                continue
            out.append(m)
            if cap is not None and sum(m[: gb.ring.base_n]) >= cap:
                if certify:
                    raise TruncationCapExceeded(
                        "standard monomial reaches the truncation cap; colength not certified")
            for i in range(n):
                child = m[:i] + (m[i] + 1,) + m[i + 1:]
                if child not in seen:
                    seen.add(child)
                    queue.append(child)
        out.sort(key=lambda m: (sum(m), tuple(-x for x in reversed(m))))
        return out

    def colength(self, certify=True):
        """dim_k of R/(I), i.e. of P/(I + K [+ m^{cap+1}])."""
        sm = self.standard_monomials(certify=certify)
        if sm is None:
            return INFINITE
        return len(sm)

    def __repr__(self):
        gens = ", ".join(str(g) for g in self.gens) or "0"
        return f"Ideal({gens}) over {self.ring!r}"


def prod_all(polys):
    out = None
    for p in polys:
        out = p if out is None else out * p
    return out


def ideal(ring, *gens):
    return IdealHandle(ring, gens)


def eliminate(ring, gens, positions):
    """Generators of (gens) cap k[vars outside positions], classical elimination.

    Works in the generators' context; in series mode the base stratum rides
    along (sound for both-sides-truncated intersections)."""
    order = elim_order_positions(ring.n_vars, positions)
    gb = buchberger([g if g.ring == ring else ring.embed(g) for g in gens], order)
    out = []
    for g in gb.polys:
        if all(all(m[i] == 0 for i in positions) for m in g.terms):
            out.append(g)
    return out


def exact_divide(f, g):
    """f / g in a polynomial context when g divides f exactly."""
    ring = f.ring
    order = degrevlex(ring.n_vars)
    lg = lead_monomial(g, order)
    q = ring.zero
    field = ring.field
    work = f
    while not work.is_zero():
        lf = lead_monomial(work, order)
        if not mono_divides(lg, lf):
            raise InternalCheckFailed(f"exact division failed: {g} does not divide {f}")
        c = ring.mono(mono_div(lf, lg), field.div(work.terms[lf], g.terms[lg]))
        q = q + c
        work = work - c * g
    return q


def maximal_ideal(ring):
    return IdealHandle(ring, ring.gens())


def zero_ideal(ring):
    return IdealHandle(ring, ())
