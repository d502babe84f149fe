"""Mora's tangent-cone algorithm: standard bases for the smallest-initial
convention.

The initial monomial of f is the order-smallest monomial of f (orders here
are Noetherian, so for degree-compatible orders this is the lowest-degree
part).  Equivalently this is the classical local-order lead after reversing
the order, so Mora's weak normal form with ecart selection applies verbatim
and terminates on polynomial input.

In a series-truncated context the ring arithmetic already discards terms of
base-degree above the cap, so everything is computed exactly in P/m^{cap+1}.
The basis records whether any truncation actually occurred: when it did not,
the result is a certified standard basis of the untruncated ideal.
"""

from .errors import ResourceBudgetError
from .monomials import mono_div, mono_divides, mono_lcm, minimalize_monomials
from .rings import Polynomial

_NF_BUDGET = 200000


def initial_monomial(f, order):
    """Order-smallest monomial of a nonzero polynomial."""
    return min(f.terms, key=order.key)


def initial_term(f, order):
    m = initial_monomial(f, order)
    return m, f.terms[m]


def initial_form_weight(f, order):
    """All terms of minimal order-weight (the initial form for weight orders)."""
    w = min(order.weight(m) for m in f.terms)
    return Polynomial(f.ring, {m: c for m, c in f.terms.items() if order.weight(m) == w})


def _ecart(f, order):
    return f.degree() - sum(initial_monomial(f, order)[:f.ring.base_n])


class _TruncWatch:
    """Detects whether ring arithmetic ever dropped a term."""

    __slots__ = ("ring", "used")

    def __init__(self, ring):
        self.ring = ring
        self.used = False

    def mul(self, a, b):
        if self.ring.trunc_cap is None:
            return a * b
        cap = self.ring.trunc_cap
        base_n = self.ring.base_n
        deg_cap_hit = a.degree() + b.degree() > cap if a.terms and b.terms else False
        out = a * b
        if deg_cap_hit:
            # re-check honestly: did any cross term actually exceed the cap?
            for m1 in a.terms:
                for m2 in b.terms:
                    if sum(m1[:base_n]) + sum(m2[:base_n]) > cap:
                        self.used = True
                        return out
        return out


def mora_nf(f, reducers, order, watch=None):
    """Mora weak normal form of f against reducers.

    Returns h with h = unit * f - sum(a_i * g_i); h is zero or has an initial
    monomial not divisible by any reducer initial.  The working reducer set
    grows by intermediate remainders exactly when the ecart rises, which is
    what makes the local division terminate.
    """
    ring = f.ring
    field = ring.field
    if watch is None:
        watch = _TruncWatch(ring)
    T = [(g, initial_monomial(g, order), _ecart(g, order)) for g in reducers if not g.is_zero()]
    h = f
    steps = 0
    while not h.is_zero():
        hm = initial_monomial(h, order)
        cands = [(e, order.key(gm), i) for i, (g, gm, e) in enumerate(T) if mono_divides(gm, hm)]
        if not cands:
            return h
        steps += 1
        if steps > _NF_BUDGET:
            raise ResourceBudgetError("mora normal form exceeded its reduction budget")
        _, _, i = min(cands)
        g, gm, e = T[i]
        eh = _ecart(h, order)
        if e > eh:
            T.append((h, hm, eh))
        cof = ring.mono(mono_div(hm, gm), field.div(h.terms[hm], g.terms[gm]))
        h = h - watch.mul(cof, g)
    return h


class MoraBasis:
    """Standard basis w.r.t. a Noetherian order, smallest-initial convention."""

    __slots__ = ("ring", "order", "polys", "truncation_used", "_initials")

    def __init__(self, ring, order, polys, truncation_used):
        self.ring = ring
        self.order = order
        self.polys = tuple(polys)
        self.truncation_used = truncation_used
        self._initials = tuple(initial_monomial(g, order) for g in self.polys)

    def initials(self):
        return self._initials

    def initial_generators(self):
        """Minimal generating monomials of the initial ideal (up to the cap)."""
        return minimalize_monomials(self._initials)

    def nf(self, f):
        if f.ring != self.ring:
            f = self.ring.embed(f)
        return mora_nf(f, list(self.polys), self.order)

    def contains(self, f):
        return self.nf(f).is_zero()


def standard_basis(gens, order):
    """Mora standard basis of (gens) in the generators' (possibly truncated,
    cover) context.  Quotient relations are not added automatically."""
    ring = None
    G = []
    for g in gens:
        if ring is None:
            ring = g.ring
        if not g.is_zero():
            G.append(g)
    if ring is None:
        raise ValueError("standard_basis needs at least one polynomial to fix the ring")
    if ring.relations:
        raise ValueError("lift to the cover before computing a standard basis")
    if not order.noetherian:
        raise ValueError("standard bases need a Noetherian (degree-compatible) order")
    watch = _TruncWatch(ring)
    field = ring.field

    G = [g.monic_by(initial_monomial(g, order)) for g in G]
    ins = [initial_monomial(g, order) for g in G]
    pairs = {(i, j) for j in range(len(G)) for i in range(j)
             if not (len(G[i].terms) == 1 and len(G[j].terms) == 1)}

    def lcm_of(i, j):
        return mono_lcm(ins[i], ins[j])

    while pairs:
        i, j = min(pairs, key=lambda p: (order.key(lcm_of(*p)), p))
        pairs.discard((i, j))
        li, lj = ins[i], ins[j]
        lcm = mono_lcm(li, lj)
        if lcm == tuple(a + b for a, b in zip(li, lj)):
            continue
        chain = False
        for k in range(len(G)):
            if k in (i, j) or not mono_divides(ins[k], lcm):
                continue
            a, b = (min(i, k), max(i, k)), (min(j, k), max(j, k))
            if a not in pairs and b not in pairs:
                chain = True
                break
        if chain:
            continue
        ci = ring.mono(mono_div(lcm, li))
        cj = ring.mono(mono_div(lcm, lj))
        s = watch.mul(ci, G[i]) - watch.mul(cj, G[j])
        if s.is_zero():
            continue
        r = mora_nf(s, G, order, watch)
        if r.is_zero():
            continue
        rm = initial_monomial(r, order)
        r = r.monic_by(rm)
        idx = len(G)
        for t in range(idx):
            if not (len(G[t].terms) == 1 and len(r.terms) == 1):
                pairs.add((t, idx))
        G.append(r)
        ins.append(rm)

    # minimalize on initials; tail-reduce only in series mode (it can diverge
    # on honest polynomial input otherwise)
    keep = []
    for i, im in enumerate(ins):
        if any(j != i and mono_divides(ins[j], im)
               and (ins[j] != im or j < i) for j in range(len(G))):
            continue
        keep.append(i)
    final = [G[i] for i in keep]
    if ring.trunc_cap is not None:
        reduced = []
        for i, g in enumerate(final):
            others = [h for j, h in enumerate(final) if j != i]
            gm = initial_monomial(g, order)
            tail = g - ring.mono(gm, g.terms[gm])
            rt = mora_nf(tail, others, order, watch) if others and not tail.is_zero() else tail
            reduced.append((ring.mono(gm, g.terms[gm]) + rt).monic_by(gm))
        final = reduced
    final.sort(key=lambda g: order.key(initial_monomial(g, order)))
    return MoraBasis(ring, order, final, watch.used)


def lazard_basis(gens, order):
    """Independent route to the same initial data via Lazard homogenization.

    Homogenize to P[h], compute a classical Groebner basis for the global
    order that compares first by total degree and then by the reversed base
    order on the x-part, dehomogenize.  Used as a cross-check oracle."""
    from .groebner import buchberger
    from .orders import MonomialOrder
    from .rings import RingContext

    ring = gens[0].ring
    if ring.relations:
        raise ValueError("lift to the cover before homogenizing")
    n = ring.n_vars
    H = RingContext(ring.var_names + ("_h",), ring.field, (), None, base_n=ring.base_n)

    def homogenize(f):
        d = max(sum(m) for m in f.terms)
        return Polynomial(H, {m + (d - sum(m),): c for m, c in f.terms.items()})

    def hkey(m):
        return (sum(m),) + tuple(-x for x in order.key(m[:n]))

    horder = MonomialOrder("custom", n + 1, key_fn=hkey, name="lazard")
    hg = [homogenize(g) for g in gens if not g.is_zero()]
    cap = ring.trunc_cap
    if cap is not None:
        from .monomials import monomials_of_degree
        for mu in monomials_of_degree(ring.base_n, cap + 1):
            hg.append(H.mono(mu + (0,) * (n + 1 - ring.base_n)))
    gb = buchberger(hg, horder)

    out = []
    for g in gb.polys:
        f = Polynomial(ring, {m[:n]: c for m, c in g.terms.items()})
        if not f.is_zero():
            out.append(f.monic_by(initial_monomial(f, order)))
    seen = {}
    for f in out:
        seen[frozenset(f.terms.items())] = f
    final = sorted(seen.values(), key=lambda g: order.key(initial_monomial(g, order)))
    return MoraBasis(ring, order, final, cap is not None)
