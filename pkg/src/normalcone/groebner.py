"""Classical Buchberger engine over exact fields, with optional truncation.

This is internal plumbing (elimination, homogeneous cross-checks).  It uses
the textbook largest-lead convention; the public smallest-initial machinery
lives in mora.py and adic.py.  All orders accepted here are global in the
classical sense (1 is the smallest monomial under every order in orders.py).

Truncation: with dropcap = T the engine computes a basis of (gens) + m^{T+1},
where m is generated by the base variables of the context.  The stratum
monomials of base-degree T+1 are honest members of the generating set; terms
of base-degree > T may be dropped at any point because that is reduction by a
stratum element.  Monomial-monomial S-pairs vanish identically and are never
enqueued, which keeps the stratum out of the pair loop.
"""

from .monomials import mono_div, mono_divides, mono_lcm, monomials_of_degree
from .rings import Polynomial, RingContext


def lead_monomial(f, order):
    return max(f.terms, key=order.key)


def _computation_ring(ring):
    if ring.trunc_cap is None and not ring.relations:
        return ring
    return RingContext(ring.var_names, ring.field, (), None, ring.base_n)


class GroebnerBasis:
    """Reduced basis of (gens) [+ m^{dropcap+1}] over an uncapped context."""

    __slots__ = ("ring", "order", "dropcap", "polys", "_leads")

    def __init__(self, ring, order, dropcap, polys):
        self.ring = ring
        self.order = order
        self.dropcap = dropcap
        self.polys = tuple(polys)
        self._leads = tuple(lead_monomial(g, order) for g in self.polys)

    def leads(self):
        return self._leads

    def _drop(self, f):
        if self.dropcap is None:
            return f
        b = self.ring.base_n
        return Polynomial(self.ring,
                          {m: c for m, c in f.terms.items() if sum(m[:b]) <= self.dropcap})

    def nf(self, f):
        """Full normal form; the remainder has no term divisible by a lead."""
        if f.ring != self.ring:
            f = self.ring.embed(f)
        f = self._drop(f)
        order = self.order
        field = self.ring.field
        out = {}
        work = f
        while work.terms:
            t = max(work.terms, key=order.key)
            for g, lm in zip(self.polys, self._leads):
                if mono_divides(lm, t):
                    cof = self.ring.mono(mono_div(t, lm), work.terms[t])
                    work = self._drop(work - cof * g)
                    break
            else:
                out[t] = work.terms[t]
                work = Polynomial(self.ring, {m: c for m, c in work.terms.items() if m != t})
        return Polynomial(self.ring, out)

    def contains(self, f):
        return self.nf(f).is_zero()


def _spoly(ring, f, lf, g, lg, order):
    lcm = mono_lcm(lf, lg)
    cf = ring.mono(mono_div(lcm, lf), ring.field.inv(f.terms[lf]))
    cg = ring.mono(mono_div(lcm, lg), ring.field.inv(g.terms[lg]))
    return cf * f - cg * g


def _reduce_once(ring, work, basis, leads, order, drop):
    field = ring.field
    out = {}
    while work.terms:
        t = max(work.terms, key=order.key)
        for g, lm in zip(basis, leads):
            if g is not None and mono_divides(lm, t):
                cof = ring.mono(mono_div(t, lm), field.div(work.terms[t], g.terms[lm]))
                work = drop(work - cof * g)
                break
        else:
            out[t] = work.terms[t]
            work = Polynomial(ring, {m: c for m, c in work.terms.items() if m != t})
    return Polynomial(ring, out)


def buchberger(gens, order, seed_basis=None, context=None):
    """Reduced Groebner basis of (gens) within the generators' context.

    The context's truncation cap, if set, becomes the dropcap: the ideal
    computed is (gens) + m^{cap+1} over the uncapped cover.  Quotient
    relations of the context are NOT added here; callers lift explicitly.

    seed_basis: a GroebnerBasis whose ideal is to be enlarged by gens; its
    internal S-pairs are known to reduce to zero and are skipped.
    context: fixes the ring when gens is empty.
    """
    if seed_basis is not None:
        ring = seed_basis.ring
        dropcap = seed_basis.dropcap
        order = seed_basis.order if order is None else order
    else:
        src = gens[0].ring if gens else context
        if src is None:
            raise ValueError("buchberger needs generators, a seed basis, or a context")
        dropcap = src.trunc_cap
        ring = _computation_ring(src)

    def drop(f):
        if dropcap is None:
            return f
        b = ring.base_n
        return Polynomial(ring, {m: c for m, c in f.terms.items() if sum(m[:b]) <= dropcap})

    G = []
    if seed_basis is not None:
        G.extend(seed_basis.polys)
    else:
        if dropcap is not None:
            for m in monomials_of_degree(ring.base_n, dropcap + 1):
                G.append(ring.mono(m + (0,) * (ring.n_vars - ring.base_n)))
    n_seed = len(G)

    for g in gens:
        g = ring.embed(g) if g.ring != ring else g
        g = drop(g)
        if not g.is_zero():
            G.append(g)
    leads = [lead_monomial(g, order) for g in G]
    G = [g.monic_by(lm) for g, lm in zip(G, leads)]

    pairs = set()
    for j in range(len(G)):
        lo = 0 if j >= n_seed else j + 1  # seed-internal pairs are settled
        for i in range(lo, j):
            if len(G[i].terms) == 1 and len(G[j].terms) == 1:
                continue
            pairs.add((i, j))

    def lcm_of(i, j):
        return mono_lcm(leads[i], leads[j])

    while pairs:
        i, j = min(pairs, key=lambda p: (order.key(lcm_of(*p)), p))
        pairs.discard((i, j))
        lcm = lcm_of(i, j)
        li, lj = leads[i], leads[j]
        if mono_lcm(li, lj) == tuple(a + b for a, b in zip(li, lj)):
            continue  # coprime leads
        chain = False
        for k in range(len(G)):
            if k in (i, j) or not mono_divides(leads[k], lcm):
                continue
            a, b = (min(i, k), max(i, k)), (min(j, k), max(j, k))
            if a not in pairs and b not in pairs:
                chain = True
                break
        if chain:
            continue
        s = drop(_spoly(ring, G[i], li, G[j], lj, order))
        r = _reduce_once(ring, s, G, leads, order, drop)
        if r.is_zero():
            continue
        lm = lead_monomial(r, order)
        r = r.monic_by(lm)
        newidx = len(G)
        for t in range(newidx):
            if len(G[t].terms) == 1 and len(r.terms) == 1:
                continue
            pairs.add((t, newidx))
        G.append(r)
        leads.append(lm)

    # minimalize, then tail-reduce to the unique reduced basis
    keep = []
    for i, lm in enumerate(leads):
        if any(j != i and mono_divides(leads[j], lm)
               and (leads[j] != lm or j < i) for j in range(len(G))):
            continue
        keep.append(i)
    final = []
    for i in keep:
        others = [G[j] for j in keep if j != i]
        olead = [leads[j] for j in keep if j != i]
        r = _reduce_once(ring, G[i], others, olead, order, drop)
        final.append(r.monic_by(lead_monomial(r, order)))
    final.sort(key=lambda g: order.key(lead_monomial(g, order)))
    return GroebnerBasis(ring, order, dropcap, final)
