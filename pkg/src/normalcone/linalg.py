"""Exact sparse linear algebra over monomial bases.

Row spaces live over the monomial basis of a truncated polynomial ring; all
ideal-theoretic invariants computed here are images modulo m^{cap+1}, which is
exactly the series-truncated arithmetic of the ring contexts.  Columns are
identified by (degree, degrevlex reversal) so a pivot always sits at the
order-smallest monomial of its row: pivot monomials of the span of an ideal
are precisely its initial monomials up to the cap.
"""

from .rings import Polynomial


def mono_col(m):
    return (sum(m), tuple(-x for x in reversed(m)))


def col_mono(col):
    return tuple(-x for x in reversed(col[1]))


def poly_to_vec(f):
    return {mono_col(m): c for m, c in f.terms.items()}


def vec_to_poly(ring, vec):
    return Polynomial(ring, {col_mono(col): c for col, c in vec.items()})


class RowSpace:
    """Reduced row echelon span; pivot = smallest column of the row."""

    __slots__ = ("field", "rows")

    def __init__(self, field):
        self.field = field
        self.rows = {}

    @property
    def dim(self):
        return len(self.rows)

    def copy(self):
        out = RowSpace(self.field)
        out.rows = {p: dict(r) for p, r in self.rows.items()}
        return out

    def reduce(self, vec):
        """Normal form of vec against the current rows (vec is consumed)."""
        f = self.field
        rows = self.rows
        while True:
            # ascending sweep; freshly introduced pivot columns are caught on
            # the next pass, and the smallest live pivot strictly increases
            touched = sorted(c for c in vec if c in rows)
            if not touched:
                return vec
            for col in touched:
                c = vec.get(col)
                if c is None or f.is_zero(c):
                    vec.pop(col, None)
                    continue
                row = rows[col]
                for rc, rv in row.items():
                    s = f.sub(vec.get(rc, f.zero), f.mul(c, rv))
                    if f.is_zero(s):
                        vec.pop(rc, None)
                    else:
                        vec[rc] = s
                vec.pop(col, None)

    def insert(self, vec):
        """Reduce vec and adjoin the remainder as a new (monic) row.

        Returns True when the dimension grew."""
        vec = self.reduce(dict(vec))
        if not vec:
            return False
        f = self.field
        pivot = min(vec)
        inv = f.inv(vec[pivot])
        row = {c: f.mul(v, inv) for c, v in vec.items()}
        # keep the echelon reduced: clear the new pivot from older rows
        for p, old in self.rows.items():
            c = old.get(pivot)
            if c is not None:
                for rc, rv in row.items():
                    s = f.sub(old.get(rc, f.zero), f.mul(c, rv))
                    if f.is_zero(s):
                        old.pop(rc, None)
                    else:
                        old[rc] = s
        self.rows[pivot] = row
        return True

    def insert_many(self, vecs):
        grew = False
        for v in vecs:
            grew |= self.insert(v)
        return grew

    def contains(self, vec):
        return not self.reduce(dict(vec))

    def nf(self, vec):
        return self.reduce(dict(vec))

    def pivots(self):
        return set(self.rows)

    def basis_vectors(self):
        return [dict(r) for _, r in sorted(self.rows.items())]


def span_of_polys(field, polys):
    sp = RowSpace(field)
    for g in polys:
        sp.insert(poly_to_vec(g))
    return sp


def _monomials_up_to(n_vars, d):
    from .monomials import monomials_up_to_degree
    return monomials_up_to_degree(n_vars, d)


def ideal_span(ring, gens, cap):
    """Span of the image of (gens) in P_{<=cap}, i.e. modulo m^{cap+1}.

    Multiplies every generator by all base monomials that can still produce a
    term of base-degree <= cap.  Auxiliary variables (beyond ring.base_n) are
    not multiplied in; spans are used on base contexts only.
    """
    sp = RowSpace(ring.field)
    work = ring if ring.trunc_cap == cap else ring.with_cap(cap)
    for g in gens:
        g = work.embed(g) if g.ring != work else g
        md = g.min_degree()
        if md < 0:
            continue
        if md == 0:
            raise ValueError("ideal generator with a unit constant term")
        for mu in _monomials_up_to(work.base_n, cap - md):
            mono = mu + (0,) * (work.n_vars - work.base_n)
            sp.insert(poly_to_vec(work.mono(mono) * g))
    return sp


def product_span(ring, apolys, bpolys, cap):
    """Span of the image of the product ideal (A) * (B) in P_{<=cap}."""
    work = ring if ring.trunc_cap == cap else ring.with_cap(cap)
    prods = []
    for a in apolys:
        a = work.embed(a) if a.ring != work else a
        for b in bpolys:
            b = work.embed(b) if b.ring != work else b
            p = a * b
            if not p.is_zero():
                prods.append(p)
    return ideal_span(work, prods, cap)


def intersect_spans(field, span_u, span_w):
    """Zassenhaus intersection of two row spaces over the same column set."""
    big = RowSpace(field)
    for vec in span_u.basis_vectors():
        paired = {(0,) + c: v for c, v in vec.items()}
        paired.update({(1,) + c: v for c, v in vec.items()})
        big.insert(paired)
    for vec in span_w.basis_vectors():
        big.insert({(0,) + c: v for c, v in vec.items()})
    out = RowSpace(field)
    for pivot, row in big.rows.items():
        if pivot[0] == 1:
            out.insert({c[1:]: v for c, v in row.items()})
    return out


def sum_dim(field, *span_lists):
    """Dimension of the sum of spans (each argument: RowSpace or list of vecs)."""
    acc = RowSpace(field)
    for item in span_lists:
        vecs = item.basis_vectors() if isinstance(item, RowSpace) else item
        for v in vecs:
            acc.insert(v)
    return acc.dim


def merged_span(field, *span_lists):
    acc = RowSpace(field)
    for item in span_lists:
        vecs = item.basis_vectors() if isinstance(item, RowSpace) else item
        for v in vecs:
            acc.insert(v)
    return acc
