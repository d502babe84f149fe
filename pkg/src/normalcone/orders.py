"""Monomial orders as flat integer sort keys (larger key = larger monomial).

Convention used throughout the toolkit: the INITIAL monomial of a polynomial
is the SMALLEST monomial of its support, and an order is flagged noetherian
exactly when it is degree-compatible with respect to a strictly positive
weight vector (then 1 is the unique minimum and every monomial has finitely
many predecessors).  Classical largest-lead selection is used internally for
elimination plumbing only.
"""

from .monomials import mono_deg, monomials_of_degree

LT, EQ, GT = -1, 0, 1


class MonomialOrder:
    """A total multiplicative monomial order on a fixed number of variables."""

    def __init__(self, kind, n_vars, weights=None, blocks=None, priority=None, key_fn=None, name=None):
        self.kind = kind
        self.n_vars = n_vars
        self.weights = tuple(weights) if weights is not None else None
        self.blocks = tuple(blocks) if blocks is not None else None
        self.priority = tuple(priority) if priority is not None else tuple(range(n_vars))
        self._key_fn = key_fn
        self.name = name or kind
        if sorted(self.priority) != list(range(n_vars)):
            raise ValueError("priority must be a permutation of the variable indices")
        self.noetherian = self._noetherian()

    def _noetherian(self):
        if self.kind in ("deglex", "degrevlex"):
            return True
        if self.kind == "lex":
            return self.n_vars == 1
        if self.kind == "weighted":
            return all(w > 0 for w in self.weights)
        return False

    def weight(self, exps):
        """The positive weight a noetherian order grades by (total degree default)."""
        if self.kind == "weighted":
            return sum(w * e for w, e in zip(self.weights, exps))
        return mono_deg(exps)

    def key(self, exps):
        if self._key_fn is not None:
            return self._key_fn(exps)
        p = self.priority
        e = tuple(exps[i] for i in p)
        if self.kind == "lex":
            return e
        if self.kind == "deglex":
            return (mono_deg(exps),) + e
        if self.kind == "degrevlex":
            return (mono_deg(exps),) + tuple(-x for x in reversed(e))
        if self.kind == "weighted":
            return (self.weight(exps),) + e
        if self.kind == "block":
            out = []
            start = 0
            for sub in self.blocks:
                part = exps[start:start + sub.n_vars]
                out.extend(sub.key(part))
                start += sub.n_vars
            return tuple(out)
        raise ValueError(f"unknown order kind {self.kind}")

    def compare(self, a, b):
        if len(a) != self.n_vars or len(b) != self.n_vars:
            raise ValueError(f"exponent length mismatch: order on {self.n_vars} variables "
                             f"applied to {len(a)}/{len(b)}")
        ka, kb = self.key(a), self.key(b)
        return LT if ka < kb else GT if ka > kb else EQ

    def _ident(self):
        return (self.kind, self.n_vars, self.weights,
                tuple(b._ident() for b in self.blocks) if self.blocks else None,
                self.priority, self.name if self._key_fn else None)

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and self._ident() == other._ident()

    def __hash__(self):
        return hash(self._ident())

    def __repr__(self):
        return f"MonomialOrder({self.name}, n={self.n_vars})"


def lex(n_vars, priority=None):
    return MonomialOrder("lex", n_vars, priority=priority)


def deglex(n_vars, priority=None):
    return MonomialOrder("deglex", n_vars, priority=priority)


def degrevlex(n_vars, priority=None):
    return MonomialOrder("degrevlex", n_vars, priority=priority)


def weighted(weights, priority=None):
    return MonomialOrder("weighted", len(weights), weights=weights, priority=priority)


def block(subs):
    """Product order: compare under subs[0] first, then subs[1], ..."""
    n = sum(s.n_vars for s in subs)
    return MonomialOrder("block", n, blocks=subs, name="block(" + ",".join(s.name for s in subs) + ")")


def elimination_order(n_elim, n_rest):
    """Block order eliminating the first n_elim variables (their leads dominate)."""
    return block([degrevlex(n_elim), degrevlex(n_rest)])


def elim_order_positions(n_vars, positions):
    """Elimination order for an arbitrary set of variable positions.

    Any monomial touching an eliminated variable compares above every
    monomial that does not, so classical leads eliminate correctly."""
    pos = tuple(sorted(set(positions)))
    rest = tuple(i for i in range(n_vars) if i not in pos)

    def key(exps):
        a = tuple(exps[i] for i in pos)
        b = tuple(exps[i] for i in rest)
        return ((sum(a),) + tuple(-x for x in reversed(a))
                + (sum(b),) + tuple(-x for x in reversed(b)))

    return MonomialOrder("custom", n_vars, key_fn=key, name=f"elim@{','.join(map(str, pos))}")


def order_from_name(name, n_vars):
    table = {"lex": lex, "deglex": deglex, "degrevlex": degrevlex}
    if name in table:
        return table[name](n_vars)
    if name.startswith("weighted:"):
        ws = tuple(int(t) for t in name.split(":", 1)[1].split(","))
        if len(ws) != n_vars:
            raise ValueError(f"weight vector length {len(ws)} != {n_vars} variables")
        return weighted(ws)
    raise ValueError(f"unknown order {name!r} (expected lex, deglex, degrevlex, weighted:w1,w2,...)")


def smallest_monomial(poly, order):
    """Initial monomial of a nonzero polynomial: the order-smallest of its support."""
    if not order.noetherian:
        raise ValueError(f"order {order.name} is not noetherian; initial monomials undefined")
    if not poly.terms:
        raise ValueError("zero polynomial has no initial monomial")
    return min(poly.terms, key=order.key)


def enumerate_ascending(order, limit):
    """First `limit` monomials in increasing order (noetherian orders only)."""
    if not order.noetherian:
        raise ValueError(f"order {order.name} is not noetherian; enumeration would not be well-founded")
    n = order.n_vars
    out = []
    if order.kind == "weighted":
        w = order.weights
        target = 0
        while len(out) < limit:
            stratum = []

            def rec(i, rem, acc):
                if i == n - 1:
                    if rem % w[i] == 0:
                        stratum.append(tuple(acc + [rem // w[i]]))
                    return
                for e in range(rem // w[i] + 1):
                    rec(i + 1, rem - e * w[i], acc + [e])

            rec(0, target, [])
            out.extend(sorted(stratum, key=order.key))
            target += 1
    else:
        d = 0
        while len(out) < limit:
            out.extend(sorted(monomials_of_degree(n, d), key=order.key))
            d += 1
    return out[:limit]
