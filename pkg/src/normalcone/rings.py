"""Polynomial arithmetic over a ring context.

A RingContext fixes variables, an exact coefficient field, optional quotient
relations K (so the ring presented is P/K, computed through its cover P), and
an optional truncation cap T.  With a cap set, all arithmetic happens exactly
in P/(m^{T+1} + K): terms whose base-variable degree exceeds T are discarded,
which is the canonical representative modulo m^{T+1}.  Operations whose answer
cannot be certified below the cap must raise TruncationCapExceeded.

Quotient rings are never computed in directly: elements are cover
representatives and every ideal query lifts to the cover.
"""

import re
from fractions import Fraction

from .errors import TruncationCapExceeded
from .fields import QQ, Field


class Polynomial:
    """Immutable sparse polynomial: dict mapping exponent tuples to coefficients."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring, terms):
        self.ring = ring
        field = ring.field
        cap = ring.trunc_cap
        base_n = ring.base_n
        clean = {}
        for mono, c in terms.items():
            if cap is not None and sum(mono[:base_n]) > cap:
                continue
            c = field.coerce(c)
            if not field.is_zero(c):
                clean[mono] = c
        self.terms = clean
        self._hash = None

    def is_zero(self):
        return not self.terms

    def degree(self):
        """Total degree in the base variables (-1 for the zero polynomial)."""
        if not self.terms:
            return -1
        b = self.ring.base_n
        return max(sum(m[:b]) for m in self.terms)

    def min_degree(self):
        if not self.terms:
            return -1
        b = self.ring.base_n
        return min(sum(m[:b]) for m in self.terms)

    def constant_term(self):
        zero = (0,) * self.ring.n_vars
        return self.terms.get(zero, self.ring.field.zero)

    def __add__(self, other):
        other = self.ring.poly(other)
        f = self.ring.field
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = f.add(out.get(m, f.zero), c)
            if f.is_zero(s):
                out.pop(m, None)
            else:
                out[m] = s
        return Polynomial(self.ring, out)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        f = self.ring.field
        return Polynomial(self.ring, {m: f.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        return self.__add__(self.ring.poly(other).__neg__())

    def __rsub__(self, other):
        return self.ring.poly(other).__sub__(self)

    def __mul__(self, other):
        other = self.ring.poly(other)
        f = self.ring.field
        cap = self.ring.trunc_cap
        base_n = self.ring.base_n
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                if cap is not None and sum(m[:base_n]) > cap:
                    continue
                s = f.add(out.get(m, f.zero), f.mul(c1, c2))
                if f.is_zero(s):
                    out.pop(m, None)
                else:
                    out[m] = s
        return Polynomial(self.ring, out)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative polynomial power")
        out = self.ring.one
        for _ in range(k):
            out = out * self
        return out

    def scale(self, c):
        f = self.ring.field
        c = f.coerce(c)
        return Polynomial(self.ring, {m: f.mul(v, c) for m, v in self.terms.items()})

    def monic_by(self, mono):
        """Divide through by the coefficient at mono."""
        return self.scale(self.ring.field.inv(self.terms[mono]))

    def jet(self, n):
        """Terms of base-variable degree <= n."""
        b = self.ring.base_n
        return Polynomial(self.ring, {m: c for m, c in self.terms.items() if sum(m[:b]) <= n})

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            if other == 0:
                return not self.terms
            other = self.ring.poly(other)
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def sorted_terms(self):
        """Terms ascending by (degree, degrevlex position): deterministic canonical order."""
        def k(item):
            m = item[0]
            return (sum(m), tuple(-x for x in reversed(m)))
        return sorted(self.terms.items(), key=k)

    def __str__(self):
        if not self.terms:
            return "0"
        names = self.ring.var_names
        field = self.ring.field
        bits = []
        for mono, c in self.sorted_terms():
            factors = []
            for name, e in zip(names, mono):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            cs = field.to_str(c)
            neg = cs.startswith("-")
            mag = cs[1:] if neg else cs
            if factors and mag == "1":
                body = "*".join(factors)
            elif factors:
                body = mag + "*" + "*".join(factors)
            else:
                body = mag
            if not bits:
                bits.append(("-" if neg else "") + body)
            else:
                bits.append(("- " if neg else "+ ") + body)
        return " ".join(bits)

    def __repr__(self):
        return f"<{self}>"


class RingContext:
    """Variables + field + optional quotient relations + optional truncation cap."""

    def __init__(self, var_names, field=QQ, relations=(), trunc_cap=None, base_n=None):
        if isinstance(var_names, str):
            var_names = tuple(t.strip() for t in var_names.split(",") if t.strip())
        self.var_names = tuple(var_names)
        if len(set(self.var_names)) != len(self.var_names):
            raise ValueError("duplicate variable names")
        self.n_vars = len(self.var_names)
        if not isinstance(field, Field):
            raise TypeError("field must be a Field instance")
        self.field = field
        self.trunc_cap = trunc_cap
        if trunc_cap is not None and trunc_cap < 1:
            raise ValueError("trunc_cap must be >= 1")
        self.base_n = self.n_vars if base_n is None else base_n
        self._var_index = {n: i for i, n in enumerate(self.var_names)}
        self._cache = {}
        self.relations = ()
        rel = []
        for g in relations:
            g = self.poly(g)
            if not g.is_zero():
                if not self.field.is_zero(g.constant_term()):
                    raise ValueError(f"quotient relation {g} has a unit constant term; P/K would not be local")
                rel.append(g)
        self.relations = tuple(rel)

    @property
    def mode(self):
        return "series-truncated" if self.trunc_cap is not None else "graded-local"

    @property
    def is_quotient(self):
        return bool(self.relations)

    def cover(self):
        """The same context without quotient relations."""
        if not self.relations:
            return self
        key = ("cover",)
        if key not in self._cache:
            self._cache[key] = RingContext(self.var_names, self.field, (),
                                           self.trunc_cap, self.base_n)
        return self._cache[key]

    def with_cap(self, trunc_cap):
        rels = [dict(g.terms) for g in self.relations]
        return RingContext(self.var_names, self.field, rels, trunc_cap, self.base_n)

    def require_certified(self, degree, what):
        """Series-mode guard: the degree a result depends on must sit below the cap."""
        if self.trunc_cap is not None and degree >= self.trunc_cap:
            raise TruncationCapExceeded(
                f"{what}: certified degree {degree} reaches trunc_cap {self.trunc_cap}; raise the cap")

    # -- element constructors ------------------------------------------------

    @property
    def zero(self):
        return Polynomial(self, {})

    @property
    def one(self):
        return Polynomial(self, {(0,) * self.n_vars: self.field.one})

    def var(self, i):
        e = [0] * self.n_vars
        e[i] = 1
        return Polynomial(self, {tuple(e): self.field.one})

    def gens(self):
        return tuple(self.var(i) for i in range(self.n_vars))

    def mono(self, exps, coeff=1):
        return Polynomial(self, {tuple(exps): coeff})

    def poly(self, source):
        if isinstance(source, Polynomial):
            if source.ring == self:
                return source
            raise ValueError("polynomial belongs to a different ring context")
        if isinstance(source, dict):
            return Polynomial(self, source)
        if isinstance(source, (int, Fraction)):
            if source == 0:
                return self.zero
            return Polynomial(self, {(0,) * self.n_vars: source})
        if isinstance(source, str):
            return parse_polynomial(self, source)
        raise TypeError(f"cannot build a polynomial from {source!r}")

    def embed(self, f, var_map=None):
        """Re-embed a polynomial from another context with compatible variables."""
        src = f.ring
        if var_map is None:
            var_map = [self._var_index[n] for n in src.var_names]
        out = {}
        fld = self.field
        for m, c in f.terms.items():
            e = [0] * self.n_vars
            for i, x in enumerate(m):
                if x:
                    e[var_map[i]] = x
            if isinstance(c, Fraction) and fld.char:
                c = fld.coerce(c)
            out[tuple(e)] = c
        return Polynomial(self, out)

    def extend(self, extra_names):
        """Context with extra (auxiliary) variables; the truncation cap still
        counts only base-variable degrees."""
        return RingContext(self.var_names + tuple(extra_names), self.field, (),
                           self.trunc_cap, base_n=self.base_n)

    def maximal_ideal(self):
        from .ideals import IdealHandle
        return IdealHandle(self, self.gens())

    def zero_ideal(self):
        from .ideals import IdealHandle
        return IdealHandle(self, ())

    def _ident(self):
        return (self.var_names, self.field, self.trunc_cap, self.base_n,
                tuple(frozenset(g.terms.items()) for g in self.relations))

    def __eq__(self, other):
        return isinstance(other, RingContext) and self._ident() == other._ident()

    def __hash__(self):
        return hash(self._ident())

    def __repr__(self):
        quo = " / (" + ", ".join(str(g) for g in self.relations) + ")" if self.relations else ""
        cap = f" trunc {self.trunc_cap}" if self.trunc_cap is not None else ""
        return f"{self.field.name}[{','.join(self.var_names)}]{quo}{cap}"


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\^)|(\*)|(\+)|(-)|(/)|(\()|(\)))")


def parse_polynomial(ring, text):
    """Parse 'x^2 - 3*y + 1/2' style expressions (explicit * and ^)."""
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip():
                raise ValueError(f"bad character {text[pos:].strip()[0]!r} in polynomial {text!r}")
            break
        tokens.append(m.group().strip())
        pos = m.end()
    tokens.append(None)
    idx = [0]

    def peek():
        return tokens[idx[0]]

    def take():
        t = tokens[idx[0]]
        idx[0] += 1
        return t

    def parse_base():
        t = take()
        if t == "(":
            e = parse_expr()
            if take() != ")":
                raise ValueError(f"missing ')' in polynomial {text!r}")
            return e
        if t is None:
            raise ValueError(f"unexpected end of polynomial {text!r}")
        if t.isdigit():
            num = int(t)
            if peek() == "/":
                take()
                den = take()
                if den is None or not den.isdigit():
                    raise ValueError(f"bad rational constant in {text!r}")
                return ring.poly(Fraction(num, int(den)))
            return ring.poly(num)
        if t in ring._var_index:
            return ring.var(ring._var_index[t])
        raise ValueError(f"unknown name {t!r} in polynomial {text!r}")

    def parse_factor():
        b = parse_base()
        if peek() == "^":
            take()
            e = take()
            if e is None or not e.isdigit():
                raise ValueError(f"bad exponent in {text!r}")
            return b ** int(e)
        return b

    def parse_term():
        f = parse_factor()
        while peek() == "*":
            take()
            f = f * parse_factor()
        return f

    def parse_expr():
        neg = False
        while peek() in ("+", "-"):
            if take() == "-":
                neg = not neg
        acc = parse_term()
        if neg:
            acc = -acc
        while peek() in ("+", "-"):
            sign = take() == "-"
            t = parse_term()
            acc = acc - t if sign else acc + t
        return acc

    out = parse_expr()
    if peek() is not None:
        raise ValueError(f"trailing tokens in polynomial {text!r}")
    return out
