"""Session-script language: tokenizer, parser, canonical printer.

A script declares one ring, then ideals, sequences and filtrations over it,
then a list of commands.  Example:

    ring R = Q[x, y, z] / (x*z, y*z, z^4) trunc 12;
    ideal J = m;
    seq f = (x);
    cmd bound_main f J;
    cmd verify f J N=auto trials=100 seed=42;

Parsing is purely syntactic plus name resolution; no engine objects are built
here.  All errors raise a ScriptError subclass carrying line and column, and
parse errors also carry the set of tokens that would have been accepted.
Polynomials use explicit `*` and `^`; coefficients are integers or integer
ratios; `m` always denotes the maximal ideal and cannot be redeclared.
`#` starts a comment running to the end of the line.
"""

from dataclasses import dataclass, field
from fractions import Fraction

_KEYWORDS = ("ring", "ideal", "seq", "filtration", "cmd", "trunc", "cap")
_RESERVED = _KEYWORDS + ("m",)
_PUNCT_TWO = ("..",)
_PUNCT_ONE = "=[](),;/^*+-"
_MAX_DEPTH = 64          # nesting guard for hostile inputs
_MAX_POW = 4096          # absolute exponent ceiling
_MAX_MULTI_POW = 64      # tighter ceiling for multi-term bases
_MAX_TRUNC = 512


class ScriptError(Exception):
    """Base for script diagnostics; carries a 1-based line and column."""

    def __init__(self, message, line, col, expected=()):
        super().__init__(message)
        self.message = message
        self.line = line
        self.col = col
        self.expected = tuple(expected)

    def diagnostic(self):
        head = f"line {self.line}, col {self.col}: {self.message}"
        if self.expected:
            head += " (expected " + " or ".join(self.expected) + ")"
        return head


class LexError(ScriptError):
    pass


class ParseError(ScriptError):
    pass


class SemanticError(ScriptError):
    pass


@dataclass(frozen=True)
class Token:
    kind: str                # NAME | INT | PUNCT | EOF
    value: object
    line: int
    col: int

    def label(self):
        if self.kind == "EOF":
            return "end of script"
        if self.kind == "PUNCT":
            return f"'{self.value}'"
        return f"{self.kind} {self.value!r}"


def tokenize(text):
    toks = []
    line, col, i, n = 1, 1, 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if text[i:i + 2] in _PUNCT_TWO:
            toks.append(Token("PUNCT", text[i:i + 2], line, col))
            i += 2
            col += 2
            continue
        if ch in _PUNCT_ONE:
            toks.append(Token("PUNCT", ch, line, col))
            i += 1
            col += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(Token("INT", int(text[i:j]), line, col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(Token("NAME", text[i:j], line, col))
            col += j - i
            i = j
            continue
        raise LexError(f"unexpected character {ch!r}", line, col)
    toks.append(Token("EOF", None, line, col))
    return toks


# -- syntax tree ----------------------------------------------------------------
#
# PolyNode.terms is a sorted tuple of (exps, (num, den)) with exps an exponent
# tuple over the ring's variables and num/den an exact rational in lowest
# terms.  Positions never participate in equality, so two parses of the same
# script compare equal regardless of layout.


@dataclass(frozen=True)
class PolyNode:
    terms: tuple
    pos: tuple = field(default=(0, 0), compare=False)

    def is_zero(self):
        return not self.terms


@dataclass(frozen=True)
class RingDecl:
    name: str
    field_name: str
    var_names: tuple
    relations: tuple         # PolyNodes
    trunc: object            # int or None
    pos: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class IdealDecl:
    name: str
    power: int               # k for m^k; 0 when explicit generators are given
    gens: tuple              # PolyNodes; () together with power k means m^k
    pos: tuple = field(default=(0, 0), compare=False)

    @property
    def is_maximal_power(self):
        return self.power > 0


@dataclass(frozen=True)
class SeqDecl:
    name: str
    polys: tuple
    pos: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class FiltDecl:
    name: str
    kind: str                # adic | order | table
    arg: object              # ideal name (adic) or order name (order) or None
    rows: tuple              # tuple of PolyNode tuples for table
    cap: object              # int or None
    pos: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class CmdStmt:
    name: str
    operands: tuple          # declared names, or "m"
    kwargs: tuple            # ((key, value), ...) in source order
    pos: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class SessionScript:
    statements: tuple

    @property
    def ring(self):
        for s in self.statements:
            if isinstance(s, RingDecl):
                return s
        return None

    def commands(self):
        return tuple(s for s in self.statements if isinstance(s, CmdStmt))


# -- symbolic polynomial helpers (exact, no ring context needed) -----------------


def _padd(a, b):
    out = dict(a)
    for e, c in b.items():
        s = out.get(e, Fraction(0)) + c
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out


def _pmul(a, b):
    out = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            s = out.get(e, Fraction(0)) + c1 * c2
            if s:
                out[e] = s
            else:
                out.pop(e, None)
    return out


def _ppow(a, k, pos):
    if k > _MAX_POW:
        raise SemanticError(
            f"exponent {k} exceeds the script limit {_MAX_POW}",
            pos[0], pos[1])
    if k == 0:
        n = len(next(iter(a))) if a else 0
        return {(0,) * n: Fraction(1)}
    if len(a) == 1:
        (e, c), = a.items()
        return {tuple(x * k for x in e): c ** k}
    if k > _MAX_MULTI_POW:
        raise SemanticError(
            f"exponent {k} exceeds the script limit {_MAX_MULTI_POW} for "
            "multi-term bases", pos[0], pos[1])
    out = a
    for _ in range(k - 1):
        out = _pmul(out, a)
    return out


class _Parser:
    def __init__(self, text):
        self.toks = tokenize(text)
        self.i = 0
        self.ring = None
        self.names = {}      # name -> kind

    # -- token plumbing --------------------------------------------------------

    def peek(self, ahead=0):
        j = min(self.i + ahead, len(self.toks) - 1)
        return self.toks[j]

    def advance(self):
        t = self.toks[self.i]
        if t.kind != "EOF":
            self.i += 1
        return t

    def fail(self, expected):
        t = self.peek()
        raise ParseError(f"unexpected {t.label()}", t.line, t.col, expected)

    def expect_punct(self, value):
        t = self.peek()
        if t.kind == "PUNCT" and t.value == value:
            return self.advance()
        self.fail((f"'{value}'",))

    def expect_name(self, what="a name"):
        t = self.peek()
        if t.kind == "NAME":
            return self.advance()
        self.fail((what,))

    def expect_int(self, what="an integer"):
        t = self.peek()
        if t.kind == "INT":
            return self.advance()
        self.fail((what,))

    def at_punct(self, value):
        t = self.peek()
        return t.kind == "PUNCT" and t.value == value

    # -- declarations ------------------------------------------------------------

    def declare(self, tok, kind):
        name = tok.value
        if name in _RESERVED:
            raise SemanticError(f"{name!r} is reserved", tok.line, tok.col)
        if name in self.names:
            raise SemanticError(f"{name!r} is already declared as a "
                                f"{self.names[name]}", tok.line, tok.col)
        self.names[name] = kind
        return name

    def resolve(self, tok, kinds):
        name = tok.value
        if name == "m" and "ideal" in kinds:
            return name
        got = self.names.get(name)
        if got is None:
            raise SemanticError(f"{name!r} is not declared", tok.line, tok.col)
        if got not in kinds:
            raise SemanticError(
                f"{name!r} is a {got}, not a {' or '.join(kinds)}",
                tok.line, tok.col)
        return name

    def need_ring(self, tok):
        if self.ring is None:
            raise SemanticError("no ring declared yet", tok.line, tok.col)

    # -- polynomial expressions ----------------------------------------------------

    def parse_poly(self, depth=0):
        """poly := [sign] term (sign term)*"""
        start = self.peek()
        self.need_ring(start)
        acc = {}
        sign = 1
        if self.at_punct("+") or self.at_punct("-"):
            sign = -1 if self.advance().value == "-" else 1
        while True:
            t = self.parse_term(depth)
            if sign < 0:
                t = {e: -c for e, c in t.items()}
            acc = _padd(acc, t)
            if self.at_punct("+"):
                self.advance()
                sign = 1
            elif self.at_punct("-"):
                self.advance()
                sign = -1
            else:
                break
        terms = tuple(sorted(
            (e, (c.numerator, c.denominator)) for e, c in acc.items()))
        return PolyNode(terms, (start.line, start.col))

    def parse_term(self, depth):
        acc = self.parse_factor(depth)
        while self.at_punct("*"):
            self.advance()
            acc = _pmul(acc, self.parse_factor(depth))
        return acc

    def parse_factor(self, depth):
        base = self.parse_atom(depth)
        if self.at_punct("^"):
            self.advance()
            t = self.expect_int("an exponent")
            return _ppow(base, t.value, (t.line, t.col))
        return base

    def parse_atom(self, depth):
        t = self.peek()
        nv = len(self.ring.var_names)
        if t.kind == "INT":
            self.advance()
            num = t.value
            den = 1
            # a '/' directly after an integer is a rational coefficient
            if self.at_punct("/"):
                self.advance()
                dt = self.expect_int("a denominator")
                if dt.value == 0:
                    raise SemanticError("zero denominator", dt.line, dt.col)
                den = dt.value
            return {(0,) * nv: Fraction(num, den)}
        if t.kind == "NAME":
            self.advance()
            if t.value == "m":
                raise SemanticError(
                    "m denotes the maximal ideal; it cannot appear inside a "
                    "polynomial", t.line, t.col)
            try:
                idx = self.ring.var_names.index(t.value)
            except ValueError:
                raise SemanticError(f"unknown variable {t.value!r}",
                                    t.line, t.col) from None
            e = [0] * nv
            e[idx] = 1
            return {tuple(e): Fraction(1)}
        if self.at_punct("("):
            if depth >= _MAX_DEPTH:
                raise SemanticError("expression nested too deeply",
                                    t.line, t.col)
            self.advance()
            inner = self.parse_poly(depth + 1)
            self.expect_punct(")")
            return {e: Fraction(*r) for e, r in inner.terms}
        self.fail(("a coefficient", "a variable", "'('"))

    def parse_polylist(self, allow_empty=False):
        """'(' poly (',' poly)* ')' -- already past the '('."""
        if allow_empty and self.at_punct(")"):
            return ()
        polys = [self.parse_poly()]
        while self.at_punct(","):
            self.advance()
            polys.append(self.parse_poly())
        return tuple(polys)

    # -- statements ---------------------------------------------------------------

    def parse_ring(self, kw):
        if self.ring is not None:
            raise SemanticError("a script declares exactly one ring",
                                kw.line, kw.col)
        nt = self.expect_name("a ring name")
        self.expect_punct("=")
        ft = self.expect_name("a field (Q or F<p>)")
        fname = ft.value
        if fname != "Q":
            if not (fname[0] == "F" and fname[1:].isdigit() and len(fname) > 1):
                raise SemanticError(
                    f"unknown field {fname!r}; use Q or F<p>", ft.line, ft.col)
        self.expect_punct("[")
        vars_ = []
        while True:
            vt = self.expect_name("a variable name")
            if vt.value in _RESERVED:
                raise SemanticError(f"{vt.value!r} cannot be a variable name",
                                    vt.line, vt.col)
            if vt.value in vars_:
                raise SemanticError(f"duplicate variable {vt.value!r}",
                                    vt.line, vt.col)
            vars_.append(vt.value)
            if self.at_punct(","):
                self.advance()
                continue
            break
        self.expect_punct("]")
        # commit the ring early so relation polynomials can resolve variables
        self.ring = RingDecl(nt.value, fname, tuple(vars_), (), None,
                             (kw.line, kw.col))
        relations = ()
        if self.at_punct("/"):
            self.advance()
            self.expect_punct("(")
            relations = self.parse_polylist()
            self.expect_punct(")")
        trunc = None
        t = self.peek()
        if t.kind == "NAME" and t.value == "trunc":
            self.advance()
            tv = self.expect_int("a truncation cap")
            if not 2 <= tv.value <= _MAX_TRUNC:
                raise SemanticError(
                    f"trunc must be between 2 and {_MAX_TRUNC}",
                    tv.line, tv.col)
            trunc = tv.value
        self.expect_punct(";")
        self.ring = RingDecl(nt.value, fname, tuple(vars_), relations, trunc,
                             (kw.line, kw.col))
        self.declare(nt, "ring")
        return self.ring

    def parse_ideal(self, kw):
        nt = self.expect_name("an ideal name")
        self.expect_punct("=")
        self.need_ring(nt)
        t = self.peek()
        if t.kind == "NAME" and t.value == "m":
            self.advance()
            power = 1
            if self.at_punct("^"):
                self.advance()
                pt = self.expect_int("a power")
                if pt.value < 1:
                    raise SemanticError("power must be >= 1", pt.line, pt.col)
                power = pt.value
            decl = IdealDecl(nt.value, power, (), (kw.line, kw.col))
        elif self.at_punct("("):
            self.advance()
            gens = self.parse_polylist(allow_empty=True)
            self.expect_punct(")")
            decl = IdealDecl(nt.value, 0, gens, (kw.line, kw.col))
        else:
            self.fail(("'m'", "'('"))
        self.expect_punct(";")
        self.declare(nt, "ideal")
        return decl

    def parse_seq(self, kw):
        nt = self.expect_name("a sequence name")
        self.expect_punct("=")
        self.need_ring(nt)
        self.expect_punct("(")
        polys = self.parse_polylist()
        self.expect_punct(")")
        self.expect_punct(";")
        for p in polys:
            if p.is_zero():
                raise SemanticError("sequence entries must be nonzero",
                                    p.pos[0], p.pos[1])
        self.declare(nt, "seq")
        return SeqDecl(nt.value, polys, (kw.line, kw.col))

    def parse_filtration(self, kw):
        nt = self.expect_name("a filtration name")
        self.expect_punct("=")
        self.need_ring(nt)
        kt = self.expect_name("adic, order or table")
        kind = kt.value
        arg, rows = None, ()
        if kind == "adic":
            self.expect_punct("(")
            it = self.expect_name("an ideal name")
            arg = self.resolve(it, ("ideal",))
            self.expect_punct(")")
        elif kind == "order":
            self.expect_punct("(")
            ot = self.expect_name("a monomial order name")
            arg = ot.value
            self.expect_punct(")")
        elif kind == "table":
            self.expect_punct("(")
            rws = []
            while True:
                self.expect_punct("(")
                rws.append(self.parse_polylist())
                self.expect_punct(")")
                if self.at_punct(","):
                    self.advance()
                    continue
                break
            self.expect_punct(")")
            rows = tuple(rws)
        else:
            raise SemanticError(
                f"unknown filtration kind {kind!r}; use adic, order or table",
                kt.line, kt.col)
        cap = None
        t = self.peek()
        if t.kind == "NAME" and t.value == "cap":
            self.advance()
            cv = self.expect_int("a cap")
            if not 2 <= cv.value <= _MAX_TRUNC:
                raise SemanticError(f"cap must be between 2 and {_MAX_TRUNC}",
                                    cv.line, cv.col)
            cap = cv.value
        self.expect_punct(";")
        self.declare(nt, "filtration")
        return FiltDecl(nt.value, kind, arg, rows, cap, (kw.line, kw.col))

    def parse_cmd(self, kw):
        nt = self.expect_name("a command name")
        operands = []
        # plain names are operands until the first key=value pair
        while True:
            t = self.peek()
            if t.kind != "NAME":
                break
            nxt = self.peek(1)
            if nxt.kind == "PUNCT" and nxt.value == "=":
                break
            self.advance()
            operands.append(self.resolve(t, ("ideal", "seq", "filtration")))
        kwargs = []
        seen = set()
        while True:
            t = self.peek()
            if t.kind != "NAME":
                break
            self.advance()
            if t.value in seen:
                raise SemanticError(f"duplicate option {t.value!r}",
                                    t.line, t.col)
            seen.add(t.value)
            self.expect_punct("=")
            kwargs.append((t.value, self.parse_value()))
        self.expect_punct(";")
        return CmdStmt(nt.value, tuple(operands), tuple(kwargs),
                       (kw.line, kw.col))

    def parse_value(self):
        t = self.peek()
        if t.kind == "INT":
            self.advance()
            if self.at_punct(".."):
                self.advance()
                hi = self.expect_int("a range end")
                if hi.value < t.value:
                    raise SemanticError("empty range", hi.line, hi.col)
                return ("range", t.value, hi.value)
            return t.value
        if t.kind == "NAME":
            self.advance()
            return t.value
        if self.at_punct("("):
            self.need_ring(t)
            self.advance()
            polys = self.parse_polylist(allow_empty=True)
            self.expect_punct(")")
            return ("polys", polys)
        self.fail(("an integer", "a name", "'('"))

    # -- entry point ----------------------------------------------------------------

    def parse_script(self):
        stmts = []
        while True:
            t = self.peek()
            if t.kind == "EOF":
                break
            if t.kind != "NAME":
                self.fail(("'ring'", "'ideal'", "'seq'", "'filtration'",
                           "'cmd'"))
            self.advance()
            if t.value == "ring":
                stmts.append(self.parse_ring(t))
            elif t.value == "ideal":
                stmts.append(self.parse_ideal(t))
            elif t.value == "seq":
                stmts.append(self.parse_seq(t))
            elif t.value == "filtration":
                stmts.append(self.parse_filtration(t))
            elif t.value == "cmd":
                stmts.append(self.parse_cmd(t))
            else:
                raise ParseError(f"unexpected {t.label()}", t.line, t.col,
                                 ("'ring'", "'ideal'", "'seq'",
                                  "'filtration'", "'cmd'"))
        return SessionScript(tuple(stmts))


def parse_script(text):
    """Parse a session script; raises LexError/ParseError/SemanticError."""
    return _Parser(text).parse_script()


# -- canonical printing -----------------------------------------------------------


def _render_poly(node, var_names):
    if not node.terms:
        return "0"
    ordered = sorted(node.terms, key=lambda t: t[0], reverse=True)
    pieces = []
    for exps, (num, den) in ordered:
        c = Fraction(num, den)
        mono = "*".join(
            v if e == 1 else f"{v}^{e}"
            for v, e in zip(var_names, exps) if e)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not pieces:
            pieces.append(("-" if c < 0 else "") + body)
        else:
            pieces.append(("- " if c < 0 else "+ ") + body)
    return " ".join(pieces)


def _render_value(value, var_names):
    if isinstance(value, int):
        return str(value)
    if isinstance(value, str):
        return value
    if value[0] == "range":
        return f"{value[1]}..{value[2]}"
    if value[0] == "polys":
        return "(" + ", ".join(_render_poly(p, var_names) for p in value[1]) + ")"
    raise TypeError(f"unknown value {value!r}")


def pretty_print(script):
    """Canonical textual form; parse(pretty_print(s)) == s."""
    ring = script.ring
    vn = ring.var_names if ring else ()
    lines = []
    for s in script.statements:
        if isinstance(s, RingDecl):
            line = f"ring {s.name} = {s.field_name}[{', '.join(s.var_names)}]"
            if s.relations:
                line += " / (" + ", ".join(
                    _render_poly(p, vn) for p in s.relations) + ")"
            if s.trunc is not None:
                line += f" trunc {s.trunc}"
        elif isinstance(s, IdealDecl):
            if s.is_maximal_power:
                rhs = "m" if s.power == 1 else f"m^{s.power}"
            else:
                rhs = "(" + ", ".join(_render_poly(p, vn) for p in s.gens) + ")"
            line = f"ideal {s.name} = {rhs}"
        elif isinstance(s, SeqDecl):
            line = (f"seq {s.name} = ("
                    + ", ".join(_render_poly(p, vn) for p in s.polys) + ")")
        elif isinstance(s, FiltDecl):
            if s.kind == "table":
                body = "table(" + ", ".join(
                    "(" + ", ".join(_render_poly(p, vn) for p in row) + ")"
                    for row in s.rows) + ")"
            else:
                body = f"{s.kind}({s.arg})"
            line = f"filtration {s.name} = {body}"
            if s.cap is not None:
                line += f" cap {s.cap}"
        elif isinstance(s, CmdStmt):
            parts = ["cmd", s.name] + list(s.operands)
            parts += [f"{k}={_render_value(v, vn)}" for k, v in s.kwargs]
            line = " ".join(parts)
        else:
            raise TypeError(f"unknown statement {s!r}")
        lines.append(line + ";")
    return "\n".join(lines) + ("\n" if lines else "")
