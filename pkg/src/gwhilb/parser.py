"""Recursive-descent parser and renderer for variety expressions.

Grammar (keywords are case-insensitive, whitespace is ignored)::

    expr     := term (('+' | '-') term)*
    term     := factor ('*' factor)*
    factor   := leaf | '(' expr ')' | func
    leaf     := 'point' | 'gm' | 'L'
    func     := 'affine(' INT ')' | 'proj(' INT ')' | 'quadext(' SQCLASS ')'
              | 'punctured_affine(' INT ',' INT ')' | 'grassmannian(' INT ',' INT ')'
              | 'vb(' INT ',' expr ')' | 'pb(' INT ',' expr ')'
              | 'blowup(' expr ',' expr ',' INT ')' | 'sym(' INT ',' expr ')'
              | 'hilb_local_a2(' INT ')'
    SQCLASS  := '-'? INT

``+`` is disjoint union, ``*`` product and ``-`` formal difference, all left
associative.
"""

from __future__ import annotations

import re
from typing import List, NamedTuple, Sequence

from .errors import GwError
from .k0var import (
    Affine,
    BlowUp,
    Difference,
    DisjointUnion,
    Gm,
    Grassmannian,
    HilbLocalA2,
    Lefschetz,
    Point,
    Product,
    Proj,
    ProjBundle,
    PuncturedAffine,
    QuadExt,
    Sym,
    VarietyExpr,
    VectorBundle,
)


class ParseError(GwError):
    def __init__(self, text: str, position: int, expected: Sequence[str], found: str):
        self.text = text
        self.position = position
        self.expected = tuple(expected)
        self.found = found
        exp = " or ".join(self.expected)
        super().__init__(f"parse error at position {position}: expected {exp}, found {found}")


class Token(NamedTuple):
    kind: str  # "name", "int", "sym", "end"
    value: str
    pos: int


_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<int>\d+)|(?P<sym>[()+\-*,]))")

LEAVES = {"point": Point, "gm": Gm, "l": Lefschetz}
FUNCS = (
    "affine",
    "proj",
    "quadext",
    "punctured_affine",
    "grassmannian",
    "vb",
    "pb",
    "blowup",
    "sym",
    "hilb_local_a2",
)
_FACTOR_START = ["'('", *(repr(k) for k in ("point", "gm", "L")), *(f"'{f}('" for f in FUNCS)]


def tokenize(text: str) -> List[Token]:
    tokens = []
    pos = 0
    while True:
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            rest = text[pos:]
            if rest.strip() == "":
                tokens.append(Token("end", "", len(text)))
                return tokens
            start = pos + len(rest) - len(rest.lstrip())
            raise ParseError(text, start, ["a token"], repr(text[start]))
        kind = m.lastgroup
        value = m.group(kind)
        start = m.start(kind)
        if kind == "name":
            value = value.lower()
        tokens.append(Token(kind, value, start))
        pos = m.end()


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def fail(self, expected):
        t = self.tok
        found = "end of input" if t.kind == "end" else repr(t.value)
        raise ParseError(self.text, t.pos, expected, found)

    def accept(self, sym: str) -> bool:
        if self.tok.kind == "sym" and self.tok.value == sym:
            self.i += 1
            return True
        return False

    def expect(self, sym: str):
        if not self.accept(sym):
            self.fail([repr(sym)])

    def integer(self) -> int:
        if self.tok.kind != "int":
            self.fail(["an integer"])
        v = int(self.tok.value)
        self.i += 1
        return v

    def parse(self) -> VarietyExpr:
        e = self.expr()
        if self.tok.kind != "end":
            self.fail(["'+'", "'-'", "'*'", "end of input"])
        return e

    def expr(self) -> VarietyExpr:
        e = self.term()
        while True:
            if self.accept("+"):
                e = DisjointUnion(e, self.term())
            elif self.accept("-"):
                e = Difference(e, self.term())
            else:
                return e

    def term(self) -> VarietyExpr:
        e = self.factor()
        while self.accept("*"):
            e = Product(e, self.factor())
        return e

    def factor(self) -> VarietyExpr:
        t = self.tok
        if self.accept("("):
            e = self.expr()
            self.expect(")")
            return e
        if t.kind != "name":
            self.fail(_FACTOR_START)
        if t.value in LEAVES:
            self.i += 1
            return LEAVES[t.value]()
        if t.value not in FUNCS:
            self.fail(_FACTOR_START)
        self.i += 1
        self.expect("(")
        try:
            node = getattr(self, "_" + t.value)()
        except ParseError:
            raise
        except GwError as exc:
            raise ParseError(self.text, t.pos, [f"valid arguments to {t.value}"], str(exc)) from None
        self.expect(")")
        return node

    # one method per function keyword; the opening '(' is already consumed

    def _affine(self):
        return Affine(self.integer())

    def _proj(self):
        return Proj(self.integer())

    def _quadext(self):
        sign = -1 if self.accept("-") else 1
        return QuadExt(sign * self.integer())

    def _punctured_affine(self):
        n = self.integer()
        self.expect(",")
        return PuncturedAffine(n, self.integer())

    def _grassmannian(self):
        r = self.integer()
        self.expect(",")
        return Grassmannian(r, self.integer())

    def _vb(self):
        r = self.integer()
        self.expect(",")
        return VectorBundle(r, self.expr())

    def _pb(self):
        r = self.integer()
        self.expect(",")
        return ProjBundle(r, self.expr())

    def _blowup(self):
        base = self.expr()
        self.expect(",")
        center = self.expr()
        self.expect(",")
        return BlowUp(base, center, self.integer())

    def _sym(self):
        n = self.integer()
        self.expect(",")
        return Sym(n, self.expr())

    def _hilb_local_a2(self):
        return HilbLocalA2(self.integer())


def parse_expr(text: str) -> VarietyExpr:
    """Parse ``text`` into a :class:`VarietyExpr`; raises :class:`ParseError`."""
    return _Parser(text).parse()


_PREC = {DisjointUnion: 1, Difference: 1, Product: 2}
_OPS = {DisjointUnion: "+", Difference: "-", Product: "*"}


def render(e: VarietyExpr) -> str:
    """Text form of ``e`` that parses back to an identical tree."""
    op = _OPS.get(type(e))
    if op is not None:
        p = _PREC[type(e)]
        left = _wrap(e.left, _PREC.get(type(e.left), 3) < p)
        right = _wrap(e.right, _PREC.get(type(e.right), 3) <= p)
        return f"{left} {op} {right}"
    if isinstance(e, Point):
        return "point"
    if isinstance(e, Gm):
        return "gm"
    if isinstance(e, Lefschetz):
        return "L"
    if isinstance(e, Affine):
        return f"affine({e.n})"
    if isinstance(e, Proj):
        return f"proj({e.n})"
    if isinstance(e, QuadExt):
        return f"quadext({e.a})"
    if isinstance(e, PuncturedAffine):
        return f"punctured_affine({e.n}, {e.r})"
    if isinstance(e, Grassmannian):
        return f"grassmannian({e.r}, {e.n})"
    if isinstance(e, HilbLocalA2):
        return f"hilb_local_a2({e.m})"
    if isinstance(e, VectorBundle):
        return f"vb({e.rank}, {render(e.base)})"
    if isinstance(e, ProjBundle):
        return f"pb({e.rank}, {render(e.base)})"
    if isinstance(e, BlowUp):
        return f"blowup({render(e.base)}, {render(e.center)}, {e.codim})"
    if isinstance(e, Sym):
        return f"sym({e.n}, {render(e.base)})"
    raise TypeError(f"not a variety expression: {e!r}")


def _wrap(e: VarietyExpr, parens: bool) -> str:
    s = render(e)
    return f"({s})" if parens else s
