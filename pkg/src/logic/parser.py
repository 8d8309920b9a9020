"""
Parser tekstowej składni wyrażeń.

Składnia (od najniższego priorytetu):
    e1 -> e2, e1 <-> e2     implikacja / równoważność (prawostronnie łączne)
    e1 | e2                 alternatywa
    e1 & e2                 koniunkcja
    !e                      negacja
    ( e ), literał, wywołanie, any, none

Literał: [T:abc]? (^|⋊)? "aa" ((<.|<) "ab")* ($|⋉)?
Wywołania: count(t, literał), mod("a", p, r), word("ab"), concat(e, ...), star(e).
Komentarz zaczyna się od # i trwa do końca linii.
"""

import re
from dataclasses import dataclass

from src.core.errors import ExpressionError
from src.logic.expr import (
    And,
    AnyWord,
    Concat,
    Count,
    Expr,
    Iff,
    Implies,
    Lit,
    Literal,
    Mod,
    NoWord,
    Not,
    Or,
    Relation,
    Star,
    Word,
)

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+|\#[^\n]*)
    |(?P<tier>\[T:(?P<tier_symbols>[^\]]*)\])
    |(?P<string>"(?P<string_body>[^"]*)")
    |(?P<op><->|->|<\.|<|!|&|\||\(|\)|,|\^|\$|⋊|⋉)
    |(?P<number>\d+)
    |(?P<name>[A-Za-z_]+)
    """,
    re.VERBOSE,
)

_START_ANCHORS = ("^", "⋊")
_END_ANCHORS = ("$", "⋉")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    position: int


def tokenize(source: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(source):
        m = _TOKEN_RE.match(source, pos)
        if not m:
            raise ExpressionError(f"Nieoczekiwany znak {source[pos]!r}", pos)
        kind = m.lastgroup
        if kind == "tier":
            tokens.append(Token("tier", m.group("tier_symbols"), pos))
        elif kind == "string":
            tokens.append(Token("string", m.group("string_body"), pos))
        elif kind != "ws":
            tokens.append(Token(kind, m.group(kind), pos))
        pos = m.end()
    tokens.append(Token("end", "", len(source)))
    return tokens


class _Parser:
    def __init__(self, source: str):
        self.tokens = tokenize(source)
        self.i = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        token = self.tokens[self.i]
        self.i += 1
        return token

    def accept(self, text: str) -> bool:
        if self.current.kind in ("op", "name") and self.current.text == text:
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> None:
        if not self.accept(text):
            raise ExpressionError(
                f"Oczekiwano {text!r}, znaleziono {self.current.text or 'koniec'!r}",
                self.current.position,
            )

    def expect_kind(self, kind: str) -> Token:
        if self.current.kind != kind:
            raise ExpressionError(
                f"Oczekiwano tokenu {kind}, znaleziono {self.current.text or 'koniec'!r}",
                self.current.position,
            )
        return self.advance()

    # --- gramatyka ---

    def parse(self) -> Expr:
        e = self.implication()
        if self.current.kind != "end":
            raise ExpressionError(f"Nadmiarowy token {self.current.text!r}", self.current.position)
        return e

    def implication(self) -> Expr:
        left = self.disjunction()
        if self.accept("->"):
            return Implies(left, self.implication())
        if self.accept("<->"):
            return Iff(left, self.implication())
        return left

    def disjunction(self) -> Expr:
        parts = [self.conjunction()]
        while self.accept("|"):
            parts.append(self.conjunction())
        return parts[0] if len(parts) == 1 else Or(tuple(parts))

    def conjunction(self) -> Expr:
        parts = [self.unary()]
        while self.accept("&"):
            parts.append(self.unary())
        return parts[0] if len(parts) == 1 else And(tuple(parts))

    def unary(self) -> Expr:
        if self.accept("!"):
            return Not(self.unary())
        return self.primary()

    def primary(self) -> Expr:
        token = self.current
        if self.accept("("):
            e = self.implication()
            self.expect(")")
            return e
        if token.kind in ("string", "tier") or token.text in _START_ANCHORS:
            return Lit(self.literal())
        if token.kind == "name":
            return self.call()
        raise ExpressionError(f"Nieoczekiwany token {token.text or 'koniec'!r}", token.position)

    def literal(self) -> Literal:
        start = self.current.position
        tier = None
        if self.current.kind == "tier":
            tier_text = self.advance().text
            if not tier_text:
                raise ExpressionError("Pusta warstwa", start)
            tier = frozenset(tier_text)
        anchor_start = False
        if self.current.kind == "op" and self.current.text in _START_ANCHORS:
            self.advance()
            anchor_start = True
        symbols: list[str] = []
        relations: list[Relation] = []
        joint = Relation.SUCC
        while True:
            chunk = self.expect_kind("string")
            if not chunk.text:
                raise ExpressionError("Pusty napis w literale", chunk.position)
            for j, sym in enumerate(chunk.text):
                if symbols:
                    relations.append(Relation.SUCC if j else joint)
                symbols.append(sym)
            if self.accept("<."):
                joint = Relation.SUCC
            elif self.accept("<"):
                joint = Relation.PREC
            else:
                break
        anchor_end = False
        if self.current.kind == "op" and self.current.text in _END_ANCHORS:
            self.advance()
            anchor_end = True
        try:
            return Literal(tuple(symbols), tuple(relations), tier, anchor_start, anchor_end)
        except ExpressionError as e:
            raise ExpressionError(str(e), start) from None

    def integer(self) -> int:
        return int(self.expect_kind("number").text)

    def call(self) -> Expr:
        name = self.advance()
        match name.text:
            case "any":
                return AnyWord()
            case "none":
                return NoWord()
            case "count":
                self.expect("(")
                threshold = self.integer()
                self.expect(",")
                lit = self.literal()
                self.expect(")")
                if threshold < 1:
                    raise ExpressionError("Prog zliczania musi byc >= 1", name.position)
                return Count(lit, threshold)
            case "mod":
                self.expect("(")
                sym = self.expect_kind("string")
                if len(sym.text) != 1:
                    raise ExpressionError("mod wymaga pojedynczego symbolu", sym.position)
                self.expect(",")
                modulus = self.integer()
                self.expect(",")
                residue = self.integer()
                self.expect(")")
                return Mod(sym.text, modulus, residue)
            case "word":
                self.expect("(")
                w = self.expect_kind("string").text
                self.expect(")")
                return Word(w)
            case "concat":
                self.expect("(")
                parts = [self.implication()]
                while self.accept(","):
                    parts.append(self.implication())
                self.expect(")")
                return Concat(tuple(parts))
            case "star":
                self.expect("(")
                e = self.implication()
                self.expect(")")
                return Star(e)
        raise ExpressionError(f"Nieznana funkcja {name.text!r}", name.position)


def parse_expr(source: str) -> Expr:
    """
    Parsuje wyrażenie z tekstu.

    Raises:
        ExpressionError: Błąd składni (z pozycją znaku)
    """
    return _Parser(source).parse()
