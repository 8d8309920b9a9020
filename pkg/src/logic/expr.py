"""
Język konstrukcji: literały czynnikowe i formuły boolowskie nad nimi.

Literał to łańcuch symboli a1 r1 a2 r2 ... an, gdzie każde r to następstwo
bezpośrednie (SUCC, ◁) albo poprzedzanie (PREC, <). Literał z warstwą T
czyta następstwo na warstwie: między kolejnymi symbolami mogą stać tylko
symbole spoza T. Język literału to zbiór słów ZAWIERAJĄCYCH taki czynnik.
"""

from collections.abc import Iterable
from dataclasses import dataclass
from enum import Enum
from functools import reduce

from src.automata.alphabet import Alphabet
from src.automata.dfa import (
    Dfa,
    NfaBuilder,
    complement,
    concat,
    determinize_minimize,
    empty_language,
    from_words,
    intersection,
    star,
    symmetric_difference,
    union,
    universal_language,
)
from src.core.errors import AlphabetError, ExpressionError


class Relation(str, Enum):
    """Relacja między kolejnymi symbolami literału."""
    SUCC = "<."
    PREC = "<"


class LiteralKind(str, Enum):
    SUBSTRING = "substring"
    SUBSEQUENCE = "subsequence"
    TIER_SUBSTRING = "tier_substring"
    MIXED = "mixed"


@dataclass(frozen=True)
class Literal:
    """Literał czynnikowy z opcjonalną warstwą i kotwicami ⋊ / ⋉."""

    symbols: tuple[str, ...]
    relations: tuple[Relation, ...] = ()
    tier: frozenset[str] | None = None
    anchor_start: bool = False
    anchor_end: bool = False

    def __post_init__(self):
        if not self.symbols:
            raise ExpressionError("Literal nie moze byc pusty")
        if len(self.relations) != len(self.symbols) - 1:
            raise ExpressionError("Liczba relacji musi byc o jeden mniejsza niz liczba symboli")
        if self.tier is not None:
            outside = set(self.symbols) - self.tier
            if outside:
                raise ExpressionError(
                    f"Symbole {''.join(sorted(outside))} spoza warstwy {''.join(sorted(self.tier))}"
                )

    @classmethod
    def substring(cls, word: str, **anchors) -> "Literal":
        return cls(tuple(word), (Relation.SUCC,) * (len(word) - 1), **anchors)

    @classmethod
    def subsequence(cls, word: str, **anchors) -> "Literal":
        return cls(tuple(word), (Relation.PREC,) * (len(word) - 1), **anchors)

    @classmethod
    def tier_substring(cls, word: str, tier: Iterable[str], **anchors) -> "Literal":
        return cls(tuple(word), (Relation.SUCC,) * (len(word) - 1), frozenset(tier), **anchors)

    @classmethod
    def mixed(cls, blocks: Iterable[str], tier: Iterable[str] | None = None, **anchors) -> "Literal":
        """Bloki połączone relacją PREC, wewnątrz bloku SUCC: ("aa", "ab") = a◁a<a◁b."""
        symbols: list[str] = []
        relations: list[Relation] = []
        for block in blocks:
            if symbols:
                relations.append(Relation.PREC)
            for j, sym in enumerate(block):
                if j:
                    relations.append(Relation.SUCC)
                symbols.append(sym)
        return cls(
            tuple(symbols),
            tuple(relations),
            frozenset(tier) if tier is not None else None,
            **anchors,
        )

    @property
    def kind(self) -> LiteralKind:
        rels = set(self.relations)
        if Relation.PREC not in rels:
            return LiteralKind.SUBSTRING if self.tier is None else LiteralKind.TIER_SUBSTRING
        if rels == {Relation.PREC} and self.tier is None:
            return LiteralKind.SUBSEQUENCE
        return LiteralKind.MIXED

    @property
    def word(self) -> str:
        return "".join(self.symbols)

    def __str__(self) -> str:
        text = f'"{self.symbols[0]}'
        for rel, sym in zip(self.relations, self.symbols[1:]):
            text += sym if rel is Relation.SUCC else f'" < "{sym}'
        text += '"'
        if self.anchor_start:
            text = "^" + text
        if self.anchor_end:
            text += "$"
        if self.tier is not None:
            text = f"[T:{''.join(sorted(self.tier))}]" + text
        return text


# === Drzewo wyrażeń ===

def _merge_tiers(children: Iterable["Expr"]) -> frozenset[str] | None:
    tiers = {c.tier for c in children if c.tier is not None}
    if len(tiers) > 1:
        rendered = ", ".join("".join(sorted(t)) for t in tiers)
        raise ExpressionError(f"Wyrazenie miesza rozne warstwy: {rendered}")
    return next(iter(tiers), None)


@dataclass(frozen=True)
class Expr:
    """Bazowy węzeł wyrażenia."""

    @property
    def children(self) -> tuple["Expr", ...]:
        return ()

    @property
    def tier(self) -> frozenset[str] | None:
        return _merge_tiers(self.children)

    @property
    def is_cnl(self) -> bool:
        """Koniunkcja literałów zanegowanych (forma ⋀ ¬w)."""
        return False

    @property
    def is_dpl(self) -> bool:
        """Alternatywa literałów pozytywnych (forma ⋁ w)."""
        return False

    def literals(self) -> list[Literal]:
        found = []
        for child in self.children:
            found.extend(child.literals())
        return found


@dataclass(frozen=True)
class Lit(Expr):
    literal: Literal

    @property
    def tier(self):
        return self.literal.tier

    @property
    def is_dpl(self) -> bool:
        return True

    def literals(self) -> list[Literal]:
        return [self.literal]


@dataclass(frozen=True)
class Not(Expr):
    operand: Expr

    @property
    def children(self):
        return (self.operand,)

    @property
    def is_cnl(self) -> bool:
        return isinstance(self.operand, Lit)


@dataclass(frozen=True)
class And(Expr):
    operands: tuple[Expr, ...]

    def __post_init__(self):
        _merge_tiers(self.operands)

    @property
    def children(self):
        return self.operands

    @property
    def is_cnl(self) -> bool:
        return all(isinstance(o, Not) and o.is_cnl for o in self.operands)


@dataclass(frozen=True)
class Or(Expr):
    operands: tuple[Expr, ...]

    def __post_init__(self):
        _merge_tiers(self.operands)

    @property
    def children(self):
        return self.operands

    @property
    def is_dpl(self) -> bool:
        return all(isinstance(o, Lit) for o in self.operands)


@dataclass(frozen=True)
class Implies(Expr):
    antecedent: Expr
    consequent: Expr

    def __post_init__(self):
        _merge_tiers(self.children)

    @property
    def children(self):
        return (self.antecedent, self.consequent)


@dataclass(frozen=True)
class Iff(Expr):
    left: Expr
    right: Expr

    def __post_init__(self):
        _merge_tiers(self.children)

    @property
    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True)
class Count(Expr):
    """Co najmniej `threshold` wystąpień literału (wystąpienia mogą się nakładać)."""
    literal: Literal
    threshold: int

    @property
    def tier(self):
        return self.literal.tier

    def literals(self) -> list[Literal]:
        return [self.literal]


@dataclass(frozen=True)
class Mod(Expr):
    """Liczba wystąpień symbolu ≡ residue (mod modulus)."""
    symbol: str
    modulus: int
    residue: int


@dataclass(frozen=True)
class Word(Expr):
    """Dokładnie jedno słowo."""
    word: str


@dataclass(frozen=True)
class Concat(Expr):
    operands: tuple[Expr, ...]

    def __post_init__(self):
        _merge_tiers(self.operands)

    @property
    def children(self):
        return self.operands


@dataclass(frozen=True)
class Star(Expr):
    operand: Expr

    @property
    def children(self):
        return (self.operand,)


@dataclass(frozen=True)
class AnyWord(Expr):
    """Σ*."""


@dataclass(frozen=True)
class NoWord(Expr):
    """∅."""


# === Kompilacja ===

def _check_symbols(symbols: Iterable[str], alphabet: Alphabet) -> None:
    for sym in symbols:
        if sym not in alphabet:
            raise AlphabetError(f"Symbol {sym!r} spoza alfabetu {alphabet}")


def compile_literal(lit: Literal, alphabet: Alphabet) -> Dfa:
    """
    Minimalny Dfa języka zawierania literału.

    substring → Σ*wΣ*; subsequence → Σ*a1Σ*a2...Σ*; tier → luki T̄*;
    mixed → luki Σ* przy PREC, bez luki (lub T̄* na warstwie) przy SUCC.
    """
    _check_symbols(lit.symbols, alphabet)
    if lit.tier is not None:
        _check_symbols(lit.tier, alphabet)
    all_symbols = alphabet.symbols
    off_tier = [s for s in all_symbols if lit.tier is not None and s not in lit.tier]

    def gap(relation: Relation | None, anchored: bool) -> list[str]:
        if relation is Relation.PREC or (relation is None and not anchored):
            return list(all_symbols)
        return off_tier

    n = len(lit.symbols)
    builder = NfaBuilder(alphabet, n + 1)
    for i in range(n + 1):
        if i == 0:
            loop = gap(None, lit.anchor_start)
        elif i == n:
            loop = gap(None, lit.anchor_end)
        else:
            loop = gap(lit.relations[i - 1], False)
        for sym in loop:
            builder.add_arc(i, sym, i)
        if i < n:
            builder.add_arc(i, lit.symbols[i], i + 1)
    return determinize_minimize(builder.build(starts=[0], finals=[n]))


def _kmp_table(word: tuple[str, ...], symbols: tuple[str, ...]) -> list[dict[str, int]]:
    """Automat dopasowań KMP: stan j = długość dopasowanego prefiksu (0..n)."""
    n = len(word)
    failure = [0] * n
    k = 0
    for j in range(1, n):
        while k and word[j] != word[k]:
            k = failure[k - 1]
        if word[j] == word[k]:
            k += 1
        failure[j] = k
    table: list[dict[str, int]] = []
    for j in range(n + 1):
        row = {}
        for sym in symbols:
            if j < n and word[j] == sym:
                row[sym] = j + 1
            elif j == 0:
                row[sym] = 0
            else:
                row[sym] = table[failure[j - 1]][sym]
        table.append(row)
    return table


def compile_counting(lit: Literal, threshold: int, alphabet: Alphabet) -> Dfa:
    """
    Minimalny Dfa słów z co najmniej `threshold` wystąpieniami literału.

    Wystąpienia liczymy po pozycjach startowych, więc "aaa" zawiera "aa" dwa razy.
    Obsługiwane są literały substring i tier_substring bez kotwic.
    """
    if threshold < 1:
        raise ExpressionError(f"Prog musi byc >= 1, otrzymano {threshold}")
    if lit.kind not in (LiteralKind.SUBSTRING, LiteralKind.TIER_SUBSTRING):
        raise ExpressionError(f"Zliczanie obslugiwane tylko dla czynnikow ciaglych: {lit}")
    if lit.anchor_start or lit.anchor_end:
        raise ExpressionError(f"Zliczanie literalu z kotwica nie jest obslugiwane: {lit}")
    _check_symbols(lit.symbols, alphabet)
    tier_symbols = alphabet.symbols if lit.tier is None else tuple(
        s for s in alphabet.symbols if s in lit.tier
    )
    kmp = _kmp_table(lit.symbols, tier_symbols)
    n = len(lit.symbols)

    index: dict[tuple[int, int], int] = {}
    states = [(j, c) for j in range(n + 1) for c in range(threshold + 1)]
    for q, key in enumerate(states):
        index[key] = q
    rows = []
    for j, c in states:
        row = []
        for sym in alphabet.symbols:
            if sym not in kmp[j]:
                row.append(index[(j, c)])
                continue
            nj = kmp[j][sym]
            nc = min(c + 1, threshold) if nj == n else c
            row.append(index[(nj, nc)])
        rows.append(tuple(row))
    finals = frozenset(index[(j, threshold)] for j in range(n + 1))
    return determinize_minimize(Dfa(alphabet, tuple(rows), index[(0, 0)], finals))


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def compile_modcount(sym: str, modulus: int, residue: int, alphabet: Alphabet) -> Dfa:
    """Minimalny Dfa słów, w których liczba `sym` ≡ residue (mod modulus); modulus pierwszy."""
    if not is_prime(modulus):
        raise ExpressionError(f"Modul {modulus} nie jest liczba pierwsza")
    if not 0 <= residue < modulus:
        raise ExpressionError(f"Reszta {residue} poza zakresem 0..{modulus - 1}")
    _check_symbols([sym], alphabet)
    target = alphabet.index[sym]
    rows = tuple(
        tuple((q + 1) % modulus if i == target else q for i in range(len(alphabet)))
        for q in range(modulus)
    )
    return determinize_minimize(Dfa(alphabet, rows, 0, frozenset({residue})))


def compile_expr(e: Expr, alphabet: Alphabet) -> Dfa:
    """
    Minimalny Dfa semantyki boolowskiej wyrażenia.

    Args:
        e: Wyrażenie
        alphabet: Alfabet Σ (dopełnienia liczone względem Σ*)
    """
    match e:
        case Lit(literal=lit):
            return compile_literal(lit, alphabet)
        case Not(operand=op):
            return complement(compile_expr(op, alphabet))
        case And(operands=ops):
            return reduce(intersection, (compile_expr(o, alphabet) for o in ops))
        case Or(operands=ops):
            return reduce(union, (compile_expr(o, alphabet) for o in ops))
        case Implies(antecedent=a, consequent=b):
            return union(complement(compile_expr(a, alphabet)), compile_expr(b, alphabet))
        case Iff(left=a, right=b):
            return complement(symmetric_difference(compile_expr(a, alphabet), compile_expr(b, alphabet)))
        case Count(literal=lit, threshold=t):
            return compile_counting(lit, t, alphabet)
        case Mod(symbol=sym, modulus=p, residue=r):
            return compile_modcount(sym, p, r, alphabet)
        case Word(word=w):
            return from_words([w], alphabet)
        case Concat(operands=ops):
            return reduce(concat, (compile_expr(o, alphabet) for o in ops))
        case Star(operand=op):
            return star(compile_expr(op, alphabet))
        case AnyWord():
            return universal_language(alphabet)
        case NoWord():
            return empty_language(alphabet)
    raise ExpressionError(f"Nieznany wezel wyrazenia: {type(e).__name__}")


def negation_normal_form(e: Expr, negate: bool = False) -> Expr:
    """Spycha negacje do literałów (prawa de Morgana); implikacje rozwija."""
    match e:
        case Not(operand=op):
            return negation_normal_form(op, not negate)
        case And(operands=ops):
            parts = tuple(negation_normal_form(o, negate) for o in ops)
            return Or(parts) if negate else And(parts)
        case Or(operands=ops):
            parts = tuple(negation_normal_form(o, negate) for o in ops)
            return And(parts) if negate else Or(parts)
        case Implies(antecedent=a, consequent=b):
            return negation_normal_form(Or((Not(a), b)), negate)
        case Iff(left=a, right=b):
            return negation_normal_form(And((Implies(a, b), Implies(b, a))), negate)
    return Not(e) if negate else e


def expression_tier(e: Expr) -> frozenset[str] | None:
    """Wspólna warstwa wszystkich literałów (None, gdy brak literałów z warstwą)."""
    return e.tier


__all__ = [
    "Relation",
    "LiteralKind",
    "Literal",
    "Expr",
    "Lit",
    "Not",
    "And",
    "Or",
    "Implies",
    "Iff",
    "Count",
    "Mod",
    "Word",
    "Concat",
    "Star",
    "AnyWord",
    "NoWord",
    "compile_literal",
    "compile_counting",
    "compile_modcount",
    "compile_expr",
    "negation_normal_form",
    "expression_tier",
    "is_prime",
]
