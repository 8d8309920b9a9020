"""
Transduktory skończone (Fst) z ε po obu stronach.

Relacje używane w projekcie:
- edit1_transducer: pary słów w odległości edycyjnej dokładnie 1,
- insdel_transducer: wstawienie / usunięcie jednego wystąpienia symbolu,
- tier_projection: wymazanie symboli spoza warstwy (tier).

Kompozycja korzysta z filtra ε o trzech trybach: przejście ε po lewej
blokuje ε po prawej aż do dopasowania prawdziwego symbolu i odwrotnie,
więc każde wyrównanie ε występuje w wyniku co najwyżej raz.
"""

from collections import deque
from collections.abc import Iterable
from dataclasses import dataclass
from enum import Enum

from src.automata.alphabet import Alphabet
from src.automata.dfa import (
    EPSILON,
    Dfa,
    Nfa,
    NfaBuilder,
    determinize_minimize,
    enumerate_words,
    from_words,
    is_empty,
)
from src.core.errors import AlphabetError

Arc = tuple[str, str, int]


@dataclass(frozen=True, eq=False)
class Fst:
    """Transduktor: arcs[q] to krotka łuków (wejście, wyjście, cel)."""

    input_alphabet: Alphabet
    output_alphabet: Alphabet
    start: int
    finals: frozenset[int]
    arcs: tuple[tuple[Arc, ...], ...]

    @property
    def num_states(self) -> int:
        return len(self.arcs)

    def arc_count(self) -> int:
        return sum(len(out) for out in self.arcs)


class Direction(str, Enum):
    """Kierunek aplikacji transduktora do języka."""
    IMAGE = "image"
    PREIMAGE = "preimage"


class _FstBuilder:
    def __init__(self, input_alphabet: Alphabet, output_alphabet: Alphabet, num_states: int = 0):
        self.input_alphabet = input_alphabet
        self.output_alphabet = output_alphabet
        self.out: list[list[Arc]] = [[] for _ in range(num_states)]

    def add_state(self) -> int:
        self.out.append([])
        return len(self.out) - 1

    def add_arc(self, src: int, isym: str, osym: str, dst: int) -> None:
        self.out[src].append((isym, osym, dst))

    def build(self, start: int, finals: Iterable[int]) -> Fst:
        return Fst(
            self.input_alphabet,
            self.output_alphabet,
            start,
            frozenset(finals),
            tuple(tuple(arcs) for arcs in self.out),
        )


def identity(d: Dfa) -> Fst:
    """Podniesienie akceptora do transduktora tożsamościowego na L(d)."""
    builder = _FstBuilder(d.alphabet, d.alphabet, d.num_states)
    for src, sym, dst in d.transitions():
        builder.add_arc(src, sym, sym, dst)
    return builder.build(d.start, d.finals)


def edit1_transducer(alphabet: Alphabet) -> Fst:
    """
    Relacja {(x, y) | Levenshtein(x, y) = 1}.

    Stany: 0 (przed edycją), 1 (po edycji), N_a (właśnie usunięto lub
    wstawiono a; następny symbol wejścia musi być różny od a). Usunięcie i
    wstawienie trafiają na koniec serii jednakowych symboli, więc każda para
    ma dokładnie jedną ścieżkę akceptującą.
    """
    if not len(alphabet):
        raise AlphabetError("Transduktor edycyjny wymaga niepustego alfabetu")
    symbols = alphabet.symbols
    builder = _FstBuilder(alphabet, alphabet, 2 + len(symbols))
    pending = {sym: 2 + i for i, sym in enumerate(symbols)}
    for a in symbols:
        builder.add_arc(0, a, a, 0)
        for b in symbols:
            if a != b:
                builder.add_arc(0, a, b, 1)
        builder.add_arc(0, a, EPSILON, pending[a])
        builder.add_arc(0, EPSILON, a, pending[a])
        builder.add_arc(1, a, a, 1)
    for a, state in pending.items():
        for c in symbols:
            if c != a:
                builder.add_arc(state, c, c, 1)
    return builder.build(0, [1, *pending.values()])


def insdel_transducer(kind: str, sym: str, alphabet: Alphabet) -> Fst:
    """
    Wstawienie (insert) lub usunięcie (delete) dokładnie jednego wystąpienia sym.

    Args:
        kind: "insert" albo "delete"
        sym: Symbol z alfabetu
        alphabet: Alfabet relacji
    """
    if sym not in alphabet:
        raise AlphabetError(f"Symbol {sym!r} spoza alfabetu {alphabet}")
    if kind not in ("insert", "delete"):
        raise ValueError(f"Nieznany rodzaj transduktora: {kind}")
    builder = _FstBuilder(alphabet, alphabet, 2)
    for a in alphabet.symbols:
        builder.add_arc(0, a, a, 0)
        builder.add_arc(1, a, a, 1)
    if kind == "insert":
        builder.add_arc(0, EPSILON, sym, 1)
    else:
        builder.add_arc(0, sym, EPSILON, 1)
    return builder.build(0, [1])


def tier_projection(alphabet: Alphabet, tier: Iterable[str]) -> Fst:
    """Symbole warstwy przechodzą na siebie, pozostałe na ε."""
    tier_alphabet = alphabet.subset(tier)
    builder = _FstBuilder(alphabet, tier_alphabet, 1)
    for a in alphabet.symbols:
        builder.add_arc(0, a, a if a in tier_alphabet else EPSILON, 0)
    return builder.build(0, [0])


def trim_fst(t: Fst) -> Fst:
    """Usuwa stany nieosiągalne i niewspółosiągalne; numeracja BFS."""
    order = {t.start: 0}
    queue = deque([t.start])
    while queue:
        q = queue.popleft()
        for _, _, dst in t.arcs[q]:
            if dst not in order:
                order[dst] = len(order)
                queue.append(dst)
    reverse: dict[int, set[int]] = {}
    for q in order:
        for _, _, dst in t.arcs[q]:
            reverse.setdefault(dst, set()).add(q)
    alive = {q for q in t.finals if q in order}
    queue = deque(alive)
    while queue:
        q = queue.popleft()
        for src in reverse.get(q, ()):
            if src not in alive:
                alive.add(src)
                queue.append(src)
    if t.start not in alive:
        return Fst(t.input_alphabet, t.output_alphabet, 0, frozenset(), ((),))
    kept = [q for q in sorted(order, key=order.get) if q in alive]
    renum = {q: i for i, q in enumerate(kept)}
    arcs = tuple(
        tuple((i, o, renum[dst]) for i, o, dst in t.arcs[q] if dst in renum)
        for q in kept
    )
    return Fst(
        t.input_alphabet,
        t.output_alphabet,
        0,
        frozenset(renum[q] for q in t.finals if q in renum),
        arcs,
    )


def _compose_pair(t1: Fst, t2: Fst) -> Fst:
    if t1.output_alphabet.symbols != t2.input_alphabet.symbols:
        raise AlphabetError(
            f"Niezgodny lancuch alfabetow: {t1.output_alphabet} -> {t2.input_alphabet}"
        )
    by_input: list[dict[str, list[tuple[str, int]]]] = []
    for out in t2.arcs:
        index: dict[str, list[tuple[str, int]]] = {}
        for i, o, dst in out:
            index.setdefault(i, []).append((o, dst))
        by_input.append(index)

    builder = _FstBuilder(t1.input_alphabet, t2.output_alphabet)
    states: dict[tuple[int, int, int], int] = {}
    finals = []
    queue: deque[tuple[int, int, int]] = deque()

    def target(key: tuple[int, int, int]) -> int:
        if key not in states:
            states[key] = builder.add_state()
            queue.append(key)
        return states[key]

    start = target((t1.start, t2.start, 0))
    while queue:
        key = queue.popleft()
        p, q, mode = key
        src = states[key]
        if p in t1.finals and q in t2.finals:
            finals.append(src)
        for i, o, p2 in t1.arcs[p]:
            if o != EPSILON:
                for o2, q2 in by_input[q].get(o, ()):
                    builder.add_arc(src, i, o2, target((p2, q2, 0)))
                continue
            if mode == 0:
                for o2, q2 in by_input[q].get(EPSILON, ()):
                    builder.add_arc(src, i, o2, target((p2, q2, 0)))
            if mode != 2:
                builder.add_arc(src, i, EPSILON, target((p2, q, 1)))
        if mode != 1:
            for o2, q2 in by_input[q].get(EPSILON, ()):
                builder.add_arc(src, EPSILON, o2, target((p, q2, 2)))
    return trim_fst(builder.build(start, finals))


def _lift(m: Fst | Dfa) -> Fst:
    return identity(m) if isinstance(m, Dfa) else m


def compose(a: Fst | Dfa, b: Fst | Dfa, c: Fst | Dfa | None = None) -> Fst:
    """
    Kompozycja relacji a ∘ b (∘ c); akceptory są podnoszone do tożsamości.

    Returns:
        Fst: Przycięty transduktor kompozycji
    """
    result = _compose_pair(_lift(a), _lift(b))
    if c is not None:
        result = _compose_pair(result, _lift(c))
    return result


def project(t: Fst, side: Direction | str) -> Nfa:
    """Rzut transduktora na taśmę wyjściową (image) albo wejściową (preimage)."""
    side = Direction(side)
    alphabet = t.output_alphabet if side is Direction.IMAGE else t.input_alphabet
    builder = NfaBuilder(alphabet, t.num_states)
    for src, out in enumerate(t.arcs):
        for i, o, dst in out:
            builder.add_arc(src, o if side is Direction.IMAGE else i, dst)
    return builder.build(starts=[t.start], finals=t.finals)


def apply(t: Fst, lang: Dfa, direction: Direction | str) -> Dfa:
    """
    Minimalny Dfa obrazu t(L) albo przeciwobrazu t⁻¹(L).

    Args:
        t: Transduktor
        lang: Język, do którego stosujemy relację
        direction: image / preimage
    """
    direction = Direction(direction)
    if direction is Direction.IMAGE:
        if lang.alphabet.symbols != t.input_alphabet.symbols:
            raise AlphabetError(f"Alfabet jezyka {lang.alphabet} != wejscie {t.input_alphabet}")
        composed = compose(lang, t)
    else:
        if lang.alphabet.symbols != t.output_alphabet.symbols:
            raise AlphabetError(f"Alfabet jezyka {lang.alphabet} != wyjscie {t.output_alphabet}")
        composed = compose(t, lang)
    return determinize_minimize(project(composed, direction))


def transduce(t: Fst, word: str) -> set[str]:
    """Wszystkie wyjścia dla słowa wejściowego (relacja musi być skończona na nim)."""
    image = apply(t, from_words([word], t.input_alphabet), Direction.IMAGE)
    return set(enumerate_words(image, image.num_states))


def accepts_pair(t: Fst, x: str, y: str) -> bool:
    """Czy para (x, y) należy do relacji t."""
    composed = compose(
        from_words([x], t.input_alphabet), t, from_words([y], t.output_alphabet)
    )
    return bool(composed.finals)


def domain(t: Fst) -> Dfa:
    """Dziedzina relacji (rzut na wejście)."""
    return determinize_minimize(project(t, Direction.PREIMAGE))


def is_empty_relation(t: Fst) -> bool:
    return is_empty(domain(t))
