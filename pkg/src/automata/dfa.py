"""
Automaty skończone: deterministyczne (Dfa) i niedeterministyczne (Nfa).

Konwencje:
- Dfa przechowuje częściową funkcję przejścia (-1 = brak przejścia).
  Uzupełnienie o stan-ujście (sink) robimy tylko tam, gdzie jest potrzebne
  (dopełnienie, iloczyn, monoid).
- Wynik determinize_minimize jest przycięty (trim), minimalny i ponumerowany
  kanonicznie BFS-em od stanu startowego w porządku symboli, więc izomorficzne
  automaty są identyczne co do bitu.
- Język pusty to jeden stan nieakceptujący bez przejść.
"""

from collections import deque
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property

import numpy as np

from src.automata.alphabet import Alphabet
from src.core.errors import AlphabetError

EPSILON = ""
MISSING = -1


@dataclass(frozen=True)
class Dfa:
    """Deterministyczny automat skończony z częściową funkcją przejścia."""

    alphabet: Alphabet
    delta: tuple[tuple[int, ...], ...]
    start: int = 0
    finals: frozenset[int] = frozenset()

    def __post_init__(self):
        n = len(self.delta)
        if n == 0:
            raise ValueError("Dfa musi miec co najmniej jeden stan")
        if not 0 <= self.start < n:
            raise ValueError(f"Stan startowy {self.start} poza zakresem 0..{n - 1}")
        for row in self.delta:
            if len(row) != len(self.alphabet):
                raise ValueError("Wiersz delta nie pasuje do rozmiaru alfabetu")
            for dst in row:
                if not MISSING <= dst < n:
                    raise ValueError(f"Przejscie do nieistniejacego stanu {dst}")
        for q in self.finals:
            if not 0 <= q < n:
                raise ValueError(f"Stan akceptujacy {q} poza zakresem")

    @property
    def num_states(self) -> int:
        return len(self.delta)

    @cached_property
    def is_complete(self) -> bool:
        return all(dst != MISSING for row in self.delta for dst in row)

    def step(self, state: int, sym_index: int) -> int:
        if state == MISSING:
            return MISSING
        return self.delta[state][sym_index]

    def run(self, word: str) -> int:
        """Stan osiągnięty po przeczytaniu słowa (MISSING, jeśli bieg utknął)."""
        state = self.start
        for i in self.alphabet.encode(word):
            state = self.delta[state][i]
            if state == MISSING:
                return MISSING
        return state

    def transitions(self) -> Iterator[tuple[int, str, int]]:
        for q, row in enumerate(self.delta):
            for i, dst in enumerate(row):
                if dst != MISSING:
                    yield q, self.alphabet.symbols[i], dst

    def to_nfa(self) -> "Nfa":
        builder = NfaBuilder(self.alphabet, self.num_states)
        for src, sym, dst in self.transitions():
            builder.add_arc(src, sym, dst)
        return builder.build(starts=[self.start], finals=self.finals)

    def to_array(self) -> np.ndarray:
        return np.array(self.delta, dtype=np.int64).reshape(self.num_states, len(self.alphabet))


@dataclass(frozen=True, eq=False)
class Nfa:
    """Niedeterministyczny automat z ε-przejściami (symbol "") i wieloma startami."""

    alphabet: Alphabet
    num_states: int
    starts: frozenset[int]
    finals: frozenset[int]
    arcs: Mapping[tuple[int, str], frozenset[int]] = field(default_factory=dict)

    def targets(self, state: int, sym: str) -> frozenset[int]:
        return self.arcs.get((state, sym), frozenset())

    def epsilon_closure(self, states: Iterable[int]) -> frozenset[int]:
        seen = set(states)
        stack = list(seen)
        while stack:
            q = stack.pop()
            for r in self.targets(q, EPSILON):
                if r not in seen:
                    seen.add(r)
                    stack.append(r)
        return frozenset(seen)

    def accepts(self, word: str) -> bool:
        """Symulacja zbiorów stanów (bez determinizacji)."""
        self.alphabet.encode(word)
        current = self.epsilon_closure(self.starts)
        for sym in word:
            moved = set()
            for q in current:
                moved.update(self.targets(q, sym))
            current = self.epsilon_closure(moved)
            if not current:
                return False
        return bool(current & self.finals)


class NfaBuilder:
    """Mutowalny konstruktor Nfa."""

    def __init__(self, alphabet: Alphabet, num_states: int = 0):
        self.alphabet = alphabet
        self.num_states = num_states
        self._arcs: dict[tuple[int, str], set[int]] = {}

    def add_state(self) -> int:
        self.num_states += 1
        return self.num_states - 1

    def add_arc(self, src: int, sym: str, dst: int) -> None:
        if sym != EPSILON and sym not in self.alphabet:
            raise AlphabetError(f"Symbol {sym!r} spoza alfabetu {self.alphabet}")
        self._arcs.setdefault((src, sym), set()).add(dst)

    def build(self, starts: Iterable[int], finals: Iterable[int]) -> Nfa:
        return Nfa(
            alphabet=self.alphabet,
            num_states=self.num_states,
            starts=frozenset(starts),
            finals=frozenset(finals),
            arcs={key: frozenset(dsts) for key, dsts in self._arcs.items()},
        )


# === Konstruktory podstawowych języków ===

def empty_language(alphabet: Alphabet) -> Dfa:
    """Kanoniczny automat języka pustego."""
    return Dfa(alphabet, ((MISSING,) * len(alphabet),), 0, frozenset())


def universal_language(alphabet: Alphabet) -> Dfa:
    """Σ*: jeden stan akceptujący z pętlami."""
    return Dfa(alphabet, ((0,) * len(alphabet),), 0, frozenset({0}))


def sigma_length(alphabet: Alphabet, length: int) -> Dfa:
    """Σ^length: wszystkie słowa dokładnie tej długości."""
    k = len(alphabet)
    rows = [tuple([q + 1] * k) for q in range(length)]
    rows.append((MISSING,) * k)
    return Dfa(alphabet, tuple(rows), 0, frozenset({length}))


def from_words(words: Iterable[str], alphabet: Alphabet) -> Dfa:
    """Minimalny automat skończonego zbioru słów (przez drzewo prefiksowe)."""
    builder = NfaBuilder(alphabet, 1)
    children: dict[tuple[int, str], int] = {}
    finals = set()
    for word in words:
        alphabet.encode(word)
        node = 0
        for sym in word:
            nxt = children.get((node, sym))
            if nxt is None:
                nxt = builder.add_state()
                children[(node, sym)] = nxt
                builder.add_arc(node, sym, nxt)
            node = nxt
        finals.add(node)
    return determinize_minimize(builder.build(starts=[0], finals=finals))


# === Determinizacja i minimalizacja ===

def _subset_construction(m: Nfa) -> tuple[list[list[int]], set[int]]:
    start = m.epsilon_closure(m.starts)
    index = {start: 0}
    order = [start]
    rows: list[list[int]] = []
    finals: set[int] = set()
    queue = deque([start])
    while queue:
        subset = queue.popleft()
        q = index[subset]
        if subset & m.finals:
            finals.add(q)
        row = []
        for sym in m.alphabet.symbols:
            moved = set()
            for s in subset:
                moved.update(m.targets(s, sym))
            if not moved:
                row.append(MISSING)
                continue
            target = m.epsilon_closure(moved)
            if target not in index:
                index[target] = len(order)
                order.append(target)
                queue.append(target)
            row.append(index[target])
        rows.append(row)
    return rows, finals


def _useful_states(rows: list[list[int]], start: int, finals: set[int]) -> set[int]:
    """Stany osiągalne ze startu i współosiągalne do stanu akceptującego."""
    accessible = {start}
    queue = deque([start])
    while queue:
        q = queue.popleft()
        for dst in rows[q]:
            if dst != MISSING and dst not in accessible:
                accessible.add(dst)
                queue.append(dst)
    reverse: dict[int, set[int]] = {}
    for q in accessible:
        for dst in rows[q]:
            if dst != MISSING:
                reverse.setdefault(dst, set()).add(q)
    coaccessible = {q for q in finals if q in accessible}
    queue = deque(coaccessible)
    while queue:
        q = queue.popleft()
        for src in reverse.get(q, ()):
            if src not in coaccessible:
                coaccessible.add(src)
                queue.append(src)
    return accessible & coaccessible


def _canonical(rows: list[list[int]], start: int, finals: set[int], alphabet: Alphabet) -> Dfa:
    """Numeracja BFS od startu z porządkiem symboli jako rozstrzygnięciem remisów."""
    order = {start: 0}
    queue = deque([start])
    while queue:
        q = queue.popleft()
        for dst in rows[q]:
            if dst != MISSING and dst not in order:
                order[dst] = len(order)
                queue.append(dst)
    delta = [None] * len(order)
    for old, new in order.items():
        delta[new] = tuple(order[d] if d != MISSING else MISSING for d in rows[old])
    return Dfa(
        alphabet,
        tuple(delta),
        0,
        frozenset(order[q] for q in finals if q in order),
    )


def _minimize_rows(rows: list[list[int]], start: int, finals: set[int], alphabet: Alphabet) -> Dfa:
    useful = _useful_states(rows, start, finals)
    if start not in useful:
        return empty_language(alphabet)

    # Przycinamy i dokładamy ujście pod indeksem n (partycja Moore'a)
    kept = sorted(useful)
    renum = {q: i for i, q in enumerate(kept)}
    n = len(kept)
    k = len(alphabet)
    table = np.full((n + 1, k), n, dtype=np.int64)
    for q in kept:
        for a, dst in enumerate(rows[q]):
            if dst in renum:
                table[renum[q], a] = renum[dst]
    is_final = np.zeros(n + 1, dtype=np.int64)
    for q in finals:
        if q in renum:
            is_final[renum[q]] = 1

    _, block = np.unique(is_final, return_inverse=True)
    num_blocks = block.max() + 1
    while True:
        signature = np.column_stack([block, block[table]]) if k else block[:, None]
        _, new_block = np.unique(signature, axis=0, return_inverse=True)
        new_block = new_block.reshape(-1)
        new_count = new_block.max() + 1
        block = new_block
        if new_count == num_blocks:
            break
        num_blocks = new_count

    sink_block = int(block[n])
    quotient: dict[int, list[int]] = {}
    for q in range(n):
        b = int(block[q])
        if b in quotient:
            continue
        quotient[b] = [
            MISSING if int(block[table[q, a]]) == sink_block else int(block[table[q, a]])
            for a in range(k)
        ]
    size = max(quotient) + 1 if quotient else 0
    quotient_rows = [quotient.get(b, [MISSING] * k) for b in range(size)]
    quotient_finals = {int(block[q]) for q in range(n) if is_final[q]}
    return _canonical(quotient_rows, int(block[renum[start]]), quotient_finals, alphabet)


def determinize_minimize(m: Nfa | Dfa) -> Dfa:
    """
    Zwraca jedyny (z dokładnością do izomorfizmu) minimalny, przycięty Dfa.

    Args:
        m: Automat wejściowy (Nfa lub Dfa)

    Returns:
        Dfa: Minimalny automat w numeracji kanonicznej
    """
    if isinstance(m, Dfa):
        rows = [list(row) for row in m.delta]
        return _minimize_rows(rows, m.start, set(m.finals), m.alphabet)
    rows, finals = _subset_construction(m)
    return _minimize_rows(rows, 0, finals, m.alphabet)


def trim(d: Dfa) -> Dfa:
    """Usuwa stany nieosiągalne i niewspółosiągalne (bez minimalizacji)."""
    rows = [list(row) for row in d.delta]
    useful = _useful_states(rows, d.start, set(d.finals))
    if d.start not in useful:
        return empty_language(d.alphabet)
    pruned = [[dst if dst in useful else MISSING for dst in row] for row in rows]
    return _canonical(pruned, d.start, set(d.finals) & useful, d.alphabet)


def complete(d: Dfa) -> Dfa:
    """
    Uzupełnia funkcję przejścia jawnym ujściem.

    Dla minimalnego przyciętego automatu wynik jest minimalnym automatem
    zupełnym; język pusty daje jeden stan z pętlami.
    """
    if d.is_complete:
        return d
    k = len(d.alphabet)
    if not d.finals:
        return Dfa(d.alphabet, ((0,) * k,), 0, frozenset())
    sink = d.num_states
    rows = [tuple(sink if dst == MISSING else dst for dst in row) for row in d.delta]
    rows.append((sink,) * k)
    return Dfa(d.alphabet, tuple(rows), d.start, d.finals)


def is_empty(d: Dfa) -> bool:
    rows = [list(row) for row in d.delta]
    return d.start not in _useful_states(rows, d.start, set(d.finals))


# === Operacje boolowskie i konkatenacja ===

class BooleanOp(str, Enum):
    """Operacje boolowskie na językach."""
    UNION = "union"
    INTERSECTION = "intersection"
    DIFFERENCE = "difference"
    COMPLEMENT = "complement"


def _product(a: Dfa, b: Dfa, accept) -> Dfa:
    a.alphabet.require_same(b.alphabet)
    ca, cb = complete(a), complete(b)
    k = len(a.alphabet)
    index = {(ca.start, cb.start): 0}
    pairs = [(ca.start, cb.start)]
    rows: list[list[int]] = []
    finals: set[int] = set()
    i = 0
    while i < len(pairs):
        p, q = pairs[i]
        if accept(p in ca.finals, q in cb.finals):
            finals.add(i)
        row = []
        for sym in range(k):
            target = (ca.delta[p][sym], cb.delta[q][sym])
            if target not in index:
                index[target] = len(pairs)
                pairs.append(target)
            row.append(index[target])
        rows.append(row)
        i += 1
    return _minimize_rows(rows, 0, finals, a.alphabet)


def complement(a: Dfa) -> Dfa:
    """Dopełnienie względem Σ*."""
    c = complete(a)
    finals = set(range(c.num_states)) - set(c.finals)
    return _minimize_rows([list(r) for r in c.delta], c.start, finals, c.alphabet)


def union(a: Dfa, b: Dfa) -> Dfa:
    return _product(a, b, lambda x, y: x or y)


def intersection(a: Dfa, b: Dfa) -> Dfa:
    return _product(a, b, lambda x, y: x and y)


def difference(a: Dfa, b: Dfa) -> Dfa:
    return _product(a, b, lambda x, y: x and not y)


def symmetric_difference(a: Dfa, b: Dfa) -> Dfa:
    return _product(a, b, lambda x, y: x != y)


def boolean_combine(op: BooleanOp | str, a: Dfa, b: Dfa | None = None) -> Dfa:
    """
    Minimalny Dfa kombinacji boolowskiej.

    Args:
        op: union / intersection / difference / complement
        a: Pierwszy operand
        b: Drugi operand (pomijany dla complement)
    """
    op = BooleanOp(op)
    if op is BooleanOp.COMPLEMENT:
        if b is not None:
            raise ValueError("complement przyjmuje jeden operand")
        return complement(a)
    if b is None:
        raise ValueError(f"Operacja {op.value} wymaga dwoch operandow")
    return {
        BooleanOp.UNION: union,
        BooleanOp.INTERSECTION: intersection,
        BooleanOp.DIFFERENCE: difference,
    }[op](a, b)


def concat(a: Dfa, b: Dfa) -> Dfa:
    """Minimalny Dfa języka {xy | x ∈ L(a), y ∈ L(b)}."""
    a.alphabet.require_same(b.alphabet)
    shift = a.num_states
    builder = NfaBuilder(a.alphabet, a.num_states + b.num_states)
    for src, sym, dst in a.transitions():
        builder.add_arc(src, sym, dst)
    for src, sym, dst in b.transitions():
        builder.add_arc(src + shift, sym, dst + shift)
    for q in a.finals:
        builder.add_arc(q, EPSILON, b.start + shift)
    nfa = builder.build(starts=[a.start], finals=[q + shift for q in b.finals])
    return determinize_minimize(nfa)


def star(a: Dfa) -> Dfa:
    """Domknięcie Kleene'ego."""
    builder = NfaBuilder(a.alphabet, a.num_states)
    hub = builder.add_state()
    for src, sym, dst in a.transitions():
        builder.add_arc(src, sym, dst)
    builder.add_arc(hub, EPSILON, a.start)
    for q in a.finals:
        builder.add_arc(q, EPSILON, hub)
    return determinize_minimize(builder.build(starts=[hub], finals=[hub]))


# === Zapytania ===

def accepts(a: Dfa, word: str) -> bool:
    """Czy słowo należy do języka automatu."""
    state = a.run(word)
    return state != MISSING and state in a.finals


def layer_counts(a: Dfa, max_length: int) -> list[list[int]]:
    """
    Tablica table[r][q] = liczba słów długości r akceptowanych ze stanu q.

    Liczby są dokładne (int Pythona), bo przy 64 symbolach i długości 29
    przekraczają zakres 64 bitów.
    """
    current = [1 if q in a.finals else 0 for q in range(a.num_states)]
    table = [current]
    for _ in range(max_length):
        current = [
            sum(current[dst] for dst in row if dst != MISSING)
            for row in a.delta
        ]
        table.append(current)
    return table


def count_length(a: Dfa, length: int) -> int:
    """Dokładna liczba słów długości `length` w L(a)."""
    if length < 0:
        raise ValueError("Dlugosc musi byc nieujemna")
    return layer_counts(a, length)[length][a.start]


def distinguishing_word(a: Dfa, b: Dfa) -> str | None:
    """
    Najkrótsze (leksykograficznie pierwsze) słowo należące do dokładnie
    jednego z języków; None, gdy języki są równe.
    """
    a.alphabet.require_same(b.alphabet)
    ca, cb = complete(a), complete(b)
    start = (ca.start, cb.start)
    parent: dict[tuple[int, int], tuple[tuple[int, int], str] | None] = {start: None}
    queue = deque([start])
    while queue:
        pair = queue.popleft()
        p, q = pair
        if (p in ca.finals) != (q in cb.finals):
            letters = []
            node = pair
            while parent[node] is not None:
                node, sym = parent[node]
                letters.append(sym)
            return "".join(reversed(letters))
        for i, sym in enumerate(a.alphabet.symbols):
            nxt = (ca.delta[p][i], cb.delta[q][i])
            if nxt not in parent:
                parent[nxt] = (pair, sym)
                queue.append(nxt)
    return None


def language_equal(a: Dfa, b: Dfa) -> bool:
    """Równość języków przez pustość różnicy symetrycznej."""
    return distinguishing_word(a, b) is None


def is_subset(a: Dfa, b: Dfa) -> bool:
    """L(a) ⊆ L(b)."""
    return is_empty(difference(a, b))


def enumerate_words(a: Dfa, max_length: int) -> Iterator[str]:
    """Słowa języka do podanej długości, w porządku długość-leksykograficznym."""
    layer = [("", a.start)]
    for length in range(max_length + 1):
        for word, q in layer:
            if q in a.finals:
                yield word
        if length == max_length:
            break
        layer = [
            (word + sym, a.delta[q][i])
            for word, q in layer
            for i, sym in enumerate(a.alphabet.symbols)
            if a.delta[q][i] != MISSING
        ]
