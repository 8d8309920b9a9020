"""
Losowanie ścieżek akceptujących z jednostajnym wyborem krawędzi wychodzącej.

Graf ścieżek jest leniwy: stan ma łuki (etykieta, następnik), flagę
akceptacji i liczbę ścieżek akceptujących od niego w głąb. Wycinanie
(carving) zapisuje wylosowane ścieżki w drzewie prefiksowym; łuk jest żywy,
gdy liczba ścieżek za nim minus liczba wyciętych ścieżek za nim jest dodatnia.
To dokładnie stopień wyjściowy w przyciętym iloczynie automatu z
dopełnieniem drzewa, więc rozkład po wycięciu się zmienia (to nie jest
losowanie z odrzucaniem). W stanie akceptującym z łukami wyjściowymi
"zatrzymanie się" liczy się jako jedna z opcji.
"""

from collections.abc import Hashable, Iterable, Sequence
from dataclasses import dataclass, field
from typing import Protocol

import numpy as np

from src.automata.dfa import EPSILON, MISSING, Dfa, layer_counts
from src.automata.fst import Fst, edit1_transducer
from src.core.errors import LanguageExhaustedError

Label = Hashable
Path = tuple[Label, ...]


class PathGraph(Protocol):
    start: Hashable

    def arcs(self, state) -> Sequence[tuple[Label, Hashable]]: ...

    def is_final(self, state) -> bool: ...

    def count(self, state) -> int: ...


# === Drzewo wyciętych ścieżek ===

@dataclass
class _TrieNode:
    children: dict = field(default_factory=dict)
    carved: int = 0
    terminal: bool = False


class PathTrie:
    """Wycięte ścieżki; carved w węźle = liczba wyciętych ścieżek przez ten prefiks."""

    def __init__(self):
        self.root = _TrieNode()
        self.size = 0

    def add(self, path: Path) -> None:
        node = self.root
        node.carved += 1
        for label in path:
            node = node.children.setdefault(label, _TrieNode())
            node.carved += 1
        node.terminal = True
        self.size += 1

    def __contains__(self, path: Path) -> bool:
        node = self.root
        for label in path:
            node = node.children.get(label)
            if node is None:
                return False
        return node.terminal


# === Grafy ścieżek ===

class LayeredDfaGraph:
    """Słowa długości dokładnie `length` akceptowane przez Dfa; stan = (q, głębokość)."""

    def __init__(self, d: Dfa, length: int):
        self.dfa = d
        self.length = length
        self.table = layer_counts(d, length)
        self.start = (d.start, 0)

    def arcs(self, state):
        q, depth = state
        if depth == self.length:
            return []
        return [
            (sym, (dst, depth + 1))
            for sym, dst in zip(self.dfa.alphabet.symbols, self.dfa.delta[q])
            if dst != MISSING
        ]

    def is_final(self, state) -> bool:
        q, depth = state
        return depth == self.length and q in self.dfa.finals

    def count(self, state) -> int:
        q, depth = state
        return self.table[self.length - depth][q]


class ExcludingAcceptor:
    """Dfa bez skończonego zbioru słów: stan = (q, węzeł drzewa albo -1)."""

    def __init__(self, d: Dfa, excluded: Iterable[str] = ()):
        self.dfa = d
        self.children: list[dict[str, int]] = [{}]
        self.terminal: set[int] = set()
        for word in excluded:
            node = 0
            for sym in word:
                nxt = self.children[node].get(sym)
                if nxt is None:
                    nxt = len(self.children)
                    self.children[node][sym] = nxt
                    self.children.append({})
                node = nxt
            self.terminal.add(node)
        self.start = (d.start, 0)

    def step(self, state, sym: str):
        q, node = state
        q2 = self.dfa.delta[q][self.dfa.alphabet.index[sym]]
        if q2 == MISSING:
            return None
        node2 = self.children[node].get(sym, -1) if node >= 0 else -1
        return (q2, node2)

    def is_final(self, state) -> bool:
        q, node = state
        return q in self.dfa.finals and node not in self.terminal


class EditPairGraph:
    """
    Leniwy iloczyn A ∘ T ∘ C: ścieżki to pary (x, y), |x| = length,
    x ∈ L(A) bez wykluczeń, y ∈ L(C) bez wykluczeń, odległość edycyjna 1.
    Etykieta łuku to para (symbol wejścia, symbol wyjścia).
    """

    def __init__(
        self,
        positive: Dfa,
        negative: Dfa,
        length: int,
        exclude_positive: Iterable[str] = (),
        exclude_negative: Iterable[str] = (),
        relation: Fst | None = None,
    ):
        positive.alphabet.require_same(negative.alphabet)
        self.a = ExcludingAcceptor(positive, exclude_positive)
        self.c = ExcludingAcceptor(negative, exclude_negative)
        self.t = relation or edit1_transducer(positive.alphabet)
        self.length = length
        self.a_counts = layer_counts(positive, length)
        self.start = (self.a.start, 0, self.t.start, self.c.start)
        self._memo: dict = {}

    def arcs(self, state):
        a_state, depth, t, c_state = state
        out = []
        for isym, osym, t2 in self.t.arcs[t]:
            if isym != EPSILON:
                if depth == self.length:
                    continue
                a2 = self.a.step(a_state, isym)
                if a2 is None or self.a_counts[self.length - depth - 1][a2[0]] == 0:
                    continue
                depth2 = depth + 1
            else:
                a2, depth2 = a_state, depth
            if osym != EPSILON:
                c2 = self.c.step(c_state, osym)
                if c2 is None:
                    continue
            else:
                c2 = c_state
            out.append(((isym, osym), (a2, depth2, t2, c2)))
        return out

    def is_final(self, state) -> bool:
        a_state, depth, t, c_state = state
        return (
            depth == self.length
            and t in self.t.finals
            and self.a.is_final(a_state)
            and self.c.is_final(c_state)
        )

    def count(self, state) -> int:
        cached = self._memo.get(state)
        if cached is not None:
            return cached
        total = int(self.is_final(state))
        for _, nxt in self.arcs(state):
            total += self.count(nxt)
        self._memo[state] = total
        return total


# === Stan próbnika ===

class SamplerState:
    """
    Graf ścieżek, zbiór wyciętych ścieżek i generator liczb losowych.

    Prawdopodobieństwo ścieżki = iloczyn 1/stopień_wyjściowy po przyciętym,
    wyciętym grafie.
    """

    def __init__(self, graph: PathGraph, rng: np.random.Generator):
        self.graph = graph
        self.rng = rng
        self.carved = PathTrie()

    def remaining(self) -> int:
        """Liczba ścieżek, które wciąż można wylosować."""
        return self.graph.count(self.graph.start) - self.carved.root.carved

    def options(self, state, node: _TrieNode | None) -> list[tuple[Label, Hashable] | None]:
        """Żywe łuki stanu; None oznacza zatrzymanie w stanie akceptującym."""
        alive: list = []
        if self.graph.is_final(state) and not (node is not None and node.terminal):
            alive.append(None)
        for label, nxt in self.graph.arcs(state):
            child = node.children.get(label) if node is not None else None
            if self.graph.count(nxt) - (child.carved if child is not None else 0) > 0:
                alive.append((label, nxt))
        return alive

    def sample_walk(self) -> Path:
        """
        Jedna ścieżka akceptująca.

        Raises:
            LanguageExhaustedError: Wycięty graf nie ma już ścieżek
        """
        if self.remaining() <= 0:
            raise LanguageExhaustedError("Brak sciezek akceptujacych po wycieciu")
        state, node = self.graph.start, self.carved.root
        path: list[Label] = []
        while True:
            alive = self.options(state, node)
            choice = alive[int(self.rng.integers(len(alive)))]
            if choice is None:
                return tuple(path)
            label, state = choice
            path.append(label)
            node = node.children.get(label) if node is not None else None

    def accepts(self, path: Path) -> bool:
        """Czy ścieżka jest akceptowana przez graf i jeszcze nie wycięta."""
        state = self.graph.start
        for label in path:
            for arc_label, nxt in self.graph.arcs(state):
                if arc_label == label:
                    state = nxt
                    break
            else:
                return False
        return self.graph.is_final(state) and path not in self.carved

    def carve(self, path: Path) -> "SamplerState":
        """Usuwa ścieżkę z grafu (modyfikuje stan w miejscu, zwraca self)."""
        path = tuple(path)
        if not self.accepts(path):
            raise ValueError(f"Sciezka nie jest akceptowana: {path!r}")
        self.carved.add(path)
        return self

    def carve_all(self, paths: Iterable[Path]) -> int:
        """Wycina akceptowane, jeszcze niewycięte ścieżki; pozostałe pomija."""
        carved = 0
        for path in paths:
            path = tuple(path)
            if self.accepts(path):
                self.carved.add(path)
                carved += 1
        return carved


def make_rng(seed: int, *key: int) -> np.random.Generator:
    """Niezależny strumień PCG64 wyprowadzony z (seed, klucz)."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=key)))


def string_sampler(d: Dfa, length: int, rng: np.random.Generator) -> SamplerState:
    return SamplerState(LayeredDfaGraph(d, length), rng)


def pair_of(path: Path) -> tuple[str, str]:
    """Para słów (x, y) ze ścieżki grafu EditPairGraph."""
    return "".join(i for i, _ in path), "".join(o for _, o in path)
