"""
Półgrupy przekształceń i monoidy syntaktyczne minimalnych automatów.

Element to funkcja stan -> stan zapisana jako wektor numpy. Element 0 jest
zawsze identycznością (słowo puste). Maska `in_semigroup` wskazuje elementy
osiągalne słowami niepustymi; identyczność należy do półgrupy tylko wtedy,
gdy działa tak któreś niepuste słowo.

Konwencja mnożenia: table[x, y] = "najpierw x, potem y", czyli działanie
słowa uv to table[u, v].

Rozmiar, potęgi idempotentne, aperiodyczność i J-trywialność liczone są
z wektorów i tablic działań generatorów (right, left). Pełna tablica
mnożenia powstaje leniwie i tylko dla monoidów do MAX_TABLE_SIZE elementów.
"""

from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property

import networkx as nx
import numpy as np

from src.automata.alphabet import Alphabet
from src.automata.dfa import Dfa, complete, determinize_minimize
from src.core.errors import MonoidTooLargeError, NotMinimalError
from src.logic.expr import is_prime

MAX_TABLE_SIZE = 4096


def _then(first: np.ndarray, second: np.ndarray) -> np.ndarray:
    """Złożenie wierszami: najpierw `first`, potem `second`."""
    return np.take_along_axis(second, first, axis=1)


@dataclass(frozen=True, eq=False)
class TransformationSemigroup:
    """Monoid przekształceń z tablicami działań generatorów."""

    alphabet: Alphabet
    elements: np.ndarray         # (m, n): obraz każdego stanu
    right: np.ndarray            # (m, k): x·a
    left: np.ndarray             # (m, k): a·x
    parent: np.ndarray           # (m,): x = parent·via w drzewie BFS
    via: np.ndarray              # (m,): indeks symbolu
    in_semigroup: np.ndarray     # (m,): bool
    words: tuple[str, ...]       # najkrótsze słowo reprezentujące element
    index: dict[bytes, int] = field(repr=False)

    @property
    def size(self) -> int:
        """Rozmiar monoidu."""
        return len(self.elements)

    @property
    def semigroup_size(self) -> int:
        return int(self.in_semigroup.sum())

    @cached_property
    def semigroup_elements(self) -> np.ndarray:
        return np.flatnonzero(self.in_semigroup)

    @cached_property
    def generators(self) -> dict[str, int]:
        """symbol -> element"""
        return {sym: int(self.right[0, a]) for a, sym in enumerate(self.alphabet.symbols)}

    @cached_property
    def table(self) -> np.ndarray:
        """
        Tablica mnożenia (m, m) z prawego grafu Cayleya: x·y = (x·parent(y))·gen(y).

        Raises:
            MonoidTooLargeError: Monoid ma więcej niż MAX_TABLE_SIZE elementów
        """
        m = self.size
        if m > MAX_TABLE_SIZE:
            raise MonoidTooLargeError(
                f"Monoid ma {m} elementow; tablica mnozenia jest ograniczona do {MAX_TABLE_SIZE}"
            )
        table = np.empty((m, m), dtype=np.int32)
        table[:, 0] = np.arange(m)
        for y in range(1, m):
            table[:, y] = self.right[table[:, self.parent[y]], self.via[y]]
        return table

    def multiply(self, x: int, y: int) -> int:
        return int(self.table[x, y])

    def lookup(self, image: np.ndarray) -> int:
        """Indeks elementu o danym obrazie stanów."""
        return self.index[np.asarray(image, dtype=np.int64).tobytes()]

    def word_element(self, word: str) -> int:
        """Element odpowiadający słowu."""
        x = 0
        for sym in word:
            x = int(self.right[x, self.alphabet.index[sym]])
        return x

    @cached_property
    def omega(self) -> np.ndarray:
        """omega[x] = jedyna idempotentna potęga x."""
        result = np.empty(self.size, dtype=np.int64)
        done = np.zeros(self.size, dtype=bool)
        power = self.elements
        while not done.all():
            fresh = ~done & np.all(_then(power, power) == power, axis=1)
            for x in np.flatnonzero(fresh):
                result[x] = self.lookup(power[x])
            done |= fresh
            power = _then(power, self.elements)
        return result

    def omega_power(self, x: int) -> int:
        return int(self.omega[x])

    @cached_property
    def idempotent_mask(self) -> np.ndarray:
        return np.all(_then(self.elements, self.elements) == self.elements, axis=1)

    def idempotents(self, semigroup_only: bool = False) -> np.ndarray:
        """Indeksy elementów idempotentnych (e·e = e)."""
        mask = self.idempotent_mask
        if semigroup_only:
            mask = mask & self.in_semigroup
        return np.flatnonzero(mask)

    def dump(self) -> str:
        """Tekstowy zrzut: generatory, potem element, słowo, obraz stanów, przynależność do S."""
        lines = [
            f"# states={self.elements.shape[1]} monoid={self.size} semigroup={self.semigroup_size}",
        ]
        for sym in self.alphabet.symbols:
            lines.append(f"gen\t{sym}\t{self.generators[sym]}")
        for x in range(self.size):
            image = " ".join(str(int(q)) for q in self.elements[x])
            member = "S" if self.in_semigroup[x] else "-"
            lines.append(f"{x}\t{self.words[x] or '1'}\t{image}\t{member}")
        return "\n".join(lines) + "\n"


def transition_semigroup(d: Dfa) -> TransformationSemigroup:
    """
    Domknięcie działań symboli na zupełnym automacie.

    Deduplikacja przez bajty wektora; tablica mnożenia nie jest tu budowana.
    """
    c = complete(d)
    delta = c.to_array()
    k = len(c.alphabet)
    identity = np.arange(c.num_states, dtype=np.int64)

    index: dict[bytes, int] = {identity.tobytes(): 0}
    elements = [identity]
    words = [""]
    parent = [0]
    via = [0]
    right: list[list[int]] = []
    i = 0
    while i < len(elements):
        x = elements[i]
        row = []
        for a in range(k):
            y = delta[x, a]
            key = y.tobytes()
            if key not in index:
                index[key] = len(elements)
                elements.append(y)
                words.append(words[i] + c.alphabet.symbols[a])
                parent.append(i)
                via.append(a)
            row.append(index[key])
        right.append(row)
        i += 1

    m = len(elements)
    images = np.array(elements, dtype=np.int64).reshape(m, c.num_states)
    right_arr = np.array(right, dtype=np.int64).reshape(m, k)
    left_arr = np.empty((m, k), dtype=np.int64)
    for a in range(k):
        for x, image in enumerate(images[:, delta[:, a]]):
            left_arr[x, a] = index[image.tobytes()]

    in_semigroup = np.zeros(m, dtype=bool)
    queue = deque(int(g) for g in right_arr[0])
    for g in queue:
        in_semigroup[g] = True
    while queue:
        x = queue.popleft()
        for y in right_arr[x]:
            if not in_semigroup[y]:
                in_semigroup[y] = True
                queue.append(int(y))

    return TransformationSemigroup(
        alphabet=c.alphabet,
        elements=images,
        right=right_arr,
        left=left_arr,
        parent=np.array(parent, dtype=np.int64),
        via=np.array(via, dtype=np.int64),
        in_semigroup=in_semigroup,
        words=tuple(words),
        index=index,
    )


def syntactic_semigroup(d: Dfa) -> TransformationSemigroup:
    """
    Monoid syntaktyczny języka minimalnego automatu.

    Raises:
        NotMinimalError: Automat ma stany Nerode-równoważne lub zbędne
    """
    if complete(determinize_minimize(d)).num_states != complete(d).num_states:
        raise NotMinimalError(
            f"Automat o {d.num_states} stanach nie jest minimalny; uzyj determinize_minimize"
        )
    return transition_semigroup(d)


# === Predykaty ===

def is_aperiodic(s: TransformationSemigroup) -> bool:
    """x^ω · x = x^ω dla każdego x."""
    powers = s.elements[s.omega]
    return bool(np.all(_then(powers, s.elements) == powers))


def is_group(s: TransformationSemigroup) -> bool:
    """Jedynym idempotentem jest identyczność."""
    return list(s.idempotents()) == [0]


def group_order_prime(s: TransformationSemigroup) -> bool:
    return is_group(s) and is_prime(s.size)


def _cayley_graph(s: TransformationSemigroup, left: bool) -> nx.DiGraph:
    graph = nx.DiGraph()
    graph.add_nodes_from(range(s.size))
    actions = s.left if left else s.right
    for a in range(actions.shape[1]):
        targets = actions[:, a]
        graph.add_edges_from((x, int(y)) for x, y in enumerate(targets) if x != y)
    return graph


def is_j_trivial(s: TransformationSemigroup) -> bool:
    """J-trywialność = R-trywialność i L-trywialność (silne składowe grafów Cayleya jednoelementowe)."""
    for left in (False, True):
        graph = _cayley_graph(s, left)
        if any(len(comp) > 1 for comp in nx.strongly_connected_components(graph)):
            return False
    return True


def local_submonoid_check(s: TransformationSemigroup, predicate: str = "semilattice") -> bool:
    """
    Dla każdego idempotentu e ∈ S podmonoid eSe składa się z przemiennych idempotentów.
    """
    if predicate != "semilattice":
        raise ValueError(f"Nieznany predykat lokalny: {predicate}")
    T = s.table
    S = s.semigroup_elements
    for e in s.idempotents(semigroup_only=True):
        local = np.unique(T[T[e, S], e])
        if not np.all(T[local, local] == local):
            return False
        sub = T[np.ix_(local, local)]
        if not np.array_equal(sub, sub.T):
            return False
    return True


class Identity(str, Enum):
    """Tożsamości półgrupowe używane przez decydentów."""
    LTT = "ltt_beauquier_pin"
    KNAST = "knast"


def _ltt_identity(s: TransformationSemigroup) -> bool:
    # eafbecf = ecfbeaf: dla a, c ∈ eSf oraz y ∈ S: a·y·c = c·y·a
    if not is_aperiodic(s):
        return False
    T = s.table
    S = s.semigroup_elements
    E = s.idempotents(semigroup_only=True)
    for e in E:
        eS = T[e, S]
        for f in E:
            X = np.unique(T[eS, f])
            A = T[np.ix_(X, S)]
            products = T[A[:, :, None], X[None, None, :]]
            if not np.array_equal(products, products.transpose(2, 1, 0)):
                return False
    return True


def _knast_identity(s: TransformationSemigroup) -> bool:
    # (epfq)^ω epfse (rfse)^ω = (epfq)^ω e (rfse)^ω
    # z x = epf, t = fse: epfse = x·t oraz rfse = rf·t
    T = s.table
    omega = s.omega
    S = s.semigroup_elements
    E = s.idempotents(semigroup_only=True)
    for e in E:
        eS = T[e, S]
        Se = T[S, e]
        for f in E:
            X = np.unique(T[eS, f])
            middles = np.unique(T[f, Se])
            W = omega[T[np.unique(T[S, f])[None, :], middles[:, None]]]   # [t, r]
            for x in X:
                u = np.unique(omega[T[x, S]])
                lhs = T[T[u[:, None], T[x, middles][None, :]][:, :, None], W[None, :, :]]
                rhs = T[T[u, e][:, None, None], W[None, :, :]]
                if not np.array_equal(lhs, rhs):
                    return False
    return True


def satisfies_identity(s: TransformationSemigroup, identity: Identity | str) -> bool:
    """
    Sprawdza tożsamość na wszystkich elementach i idempotentach półgrupy S.

    Args:
        s: Monoid przekształceń
        identity: ltt_beauquier_pin (z wymogiem aperiodyczności) albo knast
    """
    identity = Identity(identity)
    if identity is Identity.LTT:
        return _ltt_identity(s)
    return _knast_identity(s)
