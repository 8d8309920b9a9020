"""
Alfabety symboli.

Alfabety benchmarku to prefiksy kanonicznej, 64-znakowej sekwencji liter.
"""

from dataclasses import dataclass
from functools import cached_property

from src.core.errors import AlphabetError

CANONICAL_SEQUENCE = (
    "abcdefghijklmnopqrstuvwxyz"
    "ABCDEFGHIJKLMNOPQRSTUVWXYZ"
    "áàǎéèěóòǒúùǔ"
)

BENCHMARK_SIZES = (4, 16, 64)


@dataclass(frozen=True)
class Alphabet:
    """Uporządkowany zbiór jednoznakowych symboli."""

    symbols: tuple[str, ...]

    def __post_init__(self):
        if len(set(self.symbols)) != len(self.symbols):
            raise AlphabetError(f"Powtorzone symbole w alfabecie: {''.join(self.symbols)}")
        for sym in self.symbols:
            if len(sym) != 1:
                raise AlphabetError(f"Symbol musi byc pojedynczym znakiem: {sym!r}")

    @classmethod
    def of(cls, symbols: str | list[str] | tuple[str, ...]) -> "Alphabet":
        return cls(tuple(symbols))

    @cached_property
    def index(self) -> dict[str, int]:
        """Mapa symbol -> pozycja."""
        return {sym: i for i, sym in enumerate(self.symbols)}

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __contains__(self, sym: object) -> bool:
        return sym in self.index

    def __str__(self) -> str:
        return "".join(self.symbols)

    def encode(self, word: str) -> list[int]:
        """Zamienia słowo na listę indeksów symboli."""
        try:
            return [self.index[ch] for ch in word]
        except KeyError as e:
            raise AlphabetError(f"Symbol {e.args[0]!r} spoza alfabetu {self}") from None

    def subset(self, symbols) -> "Alphabet":
        """Podalfabet w porządku nadrzędnego alfabetu."""
        wanted = set(symbols)
        missing = wanted - set(self.symbols)
        if missing:
            raise AlphabetError(
                f"Symbole {''.join(sorted(missing))} nie naleza do alfabetu {self}"
            )
        return Alphabet(tuple(s for s in self.symbols if s in wanted))

    def require_same(self, other: "Alphabet") -> None:
        if self.symbols != other.symbols:
            raise AlphabetError(f"Niezgodne alfabety: {self} vs {other}")


def alphabet_prefix(n: int) -> Alphabet:
    """
    Zwraca pierwsze n liter kanonicznej sekwencji.

    Args:
        n: Rozmiar alfabetu (1..64)

    Returns:
        Alphabet: Prefiks długości n
    """
    if not 1 <= n <= len(CANONICAL_SEQUENCE):
        raise AlphabetError(f"Rozmiar alfabetu poza zakresem 1..64: {n}")
    return Alphabet(tuple(CANONICAL_SEQUENCE[:n]))
