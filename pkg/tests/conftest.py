"""
Konfiguracja pytest dla subreg-forge.
Zawiera fixtures: alfabety, małe automaty wzorcowe i małą konfigurację generatora.
"""

import logging

import pytest

from src.automata.alphabet import Alphabet, alphabet_prefix
from src.automata.dfa import Dfa, complement
from src.logic.expr import compile_expr
from src.logic.parser import parse_expr
from src.schemas import DatagenConfig


def compile_text(source: str, sigma: int | Alphabet) -> Dfa:
    """Kompiluje wyrażenie tekstowe nad prefiksem kanonicznym albo podanym alfabetem."""
    alphabet = sigma if isinstance(sigma, Alphabet) else alphabet_prefix(sigma)
    return compile_expr(parse_expr(source), alphabet)


# === Alfabety ===
@pytest.fixture
def ab() -> Alphabet:
    return Alphabet.of("ab")


@pytest.fixture
def sigma4() -> Alphabet:
    return alphabet_prefix(4)


@pytest.fixture
def sigma5() -> Alphabet:
    return alphabet_prefix(5)


# === Automaty wzorcowe ===
@pytest.fixture
def substring_aa(sigma5) -> Dfa:
    """Σ*aaΣ* nad {a,b,c,d,e}."""
    return compile_text('"aa"', sigma5)


@pytest.fixture
def subsequence_aa(sigma5) -> Dfa:
    """Co najmniej dwa a (podciąg aa)."""
    return compile_text('"a" < "a"', sigma5)


@pytest.fixture
def tier_aa(sigma5) -> Dfa:
    """aa na warstwie {a, e}."""
    return compile_text('[T:ae]"aa"', sigma5)


@pytest.fixture
def no_aa(sigma5) -> Dfa:
    return complement(compile_text('"aa"', sigma5))


@pytest.fixture
def parity_a(ab) -> Dfa:
    """Parzysta liczba a nad {a, b}."""
    return compile_text('mod("a", 2, 0)', ab)


@pytest.fixture
def two_aa(sigma4) -> Dfa:
    """Co najmniej dwa wystąpienia aa (LTT, nie LT)."""
    return compile_text('count(2, "aa")', sigma4)


# === Generator ===
@pytest.fixture
def desk_config() -> DatagenConfig:
    """
    Mała konfiguracja: 2 długości krótkie i 2 długie, Large = 400,
    czyli 100 rekordów na (długość, etykietę), Mid 10, Small 1.
    """
    return DatagenConfig(
        short_lengths=(8, 9),
        long_lengths=(11, 12),
        large_size=400,
        threads=1,
    )


@pytest.fixture
def no_aa_4(sigma4) -> Dfa:
    """Brak czynnika aa nad {a,b,c,d}: obie strony mają dużo słów każdej długości."""
    return complement(compile_text('"aa"', sigma4))


@pytest.fixture(autouse=True)
def quiet_logger():
    """Logger projektu bez handlerów z poprzednich testów CLI."""
    logger = logging.getLogger("subreg-forge")
    yield
    for handler in list(logger.handlers):
        handler.close()
        logger.removeHandler(handler)
