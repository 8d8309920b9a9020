"""
Biblioteka wzorców bazowych (config/patterns.yaml).

Każdy wpis daje po jednym języku na rozmiar alfabetu. Nazwa języka wynika
z wpisu: tau to rozmiar warstwy wyrażenia, i to pozycja w grupie (class, k, t).
"""

import logging
from collections import defaultdict
from collections.abc import Iterable, Iterator
from dataclasses import dataclass

from src.automata.alphabet import alphabet_prefix
from src.automata.dfa import Dfa
from src.classifiers.deciders import classify
from src.core.config_loader import load_patterns
from src.core.errors import FormatError
from src.logic.expr import Expr, compile_expr
from src.logic.naming import render_spec
from src.logic.parser import parse_expr
from src.schemas import ClassLabel, LanguageSpec, PatternEntry

logger = logging.getLogger("subreg-forge")


@dataclass(frozen=True)
class LibraryLanguage:
    spec: LanguageSpec
    expr: Expr
    dfa: Dfa

    @property
    def name(self) -> str:
        return render_spec(self.spec)


def library_languages(
    sigmas: Iterable[int] | None = None,
    entries: list[PatternEntry] | None = None,
) -> Iterator[LibraryLanguage]:
    """
    Kompiluje wpisy biblioteki.

    Args:
        sigmas: Rozmiary alfabetu (domyślnie te zadeklarowane we wpisach)
        entries: Wpisy (domyślnie config/patterns.yaml)
    """
    entries = load_patterns() if entries is None else entries
    wanted = set(sigmas) if sigmas is not None else None
    position: dict[tuple[ClassLabel, int, int], int] = defaultdict(int)
    for entry in entries:
        group = (entry.class_name, entry.k, entry.t)
        i = position[group]
        position[group] += 1
        expr = parse_expr(entry.expr)
        for sigma in entry.alphabets:
            if wanted is not None and sigma not in wanted:
                continue
            alphabet = alphabet_prefix(sigma)
            tier = expr.tier
            spec = LanguageSpec(
                sigma=sigma,
                tau=len(tier) if tier is not None else sigma,
                class_name=entry.class_name,
                k=entry.k,
                t=entry.t,
                i=i,
            )
            yield LibraryLanguage(spec, expr, compile_expr(expr, alphabet))


def find_language(name: str, entries: list[PatternEntry] | None = None) -> LibraryLanguage:
    """Język biblioteki o podanej nazwie."""
    for lang in library_languages(entries=entries):
        if lang.name == name:
            return lang
    raise FormatError(f"Brak jezyka {name} w bibliotece wzorcow")


def verify_library(
    sigmas: Iterable[int] | None = None,
    entries: list[PatternEntry] | None = None,
) -> list[tuple[str, ClassLabel, ClassLabel | None]]:
    """
    Sprawdza, że każdy wpis reprezentuje zadeklarowaną klasę.

    Returns:
        list: Niezgodności (nazwa, klasa zadeklarowana, klasa wyliczona)
    """
    mismatches = []
    for lang in library_languages(sigmas, entries):
        _, got = classify(lang.dfa)
        if got != lang.spec.class_name:
            logger.warning(f"  {lang.name}: oczekiwano {lang.spec.class_name.value}, jest {got}")
            mismatches.append((lang.name, lang.spec.class_name, got))
        else:
            logger.info(f"  {lang.name}: OK")
    return mismatches
