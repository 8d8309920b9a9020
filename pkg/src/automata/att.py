"""
Zapis i odczyt formatu AT&T (tekstowego) wraz z tablicami symboli.

Akceptor:    src<TAB>dst<TAB>sym          + plik .syms
Transduktor: src<TAB>dst<TAB>isym<TAB>osym + pliki .isyms / .osyms
Stan akceptujący to linia z samym numerem stanu. Stan źródłowy pierwszej
linii przejścia jest stanem startowym. W tablicy symboli id 0 to ε (@0@).
"""

import logging
from pathlib import Path

from src.automata.alphabet import Alphabet
from src.automata.dfa import EPSILON, Dfa, NfaBuilder, determinize_minimize
from src.automata.fst import Fst
from src.core.errors import FormatError

logger = logging.getLogger("subreg-forge")

EPSILON_TOKEN = "@0@"


def _token(sym: str) -> str:
    return EPSILON_TOKEN if sym == EPSILON else sym


def _symbol(token: str) -> str:
    return EPSILON if token == EPSILON_TOKEN else token


def write_symbol_table(alphabet: Alphabet, path: Path) -> None:
    lines = [f"{EPSILON_TOKEN}\t0"]
    lines += [f"{sym}\t{i}" for i, sym in enumerate(alphabet.symbols, start=1)]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_symbol_table(path: Path) -> Alphabet:
    """Odczytuje tablicę symboli; zwraca alfabet w porządku identyfikatorów."""
    if not path.exists():
        raise FormatError(f"Brak tablicy symboli: {path}")
    entries: dict[int, str] = {}
    for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        if not line.strip():
            continue
        parts = line.split("\t")
        if len(parts) != 2 or not parts[1].isdigit():
            raise FormatError(f"{path.name}:{lineno}: oczekiwano 'symbol<TAB>id'")
        sym, ident = parts[0], int(parts[1])
        if ident == 0:
            if sym != EPSILON_TOKEN:
                raise FormatError(f"{path.name}:{lineno}: id 0 zarezerwowane dla {EPSILON_TOKEN}")
            continue
        entries[ident] = sym
    return Alphabet(tuple(entries[i] for i in sorted(entries)))


def write_att(machine: Dfa | Fst, path: str | Path) -> Path:
    """
    Zapisuje automat lub transduktor wraz z tablicą(ami) symboli.

    Returns:
        Path: Ścieżka pliku .att
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines: list[str] = []
    if isinstance(machine, Dfa):
        order = [machine.start] + [q for q in range(machine.num_states) if q != machine.start]
        for q in order:
            for i, dst in enumerate(machine.delta[q]):
                if dst >= 0:
                    lines.append(f"{q}\t{dst}\t{machine.alphabet.symbols[i]}")
        finals = sorted(machine.finals)
        write_symbol_table(machine.alphabet, path.with_suffix(".syms"))
    else:
        order = [machine.start] + [q for q in range(machine.num_states) if q != machine.start]
        for q in order:
            for isym, osym, dst in machine.arcs[q]:
                lines.append(f"{q}\t{dst}\t{_token(isym)}\t{_token(osym)}")
        finals = sorted(machine.finals)
        write_symbol_table(machine.input_alphabet, path.with_suffix(".isyms"))
        write_symbol_table(machine.output_alphabet, path.with_suffix(".osyms"))
    if lines and not lines[0].startswith(f"{machine.start}\t"):
        raise FormatError("Stan startowy bez przejsc wychodzacych nie da sie zapisac w ATT")
    lines += [str(q) for q in finals]
    path.write_text("".join(line + "\n" for line in lines), encoding="utf-8")
    logger.debug(f"Zapisano ATT: {path} ({len(lines)} linii)")
    return path


def _parse_lines(path: Path) -> tuple[list[list[str]], list[int]]:
    if not path.exists():
        raise FormatError(f"Brak pliku ATT: {path}")
    arcs: list[list[str]] = []
    finals: list[int] = []
    width = None
    for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        if not line.strip():
            continue
        parts = line.split("\t")
        try:
            if len(parts) == 1:
                finals.append(int(parts[0]))
                continue
            if len(parts) not in (3, 4):
                raise FormatError(f"{path.name}:{lineno}: zla liczba pol ({len(parts)})")
            if width is not None and len(parts) != width:
                raise FormatError(f"{path.name}:{lineno}: mieszane linie 3- i 4-kolumnowe")
            width = len(parts)
            int(parts[0]), int(parts[1])
        except ValueError:
            raise FormatError(f"{path.name}:{lineno}: numer stanu nie jest liczba") from None
        arcs.append(parts)
    return arcs, finals


def read_acceptor(path: str | Path, alphabet: Alphabet | None = None) -> Dfa:
    """
    Odczytuje akceptor ATT i zwraca jego minimalny Dfa.

    Args:
        path: Plik .att (3 kolumny)
        alphabet: Alfabet, jeśli brak pliku .syms obok
    """
    path = Path(path)
    syms = path.with_suffix(".syms")
    if alphabet is None:
        alphabet = read_symbol_table(syms)
    arcs, finals = _parse_lines(path)
    if arcs and len(arcs[0]) != 3:
        raise FormatError(f"{path.name}: oczekiwano akceptora (3 kolumny)")
    states = [0] + [int(p[0]) for p in arcs] + [int(p[1]) for p in arcs] + finals
    builder = NfaBuilder(alphabet, max(states) + 1)
    for src, dst, token in arcs:
        sym = _symbol(token)
        if sym != EPSILON and sym not in alphabet:
            raise FormatError(f"{path.name}: symbol {sym!r} spoza tablicy symboli")
        builder.add_arc(int(src), sym, int(dst))
    start = int(arcs[0][0]) if arcs else 0
    return determinize_minimize(builder.build(starts=[start], finals=finals))


def read_transducer(path: str | Path) -> Fst:
    """Odczytuje transduktor ATT (4 kolumny) z tablicami .isyms/.osyms."""
    path = Path(path)
    input_alphabet = read_symbol_table(path.with_suffix(".isyms"))
    output_alphabet = read_symbol_table(path.with_suffix(".osyms"))
    arcs, finals = _parse_lines(path)
    if arcs and len(arcs[0]) != 4:
        raise FormatError(f"{path.name}: oczekiwano transduktora (4 kolumny)")
    states = [0] + [int(p[0]) for p in arcs] + [int(p[1]) for p in arcs] + finals
    out: list[list[tuple[str, str, int]]] = [[] for _ in range(max(states) + 1)]
    for src, dst, itok, otok in arcs:
        isym, osym = _symbol(itok), _symbol(otok)
        if isym != EPSILON and isym not in input_alphabet:
            raise FormatError(f"{path.name}: symbol wejscia {isym!r} spoza tablicy")
        if osym != EPSILON and osym not in output_alphabet:
            raise FormatError(f"{path.name}: symbol wyjscia {osym!r} spoza tablicy")
        out[int(src)].append((isym, osym, int(dst)))
    start = int(arcs[0][0]) if arcs else 0
    return Fst(
        input_alphabet,
        output_alphabet,
        start,
        frozenset(finals),
        tuple(tuple(a) for a in out),
    )
