import json
import logging
import os
import sys
from collections.abc import Iterator
from contextlib import contextmanager
from pathlib import Path

import typer
from pydantic import ValidationError

from src import __version__
from src.algebra.semigroup import syntactic_semigroup
from src.automata.alphabet import alphabet_prefix
from src.automata.att import read_acceptor, write_att
from src.automata.dfa import Dfa
from src.classifiers.deciders import classify as classify_language
from src.classifiers.deciders import language_stats, summarize
from src.core.config_loader import load_datagen_config, load_randdfa_config
from src.core.errors import ConfigError, FormatError, SubregError
from src.core.orchestrator import GenerationStatus, generate_language_bundle
from src.datagen.bundle import MANIFEST_FILE, load_bundle, parse_split, serialize_split
from src.datagen.splits import downsample_nested
from src.datagen.verify import verify_bundle
from src.logic.expr import compile_expr
from src.logic.library import find_language, library_languages, verify_library
from src.logic.naming import parse_spec
from src.logic.parser import parse_expr
from src.randdfa import grid_to_csv, run_grid, summarize_grid, write_grid_csv
from src.schemas import BundleManifest, DatagenConfig, SizeClass, SplitKind
from src.scoring import score_file

# --- KONFIGURACJA ŚCIEŻEK ---
PROJECT_ROOT = Path(__file__).parent.parent
DEFAULT_LOG_FILE = PROJECT_ROOT / "logs" / "subreg-forge.log"

logger = logging.getLogger("subreg-forge")

app = typer.Typer(
    add_completion=False,
    help=(
        "Narzedzia dla jezykow podregularnych i generator zbiorow danych.\n\n"
        "Zbiory: TSV 'slowo<TAB>TRUE|FALSE' (w SA/LA para w dwoch kolejnych liniach, "
        "pozytywna pierwsza) + manifest.json. Predykcje: 'slowo<TAB>gold<TAB>prob'. "
        "Automaty: AT&T z tablica symboli .syms."
    ),
)


def configure_logging(level: str = "INFO", log_file: Path | None = None) -> None:
    """Handler plikowy (UTF-8) i konsolowy na stderr; stdout zostaje dla wyników."""
    logger.setLevel(level.upper())
    logger.handlers.clear()

    formatter = logging.Formatter(
        "%(asctime)s | %(levelname)-8s | %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S"
    )

    log_file = log_file or Path(os.getenv("SUBREG_LOG_FILE", DEFAULT_LOG_FILE))
    log_file.parent.mkdir(parents=True, exist_ok=True)
    file_handler = logging.FileHandler(log_file, encoding="utf-8", mode="a")
    file_handler.setFormatter(formatter)
    logger.addHandler(file_handler)

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setFormatter(formatter)
    logger.addHandler(console_handler)

    # Zapobiegamy propagacji do root loggera
    logger.propagate = False


@contextmanager
def operational() -> Iterator[None]:
    """Błędy operacyjne kończą komendę kodem 1 z komunikatem w logu."""
    try:
        yield
    except (SubregError, OSError) as e:
        logger.error(f"{type(e).__name__}: {e}")
        raise typer.Exit(code=1) from None


def _emit(payload) -> None:
    typer.echo(json.dumps(payload, ensure_ascii=False, indent=2))


def load_language(
    lang: Path | None = None,
    sigma: int | None = None,
    name: str | None = None,
) -> Dfa:
    """
    Automat z pliku .att, z pliku wyrażenia albo z biblioteki wzorców.

    Args:
        lang: Plik .att albo plik wyrażenia
        sigma: Rozmiar alfabetu dla wyrażenia (domyślnie z nazwy)
        name: Nazwa języka
    """
    if lang is None:
        if name is None:
            raise FormatError("Podaj plik jezyka albo nazwe jezyka z biblioteki")
        return find_language(name).dfa
    if lang.suffix == ".att":
        return read_acceptor(lang)
    if sigma is None:
        if name is None:
            raise FormatError("Wyrazenie wymaga --sigma albo --name")
        sigma = parse_spec(name).sigma
    return compile_expr(parse_expr(lang.read_text(encoding="utf-8")), alphabet_prefix(sigma))


def _datagen_config(threads: int | None, large_size: int | None) -> DatagenConfig:
    config = load_datagen_config()
    overrides = {k: v for k, v in (("threads", threads), ("large_size", large_size)) if v is not None}
    try:
        return DatagenConfig(**{**config.model_dump(), **overrides})
    except ValidationError as e:
        raise ConfigError(f"Niepoprawne parametry generatora: {e}") from None


@app.callback()
def main(
    log_level: str = typer.Option("INFO", "--log-level", help="Poziom logowania"),
    log_file: Path | None = typer.Option(None, "--log-file", help="Plik logu"),
) -> None:
    configure_logging(log_level, log_file)
    logger.debug(f"subreg-forge {__version__}")


@app.command("compile")
def compile_command(
    expr: Path = typer.Option(..., "--expr", help="Plik z wyrazeniem"),
    sigma: int = typer.Option(..., "--sigma", help="Rozmiar alfabetu"),
    att: Path = typer.Option(..., "--att", help="Plik wyjsciowy .att"),
) -> None:
    """Kompiluje wyrażenie do minimalnego automatu i zapisuje go w AT&T."""
    with operational():
        e = parse_expr(expr.read_text(encoding="utf-8"))
        d = compile_expr(e, alphabet_prefix(sigma))
        write_att(d, att)
        _emit({"att": str(att), "states": d.num_states, "cnl": e.is_cnl, "dpl": e.is_dpl})


@app.command()
def classify(
    att: Path | None = typer.Option(None, "--att"),
    expr: Path | None = typer.Option(None, "--expr"),
    sigma: int | None = typer.Option(None, "--sigma"),
    name: str | None = typer.Option(None, "--name", help="Jezyk z biblioteki"),
) -> None:
    """Wektor przynależności do 16 klas i klasa reprezentowana."""
    with operational():
        d = load_language(att or expr, sigma, name)
        vector, representative = classify_language(d)
        _emit({
            "flags": {label.value: flag for label, flag in vector.items()},
            "representative": representative.value if representative else None,
            "trivial": vector.trivial,
            "closed_up": sorted(c.value for c in vector.closed_up),
        })


@app.command()
def monoid(
    att: Path | None = typer.Option(None, "--att"),
    expr: Path | None = typer.Option(None, "--expr"),
    sigma: int | None = typer.Option(None, "--sigma"),
    name: str | None = typer.Option(None, "--name"),
) -> None:
    """Zrzut monoidu syntaktycznego (tablica elementów)."""
    with operational():
        typer.echo(syntactic_semigroup(load_language(att or expr, sigma, name)).dump())


@app.command()
def generate(
    name: str = typer.Option(..., "--name", help="Nazwa jezyka sigma.tau.class.k.t.i"),
    lang: Path | None = typer.Option(None, "--lang", help="Plik .att albo wyrazenia (domyslnie biblioteka)"),
    sigma: int | None = typer.Option(None, "--sigma"),
    seed: int = typer.Option(0, "--seed", min=0),
    out: Path = typer.Option(Path("data"), "--out"),
    threads: int | None = typer.Option(None, "--threads", min=1),
    large_size: int | None = typer.Option(None, "--large-size", min=1, help="Nadpisuje rozmiar Large"),
) -> None:
    """Generuje paczkę 18 zbiorów i manifest do out/<nazwa>/."""
    with operational():
        d = load_language(lang, sigma, name)
        config = _datagen_config(threads, large_size)
        result = generate_language_bundle(d, name, seed, config, out)
    _emit(result.to_dict())
    if result.status != GenerationStatus.SUCCESS:
        raise typer.Exit(code=1)


@app.command()
def downsample(
    file: Path = typer.Option(..., "--file", help="Plik <Rodzaj>_Large.tsv"),
    seed: int = typer.Option(0, "--seed", min=0),
    out: Path | None = typer.Option(None, "--out", help="Katalog wyjsciowy (domyslnie obok pliku)"),
) -> None:
    """Zagnieżdżone próbki Mid i Small z pliku Large."""
    with operational():
        kind_token, _, size_token = file.stem.partition("_")
        try:
            kind, size = SplitKind(kind_token), SizeClass(size_token)
        except ValueError:
            raise FormatError(f"Nazwa pliku {file.name} nie ma postaci <Rodzaj>_Large.tsv") from None
        if size != SizeClass.LARGE:
            raise FormatError(f"Probki powstaja tylko z plikow Large, nie {size.value}")
        manifest_path = file.parent / MANIFEST_FILE
        complemented = False
        if manifest_path.exists():
            try:
                m = BundleManifest.model_validate_json(manifest_path.read_text(encoding="utf-8"))
                config = DatagenConfig(
                    short_lengths=m.short_lengths, long_lengths=m.long_lengths, large_size=m.large_size
                )
                complemented = m.complemented
            except ValidationError as e:
                raise FormatError(f"Niepoprawny manifest {manifest_path}: {e}") from None
        else:
            config = load_datagen_config()
        large = parse_split(file.read_text(encoding="utf-8"), kind, size, file.name)
        directory = out or file.parent
        directory.mkdir(parents=True, exist_ok=True)
        written = {}
        for split in downsample_nested(large, seed, config, complemented):
            (directory / split.file_name).write_bytes(serialize_split(split))
            written[split.file_name] = len(split.records)
        _emit(written)


@app.command()
def verify(
    directory: Path = typer.Option(..., "--dir", help="Katalog paczki"),
    att: Path | None = typer.Option(None, "--att"),
    expr: Path | None = typer.Option(None, "--expr"),
    sigma: int | None = typer.Option(None, "--sigma"),
) -> None:
    """Sprawdza paczkę; kod 2, gdy któreś sprawdzenie nie przeszło."""
    with operational():
        bundle = load_bundle(directory)
        d = load_language(att or expr, sigma, bundle.name)
        report = verify_bundle(bundle, d)
    _emit({**report.model_dump(), "passed": report.passed})
    if not report.passed:
        logger.error(f"Weryfikacja {bundle.name} nieudana: {report.failed_checks()}")
        raise typer.Exit(code=2)


@app.command()
def randdfa(
    grid: str = typer.Option("fair", "--grid", help="fair albo probability"),
    seed: int = typer.Option(0, "--seed", min=0),
    trials: int | None = typer.Option(None, "--trials", min=1),
    threads: int = typer.Option(1, "--threads", min=1),
    out: Path | None = typer.Option(None, "--out", help="Plik CSV (domyslnie stdout)"),
) -> None:
    """Proporcja języków SL wśród losowych automatów na siatce parametrów."""
    with operational():
        grids = load_randdfa_config()
        if grid not in ("fair", "probability"):
            raise FormatError(f"Nieznana siatka {grid!r} (fair albo probability)")
        cells = run_grid(getattr(grids, grid), seed, threads=threads, trials=trials)
        if out is not None:
            write_grid_csv(cells, out)
            _emit(summarize_grid(cells))
        else:
            typer.echo(grid_to_csv(cells), nl=False)


@app.command()
def score(
    pred: Path = typer.Option(..., "--pred", help="Plik predykcji"),
    split: Path | None = typer.Option(None, "--split", help="Plik zbioru do kontroli zgodnosci"),
) -> None:
    """Accuracy, precision, recall, F1, Brier i AUC."""
    with operational():
        _emit(score_file(pred, split).model_dump())


@app.command()
def library(
    sigma: list[int] | None = typer.Option(None, "--sigma", help="Rozmiary alfabetu"),
) -> None:
    """Sprawdza, że każdy wpis biblioteki reprezentuje zadeklarowaną klasę."""
    with operational():
        mismatches = verify_library(sigma or None)
    _emit([{"name": n, "declared": d.value, "got": g.value if g else None} for n, d, g in mismatches])
    if mismatches:
        raise typer.Exit(code=2)


@app.command()
def stats(
    sigma: list[int] | None = typer.Option(None, "--sigma", help="Rozmiary alfabetu"),
) -> None:
    """Rozmiary automatów i monoidów języków biblioteki (JSON na linię + podsumowanie)."""
    with operational():
        rows = [language_stats(lang.name, lang.dfa) for lang in library_languages(sigma or None)]
        for row in rows:
            typer.echo(row.model_dump_json())
        typer.echo(json.dumps({"summary": summarize(rows)}))


if __name__ == "__main__":
    app()
