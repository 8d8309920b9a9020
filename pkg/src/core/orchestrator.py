"""
Orchestrator - pełny przebieg generowania paczki danych jednego języka.

Przepływ: wykonalność → Train/Dev → SR/LR → SA/LA → próbki Mid/Small + manifest.
Klasy co* (coSL, TcoSL, coSP) powstają z dopełnienia: paczka odpowiednika
generowana jest na complement(dfa), a potem etykiety są zamieniane.
"""

import logging
from dataclasses import dataclass, field
from datetime import datetime
from enum import Enum
from pathlib import Path

from src.automata.dfa import Dfa, complement, determinize_minimize
from src.core.errors import LanguageExhaustedError, UnusableLanguageError
from src.datagen.bundle import DatasetBundle, build_manifest, complement_bundle, write_bundle
from src.datagen.splits import (
    build_adversarial_test,
    build_dev,
    build_random_test,
    build_train,
    check_usable,
    downsample_nested,
)
from src.logic.naming import parse_spec, render_spec
from src.schemas import ClassLabel, DatagenConfig, LanguageSpec, SizeClass, SplitKind

logger = logging.getLogger("subreg-forge")

COMPLEMENT_CLASSES = frozenset({ClassLabel.coSL, ClassLabel.TcoSL, ClassLabel.coSP})


class GenerationStatus(str, Enum):
    """Status generowania paczki."""
    SUCCESS = "success"
    UNUSABLE = "unusable"         # Pusta warstwa długości po którejś stronie
    EXHAUSTED = "exhausted"       # Za mało słów albo par na kwotę
    ERROR = "error"


@dataclass
class GenerationResult:
    """Wynik generowania paczki jednego języka."""
    status: GenerationStatus
    name: str
    seed: int
    bundle: DatasetBundle | None = None
    directory: Path | None = None
    via_complement: bool = False
    error_message: str | None = None
    started_at: datetime = field(default_factory=datetime.now)
    finished_at: datetime | None = None

    def to_dict(self) -> dict:
        """Konwersja do słownika (wyjście JSON CLI)."""
        result = {
            "status": self.status.value,
            "name": self.name,
            "seed": self.seed,
            "via_complement": self.via_complement,
            "started_at": self.started_at.isoformat(),
            "finished_at": self.finished_at.isoformat() if self.finished_at else None,
        }
        if self.bundle is not None and self.bundle.manifest is not None:
            result["files"] = {
                entry.file: {"records": entry.records, "sha256": entry.sha256}
                for entry in self.bundle.manifest.files
            }
        if self.directory is not None:
            result["directory"] = str(self.directory)
        if self.error_message:
            result["error"] = self.error_message
        return result


def _build(d: Dfa, name: str, seed: int, config: DatagenConfig) -> DatasetBundle:
    bundle = DatasetBundle(name=name, seed=seed, config=config)

    logger.info("\n[STEP 1/5] WYKONALNOSC")
    logger.info("-" * 40)
    check_usable(d, config.lengths(SplitKind.TRAIN))
    check_usable(d, config.lengths(SplitKind.LR))
    logger.info(f"  Automat: {d.num_states} stanow, alfabet {d.alphabet}")

    logger.info("\n[STEP 2/5] TRAIN / DEV")
    logger.info("-" * 40)
    train = build_train(d, seed, config)
    dev = build_dev(d, train, seed, config)
    bundle.add(train)
    bundle.add(dev)

    logger.info("\n[STEP 3/5] SR / LR")
    logger.info("-" * 40)
    for kind in (SplitKind.SR, SplitKind.LR):
        bundle.add(build_random_test(d, [train, dev], kind, seed, config))

    logger.info("\n[STEP 4/5] SA / LA")
    logger.info("-" * 40)
    for kind in (SplitKind.SA, SplitKind.LA):
        bundle.add(build_adversarial_test(d, [train, dev], kind, seed, config))

    logger.info("\n[STEP 5/5] PROBKI MID / SMALL")
    logger.info("-" * 40)
    for kind in SplitKind:
        mid, small = downsample_nested(bundle.split(kind, SizeClass.LARGE), seed, config)
        bundle.add(mid)
        bundle.add(small)
    logger.info(f"  Zbiorow w paczce: {len(bundle.splits)}")
    return bundle


def generate_language_bundle(
    dfa: Dfa,
    spec: LanguageSpec | str,
    seed: int,
    config: DatagenConfig,
    out: str | Path | None = None,
) -> GenerationResult:
    """
    Generuje (i opcjonalnie zapisuje) paczkę danych języka.

    Args:
        dfa: Automat języka
        spec: Nazwa języka albo LanguageSpec
        seed: Ziarno główne
        config: Parametry generatora
        out: Katalog nadrzędny zapisu (None = bez zapisu)

    Returns:
        GenerationResult: Status, paczka i ewentualny komunikat błędu
    """
    name = spec if isinstance(spec, str) else render_spec(spec)
    result = GenerationResult(status=GenerationStatus.ERROR, name=name, seed=seed)

    logger.info("=" * 60)
    logger.info(f"GENERATOR START: {name}")
    logger.info(f"Seed: {seed}, watki: {config.threads}, Large: {config.large_size}")
    logger.info("=" * 60)

    try:
        label = (parse_spec(spec) if isinstance(spec, str) else spec).class_name
        d = determinize_minimize(dfa)
        if label in COMPLEMENT_CLASSES:
            logger.info(f"  Klasa {label.value}: generuje paczke dopelnienia i zamieniam etykiety")
            result.via_complement = True
            bundle = complement_bundle(_build(complement(d), name, seed, config), name)
        else:
            bundle = _build(d, name, seed, config)
            bundle.manifest = build_manifest(bundle)
        result.bundle = bundle

        if out is not None:
            result.directory = write_bundle(bundle, out)

        logger.info("\n" + "=" * 60)
        logger.info(f">>> PACZKA {name} GOTOWA <<<")
        logger.info("=" * 60)
        result.status = GenerationStatus.SUCCESS

    except UnusableLanguageError as e:
        logger.warning(f"  {name}: {e}")
        result.status = GenerationStatus.UNUSABLE
        result.error_message = str(e)

    except LanguageExhaustedError as e:
        logger.warning(f"  {name}: {e}")
        result.status = GenerationStatus.EXHAUSTED
        result.error_message = str(e)

    except Exception as e:
        logger.error(f"\n!!! GENERATOR ERROR: {e}")
        logger.exception("Szczegoly bledu:")
        result.status = GenerationStatus.ERROR
        result.error_message = str(e)

    result.finished_at = datetime.now()
    return result
