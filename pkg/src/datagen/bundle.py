"""
Paczka danych jednego języka: 18 plików TSV i manifest.json.

Format: UTF-8, linia `słowo<TAB>TRUE|FALSE`; w SA/LA para zajmuje dwie
kolejne linie (pozytywna pierwsza). Manifest nie zawiera znaczników czasu.
"""

import hashlib
import json
import logging
from collections import defaultdict
from dataclasses import dataclass, field, replace
from pathlib import Path

from pydantic import ValidationError

from src import __version__
from src.core.errors import FormatError
from src.datagen.splits import Record, Split
from src.schemas import BundleManifest, DatagenConfig, FileEntry, SizeClass, SplitKind

logger = logging.getLogger("subreg-forge")

MANIFEST_FILE = "manifest.json"
LABELS = {True: "TRUE", False: "FALSE"}


@dataclass
class DatasetBundle:
    """Zbiory języka indeksowane (rodzaj, rozmiar) plus manifest."""

    name: str
    seed: int
    config: DatagenConfig
    splits: dict[tuple[SplitKind, SizeClass], Split] = field(default_factory=dict)
    complemented: bool = False
    file_digests: dict[str, str] = field(default_factory=dict)   # z plików na dysku
    manifest: BundleManifest | None = None

    def split(self, kind: SplitKind, size: SizeClass = SizeClass.LARGE) -> Split:
        return self.splits[(kind, size)]

    def add(self, split: Split) -> None:
        self.splits[(split.kind, split.size)] = split

    def ordered(self) -> list[Split]:
        """Zbiory w stałej kolejności (rodzaj, rozmiar)."""
        return [
            self.splits[(kind, size)]
            for kind in SplitKind
            for size in SizeClass
            if (kind, size) in self.splits
        ]


def serialize_split(split: Split) -> bytes:
    return "".join(f"{s}\t{LABELS[label]}\n" for s, label in split.records).encode("utf-8")


def parse_split(text: str, kind: SplitKind, size: SizeClass, file_name: str = "") -> Split:
    records: list[Record] = []
    for lineno, line in enumerate(text.split("\n"), start=1):
        if not line:
            continue
        parts = line.split("\t")
        if len(parts) != 2 or parts[1] not in ("TRUE", "FALSE"):
            raise FormatError(f"{file_name}:{lineno}: oczekiwano 'slowo<TAB>TRUE|FALSE'")
        records.append((parts[0], parts[1] == "TRUE"))
    return Split(kind, size, records)


def sha256_hex(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def build_manifest(bundle: DatasetBundle) -> BundleManifest:
    files = []
    for split in bundle.ordered():
        positives = sum(1 for _, label in split.records if label)
        files.append(
            FileEntry(
                file=split.file_name,
                kind=split.kind,
                size=split.size,
                records=len(split.records),
                positives=positives,
                negatives=len(split.records) - positives,
                sha256=sha256_hex(serialize_split(split)),
            )
        )
    return BundleManifest(
        name=bundle.name,
        seed=bundle.seed,
        prng=bundle.config.prng,
        generator_version=__version__,
        complemented=bundle.complemented,
        short_lengths=bundle.config.short_lengths,
        long_lengths=bundle.config.long_lengths,
        large_size=bundle.config.large_size,
        files=files,
    )


def write_bundle(bundle: DatasetBundle, out: str | Path) -> Path:
    """
    Zapisuje paczkę do out/<nazwa>/.

    Returns:
        Path: Katalog paczki
    """
    directory = Path(out) / bundle.name
    directory.mkdir(parents=True, exist_ok=True)
    for split in bundle.ordered():
        (directory / split.file_name).write_bytes(serialize_split(split))
    bundle.manifest = build_manifest(bundle)
    payload = json.dumps(bundle.manifest.model_dump(mode="json"), indent=2, ensure_ascii=False)
    (directory / MANIFEST_FILE).write_text(payload + "\n", encoding="utf-8")
    logger.info(f"Zapisano paczke {bundle.name}: {len(bundle.splits)} plikow w {directory}")
    return directory


def load_bundle(directory: str | Path) -> DatasetBundle:
    """Wczytuje paczkę wraz z sumami kontrolnymi plików z dysku."""
    directory = Path(directory)
    manifest_path = directory / MANIFEST_FILE
    if not manifest_path.exists():
        raise FormatError(f"Brak {MANIFEST_FILE} w {directory}")
    try:
        manifest = BundleManifest.model_validate_json(manifest_path.read_text(encoding="utf-8"))
    except ValidationError as e:
        raise FormatError(f"Niepoprawny manifest {manifest_path}: {e}") from None
    config = DatagenConfig(
        short_lengths=manifest.short_lengths,
        long_lengths=manifest.long_lengths,
        large_size=manifest.large_size,
        prng=manifest.prng,
    )
    bundle = DatasetBundle(
        name=manifest.name,
        seed=manifest.seed,
        config=config,
        complemented=manifest.complemented,
        manifest=manifest,
    )
    for entry in manifest.files:
        path = directory / entry.file
        if not path.exists():
            raise FormatError(f"Brak pliku {entry.file} wymienionego w manifescie")
        data = path.read_bytes()
        bundle.file_digests[entry.file] = sha256_hex(data)
        bundle.add(parse_split(data.decode("utf-8"), entry.kind, entry.size, entry.file))
    return bundle


def _complement_split(split: Split) -> Split:
    if split.kind.is_adversarial:
        records: list[Record] = []
        for x, y in split.pairs():
            records += [(y, True), (x, False)]
        return Split(split.kind, split.size, records)
    by_length: dict[int, dict[bool, list[str]]] = defaultdict(lambda: {True: [], False: []})
    order: list[int] = []
    for s, label in split.records:
        if len(s) not in by_length:
            order.append(len(s))
        by_length[len(s)][label].append(s)
    records = []
    for length in order:
        records += [(s, True) for s in by_length[length][False]]
        records += [(s, False) for s in by_length[length][True]]
    return Split(split.kind, split.size, records)


def complement_bundle(bundle: DatasetBundle, name: str | None = None) -> DatasetBundle:
    """
    Paczka dopełnienia: te same słowa, zamienione etykiety, odwrócone pary.

    Args:
        bundle: Paczka języka L
        name: Nazwa paczki dopełnienia (domyślnie ta sama)
    """
    result = replace(
        bundle,
        name=name or bundle.name,
        splits={key: _complement_split(split) for key, split in bundle.splits.items()},
        complemented=not bundle.complemented,
        file_digests={},
        manifest=None,
    )
    result.manifest = build_manifest(result)
    return result
