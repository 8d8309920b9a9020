"""
Budowa zbiorów Train / Dev / SR / SA / LR / LA i ich zagnieżdżonych próbek.

Każda komórka (rodzaj, długość, etykieta) ma własny strumień PRNG
wyprowadzony z ziarna, więc komórki liczą się równolegle, a wynik nie
zależy od liczby wątków (scalanie w stałej kolejności).
"""

import logging
from collections import Counter, defaultdict
from collections.abc import Callable, Iterable
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from src.automata.dfa import Dfa, complement, count_length, determinize_minimize
from src.core.errors import LanguageExhaustedError, UnusableLanguageError
from src.datagen.sampler import (
    EditPairGraph,
    SamplerState,
    make_rng,
    pair_of,
    string_sampler,
)
from src.schemas import DatagenConfig, SizeClass, SplitKind

logger = logging.getLogger("subreg-forge")

Record = tuple[str, bool]

SPLIT_CODES = {kind: code for code, kind in enumerate(SplitKind)}
POSITIVE, NEGATIVE, PAIRS = 1, 0, 2
DOWNSAMPLE_OFFSET = 100


@dataclass
class Split:
    """Zbiór rekordów; w SA/LA kolejne dwie linie to para (pozytywny, negatywny)."""

    kind: SplitKind
    size: SizeClass
    records: list[Record] = field(default_factory=list)

    @property
    def file_name(self) -> str:
        return f"{self.kind.value}_{self.size.value}.tsv"

    @property
    def positives(self) -> list[str]:
        return [s for s, label in self.records if label]

    @property
    def negatives(self) -> list[str]:
        return [s for s, label in self.records if not label]

    def pairs(self) -> list[tuple[str, str]]:
        return [(self.records[i][0], self.records[i + 1][0]) for i in range(0, len(self.records), 2)]

    def strings_of(self, length: int, label: bool) -> list[str]:
        return [s for s, lab in self.records if lab == label and len(s) == length]


def _run_cells(tasks: list[Callable[[], list[Record]]], threads: int) -> list[Record]:
    if threads <= 1:
        results = [task() for task in tasks]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda task: task(), tasks))
    return [record for chunk in results for record in chunk]


def _sides(d: Dfa) -> dict[bool, Dfa]:
    d = determinize_minimize(d)
    return {True: d, False: complement(d)}


def check_usable(d: Dfa, lengths: Iterable[int]) -> None:
    """
    Raises:
        UnusableLanguageError: L lub jego dopełnienie puste na którejś długości
    """
    for label, side in _sides(d).items():
        for length in lengths:
            if count_length(side, length) == 0:
                what = "jezyk" if label else "dopelnienie jezyka"
                raise UnusableLanguageError(
                    f"Nieuzywalny na dlugosciach benchmarku: {what} pusty dla dlugosci {length}"
                )


def build_train(d: Dfa, seed: int, config: DatagenConfig) -> Split:
    """Losowanie ze zwracaniem: na każdą długość tyle samo pozytywnych i negatywnych."""
    kind = SplitKind.TRAIN
    lengths = config.lengths(kind)
    check_usable(d, lengths)
    quota = config.quota(kind)
    sides = _sides(d)

    def cell(length: int, label: bool) -> Callable[[], list[Record]]:
        def run() -> list[Record]:
            sampler = string_sampler(sides[label], length, make_rng(seed, SPLIT_CODES[kind], length, int(label)))
            return [("".join(sampler.sample_walk()), label) for _ in range(quota)]
        return run

    tasks = [cell(length, label) for length in lengths for label in (True, False)]
    split = Split(kind, SizeClass.LARGE, _run_cells(tasks, config.threads))
    logger.info(f"  Train: {len(split.records)} rekordow")
    return split


def build_dev(d: Dfa, train: Split, seed: int, config: DatagenConfig) -> Split:
    """Jak Train, ale z automatu z wyciętymi słowami Train tej samej etykiety."""
    kind = SplitKind.DEV
    quota = config.quota(kind)
    sides = _sides(d)

    def cell(length: int, label: bool) -> Callable[[], list[Record]]:
        def run() -> list[Record]:
            sampler = string_sampler(sides[label], length, make_rng(seed, SPLIT_CODES[kind], length, int(label)))
            sampler.carve_all(tuple(s) for s in train.strings_of(length, label))
            if sampler.remaining() <= 0:
                raise LanguageExhaustedError(
                    f"Dev: brak slow dlugosci {length} po wycieciu zbioru Train"
                )
            return [("".join(sampler.sample_walk()), label) for _ in range(quota)]
        return run

    tasks = [cell(length, label) for length in config.lengths(kind) for label in (True, False)]
    split = Split(kind, SizeClass.LARGE, _run_cells(tasks, config.threads))
    logger.info(f"  Dev: {len(split.records)} rekordow")
    return split


def build_random_test(
    d: Dfa,
    exclude: Iterable[Split],
    kind: SplitKind,
    seed: int,
    config: DatagenConfig,
) -> Split:
    """
    Losowanie bez zwracania przez wycinanie (SR albo LR).

    Args:
        d: Automat języka
        exclude: Zbiory, których słowa są wycięte z góry (Train, Dev)
        kind: SR albo LR
        seed: Ziarno
        config: Parametry generatora
    """
    if kind not in (SplitKind.SR, SplitKind.LR):
        raise ValueError(f"build_random_test obsluguje SR i LR, nie {kind.value}")
    exclude = list(exclude)
    lengths = config.lengths(kind)
    check_usable(d, lengths)
    quota = config.quota(kind)
    sides = _sides(d)

    def cell(length: int, label: bool) -> Callable[[], list[Record]]:
        def run() -> list[Record]:
            sampler = string_sampler(sides[label], length, make_rng(seed, SPLIT_CODES[kind], length, int(label)))
            for split in exclude:
                sampler.carve_all(tuple(s) for s in split.strings_of(length, label))
            if sampler.remaining() < quota:
                raise LanguageExhaustedError(
                    f"{kind.value}: za malo slow dlugosci {length} "
                    f"({sampler.remaining()} < {quota})"
                )
            out = []
            for _ in range(quota):
                path = sampler.sample_walk()
                sampler.carve(path)
                out.append(("".join(path), label))
            return out
        return run

    tasks = [cell(length, label) for length in lengths for label in (True, False)]
    split = Split(kind, SizeClass.LARGE, _run_cells(tasks, config.threads))
    logger.info(f"  {kind.value}: {len(split.records)} rekordow")
    return split


def build_adversarial_test(
    d: Dfa,
    exclude: Iterable[Split],
    kind: SplitKind,
    seed: int,
    config: DatagenConfig,
) -> Split:
    """
    Unikalne pary (x, y) o odległości edycyjnej 1 z A ∘ T ∘ C (SA albo LA).

    Strona A wyklucza pozytywne słowa zbiorów `exclude`, strona C negatywne.
    """
    if kind not in (SplitKind.SA, SplitKind.LA):
        raise ValueError(f"build_adversarial_test obsluguje SA i LA, nie {kind.value}")
    exclude = list(exclude)
    positives = {s for split in exclude for s in split.positives}
    negatives = {s for split in exclude for s in split.negatives}
    quota = config.quota(kind)
    sides = _sides(d)

    def cell(length: int) -> Callable[[], list[Record]]:
        def run() -> list[Record]:
            graph = EditPairGraph(
                sides[True],
                sides[False],
                length,
                sorted(s for s in positives if len(s) == length),
                sorted(s for s in negatives if abs(len(s) - length) <= 1),
            )
            sampler = SamplerState(graph, make_rng(seed, SPLIT_CODES[kind], length, PAIRS))
            if sampler.remaining() < quota:
                raise LanguageExhaustedError(
                    f"{kind.value}: za malo par dlugosci {length} "
                    f"({sampler.remaining()} < {quota}); jezyk nie ma granicy na tej dlugosci"
                )
            out: list[Record] = []
            for _ in range(quota):
                path = sampler.sample_walk()
                sampler.carve(path)
                x, y = pair_of(path)
                out += [(x, True), (y, False)]
            return out
        return run

    tasks = [cell(length) for length in config.lengths(kind)]
    split = Split(kind, SizeClass.LARGE, _run_cells(tasks, config.threads))
    logger.info(f"  {kind.value}: {len(split.records) // 2} par")
    return split


def downsample_nested(
    large: Split, seed: int, config: DatagenConfig, complemented: bool = False
) -> tuple[Split, Split]:
    """
    Mid ⊂ Large i Small ⊂ Mid z zachowaniem proporcji na (długość, etykietę);
    w SA/LA pary wybierane są w całości. Kolejność rekordów jak w Large.
    W paczce dopełnienia pary grupuje długość drugiego (negatywnego) słowa.
    """
    kind = large.kind
    groups: dict[tuple[int, int], list[list[Record]]] = defaultdict(list)
    if kind.is_adversarial:
        anchor = 1 if complemented else 0
        for x, y in large.pairs():
            groups[(len((x, y)[anchor]), PAIRS)].append([(x, True), (y, False)])
    else:
        for record in large.records:
            groups[(len(record[0]), int(record[1]))].append([record])

    mid_quota = config.quota(kind, SizeClass.MID)
    small_quota = config.quota(kind, SizeClass.SMALL)
    mid_idx: dict[tuple[int, int], list[int]] = {}
    small_idx: dict[tuple[int, int], list[int]] = {}
    for key, units in groups.items():
        length, label = key
        rng = make_rng(seed, DOWNSAMPLE_OFFSET + SPLIT_CODES[kind], length, label)
        chosen = sorted(rng.choice(len(units), size=min(mid_quota, len(units)), replace=False).tolist())
        mid_idx[key] = chosen
        inner = rng.choice(len(chosen), size=min(small_quota, len(chosen)), replace=False)
        small_idx[key] = sorted(chosen[i] for i in inner.tolist())

    def collect(index: dict[tuple[int, int], list[int]], size: SizeClass) -> Split:
        records: list[Record] = []
        for key in groups:
            for i in index[key]:
                records.extend(groups[key][i])
        return Split(kind, size, records)

    return collect(mid_idx, SizeClass.MID), collect(small_idx, SizeClass.SMALL)


def histogram(split: Split) -> Counter:
    """Liczność rekordów na (długość, etykietę)."""
    return Counter((len(s), label) for s, label in split.records)
