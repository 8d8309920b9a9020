"""
Weryfikacja paczki danych. Tylko odczyt; każde sprawdzenie daje wpis
raportu zamiast wyjątku.
"""

import logging
from collections import Counter
from collections.abc import Callable, Iterable

from src.automata.dfa import Dfa, accepts, determinize_minimize
from src.core.errors import AlphabetError
from src.datagen.bundle import DatasetBundle, serialize_split, sha256_hex
from src.datagen.splits import Split
from src.schemas import CheckResult, SizeClass, SplitKind, VerificationReport

logger = logging.getLogger("subreg-forge")

MAX_REPORTED = 20
TEST_KINDS = (SplitKind.SR, SplitKind.SA, SplitKind.LR, SplitKind.LA)


def levenshtein(x: str, y: str) -> int:
    """Odległość edycyjna (wstawienie, usunięcie, zamiana), programowanie dynamiczne."""
    previous = list(range(len(y) + 1))
    for i, a in enumerate(x, start=1):
        current = [i]
        for j, b in enumerate(y, start=1):
            current.append(min(previous[j] + 1, current[j - 1] + 1, previous[j - 1] + (a != b)))
        previous = current
    return previous[-1]


class _Check:
    def __init__(self, name: str):
        self.name = name
        self.checked = 0
        self.failures: list[str] = []
        self.failure_count = 0

    def tick(self, ok: bool, message: Callable[[], str]) -> None:
        self.checked += 1
        if not ok:
            self.failure_count += 1
            if len(self.failures) < MAX_REPORTED:
                self.failures.append(message())

    def result(self) -> CheckResult:
        return CheckResult(
            name=self.name,
            passed=self.failure_count == 0,
            checked=self.checked,
            failures=self.failures,
            failure_count=self.failure_count,
        )


def _strings(splits: Iterable[Split]) -> set[str]:
    return {s for split in splits for s, _ in split.records}


def _check_balance(bundle: DatasetBundle) -> CheckResult:
    check = _Check("balance")
    for split in bundle.ordered():
        pos, neg = len(split.positives), len(split.negatives)
        check.tick(pos == neg, lambda: f"{split.file_name}: {pos} pozytywnych, {neg} negatywnych")
    return check.result()


def _check_per_length(bundle: DatasetBundle) -> CheckResult:
    check = _Check("per_length")
    config = bundle.config
    for split in bundle.ordered():
        quota = config.quota(split.kind, split.size)
        counts = Counter((len(s), label) for s, label in split.records)
        if split.kind.is_adversarial:
            # długość ℓ ma słowo z A; po dopełnieniu to drugie słowo pary
            anchor = 1 if bundle.complemented else 0
            counts = Counter(len(pair[anchor]) for pair in split.pairs())
            cells = [(length, length) for length in config.lengths(split.kind)]
        else:
            cells = [((length, label), length) for length in config.lengths(split.kind) for label in (True, False)]
        for key, length in cells:
            got = counts.get(key, 0)
            check.tick(got == quota, lambda: f"{split.file_name}: dlugosc {length}: {got} zamiast {quota}")
        expected = {key for key, _ in cells}
        for key in counts.keys() - expected:
            check.tick(False, lambda: f"{split.file_name}: rekordy spoza zakresu dlugosci ({key})")
    return check.result()


def _member(d: Dfa, s: str) -> bool | None:
    try:
        return accepts(d, s)
    except AlphabetError:
        return None


def _check_membership(bundle: DatasetBundle, d: Dfa) -> CheckResult:
    check = _Check("membership")
    for split in bundle.ordered():
        for lineno, (s, label) in enumerate(split.records, start=1):
            check.tick(
                _member(d, s) == label,
                lambda: f"{split.file_name}:{lineno}: etykieta {label} niezgodna z automatem",
            )
    return check.result()


def _check_train_dev(bundle: DatasetBundle) -> CheckResult:
    check = _Check("train_dev_disjoint")
    train = _strings(s for (kind, _), s in bundle.splits.items() if kind == SplitKind.TRAIN)
    for (kind, _), split in bundle.splits.items():
        if kind != SplitKind.DEV:
            continue
        for lineno, (s, _) in enumerate(split.records, start=1):
            check.tick(s not in train, lambda: f"{split.file_name}:{lineno}: {s!r} wystepuje w Train")
    return check.result()


def _check_test_disjoint(bundle: DatasetBundle) -> CheckResult:
    check = _Check("test_disjoint")
    seen = _strings(s for (kind, _), s in bundle.splits.items() if kind in (SplitKind.TRAIN, SplitKind.DEV))
    for split in bundle.ordered():
        if split.kind not in TEST_KINDS:
            continue
        for lineno, (s, _) in enumerate(split.records, start=1):
            check.tick(s not in seen, lambda: f"{split.file_name}:{lineno}: {s!r} wystepuje w Train/Dev")
    return check.result()


def _check_uniqueness(bundle: DatasetBundle) -> CheckResult:
    check = _Check("uniqueness")
    for split in bundle.ordered():
        if split.kind not in TEST_KINDS:
            continue
        units = split.pairs() if split.kind.is_adversarial else [s for s, _ in split.records]
        for unit, n in Counter(units).items():
            check.tick(n == 1, lambda: f"{split.file_name}: {unit!r} powtorzone {n} razy")
    return check.result()


def _check_pairs(bundle: DatasetBundle) -> CheckResult:
    check = _Check("pairs")
    for split in bundle.ordered():
        if not split.kind.is_adversarial:
            continue
        if len(split.records) % 2:
            check.tick(False, lambda: f"{split.file_name}: nieparzysta liczba linii")
            continue
        for i in range(0, len(split.records), 2):
            (x, lx), (y, ly) = split.records[i], split.records[i + 1]
            check.tick(lx and not ly, lambda: f"{split.file_name}:{i + 1}: para nie zaczyna sie od pozytywnego")
            distance = levenshtein(x, y)
            check.tick(distance == 1, lambda: f"{split.file_name}:{i + 1}: odleglosc edycyjna {distance}")
    return check.result()


def _check_nesting(bundle: DatasetBundle) -> CheckResult:
    check = _Check("nesting")
    for kind in SplitKind:
        chain = [bundle.splits.get((kind, size)) for size in (SizeClass.SMALL, SizeClass.MID, SizeClass.LARGE)]
        for inner, outer in zip(chain, chain[1:]):
            if inner is None or outer is None:
                continue
            missing = Counter(inner.records) - Counter(outer.records)
            check.tick(not missing, lambda: f"{inner.file_name} nie zawiera sie w {outer.file_name}")
    return check.result()


def _check_checksums(bundle: DatasetBundle) -> CheckResult:
    check = _Check("checksums")
    if bundle.manifest is None:
        return check.result()
    by_file = {split.file_name: split for split in bundle.ordered()}
    for entry in bundle.manifest.files:
        split = by_file.get(entry.file)
        if split is None:
            check.tick(False, lambda: f"{entry.file}: brak zbioru")
            continue
        actual = bundle.file_digests.get(entry.file) or sha256_hex(serialize_split(split))
        check.tick(actual == entry.sha256, lambda: f"{entry.file}: suma SHA-256 niezgodna z manifestem")
        check.tick(
            entry.records == len(split.records) and entry.positives == len(split.positives),
            lambda: f"{entry.file}: liczby rekordow niezgodne z manifestem",
        )
    return check.result()


def verify_bundle(bundle: DatasetBundle, d: Dfa) -> VerificationReport:
    """
    Sprawdza wszystkie własności paczki względem automatu języka.

    Args:
        bundle: Paczka (z dysku albo świeżo wygenerowana)
        d: Automat języka, którego etykiety opisuje paczka

    Returns:
        VerificationReport: Po jednym wpisie na sprawdzenie
    """
    d = determinize_minimize(d)
    checks = [
        _check_balance(bundle),
        _check_per_length(bundle),
        _check_membership(bundle, d),
        _check_train_dev(bundle),
        _check_test_disjoint(bundle),
        _check_uniqueness(bundle),
        _check_pairs(bundle),
        _check_nesting(bundle),
        _check_checksums(bundle),
    ]
    report = VerificationReport(bundle=bundle.name, checks=checks)
    for c in checks:
        status = "OK" if c.passed else f"BLAD ({c.failure_count})"
        logger.info(f"  {c.name}: {status} [{c.checked}]")
    return report
