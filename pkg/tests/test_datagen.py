"""
Testy generatora paczek danych (src/datagen/, src/core/orchestrator.py).

Paczki generowane są w małej konfiguracji: długości 8-9 i 11-12, Large = 400.
"""

import copy
import json

import pytest

from src.automata.alphabet import Alphabet, alphabet_prefix
from src.automata.dfa import accepts, complement, universal_language
from src.core.errors import FormatError, UnusableLanguageError
from src.core.orchestrator import GenerationStatus, generate_language_bundle
from src.datagen.bundle import (
    MANIFEST_FILE,
    complement_bundle,
    load_bundle,
    parse_split,
    serialize_split,
    write_bundle,
)
from src.datagen.splits import Split, build_random_test, check_usable, downsample_nested, histogram
from src.datagen.verify import levenshtein, verify_bundle
from src.schemas import DatagenConfig, SizeClass, SplitKind
from tests.conftest import compile_text

SEED = 7


def small_config(threads: int = 1) -> DatagenConfig:
    return DatagenConfig(short_lengths=(8, 9), long_lengths=(11, 12), large_size=400, threads=threads)


@pytest.fixture(scope="module")
def sl_language():
    return complement(compile_text('"aa"', alphabet_prefix(4)))


@pytest.fixture(scope="module")
def sl_result(sl_language):
    return generate_language_bundle(sl_language, "04.04.SL.2.0.0", SEED, small_config())


@pytest.fixture
def sl_bundle(sl_result):
    """Kopia paczki, którą test może psuć."""
    return copy.deepcopy(sl_result.bundle)


class TestGeneration:
    """Testy pełnego przebiegu generowania."""

    def test_success(self, sl_result):
        """Test statusu i kompletu 18 zbiorów."""
        assert sl_result.status == GenerationStatus.SUCCESS
        assert not sl_result.via_complement
        assert len(sl_result.bundle.splits) == 18
        assert len(sl_result.bundle.manifest.files) == 18

    def test_verification_passes(self, sl_result, sl_language):
        """Test że świeża paczka przechodzi wszystkie sprawdzenia."""
        report = verify_bundle(sl_result.bundle, sl_language)
        assert report.passed, report.failed_checks()
        assert len(report.checks) == 9

    def test_sizes(self, sl_result):
        """Test liczności: Large 400, Mid 40, Small 4 rekordy."""
        bundle = sl_result.bundle
        for kind in SplitKind:
            assert len(bundle.split(kind).records) == 400
            assert len(bundle.split(kind, SizeClass.MID).records) == 40
            assert len(bundle.split(kind, SizeClass.SMALL).records) == 4

    def test_per_length_balance(self, sl_result):
        """Test że Train ma 100 słów na (długość, etykietę)."""
        counts = histogram(sl_result.bundle.split(SplitKind.TRAIN))
        assert counts == {(8, True): 100, (8, False): 100, (9, True): 100, (9, False): 100}

    def test_labels_match_language(self, sl_result, sl_language):
        """Test że etykiety zgadzają się z automatem."""
        for s, label in sl_result.bundle.split(SplitKind.LR).records:
            assert accepts(sl_language, s) == label

    def test_adversarial_pairs(self, sl_result, sl_language):
        """Test że pary SA mają odległość 1 i pozytywne słowo długości z zakresu."""
        pairs = sl_result.bundle.split(SplitKind.SA).pairs()
        assert len(pairs) == 200
        for x, y in pairs:
            assert levenshtein(x, y) == 1
            assert len(x) in (8, 9)
            assert accepts(sl_language, x) and not accepts(sl_language, y)

    def test_to_dict(self, sl_result):
        """Test słownika wyniku dla CLI."""
        data = sl_result.to_dict()
        assert data["status"] == "success"
        assert data["files"]["Train_Large.tsv"]["records"] == 400
        assert len(data["files"]["SA_Small.tsv"]["sha256"]) == 64

    def test_deterministic_across_threads(self, sl_result, sl_language):
        """Test że liczba wątków nie zmienia bajtów paczki."""
        parallel = generate_language_bundle(sl_language, "04.04.SL.2.0.0", SEED, small_config(threads=2))
        assert parallel.bundle.manifest.files == sl_result.bundle.manifest.files

    def test_complement_class_generated_via_complement(self):
        """Test że coSL powstaje przez zamianę etykiet paczki dopełnienia."""
        language = compile_text('"aa"', alphabet_prefix(4))
        result = generate_language_bundle(language, "04.04.coSL.2.0.0", SEED, small_config())
        assert result.status == GenerationStatus.SUCCESS
        assert result.via_complement
        assert result.bundle.complemented
        report = verify_bundle(result.bundle, language)
        assert report.passed, report.failed_checks()

    def test_unusable_language(self):
        """Test że język bez słów długości 8 jest nieużywalny."""
        language = compile_text('word("ab")', alphabet_prefix(4))
        result = generate_language_bundle(language, "04.04.SL.2.0.0", SEED, small_config())
        assert result.status == GenerationStatus.UNUSABLE
        assert result.bundle is None
        assert "pusty" in result.error_message

    def test_exhausted_language(self):
        """Test że 55 słów długości 8 bez aa nad {a, b} nie wystarcza na SR."""
        language = complement(compile_text('"aa"', Alphabet.of("ab")))
        result = generate_language_bundle(language, "02.02.SL.2.0.0", SEED, small_config())
        assert result.status == GenerationStatus.EXHAUSTED

    def test_bad_name_is_error(self, sl_language):
        """Test że zła nazwa języka daje status ERROR."""
        result = generate_language_bundle(sl_language, "SL", SEED, small_config())
        assert result.status == GenerationStatus.ERROR
        assert result.finished_at is not None


class TestInjectedFaults:
    """Testy weryfikacji zepsutych paczek."""

    def test_flipped_label(self, sl_bundle, sl_language):
        """Test że odwrócona etykieta jest zgłaszana z numerem linii."""
        train = sl_bundle.split(SplitKind.TRAIN)
        s, label = train.records[2]
        train.records[2] = (s, not label)
        report = verify_bundle(sl_bundle, sl_language)
        membership = next(c for c in report.checks if c.name == "membership")
        assert not membership.passed
        assert membership.failure_count == 1
        assert membership.failures[0].startswith("Train_Large.tsv:3:")

    def test_test_string_in_train(self, sl_bundle, sl_language):
        """Test że słowo SR skopiowane do Train łamie rozłączność."""
        leaked = sl_bundle.split(SplitKind.SR).records[0]
        sl_bundle.split(SplitKind.TRAIN).records.append(leaked)
        report = verify_bundle(sl_bundle, sl_language)
        assert "test_disjoint" in report.failed_checks()
        assert "membership" not in report.failed_checks()

    def test_duplicate_pair(self, sl_bundle, sl_language):
        """Test że powtórzona para SA jest wykrywana."""
        sa = sl_bundle.split(SplitKind.SA)
        sa.records[2:4] = sa.records[0:2]
        assert "uniqueness" in verify_bundle(sl_bundle, sl_language).failed_checks()

    def test_swapped_pair_order(self, sl_bundle, sl_language):
        """Test że para musi zaczynać się od pozytywnego słowa."""
        sa = sl_bundle.split(SplitKind.SA)
        sa.records[0], sa.records[1] = sa.records[1], sa.records[0]
        assert "pairs" in verify_bundle(sl_bundle, sl_language).failed_checks()

    def test_broken_nesting(self, sl_bundle, sl_language):
        """Test że rekord Small spoza Mid łamie zagnieżdżenie."""
        small = sl_bundle.split(SplitKind.DEV, SizeClass.SMALL)
        small.records[0] = sl_bundle.split(SplitKind.SR).records[0]
        assert "nesting" in verify_bundle(sl_bundle, sl_language).failed_checks()


class TestComplement:
    """Testy paczek dopełnienia."""

    def test_double_complement_is_identity(self, sl_result):
        """Test że podwójne dopełnienie odtwarza paczkę co do bajtu."""
        bundle = sl_result.bundle
        twice = complement_bundle(complement_bundle(bundle))
        for key, split in bundle.splits.items():
            assert twice.splits[key].records == split.records
        assert twice.manifest == bundle.manifest

    def test_complement_swaps_labels(self, sl_result):
        """Test zamiany etykiet i odwrócenia par."""
        flipped = complement_bundle(sl_result.bundle)
        original = sl_result.bundle.split(SplitKind.TRAIN)
        assert sorted(flipped.split(SplitKind.TRAIN).positives) == sorted(original.negatives)
        x, y = sl_result.bundle.split(SplitKind.SA).pairs()[0]
        assert flipped.split(SplitKind.SA).pairs()[0] == (y, x)

    def test_complement_verifies_against_complement_language(self, sl_result, sl_language):
        """Test że paczka dopełnienia przechodzi weryfikację względem ¬L."""
        flipped = complement_bundle(sl_result.bundle, name="04.04.coSL.2.0.0")
        report = verify_bundle(flipped, complement(sl_language))
        assert report.passed, report.failed_checks()

    def test_complement_class_matches_flipped_bundle(self, sl_result):
        """Test że paczka coSL z tym samym seedem jest bajtowo równa odwróconej paczce SL."""
        co_result = generate_language_bundle(
            compile_text('"aa"', alphabet_prefix(4)), "04.04.coSL.2.0.0", SEED, small_config()
        )
        assert co_result.status == GenerationStatus.SUCCESS
        assert co_result.via_complement
        flipped = complement_bundle(sl_result.bundle, name="04.04.coSL.2.0.0")
        assert co_result.bundle.splits.keys() == flipped.splits.keys()
        for key, split in flipped.splits.items():
            assert serialize_split(co_result.bundle.splits[key]) == serialize_split(split), key
        assert co_result.bundle.manifest == flipped.manifest


class TestBundleFiles:
    """Testy zapisu i odczytu paczki."""

    def test_write_and_load(self, sl_result, sl_language, tmp_path):
        """Test zapisu na dysk, odczytu i weryfikacji sum kontrolnych."""
        directory = write_bundle(copy.deepcopy(sl_result.bundle), tmp_path)
        assert directory == tmp_path / "04.04.SL.2.0.0"
        assert len(list(directory.glob("*.tsv"))) == 18
        manifest = json.loads((directory / MANIFEST_FILE).read_text(encoding="utf-8"))
        assert manifest["seed"] == SEED
        assert "created_at" not in manifest

        loaded = load_bundle(directory)
        assert loaded.split(SplitKind.LA).records == sl_result.bundle.split(SplitKind.LA).records
        assert verify_bundle(loaded, sl_language).passed

    def test_tampered_file(self, sl_result, sl_language, tmp_path):
        """Test że zmiana pliku na dysku psuje sumę kontrolną."""
        directory = write_bundle(copy.deepcopy(sl_result.bundle), tmp_path)
        path = directory / "Dev_Small.tsv"
        path.write_bytes(path.read_bytes() + b"\n")
        report = verify_bundle(load_bundle(directory), sl_language)
        assert report.failed_checks() == ["checksums"]

    def test_serialized_format(self):
        """Test formatu linii TSV."""
        split = Split(SplitKind.TRAIN, SizeClass.LARGE, [("ab", True), ("ba", False)])
        assert serialize_split(split) == b"ab\tTRUE\nba\tFALSE\n"

    def test_parse_error_has_line(self):
        """Test że zła linia daje FormatError z plikiem i numerem linii."""
        with pytest.raises(FormatError) as exc_info:
            parse_split("ab\tTRUE\nba\tMAYBE\n", SplitKind.TRAIN, SizeClass.LARGE, "Train_Large.tsv")
        assert "Train_Large.tsv:2" in str(exc_info.value)

    def test_missing_manifest(self, tmp_path):
        """Test że katalog bez manifestu to FormatError."""
        with pytest.raises(FormatError):
            load_bundle(tmp_path)


class TestSplits:
    """Testy pojedynczych zbiorów."""

    def test_downsample_quotas_and_nesting(self, sl_result):
        """Test że Mid ma 10, a Small 1 rekord na komórkę i Small ⊂ Mid."""
        large = sl_result.bundle.split(SplitKind.SR)
        mid, small = downsample_nested(large, SEED, small_config())
        assert set(histogram(mid).values()) == {10}
        assert set(histogram(small).values()) == {1}
        assert set(small.records) <= set(mid.records) <= set(large.records)

    def test_downsample_keeps_pairs(self, sl_result):
        """Test że próbki SA zawierają całe pary."""
        large = sl_result.bundle.split(SplitKind.SA)
        mid, _ = downsample_nested(large, SEED, small_config())
        assert set(mid.pairs()) <= set(large.pairs())
        assert len(mid.pairs()) == 20

    def test_check_usable(self, sigma4):
        """Test że Σ* (puste dopełnienie) jest nieużywalny."""
        with pytest.raises(UnusableLanguageError):
            check_usable(universal_language(sigma4), [8])

    def test_random_test_rejects_adversarial_kind(self, sl_language):
        """Test że build_random_test obsługuje tylko SR i LR."""
        with pytest.raises(ValueError):
            build_random_test(sl_language, [], SplitKind.SA, SEED, small_config())
