"""
Testy dla automatów (src/automata/): alfabety, Dfa, operacje boolowskie, AT&T.
"""

from itertools import product

import pytest

from src.automata.alphabet import Alphabet, alphabet_prefix
from src.automata.att import read_acceptor, read_transducer, write_att
from src.automata.dfa import (
    NfaBuilder,
    accepts,
    complement,
    complete,
    concat,
    count_length,
    determinize_minimize,
    distinguishing_word,
    empty_language,
    enumerate_words,
    from_words,
    intersection,
    is_empty,
    is_subset,
    language_equal,
    sigma_length,
    star,
    trim,
    union,
    universal_language,
)
from src.automata.fst import edit1_transducer
from src.core.errors import AlphabetError, FormatError
from tests.conftest import compile_text


def words_over(alphabet: Alphabet, length: int) -> list[str]:
    return ["".join(p) for p in product(alphabet.symbols, repeat=length)]


class TestAlphabet:
    """Testy dla alfabetów kanonicznych."""

    def test_prefix_four(self):
        """Test że 4 daje {a,b,c,d}."""
        assert alphabet_prefix(4).symbols == ("a", "b", "c", "d")

    def test_prefix_full(self):
        """Test pełnej, 64-znakowej sekwencji."""
        full = alphabet_prefix(64)
        assert len(full) == 64
        assert str(full).endswith("úùǔ")

    def test_prefix_out_of_range(self):
        """Test że 0 i 65 są odrzucane."""
        with pytest.raises(AlphabetError):
            alphabet_prefix(0)
        with pytest.raises(AlphabetError):
            alphabet_prefix(65)

    def test_duplicate_symbols(self):
        """Test że powtórzone symbole są błędem."""
        with pytest.raises(AlphabetError):
            Alphabet.of("aba")

    def test_encode_foreign_symbol(self):
        """Test że symbol spoza alfabetu daje AlphabetError (też ValueError)."""
        with pytest.raises(ValueError):
            Alphabet.of("ab").encode("abc")


class TestDeterminizeMinimize:
    """Testy dla determinizacji i minimalizacji."""

    def test_substring_aa_has_three_states(self, substring_aa):
        """Test że Σ*aaΣ* nad 5 symbolami ma 3 stany."""
        assert substring_aa.num_states == 3

    def test_subsequence_aa_has_three_states(self, subsequence_aa):
        """Test że podciąg aa daje 3 stany."""
        assert subsequence_aa.num_states == 3

    def test_universal_single_state(self, sigma4):
        """Test że Σ* to jeden stan akceptujący."""
        d = determinize_minimize(universal_language(sigma4))
        assert d.num_states == 1
        assert d.finals == frozenset({0})

    def test_canonical_numbering_is_stable(self, sigma5):
        """Test że izomorficzne automaty dają identyczny wynik."""
        builder = NfaBuilder(sigma5, 3)
        for sym in sigma5:
            builder.add_arc(2, sym, 2)
            builder.add_arc(1, sym, 1)
        builder.add_arc(2, "a", 0)
        builder.add_arc(0, "a", 1)
        nfa = builder.build(starts=[2], finals=[1])
        assert determinize_minimize(nfa) == compile_text('"aa"', sigma5)

    def test_epsilon_arcs(self, ab):
        """Test ε-przejść: a ε b* akceptuje a oraz abbb."""
        builder = NfaBuilder(ab, 3)
        builder.add_arc(0, "a", 1)
        builder.add_arc(1, "", 2)
        builder.add_arc(2, "b", 2)
        d = determinize_minimize(builder.build(starts=[0], finals=[2]))
        assert accepts(d, "a")
        assert accepts(d, "abbb")
        assert not accepts(d, "b")

    def test_empty_nfa(self, ab):
        """Test że automat bez stanów akceptujących daje ∅."""
        builder = NfaBuilder(ab, 2)
        builder.add_arc(0, "a", 1)
        d = determinize_minimize(builder.build(starts=[0], finals=[]))
        assert is_empty(d)
        assert d == empty_language(ab)


class TestBooleanOps:
    """Testy dla operacji boolowskich."""

    def test_double_complement(self, substring_aa):
        """Test że dopełnienie jest inwolucją."""
        assert language_equal(complement(complement(substring_aa)), substring_aa)

    def test_intersection_with_sigma2(self, substring_aa, sigma5):
        """Test że przecięcie z Σ² daje {aa}."""
        d = intersection(substring_aa, sigma_length(sigma5, 2))
        assert list(enumerate_words(d, 3)) == ["aa"]

    def test_union_with_complement(self, substring_aa, sigma5):
        """Test że L ∪ ¬L = Σ*."""
        d = union(substring_aa, complement(substring_aa))
        assert language_equal(d, universal_language(sigma5))

    def test_alphabet_mismatch(self, substring_aa, sigma4):
        """Test że operacje na różnych alfabetach są błędem."""
        with pytest.raises(AlphabetError):
            intersection(substring_aa, universal_language(sigma4))

    def test_complete_adds_sink(self, ab):
        """Test że dopełnienie funkcji przejścia dodaje jeden stan."""
        d = from_words(["ab"], ab)
        assert complete(d).num_states == d.num_states + 1
        assert complete(d).is_complete

    def test_trim_keeps_language(self, substring_aa):
        """Test że trim nie zmienia języka."""
        assert language_equal(trim(substring_aa), substring_aa)


class TestConcatStar:
    """Testy dla konkatenacji i gwiazdki."""

    def test_concat_universal(self, sigma4):
        """Test że Σ*·Σ* = Σ*."""
        u = universal_language(sigma4)
        assert language_equal(concat(u, u), u)

    def test_concat_empty_annihilates(self, substring_aa, sigma5):
        """Test że ∅·A = ∅."""
        assert is_empty(concat(empty_language(sigma5), substring_aa))

    def test_concat_against_split_search(self, sigma4):
        """Test (słowa kończące się na a)·¬C(bc) przez przeszukanie wszystkich podziałów."""
        left = compile_text('"a"$', sigma4)
        right = complement(compile_text('"bc"', sigma4))
        d = concat(left, right)
        for length in range(5):
            for w in words_over(sigma4, length):
                expected = any(
                    accepts(left, w[:i]) and accepts(right, w[i:]) for i in range(len(w) + 1)
                )
                assert accepts(d, w) == expected, w
        assert accepts(d, "a")

    def test_star_of_word(self, ab):
        """Test że (ab)* akceptuje ε, ab, abab i odrzuca aba."""
        d = star(from_words(["ab"], ab))
        assert accepts(d, "")
        assert accepts(d, "abab")
        assert not accepts(d, "aba")


class TestQueries:
    """Testy dla zapytań o język."""

    def test_accepts_examples(self, substring_aa):
        """Test przynależności caab i aba."""
        assert accepts(substring_aa, "caab")
        assert not accepts(substring_aa, "aba")

    def test_empty_word_follows_start(self, substring_aa, sigma5):
        """Test że ε należy do języka iff start jest akceptujący."""
        assert not accepts(substring_aa, "")
        assert accepts(universal_language(sigma5), "")

    def test_count_length_substring_aa(self, substring_aa, sigma5):
        """Test liczby słów długości 3 z aa (9) przeciw wyliczeniu."""
        assert count_length(substring_aa, 3) == 9
        brute = sum("aa" in w for w in words_over(sigma5, 3))
        assert brute == 9

    def test_count_length_universal(self, sigma4):
        """Test że |Σ^2| = 16 dla 4 symboli."""
        assert count_length(universal_language(sigma4), 2) == 16

    def test_count_length_empty(self, sigma4):
        """Test że ∅ ma 0 słów."""
        assert count_length(empty_language(sigma4), 5) == 0

    def test_count_is_exact_for_large_numbers(self):
        """Test że liczby przekraczające 64 bity są dokładne."""
        full = alphabet_prefix(64)
        assert count_length(universal_language(full), 29) == 64 ** 29

    def test_distinguishing_word(self, substring_aa, subsequence_aa):
        """Test świadka różnicy substring aa i podciągu aa."""
        assert not language_equal(substring_aa, subsequence_aa)
        assert distinguishing_word(substring_aa, subsequence_aa) == "aba"

    def test_minimal_equals_original(self, substring_aa):
        """Test że minimalizacja zachowuje język."""
        assert language_equal(substring_aa, determinize_minimize(substring_aa))

    def test_subset(self, substring_aa, subsequence_aa):
        """Test że C(aa) ⊆ P(aa)."""
        assert is_subset(substring_aa, subsequence_aa)
        assert not is_subset(subsequence_aa, substring_aa)

    def test_empty_equals_complement_universal(self, sigma4):
        """Test że ∅ = ¬Σ*."""
        assert language_equal(empty_language(sigma4), complement(universal_language(sigma4)))


class TestAtt:
    """Testy dla formatu AT&T."""

    def test_acceptor_round_trip(self, substring_aa, tmp_path):
        """Test zapisu i odczytu akceptora z tablicą symboli."""
        path = write_att(substring_aa, tmp_path / "substring_aa.att")
        assert (tmp_path / "substring_aa.syms").exists()
        assert read_acceptor(path) == substring_aa

    def test_symbol_table_reserves_epsilon(self, substring_aa, tmp_path):
        """Test że id 0 to @0@."""
        write_att(substring_aa, tmp_path / "m.att")
        first = (tmp_path / "m.syms").read_text(encoding="utf-8").splitlines()[0]
        assert first == "@0@\t0"

    def test_transducer_round_trip(self, ab, tmp_path):
        """Test zapisu i odczytu transduktora edycyjnego."""
        t = edit1_transducer(ab)
        path = write_att(t, tmp_path / "edit.att")
        loaded = read_transducer(path)
        assert loaded.num_states == t.num_states
        assert loaded.arc_count() == t.arc_count()

    def test_malformed_line(self, tmp_path, ab):
        """Test że zła liczba pól daje FormatError z numerem linii."""
        path = tmp_path / "bad.att"
        path.write_text("0\t1\n", encoding="utf-8")
        (tmp_path / "bad.syms").write_text("@0@\t0\na\t1\nb\t2\n", encoding="utf-8")
        with pytest.raises(FormatError) as exc_info:
            read_acceptor(path)
        assert "bad.att:1" in str(exc_info.value)

    def test_missing_symbol_table(self, tmp_path):
        """Test że brak .syms to FormatError."""
        path = tmp_path / "x.att"
        path.write_text("0\t1\ta\n1\n", encoding="utf-8")
        with pytest.raises(FormatError):
            read_acceptor(path)
