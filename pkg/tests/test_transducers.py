"""
Testy dla transduktorów (src/automata/fst.py).
"""

import pytest

from src.automata.alphabet import Alphabet
from src.automata.dfa import enumerate_words, from_words, language_equal, universal_language
from src.automata.fst import (
    Direction,
    accepts_pair,
    apply,
    compose,
    domain,
    edit1_transducer,
    insdel_transducer,
    is_empty_relation,
    tier_projection,
    transduce,
)
from src.core.errors import AlphabetError
from src.datagen.verify import levenshtein
from tests.conftest import compile_text


class TestEditTransducer:
    """Testy dla relacji odległości edycyjnej 1."""

    def test_neighbours_of_ab(self, ab):
        """Test wszystkich sąsiadów ab nad {a, b}."""
        assert transduce(edit1_transducer(ab), "ab") == {
            "aa", "bb", "a", "b", "aab", "bab", "abb", "aba",
        }

    def test_neighbours_have_distance_one(self, sigma4):
        """Test że każdy obraz jest w odległości dokładnie 1."""
        for y in transduce(edit1_transducer(sigma4), "abca"):
            assert levenshtein("abca", y) == 1

    def test_preimage_of_aa(self, ab):
        """Test przeciwobrazu {aa}."""
        pre = apply(edit1_transducer(ab), from_words(["aa"], ab), Direction.PREIMAGE)
        assert set(enumerate_words(pre, 4)) == {"a", "ab", "ba", "aaa", "aab", "aba", "baa"}

    def test_accepts_pair(self, ab):
        """Test przynależności par."""
        t = edit1_transducer(ab)
        assert accepts_pair(t, "ab", "abb")
        assert not accepts_pair(t, "ab", "ba")
        assert not accepts_pair(t, "ab", "ab")

    def test_domain_is_universal(self, sigma4):
        """Test że każde słowo ma sąsiada (przez wstawienie)."""
        assert language_equal(domain(edit1_transducer(sigma4)), universal_language(sigma4))

    def test_empty_alphabet_rejected(self):
        """Test że pusty alfabet to błąd."""
        with pytest.raises(AlphabetError):
            edit1_transducer(Alphabet(()))


class TestInsertDelete:
    """Testy dla transduktorów wstawiania i usuwania symbolu."""

    def test_insert(self, ab):
        """Test wstawienia a do b."""
        assert transduce(insdel_transducer("insert", "a", ab), "b") == {"ab", "ba"}

    def test_delete(self, ab):
        """Test usunięcia a z aba."""
        assert transduce(insdel_transducer("delete", "a", ab), "aba") == {"ba", "ab"}

    def test_delete_domain(self, ab):
        """Test że dziedzina usuwania a to słowa zawierające a."""
        assert language_equal(domain(insdel_transducer("delete", "a", ab)), compile_text('"a"', ab))

    def test_empty_relation(self, ab):
        """Test że usuwanie b z {a} daje relację pustą."""
        t = compose(from_words(["a"], ab), insdel_transducer("delete", "b", ab))
        assert is_empty_relation(t)

    def test_unknown_kind(self, ab):
        """Test nieznanego rodzaju."""
        with pytest.raises(ValueError):
            insdel_transducer("swap", "a", ab)


class TestTierProjection:
    """Testy dla projekcji na warstwę."""

    def test_projection_example(self, sigma5):
        """Test że daceba rzutuje się na aea dla warstwy {a, e}."""
        assert transduce(tier_projection(sigma5, "ae"), "daceba") == {"aea"}

    def test_projection_erases_everything(self, sigma5):
        """Test słowa bez symboli warstwy."""
        assert transduce(tier_projection(sigma5, "ae"), "bcd") == {""}

    def test_compose_alphabet_mismatch(self, sigma5):
        """Test że łańcuch alfabetów musi się zgadzać."""
        with pytest.raises(AlphabetError):
            compose(tier_projection(sigma5, "ae"), edit1_transducer(sigma5))

    def test_image_of_language(self, sigma5):
        """Test obrazu C(aa) przez projekcję: wszystkie słowa warstwy z aa."""
        image = apply(tier_projection(sigma5, "ae"), compile_text('"aa"', sigma5), "image")
        assert language_equal(image, compile_text('"aa"', image.alphabet))

    def test_compose_with_acceptor_in_middle(self, sigma5):
        """Test że akceptor na drugiej pozycji kompozycji działa jak tożsamość."""
        pi = tier_projection(sigma5, "ae")
        composed = compose(pi, from_words(["aa"], pi.output_alphabet))
        assert accepts_pair(composed, "bacad", "aa")
        assert not accepts_pair(composed, "bad", "a")
        assert not accepts_pair(composed, "aea", "aea")

    def test_preimage_through_projection(self, sigma5):
        """Test że przeciwobraz C(aa) przez projekcję to słowa z aa na warstwie."""
        pi = tier_projection(sigma5, "ae")
        pre = apply(pi, compile_text('"aa"', pi.output_alphabet), Direction.PREIMAGE)
        assert language_equal(pre, compile_text('[T:ae]"aa"', sigma5))
