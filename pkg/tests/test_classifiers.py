"""
Testy dla hierarchii klas i decydentów (src/classifiers/).
"""

import pytest

from src.automata.alphabet import alphabet_prefix
from src.automata.dfa import complement, empty_language, universal_language
from src.classifiers.deciders import (
    LanguageAnalysis,
    classify,
    decide_class,
    is_strictly_local,
    is_subsequence_closed,
    language_stats,
    membership_vector,
    neutral_symbols,
    summarize,
)
from src.classifiers.hierarchy import (
    DEFAULT_HIERARCHY,
    Hierarchy,
    is_upward_closed,
    representative_of,
    upward_closure,
)
from src.schemas import ClassLabel
from tests.conftest import compile_text

C = ClassLabel


class TestHierarchy:
    """Testy dla DAG-u inkluzji klas."""

    def test_reachability(self):
        """Test że SL ⊊ LT ⊊ LTT ⊊ PLT ⊊ SF ⊊ Reg."""
        h = DEFAULT_HIERARCHY
        assert h.is_subclass(C.SL, C.LT)
        assert h.is_subclass(C.SL, C.Reg)
        assert h.is_subclass(C.coSL, C.TcoSL)
        assert not h.is_subclass(C.LT, C.SL)

    def test_zp_incomparable(self):
        """Test że Zp jest nieporównywalna z klasami poniżej SF."""
        for label in C:
            if label not in (C.Zp, C.Reg):
                assert not DEFAULT_HIERARCHY.comparable(C.Zp, label)

    def test_cycle_rejected(self):
        """Test że cykl w krawędziach jest błędem."""
        with pytest.raises(ValueError):
            Hierarchy(edges=((C.SL, C.LT), (C.LT, C.SL)))

    def test_upward_closure(self):
        """Test domknięcia w górę od SL."""
        flags = {label: label == C.SL for label in C}
        added = upward_closure(flags)
        assert C.Reg in added
        assert C.SP not in added
        assert is_upward_closed(flags)

    def test_representative_only_reg(self):
        """Test że wektor prawdziwy tylko dla Reg reprezentuje Reg."""
        v = membership_vector(compile_text('mod("a", 2, 0) & "bb"', 4))
        assert v.true_labels() == [C.Reg]
        assert representative_of(v) == C.Reg


class TestStructuralTests:
    """Testy szybkich testów strukturalnych."""

    def test_strictly_local(self, no_aa, parity_a, substring_aa, sigma4):
        """Test SL: brak aa tak, parzystość i C(aa) nie, ∅ i Σ* tak."""
        assert is_strictly_local(no_aa)
        assert not is_strictly_local(parity_a)
        assert not is_strictly_local(substring_aa)
        assert is_strictly_local(empty_language(sigma4))
        assert is_strictly_local(universal_language(sigma4))

    def test_subsequence_closed(self, subsequence_aa, substring_aa, sigma5):
        """Test SP: co najwyżej jedno a tak, C(aa) nie."""
        assert is_subsequence_closed(complement(subsequence_aa))
        assert not is_subsequence_closed(substring_aa)
        assert is_subsequence_closed(universal_language(sigma5))

    def test_neutral_symbols(self, tier_aa, substring_aa, sigma5):
        """Test symboli neutralnych: {b,c,d} dla aa na warstwie {a,e}, brak dla C(aa)."""
        assert neutral_symbols(tier_aa) == frozenset("bcd")
        assert neutral_symbols(substring_aa) == frozenset()
        assert neutral_symbols(universal_language(sigma5)) == frozenset("abcde")


class TestDeciders:
    """Testy decydentów klas i klasy reprezentowanej."""

    def test_no_aa_vector(self, no_aa):
        """Test wektora dla zakazu aa."""
        v, representative = classify(no_aa)
        expected = {C.SL, C.TSL, C.LT, C.TLT, C.LTT, C.TLTT, C.PLT, C.TPLT, C.SF, C.Reg}
        assert set(v.true_labels()) == expected
        assert not v[C.Zp]
        assert representative == C.SL
        assert not v.closed_up

    def test_parity(self, parity_a):
        """Test że parzystość a należy tylko do Zp i Reg."""
        v, representative = classify(parity_a)
        assert set(v.true_labels()) == {C.Zp, C.Reg}
        assert representative == C.Zp

    def test_two_aa_is_ltt_not_lt(self, two_aa):
        """Test że co najmniej dwa aa to LTT, ale nie LT."""
        assert decide_class(C.LTT, two_aa)
        assert not decide_class(C.LT, two_aa)
        assert classify(two_aa)[1] == C.LTT

    def test_star_free_example(self, sigma4):
        """Test języka SF, który nie jest ani LTT, ani PT."""
        d = compile_text('concat("a"$, !"bc")', sigma4)
        assert decide_class(C.SF, d)
        assert not decide_class(C.LTT, d)
        assert not decide_class(C.PT, d)

    @pytest.mark.parametrize("fixture, expected", [
        ("substring_aa", C.coSL),
        ("tier_aa", C.TcoSL),
    ])
    def test_representatives(self, request, fixture, expected):
        """Test klas reprezentowanych przez automaty wzorcowe."""
        assert classify(request.getfixturevalue(fixture))[1] == expected

    def test_incomparable_classes_have_no_representative(self, subsequence_aa):
        """Test że co najmniej dwa a jest coSP i TcoSL (warstwa {a}), więc nie ma klasy reprezentowanej."""
        v, representative = classify(subsequence_aa)
        assert v[C.coSP] and v[C.TcoSL]
        assert not v[C.coSL]
        assert representative is None

    def test_complement_duality(self, substring_aa, subsequence_aa, tier_aa):
        """Test że X(L) = coX(¬L) dla SL, SP i TSL."""
        for d in (substring_aa, subsequence_aa, tier_aa):
            for label in (C.SL, C.SP, C.TSL):
                assert decide_class(label, d) == decide_class(label.complement, complement(d))

    def test_trivial_languages(self, sigma4):
        """Test że ∅ i Σ* reprezentują SL."""
        for d in (empty_language(sigma4), universal_language(sigma4)):
            v, representative = classify(d)
            assert v.trivial
            assert representative == C.SL
            assert v[C.Reg]

    def test_alias_label(self, no_aa):
        """Test że decide_class przyjmuje LP."""
        assert decide_class("LP", no_aa)

    def test_analysis_caches_monoid(self, substring_aa):
        """Test że monoid jest liczony raz na analizę."""
        analysis = LanguageAnalysis(substring_aa)
        assert analysis.monoid is analysis.monoid
        membership_vector(analysis)
        assert "monoid" in analysis.__dict__


LANGUAGE_TABLE = [
    # (wyrazenie, |Σ|, oczekiwane decyzje, klasa reprezentowana)
    ('!"aa"', 5, {C.SL: True, C.coSL: False}, C.SL),
    ('"aa"', 5, {C.SL: False, C.coSL: True}, C.coSL),
    ('!("a" < "a")', 5, {C.SP: True, C.SL: False, C.TSL: True, C.TcoSL: True}, None),
    ('"a" < "a"', 5, {C.coSP: True, C.coSL: False, C.TcoSL: True}, None),
    ('[T:ae]"aa"', 5, {C.TSL: False, C.TcoSL: True, C.SL: False, C.coSL: False}, C.TcoSL),
    ('count(2, "aa")', 4, {C.LTT: True, C.LT: False}, C.LTT),
    ('mod("a", 2, 0)', 2, {C.Zp: True, C.SF: False}, C.Zp),
    ('concat("a"$, !"bc")', 4, {C.SF: True, C.LTT: False, C.PT: False}, C.SF),
    ('"aa" -> "ab"', 4, {C.LT: True, C.LTT: True, C.SL: False}, C.LT),
    ('("a" < "b") -> ("c" < "d")', 4, {C.PT: True, C.SF: True}, C.PT),
    ('!("aa" < "bb")', 4, {C.PLT: True, C.SF: True}, C.PLT),
    ('!("a" < "b") & !("c" < "d")', 4, {C.SP: True, C.PT: True}, C.SP),
    ('![T:abc]"aa"', 4, {C.TSL: True, C.SL: False}, C.TSL),
    ('mod("a", 2, 0) & "bb"', 4, {C.Reg: True, C.SF: False, C.Zp: False}, C.Reg),
]


class TestLanguageTable:
    """Tabela języków wzorcowych z dokładnymi decyzjami."""

    @pytest.mark.parametrize("text, sigma, flags, representative", LANGUAGE_TABLE)
    def test_classification(self, text, sigma, flags, representative):
        """Test decyzji i klasy reprezentowanej dla języka z tabeli."""
        v, got = classify(compile_text(text, alphabet_prefix(sigma)))
        assert {label: v[label] for label in flags} == flags
        assert got == representative


class TestStats:
    """Testy statystyk rozmiaru."""

    def test_substring_aa_stats(self, substring_aa):
        """Test rozmiarów: 3 stany, 6 elementów monoidu, 5 półgrupy."""
        stats = language_stats("substring_aa", substring_aa)
        assert (stats.trim_states, stats.complete_states) == (3, 3)
        assert (stats.monoid_size, stats.semigroup_size) == (6, 5)

    def test_no_aa_needs_sink(self, no_aa):
        """Test że zakaz aa ma 2 stany przycięte i 3 zupełne."""
        stats = language_stats("no_aa", no_aa)
        assert (stats.trim_states, stats.complete_states) == (2, 3)

    def test_summarize(self, substring_aa, no_aa):
        """Test podsumowania min/max/średnia/mediana."""
        summary = summarize([language_stats("a", substring_aa), language_stats("b", no_aa)])
        assert summary["trim_states"] == {"min": 2, "max": 3, "mean": 2.5, "median": 2.5}
        assert summarize([]) == {}
