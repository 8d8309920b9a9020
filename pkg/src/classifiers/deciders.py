"""
Decydenci przynależności do 16 klas.

Kolejność prac: najpierw tanie testy strukturalne (SL, SP), potem monoid
syntaktyczny budowany co najwyżej raz na język (LanguageAnalysis).
Klasy z warstwą: T = symbole nieneutralne, sprawdzamy L = π⁻¹(π(L)) i
uruchamiamy decydenta bazowego na rzucie π(L) nad alfabetem T.
"""

import logging
import statistics
from collections.abc import Iterable
from functools import cached_property

import networkx as nx

from src.algebra.semigroup import (
    Identity,
    TransformationSemigroup,
    group_order_prime,
    is_aperiodic,
    is_j_trivial,
    local_submonoid_check,
    satisfies_identity,
    syntactic_semigroup,
)
from src.automata.dfa import (
    MISSING,
    Dfa,
    NfaBuilder,
    complement,
    complete,
    determinize_minimize,
    is_empty,
    is_subset,
    language_equal,
    trim,
)
from src.automata.fst import Direction, apply, insdel_transducer, tier_projection
from src.classifiers.hierarchy import (
    DEFAULT_HIERARCHY,
    Hierarchy,
    MembershipVector,
    representative_of,
    upward_closure,
)
from src.schemas import ClassLabel, LanguageStats

logger = logging.getLogger("subreg-forge")


# === Testy strukturalne ===

def is_strictly_local(d: Dfa) -> bool:
    """
    Test grafu par: w przyciętym minimalnym automacie żadna para różnych
    stanów (p, q) nie leży na cyklu przejść o wspólnych etykietach.
    """
    d = trim(d)
    graph = nx.DiGraph()
    n = d.num_states
    for p in range(n):
        for q in range(n):
            if p == q:
                continue
            graph.add_node((p, q))
            for i in range(len(d.alphabet)):
                p2, q2 = d.delta[p][i], d.delta[q][i]
                if p2 != MISSING and q2 != MISSING and p2 != q2:
                    graph.add_edge((p, q), (p2, q2))
    return nx.is_directed_acyclic_graph(graph)


def is_subsequence_closed(d: Dfa) -> bool:
    """Automat z każdym łukiem zdublowanym jako ε rozpoznaje podciągi L; muszą należeć do L."""
    d = trim(d)
    builder = NfaBuilder(d.alphabet, d.num_states)
    for src, sym, dst in d.transitions():
        builder.add_arc(src, sym, dst)
        builder.add_arc(src, "", dst)
    subsequences = determinize_minimize(builder.build(starts=[d.start], finals=d.finals))
    return is_subset(subsequences, d)


def neutral_symbols(d: Dfa) -> frozenset[str]:
    """Symbole, których wstawienie lub usunięcie nigdy nie zmienia przynależności."""
    neutral = set()
    for sym in d.alphabet.symbols:
        inserted = apply(insdel_transducer("insert", sym, d.alphabet), d, Direction.IMAGE)
        if not is_subset(inserted, d):
            continue
        deleted = apply(insdel_transducer("delete", sym, d.alphabet), d, Direction.IMAGE)
        if is_subset(deleted, d):
            neutral.add(sym)
    return frozenset(neutral)


# === Analiza języka z pamięcią podręczną ===

class LanguageAnalysis:
    """Leniwie liczone obiekty pochodne jednego języka."""

    def __init__(self, d: Dfa):
        self.dfa = determinize_minimize(d)

    @cached_property
    def trivial(self) -> bool:
        return is_empty(self.dfa) or is_empty(complement(self.dfa))

    @cached_property
    def monoid(self) -> TransformationSemigroup:
        logger.debug(f"Budowa monoidu dla automatu o {self.dfa.num_states} stanach")
        return syntactic_semigroup(self.dfa)

    @cached_property
    def complement(self) -> "LanguageAnalysis":
        return LanguageAnalysis(complement(self.dfa))

    @cached_property
    def aperiodic(self) -> bool:
        return is_aperiodic(self.monoid)

    @cached_property
    def ltt(self) -> bool:
        return self.aperiodic and satisfies_identity(self.monoid, Identity.LTT)

    @cached_property
    def tier(self) -> frozenset[str]:
        return frozenset(self.dfa.alphabet.symbols) - neutral_symbols(self.dfa)

    @cached_property
    def projection(self) -> "LanguageAnalysis | None":
        """Rzut na warstwę; None, gdy L ≠ π⁻¹(π(L))."""
        if self.tier == frozenset(self.dfa.alphabet.symbols):
            return self
        pi = tier_projection(self.dfa.alphabet, self.tier)
        projected = apply(pi, self.dfa, Direction.IMAGE)
        if not language_equal(self.dfa, apply(pi, projected, Direction.PREIMAGE)):
            logger.debug(f"Jezyk nie jest domkniety wzgledem warstwy {''.join(sorted(self.tier))}")
            return None
        return LanguageAnalysis(projected)


def _as_analysis(d: Dfa | LanguageAnalysis) -> LanguageAnalysis:
    return d if isinstance(d, LanguageAnalysis) else LanguageAnalysis(d)


def _lt(a: LanguageAnalysis) -> bool:
    return a.aperiodic and local_submonoid_check(a.monoid)


def _ltt(a: LanguageAnalysis) -> bool:
    return a.ltt


def _plt(a: LanguageAnalysis) -> bool:
    # LTT ⊆ PLT
    return a.ltt or (a.aperiodic and satisfies_identity(a.monoid, Identity.KNAST))


def _on_tier(a: LanguageAnalysis, base) -> bool:
    if a.trivial:
        return True
    projected = a.projection
    return projected is not None and base(projected)


_DECIDERS = {
    ClassLabel.SL: lambda a: is_strictly_local(a.dfa),
    ClassLabel.coSL: lambda a: is_strictly_local(a.complement.dfa),
    ClassLabel.SP: lambda a: is_subsequence_closed(a.dfa),
    ClassLabel.coSP: lambda a: is_subsequence_closed(a.complement.dfa),
    ClassLabel.SF: lambda a: a.aperiodic,
    ClassLabel.PT: lambda a: a.aperiodic and is_j_trivial(a.monoid),
    ClassLabel.Zp: lambda a: group_order_prime(a.monoid),
    ClassLabel.Reg: lambda a: True,
    ClassLabel.LT: _lt,
    ClassLabel.LTT: _ltt,
    ClassLabel.PLT: _plt,
    ClassLabel.TSL: lambda a: _on_tier(a, lambda p: is_strictly_local(p.dfa)),
    ClassLabel.TcoSL: lambda a: _on_tier(a, lambda p: is_strictly_local(p.complement.dfa)),
    ClassLabel.TLT: lambda a: _on_tier(a, _lt),
    ClassLabel.TLTT: lambda a: _on_tier(a, _ltt),
    ClassLabel.TPLT: lambda a: _on_tier(a, _plt),
}


def decide_class(label: ClassLabel | str, d: Dfa | LanguageAnalysis) -> bool:
    """
    Czy język należy do klasy.

    Args:
        label: Klasa (akceptuje też LP / TLP)
        d: Minimalny automat albo gotowa analiza języka
    """
    if isinstance(label, str) and not isinstance(label, ClassLabel):
        label = ClassLabel.parse(label)
    return bool(_DECIDERS[label](_as_analysis(d)))


def membership_vector(d: Dfa | LanguageAnalysis, h: Hierarchy = DEFAULT_HIERARCHY) -> MembershipVector:
    """Decyzje dla wszystkich 16 klas, domknięte w górę hierarchii."""
    analysis = _as_analysis(d)
    flags = {label: decide_class(label, analysis) for label in ClassLabel}
    added = upward_closure(flags, h)
    if added:
        logger.warning(
            f"Decyzje niedomkniete w gore, dopisano: {sorted(c.value for c in added)}"
        )
    return MembershipVector(flags=flags, trivial=analysis.trivial, closed_up=added)


def classify(d: Dfa, h: Hierarchy = DEFAULT_HIERARCHY) -> tuple[MembershipVector, ClassLabel | None]:
    """Wektor przynależności i klasa reprezentowana."""
    v = membership_vector(d, h)
    return v, representative_of(v, h)


# === Statystyki rozmiaru ===

def language_stats(name: str, d: Dfa) -> LanguageStats:
    """Rozmiary: automat przycięty, automat zupełny, monoid i półgrupa syntaktyczna."""
    m = determinize_minimize(d)
    monoid = syntactic_semigroup(m)
    return LanguageStats(
        name=name,
        trim_states=m.num_states,
        complete_states=complete(m).num_states,
        monoid_size=monoid.size,
        semigroup_size=monoid.semigroup_size,
    )


def summarize(stats: Iterable[LanguageStats]) -> dict[str, dict[str, float]]:
    """min / max / średnia / mediana dla każdej kolumny."""
    rows = list(stats)
    if not rows:
        return {}
    summary = {}
    for column in ("trim_states", "complete_states", "monoid_size", "semigroup_size"):
        values = [getattr(r, column) for r in rows]
        summary[column] = {
            "min": min(values),
            "max": max(values),
            "mean": statistics.fmean(values),
            "median": statistics.median(values),
        }
    return summary
