"""
Hierarchia klas subregularnych jako DAG (krawędź X -> Y oznacza Y ⊊ X).
"""

from collections.abc import Iterator, Mapping
from dataclasses import dataclass, field

import networkx as nx

from src.schemas import ClassLabel

C = ClassLabel

HIERARCHY_EDGES: tuple[tuple[ClassLabel, ClassLabel], ...] = (
    (C.Reg, C.Zp),
    (C.Reg, C.SF),
    (C.SF, C.TPLT),
    (C.TPLT, C.PLT),
    (C.TPLT, C.TLTT),
    (C.PLT, C.LTT),
    (C.PLT, C.PT),
    (C.TLTT, C.LTT),
    (C.TLTT, C.TLT),
    (C.LTT, C.LT),
    (C.TLT, C.LT),
    (C.TLT, C.TSL),
    (C.TLT, C.TcoSL),
    (C.LT, C.SL),
    (C.LT, C.coSL),
    (C.PT, C.SP),
    (C.PT, C.coSP),
    (C.TSL, C.SL),
    (C.TcoSL, C.coSL),
)


class Hierarchy:
    """Częściowy porządek inkluzji klas."""

    def __init__(self, edges=HIERARCHY_EDGES):
        self.graph = nx.DiGraph()
        self.graph.add_nodes_from(ClassLabel)
        self.graph.add_edges_from(edges)
        if not nx.is_directed_acyclic_graph(self.graph):
            raise ValueError("Hierarchia klas musi byc acykliczna")

    def superclasses(self, label: ClassLabel) -> set[ClassLabel]:
        """Klasy ściśle zawierające label."""
        return set(nx.ancestors(self.graph, label))

    def subclasses(self, label: ClassLabel) -> set[ClassLabel]:
        return set(nx.descendants(self.graph, label))

    def is_subclass(self, sub: ClassLabel, sup: ClassLabel) -> bool:
        """sub ⊊ sup."""
        return sup in self.superclasses(sub)

    def comparable(self, x: ClassLabel, y: ClassLabel) -> bool:
        return x == y or self.is_subclass(x, y) or self.is_subclass(y, x)


DEFAULT_HIERARCHY = Hierarchy()


@dataclass
class MembershipVector(Mapping):
    """Przynależność języka do 16 klas (kolejność etykiet jak w ClassLabel)."""

    flags: dict[ClassLabel, bool]
    trivial: bool = False
    closed_up: set[ClassLabel] = field(default_factory=set)

    def __getitem__(self, label: ClassLabel) -> bool:
        return self.flags[ClassLabel(label)]

    def __iter__(self) -> Iterator[ClassLabel]:
        return iter(ClassLabel)

    def __len__(self) -> int:
        return len(self.flags)

    def true_labels(self) -> list[ClassLabel]:
        return [c for c in ClassLabel if self.flags[c]]

    def as_row(self) -> list[str]:
        return ["1" if self.flags[c] else "0" for c in ClassLabel]


def upward_closure(flags: dict[ClassLabel, bool], h: Hierarchy = DEFAULT_HIERARCHY) -> set[ClassLabel]:
    """Domyka flagi w górę hierarchii; zwraca etykiety, które trzeba było dopisać."""
    added = set()
    for label in ClassLabel:
        if flags[label]:
            for sup in h.superclasses(label):
                if not flags[sup]:
                    flags[sup] = True
                    added.add(sup)
    return added


def is_upward_closed(v: Mapping[ClassLabel, bool], h: Hierarchy = DEFAULT_HIERARCHY) -> bool:
    return all(v[sup] for label in ClassLabel if v[label] for sup in h.superclasses(label))


def representative_of(v: MembershipVector, h: Hierarchy = DEFAULT_HIERARCHY) -> ClassLabel | None:
    """
    Jedyna klasa X z v[X], dla której każda inna prawdziwa etykieta jest
    ścisłą nadklasą X; None, gdy takiej klasy nie ma. Języki trywialne
    (∅, Σ*) dostają SL.
    """
    if v.trivial:
        return ClassLabel.SL
    true = v.true_labels()
    for x in true:
        supers = h.superclasses(x)
        if all(y == x or y in supers for y in true):
            return x
    return None
