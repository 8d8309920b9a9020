"""
Nazwy języków w schemacie sigma.tau.class.k.t.i (np. 04.03.TSL.4.0.7).
"""

import re

from pydantic import ValidationError

from src.core.errors import FormatError
from src.schemas import ClassLabel, LanguageSpec

_NAME_RE = re.compile(
    r"^(?P<sigma>\d{2})\.(?P<tau>\d{2})\.(?P<cls>[A-Za-z]+)"
    r"\.(?P<k>0|[1-9]\d?)\.(?P<t>0|[1-9]\d?)\.(?P<i>\d)$"
)


def parse_spec(name: str) -> LanguageSpec:
    """
    Parsuje nazwę języka.

    Args:
        name: Nazwa w schemacie sigma.tau.class.k.t.i

    Returns:
        LanguageSpec: Parametry języka

    Raises:
        FormatError: Zła składnia, nieznana klasa lub niespójne pola
    """
    m = _NAME_RE.match(name)
    if not m:
        raise FormatError(f"Niepoprawna nazwa jezyka: {name!r} (oczekiwano sigma.tau.class.k.t.i)")
    try:
        class_name = ClassLabel.parse(m["cls"])
        return LanguageSpec(
            sigma=int(m["sigma"]),
            tau=int(m["tau"]),
            class_name=class_name,
            k=int(m["k"]),
            t=int(m["t"]),
            i=int(m["i"]),
        )
    except (ValueError, ValidationError) as e:
        raise FormatError(f"Niepoprawna nazwa jezyka {name!r}: {e}") from None


def render_spec(spec: LanguageSpec) -> str:
    """Kanoniczna nazwa języka (aliasy LP/TLP renderowane jako PLT/TPLT)."""
    return f"{spec.sigma:02d}.{spec.tau:02d}.{spec.class_name.value}.{spec.k}.{spec.t}.{spec.i}"
