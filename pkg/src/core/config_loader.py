"""
Loader konfiguracji z plików YAML.
Centralne miejsce do ładowania parametrów generatora, siatek i biblioteki wzorców.
"""

import os
from pathlib import Path
from typing import Any

import yaml
from dotenv import load_dotenv
from pydantic import ValidationError

from src.core.errors import ConfigError
from src.schemas import DatagenConfig, PatternEntry, RandDfaConfig

load_dotenv()


def get_config_path() -> Path:
    """Zwraca ścieżkę do folderu config/ (SUBREG_CONFIG_DIR nadpisuje domyślną)."""
    override = os.getenv("SUBREG_CONFIG_DIR")
    if override:
        return Path(override)
    # src/core -> src -> katalog projektu
    return Path(__file__).parent.parent.parent / "config"


def load_config(name: str) -> dict[str, Any]:
    """
    Ładuje config/<name>.yaml.

    Args:
        name: Nazwa pliku bez rozszerzenia (datagen, randdfa, patterns)

    Returns:
        dict: Zawartość pliku
    """
    config_path = get_config_path() / f"{name}.yaml"

    if not config_path.exists():
        raise ConfigError(f"Brak pliku {name}.yaml w: {config_path.parent}")

    with open(config_path, "r", encoding="utf-8") as f:
        try:
            data = yaml.safe_load(f)
        except yaml.YAMLError as e:
            raise ConfigError(f"Niepoprawny YAML w {config_path}: {e}") from None
    return data or {}


def get_section(name: str, key: str) -> Any:
    """Pobiera jedną sekcję pliku konfiguracyjnego."""
    data = load_config(name)

    if key not in data:
        raise ConfigError(f"Nieznana sekcja: {key}. Dostępne: {list(data.keys())}")

    return data[key]


def load_datagen_config() -> DatagenConfig:
    try:
        return DatagenConfig(**get_section("datagen", "datagen"))
    except ValidationError as e:
        raise ConfigError(f"Niepoprawna konfiguracja generatora: {e}") from None


def load_randdfa_config() -> RandDfaConfig:
    try:
        return RandDfaConfig(**get_section("randdfa", "grids"))
    except ValidationError as e:
        raise ConfigError(f"Niepoprawna konfiguracja siatek: {e}") from None


def load_patterns() -> list[PatternEntry]:
    """Wpisy biblioteki wzorców w kolejności z pliku."""
    entries = get_section("patterns", "patterns")
    try:
        return [PatternEntry.model_validate(entry) for entry in entries]
    except ValidationError as e:
        raise ConfigError(f"Niepoprawny wpis biblioteki wzorcow: {e}") from None
