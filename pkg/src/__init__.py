"""Zestaw narzedzi dla jezykow podregularnych i generator zbiorow danych."""

__version__ = "0.1.0"
