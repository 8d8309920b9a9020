"""
Losowe automaty i pomiar, jak często ich języki są ściśle lokalne (SL).

Każda komórka siatki ma własny strumień PRNG wyprowadzony z ziarna i
parametrów komórki, więc komórki można liczyć równolegle.
"""

import csv
import io
import logging
from collections.abc import Iterable
from concurrent.futures import ThreadPoolExecutor
from itertools import product
from pathlib import Path

import numpy as np

from src.automata.alphabet import alphabet_prefix
from src.automata.dfa import Nfa, NfaBuilder, determinize_minimize
from src.classifiers.deciders import is_strictly_local
from src.datagen.sampler import make_rng
from src.schemas import GridAxes, GridCell, RandomDfaParams

logger = logging.getLogger("subreg-forge")

CSV_COLUMNS = ("n", "s", "p_e", "p_f", "trials", "sl_count")


def generate_random_automaton(params: RandomDfaParams, rng: np.random.Generator | None = None) -> Nfa:
    """
    Losowy (zwykle niedeterministyczny) automat: każdy stan akceptuje z
    prawdopodobieństwem p_f, każda krawędź (q, σ, r) istnieje z p_e. Start w 0.

    Args:
        params: Parametry n, s, p_e, p_f (i seed, gdy rng nie podano)
        rng: Generator liczb losowych
    """
    rng = rng if rng is not None else make_rng(params.seed)
    alphabet = alphabet_prefix(params.s)
    finals = np.flatnonzero(rng.random(params.n) < params.p_f)
    edges = rng.random((params.n, params.s, params.n)) < params.p_e
    builder = NfaBuilder(alphabet, params.n)
    for q, a, r in np.argwhere(edges).tolist():
        builder.add_arc(q, alphabet.symbols[a], r)
    return builder.build(starts=[0], finals=finals.tolist())


def is_sl_trial(params: RandomDfaParams, rng: np.random.Generator) -> bool:
    return is_strictly_local(determinize_minimize(generate_random_automaton(params, rng)))


def _cell_key(n: int, s: int, p_e: float, p_f: float) -> tuple[int, ...]:
    return (n, s, round(p_e * 1000), round(p_f * 1000))


def run_cell(n: int, s: int, p_e: float, p_f: float, trials: int, seed: int) -> GridCell:
    """Jedna komórka siatki: liczba języków SL w `trials` próbach."""
    params = RandomDfaParams(n=n, s=s, p_e=p_e, p_f=p_f, seed=seed)
    rng = make_rng(seed, *_cell_key(n, s, p_e, p_f))
    sl_count = sum(is_sl_trial(params, rng) for _ in range(trials))
    logger.debug(f"  n={n} s={s} p_e={p_e} p_f={p_f}: {sl_count}/{trials}")
    return GridCell(n=n, s=s, p_e=p_e, p_f=p_f, trials=trials, sl_count=sl_count)


def run_grid(axes: GridAxes, seed: int, threads: int = 1, trials: int | None = None) -> list[GridCell]:
    """
    Wszystkie komórki iloczynu osi, w kolejności (n, s, p_e, p_f).

    Args:
        axes: Osie siatki i domyślna liczba prób
        seed: Ziarno główne
        threads: Liczba wątków
        trials: Nadpisuje axes.trials
    """
    trials = trials if trials is not None else axes.trials
    cells = list(product(axes.n, axes.s, axes.p_e, axes.p_f))
    logger.info(f"Siatka: {len(cells)} komorek x {trials} prob")

    def run(cell: tuple[int, int, float, float]) -> GridCell:
        return run_cell(*cell, trials=trials, seed=seed)

    if threads <= 1:
        return [run(cell) for cell in cells]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(run, cells))


def summarize_grid(cells: list[GridCell]) -> dict:
    """Średnia proporcja SL i komórka najbliższa średniej."""
    if not cells:
        return {}
    mean = float(np.mean([c.proportion for c in cells]))
    closest = min(cells, key=lambda c: abs(c.proportion - mean))
    return {
        "cells": len(cells),
        "mean_proportion": mean,
        "closest": closest.model_dump(),
    }


def grid_to_csv(cells: Iterable[GridCell]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for c in cells:
        writer.writerow([c.n, c.s, c.p_e, c.p_f, c.trials, c.sl_count])
    return buffer.getvalue()


def write_grid_csv(cells: Iterable[GridCell], path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(grid_to_csv(cells), encoding="utf-8")
    logger.info(f"Zapisano siatke do {path}")
    return path
