"""
Ocena plików predykcji: accuracy, precision, recall, F1, Brier i AUC.

Predykcja twarda = prawdopodobieństwo >= 0.5 (remis liczy się jako pozytywny).
"""

import logging
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from sklearn.metrics import (
    accuracy_score,
    brier_score_loss,
    f1_score,
    precision_score,
    recall_score,
    roc_auc_score,
)

from src.core.errors import FormatError
from src.schemas import ScoreReport

logger = logging.getLogger("subreg-forge")

THRESHOLD = 0.5
_GOLD = {"TRUE": True, "FALSE": False, "1": True, "0": False}


@dataclass
class PredictionFile:
    strings: list[str]
    gold: np.ndarray           # bool
    probabilities: np.ndarray  # float w [0, 1]

    def __len__(self) -> int:
        return len(self.strings)

    @property
    def predicted(self) -> np.ndarray:
        return self.probabilities >= THRESHOLD


def read_predictions(path: str | Path) -> PredictionFile:
    """
    Wczytuje TSV `słowo<TAB>gold<TAB>prob`.

    Raises:
        FormatError: Zła liczba kolumn, nieznana etykieta, prawdopodobieństwo spoza [0, 1]
    """
    path = Path(path)
    strings, gold, probs = [], [], []
    for lineno, line in enumerate(path.read_text(encoding="utf-8").split("\n"), start=1):
        if not line:
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise FormatError(f"{path}:{lineno}: oczekiwano 3 kolumn, jest {len(parts)}")
        s, label, prob = parts
        if label not in _GOLD:
            raise FormatError(f"{path}:{lineno}: nieznana etykieta {label!r}")
        try:
            p = float(prob)
        except ValueError:
            raise FormatError(f"{path}:{lineno}: niepoprawne prawdopodobienstwo {prob!r}") from None
        if not 0.0 <= p <= 1.0:
            raise FormatError(f"{path}:{lineno}: prawdopodobienstwo {p} poza [0, 1]")
        strings.append(s)
        gold.append(_GOLD[label])
        probs.append(p)
    return PredictionFile(strings, np.array(gold, dtype=bool), np.array(probs, dtype=float))


def score(predictions: PredictionFile) -> ScoreReport:
    """
    Metryki dla jednego pliku predykcji.

    Raises:
        FormatError: Pusty plik
    """
    if len(predictions) == 0:
        raise FormatError("Plik predykcji jest pusty")
    y, p, hard = predictions.gold, predictions.probabilities, predictions.predicted
    auc = None
    if y.any() and not y.all():
        auc = float(roc_auc_score(y, p))
    else:
        logger.warning("Tylko jedna klasa w etykietach, AUC nieokreslone")
    return ScoreReport(
        records=len(predictions),
        accuracy=float(accuracy_score(y, hard)),
        precision=float(precision_score(y, hard, zero_division=0)),
        recall=float(recall_score(y, hard, zero_division=0)),
        f_score=float(f1_score(y, hard, zero_division=0)),
        brier=float(brier_score_loss(y, p)),
        auc=auc,
    )


def score_file(pred: str | Path, split: str | Path | None = None) -> ScoreReport:
    """
    Ocena pliku predykcji, opcjonalnie z kontrolą zgodności ze zbiorem.

    Args:
        pred: Plik predykcji
        split: Plik TSV zbioru; liczba rekordów i słowa muszą się zgadzać
    """
    predictions = read_predictions(pred)
    if split is not None:
        lines = [line for line in Path(split).read_text(encoding="utf-8").split("\n") if line]
        if len(lines) != len(predictions):
            raise FormatError(
                f"Liczba rekordow predykcji ({len(predictions)}) rozna od zbioru ({len(lines)})"
            )
        for lineno, (line, s) in enumerate(zip(lines, predictions.strings), start=1):
            if line.split("\t")[0] != s:
                raise FormatError(f"{pred}:{lineno}: slowo niezgodne z {split}")
    report = score(predictions)
    logger.info(f"Ocena {pred}: accuracy={report.accuracy:.4f}, brier={report.brier:.4f}")
    return report
