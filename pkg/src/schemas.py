"""
Kontrakty danych (Schemas) dla subreg-forge.

Modele Pydantic opisują wszystko, co przekracza granicę procesu: nazwy
języków, konfigurację generatora, manifest paczki danych, raporty
weryfikacji i wyniki metryk. Dzięki temu pliki JSON/YAML są walidowane
w jednym miejscu.
"""

from enum import Enum

from pydantic import BaseModel, Field, model_validator


class ClassLabel(str, Enum):
    """16 klas hierarchii subregularnej (kolejność = kolejność kolumn w raportach)."""
    SL = "SL"
    coSL = "coSL"
    TSL = "TSL"
    TcoSL = "TcoSL"
    SP = "SP"
    coSP = "coSP"
    LT = "LT"
    TLT = "TLT"
    PT = "PT"
    PLT = "PLT"
    TPLT = "TPLT"
    LTT = "LTT"
    TLTT = "TLTT"
    SF = "SF"
    Zp = "Zp"
    Reg = "Reg"

    @classmethod
    def parse(cls, token: str) -> "ClassLabel":
        """Akceptuje także pisownię LP / TLP."""
        token = CLASS_ALIASES.get(token, token)
        try:
            return cls(token)
        except ValueError:
            raise ValueError(
                f"Nieznana klasa: {token}. Dostepne: {[c.value for c in cls]}"
            ) from None

    @property
    def is_tier(self) -> bool:
        return self in TIER_CLASSES

    @property
    def complement(self) -> "ClassLabel":
        """Klasa dualna przez dopełnienie (SL↔coSL, TSL↔TcoSL, SP↔coSP)."""
        return COMPLEMENT_CLASSES.get(self, self)


CLASS_ALIASES = {"LP": "PLT", "TLP": "TPLT"}

TIER_CLASSES = frozenset(
    {ClassLabel.TSL, ClassLabel.TcoSL, ClassLabel.TLT, ClassLabel.TLTT, ClassLabel.TPLT}
)

COMPLEMENT_CLASSES = {
    ClassLabel.SL: ClassLabel.coSL,
    ClassLabel.coSL: ClassLabel.SL,
    ClassLabel.TSL: ClassLabel.TcoSL,
    ClassLabel.TcoSL: ClassLabel.TSL,
    ClassLabel.SP: ClassLabel.coSP,
    ClassLabel.coSP: ClassLabel.SP,
}


class SplitKind(str, Enum):
    """Rodzaj zbioru danych."""
    TRAIN = "Train"
    DEV = "Dev"
    SR = "SR"    # krótkie, losowe
    SA = "SA"    # krótkie, adwersarialne
    LR = "LR"    # długie, losowe
    LA = "LA"    # długie, adwersarialne

    @property
    def is_adversarial(self) -> bool:
        return self in (SplitKind.SA, SplitKind.LA)

    @property
    def is_long(self) -> bool:
        return self in (SplitKind.LR, SplitKind.LA)


class SizeClass(str, Enum):
    """Rozmiar zbioru (Small ⊂ Mid ⊂ Large)."""
    SMALL = "Small"
    MID = "Mid"
    LARGE = "Large"


# --- Nazwy języków ---

class LanguageSpec(BaseModel):
    """
    Parametry języka zakodowane w nazwie sigma.tau.class.k.t.i.
    Pola nieużywane: tau = sigma bez warstwy, k = 0 i t = 0 gdy nie dotyczy.
    """
    sigma: int = Field(..., ge=1, le=64, description="Rozmiar alfabetu")
    tau: int = Field(..., ge=0, le=64, description="Rozmiar warstwy (tier)")
    class_name: ClassLabel = Field(..., description="Klasa reprezentowana przez język")
    k: int = Field(0, ge=0, le=99, description="Szerokość czynnika")
    t: int = Field(0, ge=0, le=99, description="Próg zliczania")
    i: int = Field(0, ge=0, le=9, description="Cyfra identyfikatora")

    @model_validator(mode="after")
    def _check_tier(self) -> "LanguageSpec":
        if self.tau > self.sigma:
            raise ValueError(f"tau={self.tau} wieksze niz sigma={self.sigma}")
        if not self.class_name.is_tier and self.tau != self.sigma:
            raise ValueError(f"Klasa {self.class_name.value} bez warstwy wymaga tau == sigma")
        return self

    class Config:
        frozen = True
        json_schema_extra = {
            "example": {"sigma": 4, "tau": 3, "class_name": "TSL", "k": 4, "t": 0, "i": 7}
        }


# --- Konfiguracja ---

class DatagenConfig(BaseModel):
    """Parametry generatora paczek danych (config/datagen.yaml)."""
    short_lengths: tuple[int, int] = Field((20, 29), description="Zakres długości Train/Dev/SR/SA")
    long_lengths: tuple[int, int] = Field((31, 50), description="Zakres długości LR/LA")
    large_size: int = Field(100_000, gt=0, description="Liczba rekordów w zbiorze Large")
    mid_divisor: int = Field(10, gt=0)
    small_divisor: int = Field(100, gt=0)
    prng: str = Field("numpy.PCG64", description="Identyfikator algorytmu PRNG")
    threads: int = Field(1, ge=1, le=256)

    @model_validator(mode="after")
    def _check_quotas(self) -> "DatagenConfig":
        for lo, hi in (self.short_lengths, self.long_lengths):
            if lo < 0 or hi < lo:
                raise ValueError(f"Zly zakres dlugosci: {lo}..{hi}")
        if self.small_divisor % self.mid_divisor:
            raise ValueError("small_divisor musi byc wielokrotnoscia mid_divisor")
        for kind in SplitKind:
            per_cell = self.large_size / (2 * len(self.lengths(kind)) * self.small_divisor)
            if per_cell != int(per_cell) or per_cell < 1:
                raise ValueError(
                    f"large_size={self.large_size} nie dzieli sie na rowne kwoty "
                    f"dla {kind.value} przy rozmiarze Small"
                )
        return self

    def lengths(self, kind: SplitKind) -> range:
        lo, hi = self.long_lengths if kind.is_long else self.short_lengths
        return range(lo, hi + 1)

    def divisor(self, size: SizeClass) -> int:
        return {SizeClass.LARGE: 1, SizeClass.MID: self.mid_divisor, SizeClass.SMALL: self.small_divisor}[size]

    def quota(self, kind: SplitKind, size: SizeClass = SizeClass.LARGE) -> int:
        """Rekordy na (długość, etykietę); dla SA/LA liczba par na długość."""
        return self.large_size // (2 * len(self.lengths(kind)) * self.divisor(size))


class GridAxes(BaseModel):
    """Osie siatki eksperymentu z losowymi automatami."""
    n: list[int] = Field(..., min_length=1)
    s: list[int] = Field(..., min_length=1)
    p_e: list[float] = Field(..., min_length=1)
    p_f: list[float] = Field(..., min_length=1)
    trials: int = Field(..., ge=1)


class RandDfaConfig(BaseModel):
    """config/randdfa.yaml: siatka 'fair' i siatka prawdopodobieństw."""
    fair: GridAxes
    probability: GridAxes


class RandomDfaParams(BaseModel):
    """Parametry jednego losowego automatu."""
    n: int = Field(..., ge=1, description="Liczba stanów")
    s: int = Field(..., ge=1, le=64, description="Rozmiar alfabetu")
    p_e: float = Field(..., ge=0.0, le=1.0, description="Prawdopodobieństwo krawędzi")
    p_f: float = Field(..., ge=0.0, le=1.0, description="Prawdopodobieństwo akceptacji")
    seed: int = Field(0, ge=0)


class PatternEntry(BaseModel):
    """Wpis biblioteki wzorców (config/patterns.yaml)."""
    class_name: ClassLabel = Field(..., alias="class")
    k: int = Field(0, ge=0)
    t: int = Field(0, ge=0)
    expr: str = Field(..., min_length=1)
    alphabets: list[int] = Field(default_factory=lambda: [4, 16])
    note: str | None = None

    class Config:
        populate_by_name = True


# --- Paczka danych ---

class FileEntry(BaseModel):
    """Wpis manifestu dla jednego pliku TSV."""
    file: str
    kind: SplitKind
    size: SizeClass
    records: int = Field(..., ge=0)
    positives: int = Field(..., ge=0)
    negatives: int = Field(..., ge=0)
    sha256: str = Field(..., min_length=64, max_length=64)


class BundleManifest(BaseModel):
    """
    manifest.json paczki danych.
    Bez znaczników czasu: ten sam seed daje bajtowo identyczny manifest.
    """
    name: str
    seed: int = Field(..., ge=0)
    prng: str
    generator_version: str
    complemented: bool = Field(False, description="Paczka powstała przez zamianę etykiet")
    short_lengths: tuple[int, int]
    long_lengths: tuple[int, int]
    large_size: int
    files: list[FileEntry] = Field(default_factory=list)

    class Config:
        json_schema_extra = {
            "example": {
                "name": "04.04.SL.2.0.0",
                "seed": 7,
                "prng": "numpy.PCG64",
                "generator_version": "0.1.0",
                "complemented": False,
                "short_lengths": [20, 29],
                "long_lengths": [31, 50],
                "large_size": 100000,
                "files": [],
            }
        }


class CheckResult(BaseModel):
    """Wynik jednego sprawdzenia w raporcie weryfikacji."""
    name: str
    passed: bool
    checked: int = Field(0, ge=0, description="Liczba sprawdzonych elementów")
    failures: list[str] = Field(default_factory=list, description="Pierwsze naruszenia")
    failure_count: int = Field(0, ge=0)


class VerificationReport(BaseModel):
    """Raport verify_bundle."""
    bundle: str
    checks: list[CheckResult] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failed_checks(self) -> list[str]:
        return [c.name for c in self.checks if not c.passed]


# --- Metryki ---

class ScoreReport(BaseModel):
    """Metryki pliku predykcji."""
    records: int = Field(..., ge=1)
    accuracy: float = Field(..., ge=0.0, le=1.0)
    precision: float = Field(..., ge=0.0, le=1.0)
    recall: float = Field(..., ge=0.0, le=1.0)
    f_score: float = Field(..., ge=0.0, le=1.0)
    brier: float = Field(..., ge=0.0, le=1.0)
    auc: float | None = Field(None, ge=0.0, le=1.0, description="None, gdy brak jednej z klas")


class GridCell(BaseModel):
    """Komórka siatki eksperymentu z losowymi automatami."""
    n: int
    s: int
    p_e: float
    p_f: float
    trials: int
    sl_count: int

    @property
    def proportion(self) -> float:
        return self.sl_count / self.trials


class LanguageStats(BaseModel):
    """Statystyki rozmiaru języka (automat i monoid)."""
    name: str
    trim_states: int
    complete_states: int
    monoid_size: int
    semigroup_size: int
