"""Regression design: log transforms, dummy coding and the quality indicator.

A schema is an ordered sequence of terms; the design matrix has an
intercept column followed by the columns of each term in schema order.
Nominal terms list the levels that get their own dummy and the levels
merged into the reference category. A level in neither list cannot be
encoded (this is how screened-out categories such as benefit transfer or
TEV are kept out of a model).
"""

import configparser
import csv
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from .errors import MissingQualityCode, NonPositiveValue, SchemaError, UnknownLevel
from .quality import QualityState
from .records import CONTINUOUS_FIELDS, NOMINAL_FIELDS, normalize_value, resolve_label

INTERCEPT = "intercept"


@dataclass(frozen=True)
class NominalTerm:
    name: str
    field: str
    levels: Tuple[str, ...]
    reference: Tuple[str, ...]

    def __post_init__(self):
        if self.field not in NOMINAL_FIELDS:
            raise SchemaError(f"term {self.name!r}: {self.field!r} is not a nominal field")
        enum_cls = NOMINAL_FIELDS[self.field]
        levels = tuple(resolve_label(enum_cls, v, self.field).value for v in self.levels)
        reference = tuple(resolve_label(enum_cls, v, self.field).value for v in self.reference)
        overlap = set(levels) & set(reference)
        if overlap:
            raise SchemaError(f"term {self.name!r}: levels both included and reference: {sorted(overlap)}")
        if len(set(levels)) != len(levels) or len(set(reference)) != len(reference):
            raise SchemaError(f"term {self.name!r}: repeated level")
        object.__setattr__(self, "levels", levels)
        object.__setattr__(self, "reference", reference)

    @property
    def labels(self):
        return [f"{self.field}:{level}" for level in self.levels]

    def row(self, obj):
        level = getattr(obj, self.field).value
        if level in self.reference:
            return [0.0] * len(self.levels)
        if level not in self.levels:
            raise UnknownLevel(self.name, level)
        return [1.0 if level == lv else 0.0 for lv in self.levels]


@dataclass(frozen=True)
class LogTerm:
    name: str
    field: str

    def __post_init__(self):
        if self.field not in CONTINUOUS_FIELDS:
            raise SchemaError(f"term {self.name!r}: {self.field!r} is not a continuous field")

    @property
    def labels(self):
        return [f"ln({self.field})"]

    def row(self, obj):
        value = getattr(obj, self.field)
        if not value > 0:
            raise NonPositiveValue(self.field, value=value)
        return [math.log(value)]


@dataclass(frozen=True)
class QualityTerm:
    name: str = "quality"
    positive_state: QualityState = QualityState.NATURALLY_FUNCTIONING

    @property
    def labels(self):
        return ["quality"]

    def row(self, obj):
        state = quality_state_of(obj)
        return [1.0 if state == self.positive_state else 0.0]


Term = Union[NominalTerm, LogTerm, QualityTerm]


def quality_state_of(obj) -> QualityState:
    """Quality state of a study record or policy site."""
    state = getattr(obj, "quality_state", None)
    if state is None:
        code = getattr(obj, "quality_code", None)
        state = None if code is None else code.state
    if state is None:
        raise MissingQualityCode(getattr(obj, "record_id", getattr(obj, "site_id", "?")))
    return QualityState(state)


@dataclass(frozen=True)
class EncodingSchema:
    terms: Tuple[Term, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))
        names = [t.name for t in self.terms]
        if len(set(names)) != len(names):
            raise SchemaError("term names must be unique")
        if sum(isinstance(t, QualityTerm) for t in self.terms) > 1:
            raise SchemaError("at most one quality term")

    @property
    def nominal_groups(self) -> List[NominalTerm]:
        return [t for t in self.terms if isinstance(t, NominalTerm)]

    @property
    def continuous_log(self) -> List[str]:
        return [t.field for t in self.terms if isinstance(t, LogTerm)]

    @property
    def include_quality(self) -> bool:
        return any(isinstance(t, QualityTerm) for t in self.terms)

    @property
    def column_labels(self) -> List[str]:
        labels = [INTERCEPT]
        for term in self.terms:
            labels.extend(term.labels)
        return labels

    def encode_row(self, obj) -> List[float]:
        row = [1.0]
        for term in self.terms:
            row.extend(term.row(obj))
        return row

    def fold_levels(self, field: str, levels) -> "EncodingSchema":
        """Copy with the given included levels of ``field`` moved to the reference."""
        levels = set(levels)
        terms = []
        for t in self.terms:
            if isinstance(t, NominalTerm) and t.field == field and levels & set(t.levels):
                t = NominalTerm(t.name, t.field,
                                tuple(lv for lv in t.levels if lv not in levels),
                                t.reference + tuple(lv for lv in t.levels if lv in levels))
            terms.append(t)
        return EncodingSchema(tuple(terms))


def default_schema() -> EncodingSchema:
    """Method, ln size, quality, wetland type, service, ln GNI per capita."""
    return EncodingSchema((
        NominalTerm("method", "method",
                    ("AvoidedCost", "ContingentValuation", "DirectMarketPricing", "ReplacementCost"),
                    ("FactorIncomeProduction", "MitigationRestorationCost", "TravelCost")),
        LogTerm("size", "wetland_size_ha"),
        QualityTerm("quality", QualityState.NATURALLY_FUNCTIONING),
        NominalTerm("wetland_type", "wetland_type",
                    ("Floodplains", "PeatWetlands", "SwampsMarshes"), ("Unspecified",)),
        NominalTerm("service", "service",
                    ("Climate", "ExtremeEvents", "Food", "Genepool", "Medical",
                     "RawMaterials", "Recreation", "SoilFertility"),
                    ("Ornamental", "Waste", "Water", "WaterFlows")),
        LogTerm("gni", "gni_per_capita"),
    ))


def _split(value):
    return tuple(v.strip() for v in value.split(",") if v.strip())


def schema_from_config(text: str) -> EncodingSchema:
    """Parse an INI schema: one section per term, in column order."""
    parser = configparser.ConfigParser()
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise SchemaError(f"unreadable schema: {exc}") from None
    terms = []
    for name in parser.sections():
        sec = parser[name]
        kind = sec.get("kind", "").strip().lower()
        if kind == "nominal":
            terms.append(NominalTerm(name, sec.get("field", name).strip(),
                                     _split(sec.get("levels", "")),
                                     _split(sec.get("reference", ""))))
        elif kind == "log":
            terms.append(LogTerm(name, sec.get("field", name).strip()))
        elif kind == "quality":
            label = sec.get("positive_state", "NaturallyFunctioning").strip()
            states = {"naturallyfunctioning": QualityState.NATURALLY_FUNCTIONING, "1": QualityState.NATURALLY_FUNCTIONING,
                      "degraded": QualityState.DEGRADED, "2": QualityState.DEGRADED}
            if label.lower() not in states:
                raise SchemaError(f"term {name!r}: unknown positive_state {label!r}")
            terms.append(QualityTerm(name, states[label.lower()]))
        else:
            raise SchemaError(f"term {name!r}: unknown kind {kind!r}")
    return EncodingSchema(tuple(terms))


def schema_to_config(schema: EncodingSchema) -> str:
    parser = configparser.ConfigParser()
    for t in schema.terms:
        if isinstance(t, NominalTerm):
            parser[t.name] = {"kind": "nominal", "field": t.field,
                              "levels": ", ".join(t.levels), "reference": ", ".join(t.reference)}
        elif isinstance(t, LogTerm):
            parser[t.name] = {"kind": "log", "field": t.field}
        else:
            state = "NaturallyFunctioning" if t.positive_state == QualityState.NATURALLY_FUNCTIONING else "Degraded"
            parser[t.name] = {"kind": "quality", "positive_state": state}
    lines = []
    for section in parser.sections():
        lines.append(f"[{section}]")
        lines.extend(f"{k} = {v}" for k, v in parser[section].items())
        lines.append("")
    return "\n".join(lines)


def load_schema(path) -> EncodingSchema:
    with open(path, encoding="utf-8") as fh:
        return schema_from_config(fh.read())


@dataclass(frozen=True)
class DesignMatrix:
    column_labels: Tuple[str, ...]
    X: np.ndarray
    y: np.ndarray
    record_ids: Tuple[str, ...] = field(default=())

    @property
    def n(self) -> int:
        return self.X.shape[0]

    @property
    def k(self) -> int:
        return self.X.shape[1] - 1


def encode(records: Sequence, schema: EncodingSchema, tables) -> DesignMatrix:
    """Build the design matrix and log-value response for ``records``.

    The response is the natural log of each record's value in 2007 US$
    per hectare per year. Row ``i`` of the result belongs to ``records[i]``.
    """
    rows = [schema.encode_row(rec) for rec in records]
    y = []
    for rec in records:
        value = normalize_value(rec, tables)
        if not value > 0:
            raise NonPositiveValue("raw_value", value=value)
        y.append(math.log(value))
    p = len(schema.column_labels)
    X = np.array(rows, dtype=float).reshape(len(rows), p)
    return DesignMatrix(tuple(schema.column_labels), X, np.array(y, dtype=float),
                        tuple(r.record_id for r in records))


def from_arrays(X, y, labels: Optional[Sequence[str]] = None) -> DesignMatrix:
    """Wrap raw arrays (first column must be the intercept) as a design."""
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    if X.ndim != 2 or y.shape != (X.shape[0],):
        raise SchemaError(f"shape mismatch: X {X.shape}, y {y.shape}")
    if labels is None:
        labels = [INTERCEPT] + [f"x{j}" for j in range(1, X.shape[1])]
    if len(labels) != X.shape[1]:
        raise SchemaError("one label per column required")
    return DesignMatrix(tuple(labels), X, y)


def level_counts(records, field: str) -> Dict[str, int]:
    """Count of records at each observed level of a nominal field, in declaration order."""
    if field not in NOMINAL_FIELDS:
        raise SchemaError(f"{field!r} is not a nominal field")
    counts = Counter(getattr(r, field).value for r in records)
    return {m.value: counts[m.value] for m in NOMINAL_FIELDS[field] if counts[m.value]}


def write_design_csv(design: DesignMatrix, path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow([*design.column_labels, "y"])
        for row, yi in zip(design.X, design.y):
            w.writerow([repr(float(v)) for v in row] + [repr(float(yi))])
