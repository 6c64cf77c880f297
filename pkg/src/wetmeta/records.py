"""Valuation records: data model, CSV ingestion and value normalization.

Values are standardized to 2007 US$ per hectare per year. A record's raw
value is already per hectare and per year in its own currency; the
normalization tables supply the exchange rate (US$ per unit of currency in
the value year) and a price deflator indexed to 2007 = 1.0.
"""

import csv
import math
from dataclasses import dataclass, field, fields
from enum import Enum
from importlib import resources
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from .errors import (
    MalformedRow,
    MissingDeflator,
    MissingRate,
    NonPositiveValue,
    UnknownEnumLabel,
)
from .quality import QualityCode, QualityEvidence, QualityState

BASE_YEAR = 2007
MIN_YEAR, MAX_YEAR = 1950, 2025


class Biome(str, Enum):
    INLAND_WETLANDS = "InlandWetlands"
    OTHER = "Other"


class WetlandType(str, Enum):
    FLOODPLAINS = "Floodplains"
    PEAT_WETLANDS = "PeatWetlands"
    SWAMPS_MARSHES = "SwampsMarshes"
    UNSPECIFIED = "Unspecified"


class Service(str, Enum):
    CLIMATE = "Climate"
    EXTREME_EVENTS = "ExtremeEvents"
    FOOD = "Food"
    GENEPOOL = "Genepool"
    MEDICAL = "Medical"
    ORNAMENTAL = "Ornamental"
    RAW_MATERIALS = "RawMaterials"
    RECREATION = "Recreation"
    SOIL_FERTILITY = "SoilFertility"
    WASTE = "Waste"
    WATER = "Water"
    WATER_FLOWS = "WaterFlows"
    TEV = "TEV"
    VARIOUS = "Various"


class Method(str, Enum):
    AVOIDED_COST = "AvoidedCost"
    CONTINGENT_VALUATION = "ContingentValuation"
    DIRECT_MARKET_PRICING = "DirectMarketPricing"
    FACTOR_INCOME_PRODUCTION = "FactorIncomeProduction"
    MITIGATION_RESTORATION_COST = "MitigationRestorationCost"
    REPLACEMENT_COST = "ReplacementCost"
    TRAVEL_COST = "TravelCost"
    BENEFIT_TRANSFER = "BenefitTransfer"


class ValueBasis(str, Enum):
    PER_ANNUM = "PerAnnum"
    OTHER = "Other"


NOMINAL_FIELDS = {
    "biome": Biome,
    "wetland_type": WetlandType,
    "service": Service,
    "method": Method,
    "value_basis": ValueBasis,
}

CONTINUOUS_FIELDS = ("wetland_size_ha", "gni_per_capita", "population_density")

EVIDENCE_COLUMNS = {
    "ev_degradation_described": "degradation_described",
    "ev_degrading_activities": "degrading_activities",
    "ev_market_price_method": "market_price_method",
    "ev_ideal_state_assumed": "ideal_state_assumed",
}

COLUMNS = (
    "record_id", "article_id", "biome", "wetland_type", "service", "method",
    "value_basis", "raw_value", "currency_code", "value_year",
    "wetland_size_ha", "gni_per_capita", "population_density",
    *EVIDENCE_COLUMNS, "quality_code",
)

# columns a policy site carries: everything except the observed value
SITE_COLUMNS = tuple(c for c in COLUMNS if c not in ("raw_value", "currency_code", "value_year"))


@dataclass(frozen=True)
class StudyRecord:
    record_id: str
    article_id: str
    biome: Biome
    wetland_type: WetlandType
    service: Service
    method: Method
    value_basis: ValueBasis
    raw_value: float
    currency_code: str
    value_year: int
    wetland_size_ha: float
    gni_per_capita: float
    population_density: float
    quality_evidence: QualityEvidence = field(default_factory=QualityEvidence)
    quality_code: Optional[QualityCode] = None


@dataclass(frozen=True)
class NormalizationTables:
    deflator: Dict[int, float]
    fx: Dict[Tuple[str, int], float]

    def __post_init__(self):
        if self.deflator.get(BASE_YEAR) != 1.0:
            raise MalformedRow(0, f"deflator for {BASE_YEAR} must be exactly 1.0")
        for key, rate in [*self.deflator.items(), *self.fx.items()]:
            if not rate > 0:
                raise NonPositiveValue("rate", value=rate)


def bundled_path(name: str) -> Path:
    """Path of a file shipped in the package ``data`` directory."""
    return Path(str(resources.files("wetmeta") / "data" / name))


def resolve_label(enum_cls, value, column, line=None):
    """Resolve a label case-insensitively against the enum's canonical labels."""
    if isinstance(value, enum_cls):
        return value
    key = str(value).strip().lower()
    for member in enum_cls:
        if member.value.lower() == key:
            return member
    raise UnknownEnumLabel(column, value, line)


def _parse_float(raw, column, line, positive=True):
    try:
        value = float(raw)
    except (TypeError, ValueError):
        raise MalformedRow(line, f"column {column!r}: not a number: {raw!r}") from None
    if not math.isfinite(value):
        raise MalformedRow(line, f"column {column!r}: not finite: {raw!r}")
    if positive and value <= 0:
        raise NonPositiveValue(column, line, value)
    return value


def _parse_bool(raw, column, line):
    raw = (raw or "").strip()
    if raw not in ("0", "1"):
        raise MalformedRow(line, f"column {column!r}: expected 0 or 1, got {raw!r}")
    return raw == "1"


def _parse_quality(raw, line):
    raw = (raw or "").strip()
    if not raw:
        return None
    if raw not in ("1", "2"):
        raise MalformedRow(line, f"column 'quality_code': expected 1, 2 or blank, got {raw!r}")
    return QualityCode(QualityState(int(raw)))


def _check_header(header, required, path):
    if header is None:
        raise MalformedRow(1, f"{path}: missing header row")
    missing = [c for c in required if c not in header]
    if missing:
        raise MalformedRow(1, "missing columns: " + ", ".join(missing))


def read_rows(path, required):
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        _check_header(header, required, path)
        for row in reader:
            line = reader.line_num
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) != len(header):
                raise MalformedRow(line, f"expected {len(header)} fields, got {len(row)}")
            yield line, dict(zip(header, row))


def parse_site_fields(row, line):
    out = {}
    for column, enum_cls in NOMINAL_FIELDS.items():
        out[column] = resolve_label(enum_cls, row[column], column, line)
    for column in CONTINUOUS_FIELDS:
        out[column] = _parse_float(row[column], column, line)
    out["quality_evidence"] = QualityEvidence(
        **{attr: _parse_bool(row[col], col, line) for col, attr in EVIDENCE_COLUMNS.items()}
    )
    out["quality_code"] = _parse_quality(row.get("quality_code"), line)
    return out


def parse_dataset(path, format: str = "DelimitedTable") -> List[StudyRecord]:
    """Read valuation records from a comma-delimited UTF-8 file.

    Rows come back in file order. The ``quality_code`` column may be
    omitted or left blank; every other column in ``COLUMNS`` is required.

    Raises
    ------
    MalformedRow, UnknownEnumLabel, NonPositiveValue
        With the offending line (header is line 1) and column.
    """
    if format != "DelimitedTable":
        raise ValueError(f"unsupported format {format!r}")
    required = [c for c in COLUMNS if c != "quality_code"]
    records = []
    seen = set()
    for line, row in read_rows(path, required):
        record_id = row["record_id"].strip()
        if not record_id:
            raise MalformedRow(line, "empty record_id")
        if record_id in seen:
            raise MalformedRow(line, f"duplicate record_id {record_id!r}")
        seen.add(record_id)
        try:
            year = int(row["value_year"])
        except ValueError:
            raise MalformedRow(line, f"column 'value_year': not an integer: {row['value_year']!r}") from None
        if not MIN_YEAR <= year <= MAX_YEAR:
            raise MalformedRow(line, f"column 'value_year': {year} outside [{MIN_YEAR}, {MAX_YEAR}]")
        currency = row["currency_code"].strip().upper()
        if not currency:
            raise MalformedRow(line, "column 'currency_code': empty")
        records.append(StudyRecord(
            record_id=record_id,
            article_id=row["article_id"].strip(),
            raw_value=_parse_float(row["raw_value"], "raw_value", line),
            currency_code=currency,
            value_year=year,
            **parse_site_fields(row, line),
        ))
    return records


def _format_float(x):
    # repr round-trips exactly
    return repr(float(x))


def record_to_row(rec) -> Dict[str, str]:
    row = {}
    for f in fields(rec):
        value = getattr(rec, f.name)
        if f.name == "quality_evidence":
            for col, attr in EVIDENCE_COLUMNS.items():
                row[col] = "1" if getattr(value, attr) else "0"
        elif f.name == "quality_code":
            row["quality_code"] = "" if value is None else str(int(value.state))
        elif isinstance(value, Enum):
            row[f.name] = value.value
        elif isinstance(value, float):
            row[f.name] = _format_float(value)
        else:
            row[f.name] = str(value)
    return row


def write_dataset(records, path, columns=COLUMNS) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(columns), lineterminator="\n",
                                extrasaction="ignore")
        writer.writeheader()
        for rec in records:
            writer.writerow(record_to_row(rec))


def load_tables(path) -> NormalizationTables:
    """Read deflator and exchange-rate rows (columns: kind, currency_code, year, rate)."""
    deflator: Dict[int, float] = {}
    fx: Dict[Tuple[str, int], float] = {}
    for line, row in read_rows(path, ("kind", "currency_code", "year", "rate")):
        kind = row["kind"].strip().lower()
        try:
            year = int(row["year"])
        except ValueError:
            raise MalformedRow(line, f"column 'year': not an integer: {row['year']!r}") from None
        rate = _parse_float(row["rate"], "rate", line)
        if kind == "deflator":
            deflator[year] = rate
        elif kind == "fx":
            currency = row["currency_code"].strip().upper()
            if not currency:
                raise MalformedRow(line, "fx row without currency_code")
            fx[(currency, year)] = rate
        else:
            raise UnknownEnumLabel("kind", row["kind"], line)
    return NormalizationTables(deflator=deflator, fx=fx)


def normalize_value(record, tables: NormalizationTables) -> float:
    """Raw value converted to 2007 US$ per hectare per year."""
    try:
        rate = tables.fx[(record.currency_code, record.value_year)]
    except KeyError:
        raise MissingRate(record.currency_code, record.value_year) from None
    try:
        deflator = tables.deflator[record.value_year]
    except KeyError:
        raise MissingDeflator(record.value_year) from None
    return record.raw_value * rate / deflator


def load_bundled():
    """The bundled raw dataset and its normalization tables."""
    return (parse_dataset(bundled_path("teeb_inland_wetlands.csv")),
            load_tables(bundled_path("normalization_tables.csv")))
