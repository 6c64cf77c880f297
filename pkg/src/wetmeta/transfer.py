"""Benefit transfer: function and unit-value transfer, transfer error, LOOCV."""

import math
import statistics
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from .design import EncodingSchema, encode, quality_state_of
from .errors import (
    EmptySelection, InputError, MalformedRow, NonPositiveObserved, NumericalError, SchemaMismatch,
)
from .ols import RegressionFit, fit_ols
from .quality import QualityState, assign_quality
from .records import (
    SITE_COLUMNS, Biome, Method, Service, ValueBasis, WetlandType,
    normalize_value, parse_site_fields, read_rows,
)


class BackTransform(str, Enum):
    NAIVE_EXP = "NaiveExp"
    HALF_VARIANCE_CORRECTED = "HalfVarianceCorrected"


DEFAULT_MODE = BackTransform.HALF_VARIANCE_CORRECTED


@dataclass(frozen=True)
class PolicySite:
    site_id: str
    wetland_type: WetlandType
    service: Service
    method: Method
    wetland_size_ha: float
    gni_per_capita: float
    population_density: float
    quality_state: QualityState
    biome: Biome = Biome.INLAND_WETLANDS
    value_basis: ValueBasis = ValueBasis.PER_ANNUM

    @classmethod
    def from_record(cls, rec) -> "PolicySite":
        return cls(
            site_id=rec.record_id, wetland_type=rec.wetland_type, service=rec.service,
            method=rec.method, wetland_size_ha=rec.wetland_size_ha,
            gni_per_capita=rec.gni_per_capita, population_density=rec.population_density,
            quality_state=quality_state_of(rec), biome=rec.biome, value_basis=rec.value_basis,
        )


@dataclass(frozen=True)
class TransferPrediction:
    site_id: str
    log_prediction: float
    value_prediction: float
    mode: BackTransform
    model_id: str


def parse_sites(path) -> List[PolicySite]:
    """Read policy sites: the record columns minus raw_value, currency and year.

    The site id is taken from ``record_id``. A blank ``quality_code`` is
    filled in from the evidence flags.
    """
    required = [c for c in SITE_COLUMNS if c != "quality_code"]
    sites = []
    for line, row in read_rows(path, required):
        site_id = row["record_id"].strip()
        if not site_id:
            raise MalformedRow(line, "empty record_id")
        common = parse_site_fields(row, line)
        code = common["quality_code"] or assign_quality(common["quality_evidence"])
        sites.append(PolicySite(
            site_id=site_id,
            wetland_type=common["wetland_type"], service=common["service"],
            method=common["method"], wetland_size_ha=common["wetland_size_ha"],
            gni_per_capita=common["gni_per_capita"],
            population_density=common["population_density"],
            quality_state=code.state, biome=common["biome"], value_basis=common["value_basis"],
        ))
    return sites


def predict_log(fit: RegressionFit, schema: EncodingSchema, site) -> float:
    """Fitted log value at a site (disturbance set to zero)."""
    if tuple(schema.column_labels) != tuple(fit.column_labels):
        raise SchemaMismatch("schema columns do not match the fitted model")
    row = np.array(schema.encode_row(site))
    return float(row @ fit.coefficients)


def predict_value(fit, schema, site, mode=DEFAULT_MODE) -> TransferPrediction:
    """Back-transformed value prediction in 2007 US$ per ha per year.

    ``HalfVarianceCorrected`` returns the log-normal mean exp(yhat + s2/2);
    ``NaiveExp`` returns exp(yhat), the median.
    """
    mode = BackTransform(mode)
    yhat = predict_log(fit, schema, site)
    if mode is BackTransform.NAIVE_EXP:
        value = math.exp(yhat)
    else:
        value = math.exp(yhat + fit.sigma2 / 2.0)
    site_id = getattr(site, "site_id", getattr(site, "record_id", ""))
    return TransferPrediction(site_id, yhat, value, mode, fit.model_id)


def unit_value_transfer(records, tables, where: Callable = lambda r: True) -> float:
    """Mean normalized value of the records selected by ``where``."""
    values = [normalize_value(r, tables) for r in records if where(r)]
    if not values:
        raise EmptySelection("no records match the selection")
    return math.fsum(values) / len(values)


def transfer_error(predicted: float, observed: float) -> float:
    if not observed > 0:
        raise NonPositiveObserved(f"observed value must be > 0, got {observed!r}")
    return abs(predicted - observed) / observed


@dataclass(frozen=True)
class FoldResult:
    record_id: str
    observed: float
    function_prediction: Optional[float]
    unit_prediction: Optional[float]
    function_error: Optional[float]
    unit_error: Optional[float]
    folded_levels: Tuple[str, ...] = ()
    skip_reason: str = ""

    @property
    def skipped(self) -> bool:
        return self.function_error is None


@dataclass(frozen=True)
class LoocvResult:
    folds: Tuple[FoldResult, ...]
    mode: BackTransform

    @property
    def skipped(self) -> List[FoldResult]:
        return [f for f in self.folds if f.skipped]

    def summary(self) -> dict:
        fe = [f.function_error for f in self.folds if f.function_error is not None]
        ue = [f.unit_error for f in self.folds if f.unit_error is not None]
        stat = lambda xs, fn: fn(xs) if xs else math.nan
        return {
            "folds": len(self.folds),
            "skipped": len(self.skipped),
            "function_mean": stat(fe, statistics.fmean),
            "function_median": stat(fe, statistics.median),
            "unit_mean": stat(ue, statistics.fmean),
            "unit_median": stat(ue, statistics.median),
            "function_n": len(fe),
            "unit_n": len(ue),
        }


def fold_schema(schema: EncodingSchema, training) -> Tuple[EncodingSchema, Tuple[str, ...]]:
    """Move dummy levels that are absent from ``training`` into the reference."""
    folded = []
    for term in schema.nominal_groups:
        present = {getattr(r, term.field).value for r in training}
        missing = [lv for lv in term.levels if lv not in present]
        if missing:
            schema = schema.fold_levels(term.field, missing)
            folded.extend(f"{term.field}:{lv}" for lv in missing)
    return schema, tuple(folded)


def _fold(i, records, schema, tables, mode, observed):
    held = records[i]
    training = records[:i] + records[i + 1:]
    same = [observed[j] for j, r in enumerate(records) if j != i and r.service == held.service]
    unit = math.fsum(same) / len(same) if same else None
    unit_err = transfer_error(unit, observed[i]) if unit is not None else None

    fschema, folded = fold_schema(schema, training)
    try:
        fit = fit_ols(encode(training, fschema, tables))
        pred = predict_value(fit, fschema, PolicySite.from_record(held), mode).value_prediction
    except (NumericalError, InputError) as exc:
        return FoldResult(held.record_id, observed[i], None, unit, None, unit_err, folded,
                          exc.qualified())
    return FoldResult(held.record_id, observed[i], pred, unit,
                      transfer_error(pred, observed[i]), unit_err, folded)


def loocv(records: Sequence, schema: EncodingSchema, tables, mode=DEFAULT_MODE,
          workers: Optional[int] = None) -> LoocvResult:
    """Leave-one-out comparison of function transfer against unit-value transfer.

    For each record the model is refitted on the remaining records and used
    to predict the held-out value; the unit-value prediction is the mean
    value of the other records for the same service. Folds that cannot be
    fitted are kept in the result with a skip reason. Results are in record
    order whatever ``workers`` is.
    """
    mode = BackTransform(mode)
    records = list(records)
    observed = [normalize_value(r, tables) for r in records]
    run = lambda i: _fold(i, records, schema, tables, mode, observed)
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            folds = list(pool.map(run, range(len(records))))
    else:
        folds = [run(i) for i in range(len(records))]
    return LoocvResult(tuple(folds), mode)
