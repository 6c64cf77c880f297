"""Deterministic text and CSV renderings of cross tables, fits, audits and LOOCV.

Every rendering ends with exactly one newline. Coefficients and p-values
use three decimals with the leading zero dropped (``.038``, ``-.183``).
"""

import csv
import io
import math
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from .design import LogTerm, NominalTerm
from .errors import NotNominalField
from .ols import significance_stars
from .records import NOMINAL_FIELDS

DISPLAY = {
    "Floodplains": "Flood-plains",
    "PeatWetlands": "Peat-wetlands",
    "SwampsMarshes": "Swamps / marshes",
    "Unspecified": "Wetlands [unspecified]",
    "ExtremeEvents": "Extreme events",
    "RawMaterials": "Raw materials",
    "SoilFertility": "Soil fertility",
    "WaterFlows": "Water flows",
    "AvoidedCost": "Avoided Cost",
    "ContingentValuation": "Contingent Valuation",
    "DirectMarketPricing": "Direct market pricing",
    "FactorIncomeProduction": "Factor Income / Production Function",
    "MitigationRestorationCost": "Mitigation and Restoration Cost",
    "ReplacementCost": "Replacement Cost",
    "TravelCost": "Travel Cost",
    "BenefitTransfer": "Benefit Transfer",
    "InlandWetlands": "Inland wetlands",
    "PerAnnum": "Value per annum",
}

COLUMN_DISPLAY = {
    "intercept": "(Constant)",
    "quality": "Quality",
    "ln(wetland_size_ha)": "Size(ln)",
    "ln(gni_per_capita)": "GNI per capita (ln)",
    "ln(population_density)": "Population density (ln)",
}

FIELD_DISPLAY = {
    "service": "Eco-Service",
    "wetland_type": "Ecosystem",
    "method": "Valuation Method",
    "biome": "Biome",
    "value_basis": "Value basis",
}


def display_level(level: str) -> str:
    return DISPLAY.get(level, level)


def display_column(label: str) -> str:
    if label in COLUMN_DISPLAY:
        return COLUMN_DISPLAY[label]
    if ":" in label:
        return display_level(label.split(":", 1)[1])
    return label


def fmt3(x: float) -> str:
    """Three decimals, leading zero dropped, no negative zero."""
    if math.isnan(x):
        return "NA"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    s = f"{x:.3f}"
    if s in ("-0.000", "0.000"):
        return ".000"
    if s.startswith("0."):
        return s[1:]
    if s.startswith("-0."):
        return "-" + s[2:]
    return s


def _csv_text(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerows(rows)
    return buf.getvalue()


def _align(rows: Sequence[Sequence[str]], right_from: int = 1) -> str:
    widths = [max(len(r[j]) for r in rows) for j in range(len(rows[0]))]
    lines = []
    for r in rows:
        cells = [c.ljust(widths[j]) if j < right_from else c.rjust(widths[j])
                 for j, c in enumerate(r)]
        lines.append("  ".join(cells).rstrip())
    return "\n".join(lines) + "\n"


# cross tables ---------------------------------------------------------

@dataclass(frozen=True)
class CrossTab:
    row_dim: str
    col_dim: str
    row_labels: Tuple[str, ...]
    col_labels: Tuple[str, ...]
    cells: np.ndarray

    @property
    def row_totals(self) -> np.ndarray:
        return self.cells.sum(axis=1)

    @property
    def col_totals(self) -> np.ndarray:
        return self.cells.sum(axis=0)

    @property
    def grand_total(self) -> int:
        return int(self.cells.sum())

    def cell(self, row: str, col: str) -> int:
        return int(self.cells[self.row_labels.index(row), self.col_labels.index(col)])


def crosstab(records, row_dim: str, col_dim: str) -> CrossTab:
    """Counts of records by two nominal fields, labels in declaration order."""
    for dim in (row_dim, col_dim):
        if dim not in NOMINAL_FIELDS:
            raise NotNominalField(dim)
    rows = tuple(m.value for m in NOMINAL_FIELDS[row_dim])
    cols = tuple(m.value for m in NOMINAL_FIELDS[col_dim])
    cells = np.zeros((len(rows), len(cols)), dtype=int)
    for rec in records:
        cells[rows.index(getattr(rec, row_dim).value), cols.index(getattr(rec, col_dim).value)] += 1
    return CrossTab(row_dim, col_dim, rows, cols, cells)


def render_crosstab(tab: CrossTab, fmt: str = "text", suppress_empty: bool = False) -> str:
    ri = list(range(len(tab.row_labels)))
    ci = list(range(len(tab.col_labels)))
    if suppress_empty:
        ri = [i for i in ri if tab.row_totals[i]]
        ci = [j for j in ci if tab.col_totals[j]]
    if fmt == "csv":
        rows = [[f"{tab.row_dim}\\{tab.col_dim}", *(tab.col_labels[j] for j in ci), "Total"]]
        for i in ri:
            rows.append([tab.row_labels[i], *(str(tab.cells[i, j]) for j in ci), str(tab.row_totals[i])])
        rows.append(["Total", *(str(tab.col_totals[j]) for j in ci), str(tab.grand_total)])
        return _csv_text(rows)
    head = f"{FIELD_DISPLAY.get(tab.row_dim, tab.row_dim)} \\ {FIELD_DISPLAY.get(tab.col_dim, tab.col_dim)}"
    rows = [[head, *(display_level(tab.col_labels[j]) for j in ci), "Grand Total"]]
    for i in ri:
        rows.append([display_level(tab.row_labels[i]),
                     *(str(tab.cells[i, j]) if tab.cells[i, j] else "" for j in ci),
                     str(tab.row_totals[i])])
    rows.append(["Grand Total", *(str(tab.col_totals[j]) for j in ci), str(tab.grand_total)])
    return _align(rows)


# regression -----------------------------------------------------------

def format_coefficient_row(label: str, coef: float, p: float) -> str:
    """One regression row in published style, e.g. ``Quality  1.562**  .038``."""
    return f"{label}  {fmt3(coef)}{significance_stars(p)}  {fmt3(p)}"


def render_regression(fit, fmt: str = "text") -> str:
    """Regression table: coefficient with stars and p-value per row, fit statistics below.

    The CSV form carries every statistic (coefficient, standard error, t,
    p, stars) and the footer as ``#``-prefixed key/value rows.
    """
    if fmt == "csv":
        rows = [["label", "coefficient", "std_error", "t", "p", "stars"]]
        for lab, b, se, t, p in zip(fit.column_labels, fit.coefficients, fit.std_errors,
                                    fit.t_values, fit.p_values):
            rows.append([lab, fmt3(b), fmt3(se), fmt3(t), fmt3(p), significance_stars(p)])
        rows += [["#n", str(fit.n)], ["#df_residual", str(fit.df_residual)],
                 ["#r2", fmt3(fit.r2)], ["#adj_r2", fmt3(fit.adj_r2)],
                 ["#f", fmt3(fit.f_stat)], ["#f_p_value", fmt3(fit.f_p_value)],
                 ["#sigma2", fmt3(fit.sigma2)]]
        return _csv_text(rows)
    rows = [["Variable", "Coefficient   ", "p-value"]]
    for lab, b, p in zip(fit.column_labels, fit.coefficients, fit.p_values):
        # pad stars so the decimal points line up
        rows.append([display_column(lab), f"{fmt3(b)}{significance_stars(p):<3}", fmt3(p)])
    table = _align(rows)
    footer = (f"OLS results. n = {fit.n}; R2 = {fmt3(fit.r2)}; Adj. R2 = {fmt3(fit.adj_r2)}. "
              f"F = {fmt3(fit.f_stat)}; p-value = {fmt3(fit.f_p_value)}.\n"
              "Significance: *** 1%, ** 5%, * 10%.\n")
    return table + footer


# variable overview ----------------------------------------------------

GROUPS = {
    "method": "Study (X_S)",
    "wetland_size_ha": "Wetland (X_E)", "quality": "Wetland (X_E)",
    "wetland_type": "Wetland (X_E)", "service": "Wetland (X_E)",
    "gni_per_capita": "Socio-Economic Context (X_C)",
    "population_density": "Socio-Economic Context (X_C)",
}

VARIABLE_DISPLAY = {
    "method": "Valuation method", "wetland_size_ha": "Wetland size", "quality": "Wetland quality",
    "wetland_type": "Wetland type", "service": "Service provided",
    "gni_per_capita": "GNI per capita", "population_density": "Population density",
}

UNITS = {
    "wetland_size_ha": "in Hectares",
    "gni_per_capita": "2007 US$ per person per year in nation",
    "population_density": "Population per sq km in nation",
}


def overview_rows(records, schema):
    """(group, variable, type, level or unit, N) per explanatory variable and level.

    Nominal terms list every level named in the schema (own dummy or
    reference) that occurs in ``records``.
    """
    out = []
    for term in schema.terms:
        if isinstance(term, NominalTerm):
            counts = {}
            for rec in records:
                level = getattr(rec, term.field).value
                counts[level] = counts.get(level, 0) + 1
            named = set(term.levels) | set(term.reference)
            order = [m.value for m in NOMINAL_FIELDS[term.field] if m.value in named and counts.get(m.value)]
            for level in order:
                out.append((GROUPS.get(term.field, ""), VARIABLE_DISPLAY.get(term.field, term.field),
                            "Nominal", display_level(level), counts[level]))
        elif isinstance(term, LogTerm):
            out.append((GROUPS.get(term.field, ""), VARIABLE_DISPLAY.get(term.field, term.field),
                        "Ratio", UNITS.get(term.field, ""), len(records)))
        else:
            out.append((GROUPS["quality"], VARIABLE_DISPLAY["quality"], "Binary", "0/1", len(records)))
    return out


def render_overview(records, schema, fmt: str = "text") -> str:
    """Overview of the explanatory variables and observation counts."""
    rows = overview_rows(records, schema)
    if fmt == "csv":
        return _csv_text([["group", "variable", "type", "level_or_unit", "n"],
                          *([g, v, t, lv, str(n)] for g, v, t, lv, n in rows)])
    table = [["Group", "Variable", "Type", "Levels / measurement unit", "N"]]
    prev = ("", "")
    for g, v, t, lv, n in rows:
        # print group and variable only where they change
        table.append([g if g != prev[0] else "", v if (g, v) != prev else "",
                      t if (g, v) != prev else "", lv, str(n)])
        prev = (g, v)
    return _align(table, right_from=4)


# screening ------------------------------------------------------------

def render_screening(report, fmt: str = "text") -> str:
    rows = [["stage", "removed", "remaining", "articles"],
            ["ingested", "0", str(report.ingested), str(report.ingested_articles)]]
    for s in report.stages:
        rows.append([s.name, str(s.removed), str(s.remaining), str(s.articles)])
    if fmt == "csv":
        return _csv_text(rows)
    return _align(rows)


# transfer -------------------------------------------------------------

def _num(x) -> str:
    return "NA" if x is None or (isinstance(x, float) and math.isnan(x)) else f"{x:.6f}"


def render_loocv(result, fmt: str = "text") -> str:
    rows = [["record_id", "function_error", "unit_error"]]
    for f in result.folds:
        rows.append([f.record_id, _num(f.function_error), _num(f.unit_error)])
    s = result.summary()
    footer = [
        ["#mode", result.mode.value],
        ["#folds", str(s["folds"])], ["#skipped", str(s["skipped"])],
        ["#function_mean", _num(s["function_mean"])], ["#function_median", _num(s["function_median"])],
        ["#unit_mean", _num(s["unit_mean"])], ["#unit_median", _num(s["unit_median"])],
    ]
    skipped = [["#skip", f.record_id, f.skip_reason] for f in result.skipped]
    if fmt == "csv":
        return _csv_text(rows + footer + skipped)
    text = _align(rows)
    text += "\n".join(f"{k[1:]}: {v}" for k, v in footer) + "\n"
    text += "".join(f"skipped {rid}: {why}\n" for _, rid, why in skipped)
    return text


def render_predictions(predictions, fmt: str = "text") -> str:
    rows = [["site_id", "log_prediction", "value_prediction", "mode", "model_id"]]
    for p in predictions:
        rows.append([p.site_id, f"{p.log_prediction:.6f}", f"{p.value_prediction:.6f}",
                     p.mode.value, p.model_id])
    if fmt == "csv":
        return _csv_text(rows)
    return _align(rows)
