"""Regenerate the bundled reconstruction of the TEEB inland-wetland query.

The published study reports only counts: 255 query results, 149 items from
43 articles after de-duplication and per-annum filtering, and 70 items from
27 articles after removing benefit-transfer, TEV and 'various' values. It
also publishes the service x wetland-type and service x method cross tables
and a quality code per article. This script rebuilds a dataset that honours
all of those counts exactly. Everything numeric (values, site sizes, GNI,
population density, exchange rates) is synthesized or approximate and must
not be read as the original data.

Values of the 70 analysed records are drawn from a log-linear model whose
coefficients are the published regression estimates plus Gaussian noise,
so the bundled fit behaves like the original without reproducing it.

Usage::

    python tools/build_bundled_dataset.py [--out src/wetmeta/data]
"""

import argparse
import csv
import math
from collections import Counter
from pathlib import Path

import numpy as np

from wetmeta.quality import QualityEvidence
from wetmeta.records import (
    Biome, Method, Service, StudyRecord, ValueBasis, WetlandType, write_dataset,
)

SEED = 20140611
NOISE_SD = 2.5

F, P, S, U = "Floodplains", "PeatWetlands", "SwampsMarshes", "Unspecified"
AC, CV, DMP, FIP, MRC, RC, TC = (
    "AvoidedCost", "ContingentValuation", "DirectMarketPricing",
    "FactorIncomeProduction", "MitigationRestorationCost", "ReplacementCost", "TravelCost",
)

# evidence flag order: degradation_described, degrading_activities,
# market_price_method, ideal_state_assumed
# (article, article code, annotation, currency, year, gni, pop density, size ha, flags, cells)
ARTICLES = [
    ("Acharaya2000", 1, "", "USD", 1997, 930, 159, 1950, (0, 0, 0, 0),
     [("Food", F, FIP), ("WaterFlows", F, FIP)]),
    ("Adekola2008", 2, "", "ZAR", 2005, 5760, 39, 1500, (1, 0, 1, 0),
     [("Food", U, DMP)] * 3 + [("RawMaterials", U, DMP)]),
    ("Barbier1991", 2, "", "USD", 1989, 930, 159, 730000, (1, 1, 1, 0),
     [("Food", F, DMP), ("RawMaterials", F, DMP), ("RawMaterials", F, DMP)]),
    ("Costanza1997", 1, "", "USD", 1994, 7958, 50, 165000000, (0, 0, 0, 0),
     [("Climate", S, AC), ("ExtremeEvents", S, AC), ("Waste", S, AC)]),
    ("DepartmentOfConservation2007", 1, "", "NZD", 2007, 28780, 16, 5690, (0, 0, 0, 0),
     [("ExtremeEvents", P, AC), ("ExtremeEvents", P, AC), ("Recreation", P, CV)]),
    ("Dubgaard2002", 1, "", "DKK", 2001, 54910, 128, 2200, (0, 1, 0, 1),
     [("Recreation", F, FIP), ("Waste", F, RC)]),
    ("Emerton2005", 1, "", "USD", 2003, 800, 16, 550000, (0, 0, 0, 0),
     [("Food", F, DMP)] * 2 + [("RawMaterials", F, DMP)] * 2 + [("Medical", F, DMP)]),
    ("EmertonBos2004", 1, "", "LKR", 2003, 1540, 316, 3068, (0, 0, 0, 0),
     [("ExtremeEvents", S, AC), ("ExtremeEvents", S, MRC), ("Waste", S, RC), ("Water", S, MRC)]),
    ("EmertonMuramira1999", 1, "", "USD", 1998, 370, 152, 26000, (0, 0, 0, 0),
     [("Food", S, DMP)] * 2 + [("RawMaterials", S, DMP)] * 2),
    ("Emerton1998", 1, "", "USD", 1997, 1090, 36, 3000, (0, 0, 0, 0),
     [("Genepool", S, CV), ("Ornamental", S, DMP), ("RawMaterials", S, DMP)]),
    ("Gerrard2004", 2, "2(1)", "USD", 2003, 630, 26, 2000, (0, 1, 1, 0),
     [("Food", U, DMP)] * 2 + [("RawMaterials", U, DMP)] * 2),
    ("Karanja2001", 2, "", "USD", 2000, 370, 152, 52000, (0, 1, 0, 0),
     [("Food", U, DMP), ("RawMaterials", U, DMP), ("RawMaterials", U, DMP), ("Water", U, DMP)]),
    ("Kasthala2008", 2, "", "USD", 2007, 950, 382, 12000, (1, 0, 0, 0),
     [("Genepool", U, DMP), ("Recreation", U, DMP), ("Recreation", U, DMP)]),
    ("Kumari1996", 2, "", "MYR", 1995, 6420, 81, 350000, (1, 0, 0, 0),
     [("Genepool", P, CV), ("Waste", P, RC), ("Waste", P, MRC)]),
    ("LantRoberts1990", 1, "", "USD", 1987, 46040, 32, 40000, (1, 0, 0, 1),
     [("Genepool", U, CV), ("Waste", U, CV)]),
    ("Loth2004", 1, "", "USD", 2003, 1050, 39, 600000, (1, 0, 1, 1),
     [("Food", F, DMP)] * 2 + [("RawMaterials", F, DMP), ("ExtremeEvents", F, AC)]),
    ("Ly2006", 1, "", "USD", 2005, 870, 62, 16000, (0, 0, 0, 0),
     [("Recreation", S, TC)]),
    ("Mallawaarachchi2001", 1, "quantity reduced and quality unchanged", "AUD", 2000,
     35960, 2.7, 4300, (0, 0, 0, 0),
     [("RawMaterials", S, DMP)]),
    ("MeyerhoffDehnhardt2004", 1, "", "EUR", 2003, 38860, 236, 15000, (0, 0, 0, 0),
     [("Waste", F, FIP), ("Water", F, RC)]),
    ("Mmopelwa2009", 2, "", "USD", 2006, 6120, 3.4, 1600000, (0, 1, 1, 0),
     [("Food", F, DMP), ("RawMaterials", F, DMP)]),
    ("Phillips1998", 2, "", "USD", 1997, 370, 152, 3000000, (1, 0, 0, 0),
     [("Medical", U, DMP)]),
    ("Rosales2005", 1, "", "USD", 2004, 630, 26, 25000, (0, 0, 0, 0),
     [("Food", U, FIP), ("RawMaterials", U, DMP)]),
    ("Schuijt2002", 2, "", "USD", 2001, 930, 159, 280000, (1, 1, 0, 0),
     [("Food", F, DMP)]),
    ("ThibodeauOstro1981", 1, "", "USD", 1980, 46040, 32, 3400, (0, 1, 0, 1),
     [("Water", F, AC), ("Water", U, RC), ("Waste", U, RC)]),
    ("Tong2007", 2, "", "CNY", 2005, 2360, 140, 1100, (1, 0, 1, 0),
     [("Food", S, DMP)]),
    ("Turpie1999", 2, "", "USD", 1998, 800, 16, 900000, (0, 1, 1, 0),
     [("Food", U, DMP), ("SoilFertility", U, RC)]),
    ("Turpie2000", 2, "", "USD", 1999, 330, 27, 1200000, (1, 0, 1, 0),
     [("RawMaterials", U, DMP)]),
]

# Tong et al. figures in yuan per ha per year
TONG_CURRENT_VALUE = 5807.0
TONG_POTENTIAL_VALUE = 55332.0

SERVICE_BY_TYPE = {  # service -> (Floodplains, Peat, Swamps/marshes, Unspecified)
    "Climate": (0, 0, 1, 0), "ExtremeEvents": (1, 2, 3, 0), "Food": (8, 0, 3, 8),
    "Genepool": (0, 1, 1, 2), "Medical": (1, 0, 0, 1), "Ornamental": (0, 0, 1, 0),
    "RawMaterials": (6, 0, 4, 7), "Recreation": (1, 1, 1, 2), "SoilFertility": (0, 0, 0, 1),
    "Waste": (2, 2, 2, 2), "Water": (2, 0, 1, 2), "WaterFlows": (1, 0, 0, 0),
}
SERVICE_BY_METHOD = {  # service -> (AC, CV, DMP, FIP, MRC, RC, TC)
    "Climate": (1, 0, 0, 0, 0, 0, 0), "ExtremeEvents": (5, 0, 0, 0, 1, 0, 0),
    "Food": (0, 0, 17, 2, 0, 0, 0), "Genepool": (0, 3, 1, 0, 0, 0, 0),
    "Medical": (0, 0, 2, 0, 0, 0, 0), "Ornamental": (0, 0, 1, 0, 0, 0, 0),
    "RawMaterials": (0, 0, 17, 0, 0, 0, 0), "Recreation": (0, 1, 2, 1, 0, 0, 1),
    "SoilFertility": (0, 0, 0, 0, 0, 1, 0), "Waste": (1, 1, 0, 1, 1, 4, 0),
    "Water": (1, 0, 1, 0, 1, 2, 0), "WaterFlows": (0, 0, 0, 1, 0, 0, 0),
}

# generating coefficients for log 2007-US$ values (published point estimates)
TRUE_COEF = {
    "intercept": 1.645,
    AC: 5.182, CV: 2.201, DMP: 0.140, RC: 2.944,
    "ln_size": -0.183, "quality": 1.562,
    F: 0.670, P: 1.199, S: 0.799,
    "Climate": -2.989, "ExtremeEvents": -1.944, "Food": 1.324, "Genepool": -1.598,
    "Medical": -2.609, "RawMaterials": 0.388, "Recreation": -1.339, "SoilFertility": -2.454,
    "ln_gni": 0.257,
}

# annual-average US CPI-U, rebased to 2007 for the deflator
CPI = {
    1975: 53.8, 1976: 56.9, 1977: 60.6, 1978: 65.2, 1979: 72.6, 1980: 82.4,
    1981: 90.9, 1982: 96.5, 1983: 99.6, 1984: 103.9, 1985: 107.6, 1986: 109.6,
    1987: 113.6, 1988: 118.3, 1989: 124.0, 1990: 130.7, 1991: 136.2, 1992: 140.3,
    1993: 144.5, 1994: 148.2, 1995: 152.4, 1996: 156.9, 1997: 160.5, 1998: 163.0,
    1999: 166.6, 2000: 172.2, 2001: 177.1, 2002: 179.9, 2003: 184.0, 2004: 188.9,
    2005: 195.3, 2006: 201.6, 2007: 207.342, 2008: 215.303, 2009: 214.537, 2010: 218.056,
}

# approximate annual-average US$ per unit of local currency
FX = {
    ("ZAR", 2005): 0.1572, ("NZD", 2007): 0.7363, ("DKK", 2001): 0.1201,
    ("LKR", 2003): 0.01035, ("MYR", 1995): 0.3993, ("AUD", 2000): 0.5815,
    ("EUR", 2003): 1.1312, ("CNY", 2005): 0.12207,
}

N_AUX_ARTICLES = 16          # articles contributing only BT / TEV / various items
N_AUX_DROPPED_ARTICLES = 5   # articles whose every item is non-per-annum
N_BENEFIT_TRANSFER = 31
N_TEV_VARIOUS = 48           # includes Tong's potential-value TEV item
N_NOT_PER_ANNUM = 68
N_DUPLICATES = 38

AUX_CONTEXTS = [  # (gni, pop density)
    (930, 159), (5760, 39), (46040, 32), (38860, 236), (2360, 140), (800, 16),
    (370, 152), (950, 382), (6420, 81), (54910, 128), (1050, 39), (28780, 16),
]


def deflators():
    base = CPI[2007]
    return {y: (1.0 if y == 2007 else round(v / base, 6)) for y, v in CPI.items()}


def check_marginals(cells):
    types = (F, P, S, U)
    methods = (AC, CV, DMP, FIP, MRC, RC, TC)
    by_type = Counter((s, t) for s, t, _ in cells)
    by_method = Counter((s, m) for s, _, m in cells)
    for service, counts in SERVICE_BY_TYPE.items():
        got = tuple(by_type[(service, t)] for t in types)
        assert got == counts, (service, got, counts)
    for service, counts in SERVICE_BY_METHOD.items():
        got = tuple(by_method[(service, m)] for m in methods)
        assert got == counts, (service, got, counts)
    assert len(cells) == 70


def model_log_value(service, wtype, method, size, gni, quality_state):
    y = TRUE_COEF["intercept"]
    y += TRUE_COEF.get(method, 0.0) + TRUE_COEF.get(wtype, 0.0) + TRUE_COEF.get(service, 0.0)
    y += TRUE_COEF["ln_size"] * math.log(size) + TRUE_COEF["ln_gni"] * math.log(gni)
    if quality_state == 1:
        y += TRUE_COEF["quality"]
    return y


def raw_from_log(y, currency, year, defl):
    rate = 1.0 if currency == "USD" else FX[(currency, year)]
    return float(f"{math.exp(y) * defl[year] / rate:.6g}")


def make_record(rid, article, service, wtype, method, basis, raw, currency, year,
                size, gni, dens, flags):
    return StudyRecord(
        record_id=rid, article_id=article, biome=Biome.INLAND_WETLANDS,
        wetland_type=WetlandType(wtype), service=Service(service), method=Method(method),
        value_basis=ValueBasis(basis), raw_value=raw, currency_code=currency,
        value_year=year, wetland_size_ha=float(size), gni_per_capita=float(gni),
        population_density=float(dens),
        quality_evidence=QualityEvidence(*(bool(f) for f in flags)),
    )


def build(rng):
    defl = deflators()
    check_marginals([c for a in ARTICLES for c in a[9]])
    rows = []

    # the 70 analysed items
    for art, code, _, cur, year, gni, dens, size, flags, cells in ARTICLES:
        for service, wtype, method in cells:
            if art == "Tong2007":
                raw = TONG_CURRENT_VALUE
            else:
                y = model_log_value(service, wtype, method, size, gni, code) + rng.normal(0, NOISE_SD)
                raw = raw_from_log(y, cur, year, defl)
            rows.append((art, service, wtype, method, "PerAnnum", raw, cur, year, size, gni, dens, flags))

    # per-annum items removed later: benefit transfer, then TEV / various
    aux = []
    for i in range(N_AUX_ARTICLES + N_AUX_DROPPED_ARTICLES):
        gni, dens = AUX_CONTEXTS[i % len(AUX_CONTEXTS)]
        year = int(rng.integers(1985, 2008))
        size = float(f"{math.exp(rng.uniform(6, 13)):.4g}")
        flags = tuple(int(b) for b in rng.integers(0, 2, size=4))
        aux.append((f"AuxStudy{i + 1:02d}", year, gni, dens, size, flags))
    contributors = [(a[0], a[3], a[4], a[5], a[6], a[7], a[8]) for a in ARTICLES
                    if a[0] not in ("Tong2007", "Ly2006")]
    main_ctx = {a[0]: (a[3], a[4], a[5], a[6], a[7], a[8]) for a in ARTICLES}

    def aux_row(article_ctx, service, method, basis):
        art, year, gni, dens, size, flags = article_ctx
        wtype = str(rng.choice([F, P, S, U]))
        raw = float(f"{math.exp(rng.normal(5.5, 2.0)):.6g}")
        return (art, service, wtype, method, basis, raw, "USD", year, size, gni, dens, flags)

    def main_ctx_tuple(art):
        cur, year, gni, dens, size, flags = main_ctx[art]
        return (art, year, gni, dens, size, flags)

    keep_aux = aux[:N_AUX_ARTICLES]
    singles = [str(s.value) for s in Service if s.value not in ("TEV", "Various")]
    nonbt_methods = [m.value for m in Method if m.value != "BenefitTransfer"]

    extra = []
    # every surviving auxiliary article gets at least one per-annum item
    for j, ctx in enumerate(keep_aux):
        if j % 2 == 0:
            extra.append(aux_row(ctx, str(rng.choice(singles + ["TEV"])), "BenefitTransfer", "PerAnnum"))
        else:
            extra.append(aux_row(ctx, str(rng.choice(["TEV", "Various"])),
                                 str(rng.choice(nonbt_methods)), "PerAnnum"))
    n_bt = sum(1 for r in extra if r[3] == "BenefitTransfer")
    n_tev = len(extra) - n_bt

    cur, year, gni, dens, size, flags = main_ctx["Tong2007"]
    extra.append(("Tong2007", "TEV", S, DMP, "PerAnnum", TONG_POTENTIAL_VALUE, cur, year,
                  size, gni, dens, flags))
    n_tev += 1

    pool = keep_aux + [main_ctx_tuple(a[0]) for a in contributors]
    while n_bt < N_BENEFIT_TRANSFER:
        ctx = pool[int(rng.integers(len(pool)))]
        extra.append(aux_row(ctx, str(rng.choice(singles + ["TEV", "Various"])),
                             "BenefitTransfer", "PerAnnum"))
        n_bt += 1
    while n_tev < N_TEV_VARIOUS:
        ctx = pool[int(rng.integers(len(pool)))]
        extra.append(aux_row(ctx, str(rng.choice(["TEV", "Various"])),
                             str(rng.choice(nonbt_methods)), "PerAnnum"))
        n_tev += 1
    rows.extend(extra)

    # items that are not per-annum values
    drop_pool = pool + aux[N_AUX_ARTICLES:]
    for i in range(N_NOT_PER_ANNUM):
        ctx = aux[N_AUX_ARTICLES + i] if i < N_AUX_DROPPED_ARTICLES else drop_pool[int(rng.integers(len(drop_pool)))]
        service = str(rng.choice([s.value for s in Service]))
        method = str(rng.choice([m.value for m in Method]))
        rows.append(aux_row(ctx, service, method, "Other"))

    assert len(rows) == 255 - N_DUPLICATES
    assert len(set(rows)) == len(rows)

    dup_idx = rng.choice(len(rows), size=N_DUPLICATES, replace=False)
    rows.extend(rows[int(i)] for i in sorted(dup_idx))

    order = rng.permutation(len(rows))
    records = []
    for rid, i in enumerate(order, start=1):
        records.append(make_record(f"R{rid:04d}", *rows[int(i)]))
    return records, defl


def write_tables(path, defl):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["kind", "currency_code", "year", "rate"])
        for year in sorted(defl):
            w.writerow(["deflator", "", year, repr(defl[year])])
        for year in sorted(defl):
            w.writerow(["fx", "USD", year, "1.0"])
        for (cur, year), rate in sorted(FX.items()):
            w.writerow(["fx", cur, year, repr(rate)])


def write_article_codes(path):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["article_id", "quality_code", "annotation"])
        for art, code, note, *_ in ARTICLES:
            w.writerow([art, code, note])


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", default=Path(__file__).resolve().parents[1] / "src" / "wetmeta" / "data",
                        type=Path)
    args = parser.parse_args()
    records, defl = build(np.random.default_rng(SEED))
    write_dataset(records, args.out / "teeb_inland_wetlands.csv")
    write_tables(args.out / "normalization_tables.csv", defl)
    write_article_codes(args.out / "article_quality_codes.csv")
    print(f"wrote {len(records)} records to {args.out}")


if __name__ == "__main__":
    main()
