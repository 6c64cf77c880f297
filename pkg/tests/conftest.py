import csv
import math

import pytest

from wetmeta.design import EncodingSchema, LogTerm, NominalTerm
from wetmeta.quality import QualityCode, QualityEvidence, QualityState, code_records
from wetmeta.records import (
    Biome, Method, NormalizationTables, Service, StudyRecord, ValueBasis, WetlandType,
    bundled_path, load_bundled,
)
from wetmeta.screening import screen


@pytest.fixture(scope="session")
def bundled():
    return load_bundled()


@pytest.fixture(scope="session")
def raw_records(bundled):
    return bundled[0]


@pytest.fixture(scope="session")
def tables(bundled):
    return bundled[1]


@pytest.fixture(scope="session")
def analysis_set(raw_records):
    return code_records(screen(raw_records).retained)


@pytest.fixture
def usd_tables():
    years = range(1990, 2011)
    return NormalizationTables(
        deflator={y: (1.0 if y == 2007 else 0.5 if y == 1990 else 0.9) for y in years},
        fx={("USD", y): 1.0 for y in years},
    )


def make_record(record_id="R1", **overrides):
    base = dict(
        record_id=record_id, article_id="Test2000", biome=Biome.INLAND_WETLANDS,
        wetland_type=WetlandType.FLOODPLAINS, service=Service.FOOD,
        method=Method.DIRECT_MARKET_PRICING, value_basis=ValueBasis.PER_ANNUM,
        raw_value=100.0, currency_code="USD", value_year=2007,
        wetland_size_ha=1000.0, gni_per_capita=1000.0, population_density=50.0,
        quality_evidence=QualityEvidence(),
        quality_code=QualityCode(QualityState.NATURALLY_FUNCTIONING),
    )
    base.update(overrides)
    return StudyRecord(**base)


@pytest.fixture
def record_factory():
    return make_record


# noise-free log-linear data on a small schema
SMALL = EncodingSchema((LogTerm("size", "wetland_size_ha"), LogTerm("gni", "gni_per_capita"),
                        NominalTerm("wt", "wetland_type", ("Floodplains",), ("Unspecified",))))


def noise_free_records(n=10):
    recs = []
    for i in range(n):
        size = 10.0 * (i + 1) ** 1.7
        gni = 500.0 + 900.0 * ((i * 7) % n)
        flood = i % 2 == 0
        log_v = 1.0 + 0.5 * math.log(size) - 0.3 * math.log(gni) + (0.8 if flood else 0.0)
        recs.append(make_record(
            f"N{i}", wetland_size_ha=size, gni_per_capita=gni, raw_value=math.exp(log_v),
            wetland_type=WetlandType.FLOODPLAINS if flood else WetlandType.UNSPECIFIED))
    return recs


def read_csv(name):
    with open(bundled_path(name), newline="", encoding="utf-8") as fh:
        return list(csv.DictReader(fh))


# one summary line per acceptance criterion -----------------------------

_ACCEPTANCE = []


def pytest_runtest_logreport(report):
    if "test_acceptance.py" in report.nodeid and (report.when == "call" or report.outcome == "failed"):
        _ACCEPTANCE.append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")
