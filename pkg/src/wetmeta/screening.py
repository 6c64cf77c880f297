"""Ordered, audited screening of raw query results down to the analysis set."""

from dataclasses import dataclass, fields
from typing import Callable, List, Sequence, Tuple

from .records import Method, Service, StudyRecord, ValueBasis

Rule = Tuple[str, Callable[[List[StudyRecord]], List[StudyRecord]]]


def duplicate_key(rec: StudyRecord) -> tuple:
    """All fields except ``record_id``; equal keys mean duplicate records."""
    return tuple(getattr(rec, f.name) for f in fields(rec) if f.name != "record_id")


def drop_duplicates(records):
    seen = set()
    out = []
    for rec in records:
        key = duplicate_key(rec)
        if key not in seen:
            seen.add(key)
            out.append(rec)
    return out


def _keep(predicate):
    return lambda records: [r for r in records if predicate(r)]


DEFAULT_RULES: Tuple[Rule, ...] = (
    ("remove_duplicates", drop_duplicates),
    ("keep_per_annum", _keep(lambda r: r.value_basis is ValueBasis.PER_ANNUM)),
    ("remove_benefit_transfer", _keep(lambda r: r.method is not Method.BENEFIT_TRANSFER)),
    ("remove_tev_various", _keep(lambda r: r.service not in (Service.TEV, Service.VARIOUS))),
)


@dataclass(frozen=True)
class Stage:
    name: str
    removed: int
    remaining: int
    articles: int


@dataclass(frozen=True)
class ScreeningReport:
    ingested: int
    ingested_articles: int
    stages: Tuple[Stage, ...]
    retained: Tuple[StudyRecord, ...]

    @property
    def article_count(self) -> int:
        return _n_articles(self.retained)


def _n_articles(records):
    return len({r.article_id for r in records})


def screen(records: Sequence[StudyRecord], rules: Sequence[Rule] = DEFAULT_RULES) -> ScreeningReport:
    """Apply the screening rules in order, recording what each one removed.

    The default rules remove exact duplicates (keeping the first occurrence),
    keep per-annum values only, then drop benefit-transfer values and
    values that are not for a single service (TEV or 'various').
    """
    current = list(records)
    stages = []
    for name, rule in rules:
        kept = rule(current)
        stages.append(Stage(name, len(current) - len(kept), len(kept), _n_articles(kept)))
        current = kept
    return ScreeningReport(
        ingested=len(records),
        ingested_articles=_n_articles(records),
        stages=tuple(stages),
        retained=tuple(current),
    )


def stage_counts(report: ScreeningReport) -> List[Tuple[str, int, int]]:
    return [(s.name, s.removed, s.remaining) for s in report.stages]
