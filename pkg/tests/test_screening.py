from collections import Counter
from dataclasses import replace

from hypothesis import given, settings, strategies as st

from wetmeta.records import Method, Service, ValueBasis
from wetmeta.screening import drop_duplicates, duplicate_key, screen, stage_counts

from conftest import make_record


def five_record_fixture():
    twin_a = make_record("T1")
    twin_b = make_record("T2")  # same fields, different id
    not_annual = make_record("N1", value_basis=ValueBasis.OTHER, raw_value=7.0)
    transferred = make_record("B1", method=Method.BENEFIT_TRANSFER, raw_value=8.0)
    clean = make_record("C1", service=Service.WATER, raw_value=9.0)
    return [twin_a, twin_b, not_annual, transferred, clean]


def test_bundled_endpoints(raw_records):
    report = screen(raw_records)
    assert report.ingested == 255
    assert report.stages[1].remaining == 149
    assert report.stages[1].articles == 43
    assert report.stages[-1].remaining == len(report.retained) == 70
    assert report.article_count == 27


def test_empty_input():
    report = screen([])
    assert stage_counts(report) == [(s.name, 0, 0) for s in report.stages]
    assert report.retained == ()
    assert report.article_count == 0


def test_single_stage_pipeline_on_empty_input():
    report = screen([], rules=[("remove_duplicates", drop_duplicates)])
    assert stage_counts(report) == [("remove_duplicates", 0, 0)]


def test_five_record_fixture_by_hand():
    report = screen(five_record_fixture())
    # one twin, the non-annual value and the benefit-transfer value go, in that order
    assert [removed for _, removed, _ in stage_counts(report)] == [1, 1, 1, 0]
    assert [r.record_id for r in report.retained] == ["T1", "C1"]


def test_stage_arithmetic(raw_records):
    report = screen(raw_records)
    previous = report.ingested
    for stage in report.stages:
        assert stage.remaining == previous - stage.removed
        previous = stage.remaining


def test_retained_is_untouched_subset(raw_records):
    report = screen(raw_records)
    ids = {id(r) for r in raw_records}
    assert all(id(r) in ids for r in report.retained)


# properties -----------------------------------------------------------

record_strategy = st.builds(
    make_record,
    record_id=st.just("x"),
    service=st.sampled_from(list(Service)),
    method=st.sampled_from(list(Method)),
    value_basis=st.sampled_from(list(ValueBasis)),
    raw_value=st.sampled_from([1.0, 2.0, 3.0]),
)


@st.composite
def record_lists(draw):
    recs = draw(st.lists(record_strategy, max_size=25))
    return [replace(r, record_id=f"R{i}") for i, r in enumerate(recs)]


@settings(max_examples=80)
@given(record_lists())
def test_idempotent(recs):
    once = screen(recs).retained
    assert screen(once).retained == once


@settings(max_examples=80)
@given(record_lists(), st.randoms(use_true_random=False))
def test_retained_multiset_invariant_under_permutation(recs, rnd):
    shuffled = list(recs)
    rnd.shuffle(shuffled)
    key = lambda rs: Counter(duplicate_key(r) for r in rs)
    assert key(screen(recs).retained) == key(screen(shuffled).retained)


@settings(max_examples=80)
@given(record_lists(), record_strategy)
def test_adding_a_record_never_shrinks_result(recs, extra):
    extra = replace(extra, record_id="extra")
    assert len(screen(recs + [extra]).retained) >= len(screen(recs).retained)
