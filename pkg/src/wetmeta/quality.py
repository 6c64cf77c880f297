"""Rule-based wetland quality coding and the weighted quality index."""

from dataclasses import dataclass, replace
from enum import Enum, IntEnum
from typing import Iterable, Optional, Sequence, Tuple

from .errors import IndexOutOfRange


class QualityState(IntEnum):
    NATURALLY_FUNCTIONING = 1
    DEGRADED = 2


class Confidence(str, Enum):
    HIGH = "High"
    LOW = "Low"


@dataclass(frozen=True)
class QualityEvidence:
    """Boolean evidence flags pre-extracted from a primary study."""

    degradation_described: bool = False
    degrading_activities: bool = False
    market_price_method: bool = False
    ideal_state_assumed: bool = False


@dataclass(frozen=True)
class QualityCode:
    state: QualityState
    # None when the code was carried from a source file rather than derived
    confidence: Optional[Confidence] = None

    def __post_init__(self):
        object.__setattr__(self, "state", QualityState(self.state))


def assign_quality(evidence: QualityEvidence) -> QualityCode:
    """Map evidence flags to a two-level quality state.

    Precedence: a value estimated for an assumed ideal state is coded as
    naturally functioning even when the site is threatened; otherwise a
    described degradation, then degrading human activities, yield the
    degraded state; anything else is naturally functioning. Market-price
    valuation only raises confidence in a degraded coding.
    """
    if evidence.ideal_state_assumed:
        return QualityCode(QualityState.NATURALLY_FUNCTIONING, Confidence.HIGH)
    if evidence.degradation_described:
        return QualityCode(QualityState.DEGRADED, Confidence.HIGH)
    if evidence.degrading_activities:
        conf = Confidence.HIGH if evidence.market_price_method else Confidence.LOW
        return QualityCode(QualityState.DEGRADED, conf)
    return QualityCode(QualityState.NATURALLY_FUNCTIONING, Confidence.LOW)


def code_records(records: Iterable, overwrite: bool = False) -> list:
    """Return records with ``quality_code`` filled in from their evidence.

    Codes already carried by a record are kept unless ``overwrite`` is set.
    """
    out = []
    for rec in records:
        if rec.quality_code is None or overwrite:
            rec = replace(rec, quality_code=assign_quality(rec.quality_evidence))
        out.append(rec)
    return out


def quality_index(scores: Sequence[Tuple[float, float]], max_score: float) -> float:
    """Weighted-score quality index in [0, 1].

    Parameters
    ----------
    scores : sequence of (weight, score)
        Positive weights and non-negative functional scores.
    max_score : float
        Maximum attainable weighted total.
    """
    if not max_score > 0:
        raise IndexOutOfRange(f"max_score must be > 0, got {max_score!r}")
    total = 0.0
    for weight, score in scores:
        if not weight > 0:
            raise IndexOutOfRange(f"weights must be > 0, got {weight!r}")
        if score < 0:
            raise IndexOutOfRange(f"scores must be >= 0, got {score!r}")
        total += weight * score
    ratio = total / max_score
    # allow round-off from rescaled inputs, nothing more
    if ratio > 1.0 + 1e-12:
        raise IndexOutOfRange(f"weighted total {total!r} exceeds max_score {max_score!r}")
    return min(ratio, 1.0)
