"""Trigger rates and detector precision/recall from human annotations."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from .model import AnnotationLabel, EvaluationReport, IdiomList, IdiomRate, Label, TestRecord

TRIGGERED = "triggered"
NOT_TRIGGERED = "not_triggered"
STRATA = (TRIGGERED, NOT_TRIGGERED)
LABEL_ORDER = tuple(label.value for label in Label)


class ScoringError(ValueError):
    pass


def trigger_rate_report(records: Sequence[TestRecord], idioms: Optional[IdiomList] = None) -> EvaluationReport:
    """Overall and per-idiom trigger counts.

    When ``idioms`` is given, every listed idiom gets a row (possibly with
    zero records) and rows follow the list order; other idioms seen in the
    records are appended in first-seen order.
    """
    per_idiom: dict[str, IdiomRate] = {}
    if idioms is not None:
        for entry in idioms:
            per_idiom[entry.idiom] = IdiomRate(0, 0)
    triggered = 0
    for rec in records:
        if rec.trigger is None:
            raise ScoringError(f"record {rec.record_id}: no trigger result")
        row = per_idiom.setdefault(rec.idiom, IdiomRate(0, 0))
        row.record_count += 1
        if rec.trigger.triggered:
            row.triggered_count += 1
            triggered += 1
    return EvaluationReport(total_records=len(records), triggered_count=triggered, per_idiom=per_idiom)


def extrapolate_stratum(sample_counts: Mapping[str, int], sample_size: int, stratum_size: int) -> dict[str, int]:
    """Scale sample label counts up to the stratum size.

    Each count is multiplied by ``stratum_size / sample_size`` and the
    results are rounded with the largest-remainder method so they sum to
    ``stratum_size`` exactly. Ties go to the label that comes first in
    ``sample_counts``.

    >>> extrapolate_stratum({"correct": 61, "incorrect": 39, "incorrect_literal": 0}, 100, 1049)
    {'correct': 640, 'incorrect': 409, 'incorrect_literal': 0}
    """
    if sample_size <= 0:
        raise ScoringError("sample size must be positive")
    if sample_size > stratum_size:
        raise ScoringError(f"sample size {sample_size} exceeds stratum size {stratum_size}")
    if any(n < 0 for n in sample_counts.values()):
        raise ScoringError("negative label count")
    if sum(sample_counts.values()) != sample_size:
        raise ScoringError(
            f"label counts sum to {sum(sample_counts.values())}, expected sample size {sample_size}"
        )
    scaled = {k: Fraction(n * stratum_size, sample_size) for k, n in sample_counts.items()}
    result = {k: int(v) for k, v in scaled.items()}
    shortfall = stratum_size - sum(result.values())
    order = list(sample_counts)
    by_remainder = sorted(order, key=lambda k: (-(scaled[k] - result[k]), order.index(k)))
    for k in by_remainder[:shortfall]:
        result[k] += 1
    return result


@dataclass
class StratumCounts:
    """Label counts for one trigger stratum.

    ``incorrect`` includes the literal errors, so ``correct + incorrect``
    is the stratum size.
    """

    size: int
    correct: int = 0
    incorrect: int = 0
    incorrect_literal: int = 0
    sample_size: int = 0
    estimated: bool = False

    def __post_init__(self):
        if self.incorrect_literal > self.incorrect:
            raise ScoringError("incorrect_literal exceeds incorrect")
        if self.correct + self.incorrect != self.size:
            raise ScoringError(
                f"correct + incorrect = {self.correct + self.incorrect}, stratum size {self.size}"
            )

    @classmethod
    def from_label_counts(cls, counts: Mapping[str, int], size: int, sample_size: int, estimated: bool):
        literal = counts.get(Label.INCORRECT_LITERAL.value, 0)
        return cls(
            size=size,
            correct=counts.get(Label.CORRECT.value, 0),
            incorrect=counts.get(Label.INCORRECT.value, 0) + literal,
            incorrect_literal=literal,
            sample_size=sample_size,
            estimated=estimated,
        )

    def to_dict(self) -> dict:
        return {
            "size": self.size,
            "correct": self.correct,
            "incorrect": self.incorrect,
            "incorrect_literal": self.incorrect_literal,
            "sample_size": self.sample_size,
            "estimated": self.estimated,
        }


@dataclass
class ConfusionCounts:
    strata: dict[str, StratumCounts] = field(default_factory=dict)

    @property
    def triggered(self) -> StratumCounts:
        return self.strata[TRIGGERED]

    @property
    def not_triggered(self) -> StratumCounts:
        return self.strata[NOT_TRIGGERED]

    @property
    def true_positives(self) -> int:
        return self.triggered.incorrect

    @property
    def false_positives(self) -> int:
        return self.triggered.correct

    def total(self, attr: str) -> int:
        return sum(getattr(s, attr) for s in self.strata.values())

    def to_dict(self) -> dict:
        return {
            "true_positives": self.true_positives,
            "false_positives": self.false_positives,
            "strata": {name: self.strata[name].to_dict() for name in STRATA},
            "total": {
                "size": self.total("size"),
                "correct": self.total("correct"),
                "incorrect": self.total("incorrect"),
                "incorrect_literal": self.total("incorrect_literal"),
            },
        }


def build_confusion(
    records: Sequence[TestRecord],
    annotations: Iterable[AnnotationLabel],
    sampled_strata: Iterable[str] = (),
) -> ConfusionCounts:
    """Combine trigger verdicts with human labels.

    A stratum whose records are all annotated is counted directly. A
    stratum named in ``sampled_strata`` may be annotated on a subset only;
    its counts are then extrapolated and flagged as estimates.
    """
    sampled = set(sampled_strata)
    bad = sampled - set(STRATA)
    if bad:
        raise ScoringError(f"unknown stratum {sorted(bad)[0]!r}; expected one of {', '.join(STRATA)}")
    stratum_of: dict[str, str] = {}
    sizes = dict.fromkeys(STRATA, 0)
    for rec in records:
        if rec.trigger is None:
            raise ScoringError(f"record {rec.record_id}: no trigger result")
        name = TRIGGERED if rec.trigger.triggered else NOT_TRIGGERED
        stratum_of[rec.record_id] = name
        sizes[name] += 1

    counts = {name: dict.fromkeys(LABEL_ORDER, 0) for name in STRATA}
    seen: set[str] = set()
    for ann in annotations:
        if ann.record_id not in stratum_of:
            raise ScoringError(f"annotation for unknown record {ann.record_id!r}")
        if ann.record_id in seen:
            raise ScoringError(f"duplicate annotation for record {ann.record_id!r}")
        seen.add(ann.record_id)
        counts[stratum_of[ann.record_id]][ann.label.value] += 1

    strata = {}
    for name in STRATA:
        n = sum(counts[name].values())
        size = sizes[name]
        if n == size:
            strata[name] = StratumCounts.from_label_counts(counts[name], size, n, False)
        elif name not in sampled:
            raise ScoringError(
                f"stratum {name!r} has {n} of {size} records annotated; "
                f"mark it as sampled to extrapolate"
            )
        elif n == 0:
            raise ScoringError(f"stratum {name!r} has no annotated records to extrapolate from")
        else:
            est = extrapolate_stratum(counts[name], n, size)
            strata[name] = StratumCounts.from_label_counts(est, size, n, True)
    return ConfusionCounts(strata)


def _ratio(num: int, den: int) -> Optional[float]:
    return num / den if den else None


def detector_scores(confusion: ConfusionCounts) -> tuple[Optional[float], Optional[float], Optional[float]]:
    """Return (precision, recall on literal errors, recall on all errors).

    Every incorrect triggered record counts as a true positive. A ratio
    with a zero denominator is returned as None.
    """
    t = confusion.triggered
    precision = _ratio(t.incorrect, t.correct + t.incorrect)
    recall_literal = _ratio(t.incorrect_literal, confusion.total("incorrect_literal"))
    recall_all = _ratio(t.incorrect, confusion.total("incorrect"))
    return precision, recall_literal, recall_all


def score_report(
    records: Sequence[TestRecord],
    annotations: Iterable[AnnotationLabel],
    sampled_strata: Iterable[str] = (),
) -> EvaluationReport:
    report = trigger_rate_report(records)
    confusion = build_confusion(records, annotations, sampled_strata)
    report.confusion = confusion
    report.precision, report.recall_literal, report.recall_all_errors = detector_scores(confusion)
    return report
