"""Blacklist trigger rule.

A hypothesis triggers an idiom's blacklist when any blacklist term appears as
a whole token anywhere in it. There is no alignment window, so unrelated uses
of a blacklisted word (e.g. "blow the wind" for a different source phrase) are
counted too.
"""

from __future__ import annotations

import dataclasses
from typing import Sequence

from .model import IdiomEntry, IdiomList, TestRecord, TriggerResult
from .text import tokenize


class DetectionError(ValueError):
    pass


def detect(hypothesis: str, entry: IdiomEntry) -> TriggerResult:
    matched = entry.terms.intersection(tokenize(hypothesis))
    return TriggerResult(bool(matched), frozenset(matched))


def detect_all(records: Sequence[TestRecord], idioms: IdiomList) -> list[TestRecord]:
    """Fill the trigger field of every record, preserving order."""
    out = []
    for rec in records:
        entry = idioms.get(rec.idiom)
        if entry is None:
            raise DetectionError(f"record {rec.record_id}: idiom {rec.idiom!r} not in idiom list")
        if rec.hypothesis is None:
            raise DetectionError(f"record {rec.record_id}: no hypothesis")
        out.append(dataclasses.replace(rec, trigger=detect(rec.hypothesis, entry)))
    return out


def attach_hypotheses(records: Sequence[TestRecord], hypotheses: Sequence[str]) -> list[TestRecord]:
    if len(records) != len(hypotheses):
        raise DetectionError(
            f"{len(records)} records but {len(hypotheses)} hypotheses"
        )
    return [dataclasses.replace(r, hypothesis=h, trigger=None) for r, h in zip(records, hypotheses)]
