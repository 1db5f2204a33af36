"""Corpus-level BLEU-4 (single reference, no smoothing)."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .model import TestRecord
from .text import tokenize

MAX_ORDER = 4


class BleuError(ValueError):
    pass


@dataclass(frozen=True)
class BleuScore:
    score: float
    brevity_penalty: float
    precisions: tuple[float, ...]
    hypothesis_length: int
    reference_length: int
    matches: tuple[int, ...] = ()
    totals: tuple[int, ...] = ()

    def to_dict(self) -> dict:
        return {
            "score": self.score,
            "brevity_penalty": self.brevity_penalty,
            "precisions": list(self.precisions),
            "hypothesis_length": self.hypothesis_length,
            "reference_length": self.reference_length,
        }


def ngram_counts(tokens: Sequence[str], n: int) -> Counter:
    return Counter(tuple(tokens[i:i + n]) for i in range(len(tokens) - n + 1))


def brevity_penalty(hyp_len: int, ref_len: int) -> float:
    if hyp_len >= ref_len:
        return 1.0
    if hyp_len == 0:
        return 0.0
    return math.exp(1 - ref_len / hyp_len)


def corpus_bleu(pairs: Iterable[tuple[str, str]]) -> BleuScore:
    """BLEU over (hypothesis, reference) sentence pairs.

    Clipped n-gram matches and totals are summed over the corpus before
    the precisions are formed; the brevity penalty uses the corpus token
    lengths. Sentences are tokenized with :func:`idiomcheck.text.tokenize`.
    """
    matches = [0] * MAX_ORDER
    totals = [0] * MAX_ORDER
    hyp_len = ref_len = 0
    n_pairs = 0
    for hyp, ref in pairs:
        n_pairs += 1
        h, r = tokenize(hyp), tokenize(ref)
        hyp_len += len(h)
        ref_len += len(r)
        for n in range(1, MAX_ORDER + 1):
            h_counts = ngram_counts(h, n)
            r_counts = ngram_counts(r, n)
            matches[n - 1] += sum(min(c, r_counts[g]) for g, c in h_counts.items())
            totals[n - 1] += max(len(h) - n + 1, 0)
    if n_pairs == 0:
        raise BleuError("cannot compute BLEU on an empty corpus")

    precisions = tuple(m / t if t else 0.0 for m, t in zip(matches, totals))
    bp = brevity_penalty(hyp_len, ref_len)
    if min(precisions) > 0:
        score = bp * math.exp(sum(math.log(p) for p in precisions) / MAX_ORDER)
    else:
        score = 0.0
    return BleuScore(score, bp, precisions, hyp_len, ref_len, tuple(matches), tuple(totals))


def stratified_bleu(records: Sequence[TestRecord]) -> dict[str, Optional[BleuScore]]:
    """BLEU over all records and over each trigger stratum.

    A stratum with no records maps to None.
    """
    missing = [r.record_id for r in records if r.reference is None or r.hypothesis is None or r.trigger is None]
    if missing:
        raise BleuError("records lack reference, hypothesis or trigger result: " + ", ".join(missing))
    if not records:
        raise BleuError("cannot compute BLEU on an empty corpus")
    trig = [(r.hypothesis, r.reference) for r in records if r.trigger.triggered]
    untrig = [(r.hypothesis, r.reference) for r in records if not r.trigger.triggered]
    return {
        "all": corpus_bleu((r.hypothesis, r.reference) for r in records),
        "triggered": corpus_bleu(trig) if trig else None,
        "not_triggered": corpus_bleu(untrig) if untrig else None,
    }
