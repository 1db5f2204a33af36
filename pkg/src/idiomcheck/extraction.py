"""Idiom frequency counting, frequency-band selection and test-set extraction."""

from __future__ import annotations

import hashlib
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .model import IdiomList, TestRecord, ValidationError

DEFAULT_MAX_PER_IDIOM = 40
DEFAULT_MIN_FREQ = 7
DEFAULT_MAX_FREQ = 1000


@dataclass(frozen=True)
class ExtractionConfig:
    max_per_idiom: int = DEFAULT_MAX_PER_IDIOM
    min_freq: int = DEFAULT_MIN_FREQ
    max_freq: int = DEFAULT_MAX_FREQ
    seed: int = 0

    def __post_init__(self):
        if self.max_per_idiom < 1:
            raise ValidationError("max_per_idiom must be at least 1")
        if self.min_freq > self.max_freq:
            raise ValidationError("min_freq must not exceed max_freq")


@dataclass
class FrequencyTable:
    """Number of corpus sentences containing each idiom."""

    counts: dict[str, int] = field(default_factory=dict)

    def __getitem__(self, idiom: str) -> int:
        return self.counts[idiom]

    def items(self):
        return self.counts.items()

    def merge(self, other: "FrequencyTable") -> "FrequencyTable":
        merged = dict(self.counts)
        for idiom, n in other.counts.items():
            merged[idiom] = merged.get(idiom, 0) + n
        return FrequencyTable(merged)


def _idiom_strings(idioms) -> list[str]:
    return [getattr(i, "idiom", i) for i in idioms]


def count_frequencies(corpus: Iterable[str], idioms) -> FrequencyTable:
    universe = _idiom_strings(idioms)
    counts = dict.fromkeys(universe, 0)
    for sentence in corpus:
        for idiom in universe:
            if idiom in sentence:
                counts[idiom] += 1
    return FrequencyTable(counts)


def select_idioms(table: FrequencyTable, config: ExtractionConfig = ExtractionConfig()) -> list[str]:
    """Idioms whose count lies in [min_freq, max_freq], most frequent first."""
    kept = [(i, n) for i, n in table.items() if config.min_freq <= n <= config.max_freq]
    kept.sort(key=lambda item: (-item[1], item[0]))
    return [i for i, _ in kept]


def sample_key(seed: int, idiom: str, position: int) -> bytes:
    """Pseudo-random sort key for one (idiom, corpus position) candidate.

    Keeping the ``k`` smallest keys gives a uniform random ``k``-subset
    that depends only on the seed and the candidates' positions, so the
    result does not change with corpus sharding or iteration order.
    """
    h = hashlib.blake2b(digest_size=16)
    h.update(f"{seed}\x00{idiom}\x00{position}".encode("utf-8"))
    return h.digest()


def make_record_id(position: int, idiom: str) -> str:
    return f"{position}:{idiom}"


def extract_pairs(
    corpus: Sequence[tuple[str, str | None]],
    idioms: IdiomList,
    config: ExtractionConfig = ExtractionConfig(),
) -> list[TestRecord]:
    """Build a capped, balanced record set from a parallel corpus.

    ``corpus`` holds (source, target) pairs; a target of ``None`` yields
    records without a reference. Positions are 0-based corpus indices.
    """
    hits: dict[str, list[int]] = defaultdict(list)
    names = idioms.idioms
    for pos, (src, _) in enumerate(corpus):
        for idiom in names:
            if idiom in src:
                hits[idiom].append(pos)

    records = []
    for idiom in sorted(hits):
        positions = hits[idiom]
        if len(positions) > config.max_per_idiom:
            ranked = sorted(positions, key=lambda p: sample_key(config.seed, idiom, p))
            positions = sorted(ranked[: config.max_per_idiom])
        for pos in positions:
            src, tgt = corpus[pos]
            records.append(TestRecord(make_record_id(pos, idiom), src, idiom, reference=tgt))
    return records
