"""Domain types shared by every stage of the pipeline."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional


class ValidationError(ValueError):
    """A value violates a domain invariant."""


class ParseError(ValueError):
    """A file could not be parsed; carries the offending line number."""

    def __init__(self, message: str, path=None, line: Optional[int] = None):
        self.path = path
        self.line = line
        where = ""
        if path is not None:
            where = f"{path}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)


def _has_space(s: str) -> bool:
    return any(ch.isspace() for ch in s)


@dataclass(frozen=True)
class IdiomEntry:
    idiom: str
    blacklist: tuple[str, ...]
    idiomatic_gloss: Optional[str] = None
    literal_gloss: Optional[str] = None
    training_frequency: Optional[int] = None

    def __post_init__(self):
        terms = self.blacklist
        if isinstance(terms, str):
            raise ValidationError(f"blacklist for {self.idiom!r} must be a collection of terms")
        terms = tuple(sorted(terms)) if isinstance(terms, (set, frozenset)) else tuple(terms)
        if len(set(terms)) != len(terms):
            raise ValidationError(f"duplicate blacklist terms for {self.idiom!r}")
        object.__setattr__(self, "blacklist", terms)
        if not self.idiom or _has_space(self.idiom):
            raise ValidationError(f"invalid idiom {self.idiom!r}")
        if not self.blacklist:
            raise ValidationError(f"empty blacklist for {self.idiom!r}")
        for term in self.blacklist:
            if not term or _has_space(term) or term != term.lower():
                raise ValidationError(f"invalid blacklist term {term!r} for {self.idiom!r}")
        if self.training_frequency is not None and self.training_frequency < 0:
            raise ValidationError(f"negative training frequency for {self.idiom!r}")

    @property
    def terms(self) -> frozenset[str]:
        return frozenset(self.blacklist)


class IdiomList:
    """Ordered, idiom-unique collection of :class:`IdiomEntry`."""

    def __init__(self, entries: Iterable[IdiomEntry] = ()):
        self._entries: list[IdiomEntry] = []
        self._index: dict[str, IdiomEntry] = {}
        for entry in entries:
            self.add(entry)

    def add(self, entry: IdiomEntry) -> None:
        if entry.idiom in self._index:
            raise ValidationError(f"duplicate idiom {entry.idiom!r}")
        self._entries.append(entry)
        self._index[entry.idiom] = entry

    def __iter__(self) -> Iterator[IdiomEntry]:
        return iter(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, idiom: object) -> bool:
        return idiom in self._index

    def __getitem__(self, idiom: str) -> IdiomEntry:
        return self._index[idiom]

    def get(self, idiom: str) -> Optional[IdiomEntry]:
        return self._index.get(idiom)

    @property
    def idioms(self) -> list[str]:
        return [e.idiom for e in self._entries]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, IdiomList) and self._entries == other._entries

    def __repr__(self) -> str:
        return f"IdiomList({len(self)} entries)"


@dataclass(frozen=True)
class TriggerResult:
    triggered: bool
    matched_terms: frozenset[str] = frozenset()

    def __post_init__(self):
        if not isinstance(self.matched_terms, frozenset):
            object.__setattr__(self, "matched_terms", frozenset(self.matched_terms))
        if self.triggered != bool(self.matched_terms):
            raise ValidationError("triggered must be true iff matched_terms is non-empty")

    @classmethod
    def from_terms(cls, terms: Iterable[str]) -> "TriggerResult":
        terms = frozenset(terms)
        return cls(bool(terms), terms)


@dataclass(frozen=True)
class TestRecord:
    record_id: str
    source: str
    idiom: str
    reference: Optional[str] = None
    hypothesis: Optional[str] = None
    trigger: Optional[TriggerResult] = None

    __test__ = False  # not a pytest class

    def __post_init__(self):
        if not self.record_id:
            raise ValidationError("empty record id")
        if not self.idiom:
            raise ValidationError(f"record {self.record_id}: empty idiom")
        if self.idiom not in self.source:
            raise ValidationError(
                f"record {self.record_id}: source does not contain idiom {self.idiom!r}"
            )


def check_unique_ids(records: Iterable[TestRecord]) -> None:
    seen: set[str] = set()
    for r in records:
        if r.record_id in seen:
            raise ValidationError(f"duplicate record id {r.record_id!r}")
        seen.add(r.record_id)


class Label(str, enum.Enum):
    CORRECT = "correct"
    INCORRECT = "incorrect"
    INCORRECT_LITERAL = "incorrect_literal"

    @property
    def is_incorrect(self) -> bool:
        return self is not Label.CORRECT


@dataclass(frozen=True)
class AnnotationLabel:
    record_id: str
    label: Label

    def __post_init__(self):
        if not isinstance(self.label, Label):
            try:
                object.__setattr__(self, "label", Label(self.label))
            except ValueError:
                raise ValidationError(f"unknown label {self.label!r}") from None


@dataclass
class IdiomRate:
    record_count: int
    triggered_count: int

    @property
    def trigger_rate(self) -> Optional[float]:
        if self.record_count == 0:
            return None
        return self.triggered_count / self.record_count


@dataclass
class EvaluationReport:
    total_records: int
    triggered_count: int
    per_idiom: dict[str, IdiomRate] = field(default_factory=dict)
    confusion: Optional["ConfusionCounts"] = None  # noqa: F821
    precision: Optional[float] = None
    recall_literal: Optional[float] = None
    recall_all_errors: Optional[float] = None
    bleu_strata: Optional[dict] = None

    @property
    def trigger_rate(self) -> Optional[float]:
        if self.total_records == 0:
            return None
        return self.triggered_count / self.total_records
