"""Readers and writers for every file the toolkit consumes or produces.

Records file format
-------------------
One JSON object per line, UTF-8, no ASCII escaping, compact separators,
keys always in this order (optional keys omitted when absent)::

    {"id":..,"idiom":..,"src":..,"ref":..,"hyp":..,"triggered":..,"matched":[..]}

``matched`` is the sorted list of matched blacklist terms and is present
exactly when ``triggered`` is. Writing the same records twice produces the
same bytes.

All TSV inputs skip blank lines and lines starting with ``#``.
"""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path
from typing import Iterable, Optional, Sequence, Union

from .model import (
    AnnotationLabel,
    IdiomEntry,
    IdiomList,
    Label,
    ParseError,
    TestRecord,
    TriggerResult,
    ValidationError,
)
from .text import tokenize

PathLike = Union[str, os.PathLike]

RECORD_KEYS = ("id", "idiom", "src", "ref", "hyp", "triggered", "matched")
_REQUIRED_KEYS = ("id", "idiom", "src")


def read_lines(path: PathLike) -> list[str]:
    """Read a UTF-8 text file as lines, without altering line content.

    A leading BOM and the final newline are dropped, and ``\\r\\n`` endings
    are accepted.
    """
    with open(path, encoding="utf-8-sig", newline="") as f:
        text = f.read()
    if not text:
        return []
    lines = text.split("\n")
    if lines[-1] == "":
        lines.pop()
    return [ln[:-1] if ln.endswith("\r") else ln for ln in lines]


def _tsv_rows(path: PathLike):
    for lineno, line in enumerate(read_lines(path), 1):
        if not line.strip() or line.startswith("#"):
            continue
        yield lineno, line.split("\t")


def write_text_atomic(path: PathLike, text: str) -> None:
    """Write ``text`` to ``path`` via a temporary file and rename."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as f:
            f.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_lines(path: PathLike, lines: Iterable[str]) -> None:
    write_text_atomic(path, "".join(f"{ln}\n" for ln in lines))


# -- idiom lists --------------------------------------------------------------


def parse_idiom_line(line: str, lineno: Optional[int] = None, path=None) -> IdiomEntry:
    cols = line.split("\t")
    if not 2 <= len(cols) <= 5:
        raise ParseError(f"expected 2 to 5 tab-separated columns, got {len(cols)}", path, lineno)
    idiom = cols[0]
    if not idiom.strip():
        raise ParseError("empty idiom", path, lineno)
    terms = cols[1].lower().split()
    if not terms:
        raise ParseError(f"empty blacklist for {idiom!r}", path, lineno)
    for term in terms:
        if tokenize(term) != [term]:
            raise ParseError(f"blacklist term {term!r} is not a single word token", path, lineno)
    if len(set(terms)) != len(terms):
        raise ParseError(f"duplicate blacklist term for {idiom!r}", path, lineno)
    glosses = [c if c else None for c in cols[2:4]]
    glosses += [None] * (2 - len(glosses))
    freq = None
    if len(cols) == 5 and cols[4].strip():
        try:
            freq = int(cols[4])
        except ValueError:
            raise ParseError(f"training frequency {cols[4]!r} is not an integer", path, lineno) from None
    try:
        return IdiomEntry(idiom, tuple(terms), glosses[0], glosses[1], freq)
    except ValidationError as e:
        raise ParseError(str(e), path, lineno) from None


def read_idiom_list(path: PathLike) -> IdiomList:
    idioms = IdiomList()
    for lineno, line in enumerate(read_lines(path), 1):
        if not line.strip() or line.startswith("#"):
            continue
        entry = parse_idiom_line(line, lineno, path)
        try:
            idioms.add(entry)
        except ValidationError as e:
            raise ParseError(str(e), path, lineno) from None
    return idioms


def format_idiom_entry(entry: IdiomEntry) -> str:
    cols = [entry.idiom, " ".join(entry.blacklist),
            entry.idiomatic_gloss or "", entry.literal_gloss or "",
            "" if entry.training_frequency is None else str(entry.training_frequency)]
    while len(cols) > 2 and cols[-1] == "":
        cols.pop()
    return "\t".join(cols)


def write_idiom_list(path: PathLike, idioms: IdiomList) -> None:
    write_lines(path, (format_idiom_entry(e) for e in idioms))


def bundled_idiom_list() -> IdiomList:
    """The 50-idiom Chinese list with blacklists and training frequencies."""
    return read_idiom_list(bundled_idiom_path())


def bundled_idiom_path() -> Path:
    return Path(__file__).parent / "data" / "zh_en_idioms.tsv"


# -- corpora ------------------------------------------------------------------


class CorpusMismatchError(ValueError):
    pass


def read_parallel_corpus(src_path: PathLike, tgt_path: PathLike) -> list[tuple[str, str]]:
    src = read_lines(src_path)
    tgt = read_lines(tgt_path)
    if len(src) != len(tgt):
        raise CorpusMismatchError(
            f"line count mismatch: {src_path} has {len(src)} lines, {tgt_path} has {len(tgt)}"
        )
    return list(zip(src, tgt))


def read_parallel_tsv(path: PathLike) -> list[tuple[str, str]]:
    pairs = []
    for lineno, cols in _tsv_rows(path):
        if len(cols) != 2:
            raise ParseError(f"expected source<TAB>target, got {len(cols)} columns", path, lineno)
        pairs.append((cols[0], cols[1]))
    return pairs


# -- records ------------------------------------------------------------------


def record_to_dict(rec: TestRecord) -> dict:
    d = {"id": rec.record_id, "idiom": rec.idiom, "src": rec.source}
    if rec.reference is not None:
        d["ref"] = rec.reference
    if rec.hypothesis is not None:
        d["hyp"] = rec.hypothesis
    if rec.trigger is not None:
        d["triggered"] = rec.trigger.triggered
        d["matched"] = sorted(rec.trigger.matched_terms)
    return d


def format_record(rec: TestRecord) -> str:
    return json.dumps(record_to_dict(rec), ensure_ascii=False, separators=(",", ":"))


def _optional_str(d: dict, key: str, lineno, path) -> Optional[str]:
    v = d.get(key)
    if v is not None and not isinstance(v, str):
        raise ParseError(f"field {key!r} must be a string", path, lineno)
    return v


def parse_record(line: str, lineno: Optional[int] = None, path=None) -> TestRecord:
    try:
        d = json.loads(line)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e.msg}", path, lineno) from None
    if not isinstance(d, dict):
        raise ParseError("record must be a JSON object", path, lineno)
    unknown = set(d) - set(RECORD_KEYS)
    if unknown:
        raise ParseError(f"unknown field(s): {', '.join(sorted(unknown))}", path, lineno)
    for key in _REQUIRED_KEYS:
        if key not in d:
            raise ParseError(f"missing mandatory field {key!r}", path, lineno)
        if not isinstance(d[key], str):
            raise ParseError(f"field {key!r} must be a string", path, lineno)
    trigger = None
    if ("triggered" in d) != ("matched" in d):
        raise ParseError("'triggered' and 'matched' must appear together", path, lineno)
    if "triggered" in d:
        if not isinstance(d["triggered"], bool):
            raise ParseError(f"unknown triggered value {d['triggered']!r}", path, lineno)
        matched = d["matched"]
        if not isinstance(matched, list) or not all(isinstance(t, str) for t in matched):
            raise ParseError("'matched' must be a list of strings", path, lineno)
        if "hyp" not in d:
            raise ParseError("trigger result without hypothesis", path, lineno)
        try:
            trigger = TriggerResult(d["triggered"], frozenset(matched))
        except ValidationError as e:
            raise ParseError(str(e), path, lineno) from None
    try:
        return TestRecord(
            record_id=d["id"],
            source=d["src"],
            idiom=d["idiom"],
            reference=_optional_str(d, "ref", lineno, path),
            hypothesis=_optional_str(d, "hyp", lineno, path),
            trigger=trigger,
        )
    except ValidationError as e:
        raise ParseError(str(e), path, lineno) from None


def read_records(path: PathLike) -> list[TestRecord]:
    records = []
    seen: set[str] = set()
    for lineno, line in enumerate(read_lines(path), 1):
        if not line.strip():
            continue
        rec = parse_record(line, lineno, path)
        if rec.record_id in seen:
            raise ParseError(f"duplicate record id {rec.record_id!r}", path, lineno)
        seen.add(rec.record_id)
        records.append(rec)
    return records


def write_records(path: PathLike, records: Sequence[TestRecord]) -> None:
    seen: set[str] = set()
    for rec in records:
        if rec.record_id in seen:
            raise ValidationError(f"duplicate record id {rec.record_id!r}")
        seen.add(rec.record_id)
    write_lines(path, (format_record(r) for r in records))


# -- annotations, frequencies ---------------------------------------------------


def read_annotations(path: PathLike) -> list[AnnotationLabel]:
    labels = []
    for lineno, cols in _tsv_rows(path):
        if len(cols) != 2:
            raise ParseError(f"expected record_id<TAB>label, got {len(cols)} columns", path, lineno)
        rid, label = cols[0], cols[1].strip()
        try:
            labels.append(AnnotationLabel(rid, Label(label)))
        except ValueError:
            raise ParseError(f"unknown label {label!r}", path, lineno) from None
    return labels


def write_annotations(path: PathLike, labels: Iterable[AnnotationLabel]) -> None:
    write_lines(path, (f"{a.record_id}\t{a.label.value}" for a in labels))


def read_frequency_table(path: PathLike) -> dict[str, int]:
    counts: dict[str, int] = {}
    for lineno, cols in _tsv_rows(path):
        if len(cols) != 2:
            raise ParseError(f"expected idiom<TAB>count, got {len(cols)} columns", path, lineno)
        idiom = cols[0]
        try:
            n = int(cols[1])
        except ValueError:
            raise ParseError(f"count {cols[1]!r} is not an integer", path, lineno) from None
        if n < 0:
            raise ParseError("negative count", path, lineno)
        if idiom in counts:
            raise ParseError(f"duplicate idiom {idiom!r}", path, lineno)
        counts[idiom] = n
    return counts


def write_frequency_table(path: PathLike, counts: Iterable[tuple[str, int]]) -> None:
    write_lines(path, (f"{idiom}\t{n}" for idiom, n in counts))
