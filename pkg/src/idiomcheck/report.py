"""Machine-readable (JSON) and aligned-table renderings of evaluation results."""

from __future__ import annotations

import json
import unicodedata
from typing import Mapping, Optional

from .bleu import BleuScore
from .model import EvaluationReport, IdiomList

NA = "n/a"
NO_RATE = "—"


def format_rate(rate: Optional[float]) -> str:
    return NO_RATE if rate is None else f"{rate:.3f}"


def display_width(s: str) -> int:
    return sum(2 if unicodedata.east_asian_width(ch) in "WF" else 1 for ch in s)


def _pad(s: str, width: int, right: bool = False) -> str:
    fill = " " * (width - display_width(s))
    return fill + s if right else s + fill


def render_table(header: list[str], rows: list[list[str]], numeric: set[int] = frozenset()) -> list[str]:
    widths = [display_width(h) for h in header]
    for row in rows:
        widths = [max(w, display_width(c)) for w, c in zip(widths, row)]
    lines = []
    for row in [header] + rows:
        cells = [_pad(c, widths[i], i in numeric) for i, c in enumerate(row)]
        lines.append("  ".join(cells).rstrip())
    return lines


def render_trigger_table(report: EvaluationReport, idioms: Optional[IdiomList] = None) -> str:
    """Per-idiom trigger-rate table plus a summary line."""
    header = ["idiom", "blacklist", "training", "records", "trigger_rate"]
    rows = []
    for idiom, row in report.per_idiom.items():
        entry = idioms.get(idiom) if idioms is not None else None
        blacklist = " ".join(entry.blacklist) if entry else ""
        freq = entry.training_frequency if entry else None
        rows.append([
            idiom,
            blacklist,
            "" if freq is None else str(freq),
            str(row.record_count),
            format_rate(row.trigger_rate),
        ])
    lines = render_table(header, rows, numeric={2, 3, 4})
    lines.append(summary_line(report))
    return "\n".join(lines) + "\n"


def summary_line(report: EvaluationReport) -> str:
    return (
        f"TOTAL  {report.total_records} records, {report.triggered_count} triggered, "
        f"trigger rate {format_rate(report.trigger_rate)}"
    )


def render_scores(report: EvaluationReport) -> str:
    c = report.confusion
    header = ["stratum", "correct", "incorrect", "incorrect_literal", "total"]
    rows = []
    for name in ("not_triggered", "triggered"):
        s = c.strata[name]
        star = "*" if s.estimated else ""
        rows.append([name, f"{s.correct}{star}", f"{s.incorrect}{star}",
                     f"{s.incorrect_literal}{star}", str(s.size)])
    rows.append(["total", str(c.total("correct")), str(c.total("incorrect")),
                 str(c.total("incorrect_literal")), str(c.total("size"))])
    lines = render_table(header, rows, numeric={1, 2, 3, 4})
    for name in ("not_triggered", "triggered"):
        s = c.strata[name]
        if s.estimated:
            lines.append(f"* {name}: estimated from {s.sample_size} of {s.size} records")
    lines.append(f"precision          {format_rate(report.precision)}")
    lines.append(f"recall (literal)   {format_rate(report.recall_literal)}")
    lines.append(f"recall (all)       {format_rate(report.recall_all_errors)}")
    return "\n".join(lines) + "\n"


def render_bleu(strata: Mapping[str, Optional[BleuScore]]) -> str:
    header = ["set", "bleu", "bp", "hyp_len", "ref_len"]
    rows = []
    for name in ("all", "triggered", "not_triggered"):
        b = strata.get(name)
        if b is None:
            rows.append([name, NA, NA, NA, NA])
        else:
            rows.append([name, f"{100 * b.score:.2f}", f"{b.brevity_penalty:.3f}",
                         str(b.hypothesis_length), str(b.reference_length)])
    return "\n".join(render_table(header, rows, numeric={1, 2, 3, 4})) + "\n"


def report_to_dict(report: EvaluationReport) -> dict:
    d = {
        "total_records": report.total_records,
        "triggered_count": report.triggered_count,
        "trigger_rate": report.trigger_rate,
        "per_idiom": {
            idiom: {
                "record_count": r.record_count,
                "triggered_count": r.triggered_count,
                "trigger_rate": r.trigger_rate,
            }
            for idiom, r in report.per_idiom.items()
        },
    }
    if report.confusion is not None:
        d["confusion"] = report.confusion.to_dict()
        d["precision"] = report.precision
        d["recall_literal"] = report.recall_literal
        d["recall_all_errors"] = report.recall_all_errors
    if report.bleu_strata is not None:
        d["bleu_strata"] = {k: (v.to_dict() if v is not None else None)
                            for k, v in report.bleu_strata.items()}
    return d


def dumps(obj) -> str:
    return json.dumps(obj, ensure_ascii=False, indent=2) + "\n"
