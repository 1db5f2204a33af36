"""Command-line front end: ``idiomcheck <subcommand> ...``.

The MT system is external. ``extract`` can write the plain source sentences
for translation, and ``detect`` reads the translations back as a
line-aligned hypothesis file.
"""

from __future__ import annotations

import argparse
import dataclasses
import datetime
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import __version__, fileio
from .bleu import stratified_bleu
from .detector import attach_hypotheses, detect_all
from .extraction import (
    DEFAULT_MAX_FREQ,
    DEFAULT_MAX_PER_IDIOM,
    DEFAULT_MIN_FREQ,
    ExtractionConfig,
    FrequencyTable,
    count_frequencies,
    extract_pairs,
    select_idioms,
)
from .metrics import STRATA, score_report, trigger_rate_report
from .model import IdiomList
from .report import (
    dumps,
    format_rate,
    render_bleu,
    render_scores,
    render_trigger_table,
    report_to_dict,
)

log = logging.getLogger("idiomcheck")


def write_manifest(output: Path, args: argparse.Namespace, extra: Optional[dict] = None) -> None:
    manifest = {
        "subcommand": args.command,
        "version": __version__,
        "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(timespec="seconds"),
        "arguments": {k: (str(v) if isinstance(v, Path) else v)
                      for k, v in sorted(vars(args).items()) if k not in ("command", "func")},
    }
    if extra:
        manifest.update(extra)
    fileio.write_text_atomic(f"{output}.manifest.json", dumps(manifest))


def _idioms(path: Optional[Path]) -> IdiomList:
    return fileio.bundled_idiom_list() if path is None else fileio.read_idiom_list(path)


def read_universe(path: Path) -> list[str]:
    """Candidate idioms: first column of each non-comment line."""
    seen = {}
    for line in fileio.read_lines(path):
        if not line.strip() or line.startswith("#"):
            continue
        seen.setdefault(line.split("\t")[0].strip(), None)
    return list(seen)


def cmd_count_idioms(args) -> int:
    universe = read_universe(args.idioms)
    corpus = fileio.read_lines(args.corpus)
    table = count_frequencies(corpus, universe)
    fileio.write_frequency_table(args.output, table.items())
    write_manifest(args.output, args)
    print(f"{len(corpus)} sentences, {sum(1 for n in table.counts.values() if n)} of "
          f"{len(universe)} idioms found")
    return 0


def cmd_select_idioms(args) -> int:
    table = FrequencyTable(fileio.read_frequency_table(args.frequencies))
    config = ExtractionConfig(min_freq=args.min_freq, max_freq=args.max_freq)
    chosen = select_idioms(table, config)
    fileio.write_frequency_table(args.output, ((i, table[i]) for i in chosen))
    write_manifest(args.output, args)
    print(f"{len(chosen)} of {len(table.counts)} idioms in [{args.min_freq}, {args.max_freq}]")
    return 0


def cmd_extract(args) -> int:
    config = ExtractionConfig(args.max_per_idiom, args.min_freq, args.max_freq, args.seed)
    idioms = _idioms(args.idioms)
    # idioms with a known training frequency must fall inside the band
    idioms = IdiomList(
        e for e in idioms
        if e.training_frequency is None or config.min_freq <= e.training_frequency <= config.max_freq
    )
    if args.tsv is not None:
        corpus = fileio.read_parallel_tsv(args.tsv)
    elif args.tgt is not None:
        corpus = fileio.read_parallel_corpus(args.src, args.tgt)
    else:
        corpus = [(s, None) for s in fileio.read_lines(args.src)]
    records = extract_pairs(corpus, idioms, config)
    fileio.write_records(args.output, records)
    if args.sources_out is not None:
        fileio.write_lines(args.sources_out, (r.source for r in records))
    write_manifest(args.output, args, {"config": dataclasses.asdict(config)})
    print(f"{len(records)} records for {len({r.idiom for r in records})} idioms")
    return 0


def cmd_detect(args) -> int:
    records = fileio.read_records(args.records)
    hyps = fileio.read_lines(args.hypotheses)
    evaluated = detect_all(attach_hypotheses(records, hyps), _idioms(args.idioms))
    fileio.write_records(args.output, evaluated)
    write_manifest(args.output, args)
    report = trigger_rate_report(evaluated)
    print(f"{report.triggered_count} of {report.total_records} triggered, "
          f"trigger rate {format_rate(report.trigger_rate)}")
    return 0


def cmd_score(args) -> int:
    records = fileio.read_records(args.records)
    annotations = fileio.read_annotations(args.annotations)
    report = score_report(records, annotations, args.sample_stratum)
    fileio.write_text_atomic(args.output, dumps(report_to_dict(report)))
    write_manifest(args.output, args)
    sys.stdout.write(render_scores(report))
    return 0


def cmd_bleu(args) -> int:
    records = fileio.read_records(args.records)
    strata = stratified_bleu(records)
    out = {k: (v.to_dict() if v is not None else None) for k, v in strata.items()}
    fileio.write_text_atomic(args.output, dumps(out))
    write_manifest(args.output, args)
    sys.stdout.write(render_bleu(strata))
    return 0


def cmd_report(args) -> int:
    records = fileio.read_records(args.records)
    idioms = _idioms(args.idioms)
    report = trigger_rate_report(records, idioms)
    table = render_trigger_table(report, idioms)
    fileio.write_text_atomic(args.output, table)
    if args.json is not None:
        fileio.write_text_atomic(args.json, dumps(report_to_dict(report)))
    write_manifest(args.output, args)
    sys.stdout.write(table)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="idiomcheck", description="Blacklist-based evaluation of idiom translation.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def idioms_arg(sp, required=False):
        sp.add_argument("--idioms", type=Path, required=required,
                        help="idiom list TSV (default: bundled 50-idiom list)")

    sp = sub.add_parser("count-idioms", help="count corpus sentences containing each candidate idiom")
    sp.add_argument("--corpus", type=Path, required=True, help="source-language sentences, one per line")
    sp.add_argument("--idioms", type=Path, required=True, help="candidate idioms, one per line (first TSV column)")
    sp.add_argument("-o", "--output", type=Path, required=True, help="frequency TSV")
    sp.set_defaults(func=cmd_count_idioms)

    sp = sub.add_parser("select-idioms", help="keep idioms inside a frequency band")
    sp.add_argument("frequencies", type=Path, help="frequency TSV from count-idioms")
    sp.add_argument("--min-freq", type=int, default=DEFAULT_MIN_FREQ)
    sp.add_argument("--max-freq", type=int, default=DEFAULT_MAX_FREQ)
    sp.add_argument("-o", "--output", type=Path, required=True)
    sp.set_defaults(func=cmd_select_idioms)

    sp = sub.add_parser("extract", help="build a capped test set from a corpus")
    sp.add_argument("--src", type=Path, help="source side, one sentence per line")
    sp.add_argument("--tgt", type=Path, help="target side, line-aligned with --src")
    sp.add_argument("--tsv", type=Path, help="single source<TAB>target file instead of --src/--tgt")
    idioms_arg(sp)
    sp.add_argument("--max-per-idiom", type=int, default=DEFAULT_MAX_PER_IDIOM)
    sp.add_argument("--min-freq", type=int, default=DEFAULT_MIN_FREQ)
    sp.add_argument("--max-freq", type=int, default=DEFAULT_MAX_FREQ)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("-o", "--output", type=Path, required=True, help="records file")
    sp.add_argument("--sources-out", type=Path, help="also write source sentences for translation")
    sp.set_defaults(func=cmd_extract)

    sp = sub.add_parser("detect", help="apply blacklists to MT output")
    sp.add_argument("--records", type=Path, required=True)
    sp.add_argument("--hypotheses", type=Path, required=True, help="MT output, line-aligned with records")
    idioms_arg(sp)
    sp.add_argument("-o", "--output", type=Path, required=True, help="evaluated records file")
    sp.set_defaults(func=cmd_detect)

    sp = sub.add_parser("score", help="detector precision/recall from annotations")
    sp.add_argument("--records", type=Path, required=True, help="evaluated records file")
    sp.add_argument("--annotations", type=Path, required=True, help="record_id<TAB>label TSV")
    sp.add_argument("--sample-stratum", action="append", default=[], choices=STRATA,
                    help="stratum annotated on a random sample only (repeatable)")
    sp.add_argument("-o", "--output", type=Path, required=True, help="JSON report")
    sp.set_defaults(func=cmd_score)

    sp = sub.add_parser("bleu", help="BLEU overall and per trigger stratum")
    sp.add_argument("--records", type=Path, required=True)
    sp.add_argument("-o", "--output", type=Path, required=True, help="JSON report")
    sp.set_defaults(func=cmd_bleu)

    sp = sub.add_parser("report", help="per-idiom trigger-rate table")
    sp.add_argument("--records", type=Path, required=True)
    idioms_arg(sp)
    sp.add_argument("-o", "--output", type=Path, required=True, help="aligned text table")
    sp.add_argument("--json", type=Path, help="also write the machine-readable report")
    sp.set_defaults(func=cmd_report)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    if args.command == "extract" and (args.tsv is None) == (args.src is None):
        parser.error("extract needs exactly one of --src or --tsv")
    if args.command == "extract" and args.tgt is not None and args.src is None:
        parser.error("--tgt requires --src")
    try:
        return args.func(args)
    except (OSError, ValueError) as e:
        log.debug("failure", exc_info=True)
        print(f"idiomcheck {args.command}: error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
