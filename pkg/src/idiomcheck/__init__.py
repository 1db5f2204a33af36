"""Blacklist-based detection of literal idiom translation errors in MT output."""

__version__ = "0.1.0"

from .bleu import BleuScore, corpus_bleu, stratified_bleu
from .detector import detect, detect_all
from .extraction import ExtractionConfig, FrequencyTable, count_frequencies, extract_pairs, select_idioms
from .fileio import (
    bundled_idiom_list,
    read_annotations,
    read_idiom_list,
    read_parallel_corpus,
    read_records,
    write_records,
)
from .metrics import (
    ConfusionCounts,
    build_confusion,
    detector_scores,
    extrapolate_stratum,
    trigger_rate_report,
)
from .model import (
    AnnotationLabel,
    EvaluationReport,
    IdiomEntry,
    IdiomList,
    Label,
    ParseError,
    TestRecord,
    TriggerResult,
    ValidationError,
)
from .text import contains_idiom, find_idioms, tokenize
