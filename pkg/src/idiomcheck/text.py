"""Target-side tokenization and source-side idiom lookup.

Tokenization is deliberately simple: the detector only needs whole-word
membership tests, so there is no attempt at linguistic fidelity.
"""

from __future__ import annotations

import re
from typing import Iterable

# apostrophes (ASCII, curly, modifier letter) and hyphen/dash variants
_APOSTROPHES = "'‘’ʼ`"
_HYPHENS = "-‐‑‒–—"
_SPLIT_RE = re.compile("[" + re.escape(_APOSTROPHES + _HYPHENS) + "]")


def _trim(piece: str) -> str:
    start, end = 0, len(piece)
    while start < end and not piece[start].isalnum():
        start += 1
    while end > start and not piece[end - 1].isalnum():
        end -= 1
    return piece[start:end]


def tokenize(sentence: str) -> list[str]:
    """Split a target-language sentence into lowercase word tokens.

    >>> tokenize("You can't say three things to me.")
    ['you', 'can', 't', 'say', 'three', 'things', 'to', 'me']
    >>> tokenize("Well-thought-out plan")
    ['well', 'thought', 'out', 'plan']
    """
    tokens = []
    for piece in sentence.lower().split():
        for frag in _SPLIT_RE.split(piece):
            frag = _trim(frag)
            if frag:
                tokens.append(frag)
    return tokens


def contains_idiom(sentence: str, idiom: str) -> bool:
    if not idiom:
        raise ValueError("idiom must be non-empty")
    return idiom in sentence


def find_idioms(sentence: str, idioms: Iterable) -> set[str]:
    """Return every idiom occurring in ``sentence``.

    ``idioms`` may be an IdiomList or any iterable of idiom strings.
    Overlapping occurrences are all reported.
    """
    found = set()
    for item in idioms:
        idiom = getattr(item, "idiom", item)
        if idiom in sentence:
            found.add(idiom)
    return found
