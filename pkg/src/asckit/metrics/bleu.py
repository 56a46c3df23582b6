"""Sentence-level BLEU over whitespace tokens, no smoothing."""

from __future__ import annotations

import math
from collections import Counter


def _ngrams(tokens: list[str], n: int) -> Counter:
    return Counter(tuple(tokens[i:i + n]) for i in range(len(tokens) - n + 1))


def bleu(candidate: str, reference: str, max_n: int = 4) -> float:
    """Clipped modified n-gram precision (n = 1..max_n, uniform weights),
    geometric mean, with brevity penalty exp(1 - r/c) when c < r.

    Position independent by construction: only n-gram counts matter.
    Returns 0.0 when the candidate is empty or any precision is zero
    (which includes candidates shorter than max_n tokens).
    """
    cand = candidate.split()
    ref = reference.split()
    c, r = len(cand), len(ref)
    if c == 0:
        return 0.0

    log_sum = 0.0
    for n in range(1, max_n + 1):
        counts = _ngrams(cand, n)
        total = sum(counts.values())
        if total == 0:
            return 0.0
        ref_counts = _ngrams(ref, n)
        clipped = sum(min(count, ref_counts[gram]) for gram, count in counts.items())
        if clipped == 0:
            return 0.0
        log_sum += math.log(clipped / total) / max_n

    brevity = 1.0 if c >= r else math.exp(1.0 - r / c)
    return brevity * math.exp(log_sum)
