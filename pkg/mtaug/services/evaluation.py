import math
from collections.abc import Mapping, Sequence
from pathlib import Path

import polars as pl
from loguru import logger

from mtaug.core.enums import BleuBucket, IssueCategory
from mtaug.core.errors import EmptyInput, EmptyReference, LengthMismatch, MalformedRow, OutOfRange
from mtaug.schemas.corpus import Sentence
from mtaug.schemas.reports import BleuReport, TriagedPair, TriageReport
from mtaug.services.utils.extract import read_lines, split_tsv_row
from mtaug.services.utils.transform import ngram_counts

MAX_ORDER = 4

DEFAULT_BAND = (0.2, 0.4)

# Upper edges of the interpretation buckets, as (edge, inclusive, bucket)
_BUCKET_EDGES: tuple[tuple[float, bool, BleuBucket], ...] = (
    (0.10, False, BleuBucket.ALMOST_USELESS),
    (0.20, False, BleuBucket.HARD_TO_GET_GIST),
    (0.30, False, BleuBucket.GIST_CLEAR),
    (0.40, True, BleuBucket.UNDERSTANDABLE),
    (0.50, False, BleuBucket.HIGH_QUALITY),
    (0.60, False, BleuBucket.VERY_HIGH_QUALITY),
)


def interpret_bleu(score: float) -> BleuBucket:
    """
    Map a 0-1 BLEU score to its interpretation bucket.

    Buckets are half-open on the upper edge except "Understandable to good
    translations", which owns 0.40.

    Raises:
        OutOfRange: score outside [0, 1].
    """
    if not 0.0 <= score <= 1.0:
        raise OutOfRange(f"BLEU score must lie in [0, 1], got {score}")
    for edge, inclusive, bucket in _BUCKET_EDGES:
        if score < edge or (inclusive and score == edge):
            return bucket
    return BleuBucket.BETTER_THAN_HUMAN


def _clipped_matches(hypothesis: Sequence[str], reference: Sequence[str], n: int) -> tuple[int, int]:
    """(clipped n-gram matches, hypothesis n-gram count) for one sentence."""
    hyp_counts = ngram_counts(hypothesis, n)
    ref_counts = ngram_counts(reference, n)
    matches = sum(min(count, ref_counts[gram]) for gram, count in hyp_counts.items())
    return matches, max(len(hypothesis) - n + 1, 0)


def _brevity_penalty(hyp_length: int, ref_length: int) -> float:
    if hyp_length == 0:
        return 0.0
    if hyp_length >= ref_length:
        return 1.0
    return math.exp(1.0 - ref_length / hyp_length)


def _geometric_bleu(precisions: Sequence[float], brevity_penalty: float) -> float:
    if min(precisions) <= 0.0:
        return 0.0
    return min(brevity_penalty * math.exp(sum(math.log(p) for p in precisions) / len(precisions)), 1.0)


def corpus_bleu(hypotheses: Sequence[Sentence], references: Sequence[Sentence]) -> BleuReport:
    """
    Standard corpus BLEU-4: clipped n-gram counts summed over all pairs,
    uniform weights, no smoothing (any zero precision gives 0).

    Raises:
        LengthMismatch: different numbers of hypotheses and references.
        EmptyInput: no pairs at all.
    """
    if len(hypotheses) != len(references):
        raise LengthMismatch(f"{len(hypotheses)} hypotheses for {len(references)} references")
    if not hypotheses:
        raise EmptyInput("BLEU needs at least one hypothesis/reference pair")

    matches = [0] * MAX_ORDER
    totals = [0] * MAX_ORDER
    hyp_length = ref_length = 0
    for hypothesis, reference in zip(hypotheses, references):
        hyp_length += len(hypothesis.tokens)
        ref_length += len(reference.tokens)
        for order in range(MAX_ORDER):
            matched, total = _clipped_matches(hypothesis.tokens, reference.tokens, order + 1)
            matches[order] += matched
            totals[order] += total

    precisions = [matched / total if total else 0.0 for matched, total in zip(matches, totals)]
    brevity_penalty = _brevity_penalty(hyp_length, ref_length)
    score = _geometric_bleu(precisions, brevity_penalty)

    return BleuReport(
        score=score,
        precisions=precisions,
        brevity_penalty=brevity_penalty,
        hyp_length=hyp_length,
        ref_length=ref_length,
        bucket=interpret_bleu(score),
    )


def sentence_bleu(hypothesis: Sentence, reference: Sentence) -> float:
    """
    Sentence-level BLEU-4 with add-one smoothing.

    When any order n >= 2 has zero matches, one is added to the numerator and
    denominator of every order n >= 2; unigram precision is never smoothed.
    Without zero counts the value equals corpus_bleu on the single pair.

    Raises:
        EmptyReference: the reference has no tokens.
    """
    if not reference.tokens:
        raise EmptyReference("sentence BLEU needs a non-empty reference")
    if not hypothesis.tokens:
        return 0.0

    counts = [_clipped_matches(hypothesis.tokens, reference.tokens, order + 1) for order in range(MAX_ORDER)]
    smooth = any(matched == 0 for matched, _ in counts[1:])

    unigram_matches, unigram_total = counts[0]
    precisions = [unigram_matches / unigram_total]
    for matched, total in counts[1:]:
        precisions.append((matched + 1) / (total + 1) if smooth else matched / total)

    return _geometric_bleu(precisions, _brevity_penalty(len(hypothesis.tokens), len(reference.tokens)))


def detect_number_ambiguity(hypothesis: Sentence, reference: Sentence) -> bool:
    """True iff exactly one side contains an all-digit token (e.g. "2023" vs. spelled out)."""
    def has_number(sentence: Sentence) -> bool:
        return any(token.isdecimal() for token in sentence.tokens)

    return has_number(hypothesis) != has_number(reference)


def load_labels(path: str | Path) -> dict[int, IssueCategory]:
    """
    Read manual issue labels: "pair_index TAB category" rows.

    Raises:
        MalformedRow: bad column count, non-integer index or unknown category.
    """
    labels: dict[int, IssueCategory] = {}
    for lineno, row in enumerate(read_lines(path), start=1):
        index_cell, category_cell = split_tsv_row(row, 2, path, lineno)
        if not index_cell.isdigit():
            raise MalformedRow(f"pair index must be a non-negative integer, got '{index_cell}'", path=path, line=lineno)
        try:
            labels[int(index_cell)] = IssueCategory(category_cell.lower())
        except ValueError as exc:
            raise MalformedRow(f"unknown issue category '{category_cell}'", path=path, line=lineno) from exc

    logger.info(f"Loaded {len(labels)} issue labels from {path}")
    return labels


def select_band(scores: Sequence[float], lo: float, hi: float) -> list[int]:
    """Indices whose score lies in the closed interval [lo, hi]."""
    if not 0.0 <= lo <= hi <= 1.0:
        raise OutOfRange(f"band must satisfy 0 <= lo <= hi <= 1, got [{lo}, {hi}]")
    frame = pl.DataFrame({"index": range(len(scores)), "score": list(scores)}, schema={"index": pl.Int64, "score": pl.Float64})
    return frame.filter(pl.col("score").is_between(lo, hi, closed="both"))["index"].to_list()


def build_triage_report(
        scores: Sequence[float],
        hypotheses: Sequence[Sentence],
        references: Sequence[Sentence],
        lo: float,
        hi: float,
        labels: Mapping[int, IssueCategory] | None = None,
) -> TriageReport:
    """
    Triage from precomputed sentence scores.

    Unlabelled selected pairs are tagged number-ambiguity when the digit
    heuristic fires, else unknown.
    """
    labels = labels or {}
    selected: list[TriagedPair] = []
    for index in select_band(scores, lo, hi):
        category = labels.get(index)
        if category is None:
            category = (
                IssueCategory.NUMBER_AMBIGUITY
                if detect_number_ambiguity(hypotheses[index], references[index])
                else IssueCategory.UNKNOWN
            )
        selected.append(TriagedPair(index=index, score=scores[index], category=category))

    tally = (
        pl.DataFrame(
            {"category": [item.category.value for item in selected]},
            schema={"category": pl.String},
        )
        .group_by("category")
        .len()
    )
    found = dict(zip(tally["category"].to_list(), tally["len"].to_list()))
    counts = {category: found.get(category.value, 0) for category in IssueCategory}

    return TriageReport(band=(lo, hi), selected=selected, counts=counts)


def category_bleu(
        hypotheses: Sequence[Sentence],
        references: Sequence[Sentence],
        report: TriageReport,
) -> dict[IssueCategory, BleuReport]:
    """Corpus BLEU over the selected pairs of each issue category that has any."""
    by_category: dict[IssueCategory, list[int]] = {}
    for item in report.selected:
        by_category.setdefault(item.category, []).append(item.index)
    return {
        category: corpus_bleu([hypotheses[i] for i in indices], [references[i] for i in indices])
        for category, indices in by_category.items()
    }


def triage(
        hypotheses: Sequence[Sentence],
        references: Sequence[Sentence],
        lo: float = DEFAULT_BAND[0],
        hi: float = DEFAULT_BAND[1],
        labels: Mapping[int, IssueCategory] | None = None,
) -> TriageReport:
    """
    Select pairs whose sentence BLEU lies in [lo, hi] and tag each with an issue category.

    Raises:
        LengthMismatch: different numbers of hypotheses and references.
        EmptyReference: a reference line is empty.
        OutOfRange: invalid band.
    """
    if len(hypotheses) != len(references):
        raise LengthMismatch(f"{len(hypotheses)} hypotheses for {len(references)} references")

    scores = [sentence_bleu(hypothesis, reference) for hypothesis, reference in zip(hypotheses, references)]
    report = build_triage_report(scores, hypotheses, references, lo, hi, labels)
    report.category_scores = category_bleu(hypotheses, references, report)

    logger.info(f"Triage selected {len(report.selected)} of {len(scores)} pairs in [{lo}, {hi}]")
    return report
