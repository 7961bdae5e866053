from pathlib import Path

import numpy as np
import polars as pl
from loguru import logger

from mtaug.core.errors import (
    HeaderMismatch,
    LineCountMismatch,
    MalformedRow,
    MalformedVector,
    OutOfRangeLink,
    TagMismatch,
)
from mtaug.schemas.corpus import (
    AlignmentSet,
    BilingualDictionary,
    CorpusStats,
    DictionaryEntry,
    EmbeddingTable,
    Link,
    ParallelCorpus,
    Sentence,
    SentencePair,
    Thesaurus,
)
from mtaug.services.utils.extract import parse_link, read_lines, split_tsv_row
from mtaug.services.utils.load import atomic_write_text


def tokenize(text: str) -> Sentence:
    """Split pre-tokenized text on whitespace runs; no linguistic tokenization."""
    return Sentence.of(text.split())


def detokenize(sentence: Sentence) -> str:
    return " ".join(sentence.tokens)


def infer_tag(path: str | Path, fallback: str) -> str:
    """Language tag from a file suffix: 'train.vi' -> 'vi'."""
    suffix = Path(path).suffix.lstrip(".")
    return suffix or fallback


def resolve_tags(
        source_path: str | Path,
        target_path: str | Path,
        source_tag: str | None = None,
        target_tag: str | None = None,
) -> tuple[str, str]:
    """
    Source and target tags: explicit values first, then file suffixes.

    Inferred tags that collide (`src.txt`, `tgt.txt`) fall back to "src" / "tgt".

    Raises:
        TagMismatch: both tags were given explicitly and are equal.
    """
    if source_tag and target_tag:
        if source_tag == target_tag:
            raise TagMismatch(f"source and target tags must differ, both are '{source_tag}'")
        return source_tag, target_tag

    source = source_tag or infer_tag(source_path, "src")
    target = target_tag or infer_tag(target_path, "tgt")
    if source != target:
        return source, target

    if source_tag:
        target = "src" if source_tag == "tgt" else "tgt"
    elif target_tag:
        source = "tgt" if target_tag == "src" else "src"
    else:
        source, target = "src", "tgt"
    logger.debug(f"File suffixes give no distinct tags; using '{source}' and '{target}'")
    return source, target


def load_parallel(
        source_path: str | Path,
        target_path: str | Path,
        source_tag: str | None = None,
        target_tag: str | None = None,
) -> ParallelCorpus:
    """
    Load two line-aligned UTF-8 files; line k of each file becomes pair k.

    Raises:
        LineCountMismatch: the files have different line counts.
        CorpusEncodingError: either file is not valid UTF-8.
        TagMismatch: explicit source and target tags are equal.
    """
    source_tag, target_tag = resolve_tags(source_path, target_path, source_tag, target_tag)

    source_lines = read_lines(source_path)
    target_lines = read_lines(target_path)
    if len(source_lines) != len(target_lines):
        raise LineCountMismatch(
            f"{source_path} has {len(source_lines)} lines but {target_path} has {len(target_lines)}"
        )

    corpus = ParallelCorpus.from_sentences(
        ((tokenize(src), tokenize(tgt)) for src, tgt in zip(source_lines, target_lines)),
        source_tag=source_tag,
        target_tag=target_tag,
    )
    logger.info(f"Loaded {len(corpus)} {source_tag}-{target_tag} pairs from {source_path}, {target_path}")
    return corpus


def save_parallel(corpus: ParallelCorpus, source_path: str | Path, target_path: str | Path) -> None:
    """Write one detokenized line per pair to each file, atomically."""
    atomic_write_text(source_path, "".join(f"{detokenize(pair.source)}\n" for pair in corpus.pairs))
    atomic_write_text(target_path, "".join(f"{detokenize(pair.target)}\n" for pair in corpus.pairs))
    logger.info(f"Saved {len(corpus)} pairs to {source_path}, {target_path}")


def load_alignments(path: str | Path, corpus: ParallelCorpus) -> AlignmentSet:
    """
    Read Pharaoh alignments ("0-0 2-1 ...", one line per pair).

    Raises:
        LineCountMismatch: line count differs from the corpus size.
        MalformedLink: an item is not "i-j".
        OutOfRangeLink: a position is beyond its sentence (stale alignment file).
    """
    lines = read_lines(path)
    if len(lines) != len(corpus):
        raise LineCountMismatch(f"{len(lines)} alignment lines for {len(corpus)} pairs", path=path)

    links: list[frozenset[Link]] = []
    for pair, line in zip(corpus.pairs, lines):
        lineno = pair.index + 1
        pair_links = frozenset(parse_link(item, path, lineno) for item in line.split())
        for src_idx, tgt_idx in pair_links:
            if src_idx >= len(pair.source) or tgt_idx >= len(pair.target):
                raise OutOfRangeLink(
                    f"link {src_idx}-{tgt_idx} outside a {len(pair.source)}x{len(pair.target)} pair",
                    path=path,
                    line=lineno,
                )
        links.append(pair_links)

    logger.info(f"Loaded alignments for {len(links)} pairs from {path}")
    return AlignmentSet(links=tuple(links))


def naive_align(pair: SentencePair) -> frozenset[Link]:
    """
    Diagonal fallback aligner: source i links to round(i * t_tgt / t_src),
    rounding halves up, clamped to the target range.
    """
    t_src, t_tgt = len(pair.source), len(pair.target)
    if t_src == 0 or t_tgt == 0:
        return frozenset()
    # floor(i * t_tgt / t_src + 1/2) in exact integer arithmetic
    return frozenset(
        (i, min((2 * i * t_tgt + t_src) // (2 * t_src), t_tgt - 1))
        for i in range(t_src)
    )


def load_dictionary(path: str | Path) -> BilingualDictionary:
    """
    Read a "source phrase TAB target phrase" TSV in file order.

    Raises:
        MalformedRow: a row without exactly two non-empty columns.
    """
    entries = []
    for lineno, row in enumerate(read_lines(path), start=1):
        source_phrase, target_phrase = split_tsv_row(row, 2, path, lineno)
        entries.append(
            DictionaryEntry(source=tokenize(source_phrase).tokens, target=tokenize(target_phrase).tokens)
        )
    logger.info(f"Loaded {len(entries)} dictionary entries from {path}")
    return BilingualDictionary(entries=tuple(entries))


def extract_dictionary(corpus: ParallelCorpus, alignments: AlignmentSet | None = None) -> BilingualDictionary:
    """
    Build a dictionary from the corpus itself: every aligned token pair becomes
    an entry (deduplicated, first-seen order). Uses naive_align without alignments.
    """
    seen: dict[tuple[str, str], None] = {}
    for pair in corpus.pairs:
        links = alignments.for_pair(pair.index) if alignments is not None else naive_align(pair)
        for src_idx, tgt_idx in sorted(links):
            seen.setdefault((pair.source.tokens[src_idx], pair.target.tokens[tgt_idx]), None)

    logger.info(f"Extracted {len(seen)} dictionary entries from {len(corpus)} pairs")
    return BilingualDictionary(
        entries=tuple(DictionaryEntry(source=(src,), target=(tgt,)) for src, tgt in seen)
    )


def load_thesaurus(path: str | Path) -> Thesaurus:
    """
    Read a "word TAB syn1,syn2,..." TSV. Later rows for the same word extend it.

    Raises:
        MalformedRow: wrong column count, or no usable synonym on a row.
    """
    entries: dict[str, list[str]] = {}
    for lineno, row in enumerate(read_lines(path), start=1):
        word, synonyms_cell = split_tsv_row(row, 2, path, lineno)
        synonyms = [syn for syn in (cell.strip() for cell in synonyms_cell.split(",")) if syn and syn != word]
        if not synonyms or any(len(syn.split()) != 1 for syn in synonyms) or len(word.split()) != 1:
            raise MalformedRow("thesaurus rows need one word and single-token synonyms", path=path, line=lineno)
        bucket = entries.setdefault(word, [])
        bucket.extend(syn for syn in synonyms if syn not in bucket)

    logger.info(f"Loaded thesaurus with {len(entries)} head words from {path}")
    return Thesaurus(entries={word: tuple(synonyms) for word, synonyms in entries.items()})


def load_embeddings(path: str | Path) -> EmbeddingTable:
    """
    Read word2vec text format: a "V D" header, then V rows "word c1 ... cD".

    Raises:
        HeaderMismatch: bad header, row count differs from V, or a duplicate word.
        MalformedVector: a row without D numeric components.
    """
    lines = read_lines(path)
    if not lines:
        raise HeaderMismatch("missing 'V D' header", path=path, line=1)

    header = lines[0].split()
    if len(header) != 2 or not all(cell.isascii() and cell.isdigit() for cell in header) or int(header[1]) == 0:
        raise HeaderMismatch(f"expected 'V D' header, got '{lines[0]}'", path=path, line=1)
    vocab_size, dimension = int(header[0]), int(header[1])

    rows = [line for line in lines[1:] if line.strip()]
    if len(rows) != vocab_size:
        raise HeaderMismatch(f"header declares {vocab_size} vectors, body has {len(rows)}", path=path)

    words: list[str] = []
    seen: set[str] = set()
    matrix = np.empty((vocab_size, dimension), dtype=np.float64)
    for row_number, row in enumerate(rows):
        lineno = row_number + 2
        word, *components = row.split()
        if len(components) != dimension:
            raise MalformedVector(
                f"'{word}' has {len(components)} components, header declares {dimension}",
                path=path,
                line=lineno,
            )
        try:
            matrix[row_number] = [float(component) for component in components]
        except ValueError as exc:
            raise MalformedVector(f"non-numeric component for '{word}'", path=path, line=lineno) from exc
        if word in seen:
            raise HeaderMismatch(f"duplicate key '{word}'", path=path, line=lineno)
        seen.add(word)
        words.append(word)

    logger.info(f"Loaded {vocab_size} embeddings of dimension {dimension} from {path}")
    return EmbeddingTable(dimension=dimension, words=tuple(words), matrix=matrix)


def corpus_stats(corpus: ParallelCorpus) -> CorpusStats:
    """Token counts, vocabulary sizes and per-side sentence length summaries."""
    frame = pl.DataFrame(
        {
            "source": [list(pair.source.tokens) for pair in corpus.pairs],
            "target": [list(pair.target.tokens) for pair in corpus.pairs],
        },
        schema={"source": pl.List(pl.String), "target": pl.List(pl.String)},
    )

    if frame.height == 0:
        return CorpusStats(
            pair_count=0,
            source_token_count=0,
            target_token_count=0,
            source_vocab_size=0,
            target_vocab_size=0,
            source_min_length=0,
            source_mean_length=0.0,
            source_max_length=0,
            target_min_length=0,
            target_mean_length=0.0,
            target_max_length=0,
        )

    summary = frame.select(
        expr
        for side in ("source", "target")
        for expr in (
            pl.col(side).list.len().sum().alias(f"{side}_token_count"),
            pl.col(side).explode().drop_nulls().n_unique().alias(f"{side}_vocab_size"),
            pl.col(side).list.len().min().alias(f"{side}_min_length"),
            pl.col(side).list.len().mean().alias(f"{side}_mean_length"),
            pl.col(side).list.len().max().alias(f"{side}_max_length"),
        )
    ).row(0, named=True)

    return CorpusStats(pair_count=frame.height, **summary)


def concat_corpora(a: ParallelCorpus, b: ParallelCorpus) -> ParallelCorpus:
    """
    Pairs of `a` followed by pairs of `b`, renumbered 0..len-1.

    Raises:
        TagMismatch: the corpora have different language tags.
    """
    if (a.source_tag, a.target_tag) != (b.source_tag, b.target_tag):
        raise TagMismatch(
            f"cannot concatenate {a.source_tag}-{a.target_tag} with {b.source_tag}-{b.target_tag}"
        )
    if not b.pairs:
        return a
    return ParallelCorpus.renumbered(a.pairs + b.pairs, a.source_tag, a.target_tag)
