import math
import random

import numpy as np
import pytest

from mtaug.core.enums import AugmentSide, EdaOperation
from mtaug.core.errors import EmptyEmbeddings, EmptyThesaurus
from mtaug.schemas.corpus import EmbeddingTable, Thesaurus
from mtaug.schemas.specs import EdaSpec, EmbedReplaceSpec, SeedSpec
from mtaug.services.baselines import (
    EmbeddingNeighbors,
    eda_augment,
    embed_replace,
    random_deletion,
    random_insertion,
    synonym_replacement,
)
from mtaug.services.corpus import concat_corpora
from mtaug.services.mtl import swap_positions
from mtaug.services.sampling import Rng
from tests.factories import EXAMPLE_SOURCE, EXAMPLE_TARGET, corpus_of, random_tokens, sized_corpus


def _table(vectors: dict[str, tuple[float, ...]]) -> EmbeddingTable:
    words = tuple(vectors)
    matrix = np.array([vectors[word] for word in words], dtype=np.float64)
    return EmbeddingTable(dimension=matrix.shape[1], words=words, matrix=matrix)


@pytest.fixture
def thesaurus() -> Thesaurus:
    return Thesaurus(entries={"ốm": ("bệnh", "đau"), "nặng": ("nghiêm",), "jĭ": ("jĭ2",)})


class TestEdaOperations:
    def test_synonym_replacement(self):
        out = synonym_replacement(["a", "b", "a"], 2, Thesaurus(entries={"a": ("x",)}), Rng(0))
        assert out == ["x", "b", "x"]

    def test_synonym_replacement_caps_at_candidates(self, thesaurus):
        out = synonym_replacement(["ốm", "khác"], 5, thesaurus, Rng(1))
        assert out[0] in {"bệnh", "đau"}
        assert out[1] == "khác"

    def test_random_insertion_grows_by_n(self, thesaurus):
        out = random_insertion(["ốm", "khác", "nặng"], 2, thesaurus, Rng(2))
        assert len(out) == 5
        assert set(out) - {"ốm", "khác", "nặng"} <= {"bệnh", "đau", "nghiêm"}

    def test_random_insertion_without_candidates(self, thesaurus):
        assert random_insertion(["khác"], 3, thesaurus, Rng(2)) == ["khác"]

    def test_random_deletion_keeps_one(self):
        tokens = ["a", "b", "c"]
        for seed in range(50):
            out = random_deletion(tokens, 1.0, Rng(seed))
            assert len(out) == 1
            assert out[0] in tokens

    def test_random_deletion_alpha_zero(self):
        assert random_deletion(["a", "b"], 0.0, Rng(3)) == ["a", "b"]
        assert random_deletion([], 0.5, Rng(3)) == []


class TestEdaAugment:
    def test_size_and_append(self):
        corpus = sized_corpus(16105)
        spec = EdaSpec(operations=(EdaOperation.RANDOM_SWAP, EdaOperation.RANDOM_DELETION))
        synthetic = eda_augment(corpus, spec, SeedSpec(master_seed=1))
        assert len(synthetic) == 16105
        assert len(concat_corpora(corpus, synthetic)) == 32210

    def test_deletion_with_alpha_zero_is_identity(self):
        corpus = corpus_of([(EXAMPLE_SOURCE, EXAMPLE_TARGET)] * 3)
        synthetic = eda_augment(corpus, EdaSpec(alpha=0.0, operations=(EdaOperation.RANDOM_DELETION,)))
        assert synthetic == corpus

    def test_random_swap_matches_mtl_swap(self):
        corpus = corpus_of([(EXAMPLE_SOURCE, EXAMPLE_TARGET)] * 20)
        synthetic = eda_augment(corpus, EdaSpec(operations=(EdaOperation.RANDOM_SWAP,)), SeedSpec(master_seed=5))
        for pair in synthetic.pairs:
            rng = Rng.for_item(5, "eda", pair.index)
            rng.below(1)
            original = corpus.pairs[pair.index].target.tokens
            assert list(pair.target.tokens) == swap_positions(original, 0.5, rng)
            assert sum(x != y for x, y in zip(pair.target.tokens, original)) == 2

    def test_source_never_changes(self, thesaurus):
        rnd = random.Random(6)
        corpus = corpus_of([(" ".join(random_tokens(rnd)), " ".join(random_tokens(rnd) + ["ốm"])) for _ in range(200)])
        synthetic = eda_augment(corpus, EdaSpec(thesaurus=thesaurus), SeedSpec(master_seed=2))
        assert [pair.source for pair in synthetic.pairs] == [pair.source for pair in corpus.pairs]

    def test_source_side_option(self, thesaurus):
        corpus = corpus_of([(EXAMPLE_SOURCE, EXAMPLE_TARGET)])
        spec = EdaSpec(operations=(EdaOperation.SYNONYM_REPLACEMENT,), thesaurus=thesaurus, side=AugmentSide.SOURCE)
        synthetic = eda_augment(corpus, spec)
        assert synthetic.pairs[0].target == corpus.pairs[0].target
        assert synthetic.pairs[0].source != corpus.pairs[0].source

    def test_missing_thesaurus_disables_dependent_operations(self):
        corpus = corpus_of([(EXAMPLE_SOURCE, EXAMPLE_TARGET)] * 10)
        synthetic = eda_augment(corpus, EdaSpec(operations=(EdaOperation.SYNONYM_REPLACEMENT, EdaOperation.RANDOM_SWAP)))
        assert all(sorted(pair.target.tokens) == sorted(corpus.pairs[0].target.tokens) for pair in synthetic.pairs)

    def test_nothing_left_without_thesaurus(self):
        with pytest.raises(EmptyThesaurus):
            eda_augment(sized_corpus(2), EdaSpec(operations=(EdaOperation.SYNONYM_REPLACEMENT,)))

    def test_empty_thesaurus(self):
        with pytest.raises(EmptyThesaurus):
            eda_augment(sized_corpus(2), EdaSpec(thesaurus=Thesaurus()))

    def test_seed_changes_output(self, thesaurus):
        corpus = corpus_of([(EXAMPLE_SOURCE, EXAMPLE_TARGET)] * 100)
        spec = EdaSpec(thesaurus=thesaurus)
        first = eda_augment(corpus, spec, SeedSpec(master_seed=1))
        assert eda_augment(corpus, spec, SeedSpec(master_seed=1)) == first
        assert eda_augment(corpus, spec, SeedSpec(master_seed=2)) != first


class TestEmbeddingNeighbors:
    def test_cosine_ranking(self):
        neighbors = EmbeddingNeighbors(_table({"a": (1.0, 0.0), "b": (0.9, 0.1), "c": (0.0, 1.0)}))
        assert neighbors.nearest("a") == "b"
        assert neighbors.ranked("a") == ["b", "c"]
        assert neighbors.nearest("a", rank=2) == "c"

    def test_out_of_vocabulary_and_rank_overflow(self):
        neighbors = EmbeddingNeighbors(_table({"a": (1.0, 0.0), "b": (0.0, 1.0)}))
        assert neighbors.nearest("zzz") is None
        assert neighbors.ranked("zzz") == []
        assert neighbors.nearest("a", rank=2) is None

    def test_ties_break_by_word(self):
        neighbors = EmbeddingNeighbors(_table({"q": (1.0, 0.0), "z": (1.0, 1.0), "m": (1.0, -1.0)}))
        assert neighbors.ranked("q") == ["m", "z"]

    def test_zero_vector_has_no_similarity(self):
        neighbors = EmbeddingNeighbors(_table({"a": (0.0, 0.0), "b": (1.0, 0.0), "c": (0.0, 1.0)}))
        assert neighbors.ranked("a") == ["b", "c"]

    def test_agrees_with_exhaustive_scan(self):
        generator = np.random.default_rng(12)
        for size in (2, 10, 200, 1000):
            words = [f"v{i}" for i in range(size)]
            matrix = generator.normal(size=(size, 8))
            table = EmbeddingTable(dimension=8, words=tuple(words), matrix=matrix)
            neighbors = EmbeddingNeighbors(table)
            for query in generator.choice(size, size=min(size, 20), replace=False):
                q = matrix[query]
                best = max(
                    (i for i in range(size) if i != query),
                    key=lambda i: float(q @ matrix[i]) / (math.sqrt(float(q @ q)) * math.sqrt(float(matrix[i] @ matrix[i]))),
                )
                assert neighbors.nearest(words[query]) == words[best]


class TestEmbedReplace:
    @pytest.fixture
    def spec(self) -> EmbedReplaceSpec:
        return EmbedReplaceSpec(alpha=1.0, embeddings=_table({"a": (1.0, 0.0), "b": (0.9, 0.1), "c": (0.0, 1.0)}))

    def test_nearest_neighbour_replacement(self, spec):
        synthetic = embed_replace(corpus_of([("s", "a")]), spec)
        assert synthetic.pairs[0].target.tokens == ("b",)
        assert synthetic.pairs[0].source.tokens == ("s",)

    def test_alpha_zero(self, spec):
        corpus = corpus_of([("s", "a b c")])
        assert embed_replace(corpus, spec.model_copy(update={"alpha": 0.0})) == corpus

    def test_out_of_vocabulary(self, spec):
        corpus = corpus_of([("s", "x y z")])
        assert embed_replace(corpus, spec) == corpus

    def test_token_count_preserved(self, spec):
        rnd = random.Random(3)
        rows = [("s", " ".join(rnd.choice("abcxy") for _ in range(rnd.randint(0, 10)))) for _ in range(500)]
        corpus = corpus_of(rows)
        synthetic = embed_replace(corpus, spec.model_copy(update={"alpha": 0.5}), SeedSpec(master_seed=8))
        assert [len(pair.target) for pair in synthetic.pairs] == [len(pair.target) for pair in corpus.pairs]

    def test_size_and_append(self):
        corpus = sized_corpus(16105)
        spec = EmbedReplaceSpec(alpha=0.5, embeddings=_table({"x": (1.0, 0.0), "y": (0.8, 0.2), "z": (0.0, 1.0)}))
        synthetic = embed_replace(corpus, spec, SeedSpec(master_seed=1))
        assert len(concat_corpora(corpus, synthetic)) == 32210

    def test_seed_changes_output(self):
        corpus = corpus_of([("s", "x y z x y z")] * 100)
        spec = EmbedReplaceSpec(alpha=0.5, embeddings=_table({"x": (1.0, 0.0), "y": (0.8, 0.2), "z": (0.0, 1.0)}))
        assert embed_replace(corpus, spec, SeedSpec(master_seed=1)) != embed_replace(corpus, spec, SeedSpec(master_seed=2))

    def test_empty_table(self):
        empty = EmbeddingTable(dimension=2, words=(), matrix=np.empty((0, 2)))
        with pytest.raises(EmptyEmbeddings):
            embed_replace(sized_corpus(1), EmbedReplaceSpec(embeddings=empty))
