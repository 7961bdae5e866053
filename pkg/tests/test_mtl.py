import itertools
import math
import random
from collections import Counter

import pytest

from mtaug.core.enums import MtlTaskKind
from mtaug.core.errors import EmptyDictionary
from mtaug.schemas.corpus import BilingualDictionary, DictionaryEntry, Sentence, SentencePair
from mtaug.schemas.specs import MtlSpec, SeedSpec
from mtaug.services.corpus import concat_corpora, tokenize
from mtaug.services.mtl import run_mtl, swap_positions, task_replace, task_reverse, task_source, task_swap, task_token
from mtaug.services.sampling import Rng
from tests.factories import EXAMPLE_SOURCE, EXAMPLE_TARGET, corpus_of, random_tokens, sized_corpus

PROPERTY_CASES = 10_000


def _pair(source: list[str], target: list[str]) -> SentencePair:
    return SentencePair(source=Sentence.of(source), target=Sentence.of(target))


class TestWorkedExample:
    def test_source_row(self, example_pair):
        assert task_source(example_pair).target == tokenize(EXAMPLE_SOURCE)

    def test_reverse_row(self, example_pair):
        assert task_reverse(example_pair).target == tokenize("adrin jĭ Diêu đe Bă")

    def test_swap_row_is_admissible(self, example_pair):
        tokens = example_pair.target.tokens
        admissible = set()
        for a, b in itertools.combinations(range(5), 2):
            swapped = list(tokens)
            swapped[a], swapped[b] = swapped[b], swapped[a]
            admissible.add(tuple(swapped))

        outputs = {task_swap(example_pair, 0.5, Rng.for_item(seed, "swap", 0)).target.tokens for seed in range(200)}
        assert outputs <= admissible
        assert tokenize("Diêu đe Bă jĭ adrin").tokens in outputs

    def test_token_row_is_admissible(self, example_pair):
        tokens = example_pair.target.tokens
        admissible = {
            tuple("UNK" if i in chosen else token for i, token in enumerate(tokens))
            for chosen in itertools.combinations(range(5), 2)
        }
        outputs = {
            task_token(example_pair, 0.5, "UNK", Rng.for_item(seed, "token", 0)).target.tokens
            for seed in range(200)
        }
        assert outputs <= admissible
        assert tokenize("Bă đe UNK jĭ UNK").tokens in outputs

    def test_replace_row_is_admissible(self, example_pair):
        dictionary = BilingualDictionary(
            entries=(
                DictionaryEntry(source=("con", "vẹt"), target=("sem", "diê")),
                DictionaryEntry(source=("vàng",), target=("'brơu",)),
            )
        )
        links = frozenset({(0, 0), (2, 1)})
        outputs = {
            task_replace(example_pair, 0.5, dictionary, links, Rng.for_item(seed, "replace", 0))
            for seed in range(100)
        }
        expected = SentencePair(
            source=tokenize("con vẹt Điêu vàng ốm nặng"),
            target=tokenize("sem diê 'brơu Diêu jĭ adrin"),
        )
        assert expected in outputs
        # both links replaced every time; only the entry choice varies
        assert len(outputs) <= 4
        assert all(output.source.tokens[-2:] == ("ốm", "nặng") for output in outputs)


class TestSwap:
    def test_alpha_zero(self, example_pair):
        assert task_swap(example_pair, 0.0, Rng(1)) == example_pair

    def test_four_distinct_tokens_change_two_positions(self):
        tokens = ["a", "b", "c", "d"]
        admissible = set()
        for a, b in itertools.combinations(range(4), 2):
            swapped = list(tokens)
            swapped[a], swapped[b] = swapped[b], swapped[a]
            admissible.add(tuple(swapped))
        for seed in range(100):
            out = swap_positions(tokens, 0.5, Rng(seed))
            assert tuple(out) in admissible
            assert sum(x != y for x, y in zip(out, tokens)) == 2

    def test_properties(self):
        rnd = random.Random(1)
        for case in range(PROPERTY_CASES):
            tokens = random_tokens(rnd, 12, vocab=8)
            alpha = rnd.random()
            out = swap_positions(tokens, alpha, Rng(case))
            changed = sum(x != y for x, y in zip(out, tokens))
            bound = 2 * math.floor(alpha * len(tokens) / 2)
            assert Counter(out) == Counter(tokens)
            assert changed <= bound
            if len(set(tokens)) == len(tokens):
                assert changed == bound


class TestToken:
    def test_alpha_one_masks_everything(self, example_pair):
        assert set(task_token(example_pair, 1.0, "UNK", Rng(0)).target.tokens) == {"UNK"}

    def test_alpha_zero(self, example_pair):
        assert task_token(example_pair, 0.0, "UNK", Rng(0)) == example_pair

    def test_unk_count(self):
        rnd = random.Random(2)
        for case in range(PROPERTY_CASES):
            target = random_tokens(rnd, 12)
            alpha = rnd.random()
            out = task_token(_pair(["s"], target), alpha, "UNK", Rng(case)).target.tokens
            assert out.count("UNK") == math.floor(alpha * len(target))
            assert all(y in (x, "UNK") for x, y in zip(target, out))

    def test_existing_unk_tokens_are_counted_once(self):
        target = ["UNK", "a", "UNK", "b", "c", "d"]
        for seed in range(50):
            out = task_token(_pair(["s"], target), 0.5, "UNK", Rng(seed)).target.tokens
            # 3 masked positions, some of which may already hold UNK
            assert 3 <= out.count("UNK") <= 5
            assert all(y in (x, "UNK") for x, y in zip(target, out))


class TestSourceAndReverse:
    def test_source_already_equal(self):
        pair = _pair(["a", "b"], ["a", "b"])
        assert task_source(pair) == pair

    def test_empty_source(self):
        assert task_source(_pair([], ["x"])).target.tokens == ()

    def test_single_token_reverse(self):
        pair = _pair(["a"], ["x"])
        assert task_reverse(pair) == pair

    def test_properties(self):
        rnd = random.Random(3)
        for _ in range(PROPERTY_CASES):
            pair = _pair(random_tokens(rnd), random_tokens(rnd))
            reversed_pair = task_reverse(pair)
            assert task_reverse(reversed_pair) == pair
            assert Counter(reversed_pair.target.tokens) == Counter(pair.target.tokens)
            assert reversed_pair.source == pair.source
            copied = task_source(pair)
            assert copied.target.tokens == pair.source.tokens
            assert copied.source == pair.source


class TestReplace:
    @pytest.fixture
    def singleton(self) -> BilingualDictionary:
        return BilingualDictionary(entries=(DictionaryEntry(source=("X",), target=("Y",)),))

    def test_single_link(self, singleton):
        pair = _pair(["s0", "s1"], ["t0", "t1"])
        out = task_replace(pair, 1.0, singleton, frozenset({(0, 0)}), Rng(5))
        assert out.source.tokens == ("X", "s1")
        assert out.target.tokens == ("Y", "t1")

    def test_alpha_zero_and_no_links_are_identity(self, example_pair, singleton):
        assert task_replace(example_pair, 0.0, singleton, None, Rng(0)) == example_pair
        assert task_replace(example_pair, 1.0, singleton, frozenset(), Rng(0)) == example_pair

    def test_fewer_links_than_budget_uses_all(self, example_pair, singleton):
        out = task_replace(example_pair, 1.0, singleton, frozenset({(4, 4)}), Rng(0))
        assert out.source.tokens[-1] == "X"
        assert out.target.tokens[-1] == "Y"

    def test_falls_back_to_naive_alignment(self, example_pair, singleton):
        out = task_replace(example_pair, 1.0, singleton, None, Rng(0))
        assert set(out.source.tokens) == {"X"}
        assert set(out.target.tokens) == {"Y"}

    def test_empty_dictionary(self, example_pair):
        with pytest.raises(EmptyDictionary):
            task_replace(example_pair, 0.5, BilingualDictionary(), None, Rng(0))

    def test_empty_dictionary_without_budget(self, example_pair):
        assert task_replace(example_pair, 0.0, BilingualDictionary(), None, Rng(0)) == example_pair
        assert task_replace(example_pair, 1.0, BilingualDictionary(), frozenset(), Rng(0)) == example_pair


class TestRunMtl:
    def test_single_task_size_and_append(self):
        corpus = sized_corpus(16105)
        synthetic = run_mtl(corpus, MtlSpec(tasks=(MtlTaskKind.TOKEN,)), SeedSpec(master_seed=1))
        assert len(synthetic) == 16105
        assert len(concat_corpora(corpus, synthetic)) == 32210

    def test_two_tasks_double(self):
        corpus = sized_corpus(7)
        synthetic = run_mtl(corpus, MtlSpec(tasks=(MtlTaskKind.TOKEN, MtlTaskKind.SWAP)))
        assert len(synthetic) == 14
        # task-major order
        assert "UNK" in synthetic.pairs[0].target.tokens
        assert "UNK" not in synthetic.pairs[7].target.tokens

    def test_empty_corpus(self):
        assert len(run_mtl(corpus_of([]), MtlSpec(tasks=tuple(MtlTaskKind)))) == 0

    @pytest.mark.parametrize("alpha", [0.0, 1.0])
    def test_replace_with_nothing_to_replace(self, alpha):
        corpus = corpus_of([("a b", ""), ("c", "")])
        assert run_mtl(corpus, MtlSpec(tasks=(MtlTaskKind.REPLACE,), alpha=alpha)) == corpus

    def test_source_side_untouched_except_replace(self):
        rnd = random.Random(4)
        corpus = corpus_of([(" ".join(random_tokens(rnd)), " ".join(random_tokens(rnd))) for _ in range(30)])
        tasks = (MtlTaskKind.SWAP, MtlTaskKind.TOKEN, MtlTaskKind.SOURCE, MtlTaskKind.REVERSE)
        synthetic = run_mtl(corpus, MtlSpec(tasks=tasks, alpha=0.7), SeedSpec(master_seed=9))
        for offset, pair in enumerate(synthetic.pairs):
            assert pair.source == corpus.pairs[offset % len(corpus)].source

    def test_replace_without_dictionary_extracts_one(self, example_pair):
        corpus = corpus_of([(EXAMPLE_SOURCE, EXAMPLE_TARGET), ("Bố ốm", "Bă jĭ")])
        synthetic = run_mtl(corpus, MtlSpec(tasks=(MtlTaskKind.REPLACE,), alpha=1.0), SeedSpec(master_seed=2))
        assert len(synthetic) == 2
        assert len(synthetic.pairs[0].source) == 5

    def test_deterministic_and_seed_sensitive(self):
        corpus = corpus_of([(" ".join(["a"] * 3), " ".join(f"t{i}" for i in range(8)))] * 100)
        spec = MtlSpec(tasks=(MtlTaskKind.TOKEN, MtlTaskKind.SWAP), alpha=0.5)
        first = run_mtl(corpus, spec, SeedSpec(master_seed=10))
        assert run_mtl(corpus, spec, SeedSpec(master_seed=10)) == first
        assert run_mtl(corpus, spec, SeedSpec(master_seed=11)) != first

    def test_pair_streams_are_independent(self):
        corpus = sized_corpus(5)
        spec = MtlSpec(tasks=(MtlTaskKind.TOKEN,), alpha=0.5)
        full = run_mtl(corpus, spec, SeedSpec(master_seed=3))
        head = run_mtl(corpus_of([(f"s{i} a b", f"t{i} x y z") for i in range(3)]), spec, SeedSpec(master_seed=3))
        assert full.pairs[:3] == head.pairs
