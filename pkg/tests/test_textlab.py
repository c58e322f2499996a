"""Feature extraction, logistic training, prefix and pairwise studies."""

import math

import numpy as np
import pytest
import scipy.sparse as sp

from detectability import (
    Document,
    Label,
    TrainConfig,
    auroc_vs_prefix_length,
    build_vocab,
    featurize,
    pairwise_augment,
    pairwise_auroc,
    train_logreg,
)
from detectability.textlab import _logreg_loss

from _synth import rand_pair, unigram_docs


def doc(text, label=Label.HUMAN, id="d0"):
    return Document(id=id, text=text, label=label)


def tiny_corpus():
    return [
        doc("apple banana apple", id="a"),
        doc("banana cherry banana", id="b"),
        doc("apple cherry", id="c"),
    ]


class TestVocabulary:
    def test_min_df_filters_and_sorts(self):
        v = build_vocab(tiny_corpus(), min_df=2)
        assert v.tokens == ("apple", "banana", "cherry")
        assert len(v) == 3

    def test_min_df_three_drops_everything_but_none(self):
        v = build_vocab(tiny_corpus(), min_df=3)
        assert v.tokens == ()

    def test_doc_freq_counts_documents_not_tokens(self):
        v = build_vocab(tiny_corpus(), min_df=1)
        assert v.doc_freq[v.column("apple")] == 2
        assert v.doc_freq[v.column("banana")] == 2
        assert v.n_docs == 3

    def test_column_is_none_for_oov(self):
        v = build_vocab(tiny_corpus(), min_df=2)
        assert v.column("durian") is None
        assert v.column("apple") == 0


class TestFeaturize:
    def test_count_matrix(self):
        docs = tiny_corpus()
        v = build_vocab(docs, min_df=1)
        x = featurize(docs, v, space="counts")
        assert sp.issparse(x)
        dense = x.toarray()
        assert dense[0, v.column("apple")] == 2
        assert dense[0, v.column("banana")] == 1
        assert dense[2, v.column("cherry")] == 1

    def test_tfidf_matches_manual_computation(self):
        docs = tiny_corpus()
        v = build_vocab(docs, min_df=1)
        x = featurize(docs, v, space="tfidf").toarray()
        n = 3
        counts = np.zeros((3, len(v)))
        for i, d in enumerate(docs):
            for tok in d.text.split():
                counts[i, v.column(tok)] += 1
        idf = np.log((1 + n) / (1 + v.doc_freq)) + 1.0
        manual = counts * idf
        norms = np.linalg.norm(manual, axis=1, keepdims=True)
        manual = manual / norms
        np.testing.assert_allclose(x, manual, atol=1e-12)

    def test_rows_unit_norm(self):
        docs = tiny_corpus()
        v = build_vocab(docs, min_df=1)
        x = featurize(docs, v, space="tfidf")
        norms = np.sqrt(np.asarray(x.multiply(x).sum(axis=1)).ravel())
        np.testing.assert_allclose(norms, 1.0, atol=1e-12)

    def test_oov_tokens_ignored(self):
        docs = tiny_corpus()
        v = build_vocab(docs[:2], min_df=1)  # no "cherry"... wait, b has it
        v = build_vocab([docs[0]], min_df=1)  # apple, banana only
        x = featurize([doc("apple zebra")], v, space="counts").toarray()
        assert x[0, v.column("apple")] == 1
        assert x.sum() == 1

    def test_all_oov_doc_keeps_zero_row(self):
        v = build_vocab([tiny_corpus()[0]], min_df=1)
        x = featurize([doc("zebra yak")], v, space="tfidf").toarray()
        assert (x == 0).all()

    def test_empty_vocab_raises(self):
        v = build_vocab(tiny_corpus(), min_df=99)
        with pytest.raises(ValueError):
            featurize(tiny_corpus(), v)

    def test_unknown_space_raises(self):
        v = build_vocab(tiny_corpus(), min_df=1)
        with pytest.raises(ValueError):
            featurize(tiny_corpus(), v, space="hashing")


class TestTrainLogreg:
    def test_separable_pair_classifies_correctly(self):
        x = sp.csr_matrix(np.array([[1.0, 0.0], [0.0, 1.0]]))
        y = np.array([0, 1])
        model, losses = train_logreg(x, y, TrainConfig(learning_rate=1.0, epochs=200))
        z = model.decision_function(x)
        assert z[0] < 0 < z[1]
        assert losses[0] == pytest.approx(math.log(2), abs=1e-12)
        assert losses[-1] < losses[0]

    def test_losses_never_increase(self):
        rng = np.random.default_rng(30)
        x = sp.csr_matrix(rng.normal(size=(40, 7)))
        y = (rng.random(40) < 0.5).astype(int)
        y[0], y[1] = 0, 1  # both classes present
        _, losses = train_logreg(x, y, TrainConfig(learning_rate=0.5, epochs=300))
        assert losses.shape == (301,)
        assert all(b <= a + 1e-12 for a, b in zip(losses, losses[1:]))

    def test_divergent_rate_raises(self):
        rng = np.random.default_rng(31)
        x = sp.csr_matrix(rng.normal(size=(20, 4)) * 10)
        y = (rng.random(20) < 0.5).astype(int)
        y[0], y[1] = 0, 1
        with pytest.raises(RuntimeError, match="increase"):
            train_logreg(x, y, TrainConfig(learning_rate=500.0, epochs=50))

    def test_label_validation(self):
        x = sp.csr_matrix(np.eye(3))
        with pytest.raises(ValueError):
            train_logreg(x, np.array([0, 1, 2]))
        with pytest.raises(ValueError):
            train_logreg(x, np.array([1, 1, 1]))
        with pytest.raises(ValueError):
            train_logreg(x, np.array([0, 1]))

    def test_weights_keyed_by_vocab_tokens(self):
        docs = tiny_corpus()
        labels = np.array([0, 1, 0])
        v = build_vocab(docs, min_df=1)
        x = featurize(docs, v)
        model, _ = train_logreg(x, labels, vocab=v)
        assert set(model.weights) == {"apple", "banana", "cherry"}
        assert model.feature_space == "tfidf"
        np.testing.assert_allclose(
            model.weight_vector(), [model.weights[t] for t in v.tokens]
        )

    def test_first_step_matches_analytic_gradient(self):
        # after one epoch from w = 0, the update is -lr * grad; compare
        # against central finite differences of the documented objective
        rng = np.random.default_rng(32)
        for _ in range(50):
            n, d = int(rng.integers(2, 9)), int(rng.integers(1, 6))
            x = sp.csr_matrix(rng.normal(size=(n, d)))
            y = (rng.random(n) < 0.5).astype(int)
            y[: 2] = [0, 1]
            l2 = float(rng.uniform(0, 0.3))
            lr = 0.25
            model, _ = train_logreg(
                x, y, TrainConfig(learning_rate=lr, epochs=1, l2=l2)
            )
            w1 = np.concatenate([model.weight_vector(), [model.bias]])
            grad_impl = -w1 / lr

            def loss_at(wb):
                z = x @ wb[:-1] + wb[-1]
                return _logreg_loss(z, y, wb[:-1], l2)

            eps = 1e-5
            grad_fd = np.empty(d + 1)
            for j in range(d + 1):
                up = np.zeros(d + 1)
                up[j] = eps
                grad_fd[j] = (loss_at(up) - loss_at(-up)) / (2 * eps)
            np.testing.assert_allclose(grad_impl, grad_fd, atol=1e-6)

    def test_config_validation(self):
        with pytest.raises(ValueError):
            TrainConfig(learning_rate=0.0)
        with pytest.raises(ValueError):
            TrainConfig(epochs=0)
        with pytest.raises(ValueError):
            TrainConfig(l2=-1.0)


class TestPairwiseAugment:
    def make_docs(self, n=8):
        rng = np.random.default_rng(33)
        h = unigram_docs(rng, np.full(4, 0.25), Label.HUMAN, n, 6, "h")
        m = unigram_docs(rng, np.full(4, 0.25), Label.MACHINE, n, 6, "m")
        return h + m

    def test_k1_is_singletons(self):
        docs = self.make_docs()
        out = pairwise_augment(docs, k=1, seed=0)
        assert out == [(d,) for d in docs]

    def test_groups_are_label_pure_and_anchored(self):
        docs = self.make_docs()
        out = pairwise_augment(docs, k=3, seed=1)
        assert len(out) == len(docs)
        for orig, group in zip(docs, out):
            assert len(group) == 3
            assert group[0] is orig
            assert all(member.label is orig.label for member in group)

    def test_members_within_group_are_distinct(self):
        docs = self.make_docs()
        for k in (2, 4):
            out = pairwise_augment(docs, k=k, seed=2)
            for group in out:
                assert len({d.id for d in group}) == k

    def test_deterministic(self):
        docs = self.make_docs()
        a = pairwise_augment(docs, k=3, seed=5)
        b = pairwise_augment(docs, k=3, seed=5)
        assert a == b
        c = pairwise_augment(docs, k=3, seed=6)
        assert a != c

    def test_k_exceeding_class_size_raises(self):
        docs = self.make_docs(n=3)
        with pytest.raises(ValueError):
            pairwise_augment(docs, k=4, seed=0)

    def test_k_validation(self):
        with pytest.raises(ValueError):
            pairwise_augment(self.make_docs(), k=0)


def drifted_corpora(seed=34, n_docs=60, doc_len=40):
    rng = np.random.default_rng(seed)
    base = rng.dirichlet(np.full(12, 2.0))
    shift = rng.dirichlet(np.full(12, 2.0))
    pm = 0.6 * base + 0.4 * shift
    h = unigram_docs(rng, base, Label.HUMAN, n_docs, doc_len, "h")
    m = unigram_docs(rng, pm, Label.MACHINE, n_docs, doc_len, "m")
    return h, m


class TestPrefixStudy:
    def test_auroc_climbs_with_prefix_length(self):
        h, m = drifted_corpora()
        rows = auroc_vs_prefix_length(h, m, [2, 8, 40], seed=3)
        assert [r.length for r in rows] == [2, 8, 40]
        aucs = [r.test_auroc for r in rows]
        assert all(0.0 <= a <= 1.0 for a in aucs)
        assert aucs[-1] > aucs[0]

    def test_deterministic(self):
        h, m = drifted_corpora()
        a = auroc_vs_prefix_length(h, m, [4, 16], seed=3)
        b = auroc_vs_prefix_length(h, m, [4, 16], seed=3)
        assert a == b

    def test_lengths_validation(self):
        h, m = drifted_corpora(n_docs=8)
        with pytest.raises(ValueError):
            auroc_vs_prefix_length(h, m, [])
        with pytest.raises(ValueError):
            auroc_vs_prefix_length(h, m, [4, 4])
        with pytest.raises(ValueError):
            auroc_vs_prefix_length(h, m, [8, 4])
        with pytest.raises(ValueError):
            auroc_vs_prefix_length(h, m, [0, 4])


class TestPairwiseStudy:
    def test_grouping_helps_and_rows_are_labeled(self):
        h, m = drifted_corpora(seed=35, n_docs=80)
        rows = pairwise_auroc(h, m, k_values=(1, 4), seed=4)
        assert [r.k for r in rows] == [1, 4]
        assert rows[1].test_auroc >= rows[0].test_auroc - 0.05

    def test_deterministic(self):
        h, m = drifted_corpora(seed=36)
        a = pairwise_auroc(h, m, k_values=(1, 2), seed=4)
        b = pairwise_auroc(h, m, k_values=(1, 2), seed=4)
        assert a == b

    def test_k_values_validation(self):
        h, m = drifted_corpora(n_docs=8)
        with pytest.raises(ValueError):
            pairwise_auroc(h, m, k_values=())
        with pytest.raises(ValueError):
            pairwise_auroc(h, m, k_values=(2, 2))
        with pytest.raises(ValueError):
            pairwise_auroc(h, m, k_values=(4, 2))
