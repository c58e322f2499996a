"""Classifier-side text experiments: features, training, ablations.

A deliberately small stack -- bag-of-words features, full-batch gradient
descent on L2-regularized logistic loss -- because the point of these
experiments is not classifier quality but how detection accuracy moves with
the amount of text: longer prefixes per document, or several same-class
documents pooled into one decision.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np
import scipy.sparse as sp
from scipy.special import expit

from .corpus import Document, tokenize
from .detector import Label, roc_from_scores

__all__ = [
    "LinearModel",
    "PairwiseRow",
    "PrefixRow",
    "TrainConfig",
    "Vocabulary",
    "auroc_vs_prefix_length",
    "build_vocab",
    "featurize",
    "pairwise_auroc",
    "pairwise_augment",
    "train_logreg",
]

FEATURE_SPACES = ("counts", "tfidf")

# Consecutive epoch losses may regress by at most this much (float noise).
_LOSS_SLACK = 1e-12

# Salts separating the internal RNG streams.
_SPLIT_SALT = 101
_AUGMENT_SALT = 202


@dataclass(frozen=True, eq=False)
class Vocabulary:
    """Ordered feature vocabulary with document frequencies.

    Built from the training split only; test documents are mapped onto it
    with unseen tokens ignored.
    """

    tokens: tuple[str, ...]
    doc_freq: np.ndarray
    n_docs: int
    _index: dict = field(default=None, repr=False)

    def __post_init__(self):
        object.__setattr__(
            self, "_index", {tok: i for i, tok in enumerate(self.tokens)}
        )

    def __len__(self) -> int:
        return len(self.tokens)

    def column(self, token: str) -> int | None:
        return self._index.get(token)


def _build_vocab_tokens(
    token_lists: Sequence[Sequence[str]], min_df: int = 2
) -> Vocabulary:
    if min_df < 1:
        raise ValueError("min_df must be at least 1")
    df: Counter[str] = Counter()
    for toks in token_lists:
        df.update(set(toks))
    kept = sorted(tok for tok, c in df.items() if c >= min_df)
    freq = np.array([df[tok] for tok in kept], dtype=np.int64)
    return Vocabulary(tokens=tuple(kept), doc_freq=freq, n_docs=len(token_lists))


def build_vocab(docs: Sequence[Document], min_df: int = 2) -> Vocabulary:
    """Vocabulary of tokens appearing in at least ``min_df`` documents."""
    return _build_vocab_tokens([tokenize(d.text) for d in docs], min_df=min_df)


def _featurize_tokens(
    token_lists: Sequence[Sequence[str]], vocab: Vocabulary, space: str
) -> sp.csr_matrix:
    if space not in FEATURE_SPACES:
        raise ValueError(f"space must be one of {FEATURE_SPACES}, got {space!r}")
    if len(vocab) == 0:
        raise ValueError("empty vocabulary")
    indptr = [0]
    indices: list[int] = []
    data: list[float] = []
    for toks in token_lists:
        tf = Counter()
        for tok in toks:
            col = vocab.column(tok)
            if col is not None:
                tf[col] += 1
        for col in sorted(tf):
            indices.append(col)
            data.append(float(tf[col]))
        indptr.append(len(indices))
    x = sp.csr_matrix(
        (np.asarray(data), np.asarray(indices, dtype=np.int64), np.asarray(indptr)),
        shape=(len(token_lists), len(vocab)),
    )
    if space == "tfidf":
        idf = np.log((1.0 + vocab.n_docs) / (1.0 + vocab.doc_freq)) + 1.0
        x = x.multiply(idf[None, :]).tocsr()
        norms = np.sqrt(np.asarray(x.multiply(x).sum(axis=1)).ravel())
        inv = np.divide(1.0, norms, out=np.zeros_like(norms), where=norms > 0)
        x = sp.diags(inv) @ x
    return x.tocsr()


def featurize(
    docs: Sequence[Document], vocab: Vocabulary, space: str = "tfidf"
) -> sp.csr_matrix:
    """Bag-of-words feature matrix (documents x vocabulary), sparse.

    ``space`` selects raw term counts or tf-idf with smoothed idf
    ``log((1 + N) / (1 + df)) + 1`` and per-document L2 normalization.
    Tokens outside the vocabulary are ignored.
    """
    return _featurize_tokens([tokenize(d.text) for d in docs], vocab, space)


@dataclass(frozen=True)
class TrainConfig:
    """Hyperparameters for :func:`train_logreg`.

    ``seed`` is kept for interface stability; full-batch descent from zero
    weights has nothing to shuffle, so it currently changes nothing.
    """

    learning_rate: float = 0.1
    epochs: int = 500
    l2: float = 1e-4
    seed: int = 0

    def __post_init__(self):
        if not self.learning_rate > 0:
            raise ValueError("learning_rate must be positive")
        if int(self.epochs) < 1:
            raise ValueError("epochs must be at least 1")
        if self.l2 < 0:
            raise ValueError("l2 must be nonnegative")


@dataclass(frozen=True)
class LinearModel:
    """A trained linear scorer over a fixed vocabulary.

    ``weights`` is keyed by vocabulary entry (column index when no token
    vocabulary was supplied).  Scores are ``x . w + bias``; positive means
    machine.
    """

    weights: Mapping
    bias: float
    feature_space: str
    vocab: tuple

    def weight_vector(self) -> np.ndarray:
        return np.array([self.weights[v] for v in self.vocab], dtype=np.float64)

    def decision_function(self, features) -> np.ndarray:
        """Raw scores for a feature matrix aligned to this model's vocab."""
        if features.shape[1] != len(self.vocab):
            raise ValueError(
                f"feature width {features.shape[1]} != vocab size {len(self.vocab)}"
            )
        return np.asarray(features @ self.weight_vector()).ravel() + self.bias


def _logreg_loss(z: np.ndarray, y: np.ndarray, w: np.ndarray, l2: float) -> float:
    # mean log-loss, numerically stable, plus ridge penalty (bias excluded)
    return float(np.mean(np.logaddexp(0.0, z) - y * z) + 0.5 * l2 * (w @ w))


def train_logreg(
    features,
    labels: Sequence[int],
    config: TrainConfig | None = None,
    *,
    vocab: Vocabulary | None = None,
    feature_space: str = "tfidf",
) -> tuple[LinearModel, np.ndarray]:
    """Full-batch gradient descent on L2-regularized logistic loss.

    Weights start at zero, so training is deterministic.  The loss is
    recorded before the first step and after every epoch; it must never
    increase (beyond float noise), and a step that does increase it raises
    ``RuntimeError`` naming the epoch -- lower the learning rate.

    Parameters
    ----------
    features : sparse or dense matrix, shape (n_samples, n_features)
    labels : sequence of 0/1
        1 marks the positive (machine) class; both classes must be present.
    vocab : Vocabulary, optional
        When given, model weights are keyed by token; otherwise by column
        index.

    Returns
    -------
    (model, losses)
        ``losses`` has ``epochs + 1`` entries; ``losses[-1]`` is the final
        training loss.
    """
    cfg = config if config is not None else TrainConfig()
    x = features if sp.issparse(features) else np.asarray(features, dtype=np.float64)
    y = np.asarray(labels, dtype=np.float64)
    n, d = x.shape
    if y.shape != (n,):
        raise ValueError("labels must be one value per feature row")
    if not np.isin(y, (0.0, 1.0)).all():
        raise ValueError("labels must be 0 or 1")
    if y.min() == y.max():
        raise ValueError("both classes must be present")
    if vocab is not None and len(vocab) != d:
        raise ValueError(f"vocab size {len(vocab)} != feature width {d}")

    w = np.zeros(d)
    b = 0.0
    losses = np.empty(int(cfg.epochs) + 1)
    z = np.asarray(x @ w).ravel() + b
    losses[0] = _logreg_loss(z, y, w, cfg.l2)
    for epoch in range(1, int(cfg.epochs) + 1):
        resid = expit(z) - y
        grad_w = np.asarray(x.T @ resid).ravel() / n + cfg.l2 * w
        grad_b = float(resid.mean())
        w = w - cfg.learning_rate * grad_w
        b = b - cfg.learning_rate * grad_b
        z = np.asarray(x @ w).ravel() + b
        losses[epoch] = _logreg_loss(z, y, w, cfg.l2)
        if losses[epoch] > losses[epoch - 1] + _LOSS_SLACK:
            raise RuntimeError(
                f"training loss increased at epoch {epoch} "
                f"({losses[epoch - 1]!r} -> {losses[epoch]!r}); "
                "reduce learning_rate"
            )
    keys: tuple = vocab.tokens if vocab is not None else tuple(range(d))
    model = LinearModel(
        weights={k: float(wi) for k, wi in zip(keys, w)},
        bias=float(b),
        feature_space=feature_space,
        vocab=keys,
    )
    return model, losses


@dataclass(frozen=True)
class PrefixRow:
    """Test AUROC when documents are truncated to a fixed token length."""

    length: int
    test_auroc: float


@dataclass(frozen=True)
class PairwiseRow:
    """Test AUROC when decisions pool k same-class documents."""

    k: int
    test_auroc: float


def _stratified_split(
    n_human: int, n_machine: int, train_frac: float, seed: int
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    if not 0.0 < train_frac < 1.0:
        raise ValueError("train_frac must lie in (0, 1)")
    rng = np.random.default_rng(np.random.SeedSequence(entropy=(seed, _SPLIT_SALT)))
    splits = []
    for count in (n_human, n_machine):
        if count < 2:
            raise ValueError("each class needs at least 2 documents to split")
        perm = rng.permutation(count)
        n_train = min(count - 1, max(1, round(train_frac * count)))
        splits.append((np.sort(perm[:n_train]), np.sort(perm[n_train:])))
    return splits[0][0], splits[0][1], splits[1][0], splits[1][1]


def _class_scores(
    scores: np.ndarray, y: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    return scores[y == 1.0], scores[y == 0.0]


def auroc_vs_prefix_length(
    human_docs: Sequence[Document],
    machine_docs: Sequence[Document],
    lengths: Sequence[int],
    *,
    train_frac: float = 0.7,
    seed: int = 0,
    space: str = "tfidf",
    min_df: int = 2,
    config: TrainConfig | None = None,
) -> list[PrefixRow]:
    """Detection accuracy as a function of document prefix length.

    One stratified train/test split is drawn and reused for every length;
    at each length all documents are truncated to their first ``length``
    tokens, the vocabulary is rebuilt from the truncated training split,
    a logistic model is trained, and the test AUROC recorded.
    """
    lens = [int(x) for x in lengths]
    if not lens or any(x < 1 for x in lens):
        raise ValueError("lengths must be a nonempty list of positive ints")
    if any(b <= a for a, b in zip(lens, lens[1:])):
        raise ValueError("lengths must be strictly ascending")
    toks_h = [tokenize(d.text) for d in human_docs]
    toks_m = [tokenize(d.text) for d in machine_docs]
    tr_h, te_h, tr_m, te_m = _stratified_split(
        len(toks_h), len(toks_m), train_frac, seed
    )
    rows = []
    for length in lens:
        train_toks = [toks_h[i][:length] for i in tr_h] + [
            toks_m[i][:length] for i in tr_m
        ]
        test_toks = [toks_h[i][:length] for i in te_h] + [
            toks_m[i][:length] for i in te_m
        ]
        y_train = np.concatenate([np.zeros(tr_h.size), np.ones(tr_m.size)])
        y_test = np.concatenate([np.zeros(te_h.size), np.ones(te_m.size)])
        vocab = _build_vocab_tokens(train_toks, min_df=min_df)
        x_train = _featurize_tokens(train_toks, vocab, space)
        x_test = _featurize_tokens(test_toks, vocab, space)
        model, _ = train_logreg(
            x_train, y_train, config, vocab=vocab, feature_space=space
        )
        scores = model.decision_function(x_test)
        m_scores, h_scores = _class_scores(scores, y_test)
        rows.append(
            PrefixRow(length=length, test_auroc=roc_from_scores(m_scores, h_scores).auroc)
        )
    return rows


def pairwise_augment(
    docs: Sequence[Document], k: int = 2, seed: int = 0
) -> list[tuple[Document, ...]]:
    """Pool documents into same-class k-tuples.

    Every document anchors one tuple: itself plus ``k - 1`` distinct other
    documents of its class, drawn uniformly.  Tuples may share members
    (sampling is with replacement across tuples, without replacement within
    one), every tuple is label-pure, and ``k = 1`` returns the original
    documents as singletons.  Deterministic for a fixed seed.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    by_label: dict[Label, list[int]] = {}
    for i, doc in enumerate(docs):
        by_label.setdefault(doc.label, []).append(i)
    for label, members in by_label.items():
        if len(members) < k:
            raise ValueError(
                f"class {label.value!r} has {len(members)} documents, fewer than k={k}"
            )
    rng = np.random.default_rng(np.random.SeedSequence(entropy=(seed, _AUGMENT_SALT)))
    out = []
    for i, doc in enumerate(docs):
        members = by_label[doc.label]
        pool = [j for j in members if j != i]
        chosen = rng.choice(len(pool), size=k - 1, replace=False) if k > 1 else []
        out.append(tuple([docs[i]] + [docs[pool[int(c)]] for c in chosen]))
    return out


def pairwise_auroc(
    human_docs: Sequence[Document],
    machine_docs: Sequence[Document],
    k_values: Sequence[int] = (1, 2),
    *,
    train_frac: float = 0.7,
    seed: int = 0,
    space: str = "tfidf",
    min_df: int = 2,
    config: TrainConfig | None = None,
) -> list[PairwiseRow]:
    """Detection accuracy when each decision pools k same-class documents.

    Train and test splits are augmented separately (tuples never cross the
    split), a tuple's feature vector is the sum of its members' vectors, and
    the vocabulary comes from the training documents alone.
    """
    ks = [int(k) for k in k_values]
    if not ks or any(k < 1 for k in ks):
        raise ValueError("k_values must be a nonempty list of positive ints")
    if any(b <= a for a, b in zip(ks, ks[1:])):
        raise ValueError("k_values must be strictly ascending")
    tr_h, te_h, tr_m, te_m = _stratified_split(
        len(human_docs), len(machine_docs), train_frac, seed
    )
    train_docs = [human_docs[i] for i in tr_h] + [machine_docs[i] for i in tr_m]
    test_docs = [human_docs[i] for i in te_h] + [machine_docs[i] for i in te_m]
    vocab = build_vocab(train_docs, min_df=min_df)
    x_train = featurize(train_docs, vocab, space)
    x_test = featurize(test_docs, vocab, space)
    aug_seeds = np.random.SeedSequence(entropy=(seed, _AUGMENT_SALT)).generate_state(
        2 * len(ks)
    )
    rows = []
    for j, k in enumerate(ks):
        row_scores = []
        for side, (docs_side, x_side) in enumerate(
            ((train_docs, x_train), (test_docs, x_test))
        ):
            tuples = pairwise_augment(docs_side, k, seed=int(aug_seeds[2 * j + side]))
            row_index = {id(doc): r for r, doc in enumerate(docs_side)}
            sel_rows = []
            sel_cols = []
            for t_idx, members in enumerate(tuples):
                for doc in members:
                    sel_rows.append(t_idx)
                    sel_cols.append(row_index[id(doc)])
            selector = sp.csr_matrix(
                (np.ones(len(sel_rows)), (sel_rows, sel_cols)),
                shape=(len(tuples), len(docs_side)),
            )
            x_tuples = selector @ x_side
            y_tuples = np.array(
                [1.0 if t[0].label is Label.MACHINE else 0.0 for t in tuples]
            )
            row_scores.append((x_tuples, y_tuples))
        (x_tr, y_tr), (x_te, y_te) = row_scores
        model, _ = train_logreg(x_tr, y_tr, config, vocab=vocab, feature_space=space)
        scores = model.decision_function(x_te)
        m_scores, h_scores = _class_scores(scores, y_te)
        rows.append(
            PairwiseRow(k=k, test_auroc=roc_from_scores(m_scores, h_scores).auroc)
        )
    return rows
