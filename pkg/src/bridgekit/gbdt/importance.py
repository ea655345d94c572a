"""Feature importance: split-gain averages and permutation accuracy drop.

Both measures report at the level of the original features, folding the
one-hot columns of a block back into their source feature.
"""
from __future__ import annotations

import numpy as np

from ..errors import ConfigError
from ..pairgen import PairDataset, PairExample
from .boosting import GbdtModel, Leaf, Node, predict_proba
from .encoding import encode
from .evaluation import DECISION_THRESHOLD


def column_gain_totals(model: GbdtModel) -> tuple[dict[int, float], dict[int, int]]:
    """Per-column summed split gain and split counts over all trees."""
    totals: dict[int, float] = {}
    counts: dict[int, int] = {}
    stack: list[Node] = list(model.trees)
    while stack:
        node = stack.pop()
        if isinstance(node, Leaf):
            continue
        totals[node.column] = totals.get(node.column, 0.0) + node.gain
        counts[node.column] = counts.get(node.column, 0) + 1
        stack.append(node.left)
        stack.append(node.right)
    return totals, counts


def gain_importance(model: GbdtModel) -> dict[str, float]:
    """Average split gain per original feature; unused features score 0."""
    if model.schema is None:
        raise ConfigError("model carries no encoder schema")
    totals, counts = column_gain_totals(model)
    by_column = model.schema.column_features()
    feature_total: dict[str, float] = {block.feature: 0.0 for block in model.schema.blocks}
    feature_count: dict[str, int] = {block.feature: 0 for block in model.schema.blocks}
    for col, gain in totals.items():
        feature = by_column[col]
        feature_total[feature] += gain
        feature_count[feature] += counts[col]
    return {
        feature: (feature_total[feature] / feature_count[feature]
                  if feature_count[feature] else 0.0)
        for feature in feature_total
    }


def mda_importance(
    model: GbdtModel,
    dataset: PairDataset | list[PairExample],
    repeats: int = 5,
    seed: int = 0,
) -> dict[str, float]:
    """Mean decrease in accuracy under per-feature permutation.

    All columns of a feature's block are permuted jointly (same row
    shuffle), holding the rest of the matrix fixed; the drop from baseline
    accuracy is averaged over the repeats. Features are processed in sorted
    name order with one RNG stream, so results are reproducible for a fixed
    (model, dataset, repeats, seed).
    """
    if model.schema is None:
        raise ConfigError("model carries no encoder schema")
    if repeats < 1:
        raise ConfigError("repeats must be >= 1")
    X, y, _ = encode(dataset, schema=model.schema)
    y = y.astype(bool)
    baseline = float(np.mean((np.atleast_1d(predict_proba(model, X)) >= DECISION_THRESHOLD) == y))
    rng = np.random.default_rng(seed)
    slices = model.schema.block_slices()
    out: dict[str, float] = {}
    for feature in sorted(slices):
        block = slices[feature]
        drops = []
        for _ in range(repeats):
            perm = rng.permutation(X.shape[0])
            Xp = X.copy()
            Xp[:, block] = X[perm, block]
            acc = float(np.mean((np.atleast_1d(predict_proba(model, Xp)) >= DECISION_THRESHOLD) == y))
            drops.append(baseline - acc)
        out[feature] = float(np.mean(drops))
    return out
