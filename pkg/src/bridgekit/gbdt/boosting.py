"""Gradient-boosted decision trees for binary classification, from scratch.

Logistic loss, second-order statistics, exact greedy split search. Leaf
weights use the closed form w = -G/(H + lambda); split gain is

    1/2 [ G_L^2/(H_L+lambda) + G_R^2/(H_R+lambda)
          - (G_L+G_R)^2/(H_L+H_R+lambda) ] - gamma

and splits whose best gain is not strictly positive are rejected, so a tree
can degenerate to a single leaf. Rows with feature value strictly below the
threshold go left. Learning rate scales tree outputs at accumulation time;
stored leaf weights are the raw closed-form values.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Union

import numpy as np

from ..errors import ConfigError, DegenerateTrainingError, SchemaMismatchError
from .encoding import EncoderSchema

FORMAT_VERSION = 1


@dataclass(frozen=True)
class HyperParams:
    n_rounds: int = 100
    max_depth: int = 4
    learning_rate: float = 0.3
    l2_leaf_penalty: float = 1.0
    split_gain_threshold: float = 0.0
    min_child_hessian: float = 1.0

    def __post_init__(self) -> None:
        if self.n_rounds < 0:
            raise ConfigError("n_rounds must be >= 0")
        if self.max_depth < 1:
            raise ConfigError("max_depth must be >= 1")
        if self.learning_rate <= 0:
            raise ConfigError("learning_rate must be positive")
        if self.l2_leaf_penalty < 0 or self.split_gain_threshold < 0 or self.min_child_hessian < 0:
            raise ConfigError("penalties must be non-negative")

    def to_dict(self) -> dict:
        return {
            "n_rounds": self.n_rounds,
            "max_depth": self.max_depth,
            "learning_rate": self.learning_rate,
            "l2_leaf_penalty": self.l2_leaf_penalty,
            "split_gain_threshold": self.split_gain_threshold,
            "min_child_hessian": self.min_child_hessian,
        }


def default_grid() -> list[HyperParams]:
    grid = []
    for n_rounds in (50, 100, 200):
        for max_depth in (3, 4, 6):
            for learning_rate in (0.1, 0.3):
                for min_child_hessian in (1.0, 5.0):
                    grid.append(
                        HyperParams(
                            n_rounds=n_rounds,
                            max_depth=max_depth,
                            learning_rate=learning_rate,
                            l2_leaf_penalty=1.0,
                            split_gain_threshold=0.0,
                            min_child_hessian=min_child_hessian,
                        )
                    )
    return grid


@dataclass(frozen=True)
class Leaf:
    weight: float


@dataclass(frozen=True)
class Split:
    column: int
    threshold: float
    gain: float
    left: Union["Split", Leaf]
    right: Union["Split", Leaf]


Node = Union[Split, Leaf]


@dataclass(frozen=True)
class GbdtModel:
    base_score: float
    trees: tuple[Node, ...]
    params: HyperParams
    seed: int
    n_features: int
    schema: EncoderSchema | None = None
    training_loss: tuple[float, ...] = field(default=())


def sigmoid(x: np.ndarray | float) -> np.ndarray | float:
    arr = np.atleast_1d(np.asarray(x, dtype=np.float64))
    out = np.empty_like(arr)
    pos = arr >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-arr[pos]))
    ex = np.exp(arr[~pos])
    out[~pos] = ex / (1.0 + ex)
    if np.ndim(x) == 0:
        return float(out[0])
    return out


def log_loss(y: np.ndarray, p: np.ndarray) -> float:
    p = np.clip(p, 1e-15, 1.0 - 1e-15)
    return float(-np.mean(y * np.log(p) + (1 - y) * np.log(1 - p)))


def _find_best_split(
    X: np.ndarray, g: np.ndarray, h: np.ndarray, hp: HyperParams
) -> tuple[int, float, float] | None:
    """Exact greedy search; returns (column, threshold, gain) or None.

    Ties resolve to the lowest column, then the lowest threshold, which
    keeps training deterministic regardless of data order.
    """
    lam = hp.l2_leaf_penalty
    G, H = g.sum(), h.sum()
    parent = G * G / (H + lam)
    best: tuple[int, float, float] | None = None
    for col in range(X.shape[1]):
        x = X[:, col]
        order = np.argsort(x, kind="stable")
        xs = x[order]
        if xs[0] == xs[-1]:
            continue
        G_L = np.cumsum(g[order])[:-1]
        H_L = np.cumsum(h[order])[:-1]
        G_R = G - G_L
        H_R = H - H_L
        valid = np.nonzero(
            (xs[1:] > xs[:-1])
            & (H_L >= hp.min_child_hessian)
            & (H_R >= hp.min_child_hessian)
        )[0]
        if valid.size == 0:
            continue
        gl, hl = G_L[valid], H_L[valid]
        gr, hr = G_R[valid], H_R[valid]
        gains = (
            0.5 * (gl**2 / (hl + lam) + gr**2 / (hr + lam) - parent)
            - hp.split_gain_threshold
        )
        j = int(np.argmax(gains))
        gain = float(gains[j])
        if gain <= 0.0:
            continue
        if best is None or gain > best[2]:
            i = int(valid[j])
            best = (col, float((xs[i] + xs[i + 1]) / 2.0), gain)
    return best


def _build_tree(
    X: np.ndarray, g: np.ndarray, h: np.ndarray, indices: np.ndarray, depth: int,
    hp: HyperParams,
) -> Node:
    lam = hp.l2_leaf_penalty
    G = float(g[indices].sum())
    H = float(h[indices].sum())
    if depth >= hp.max_depth or len(indices) < 2:
        return Leaf(-G / (H + lam))
    found = _find_best_split(X[indices], g[indices], h[indices], hp)
    if found is None:
        return Leaf(-G / (H + lam))
    col, threshold, gain = found
    mask = X[indices, col] < threshold
    return Split(
        column=col,
        threshold=threshold,
        gain=gain,
        left=_build_tree(X, g, h, indices[mask], depth + 1, hp),
        right=_build_tree(X, g, h, indices[~mask], depth + 1, hp),
    )


def tree_values(node: Node, X: np.ndarray) -> np.ndarray:
    out = np.empty(X.shape[0], dtype=np.float64)
    stack: list[tuple[Node, np.ndarray]] = [(node, np.arange(X.shape[0]))]
    while stack:
        nd, idx = stack.pop()
        if isinstance(nd, Leaf):
            out[idx] = nd.weight
        else:
            mask = X[idx, nd.column] < nd.threshold
            stack.append((nd.left, idx[mask]))
            stack.append((nd.right, idx[~mask]))
    return out


def train(
    X: np.ndarray,
    y: np.ndarray,
    hp: HyperParams,
    seed: int = 0,
    schema: EncoderSchema | None = None,
) -> GbdtModel:
    """Fit a boosted ensemble on a dense matrix and binary labels.

    The split search is exact and deterministic, so the seed only enters
    provenance; it is kept in the signature so callers record it uniformly.
    """
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if X.ndim != 2 or X.shape[0] != y.shape[0]:
        raise SchemaMismatchError(
            f"matrix shape {X.shape} does not match {y.shape[0]} labels"
        )
    if len(np.unique(y)) < 2:
        raise DegenerateTrainingError("training labels contain a single class")
    positive_rate = float(y.mean())
    base_score = float(np.log(positive_rate / (1.0 - positive_rate)))

    margins = np.full(X.shape[0], base_score, dtype=np.float64)
    losses = [log_loss(y, sigmoid(margins))]
    trees: list[Node] = []
    all_rows = np.arange(X.shape[0])
    for _ in range(hp.n_rounds):
        p = sigmoid(margins)
        g = p - y
        h = p * (1.0 - p)
        tree = _build_tree(X, g, h, all_rows, 0, hp)
        trees.append(tree)
        margins += hp.learning_rate * tree_values(tree, X)
        losses.append(log_loss(y, sigmoid(margins)))
    return GbdtModel(
        base_score=base_score,
        trees=tuple(trees),
        params=hp,
        seed=seed,
        n_features=X.shape[1],
        schema=schema,
        training_loss=tuple(losses),
    )


def predict_margin(model: GbdtModel, X: np.ndarray) -> np.ndarray:
    X = np.asarray(X, dtype=np.float64)
    single = X.ndim == 1
    if single:
        X = X.reshape(1, -1)
    if X.shape[1] != model.n_features:
        raise SchemaMismatchError(
            f"row has {X.shape[1]} columns, model expects {model.n_features}"
        )
    margins = np.full(X.shape[0], model.base_score, dtype=np.float64)
    for tree in model.trees:
        margins += model.params.learning_rate * tree_values(tree, X)
    return margins[0] if single else margins


def predict_proba(model: GbdtModel, X: np.ndarray) -> np.ndarray | float:
    margins = predict_margin(model, X)
    if np.ndim(margins) == 0:
        return float(sigmoid(float(margins)))
    return sigmoid(margins)


# ---------------------------------------------------------------------------
# serialization


def _node_to_dict(node: Node) -> dict:
    if isinstance(node, Leaf):
        return {"weight": node.weight}
    return {
        "column": node.column,
        "threshold": node.threshold,
        "gain": node.gain,
        "left": _node_to_dict(node.left),
        "right": _node_to_dict(node.right),
    }


def _node_from_dict(obj: dict) -> Node:
    if "weight" in obj:
        return Leaf(weight=float(obj["weight"]))
    return Split(
        column=int(obj["column"]),
        threshold=float(obj["threshold"]),
        gain=float(obj["gain"]),
        left=_node_from_dict(obj["left"]),
        right=_node_from_dict(obj["right"]),
    )


def model_to_dict(model: GbdtModel) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "base_score": model.base_score,
        "params": model.params.to_dict(),
        "seed": model.seed,
        "n_features": model.n_features,
        "schema": model.schema.to_dict() if model.schema is not None else None,
        "training_loss": list(model.training_loss),
        "trees": [_node_to_dict(tree) for tree in model.trees],
    }


def model_from_dict(obj: dict) -> GbdtModel:
    if obj.get("format_version") != FORMAT_VERSION:
        raise SchemaMismatchError(
            f"unsupported model format version {obj.get('format_version')!r}"
        )
    schema = obj.get("schema")
    return GbdtModel(
        base_score=float(obj["base_score"]),
        trees=tuple(_node_from_dict(t) for t in obj["trees"]),
        params=HyperParams(**obj["params"]),
        seed=int(obj["seed"]),
        n_features=int(obj["n_features"]),
        schema=EncoderSchema.from_dict(schema) if schema is not None else None,
        training_loss=tuple(float(x) for x in obj["training_loss"]),
    )


def save_model(model: GbdtModel, path: str | Path) -> None:
    Path(path).write_text(
        json.dumps(model_to_dict(model), sort_keys=True, separators=(",", ":")) + "\n",
        encoding="utf-8",
    )


def load_model(path: str | Path) -> GbdtModel:
    return model_from_dict(json.loads(Path(path).read_text(encoding="utf-8")))
