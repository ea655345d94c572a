"""Feature-vector encoding into dense numeric matrices.

Numeric features pass through; every other feature becomes a one-hot block.
Lemma features keep only the top-K training lemmas (ties broken
lexicographically) plus a trailing OOV bucket; other categorical blocks
encode unseen test-time values as all zeros. Column order is deterministic:
features sorted by name, categories sorted lexicographically within a
block.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

from ..errors import EmptyDatasetError, ValidationError
from ..pairgen import FEATURE_NAMES, NUMERIC_FEATURES, PairDataset, PairExample

LEMMA_FEATURES = ("t_head_lemma", "n_head_lemma")
DEFAULT_LEMMA_TOP_K = 200
OOV = "<OOV>"

_KINDS = ("numeric", "categorical", "vocab")


@dataclass(frozen=True)
class FeatureBlock:
    feature: str
    kind: str
    # Sorted category labels; vocab blocks get an implicit OOV column after
    # the listed categories, numeric blocks have none.
    categories: tuple[str, ...] = ()

    @property
    def width(self) -> int:
        if self.kind == "numeric":
            return 1
        if self.kind == "vocab":
            return len(self.categories) + 1
        return len(self.categories)


@dataclass(frozen=True)
class EncoderSchema:
    blocks: tuple[FeatureBlock, ...]
    lemma_top_k: int = DEFAULT_LEMMA_TOP_K

    @property
    def n_columns(self) -> int:
        return sum(block.width for block in self.blocks)

    def block_slices(self) -> dict[str, slice]:
        out = {}
        start = 0
        for block in self.blocks:
            out[block.feature] = slice(start, start + block.width)
            start += block.width
        return out

    def column_names(self) -> list[str]:
        names = []
        for block in self.blocks:
            if block.kind == "numeric":
                names.append(block.feature)
            else:
                names.extend(f"{block.feature}={cat}" for cat in block.categories)
                if block.kind == "vocab":
                    names.append(f"{block.feature}={OOV}")
        return names

    def column_features(self) -> list[str]:
        """Source feature name for each matrix column."""
        return [
            block.feature
            for block in self.blocks
            for _ in range(block.width)
        ]

    def to_dict(self) -> dict:
        return {
            "lemma_top_k": self.lemma_top_k,
            "blocks": [
                {"feature": b.feature, "kind": b.kind, "categories": list(b.categories)}
                for b in self.blocks
            ],
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "EncoderSchema":
        blocks = []
        for entry in obj["blocks"]:
            if entry["kind"] not in _KINDS:
                raise ValidationError(f"unknown block kind {entry['kind']!r}")
            blocks.append(
                FeatureBlock(entry["feature"], entry["kind"], tuple(entry["categories"]))
            )
        return cls(blocks=tuple(blocks), lemma_top_k=obj["lemma_top_k"])


def _examples(dataset: PairDataset | list[PairExample]) -> list[PairExample]:
    examples = list(dataset.examples) if isinstance(dataset, PairDataset) else list(dataset)
    if not examples:
        raise EmptyDatasetError("cannot encode an empty dataset")
    return examples


def fit_schema(
    dataset: PairDataset | list[PairExample], lemma_top_k: int = DEFAULT_LEMMA_TOP_K
) -> EncoderSchema:
    examples = _examples(dataset)
    blocks = []
    for feature in sorted(FEATURE_NAMES):
        if feature in NUMERIC_FEATURES:
            blocks.append(FeatureBlock(feature, "numeric"))
            continue
        values = [getattr(ex.features, feature) for ex in examples]
        if feature in LEMMA_FEATURES:
            counts = Counter(values)
            top = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))[:lemma_top_k]
            categories = tuple(sorted(lemma for lemma, _ in top))
            blocks.append(FeatureBlock(feature, "vocab", categories))
        else:
            blocks.append(FeatureBlock(feature, "categorical", tuple(sorted(set(values)))))
    return EncoderSchema(blocks=tuple(blocks), lemma_top_k=lemma_top_k)


def encode_features(schema: EncoderSchema, features) -> np.ndarray:
    row = np.zeros(schema.n_columns, dtype=np.float64)
    start = 0
    for block in schema.blocks:
        value = getattr(features, block.feature)
        if block.kind == "numeric":
            row[start] = float(value)
        else:
            try:
                row[start + block.categories.index(value)] = 1.0
            except ValueError:
                if block.kind == "vocab":
                    row[start + len(block.categories)] = 1.0
                # plain categorical: unseen value stays all-zero
        start += block.width
    return row


def encode(
    dataset: PairDataset | list[PairExample],
    schema: EncoderSchema | None = None,
    lemma_top_k: int = DEFAULT_LEMMA_TOP_K,
) -> tuple[np.ndarray, np.ndarray, EncoderSchema]:
    """Encode a dataset, fitting a schema when none is supplied.

    Returns (X, y, schema) with y the binary target, 1 for bridging.
    """
    examples = _examples(dataset)
    if schema is None:
        schema = fit_schema(examples, lemma_top_k=lemma_top_k)
    X = np.empty((len(examples), schema.n_columns), dtype=np.float64)
    for i, ex in enumerate(examples):
        X[i] = encode_features(schema, ex.features)
    y = np.fromiter((1 if ex.label == "bridging" else 0 for ex in examples), dtype=np.int64,
                    count=len(examples))
    return X, y, schema
