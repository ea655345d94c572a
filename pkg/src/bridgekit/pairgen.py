"""Candidate-pair enumeration, feature extraction, and balanced dataset
construction for antecedent-anaphor classification.

A pair example carries the anaphor (n_) and antecedent (t_) sides of the
feature set: entity type, definiteness, phrase length, and the dependency
relation, part of speech, number, and lemma of each mention's syntactic
head, plus the antecedent's information status and the token distance
between the two mention starts.
"""
from __future__ import annotations

import csv
import io
import json
import random
from dataclasses import asdict, dataclass

from .errors import EmptyDatasetError, UndefinedDistanceError, ValidationError
from .model import Document, Mention, is_given, mention_order_key, mention_start

LABELS = ("bridging", "coref", "none")

DEFAULT_PRONOUN_TAGS = frozenset({"PRP", "PRP$", "WP", "WP$"})

# First-token lemmas that signal a definite phrase.
_DEFINITE_LEMMAS = frozenset({"the", "this", "that", "these", "those"})
_POSSESSIVE_TAGS = frozenset({"PRP$", "WP$", "POS"})
_PROPER_TAGS = frozenset({"NNP", "NNPS"})

FEATURE_NAMES = (
    "t_entity_type",
    "n_entity_type",
    "t_definite",
    "n_definite",
    "t_phrase_len",
    "n_phrase_len",
    "t_head_deprel",
    "n_head_deprel",
    "t_head_xpos",
    "n_head_xpos",
    "t_head_lemma",
    "n_head_lemma",
    "t_head_number",
    "n_head_number",
    "t_infstat",
    "t_a_dist",
)

NUMERIC_FEATURES = ("t_a_dist", "t_phrase_len", "n_phrase_len")


@dataclass(frozen=True)
class FeatureVector:
    t_entity_type: str
    n_entity_type: str
    t_definite: str
    n_definite: str
    t_phrase_len: int
    n_phrase_len: int
    t_head_deprel: str
    n_head_deprel: str
    t_head_xpos: str
    n_head_xpos: str
    t_head_lemma: str
    n_head_lemma: str
    t_head_number: str
    n_head_number: str
    t_infstat: str
    t_a_dist: int


@dataclass(frozen=True)
class PairExample:
    doc_id: str
    antecedent_id: str
    anaphor_id: str
    features: FeatureVector
    label: str


@dataclass(frozen=True)
class Provenance:
    corpus: str
    partition: str
    seed: int
    max_distance: int


@dataclass(frozen=True)
class PairDataset:
    examples: tuple[PairExample, ...]
    provenance: Provenance
    warnings: tuple[str, ...] = ()

    def label_counts(self) -> dict[str, int]:
        counts = {label: 0 for label in LABELS}
        for ex in self.examples:
            counts[ex.label] += 1
        return counts


def derive_definiteness(doc: Document, m: Mention) -> str:
    """Annotated definiteness when present, otherwise a surface heuristic.

    Definite if the span starts with a definite determiner or a possessive,
    or is headed by a proper noun or pronoun; indefinite otherwise.
    """
    if m.definiteness != "none":
        return m.definiteness
    first = doc.token_by_index[m.spans[0][0]]
    head = doc.token_by_index[m.head_index]
    if first.lemma.lower() in _DEFINITE_LEMMAS or first.xpos in _POSSESSIVE_TAGS:
        return "def"
    if head.xpos in _PROPER_TAGS or head.xpos in DEFAULT_PRONOUN_TAGS:
        return "def"
    return "ind"


def derive_infstat(doc: Document, m: Mention) -> str:
    """Annotated information status when present, otherwise chain-derived."""
    if m.infstat != "none":
        return m.infstat
    return "giv" if is_given(doc, m) else "new"


def is_pronoun(doc: Document, m: Mention, pronoun_tags: frozenset[str] = DEFAULT_PRONOUN_TAGS) -> bool:
    return doc.token_by_index[m.head_index].xpos in pronoun_tags


def extract_features(doc: Document, ante: Mention, ana: Mention) -> FeatureVector:
    distance = mention_start(ana) - mention_start(ante)
    if distance < 0:
        raise ValidationError(f"antecedent {ante.id!r} does not precede anaphor {ana.id!r}")
    t_head = doc.token_by_index[ante.head_index]
    n_head = doc.token_by_index[ana.head_index]
    return FeatureVector(
        t_entity_type=ante.entity_type_unified,
        n_entity_type=ana.entity_type_unified,
        t_definite=derive_definiteness(doc, ante),
        n_definite=derive_definiteness(doc, ana),
        t_phrase_len=ante.n_tokens,
        n_phrase_len=ana.n_tokens,
        t_head_deprel=t_head.deprel,
        n_head_deprel=n_head.deprel,
        t_head_xpos=t_head.xpos,
        n_head_xpos=n_head.xpos,
        t_head_lemma=t_head.lemma,
        n_head_lemma=n_head.lemma,
        t_head_number=t_head.number,
        n_head_number=n_head.number,
        t_infstat=derive_infstat(doc, ante),
        t_a_dist=distance,
    )


def max_bridging_distance(docs: list[Document]) -> int:
    distances = []
    for doc in docs:
        for link in doc.bridging:
            ana = doc.mention_by_id[link.anaphor_id]
            for ante_id in link.antecedent_ids:
                ante = doc.mention_by_id[ante_id]
                distances.append(mention_start(ana) - mention_start(ante))
    if not distances:
        raise UndefinedDistanceError("no bridging links in corpus, distance cap undefined")
    return max(distances)


def _pair_label(doc: Document, ante: Mention, ana: Mention, bridged: set[tuple[str, str]]) -> str:
    if (ante.id, ana.id) in bridged:
        return "bridging"
    if ante.chain_id is not None and ante.chain_id == ana.chain_id:
        return "coref"
    return "none"


def enumerate_labeled_pairs(doc: Document) -> list[PairExample]:
    """All ordered mention pairs with the antecedent strictly earlier.

    A pair matching a bridging link is labeled bridging; otherwise shared
    chain membership yields coref; everything else is none.
    """
    bridged = {
        (ante_id, link.anaphor_id)
        for link in doc.bridging
        for ante_id in link.antecedent_ids
    }
    ordered = sorted(doc.mentions, key=lambda m: mention_order_key(doc, m))
    pairs = []
    for i, ante in enumerate(ordered):
        for ana in ordered[i + 1:]:
            if mention_start(ana) <= mention_start(ante):
                continue
            pairs.append(
                PairExample(
                    doc_id=doc.doc_id,
                    antecedent_id=ante.id,
                    anaphor_id=ana.id,
                    features=extract_features(doc, ante, ana),
                    label=_pair_label(doc, ante, ana, bridged),
                )
            )
    return pairs


def _candidate_sort_key(ex: PairExample) -> tuple[str, str, str]:
    return (ex.doc_id, ex.antecedent_id, ex.anaphor_id)


def build_balanced_dataset(
    docs: list[Document],
    seed: int,
    corpus: str = "",
    partition: str = "",
    pronoun_tags: frozenset[str] = DEFAULT_PRONOUN_TAGS,
) -> PairDataset:
    """Balanced bridging / coref / none dataset over a harmonized corpus.

    Every bridging pair is kept. Negatives are sampled uniformly without
    replacement, one draw per class, from candidates whose anaphor is not a
    pronoun and whose distance does not exceed the longest attested
    bridging distance. Classes short of candidates are taken whole with a
    recorded warning. The result is a deterministic function of
    (docs, seed).
    """
    cap = max_bridging_distance(docs)

    bridging: list[PairExample] = []
    pools: dict[str, list[PairExample]] = {"coref": [], "none": []}
    pronoun_cache: dict[tuple[str, str], bool] = {}
    for doc in docs:
        for ex in enumerate_labeled_pairs(doc):
            if ex.label == "bridging":
                bridging.append(ex)
                continue
            key = (doc.doc_id, ex.anaphor_id)
            if key not in pronoun_cache:
                pronoun_cache[key] = is_pronoun(doc, doc.mention_by_id[ex.anaphor_id], pronoun_tags)
            if pronoun_cache[key] or ex.features.t_a_dist > cap:
                continue
            pools[ex.label].append(ex)

    n_bridging = len(bridging)
    if n_bridging == 0:
        raise EmptyDatasetError("no bridging pairs in corpus")

    rng = random.Random(seed)
    warnings = []
    chosen: list[PairExample] = sorted(bridging, key=_candidate_sort_key)
    for label in ("coref", "none"):
        pool = sorted(pools[label], key=_candidate_sort_key)
        if len(pool) < n_bridging:
            warnings.append(
                f"only {len(pool)} {label} candidates for {n_bridging} bridging pairs"
            )
            sampled = pool
        else:
            sampled = rng.sample(pool, n_bridging)
        chosen.extend(sorted(sampled, key=_candidate_sort_key))

    return PairDataset(
        examples=tuple(chosen),
        provenance=Provenance(corpus=corpus, partition=partition, seed=seed, max_distance=cap),
        warnings=tuple(warnings),
    )


def bridging_rate_per_1k(docs: list[Document]) -> float:
    tokens = sum(len(doc.tokens) for doc in docs)
    if tokens == 0:
        raise EmptyDatasetError("zero tokens, rate undefined")
    links = sum(len(doc.bridging) for doc in docs)
    return 1000.0 * links / tokens


# ---------------------------------------------------------------------------
# serialization


def dataset_to_jsonl(dataset: PairDataset) -> bytes:
    header = {
        "provenance": asdict(dataset.provenance),
        "warnings": list(dataset.warnings),
        "n_examples": len(dataset.examples),
    }
    lines = [json.dumps(header, sort_keys=True, ensure_ascii=False, separators=(",", ":"))]
    for ex in dataset.examples:
        lines.append(
            json.dumps(
                {
                    "doc_id": ex.doc_id,
                    "antecedent_id": ex.antecedent_id,
                    "anaphor_id": ex.anaphor_id,
                    "features": asdict(ex.features),
                    "label": ex.label,
                },
                sort_keys=True,
                ensure_ascii=False,
                separators=(",", ":"),
            )
        )
    return ("".join(line + "\n" for line in lines)).encode("utf-8")


def dataset_from_jsonl(data: bytes | str) -> PairDataset:
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    lines = [line for line in text.split("\n") if line.strip()]
    if not lines:
        raise EmptyDatasetError("empty dataset file")
    header = json.loads(lines[0])
    if "provenance" not in header:
        raise ValidationError("first line must be the provenance header")
    examples = []
    for line in lines[1:]:
        obj = json.loads(line)
        examples.append(
            PairExample(
                doc_id=obj["doc_id"],
                antecedent_id=obj["antecedent_id"],
                anaphor_id=obj["anaphor_id"],
                features=FeatureVector(**obj["features"]),
                label=obj["label"],
            )
        )
    if header.get("n_examples") not in (None, len(examples)):
        raise ValidationError(
            f"header declares {header['n_examples']} examples, found {len(examples)}"
        )
    return PairDataset(
        examples=tuple(examples),
        provenance=Provenance(**header["provenance"]),
        warnings=tuple(header.get("warnings", ())),
    )


def dataset_to_csv(dataset: PairDataset) -> str:
    """Flat export: ids, one column per feature, label."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["doc_id", "antecedent_id", "anaphor_id", *FEATURE_NAMES, "label"])
    for ex in dataset.examples:
        feats = asdict(ex.features)
        writer.writerow(
            [ex.doc_id, ex.antecedent_id, ex.anaphor_id]
            + [feats[name] for name in FEATURE_NAMES]
            + [ex.label]
        )
    return buf.getvalue()
