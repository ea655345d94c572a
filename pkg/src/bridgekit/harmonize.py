"""Harmonization rules that reduce rich standoff-style annotation to the
stricter scope shared by both corpora, plus entity-type unification.

The corpus-level pipeline applies, in a fixed order: exclusion list,
flatten_discontinuous, drop_split_antecedent_links, drop_given_anaphor_links,
entity-type unification, subtype validation. The order matters because
flattening can change mention start positions and hence givenness; fixing it
makes every reported count deterministic.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from pathlib import Path

from .errors import ParseError, UnknownEntityTypeError, ValidationError
from .model import BridgingLink, Document, Mention, UNRESOLVED, is_given

# Original-label -> unified-label maps. Keys are lowercase; lookup lowercases
# the input because corpus releases vary in casing.
GUM_ENTITY_MAP = {
    "person": "person",
    "place": "place",
    "organization": "organization",
    "object": "concrete",
    "plant": "concrete",
    "event": "event",
    "time": "time",
    "substance": "substance",
    "animal": "animate",
    "abstract": "abstract",
}

ARRAU_ENTITY_MAP = {
    "person": "person",
    "space": "place",
    "organization": "organization",
    "concrete": "concrete",
    "plan": "event",
    "time": "time",
    "substance": "substance",
    "medicine": "substance",
    "animate": "animate",
    "abstract": "abstract",
    "undersp-onto": "abstract",
    "disease": "abstract",
    "numerical": "abstract",
    "none": "abstract",
}

# The two inventories never disagree on a shared label, so documents already
# in canonical form resolve against the union.
_COMBINED_ENTITY_MAP = {**GUM_ENTITY_MAP, **ARRAU_ENTITY_MAP}

ENTITY_MAPS = {
    "gum_like": GUM_ENTITY_MAP,
    "arrau_like": ARRAU_ENTITY_MAP,
    "canonical": _COMBINED_ENTITY_MAP,
}

# Bridging subtype inventory; an absent subtype (None) counts as unmarked and
# is always acceptable.
VALID_SUBTYPES = frozenset(
    {"poss", "poss-inv", "element", "element-inv", "subset", "subset-inv",
     "other", "other-inv", "undersp-rel"}
)


@dataclass(frozen=True)
class HarmonizeOptions:
    # (doc_id, anaphor_mention_id) pairs whose bridging links are dropped
    # before any rule runs; covers manual error-spotting decisions that are
    # not expressible as a rule.
    exclusions: frozenset[tuple[str, str]] = frozenset()


@dataclass
class HarmonizeReport:
    removed_split_antecedent: int = 0
    removed_given_anaphor: int = 0
    flattened_discontinuous: int = 0
    entity_type_remaps: int = 0
    unresolved_entity_types: list[str] = field(default_factory=list)
    subtype_violations: list[tuple[str, BridgingLink]] = field(default_factory=list)
    excluded_links: int = 0
    merge_conflicts: list[tuple[str, str, str]] = field(default_factory=list)
    chain_type_conflicts: list[tuple[str, str]] = field(default_factory=list)
    # Pre-flatten spans kept for audit, keyed by (doc_id, mention_id).
    flattened_spans: dict[tuple[str, str], tuple[tuple[int, int], ...]] = field(
        default_factory=dict
    )

    def merge(self, other: "HarmonizeReport") -> None:
        self.removed_split_antecedent += other.removed_split_antecedent
        self.removed_given_anaphor += other.removed_given_anaphor
        self.flattened_discontinuous += other.flattened_discontinuous
        self.entity_type_remaps += other.entity_type_remaps
        for label in other.unresolved_entity_types:
            if label not in self.unresolved_entity_types:
                self.unresolved_entity_types.append(label)
        self.subtype_violations.extend(other.subtype_violations)
        self.excluded_links += other.excluded_links
        self.merge_conflicts.extend(other.merge_conflicts)
        self.chain_type_conflicts.extend(other.chain_type_conflicts)
        self.flattened_spans.update(other.flattened_spans)

    def to_dict(self) -> dict:
        return {
            "removed_split_antecedent": self.removed_split_antecedent,
            "removed_given_anaphor": self.removed_given_anaphor,
            "flattened_discontinuous": self.flattened_discontinuous,
            "entity_type_remaps": self.entity_type_remaps,
            "unresolved_entity_types": list(self.unresolved_entity_types),
            "subtype_violations": [
                {
                    "doc_id": doc_id,
                    "anaphor_id": link.anaphor_id,
                    "antecedent_ids": list(link.antecedent_ids),
                    "subtype": link.subtype,
                }
                for doc_id, link in self.subtype_violations
            ],
            "excluded_links": self.excluded_links,
            "merge_conflicts": [list(entry) for entry in self.merge_conflicts],
            "chain_type_conflicts": [list(entry) for entry in self.chain_type_conflicts],
            "flattened_spans": {
                f"{doc_id}/{mention_id}": [list(span) for span in spans]
                for (doc_id, mention_id), spans in sorted(self.flattened_spans.items())
            },
        }


def format_report(report: HarmonizeReport) -> str:
    """Human-readable summary table for terminal output."""
    rows = [
        ("excluded links", report.excluded_links),
        ("flattened discontinuous mentions", report.flattened_discontinuous),
        ("removed split-antecedent links", report.removed_split_antecedent),
        ("removed given-anaphor links", report.removed_given_anaphor),
        ("entity type remaps", report.entity_type_remaps),
        ("unresolved entity type labels", len(report.unresolved_entity_types)),
        ("subtype violations", len(report.subtype_violations)),
        ("envelope merge conflicts", len(report.merge_conflicts)),
        ("chains with conflicting types", len(report.chain_type_conflicts)),
    ]
    width = max(len(name) for name, _ in rows)
    lines = [f"{name.ljust(width)}  {value}" for name, value in rows]
    if report.unresolved_entity_types:
        lines.append("unresolved labels: " + ", ".join(report.unresolved_entity_types))
    return "\n".join(lines)


def read_exclusion_list(path: str | Path) -> frozenset[tuple[str, str]]:
    """One ``doc_id <tab> anaphor_mention_id`` per line; blank lines ignored."""
    pairs = set()
    for line_no, raw in enumerate(Path(path).read_text(encoding="utf-8").split("\n"), start=1):
        line = raw.strip()
        if not line:
            continue
        fields = line.split("\t")
        if len(fields) != 2 or not all(fields):
            raise ParseError(f"expected 'doc_id<TAB>anaphor_id', got {raw!r}", line_no)
        pairs.add((fields[0], fields[1]))
    return frozenset(pairs)


def drop_split_antecedent_links(doc: Document) -> tuple[Document, int]:
    """Remove every bridging link with more than one antecedent."""
    kept = tuple(link for link in doc.bridging if not link.split_antecedent)
    count = len(doc.bridging) - len(kept)
    if count == 0:
        return doc, 0
    return replace(doc, bridging=kept), count


def drop_given_anaphor_links(doc: Document) -> tuple[Document, int]:
    """Remove links whose anaphor already has an identity antecedent."""
    kept = tuple(
        link for link in doc.bridging
        if not is_given(doc, doc.mention_by_id[link.anaphor_id])
    )
    count = len(doc.bridging) - len(kept)
    if count == 0:
        return doc, 0
    return replace(doc, bridging=kept), count


def flatten_discontinuous(
    doc: Document,
) -> tuple[Document, int, list[tuple[str, str, str]], dict[tuple[str, str], tuple]]:
    """Replace multi-span mentions by their envelope [min start, max end].

    Returns the rewritten document, the number of mentions changed, any
    merge conflicts (two mentions left with identical spans and the same
    chain), and the original spans of every flattened mention for audit.
    """
    changed = 0
    audit: dict[tuple[str, str], tuple] = {}
    mentions = []
    for m in doc.mentions:
        if m.discontinuous:
            audit[(doc.doc_id, m.id)] = m.spans
            envelope = (m.spans[0][0], m.spans[-1][1])
            mentions.append(replace(m, spans=(envelope,)))
            changed += 1
        else:
            mentions.append(m)
    if changed == 0:
        return doc, 0, [], {}
    conflicts = []
    by_key: dict[tuple, str] = {}
    for m in mentions:
        key = (m.spans, m.chain_id)
        if m.chain_id is not None and key in by_key:
            conflicts.append((doc.doc_id, by_key[key], m.id))
        else:
            by_key[key] = m.id
    return replace(doc, mentions=tuple(mentions)), changed, conflicts, audit


def unify_entity_type(schema: str, original: str) -> str:
    """Map an original entity label to the unified inventory.

    Case-insensitive on input. Labels outside the inventory raise
    UnknownEntityTypeError; corpus-level runs collect these instead of
    failing.
    """
    if schema not in ENTITY_MAPS:
        raise ValidationError(f"unknown schema {schema!r} for entity type unification")
    mapping = ENTITY_MAPS[schema]
    label = original.lower()
    if label not in mapping:
        raise UnknownEntityTypeError(schema, original)
    return mapping[label]


def resolve_entity_types(doc: Document) -> tuple[Document, int, list[str]]:
    """Fill in entity_type_unified for every unresolved mention.

    Mentions whose unified type is already set are left alone, which makes
    the operation idempotent. Unknown labels are collected and the mention
    stays unresolved.
    """
    remaps = 0
    unknown: list[str] = []
    mentions = []
    for m in doc.mentions:
        if m.entity_type_unified != UNRESOLVED:
            mentions.append(m)
            continue
        try:
            unified = unify_entity_type(doc.schema, m.entity_type_original)
        except UnknownEntityTypeError:
            if m.entity_type_original not in unknown:
                unknown.append(m.entity_type_original)
            mentions.append(m)
            continue
        mentions.append(replace(m, entity_type_unified=unified))
        remaps += 1
    if remaps == 0 and not unknown:
        return doc, 0, []
    return replace(doc, mentions=tuple(mentions)), remaps, unknown


def validate_subtypes(doc: Document) -> list[tuple[str, BridgingLink]]:
    """Report links whose subtype falls outside the known inventory."""
    return [
        (doc.doc_id, link)
        for link in doc.bridging
        if link.subtype is not None and link.subtype not in VALID_SUBTYPES
    ]


def _chain_type_conflicts(doc: Document) -> list[tuple[str, str]]:
    types_by_chain: dict[str, set[str]] = {}
    for m in doc.mentions:
        if m.chain_id is not None and m.entity_type_unified != UNRESOLVED:
            types_by_chain.setdefault(m.chain_id, set()).add(m.entity_type_unified)
    return [
        (doc.doc_id, chain_id)
        for chain_id, types in sorted(types_by_chain.items())
        if len(types) > 1
    ]


def harmonize_document(
    doc: Document, options: HarmonizeOptions | None = None
) -> tuple[Document, HarmonizeReport]:
    options = options or HarmonizeOptions()
    report = HarmonizeReport()

    if options.exclusions:
        kept = tuple(
            link for link in doc.bridging
            if (doc.doc_id, link.anaphor_id) not in options.exclusions
        )
        report.excluded_links = len(doc.bridging) - len(kept)
        if report.excluded_links:
            doc = replace(doc, bridging=kept)

    doc, flattened, conflicts, audit = flatten_discontinuous(doc)
    report.flattened_discontinuous = flattened
    report.merge_conflicts = conflicts
    report.flattened_spans = audit

    doc, report.removed_split_antecedent = drop_split_antecedent_links(doc)
    doc, report.removed_given_anaphor = drop_given_anaphor_links(doc)
    doc, report.entity_type_remaps, report.unresolved_entity_types = resolve_entity_types(doc)
    report.subtype_violations = validate_subtypes(doc)
    report.chain_type_conflicts = _chain_type_conflicts(doc)
    return doc, report


def harmonize_corpus(
    docs: list[Document], options: HarmonizeOptions | None = None
) -> tuple[list[Document], HarmonizeReport]:
    """Harmonize each document independently and sum the per-document
    reports in document order."""
    out = []
    total = HarmonizeReport()
    for doc in docs:
        harmonized, report = harmonize_document(doc, options)
        out.append(harmonized)
        total.merge(report)
    return out, total
