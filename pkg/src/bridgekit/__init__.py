"""Toolkit for bridging-anaphora corpora: a shared document model, parsers
for two annotation dialects, harmonization rules, balanced mention-pair
datasets, a from-scratch boosted-tree classifier, and the statistical
analyses built on top."""

from .errors import (
    BridgekitError,
    ConfigError,
    DegenerateTableError,
    DegenerateTrainingError,
    DialectViolationError,
    EmptyDatasetError,
    ParseError,
    SchemaMismatchError,
    UndefinedDistanceError,
    UnknownEntityTypeError,
    ValidationError,
)
from .model import (
    BridgingLink,
    Document,
    Mention,
    Token,
    UNIFIED_ENTITY_TYPES,
    UNRESOLVED,
    is_given,
    mention_order_key,
    mention_start,
    validate_document,
)

__version__ = "0.1.0"

__all__ = [
    "BridgekitError",
    "ConfigError",
    "DegenerateTableError",
    "DegenerateTrainingError",
    "DialectViolationError",
    "EmptyDatasetError",
    "ParseError",
    "SchemaMismatchError",
    "UndefinedDistanceError",
    "UnknownEntityTypeError",
    "ValidationError",
    "BridgingLink",
    "Document",
    "Mention",
    "Token",
    "UNIFIED_ENTITY_TYPES",
    "UNRESOLVED",
    "is_given",
    "mention_order_key",
    "mention_start",
    "validate_document",
    "__version__",
]
