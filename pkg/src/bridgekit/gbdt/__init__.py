"""Boosted-tree classification stack: encoding, training, evaluation,
cross-validation, and feature importance."""
from .boosting import (
    GbdtModel,
    HyperParams,
    Leaf,
    Split,
    default_grid,
    load_model,
    log_loss,
    model_from_dict,
    model_to_dict,
    predict_margin,
    predict_proba,
    save_model,
    sigmoid,
    train,
    tree_values,
)
from .encoding import (
    DEFAULT_LEMMA_TOP_K,
    EncoderSchema,
    FeatureBlock,
    LEMMA_FEATURES,
    OOV,
    encode,
    encode_features,
    fit_schema,
)
from .evaluation import (
    CvResult,
    DECISION_THRESHOLD,
    Metrics,
    cross_validate,
    evaluate,
    evaluate_matrix,
    metrics_from_predictions,
    random_baseline,
    stratified_folds,
)
from .importance import column_gain_totals, gain_importance, mda_importance

__all__ = [
    "GbdtModel",
    "HyperParams",
    "Leaf",
    "Split",
    "default_grid",
    "load_model",
    "log_loss",
    "model_from_dict",
    "model_to_dict",
    "predict_margin",
    "predict_proba",
    "save_model",
    "sigmoid",
    "train",
    "tree_values",
    "DEFAULT_LEMMA_TOP_K",
    "EncoderSchema",
    "FeatureBlock",
    "LEMMA_FEATURES",
    "OOV",
    "encode",
    "encode_features",
    "fit_schema",
    "CvResult",
    "DECISION_THRESHOLD",
    "Metrics",
    "cross_validate",
    "evaluate",
    "evaluate_matrix",
    "metrics_from_predictions",
    "random_baseline",
    "stratified_folds",
    "column_gain_totals",
    "gain_importance",
    "mda_importance",
]
