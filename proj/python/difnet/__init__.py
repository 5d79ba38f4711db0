"""Python bindings for the difnet C++ library."""

import json as _json

from ._difnet import (
    Error,
    InputError,
    DiffusionNetwork,
    build_network,
    count_orbits,
    dgcd13,
    extract_features,
    generate,
    ks_two_sample,
    load_network,
    portrait,
    portrait_divergence,
    roc_auc,
    save_network,
    stratified_shuffle_split,
)
from ._difnet import _evaluate_json

__all__ = [
    "Error",
    "InputError",
    "DiffusionNetwork",
    "build_network",
    "count_orbits",
    "dgcd13",
    "evaluate",
    "extract_features",
    "generate",
    "ks_two_sample",
    "load_network",
    "portrait",
    "portrait_divergence",
    "roc_auc",
    "save_network",
    "stratified_shuffle_split",
]


def evaluate(networks, classifier="lr", k=10, folds=10, test_fraction=0.1, seed=0,
             bucket="all", l2=1.0, min_per_class=20, distances=None):
    """Cross-validated classification of labeled networks.

    Returns the report as a dict. `distances` is an optional square list of
    lists aligned with `networks`, required for classifier "knn-distance".
    """
    text = _evaluate_json(list(networks), classifier, k, folds, test_fraction, seed, bucket,
                          l2, min_per_class, distances)
    return _json.loads(text)
