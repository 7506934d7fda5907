"""Network classification and link-prediction tasks built on the coefficients."""

from .classification import (
    ClusteringResult,
    LabeledFeatureMatrix,
    cluster_quality,
    kmeans,
    lloyd,
    pca,
    pca_2d,
    standardize,
    write_clustering_csv,
)
from .linkpred import (
    FEATURE_SETS,
    PAIR_COLUMNS,
    Candidates,
    GraphSplit,
    PairFeatures,
    SplitError,
    SplitSpec,
    generate_candidates,
    pair_features,
    roc_auc,
    run_link_prediction,
    score,
    split_graph,
    train_smoke_classifier,
    write_pair_features_csv,
)

__all__ = [
    "ClusteringResult", "LabeledFeatureMatrix", "cluster_quality", "kmeans", "lloyd", "pca",
    "pca_2d", "standardize", "write_clustering_csv", "FEATURE_SETS", "PAIR_COLUMNS",
    "Candidates", "GraphSplit", "PairFeatures", "SplitError", "SplitSpec",
    "generate_candidates", "pair_features", "roc_auc", "run_link_prediction", "score",
    "split_graph", "train_smoke_classifier", "write_pair_features_csv",
]
