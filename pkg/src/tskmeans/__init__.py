"""Time-series k-means: elastic distances, prototype averaging, a
standardised Lloyd's engine, evaluation metrics, rank statistics, and a
benchmark harness."""

from .averaging import (
    AVERAGING_KINDS,
    AveragingSpec,
    arithmetic_mean,
    compute_average,
    dba,
    ksc_average,
    shape_extraction,
    soft_dba,
)
from .bench import (
    PRESETS,
    AlgorithmPreset,
    BenchConfig,
    RunRecord,
    derive_run_seed,
    discover_datasets,
    read_results,
    run_experiment,
    summarize,
    write_results,
)
from .data import (
    SPLIT_MODES,
    LabeledDataset,
    apply_split,
    load_ucr_file,
    z_normalize,
    z_normalize_dataset,
)
from .distances import (
    KINDS,
    DistanceSpec,
    distance,
    dtw,
    euclidean,
    ksc_distance,
    msm,
    pairwise_matrix,
    sbd,
    soft_dtw,
    soft_dtw_gradient,
    squared_euclidean,
    sse_contribution,
)
from .errors import (
    DatasetFormatError,
    DegenerateInputError,
    EmptyClusterError,
    ParameterError,
    UndefinedTestError,
)
from .lloyd import INIT_METHODS, ClusterModel, KMeansConfig, fit, predict
from .metrics import (
    ContingencyTable,
    adjusted_rand_index,
    cl_accuracy,
    contingency,
    hungarian_assign,
    mutual_information_family,
    rand_index,
)
from .stats import (
    HolmReport,
    ScoreTable,
    average_ranks,
    holm_adjust,
    holm_cliques,
    wilcoxon_signed_rank,
)
from .synthetic import (
    make_blob_dataset,
    make_shape_dataset,
    split_dataset,
    write_ucr_split,
)

__version__ = "0.1.0"

__all__ = [
    "AVERAGING_KINDS",
    "AlgorithmPreset",
    "AveragingSpec",
    "BenchConfig",
    "ClusterModel",
    "ContingencyTable",
    "DatasetFormatError",
    "DegenerateInputError",
    "DistanceSpec",
    "EmptyClusterError",
    "HolmReport",
    "INIT_METHODS",
    "KINDS",
    "KMeansConfig",
    "LabeledDataset",
    "PRESETS",
    "ParameterError",
    "RunRecord",
    "SPLIT_MODES",
    "ScoreTable",
    "UndefinedTestError",
    "adjusted_rand_index",
    "apply_split",
    "arithmetic_mean",
    "average_ranks",
    "cl_accuracy",
    "compute_average",
    "contingency",
    "dba",
    "derive_run_seed",
    "discover_datasets",
    "distance",
    "dtw",
    "euclidean",
    "fit",
    "holm_adjust",
    "holm_cliques",
    "hungarian_assign",
    "ksc_average",
    "ksc_distance",
    "load_ucr_file",
    "make_blob_dataset",
    "make_shape_dataset",
    "msm",
    "mutual_information_family",
    "pairwise_matrix",
    "predict",
    "rand_index",
    "read_results",
    "run_experiment",
    "sbd",
    "shape_extraction",
    "soft_dba",
    "soft_dtw",
    "soft_dtw_gradient",
    "split_dataset",
    "squared_euclidean",
    "sse_contribution",
    "summarize",
    "wilcoxon_signed_rank",
    "write_results",
    "write_ucr_split",
    "z_normalize",
    "z_normalize_dataset",
]
