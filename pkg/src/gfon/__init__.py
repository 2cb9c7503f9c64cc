"""Gaussian fuzzy opinion networks: membership curves, static connections,
linear opinion dynamics and bounded-confidence networks."""
from .bcfon import BcfonConfig, TopologySnapshot, bcfon_run, bcfon_step, detect_clusters
from .connections import (
    ConnectionResult,
    beijing_network,
    center_connection,
    center_sdv_connection,
    chain_in_center,
    chain_in_sdv_zero,
    sdv_connection,
)
from .dynamics import NetworkState, Trajectory, ring_run, ring_weights
from .errors import (
    ConfigError,
    ConvergenceError,
    FonError,
    InvalidParameterError,
    InvalidWeightsError,
    LevelUnreachableError,
    RejectedInputError,
    ResolutionError,
)
from .fuzzyset import GaussianFuzzySet, height_matrix, intersection_height, weighted_average
from .linalg import jacobi_eigensym
from .membership import (
    Gaussian,
    GridSpec,
    Radial,
    RootExp,
    Sampled,
    ShapeStats,
    StretchedExp,
    Triangular,
    evaluate,
    sample,
    shape_stats,
)

__version__ = "0.1.0"
