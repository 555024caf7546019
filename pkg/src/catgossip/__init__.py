"""Random pairwise midpoint gossip on CAT(kappa) metric spaces."""

from . import core, engine, modelspace, network, stats
from .core import (
    EUCLIDEAN,
    SO3,
    SPACE_TAGS,
    SPD,
    SPHERE,
    TREE,
    CurvatureBound,
    curvature_bound,
    distance,
    geodesic_point,
    midpoint,
    validate_point,
)
from .engine import (
    Configuration,
    ExperimentConfig,
    GossipEvent,
    TrialSeries,
    gossip_step_arithmetic,
    gossip_step_midpoint,
    gossip_step_rsgd,
    run_trial,
    run_trials,
)
from .errors import GossipError

__version__ = "0.1.0"

__all__ = [
    "EUCLIDEAN",
    "SPD",
    "SPHERE",
    "SO3",
    "TREE",
    "SPACE_TAGS",
    "CurvatureBound",
    "curvature_bound",
    "distance",
    "geodesic_point",
    "midpoint",
    "validate_point",
    "Configuration",
    "ExperimentConfig",
    "GossipEvent",
    "TrialSeries",
    "gossip_step_midpoint",
    "gossip_step_arithmetic",
    "gossip_step_rsgd",
    "run_trial",
    "run_trials",
    "GossipError",
    "core",
    "engine",
    "modelspace",
    "network",
    "stats",
]
