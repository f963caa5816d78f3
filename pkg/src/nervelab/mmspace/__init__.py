from .amalgam import AmalgamSpec, amalgamate
from .geometry import boundary_and_collar, cheeger_radius_r, haircut
from .relations import PointedMeasurePair, related_measures, related_subsets
from .space import (
    FiniteMMSpace,
    circle_space,
    make_space,
    metric_graph_space,
    read_space,
    torus_space,
    validate_space,
    write_space,
)
from .unimodular import doubly_pointed_code, stationary_law, unimodular_check

__all__ = [
    "AmalgamSpec",
    "amalgamate",
    "boundary_and_collar",
    "cheeger_radius_r",
    "haircut",
    "PointedMeasurePair",
    "related_measures",
    "related_subsets",
    "FiniteMMSpace",
    "circle_space",
    "make_space",
    "metric_graph_space",
    "read_space",
    "torus_space",
    "validate_space",
    "write_space",
    "doubly_pointed_code",
    "stationary_law",
    "unimodular_check",
]
