from .complexes import (
    RootedComplex,
    SimplicialComplex,
    build_complex,
    closed_ball,
    connected_components,
    euler_characteristic,
    from_simplex_sets,
    maximal_simplices,
    read_complex,
    write_complex,
)
from .canon import canonical_code, root_isomorphic
from .gluing import WeightedFamily, glue_weighted, make_family
from .homology import betti_numbers, collapse, sparse_rank
from .profiles import Profile, local_profile, profile_distance

__all__ = [
    "RootedComplex",
    "SimplicialComplex",
    "build_complex",
    "closed_ball",
    "connected_components",
    "euler_characteristic",
    "from_simplex_sets",
    "maximal_simplices",
    "read_complex",
    "write_complex",
    "canonical_code",
    "root_isomorphic",
    "WeightedFamily",
    "glue_weighted",
    "make_family",
    "betti_numbers",
    "collapse",
    "sparse_rank",
    "Profile",
    "local_profile",
    "profile_distance",
]
