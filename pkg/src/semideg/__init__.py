"""Small-digraph toolkit: degree/semi-degree conditions, cycle search,
exceptional family recognition, and exhaustive verification."""

from .core import (
    Digraph,
    DigraphError,
    UnsupportedSizeError,
    VertexSeq,
    are_isomorphic,
    automorphism_count,
    build,
    converse,
    decode,
    degree,
    degree_toward,
    encode,
    from_json,
    in_degree,
    induced,
    is_strong,
    isomorphism,
    out_degree,
    strong_components,
    to_json,
)
from .conditions import ConditionProfile, nonadjacent_pairs, profile, satisfies_ds, semi_threshold
from .cycles import (
    PreconditionError,
    SearchConsistencyError,
    cycle_spectrum,
    expand_cycle,
    find_cycle,
    hamiltonian_cycle,
    insert_vertex,
    is_hamiltonian,
    is_pancyclic,
    longest_cycle,
    neighborhood_profile,
)
from .families import FamilyLabel, FamilyTag, classify, enumerate_family
from .verify import (
    VerificationReport,
    enumerate_condition_digraphs,
    sample_pancyclicity,
    verify_lemma4,
    verify_oracles,
    verify_theorem1,
    verify_theorem2,
    verify_theorem3,
)

__version__ = "0.1.0"
