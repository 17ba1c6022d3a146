from .canonical import are_isomorphic, canonical_form, canonical_hypergraph, canonical_labeling
from .hypergraph import (
    MAX_N,
    Coloring,
    Hypergraph,
    LinearCycle,
    components,
    is_connected,
    is_linear,
    k_subsets,
    linear_cycles,
    mask_of,
    members_of,
    snd,
)
from .minimal import MinimalResult, min_non_property, min_non_property_b, min_non_property_c
from .properties import PropertyWitness, balanced, brute_force_colorable, has_property_b, has_property_c, non_monochromatic
