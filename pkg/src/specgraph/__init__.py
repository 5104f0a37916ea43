"""Zariski topology-graphs on module spectra and annihilating-submodule graphs
for finite modules over Z and Z/nZ, with exhaustive claim checking."""

__version__ = "0.1.0"

from .algebra import (
    AlgebraError,
    BoundExceeded,
    FinModule,
    IdealOfRing,
    Ring,
    Submodule,
    colon,
    enumerate_submodules,
    ideal_times_module,
    intersect,
    nil_action_is_zero,
    nil_radical,
    product,
    quotient,
    socle,
    submodule_sum,
)
from .graphs import (
    GraphReport,
    SpecGraph,
    analyze,
    build_annihilating,
    build_zariski_max,
    build_zariski_max_disjoint,
    build_zariski_spec,
    export,
    graphs_isomorphic,
    subgraph_embedding,
)
from .spectrum import (
    MaxSubset,
    PrimeWitness,
    closure,
    im_of,
    is_closed,
    is_connected_subspace,
    is_irreducible,
    is_max_surjective,
    jm_radical,
    max_spec,
    prime_radical,
    spec,
    v_closed,
    vm_closed,
)
