"""Finite topological spaces, nets, convergence structures, and the
net-based presentation of topologies.

Submodules:

* ``base``: spaces, directed sets, nets, enumeration helpers.
* ``convergence``: convergence oracles, the four convergence axioms,
  and topologies reconstructed from convergence data.
* ``toptop``: topologies on open-set lattices and their dual
  presentation as quotient structures indexed by directed sets.
* ``fragment``: a finite fragment of the colimit presentation of
  spaces, with the two comparison functors.
"""

from .base import (
    DirectedSet,
    FinTopSpace,
    Net,
    canonical_directed_sets,
    continuous_maps,
    converges,
    coproduct_space,
    directed_product,
    discrete_space,
    greatest_elements,
    indiscrete_space,
    is_cofinal,
    is_continuous,
    iso_to_canonical,
    limits,
    minopen_table,
    p_infinity,
    preorders_on,
    product_space,
    sierpinski,
    space_from_opens,
    space_from_preorder,
    specialization_leq,
    subnet,
    tail,
    topologies_on,
    validate_directed,
    validate_space,
)
from .convergence import (
    ConvergenceOracle,
    KelleyReport,
    check_kelley_axioms,
    continuity_via_nets,
    coproduct_convergence,
    discrete_via_nets,
    hausdorff_by_separation,
    initial_topology,
    is_hausdorff,
    oracle_from_space,
    oracle_decide,
    product_convergence,
    subbase_topology,
    topology_from_convergence,
    with_entries,
)
from .toptop import (
    CotopologyRep,
    TopologicalTopology,
    build_cotopology,
    check_cotopology_axioms,
    check_topological_topology,
    cotopology_from_tt,
    finite_arity_counterexample,
    make_topological_topology,
    tt_continuity_direct,
    tt_from_cotopology,
    validate_cotopology,
)
from .fragment import (
    TopFragment,
    check_model_cocones,
    model_from_space,
    space_from_model,
    top_sketch,
)

__all__ = [
    "ConvergenceOracle",
    "CotopologyRep",
    "DirectedSet",
    "FinTopSpace",
    "KelleyReport",
    "Net",
    "TopFragment",
    "TopologicalTopology",
    "build_cotopology",
    "canonical_directed_sets",
    "check_cotopology_axioms",
    "check_kelley_axioms",
    "check_model_cocones",
    "check_topological_topology",
    "continuity_via_nets",
    "continuous_maps",
    "converges",
    "coproduct_convergence",
    "coproduct_space",
    "cotopology_from_tt",
    "directed_product",
    "discrete_space",
    "discrete_via_nets",
    "finite_arity_counterexample",
    "greatest_elements",
    "hausdorff_by_separation",
    "indiscrete_space",
    "initial_topology",
    "is_cofinal",
    "is_continuous",
    "is_hausdorff",
    "iso_to_canonical",
    "limits",
    "make_topological_topology",
    "minopen_table",
    "model_from_space",
    "oracle_decide",
    "oracle_from_space",
    "p_infinity",
    "preorders_on",
    "product_convergence",
    "product_space",
    "sierpinski",
    "space_from_model",
    "space_from_opens",
    "space_from_preorder",
    "specialization_leq",
    "subbase_topology",
    "subnet",
    "tail",
    "top_sketch",
    "topologies_on",
    "topology_from_convergence",
    "tt_continuity_direct",
    "tt_from_cotopology",
    "validate_cotopology",
    "validate_directed",
    "validate_space",
    "with_entries",
]
