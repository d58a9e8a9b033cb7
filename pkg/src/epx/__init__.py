"""Extended pseudo-metric spaces, filtered simplicial sets, and the
realization and singular functors between them."""

from .adjunction import (
    counit_vr,
    distinct_list,
    eta_poset,
    partial_realize,
    realize,
    realize_representable,
    singular_at,
    singular_system,
)
from .ep_metric import (
    INF,
    AxiomViolation,
    EpMetricSpace,
    EpMorphism,
    coequalizer,
    colimit,
    coproduct,
    euclidean_space,
    induced_subspace,
    is_nonexpanding,
    metric_identification,
    pushout,
    quotient_metric,
    standard_space,
    validate_ep_metric,
)
from .homology import HomologyResult, homology, smith_normal_form
from .sset import TruncatedSSet, from_ordered_complex, standard_simplex, subdivide
from .systems import (
    FilteredSSet,
    degree_rips_system,
    evaluate_at,
    pi0_barcode,
    represent,
    vr_stage,
    vr_system,
)

__all__ = [
    "counit_vr",
    "distinct_list",
    "eta_poset",
    "partial_realize",
    "realize",
    "realize_representable",
    "singular_at",
    "singular_system",
    "INF",
    "AxiomViolation",
    "EpMetricSpace",
    "EpMorphism",
    "coequalizer",
    "colimit",
    "coproduct",
    "euclidean_space",
    "induced_subspace",
    "is_nonexpanding",
    "metric_identification",
    "pushout",
    "quotient_metric",
    "standard_space",
    "validate_ep_metric",
    "HomologyResult",
    "homology",
    "smith_normal_form",
    "TruncatedSSet",
    "from_ordered_complex",
    "standard_simplex",
    "subdivide",
    "FilteredSSet",
    "degree_rips_system",
    "evaluate_at",
    "pi0_barcode",
    "represent",
    "vr_stage",
    "vr_system",
]

__version__ = "0.1.0"
