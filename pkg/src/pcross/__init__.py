"""Exact workbench for twisted partial group actions and their crossed products."""

from .analysis import AnalysisReport, analyze, render_text
from .crossed import (
    CPElement,
    StructureAlgebra,
    centralizer_of_R,
    center,
    commutant_CX,
    cp_mul,
    identity_element,
    is_commutative,
    is_maximal_commutative,
    op_K,
    op_T,
    project_E,
    sep_per,
    structure_algebra,
    verify_associativity,
)
from .dynamics import (
    EnvelopingSystem,
    PartialSystem,
    fixed_set,
    globalize,
    invariant_subsets,
    is_invariant_subset,
    is_minimal,
    is_topologically_free,
    is_transitive,
    partial_orbit,
    periodic_points,
    transitivity_criterion,
    transitivity_transfer,
    validate_system,
)
from .fields import PrimeField, RationalField, field_from_json
from .groups import (
    FiniteGroup,
    cyclic_group,
    make_group,
    product_group,
    symmetric_group_3,
    table_group,
)
from .instances import Instance, load_fixture, fixture_names, parse_instance
from .simplicity import (
    SimplicityVerdict,
    decide_simplicity,
    enumerate_ideals,
    equivalence_report,
    ideal_closure,
    is_field,
    is_simple_oracle,
)
from .splitring import IdealHandle, RingElement, SplitRing, annihilator, induced_iso, invert, is_unit
from .twisted import (
    GlobalTwistedAction,
    TwistedAction,
    alpha_invariant_ideals,
    invariants_subring,
    is_alpha_simple,
    is_invariant_ideal,
    is_symmetric,
    lift_dynamics,
    restrict_global,
    restriction_embedding,
    validate_twisted,
    verify_ring_envelope,
)

__version__ = "0.1.0"
