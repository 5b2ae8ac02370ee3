"""degenalg: exact verification of algebra degenerations and deformations.

Structure tensors over exact coefficient rings, Chevalley-Eilenberg and
Hochschild cohomology, truncated formal deformations, degeneration
witnesses with an obstruction battery, the classification and closure
diagram of 3-dimensional Lie algebras, and graded Tor / N-Koszul
verdicts.
"""

from .rings import (
    QQ,
    LAURENT,
    RATFUNC,
    LaurentPoly,
    NotAUnit,
    RationalFunction,
    SeriesRing,
    TruncSeries,
    normalize_unit_part,
    series_invert,
    valuation,
)
from .linalg import (
    KERNEL,
    Inconsistent,
    Matrix,
    Singular,
    det,
    inverse,
    kernel_basis,
    linalg,
    rank,
    solve,
)
from .algebra import (
    DegreeMixing,
    IdentityReport,
    NegativeValuation,
    StructureTensor,
    act,
    associative_tensor,
    check_identities,
    derivation_dim,
    derived_rank,
    generated_in_degree_one,
    graded_tensor,
    lie_tensor,
    orbit_dim,
    specialize,
)
from .cohomology import (
    Cochain,
    CochainComplex,
    NoUnit,
    NotAssociative,
    NotGenerated,
    NotJacobi,
    ce_complex,
    class_nonzero,
    graded_h2_dim,
    hochschild_complex,
    hochschild_h_dim,
    is_two_cocycle,
    lie_h_dim,
    wedge_cochain,
)
from .deformation import (
    DeformationFamily,
    FiberReport,
    InsufficientOrder,
    LeadingAnalysis,
    Trivial,
    fiber_invariants,
    leading_analysis,
    trivial_deformation,
    verify_deformation,
)
from .degeneration import (
    CycleFound,
    DimensionMismatch,
    ObstructionReport,
    VerifyResult,
    Witness,
    WitnessRejected,
    audit_label_graph,
    obstruction_battery,
    partial_order_audit,
    verify_witness,
    witness_to_deformation,
)
from .lie3 import (
    ClassLabel,
    NotRank2Invertible,
    RigidityCertificate,
    WrongLeadingTerm,
    agaoka_diagram,
    classify3,
    h2_table,
    l2_rigidity,
    l4_label,
    random_l2_deformation,
    table1_representatives,
)
from .koszul import (
    GradedAlgebra,
    KoszulVerdict,
    NotAComplex,
    TorTable,
    TruncFreeComplex,
    check_generated_degree_one,
    is_N_koszul,
    jump,
    koszul_transfer_check,
    lemma_lift_check,
    tor_dims,
)

__version__ = "0.1.0"
