"""Graded simple algebras from presentations, exact graded polynomial identity
testing, and the strongly-verbally-prime classification with witnesses."""

from .algebra import (
    AlgebraElement,
    BlockStructure,
    GradedAlgebra,
    M1,
    M2,
    M3,
    Presentation,
    apply_move,
    block_structure,
    build_algebra,
    is_crossed_product,
    is_graded_division,
    is_normalized,
    normalize_presentation,
    presentations_equivalent,
    support,
)
from .classify import (
    ClassificationReport,
    EmpiricalCheck,
    WitnessCertificate,
    WitnessPair,
    classify,
    separating_product_test,
    strongly_vp_empirical,
    verify_witness,
    witness_nonstrong,
)
from .cohomology import (
    Binomial,
    Coboundary,
    CoboundaryObstruction,
    Cocycle2,
    CocycleViolation,
    binomial_alpha,
    classes_cohomologous,
    cocycle_product_scalar,
    conjugate_cocycle,
    enumerate_binomials,
    invariance_obstruction,
    is_G_invariant_class,
    is_coboundary,
    is_trivial_class,
    smith_diagonalize,
    solve_congruences,
    validate_cocycle,
)
from .errors import (
    AlgebraMismatchError,
    BinomialConditionError,
    CocycleError,
    DegreeMismatchError,
    DisconnectedGradingError,
    DocumentError,
    FactorizationError,
    GradedPIError,
    HypothesisError,
    InvalidTableError,
    NoWitnessError,
    NonMultilinearError,
    NotNormalError,
    NotSubgroupError,
    OrderMismatchError,
    TruncationError,
    VerificationFailedError,
)
from .grassmann import (
    EnvelopeAlgebra,
    GrassmannElement,
    envelope,
    envelope_identity_check,
    grassmann_mul,
)
from .groups import CosetDecomposition, FiniteGroup, Subgroup, equivalence_classes_tilde
from .polynomials import (
    GoodScalarContext,
    GradedMonomial,
    GradedPolynomial,
    GradedVariable,
    IdentityReport,
    PathReport,
    PathRestriction,
    alternate,
    check_identity,
    disjoint_product,
    evaluate,
    evaluation_span,
    good_binomial,
    good_permutation_scalar,
    good_permutations_of,
    is_good_permutation,
    is_identity,
    is_pure,
    monomial_polynomial,
    path_restriction,
    path_vanishes,
    pure_components,
    satisfies_path_property,
    variables_for,
)
from .scalars import CycScalar, cyclotomic_polynomial, euler_phi, root_of_unity

__version__ = "0.1.0"
