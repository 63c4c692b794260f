"""Peripheral spectra, eigenvector structure, and positivity certificates for
unital positive maps on block matrix algebras."""

from .algebra import (
    DEFAULT_TOL,
    AlgebraElement,
    BlockAlgebra,
    Tolerances,
    adjoint,
    devectorize,
    element_norm,
    general_eigenvalues,
    hermitian_eig,
    jordan_product,
    max_norm,
    null_space,
    polar_decomposition,
    scalar_multiple_of_identity,
    vectorize,
)
from .errors import (
    AlgebraMismatch,
    BadLambda0,
    CommutationViolated,
    ConvergenceFailure,
    DimensionMismatch,
    HypothesesViolated,
    InvariantViolated,
    LambdaNotInSpectrum,
    MapFileError,
    MultiBlockUnsupported,
    NoPositiveFixedState,
    NotEigenvector,
    NotHermitian,
    NotPSDInput,
    NotScalarCombination,
    PerispecError,
    ProjectionMismatch,
    SingularModulus,
    SplitNotEigen,
    ThetaOutOfRange,
)
from .mapfile import (
    LoadedMap,
    dump_json,
    explicit_map_dict,
    load_block2_file,
    load_map_file,
    preset_map_dict,
)
from .positivity import (
    Block2Matrix,
    EpsilonSchedule,
    FalsifierResult,
    PositivityVerdict,
    PositivityWitness,
    assemble,
    choi_matrix,
    congruence,
    corner_swap,
    criterion_commuting,
    criterion_epsilon,
    criterion_epsilon_prime,
    offdiag_swap_under_hypotheses,
    oracle_psd,
    randomized_positivity_falsifier,
)
from .presets import (
    PRESET_NAMES,
    ExampleManifest,
    build_example1,
    build_example1_continuous,
    build_example2,
    build_example2_continuous,
    build_psi_swap,
    unit_phase_power,
)
from .structure import (
    CaseI,
    CaseII,
    CaseIII,
    Classification,
    case_tag,
    classify_eigenvector,
    normalize_eigenvector,
    partial_isometry_check,
    reconstruct,
)
from .superop import (
    MERGE_TOL,
    PERIPHERAL_TOL,
    ContinuousFamily,
    GroupClosureReport,
    InvariantState,
    JordanClosureReport,
    PointSpectrum,
    SemigroupLawReport,
    SpectralPoint,
    StarClosureReport,
    Superoperator,
    apply,
    compose,
    continuous_eigen_check,
    ergodicity_check,
    from_action,
    from_basis_action,
    group_closure_report,
    identity_superoperator,
    invariant_state,
    jordan_closure_check,
    point_spectrum,
    power,
    semigroup_law_check,
    star_closure_check,
    unitality_check,
)

__version__ = "0.1.0"
