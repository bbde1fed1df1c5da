"""Hilbert functions, fat-point linear systems and Lefschetz checks for
ideals generated by powers of general linear forms in three variables."""

from lefschetz.combinatorics import (
    ContractError,
    LinearSystem,
    PowerSequence,
    binom_safe,
    expected_dimension,
    pos_part,
    virtual_dimension,
)
from lefschetz.reduction import (
    DimResult,
    ReductionStep,
    ReductionTrace,
    StepKind,
    bezout_five_step,
    bezout_two_step,
    cremona_step,
    dim_linear_system,
    is_standard,
    normalize,
)
from lefschetz.inverse_systems import (
    QuotientQuery,
    apply_duality,
    ci_hilbert_function,
    hilbert_function,
    quotient_dim,
)
from lefschetz.oracle import (
    DenseMatrixModP,
    PrimeFieldConfig,
    matrix_rank_mod_p,
    monomial_basis,
    oracle_linsys_dim,
    oracle_map_rank,
    oracle_quotient_dim,
    prime_independent,
)
from lefschetz.analysis import (
    CaseData,
    Engine,
    RankReport,
    RankRow,
    Verdict,
    CaseIIAnalysis,
    ProofLedger,
    case_i_proof_ledger,
    endgame_check,
    case_ii_analysis,
    compute_case_data,
    line_base_multiplicities,
    predicted_critical_dim,
    rank_profile,
    verify_report,
    verify_theorem,
)

__version__ = "0.1.0"
