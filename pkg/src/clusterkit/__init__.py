"""Exact-arithmetic engine for cluster algebras.

Mutate skew-symmetrizable matrices, quivers, and seeds; track C-/G-matrices
and exchange polynomials through principal coefficients; reconstruct cluster
variables and coefficients in any semifield; classify finite type; enumerate
exchange graphs; and run the generalized (higher-degree) mutation rules.
"""

from .exchange import (
    BudgetExceeded,
    CartanMatrix,
    DynkinLabel,
    ExchangeMatrix,
    ExtendedExchangeMatrix,
    NotSkewSymmetric,
    NotSkewSymmetrizable,
    Quiver,
    cartan_counterpart,
    classify_blocks,
    classify_cartan,
    decompose,
    find_skew_symmetrizer,
    from_quiver,
    is_acyclic,
    is_finite_type,
    mutate_extended,
    mutate_matrix,
    mutate_quiver,
    to_quiver,
)
from .gca import (
    GcaSeed,
    MutationData,
    NonMonic,
    ReciprocityViolated,
    companion_patterns,
    gca_duality_check,
    gca_initial,
    mutate_gca,
    right_companion_specialize,
    validate_data,
)
from .pattern import (
    ExchangeGraphResult,
    FreeSeed,
    GeometricSeed,
    PrincipalSeed,
    SizeBudgetExceeded,
    apply_permutation,
    check_commutation,
    check_separation,
    cluster_variable,
    coefficient,
    d_vector,
    enumerate_seeds,
    free_initial,
    geometric_initial,
    initial_seed,
    mutate,
    mutate_eps,
    mutate_free,
    mutate_geometric,
    verify_invariants,
)
from .polyring import (
    ArenaMismatch,
    NotDivisible,
    Poly,
    exact_div,
    min_exponent_vector,
    parse_poly,
    poly_arith,
    substitute,
    to_text,
)
from .semifield import (
    SemifieldValue,
    SfRational,
    TropMonomial,
    TrivialUnit,
    TRIVIAL_ONE,
    semifield_sum,
    sf_arith,
    specialize,
    trop_sum,
    tropicalize,
)

__version__ = "0.1.0"
