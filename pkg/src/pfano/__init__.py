"""p-Fano / p-non-Fano matroids and index coding over prime fields."""

from .errors import (
    DivisionByZero,
    FieldMismatch,
    NotDecodable,
    NotPrime,
    PfanoError,
    PremiseViolated,
    SearchSpaceTooLarge,
    ShapeMismatch,
)
from .gf import FieldElement, PrimeField, field_new
from .indexcoding import (
    Encoder,
    IndexCodingInstance,
    broadcast_rate_report,
    build_p_fano_instance,
    build_p_nonfano_instance,
    check_decoding,
    encoder_h_p,
    mais,
    simulate_round,
)
from .kernels import BACKEND
from .matrix import BlockMatrix, rank, rref
from .matroid import (
    MatroidConstraints,
    check_matroid_axioms,
    check_representation,
    h_p_matrix,
    p_fano_constraints,
    p_nonfano_constraints,
    rank_function_from_matrix,
)
from .search import decide_family_optimality, search_scalar_representation

__version__ = "0.1.0"
