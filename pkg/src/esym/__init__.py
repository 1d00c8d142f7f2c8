"""Exact computations with elementary symmetric polynomials: identities,
symmetric-model representations over small fields, non-membership
certificates, order-2 zero spaces, formula lower-bound passes, and
truncated eps-series border constructions.

Everything is exact: rationals are fractions, finite-field elements are
table-driven residues, and no computation ever rounds.
"""

from .border import (
    BorderError,
    BorderWitness,
    EpsSeries,
    EpsSymRepresentation,
    approx_extract,
    constant_shift,
    depth3_to_sym,
    esp_of_series,
    kumar_fanin2,
)
from .certificate import (
    BlockPolynomialSpec,
    CertificateError,
    CertificateReport,
    certify_nonmembership,
    hard_poly,
    iter_block_partitions,
    partition_count,
    partition_sum,
    random_member,
)
from .field import (
    FieldDescriptor,
    FieldElement,
    FieldError,
    QQ,
    embed,
    lucas_binomial,
    make_field,
    roots_of_z_pow_d_plus_one,
)
from .formula import (
    Formula,
    FormulaError,
    PeelDecomposition,
    ben_or,
    find_degree_vertex,
    lower_bound_report,
    parse_formula,
    peel_decompose,
    random_formula,
    replace_with_constant,
    split_linear,
)
from .poly import LinearForm, Polynomial, parse_polynomial
from .rng import SplitMix64
from .symfunc import (
    IDENTITY_KINDS,
    IdentityReport,
    esp_of_forms,
    esp_on,
    esp_table_of_forms,
    gen_esp,
    gen_power_sum,
    power_sum_of_forms,
    verify_identity,
)
from .symmodel import (
    NewtonDecomposition,
    ReduciblePolynomial,
    SymModelError,
    SymRepresentation,
    append_linear_power,
    newton_decompose,
    quadratic_gadget,
    quadratic_to_sym,
    reducible_to_sym,
    verify_representation,
)
from .v2space import (
    V2Error,
    V2PointSet,
    WitnessFamily,
    dimension_estimate,
    enumerate_v2,
    in_s_k,
    is_order2_zero,
    product_zero_containment,
    witness_family,
)

__version__ = "0.1.0"

__all__ = [
    "BlockPolynomialSpec",
    "BorderError",
    "BorderWitness",
    "CertificateError",
    "CertificateReport",
    "EpsSeries",
    "EpsSymRepresentation",
    "FieldDescriptor",
    "FieldElement",
    "FieldError",
    "Formula",
    "FormulaError",
    "IDENTITY_KINDS",
    "IdentityReport",
    "LinearForm",
    "NewtonDecomposition",
    "PeelDecomposition",
    "Polynomial",
    "QQ",
    "ReduciblePolynomial",
    "SplitMix64",
    "SymModelError",
    "SymRepresentation",
    "V2Error",
    "V2PointSet",
    "WitnessFamily",
    "append_linear_power",
    "approx_extract",
    "ben_or",
    "certify_nonmembership",
    "constant_shift",
    "depth3_to_sym",
    "dimension_estimate",
    "embed",
    "enumerate_v2",
    "esp_of_forms",
    "esp_of_series",
    "esp_on",
    "esp_table_of_forms",
    "find_degree_vertex",
    "gen_esp",
    "gen_power_sum",
    "hard_poly",
    "in_s_k",
    "is_order2_zero",
    "iter_block_partitions",
    "kumar_fanin2",
    "lower_bound_report",
    "lucas_binomial",
    "make_field",
    "newton_decompose",
    "parse_formula",
    "parse_polynomial",
    "partition_count",
    "partition_sum",
    "peel_decompose",
    "power_sum_of_forms",
    "product_zero_containment",
    "quadratic_gadget",
    "quadratic_to_sym",
    "random_formula",
    "random_member",
    "reducible_to_sym",
    "replace_with_constant",
    "roots_of_z_pow_d_plus_one",
    "split_linear",
    "verify_identity",
    "verify_representation",
    "witness_family",
]
