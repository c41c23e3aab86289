"""Exact hyperplane arrangements over cyclotomic fields.

Scalars live in Q(zeta_n), arrangements carry full intersection-lattice
machinery, and freeness is decided and certified through addition and
deletion chains.
"""

from arrfree.arrangement import (
    Arrangement,
    Flat,
    Hyperplane,
    NonSplitting,
    NotAFlat,
    NotMember,
    RankLimit,
    ZeroDimensional,
    lattice_isomorphic,
)
from arrfree.catalog import (
    AmbiguousType,
    CatalogDataError,
    FlatOrbitLabel,
    GroupPresentation,
    InvalidParameter,
    NoSuchType,
    canonical_induction_order,
    flat_orbits,
    group,
    group_names,
    intermediate,
    intermediate_exponents,
    load_groups,
    monomial_arrangement,
    normalize_type,
    reflection_arrangement,
    restriction_by_type,
)
from arrfree.cyclotomic import (
    Cyc,
    DivisionByZero,
    FormatError,
    IncompatibleOrder,
    cyclotomic_polynomial,
    format_linear,
    parse_linear,
    parse_scalar,
    root_of_unity,
)
from arrfree.freeness import (
    HereditaryReport,
    InductionCertificate,
    InductionTable,
    NecCondReport,
    NonFreeInput,
    NotIF,
    RecursionMove,
    RecursionWitness,
    ShapeError,
    StaleCertificate,
    TableReport,
    WitnessReport,
    certify_chain,
    check_triple,
    clear_caches,
    emit_induction_table,
    hereditarily_inductively_free,
    is_inductively_free,
    necessary_condition_counts,
    verify_induction_table,
    verify_recursion_witness,
)

__version__ = "0.1.0"

__all__ = [
    "AmbiguousType",
    "Arrangement",
    "CatalogDataError",
    "Cyc",
    "DivisionByZero",
    "Flat",
    "FlatOrbitLabel",
    "FormatError",
    "GroupPresentation",
    "HereditaryReport",
    "IncompatibleOrder",
    "InductionCertificate",
    "InductionTable",
    "InvalidParameter",
    "NecCondReport",
    "NonFreeInput",
    "NonSplitting",
    "NoSuchType",
    "NotAFlat",
    "NotIF",
    "NotMember",
    "RankLimit",
    "RecursionMove",
    "RecursionWitness",
    "ShapeError",
    "StaleCertificate",
    "TableReport",
    "WitnessReport",
    "ZeroDimensional",
    "canonical_induction_order",
    "certify_chain",
    "check_triple",
    "clear_caches",
    "cyclotomic_polynomial",
    "emit_induction_table",
    "flat_orbits",
    "format_linear",
    "group",
    "group_names",
    "hereditarily_inductively_free",
    "intermediate",
    "intermediate_exponents",
    "is_inductively_free",
    "lattice_isomorphic",
    "load_groups",
    "monomial_arrangement",
    "necessary_condition_counts",
    "normalize_type",
    "parse_linear",
    "parse_scalar",
    "reflection_arrangement",
    "restriction_by_type",
    "root_of_unity",
    "verify_induction_table",
    "verify_recursion_witness",
    "__version__",
]
