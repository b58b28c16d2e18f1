"""Exact analysis of real-algebraic hypersurfaces in complex projective space.

Bihomogenization, Hermitian rank and signature, signed holomorphic
decompositions, Segre polynomials and degenerate singularities, Levi-flatness
certificates, and pullbacks of real curves under rational maps.
"""

__version__ = "0.1.0"

from .coefficient import Coefficient
from .constructions import (
    EXAMPLE_NAMES,
    ExampleRecord,
    RationalMap,
    pullback,
    quadratic_cone,
    worked_example,
)
from .errors import (
    LeviflatError,
    NotBihomogeneousError,
    NotHermitianError,
    NotRealValuedError,
    ParseError,
    SchemaError,
    VariableCountError,
)
from .geometry import (
    DegeneracyReport,
    ProjectiveContext,
    bihomogenize,
    degenerate_locus_generators,
    dehomogenize,
    is_algebraic_degenerate,
    segre_polynomial,
    veronese_lift,
    veronese_point,
)
from .hermitian import (
    HermitianForm,
    Inertia,
    SignedDecomposition,
    coefficient_matrix,
    holomorphic_decomposition,
    rank_signature,
    reexpand,
)
from .levi import (
    LeafFamily,
    LeviCertificate,
    LeviConfig,
    Verdict,
    bordered_hessian,
    certify_leviflat,
    check_leaf_family,
    levi_minors,
    sample_hypersurface,
)
from .poly import ComplexifiedPoly, HoloPoly, MixedPoly, bidegree_split, divide_exact
from .polyio import format_poly, from_json, parse, to_json

__all__ = [
    "Coefficient",
    "ComplexifiedPoly",
    "DegeneracyReport",
    "EXAMPLE_NAMES",
    "ExampleRecord",
    "HermitianForm",
    "HoloPoly",
    "Inertia",
    "LeafFamily",
    "LeviCertificate",
    "LeviConfig",
    "LeviflatError",
    "MixedPoly",
    "NotBihomogeneousError",
    "NotHermitianError",
    "NotRealValuedError",
    "ParseError",
    "ProjectiveContext",
    "RationalMap",
    "SchemaError",
    "SignedDecomposition",
    "VariableCountError",
    "Verdict",
    "bidegree_split",
    "bihomogenize",
    "bordered_hessian",
    "certify_leviflat",
    "check_leaf_family",
    "coefficient_matrix",
    "degenerate_locus_generators",
    "dehomogenize",
    "divide_exact",
    "format_poly",
    "from_json",
    "holomorphic_decomposition",
    "is_algebraic_degenerate",
    "levi_minors",
    "parse",
    "pullback",
    "quadratic_cone",
    "rank_signature",
    "reexpand",
    "sample_hypersurface",
    "segre_polynomial",
    "to_json",
    "veronese_lift",
    "veronese_point",
    "worked_example",
]
