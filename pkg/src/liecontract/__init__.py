"""Exact contraction engine for graded nilpotent Lie algebras with a
numeric spectral verifier for quasi-homogeneous model operators."""

__version__ = "1.0.0"

from .algebra import (  # noqa: F401
    GradedLieAlgebra,
    LieAlgebra,
    Subspace,
    abelian,
    filiform,
    heisenberg,
    heisenberg_times_line,
)
from .contraction import (  # noqa: F401
    ContractionFamily,
    FlagBasis,
    ParamMatrix,
    contract_global,
    contract_local,
    lambda_map,
    projections,
)
from .freenilpotent import FreeNilpotentAlgebra, free_nilpotent  # noqa: F401
from .geometry import ball_volume_experiment, dimension_report, n0_formula  # noqa: F401
from .grouplaw import (  # noqa: F401
    PolynomialMap,
    VectorField,
    bch_product,
    group_law_map,
    left_invariant_fields,
    surrogate_modulus,
)
from .opcalc import (  # noqa: F401
    PolyDiffOperator,
    compose,
    expand_in_frame,
    homogeneity_profile,
    monomial_operator,
)
from .poly import LaurentPoly, Poly  # noqa: F401
from .report import AnalysisReport, Claim  # noqa: F401
from .spectral import (  # noqa: F401
    ModelTriple,
    SymbolOperator,
    gaussian_envelope_fit,
    heat_kernel,
    heat_trace,
    plancherel_density,
    spectral_scaling_check,
    symbol_from_powers,
)
from .riesz import (  # noqa: F401
    commuting_expansion_check,
    riesz_asymptotics_check,
    riesz_potential,
)
from .specfile import SpecDocument, parse  # noqa: F401
