"""Exact Froelicher-Nijenhuis calculus and Lie algebroid verification.

Everything is computed over multivariate rational functions with Gaussian
rational coefficients; canonical forms make structural equality decide
mathematical equality, so every identity check is exact.
"""

from .scalar import (
    ChartPoint,
    DivisionByZeroError,
    ExprSyntaxError,
    GaussianRational,
    ImaginaryNotAllowedError,
    PoleError,
    ScalarError,
    ScalarExpr,
    UnknownVariableError,
    parse_expr,
    random_point,
)
from .calculus import (
    CalculusError,
    Chart,
    ChartMismatchError,
    DecompositionError,
    DerivationDeg1,
    KForm,
    VectorField,
    VectorValuedForm,
    contracted_bracket,
    exterior_d,
    fn_bracket,
    fn_decompose,
    insertion,
    lie_bracket,
    lie_derivative,
    nijenhuis_torsion,
    rn_bracket,
    wedge,
)
from .algebroid import (
    AlgebroidError,
    AxiomReport,
    BundleAlgebroid,
    BundleAxiomReport,
    CohomologyReport,
    EForm,
    LinearConnection,
    NotCohomologyError,
    SingularAnchorError,
    TangentAlgebroid,
    algebroid_from_derivation,
    bundle_de_rham,
    check_axioms,
    check_bundle_axioms,
    check_cohomology,
    delta_torsion,
    derivation_from_algebroid,
    invertible_algebroid,
    verify_connection_decomposition,
    verify_trivial_isomorphism,
)
from .structures import (
    BigradedForm,
    FoliationData,
    ImageNotInvolutiveError,
    NotAlmostComplexError,
    NotAlmostProductError,
    NotConnectionError,
    NotIdempotentError,
    NotSemisprayError,
    StructureError,
    TangentChartData,
    TorsionNotZeroError,
    bigrade,
    complement_operator,
    complex_algebroid,
    complex_projectors,
    connection_algebroid,
    connection_from_semispray,
    d_components,
    foliation_connection,
    idempotent_algebroid,
    idempotent_tensorial_operator,
    is_semispray,
    product_algebroid,
    semispray,
    tangent_chart,
    tangent_data_for_chart,
)

__version__ = "1.0.0"
