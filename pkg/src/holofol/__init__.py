"""holofol: normal forms, coverings, one-forms of times and closed-form
first integrals for polynomial vector fields on C^2 with a fibered
polynomial first integral, plus a certified complex-time tracer."""

__version__ = "0.1.0"

from .scalars import GaussianRational
from .poly import LaurentUniPoly, PartialFractionAtZero, UniPoly, pf_at_zero
from .bipoly import BiPoly
from .ratfunc import RatFunc
from .foliation import (
    UV,
    XY,
    CoveringMapH,
    OneForm2,
    TimesFormData,
    VectorField2,
    contract,
    differential,
    pullback_field,
    pullback_form,
    pushforward_field,
    reduce_codim1,
    times_form,
)
from .normal_forms import (
    PulledBackRiccati,
    SaitoSuzukiParams,
    SpecialValueReport,
    build_H,
    build_P,
    build_Y,
    critical_values,
    extract_pullback_shape,
    special_values,
    translate,
)
from .first_integral import (
    FirstIntegralForm,
    GammaClosedForm,
    UpstairsIntegral,
    Verdict,
    corollary1_normal_integral,
    first_integral_uv,
    first_integral_xy,
    gamma_from_pf,
    verify_first_integral,
)
from .trajectory import (
    QuadratureDescriptor,
    RiccatiParams,
    TrajectoryParam,
    riccati_detect,
    riccati_parametrize,
)
from .tracer import (
    ComplexPoint,
    EscapeProfile,
    TraceResult,
    TraceSample,
    TraceStats,
    conservation_check,
    elapsed_time_via_tau,
    escape_profile,
    eval_field,
    integrate_ray,
    trace_to_csv_rows,
)
from .parsing import (
    parse_expression,
    parse_one_form,
    parse_polynomial,
    parse_vector_field,
    print_bipoly,
    print_one_form,
    print_ratfunc,
    print_vector_field,
)
from . import errors

__all__ = [
    "GaussianRational",
    "UniPoly",
    "LaurentUniPoly",
    "PartialFractionAtZero",
    "pf_at_zero",
    "BiPoly",
    "RatFunc",
    "XY",
    "UV",
    "VectorField2",
    "OneForm2",
    "CoveringMapH",
    "TimesFormData",
    "contract",
    "differential",
    "reduce_codim1",
    "pullback_field",
    "pullback_form",
    "pushforward_field",
    "times_form",
    "SaitoSuzukiParams",
    "PulledBackRiccati",
    "SpecialValueReport",
    "build_P",
    "build_Y",
    "build_H",
    "extract_pullback_shape",
    "critical_values",
    "special_values",
    "translate",
    "GammaClosedForm",
    "UpstairsIntegral",
    "FirstIntegralForm",
    "Verdict",
    "gamma_from_pf",
    "first_integral_uv",
    "first_integral_xy",
    "verify_first_integral",
    "corollary1_normal_integral",
    "RiccatiParams",
    "QuadratureDescriptor",
    "TrajectoryParam",
    "riccati_detect",
    "riccati_parametrize",
    "ComplexPoint",
    "TraceSample",
    "TraceStats",
    "TraceResult",
    "EscapeProfile",
    "eval_field",
    "integrate_ray",
    "conservation_check",
    "elapsed_time_via_tau",
    "escape_profile",
    "trace_to_csv_rows",
    "parse_expression",
    "parse_polynomial",
    "parse_vector_field",
    "parse_one_form",
    "print_bipoly",
    "print_ratfunc",
    "print_vector_field",
    "print_one_form",
    "errors",
]
