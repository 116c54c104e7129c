"""Exact ideal calculus for the local models of orders over a surface germ.

Three families of algebras over truncations of k[[u,v]]: full matrix
algebras M_f(R), hereditary orders M_f(B) ramified along u = 0, and
skew algebras M_f(S) with x^e = u, y^e = v, yx = zeta xy.  The package
computes finite-colength left ideals exactly (cyclotomic rational
coefficients, certified truncation), decides two-sidedness and the
dual containment I A* inside A* I, decomposes circulant ideals into
chains, constructs colength-preserving deformations that break the
containment together with the projective-line pencil connecting the
endpoints, and probes which colengths occur (multiples of f).
"""

from .cyclotomic import CycField, CycScalar, cyclotomic_poly, euler_phi
from .deformations import (
    DEFAULT_SAMPLE_POINTS,
    DeformationCertificate,
    FiberSample,
    ProbeResult,
    deform_smooth_ram,
    deform_unramified,
    divisibility_probe,
    family_fiber,
    simple_corank_step,
)
from .errors import (
    ChainInvariantViolated,
    CertificateMismatch,
    DimensionBound,
    DivisionByZero,
    EqualIdeals,
    IdealIsUnitIdeal,
    ImproperIdeal,
    NotCirculant,
    NotCosimple,
    NotSaturated,
    NotSmoothRam,
    OrderCalcError,
    OutOfRange,
    ParseError,
    PrecisionExhausted,
    RequiresFGreaterOne,
    SpecMismatch,
    TruncMismatch,
    UnsaturatedInput,
    ZeroPoint,
)
from .orders import (
    AlgebraElement,
    AlgebraSpec,
    alg_mul,
    dual_shift_element,
    maximal_ideal,
    standard_basis,
)
from .parsing import (
    format_element,
    format_series,
    parse_element,
    parse_scalar,
    parse_series,
)
from .power_series import (
    CommIdeal,
    TruncSeries,
    colength,
    ideal_from_generators,
    nakayama_corank1_pick,
    socle_and_cosocle_picks,
    socle_pick,
    staircase_ideal,
)
from .submodules import (
    FreeModuleSubmodule,
    IdealChain,
    LeftIdeal,
    chain_compose,
    chain_decompose,
    check_dual_containment,
    close_left_ideal,
    dual_containment_escape,
    find_codim_one_quotients,
    is_two_sided,
    left_escape,
    mf_expand,
    morita_drop,
    morita_lift,
    right_escape,
    whole_ideal,
)

__version__ = "0.1.0"
