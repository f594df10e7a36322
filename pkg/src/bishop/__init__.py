"""Complex tangents and Bishop invariants of graphs over the 3-sphere."""
__version__ = "0.1.0"

from .croper import (  # noqa: E402
    GammaResult,
    NotATangent,
    SpherePoint,
    TangentClass,
    apply_L,
    apply_Lbar,
    b_determinant,
    b_function,
    classify,
    gamma_at,
    gamma_from_B,
    gamma_parts,
)
from .expr import PoleProximity, RatExpr, conjugate, evaluate, format_expr, modulus, wirtinger  # noqa: E402
from .locus import (  # noqa: E402
    LocusComponent,
    LocusKind,
    LocusParams,
    StepCollapse,
    detect_degenerate,
    find_components,
    local_rank,
    refine_to_locus,
    sample_sphere,
    trace_component,
)
from .parsing import ParseError, parse_expr  # noqa: E402
from .report import AnalysisReport  # noqa: E402
