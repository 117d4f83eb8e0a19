"""Exact-arithmetic analyzer for blow-ups of hypersurfaces along
coordinate-subspace centers: strict-transform smoothness by two independent
routes, divisor-class and discrepancy bookkeeping, and derived-category
block ledgers."""

__version__ = "0.1.0"

from .errors import (
    DegreeLimitError,
    InternalCheckError,
    ParseError,
    SceneError,
    StrictSmoothError,
    StructuralError,
)
from .scalars import QQ, ModularInt, PrimeField, RationalField
from .poly import BlockOrder, GREVLEX, LEX, Monomial, MonomialOrder, Polynomial
from .groebner import (
    GroebnerBasis,
    Ideal,
    basis_audit,
    degree_limit,
    determinant,
    groebner,
    ideal_power_membership,
    is_empty_affine,
    krull_dimension,
    minors_ideal,
    normal_form,
    power_ideal,
    radical_membership,
    spolynomial,
)
from .geometry import (
    Analysis,
    BlowupChart,
    Center,
    CenterAnalysis,
    DivisorClass,
    Scene,
    Status,
    Verdict,
    adjunction_ledger,
    analyze,
    base_locus_check,
    chart_oracle,
    charts,
    leading_form,
    multiplicity,
    section_smoothness,
    singular_locus_in_centers,
)
from .sod import (
    CenterShape,
    LefschetzBlock,
    SodApplicabilityError,
    SodBlock,
    lefschetz,
    serre_vanishing_record,
    sod,
)
from .parsing import parse_expression
from .scene_io import load_scene, scene_from_document
from .report import build_report, render_plain, render_structured
