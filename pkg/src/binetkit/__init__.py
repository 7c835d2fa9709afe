"""binetkit: exact and certified-numeric verification of Fibonacci, Lucas
and Horadam summation identities built on reciprocal binomial coefficients.

Finite identities are checked by exact rational / quadratic-field
equality; infinite series are checked against their closed forms in
arbitrary-precision ball arithmetic with rigorous geometric tail bounds.
"""

from .balls import (
    Ball,
    BallDomainError,
    ComparisonOutcome,
    ball_arccos,
    ball_arcsin,
    ball_arctan,
    ball_compare,
    ball_from_quad,
    ball_from_rational,
    ball_log,
    ball_sqrt,
    const_pi,
    cot_of_arccos,
    elem_fn,
)
from .binomials import binomial, central_binomial
from .finite import (
    FiniteParams,
    SidePair,
    eq1_sides,
    gould_sides,
    horadam_sides,
    thm1_sides,
    thm2_sides,
    thm3_sides,
    thm4_sides,
)
from .harness import (
    REGISTRY,
    IdentityDescriptor,
    VerifySettings,
    default_records,
    failure_count,
    report,
    run_identity,
    sweep,
)
from .oeis import BFile, BFileParseError, cross_check, load_bfile, load_fixture
from .quadratic import ALPHA, BETA, SQRT5, QuadElement, RootPair, q_arith, q_pow, roots_of
from .records import Status, VerificationRecord
from .sequences import HoradamParams, fibonacci, horadam, lucas, lucas_uv
from .series import (
    FAMILIES,
    SeriesFamily,
    closed_form,
    hm_weight,
    partial_sum,
    tail_bound,
    verify_series,
)

__version__ = "0.1.0"

__all__ = [
    "ALPHA",
    "BETA",
    "SQRT5",
    "Ball",
    "BallDomainError",
    "BFile",
    "BFileParseError",
    "ComparisonOutcome",
    "FAMILIES",
    "FiniteParams",
    "HoradamParams",
    "IdentityDescriptor",
    "QuadElement",
    "REGISTRY",
    "RootPair",
    "SeriesFamily",
    "SidePair",
    "Status",
    "VerificationRecord",
    "VerifySettings",
    "ball_arccos",
    "ball_arcsin",
    "ball_arctan",
    "ball_compare",
    "ball_from_quad",
    "ball_from_rational",
    "ball_log",
    "ball_sqrt",
    "binomial",
    "central_binomial",
    "closed_form",
    "const_pi",
    "cot_of_arccos",
    "cross_check",
    "default_records",
    "elem_fn",
    "eq1_sides",
    "failure_count",
    "fibonacci",
    "gould_sides",
    "hm_weight",
    "horadam",
    "horadam_sides",
    "load_bfile",
    "load_fixture",
    "lucas",
    "lucas_uv",
    "partial_sum",
    "q_arith",
    "q_pow",
    "report",
    "roots_of",
    "run_identity",
    "sweep",
    "tail_bound",
    "thm1_sides",
    "thm2_sides",
    "thm3_sides",
    "thm4_sides",
    "verify_series",
]
