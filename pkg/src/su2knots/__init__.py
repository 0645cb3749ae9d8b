"""Torus-knot tangle splices, their invariants, and SU(2) representation surveys."""

from .algebra import (
    ContinuedFraction,
    ContinuedFractionError,
    InvariantFactors,
    LaurentPolynomial,
    cf_evaluate,
    cf_expand,
    poly_eval_int,
    poly_mul,
    snf,
)
from .diagram import (
    DiagramError,
    PlanarDiagram,
    UNKNOT,
    canonicalize,
    components,
    faces_and_coloring,
    goeritz,
    is_alternating,
    mirror,
    validate,
    writhe,
)
from .invariants import (
    InvariantReport,
    SkeinVector,
    alexander,
    determinant,
    double_cover_homology,
    invariant_report,
    jones,
    jones_normalized_bracket,
    kauffman_bracket,
    kauffman_bracket_bruteforce,
    signature,
)

__version__ = "0.1.0"
