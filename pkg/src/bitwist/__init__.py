"""Two-bridge knots, branched cyclic covers and their groups, computed from bi-twist multipliers."""

from .abelian import (
    AbelianInvariants,
    IntMatrix,
    abelianization,
    circulant,
    detect_period,
    exponent_polynomial_from_word,
    exponent_polynomial_via_Q,
    fibonacci_order,
    homology,
    homology_via_presentation,
    smith_normal_form,
)
from .cfrac import (
    MultiplierFunction,
    ProjectiveFraction,
    eval_cf,
    even_cf_expansion,
    invariant_of_multipliers,
    is_normalized,
    knots_equivalent,
    mirror,
    realize_knot,
)
from .coset import enumerate_cosets, verify_order_claims
from .errors import (
    BitwistError,
    DivisionUndefined,
    MalformedInput,
    MalformedState,
    NotAKnot,
    NotExpandable,
)
from .laurent import LaurentPolynomial
from .presentation import (
    CyclicPresentation,
    FinitePresentation,
    Word,
    branched_cover_relators,
    eliminate_to_cyclic,
    fibonacci_presentation,
    sieradski_presentation,
    triangle_presentation,
)
from .surgery import build_chain, closure_fraction, reduce, rolfsen_twist

__version__ = "0.1.0"
