"""Exact cohomology of first-quadrant bigraded cochain complexes."""

from .complex import (
    BigradedComplex,
    GradedVector,
    apply_differential,
    betti_numbers,
    cohomology,
    project_pi_q,
    validate,
)
from .corpus import generate_corpus
from .errors import *  # noqa: F401,F403
from .io import emit_complex, parse_complex, parse_vector
from .linalg import (
    RationalMatrix,
    Subspace,
    image_basis,
    kernel_basis,
    preimage_basis,
    rref,
    subspace_ops,
)
from .lowdegree import double_complex_e2, explicit_spaces, specialize
from .obstruction import decide_vanishing, obstruction_sequence
from .spectral import e_infinity, page, zr_br
from .structure import (
    diagram,
    null_cohomology,
    null_subcomplex,
    pre_modules,
    rho,
    rho_kernel,
    split_cohomology,
    varrho,
    varrho_kernel,
)

__version__ = "0.1.0"
