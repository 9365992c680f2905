"""Exact commutative algebra for deformations of double covers.

The core pieces are exact polynomials over Q (``ring``), Buchberger bases
(``groebner``), ideal operations and Hilbert functions (``ideals``) and the
equisingular/transverse counts for double covers (``deform``).

>>> from dcdeform import RingCtx, jacobian_ideal, hilbert_function
>>> R = RingCtx("xyz")
>>> hilbert_function(jacobian_ideal(R.parse("x^6 + y^6 + z^6")), 6)
19
"""

__version__ = "0.1.0"

from .errors import *  # noqa: F401,F403
from .ring import (
    DEGREVLEX,
    LEX,
    MonomialOrder,
    Polynomial,
    RingCtx,
    determinant,
    elimination,
    evaluate,
    exact_divide,
    format_poly,
    monomials_of_degree,
    parse_poly,
    partial_derivative,
    substitute_linear,
)
from .groebner import (
    GroebnerBasis,
    groebner_basis,
    ideal_member,
    is_reduced,
    normal_form,
    s_polynomial,
    verify_certificate,
)
from .ideals import (
    HilbertData,
    Ideal,
    curve_genus,
    eliminate,
    hilbert_function,
    hilbert_polynomial,
    ideal_intersection,
    ideal_power,
    ideal_product,
    ideal_sum,
    intersect_all,
    saturation,
    symbolic_power,
)
from .deform import (
    DeformationProblem,
    HodgeReport,
    JacobianRule,
    SingularLocus,
    TransverseCurve,
    equisingular_computation,
    equisingular_dimension,
    equisingular_ideal,
    hodge_report,
    jacobian_ideal,
    point_ideal_generators,
    scaled_jacobian,
    section_count,
    transverse_dimension,
)
from .jobs import Job, JobOptions, dump_job, load_job, parse_job
