"""
Two surfaces meeting along a curve
==================================

Branching along the union of two smooth surfaces of degrees d1 and d2 gives
a double curve. Its equisingular deformations are products ``q1' q2'``, so
the count is ``C(d1+3,3) + C(d2+3,3) - 17``.
"""

from math import comb

from dcdeform import (
    DeformationProblem,
    RingCtx,
    SingularLocus,
    TransverseCurve,
    curve_genus,
    equisingular_dimension,
)
from dcdeform.deform import section_count

R = RingCtx("xyzt")
q1 = R.parse("x^2 + y^2 + z^2 + t^2")

for q2 in (R.parse("x^2 + 2*y^2 + 3*z^2 + 4*t^2"), R.parse("x^4 + y^4 + z^4 + t^4 + x*y*z*t")):
    d1, d2 = q1.degree(), q2.degree()
    locus = SingularLocus("C", (q1, q2), 2)
    problem = DeformationProblem(R, q1 * q2, d1 + d2, (locus,))
    print(f"({d1},{d2}): computed {equisingular_dimension(problem)}, "
          f"closed form {comb(d1 + 3, 3) + comb(d2 + 3, 3) - 17}")

# %%
# Two quadrics meet in an elliptic quartic curve. Blowing it up adds its
# genus to h12, and sections of O_C(2) number 8.
C = TransverseCurve("C", (q1, R.parse("x^2 + 2*y^2 + 3*z^2 + 4*t^2")))
print("genus", curve_genus(C.ideal(), 0), " sections of O_C(2):", section_count(C, 2))

# %%
# Keeping the raw graded summand ``I(C)^2 + J`` instead of its saturation
# loses a quartic, so the count drops to 2.
graded = DeformationProblem(R, q1 * C.generators[1], 4, (SingularLocus("C", C.generators, 2),), saturate=False)
print("unsaturated summand:", equisingular_dimension(graded))
