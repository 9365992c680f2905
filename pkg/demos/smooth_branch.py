"""
Counting deformations of a smooth double cover
==============================================

With a smooth branch polynomial every summand disappears and the count is
just the size of the Jacobian quotient in the branch degree.
"""

from math import comb

from dcdeform import DeformationProblem, RingCtx, hilbert_function, jacobian_ideal, hodge_report
from dcdeform import oracles

# A double cover of the plane branched along the Fermat sextic is a K3 surface.
R = RingCtx("xyz")
F = R.parse("x^6 + y^6 + z^6")
J = jacobian_ideal(F)
print("dim (R/J)_6 =", hilbert_function(J, 6))

# The same number by plain linear algebra on the degree-6 piece.
print("oracle      =", oracles.quotient_dimension(J.generators, 3, 6))

# %%
# For the Fermat octic in four variables the partials are pure powers, so
# the quotient is all octic monomials minus the ones divisible by a 7th power.
R4 = RingCtx("xyzt")
octic = R4.parse("x^8 + y^8 + z^8 + t^8")
report = hodge_report(DeformationProblem(R4, octic, 8))
print("h12 =", report.h12, "=", comb(11, 3), "- 16")
print(report.notes["dim_equisingular"])
