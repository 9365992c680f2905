"""
An octic with eight fourfold points
===================================

The octic ``(x^2-z^2)^4 + (y^2-w^2)^4 + (z^2-w^2)^4`` is singular exactly at
the eight points ``(+-1 : +-1 : +-1 : 1)``, each a point of multiplicity 4.
Each point contributes the summand ``sat(I(P)^4 + J_F)`` and the equisingular
deformations are the octics in the intersection.
"""

from dcdeform import equisingular_computation, hilbert_polynomial, jacobian_ideal, load_job
from dcdeform.cli import fixture_dir
from dcdeform.ideals import format_hilbert_polynomial

job = load_job(fixture_dir() / "cube.job")
problem = job.problem
print(problem.branch)

# %%
# The Jacobian quotient has a constant Hilbert polynomial: the singular
# locus is zero-dimensional.
print("Hilbert polynomial of R/J:", format_hilbert_polynomial(hilbert_polynomial(jacobian_ideal(problem.branch)).polynomial))

# %%
# Run the count and look at the summands one at a time.
result = equisingular_computation(problem)
for summary in result.per_locus:
    print(f"{summary.name}: quotient dim {summary.quotient_dimension}, basis {summary.basis_size}")
print("dim (R/J)_8   =", result.jacobian_quotient)
print("dim (R/I_eq)_8 =", result.equisingular_quotient)
print("h12 =", result.dimension, " h11 =", result.dimension + problem.euler_number // 2)
