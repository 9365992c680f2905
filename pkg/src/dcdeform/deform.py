"""Equisingular and transverse deformation counts for double covers.

For a branch hypersurface F = 0 of even degree d in P^N, resolved by blowing
up centres C_i with multiplicities m_i, the equisingular deformations are the
degree-d forms of I_eq / J_F where

    I_eq = ∩_i ( I(C_i)^{m_i} + J_F^i ),

J_F is the Jacobian ideal and J_F^i a Jacobian ideal whose partials may be
divided by monomials (vector fields such as (1/y) d/dy that lift to the
blow-up). Each summand is replaced by its saturation with respect to
(x_0,..,x_N) by default, so that its degree-d piece is the space of global
sections of the corresponding ideal sheaf. Transverse deformations of a
crepant resolution of a double octic count the genera of the blown-up
curves, and h^{1,2} is the sum of both.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from math import comb
from typing import Mapping, Sequence

from .errors import (
    JacobianNotContained,
    NotACurve,
    NotDivisible,
    NotHomogeneous,
    OddEulerNumber,
    RingMismatch,
    ZeroInput,
)
from .ideals import (
    Ideal,
    curve_genus,
    hilbert_function,
    hilbert_polynomial,
    ideal_power,
    ideal_sum,
    intersect_all,
    irrelevant_saturation,
    symbolic_power,
)
from .ring import DEGREVLEX, MonomialOrder, Polynomial, RingCtx, exact_divide, partial_derivative

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class JacobianRule:
    """Per-variable monomial divisors for the partial derivatives.

    An empty rule keeps every raw partial and reproduces J_F.
    """

    divisors: tuple = ()  # ((variable index, Polynomial monomial), ...) sorted by index

    @classmethod
    def from_mapping(cls, ring: RingCtx, mapping: Mapping) -> JacobianRule:
        items = []
        for var, div in mapping.items():
            i = var if isinstance(var, int) else ring.index(var)
            if isinstance(div, str):
                div = ring.parse(div)
            if len(div) != 1 or div.degree() < 1:
                raise ValueError(f"divisor for {ring.variables[i]} must be a monomial of positive degree, got {div}")
            items.append((i, div.monic()))
        return cls(tuple(sorted(items, key=lambda t: t[0])))

    def divisor(self, i: int) -> Polynomial | None:
        for j, d in self.divisors:
            if j == i:
                return d
        return None

    def as_mapping(self, ring: RingCtx) -> dict:
        return {ring.variables[i]: str(d) for i, d in self.divisors}

    def __bool__(self):
        return bool(self.divisors)


STANDARD_RULE = JacobianRule()


@dataclass(frozen=True)
class SingularLocus:
    """One blow-up centre: generators of I(C), multiplicity m and the
    Jacobian rule used for its summand."""

    name: str
    generators: tuple
    multiplicity: int
    rule: JacobianRule = STANDARD_RULE
    saturate_by: Polynomial | None = None

    def __post_init__(self):
        if self.multiplicity < 1:
            raise ValueError(f"locus {self.name}: multiplicity must be positive")
        if not self.generators:
            raise ValueError(f"locus {self.name}: no generators")
        for g in self.generators:
            if not g.is_homogeneous():
                raise NotHomogeneous(f"locus {self.name}: generator {g} is not homogeneous")

    def ideal(self) -> Ideal:
        return Ideal(self.generators)


@dataclass(frozen=True)
class TransverseCurve:
    name: str
    generators: tuple
    node_count: int = 0

    def __post_init__(self):
        if self.node_count < 0:
            raise ValueError(f"curve {self.name}: node_count must be nonnegative")

    def ideal(self) -> Ideal:
        return Ideal(self.generators)


@dataclass(frozen=True)
class DeformationProblem:
    ring: RingCtx
    branch: Polynomial
    degree: int
    loci: tuple = ()
    transverse_curves: tuple = ()
    euler_number: int | None = None
    symbolic_powers: bool = False
    metadata: tuple = ()  # (key, value) pairs carried verbatim into reports
    saturate: bool = True  # replace each summand by its irrelevant saturation

    def __post_init__(self):
        if self.branch.ring != self.ring:
            raise RingMismatch("branch polynomial is not in the problem ring")
        if self.branch.is_zero() or not self.branch.is_homogeneous():
            raise NotHomogeneous("branch polynomial must be a nonzero form")
        if self.branch.degree() != self.degree:
            raise ValueError(f"declared degree {self.degree} but branch has degree {self.branch.degree()}")
        if self.degree % 2:
            raise ValueError(f"branch degree {self.degree} is odd; no double cover exists")
        for item in self.loci + self.transverse_curves:
            for g in item.generators:
                if g.ring != self.ring:
                    raise RingMismatch(f"{item.name}: generator outside the problem ring")


@dataclass
class LocusSummary:
    name: str
    multiplicity: int
    rule: dict
    power_generators: int
    jacobian_generators: int
    basis_size: int
    quotient_dimension: int  # dim (R / summand)_d

    def as_dict(self) -> dict:
        return dict(self.__dict__)


@dataclass
class HodgeReport:
    dim_equisingular: int
    dim_transverse: int
    h12: int
    h11: int | None = None
    euler_number: int | None = None
    notes: dict = field(default_factory=dict)
    per_locus: list = field(default_factory=list)
    stats: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)


# -- Jacobian ideals -------------------------------------------------------------


def jacobian_ideal(F: Polynomial) -> Ideal:
    if F.is_zero() or F.is_constant():
        raise ZeroInput("Jacobian ideal needs a form of positive degree")
    return Ideal([partial_derivative(F, i) for i in range(F.ring.n)], F.ring)


def scaled_partials(F: Polynomial, rule: JacobianRule) -> list:
    out = []
    for i in range(F.ring.n):
        p = partial_derivative(F, i)
        div = rule.divisor(i)
        if div is not None:
            try:
                p = exact_divide(p, div)
            except NotDivisible:
                name = F.ring.variables[i]
                raise NotDivisible(
                    f"d/d{name} of the branch polynomial is not divisible by {div}", variable=name
                ) from None
        out.append(p)
    return out


def scaled_jacobian(F: Polynomial, rule: JacobianRule) -> Ideal:
    """Ideal of the partials of F, each divided exactly by its rule divisor."""
    if F.is_zero() or F.is_constant():
        raise ZeroInput("Jacobian ideal needs a form of positive degree")
    return Ideal(scaled_partials(F, rule), F.ring)


# -- equisingular part -------------------------------------------------------------


def locus_power(problem: DeformationProblem, locus: SingularLocus) -> Ideal:
    I = locus.ideal()
    if problem.symbolic_powers and locus.saturate_by is not None:
        return symbolic_power(I, locus.multiplicity, locus.saturate_by)
    return ideal_power(I, locus.multiplicity)


def summand_ideal(problem: DeformationProblem, locus: SingularLocus) -> Ideal:
    """I(C)^m + J_F^rule for one locus, saturated unless the problem says not to."""
    S = ideal_sum(locus_power(problem, locus), scaled_jacobian(problem.branch, locus.rule))
    return irrelevant_saturation(S) if problem.saturate else S


def equisingular_ideal(
    problem: DeformationProblem,
    *,
    order: MonomialOrder = DEGREVLEX,
    degree_bound: int | None = None,
) -> Ideal:
    """I_eq as the intersection of the locus summands; the unit ideal when
    there are no loci. With ``degree_bound`` the result is only guaranteed to
    agree with I_eq up to that degree."""
    if not problem.loci:
        return Ideal.unit(problem.ring)
    summands = [summand_ideal(problem, L) for L in problem.loci]
    return intersect_all(summands, order=order, degree_bound=degree_bound)


@dataclass
class EquisingularResult:
    dimension: int
    jacobian_quotient: int  # dim (R/J_F)_d
    equisingular_quotient: int  # dim (R/I_eq)_d
    ideal: Ideal
    per_locus: list
    stats: dict


def equisingular_computation(
    problem: DeformationProblem, *, order: MonomialOrder = DEGREVLEX, truncate: bool = True
) -> EquisingularResult:
    """dim (I_eq / J_F)_d with the containment J_F ⊆ I_eq checked per summand."""
    d = problem.degree
    bound = d if truncate else None
    ring = problem.ring
    J = jacobian_ideal(problem.branch)
    raw = list(J.generators)
    hj = hilbert_function(J, d, order)
    per_locus = []
    summands = []
    for L in problem.loci:
        power = locus_power(problem, L)
        S = ideal_sum(power, scaled_jacobian(problem.branch, L.rule))
        gb = S.basis(order, degree_bound=bound)
        for p in raw:
            if p and not gb.contains(p):
                raise JacobianNotContained(
                    f"locus {L.name}: a partial derivative of F is not in its summand ideal",
                    locus=L.name,
                )
        if problem.saturate:
            S = irrelevant_saturation(S)
            gb = S.basis(order, degree_bound=bound)
        summands.append(S)
        per_locus.append(
            LocusSummary(
                name=L.name,
                multiplicity=L.multiplicity,
                rule=L.rule.as_mapping(ring),
                power_generators=len(power.generators),
                jacobian_generators=ring.n,
                basis_size=len(gb),
                quotient_dimension=hilbert_function(S, d, order),
            )
        )
        log.info("locus %s: summand basis has %d members", L.name, len(gb))
    if summands:
        I_eq = intersect_all(summands, order=order, degree_bound=bound)
    else:
        I_eq = Ideal.unit(ring)
    hi = hilbert_function(I_eq, d, order)
    dim = hj - hi
    if dim < 0:
        raise JacobianNotContained("J_F is not contained in I_eq in degree d")
    stats = {
        "jacobian_basis_size": len(J.basis(order, degree_bound=bound)),
        "equisingular_basis_size": len(I_eq.basis(order, degree_bound=bound)),
        "equisingular_generators": len(I_eq.generators),
        "degree_bound": bound,
    }
    return EquisingularResult(dim, hj, hi, I_eq, per_locus, stats)


def equisingular_dimension(problem: DeformationProblem, *, order: MonomialOrder = DEGREVLEX) -> int:
    return equisingular_computation(problem, order=order).dimension


# -- transverse part -----------------------------------------------------------------


def _require_p3(problem: DeformationProblem):
    if problem.ring.n != 4:
        raise ValueError("transverse counts are only supported for double covers of P^3 (4 variables)")


def check_curve(curve: TransverseCurve):
    data = hilbert_polynomial(curve.ideal())
    if data.degree != 1:
        raise NotACurve(f"curve {curve.name} does not define a curve (Hilbert polynomial degree {data.degree})")
    return data


def transverse_dimension(problem: DeformationProblem) -> int:
    """Sum of geometric genera of the blown-up curves (crepant threefold case)."""
    _require_p3(problem)
    total = 0
    for curve in problem.transverse_curves:
        check_curve(curve)
        total += curve_genus(curve.ideal(), curve.node_count)
    return total


def section_count(curve: TransverseCurve, k: int) -> int:
    """dim of degree-k forms restricted to the curve, i.e. HF(R/I_C, k);
    equals h^0 O_C(k) for projectively normal curves."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    check_curve(curve)
    return hilbert_function(curve.ideal(), k)


# -- assembly ------------------------------------------------------------------------


def hodge_report(
    problem: DeformationProblem, *, order: MonomialOrder = DEGREVLEX, truncate: bool = True
) -> HodgeReport:
    _require_p3(problem)
    if problem.euler_number is not None and problem.euler_number % 2:
        raise OddEulerNumber(f"Euler number {problem.euler_number} is odd")
    t0 = time.perf_counter()
    eq = equisingular_computation(problem, order=order, truncate=truncate)
    t1 = time.perf_counter()
    tr = transverse_dimension(problem)
    t2 = time.perf_counter()
    d = problem.degree
    n = problem.ring.n
    h12 = eq.dimension + tr
    notes = {
        "dim_equisingular": (
            f"dim (I_eq/J_F)_{d} = dim(R/J_F)_{d} - dim(R/I_eq)_{d} = "
            f"{eq.jacobian_quotient} - {eq.equisingular_quotient}"
            + ("" if problem.loci else "; smooth-branch mode, I_eq=(1)")
        ),
        "dim_transverse": "sum of geometric genera of blown-up curves"
        + (": " + " + ".join(f"g({c.name})" for c in problem.transverse_curves) if problem.transverse_curves else ": none"),
        "h12": f"h12 = dim_equisingular + dim_transverse = {eq.dimension} + {tr}",
    }
    h11 = None
    if problem.euler_number is not None:
        h11 = h12 + problem.euler_number // 2
        notes["h11"] = f"h11 = h12 + e/2 = {h12} + ({problem.euler_number})/2"
    eq.stats["monomials_in_degree"] = comb(d + n - 1, n - 1)
    return HodgeReport(
        dim_equisingular=eq.dimension,
        dim_transverse=tr,
        h12=h12,
        h11=h11,
        euler_number=problem.euler_number,
        notes=notes,
        per_locus=[s.as_dict() for s in eq.per_locus],
        stats=eq.stats,
        timings={"equisingular_s": round(t1 - t0, 3), "transverse_s": round(t2 - t1, 3)},
    )


def point_ideal_generators(ring: RingCtx, point: Sequence) -> list:
    """Linear forms cutting out a point of projective space."""
    from fractions import Fraction

    p = [Fraction(c) for c in point]
    if len(p) != ring.n or not any(p):
        raise ValueError(f"bad projective point {point}")
    j = max(i for i, c in enumerate(p) if c)
    xs = ring.gens()
    return [xs[i].scale(p[j]) - xs[j].scale(p[i]) for i in range(ring.n) if i != j]
