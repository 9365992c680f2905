"""Ideals of Q[x_1..x_n]: sums, powers, intersections, elimination,
saturation, and Hilbert functions of graded quotients."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb, prod
from typing import Iterable, Sequence

from .errors import (
    EliminatesAllVariables,
    NegativeExponent,
    NegativeGenus,
    NotACurve,
    NotHomogeneous,
    RingMismatch,
    ZeroInput,
)
from .groebner import GroebnerBasis, groebner_basis
from .ring import DEGREVLEX, LEX, MonomialOrder, Polynomial, RingCtx, elimination, monomials_of_degree


class Ideal:
    """Finitely generated ideal with Groebner bases cached per order.

    Equality is extensional: two ideals are equal iff their reduced
    degrevlex bases coincide.
    """

    def __init__(self, generators: Iterable[Polynomial], ring: RingCtx | None = None):
        gens = tuple(generators)
        if ring is None:
            if not gens:
                raise ValueError("an ideal with no generators needs an explicit ring")
            ring = gens[0].ring
        for g in gens:
            if g.ring != ring:
                raise RingMismatch(f"{g.ring} vs {ring}")
        self.ring = ring
        self.generators = gens
        self._bases = {}

    @classmethod
    def parse(cls, ring: RingCtx, sources: Iterable[str]) -> Ideal:
        return cls([ring.parse(s) for s in sources], ring)

    @classmethod
    def unit(cls, ring: RingCtx) -> Ideal:
        return cls([ring.one()], ring)

    @classmethod
    def zero(cls, ring: RingCtx) -> Ideal:
        return cls([], ring)

    def basis(self, order: MonomialOrder = DEGREVLEX, degree_bound: int | None = None) -> GroebnerBasis:
        """Reduced Groebner basis; with ``degree_bound`` only the members up to
        that degree are computed (homogeneous ideals only)."""
        full = self._bases.get((order, None))
        if full is not None:
            return full
        if degree_bound is not None:
            for (o, b), gb in self._bases.items():
                if o == order and b is not None and b >= degree_bound:
                    return gb
            if not self.is_homogeneous():
                degree_bound = None
        key = (order, degree_bound)
        if key not in self._bases:
            gens = list(self.generators) or [self.ring.zero()]
            self._bases[key] = groebner_basis(gens, order, degree_bound=degree_bound, source=self)
        return self._bases[key]

    def _seed_basis(self, gb: GroebnerBasis):
        self._bases.setdefault((gb.order, gb.degree_bound), gb)

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.generators)

    def is_zero(self) -> bool:
        return all(g.is_zero() for g in self.generators)

    def is_unit(self) -> bool:
        return self.basis().is_unit

    def contains(self, f: Polynomial) -> bool:
        if f.is_zero():
            return True
        bound = f.degree() if (f.is_homogeneous() and self.is_homogeneous()) else None
        return self.basis(DEGREVLEX, bound).contains(f)

    def contains_ideal(self, other: Ideal) -> bool:
        return all(self.contains(g) for g in other.generators)

    def __contains__(self, f):
        return self.contains(f)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        if self.ring != other.ring:
            return False
        return self.basis().generators == other.basis().generators

    def __hash__(self):
        return hash((self.ring, self.basis().generators))

    def __add__(self, other):
        return ideal_sum(self, other)

    def __mul__(self, other):
        return ideal_product(self, other)

    def __pow__(self, m):
        return ideal_power(self, m)

    def __repr__(self):
        return f"Ideal({', '.join(str(g) for g in self.generators)})"


def _check_ring(A: Ideal, B: Ideal):
    if A.ring != B.ring:
        raise RingMismatch(f"{A.ring} vs {B.ring}")


def ideal_sum(A: Ideal, B: Ideal) -> Ideal:
    _check_ring(A, B)
    return Ideal(A.generators + B.generators, A.ring)


def ideal_product(A: Ideal, B: Ideal) -> Ideal:
    _check_ring(A, B)
    return Ideal([a * b for a in A.generators for b in B.generators if a and b], A.ring)


def ideal_power(A: Ideal, m: int) -> Ideal:
    """Ordinary power, generated by all m-fold products of generators."""
    if m < 0:
        raise NegativeExponent(f"negative ideal power {m}")
    if m == 0:
        return Ideal.unit(A.ring)
    gens = [g for g in A.generators if g]
    seen = {}
    for combo in combinations_with_replacement(range(len(gens)), m):
        p = prod((gens[i] for i in combo), start=A.ring.one())
        seen.setdefault(p, None)
    return Ideal(list(seen), A.ring)


# -- elimination ---------------------------------------------------------------


def _fresh_name(ring: RingCtx, stem: str) -> str:
    name = stem
    i = 0
    while name in ring.variables:
        i += 1
        name = f"{stem}{i}"
    return name


def _embed(f: Polynomial, ext: RingCtx, positions: Sequence[int]) -> Polynomial:
    out = {}
    for e, c in f.items():
        new = [0] * ext.n
        for i, x in zip(positions, e):
            new[i] = x
        out[tuple(new)] = c
    return Polynomial._raw(ext, out)


def _restrict(f: Polynomial, ring: RingCtx, positions: Sequence[int]) -> Polynomial:
    return Polynomial._raw(ring, {tuple(e[i] for i in positions): c for e, c in f.items()})


def _eliminate_front(gens, ext: RingCtx, k: int, tail_order: MonomialOrder, degree_bound, grading):
    """Members free of the first k variables of a Groebner basis for an
    elimination order on ``ext``."""
    order = LEX if tail_order == LEX else elimination(k)
    gb = groebner_basis(list(gens) or [ext.zero()], order, degree_bound=degree_bound, grading=grading)
    keep = [g for g in gb.generators if not any(g.uses_variable(i) for i in range(k))]
    return keep, gb


def eliminate(
    A: Ideal,
    variables: Iterable,
    *,
    order: MonomialOrder = DEGREVLEX,
    degree_bound: int | None = None,
) -> Ideal:
    """A intersected with the subring not involving ``variables`` (indices or
    names); the result lives in the same ring."""
    ring = A.ring
    idx = sorted({v if isinstance(v, int) else ring.index(v) for v in variables})
    if not idx:
        return A
    if len(idx) >= ring.n:
        raise EliminatesAllVariables("cannot eliminate every variable")
    rest = [i for i in range(ring.n) if i not in idx]
    perm = idx + rest
    ext = RingCtx([ring.variables[i] for i in perm])
    # positions[i] = where original variable i sits in ext
    positions = [perm.index(i) for i in range(ring.n)]
    gens = [_embed(g, ext, positions) for g in A.generators if g]
    if degree_bound is not None and not A.is_homogeneous():
        raise NotHomogeneous("degree-truncated elimination needs a homogeneous ideal")
    keep, gb = _eliminate_front(gens, ext, len(idx), order, degree_bound, None)
    back = [_restrict(g, ring, positions) for g in keep]
    return Ideal(back, ring)


def ideal_intersection(
    A: Ideal,
    B: Ideal,
    *,
    order: MonomialOrder = DEGREVLEX,
    degree_bound: int | None = None,
) -> Ideal:
    """A ∩ B by eliminating h from h*A + (1-h)*B.

    For homogeneous A, B the helper ideal is homogeneous when h has weight 0,
    which allows truncation at ``degree_bound``: the result then agrees with
    A ∩ B in every degree up to the bound.
    """
    _check_ring(A, B)
    ring = A.ring
    if A.is_zero() or B.is_zero():
        return Ideal.zero(ring)
    if any(a.is_constant() and a for a in A.generators):
        return B
    if any(b.is_constant() and b for b in B.generators):
        return A
    h = _fresh_name(ring, "h")
    ext = RingCtx((h,) + ring.variables)
    positions = list(range(1, ring.n + 1))
    hv = ext.gen(0)
    one = ext.one()
    gens = [hv * _embed(a, ext, positions) for a in A.generators if a]
    gens += [(one - hv) * _embed(b, ext, positions) for b in B.generators if b]
    homogeneous = A.is_homogeneous() and B.is_homogeneous()
    if degree_bound is not None and not homogeneous:
        raise NotHomogeneous("degree-truncated intersection needs homogeneous ideals")
    grading = (0,) + (1,) * ring.n if homogeneous else None
    keep, gb = _eliminate_front(gens, ext, 1, order, degree_bound, grading)
    back = [_restrict(g, ring, positions) for g in keep]
    result = Ideal(back, ring)
    # the h-free part of a reduced elimination basis is the reduced basis of the contraction
    restricted = LEX if order == LEX else DEGREVLEX
    result._seed_basis(
        GroebnerBasis(ring, restricted, sorted(back, key=lambda p: restricted.key(p.leading_monomial(restricted))),
                      degree_bound, None, gb.stats, result)
    )
    return result


def intersect_all(ideals: Sequence[Ideal], **kwargs) -> Ideal:
    if not ideals:
        raise ValueError("need at least one ideal")
    acc = ideals[0]
    for other in ideals[1:]:
        acc = ideal_intersection(acc, other, **kwargs)
    return acc


def saturation(A: Ideal, f: Polynomial) -> Ideal:
    """A : f^∞ via A + (1 - w*f) and elimination of w."""
    if f.is_zero():
        raise ZeroInput("cannot saturate by zero")
    if f.ring != A.ring:
        raise RingMismatch(f"{f.ring} vs {A.ring}")
    ring = A.ring
    if f.is_constant():
        return Ideal(A.generators, ring)
    w = _fresh_name(ring, "w")
    ext = RingCtx((w,) + ring.variables)
    positions = list(range(1, ring.n + 1))
    gens = [_embed(a, ext, positions) for a in A.generators if a]
    gens.append(ext.one() - ext.gen(0) * _embed(f, ext, positions))
    keep, _ = _eliminate_front(gens, ext, 1, DEGREVLEX, None, None)
    return Ideal([_restrict(g, ring, positions) for g in keep], ring)


def variable_saturation(A: Ideal, i: int) -> Ideal:
    """A : x_i^∞ for homogeneous A.

    With x_i last in degrevlex, a basis of A divided by the largest possible
    powers of x_i generates the saturation.
    """
    _require_homogeneous(A)
    ring = A.ring
    rest = [j for j in range(ring.n) if j != i]
    perm = RingCtx([ring.variables[j] for j in rest] + [ring.variables[i]])
    positions = [0] * ring.n
    for k, j in enumerate(rest + [i]):
        positions[j] = k
    gb = groebner_basis([_embed(a, perm, positions) for a in A.generators] or [perm.zero()], DEGREVLEX)
    last = ring.n - 1
    out = []
    for g in gb.generators:
        k = min(e[last] for e in g.monomials())
        if k:
            g = Polynomial._raw(perm, {e[:last] + (e[last] - k,): c for e, c in g.items()})
        out.append(_restrict(g, ring, positions))
    return Ideal(out, ring)


def irrelevant_saturation(A: Ideal) -> Ideal:
    """A : (x_1,..,x_n)^∞, the largest ideal with the same ideal sheaf.

    Its degree-d piece is the space of global sections of the sheaf of A
    twisted by d.
    """
    _require_homogeneous(A)
    if A.is_zero() or A.is_unit():
        return Ideal(A.generators, A.ring)
    parts = [P for P in (variable_saturation(A, i) for i in range(A.ring.n)) if not P.is_unit()]
    if not parts:
        return Ideal.unit(A.ring)
    return intersect_all(parts)


def symbolic_power(A: Ideal, m: int, f: Polynomial) -> Ideal:
    """Saturation-based symbolic power sat(A^m, f); ``f`` must be a
    non-zero-divisor on the components of A."""
    return saturation(ideal_power(A, m), f)


# -- Hilbert functions ---------------------------------------------------------


def _require_homogeneous(A: Ideal):
    if not A.is_homogeneous():
        raise NotHomogeneous(f"{A} is not homogeneous")


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def count_standard_monomials(leading: Sequence[tuple], ring: RingCtx, d: int) -> int:
    return sum(
        1 for m in monomials_of_degree(ring, d) if not any(_divides(lm, m) for lm in leading)
    )


def hilbert_function(A: Ideal, d: int, order: MonomialOrder = DEGREVLEX) -> int:
    """dim_Q (R/A)_d, counted as degree-d standard monomials."""
    _require_homogeneous(A)
    if d < 0:
        return 0
    gb = A.basis(order, degree_bound=d)
    lms = [lm for lm in gb.leading_monomials() if sum(lm) <= d]
    return count_standard_monomials(lms, A.ring, d)


def _minimalize(mons):
    mons = sorted(set(mons), key=sum)
    out = []
    for m in mons:
        if not any(_divides(g, m) for g in out):
            out.append(m)
    return out


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_add(a, b):
    out = [0] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] += x
    return out


def hilbert_numerator(leading: Sequence[tuple]) -> list:
    """Numerator N(t) (ascending coefficients) with HS(R/M) = N(t)/(1-t)^n
    for the monomial ideal M generated by ``leading``."""
    gens = _minimalize(leading)
    if not gens:
        return [1]
    if any(sum(g) == 0 for g in gens):
        return [0]
    # pairwise coprime generators: N = prod (1 - t^deg)
    if all(
        not any(a and b for a, b in zip(gens[i], gens[j]))
        for i in range(len(gens))
        for j in range(i + 1, len(gens))
    ):
        out = [1]
        for g in gens:
            out = _poly_mul(out, [1] + [0] * (sum(g) - 1) + [-1])
        return out
    # pivot on a variable of a generator sharing support with another
    n = len(gens[0])
    counts = [sum(1 for g in gens if g[i]) for i in range(n)]
    var = max(range(n), key=lambda i: counts[i])
    exps = sorted(g[var] for g in gens if g[var])
    e = exps[(len(exps) - 1) // 2]
    pivot = tuple(e if i == var else 0 for i in range(n))
    with_pivot = hilbert_numerator(gens + [pivot])
    quotient = [tuple(max(0, a - b) for a, b in zip(g, pivot)) for g in gens]
    colon = hilbert_numerator(quotient)
    return _poly_add(with_pivot, [0] * e + colon)


def _trim(p):
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _binomial_poly(shift: int, k: int) -> list:
    """Coefficients (ascending, Fractions) of t -> C(t - shift + k - 1, k - 1)."""
    out = [Fraction(1)]
    for j in range(1, k):
        # multiply by (t - shift + j) / j
        nxt = [Fraction(0)] * (len(out) + 1)
        for i, c in enumerate(out):
            nxt[i + 1] += c / j
            nxt[i] += c * (j - shift) / j
        out = nxt
    return out


@dataclass
class HilbertData:
    """Hilbert function values, eventual Hilbert polynomial (ascending
    Fraction coefficients in t) and the degree from which they agree."""

    values: dict
    polynomial: list
    regularity_bound: int
    dimension: int
    numerator: list = field(default_factory=list)

    def __call__(self, t: int) -> Fraction:
        return evaluate_polynomial(self.polynomial, t)

    @property
    def degree(self) -> int:
        p = _trim(self.polynomial)
        return -1 if p == [0] else len(p) - 1


def evaluate_polynomial(coeffs, t) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * t + c
    return acc


def hilbert_polynomial(A: Ideal) -> HilbertData:
    """Exact Hilbert polynomial of R/A from the Hilbert series numerator of
    the leading-term ideal."""
    _require_homogeneous(A)
    ring = A.ring
    lms = A.basis().leading_monomials()
    num = _trim(hilbert_numerator(lms))
    k = ring.n
    # cancel (1 - t) factors: Krull dimension k of R/A
    while k > 0 and sum(num) == 0 and num != [0]:
        q = []
        acc = 0
        for c in num[:-1]:
            acc += c
            q.append(acc)
        num = _trim(q) if q else [0]
        k -= 1
    if num == [0]:
        k = 0
    poly = [Fraction(0)] * max(k, 1)
    if k > 0:
        for i, c in enumerate(num):
            if c:
                poly = [a + c * b for a, b in zip(poly, _binomial_poly(i, k))]
    poly = _trim(poly)
    reg = max(0, len(num) - k)
    values = {d: count_standard_monomials(lms, ring, d) for d in range(reg + ring.n + 1)}
    return HilbertData(values, poly, reg, k, num)


def curve_genus(A: Ideal, node_count: int = 0) -> int:
    """Geometric genus p_a - nodes of the curve cut out by the saturated ideal A,
    where P(t) = deg*t + (1 - p_a)."""
    if node_count < 0:
        raise ValueError("node_count must be nonnegative")
    data = hilbert_polynomial(A)
    if data.degree != 1 or data.polynomial[1] <= 0:
        raise NotACurve(f"Hilbert polynomial {format_hilbert_polynomial(data.polynomial)} is not linear")
    p_a = 1 - data.polynomial[0]
    if p_a.denominator != 1:
        raise NotACurve(f"non-integral arithmetic genus {p_a}")
    g = int(p_a) - node_count
    if g < 0:
        raise NegativeGenus(f"arithmetic genus {p_a} minus {node_count} nodes is negative")
    return g


def format_hilbert_polynomial(coeffs) -> str:
    parts = []
    for i in reversed(range(len(coeffs))):
        c = coeffs[i]
        if not c:
            continue
        mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
        s = str(c) if (mono == "" or abs(c) != 1) else ("-" if c < 0 else "")
        if mono and s not in ("", "-"):
            s += "*"
        parts.append(s + mono)
    return " + ".join(parts).replace("+ -", "- ") or "0"


def graded_dimension(A: Ideal, d: int) -> int:
    """dim_Q A_d = dim R_d - dim (R/A)_d."""
    n = A.ring.n
    return comb(d + n - 1, n - 1) - hilbert_function(A, d)
