"""Brute-force graded linear algebra, independent of the Groebner kernel.

Everything here works on the finite-dimensional space R_d of degree-d forms,
with monomials as coordinates and exact Fraction arithmetic. These routines
are slow and only meant as cross-checks on small instances.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb
from typing import Iterable, Sequence


def _monomials(n: int, d: int) -> list:
    out = []
    for combo in combinations_with_replacement(range(n), d):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return sorted(out, reverse=True)


class Echelon:
    """Incrementally built reduced row-echelon basis of a subspace of Q^dim.

    Rows are sparse dicts column -> Fraction with pivot coefficient 1.
    """

    def __init__(self, dim: int):
        self.dim = dim
        self.rows = {}  # pivot column -> row

    def reduce(self, vec: dict) -> dict:
        v = {c: Fraction(x) for c, x in vec.items() if x}
        # eliminate pivots in increasing column order
        while True:
            cols = [c for c in v if c in self.rows]
            if not cols:
                return v
            c = min(cols)
            factor = v[c]
            for cc, x in self.rows[c].items():
                y = v.get(cc, 0) - factor * x
                if y:
                    v[cc] = y
                else:
                    v.pop(cc, None)

    def add(self, vec: dict) -> bool:
        v = self.reduce(vec)
        if not v:
            return False
        p = min(v)
        inv = 1 / v[p]
        v = {c: x * inv for c, x in v.items()}
        # keep rows fully reduced
        for q, row in self.rows.items():
            if p in row:
                f = row[p]
                for c, x in v.items():
                    y = row.get(c, 0) - f * x
                    if y:
                        row[c] = y
                    else:
                        row.pop(c, None)
        self.rows[p] = v
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)

    def complement(self) -> list:
        """Basis of the orthogonal complement (standard dot product)."""
        out = []
        for f in range(self.dim):
            if f in self.rows:
                continue
            v = {f: Fraction(1)}
            for p, row in self.rows.items():
                if f in row:
                    v[p] = -row[f]
            out.append(v)
        return out


def poly_vector(f, index: dict) -> dict:
    """Coordinates of a homogeneous polynomial in the monomial basis."""
    return {index[e]: c for e, c in f.items()}


def graded_piece(gens: Iterable, n: int, d: int) -> Echelon:
    """(I)_d for a homogeneous ideal I given by generators."""
    mons = _monomials(n, d)
    index = {m: i for i, m in enumerate(mons)}
    ech = Echelon(len(mons))
    for g in gens:
        if g.is_zero():
            continue
        k = d - g.degree()
        if k < 0:
            continue
        if not g.is_homogeneous():
            raise ValueError("graded oracle needs homogeneous generators")
        for m in _monomials(n, k):
            vec = {}
            for e, c in g.items():
                vec[index[tuple(a + b for a, b in zip(e, m))]] = c
            ech.add(vec)
    return ech


def graded_dimension(gens, n: int, d: int) -> int:
    return graded_piece(gens, n, d).rank


def quotient_dimension(gens, n: int, d: int) -> int:
    return comb(d + n - 1, n - 1) - graded_dimension(gens, n, d)


def intersection_dimension(gen_lists: Sequence, n: int, d: int) -> int:
    """dim (∩ I_j)_d = dim R_d - rank of the stacked orthogonal complements."""
    total = comb(d + n - 1, n - 1)
    comp = Echelon(total)
    for gens in gen_lists:
        for v in graded_piece(gens, n, d).complement():
            comp.add(v)
    return total - comp.rank


def intersection_piece(gen_lists: Sequence, n: int, d: int) -> Echelon:
    """(∩ I_j)_d as an echelon basis."""
    total = comb(d + n - 1, n - 1)
    comp = Echelon(total)
    for gens in gen_lists:
        for v in graded_piece(gens, n, d).complement():
            comp.add(v)
    out = Echelon(total)
    for v in comp.complement():
        out.add(v)
    return out


def member_in_degree(f, gens, n: int) -> bool:
    """Is the homogeneous f in the ideal generated by gens (degree-wise test)?"""
    if f.is_zero():
        return True
    d = f.degree()
    mons = _monomials(n, d)
    index = {m: i for i, m in enumerate(mons)}
    return graded_piece(gens, n, d).contains(poly_vector(f, index))


def monomial_quotient_count(monomial_gens: Sequence[tuple], n: int, d: int) -> int:
    """Count degree-d monomials outside a monomial ideal, by enumeration."""
    return sum(
        1
        for m in _monomials(n, d)
        if not any(all(a <= b for a, b in zip(g, m)) for g in monomial_gens)
    )


def fit_hilbert_polynomial(values: Sequence[int], start: int, n: int):
    """Fit a polynomial of degree < n through values[start:start+n] by
    Newton forward differences; return ascending Fraction coefficients."""
    pts = list(range(start, start + n))
    ys = [Fraction(values[t]) for t in pts]
    # Newton divided differences
    coef = ys[:]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (pts[i] - pts[i - j])
    poly = [Fraction(0)]
    for i in reversed(range(n)):
        # poly = poly * (t - pts[i]) + coef[i]
        nxt = [Fraction(0)] * (len(poly) + 1)
        for k, c in enumerate(poly):
            nxt[k + 1] += c
            nxt[k] -= c * pts[i]
        nxt[0] += coef[i]
        poly = nxt
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    return poly


def windowed_hilbert_polynomial(hf, n: int, max_degree: int = 40):
    """Stabilisation heuristic: accept the fit through n consecutive values
    once the next n values also agree. ``hf`` maps degree -> value."""
    values = [hf(d) for d in range(2 * n)]
    for start in range(0, max_degree):
        while len(values) < start + 2 * n:
            values.append(hf(len(values)))
        poly = fit_hilbert_polynomial(values, start, n)
        ok = all(
            sum(c * t**k for k, c in enumerate(poly)) == values[t]
            for t in range(start + n, start + 2 * n)
        )
        if ok:
            return poly, start
    raise RuntimeError("Hilbert function did not stabilise")
