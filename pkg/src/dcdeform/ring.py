"""Exact multivariate polynomials over the rationals.

Monomials are exponent tuples. A :class:`Polynomial` keeps a dict from
exponent tuple to nonzero :class:`~fractions.Fraction`; term order only
matters for printing and for the Groebner kernel, which asks a
:class:`MonomialOrder` for an integer sort key.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb
from numbers import Rational
from typing import Iterable, Sequence

from .errors import (
    DivideByZero,
    NegativeExponent,
    NotDivisible,
    PolynomialSyntaxError,
    RingMismatch,
    SingularMatrix,
    UnknownVariable,
)

Monomial = tuple  # tuple[int, ...] of length ring.n

_NAME_RE = re.compile(r"[a-zA-Z][a-zA-Z0-9_]*\Z")
MAX_VARIABLES = 16

# radix for packing order rows into one integer key; rows stay below _BASE // 2
_BASE = 1 << 24


@dataclass(frozen=True)
class RingCtx:
    """Polynomial ring Q[variables] with a fixed variable order."""

    variables: tuple

    def __init__(self, variables: Iterable[str]):
        names = tuple(variables)
        if not names:
            raise ValueError("a ring needs at least one variable")
        if len(names) > MAX_VARIABLES:
            raise ValueError(f"at most {MAX_VARIABLES} variables are supported")
        for v in names:
            if not isinstance(v, str) or not _NAME_RE.match(v):
                raise ValueError(f"invalid variable name {v!r}")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        object.__setattr__(self, "variables", names)

    @property
    def n(self) -> int:
        return len(self.variables)

    def index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise UnknownVariable(f"unknown variable {name!r}; ring has {self.variables}") from None

    def gen(self, var) -> Polynomial:
        i = var if isinstance(var, int) else self.index(var)
        e = [0] * self.n
        e[i] = 1
        return Polynomial(self, {tuple(e): 1})

    def gens(self) -> list:
        return [self.gen(i) for i in range(self.n)]

    def zero(self) -> Polynomial:
        return Polynomial(self, {})

    def one(self) -> Polynomial:
        return self.const(1)

    def const(self, c) -> Polynomial:
        return Polynomial(self, {(0,) * self.n: c})

    def monomial(self, exps: Sequence[int], coeff=1) -> Polynomial:
        return Polynomial(self, {tuple(exps): coeff})

    def parse(self, src: str) -> Polynomial:
        return parse_poly(src, self)

    def __repr__(self):
        return f"RingCtx({', '.join(self.variables)})"


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order given by an integer weight matrix.

    ``kind`` is ``"lex"``, ``"degrevlex"`` or ``"elimination"``; the last one
    is the product order (degrevlex on the first ``k`` variables, then
    degrevlex on the rest), which eliminates the first ``k`` variables.
    """

    kind: str = "degrevlex"
    k: int = 0

    def __post_init__(self):
        if self.kind not in ("lex", "degrevlex", "elimination"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind == "elimination" and self.k < 1:
            raise ValueError("elimination order needs k >= 1")

    def rows(self, n: int) -> list:
        if self.kind == "lex":
            return [tuple(int(i == j) for j in range(n)) for i in range(n)]
        if self.kind == "degrevlex":
            return _degrevlex_rows(0, n, n)
        if self.k >= n:
            raise ValueError(f"cannot eliminate {self.k} of {n} variables")
        return _degrevlex_rows(0, self.k, n) + _degrevlex_rows(self.k, n, n)

    def weights(self, n: int) -> tuple:
        return _packed_weights(self, n)

    def key(self, exps: Sequence[int]) -> int:
        """Integer sort key; larger key means larger monomial, and
        ``key(a*b) == key(a) + key(b)``."""
        return sum(w * e for w, e in zip(self.weights(len(exps)), exps))

    def compare(self, a: Sequence[int], b: Sequence[int]) -> int:
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def __str__(self):
        return f"elimination({self.k})" if self.kind == "elimination" else self.kind


def _degrevlex_rows(lo, hi, n):
    rows = [tuple(int(lo <= j < hi) for j in range(n))]
    for i in range(hi - 1, lo, -1):
        rows.append(tuple(-int(j == i) for j in range(n)))
    return rows


@lru_cache(maxsize=None)
def _packed_weights(order: MonomialOrder, n: int) -> tuple:
    rows = order.rows(n)
    r = len(rows)
    return tuple(
        sum(row[j] * _BASE ** (r - 1 - i) for i, row in enumerate(rows)) for j in range(n)
    )


LEX = MonomialOrder("lex")
DEGREVLEX = MonomialOrder("degrevlex")


def elimination(k: int) -> MonomialOrder:
    return MonomialOrder("elimination", k)


def order_from_name(name: str) -> MonomialOrder:
    if name in ("degrevlex", "dp", "grevlex"):
        return DEGREVLEX
    if name in ("lex", "lp"):
        return LEX
    m = re.fullmatch(r"elimination\((\d+)\)", name)
    if m:
        return elimination(int(m.group(1)))
    raise ValueError(f"unknown monomial order {name!r}")


def _coerce_coeff(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    # gmpy2.mpq and friends expose numerator/denominator
    try:
        return Fraction(int(c.numerator), int(c.denominator))
    except AttributeError:
        raise TypeError(f"coefficient {c!r} is not rational") from None


class Polynomial:
    """Immutable polynomial with exact rational coefficients."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: RingCtx, terms=None):
        self.ring = ring
        clean = {}
        if terms:
            n = ring.n
            for e, c in terms.items():
                c = _coerce_coeff(c)
                if c:
                    e = tuple(e)
                    if len(e) != n:
                        raise ValueError(f"exponent {e} does not fit {ring}")
                    if any(x < 0 for x in e):
                        raise NegativeExponent(f"negative exponent in {e}")
                    clean[e] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, ring, terms):
        # trusted constructor: terms already exact and nonzero
        p = cls.__new__(cls)
        p.ring = ring
        p._terms = terms
        p._hash = None
        return p

    # -- inspection ---------------------------------------------------------

    @property
    def term_map(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or list(self._terms) == [(0,) * self.ring.n]

    def coefficient(self, exps) -> Fraction:
        return self._terms.get(tuple(exps), Fraction(0))

    def monomials(self, order: MonomialOrder = DEGREVLEX) -> list:
        return [e for e, _ in self.terms(order)]

    def terms(self, order: MonomialOrder = DEGREVLEX) -> list:
        """(exponents, coefficient) pairs, largest monomial first."""
        return sorted(self._terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def leading_term(self, order: MonomialOrder = DEGREVLEX):
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self._terms.items(), key=lambda t: order.key(t[0]))

    def leading_monomial(self, order: MonomialOrder = DEGREVLEX) -> Monomial:
        return self.leading_term(order)[0]

    def leading_coefficient(self, order: MonomialOrder = DEGREVLEX) -> Fraction:
        return self.leading_term(order)[1]

    def degree(self, weights=None) -> int:
        """Total (or weighted) degree; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        if weights is None:
            return max(sum(e) for e in self._terms)
        return max(sum(w * x for w, x in zip(weights, e)) for e in self._terms)

    def is_homogeneous(self, weights=None) -> bool:
        if weights is None:
            degs = {sum(e) for e in self._terms}
        else:
            degs = {sum(w * x for w, x in zip(weights, e)) for e in self._terms}
        return len(degs) <= 1

    def uses_variable(self, i: int) -> bool:
        return any(e[i] for e in self._terms)

    # -- arithmetic -----------------------------------------------------------

    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatch(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Rational)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.ring, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return Polynomial._raw(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            raise NegativeExponent(f"negative power {k}")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, Polynomial):
            return exact_divide(self, other)
        c = _coerce_coeff(other)
        if not c:
            raise DivideByZero("division by zero")
        return Polynomial._raw(self.ring, {e: v / c for e, v in self._terms.items()})

    def scale(self, c) -> Polynomial:
        c = _coerce_coeff(c)
        if not c:
            return self.ring.zero()
        return Polynomial._raw(self.ring, {e: v * c for e, v in self._terms.items()})

    def mul_monomial(self, exps, coeff=1) -> Polynomial:
        coeff = _coerce_coeff(coeff)
        if not coeff:
            return self.ring.zero()
        return Polynomial._raw(
            self.ring,
            {tuple(a + b for a, b in zip(e, exps)): c * coeff for e, c in self._terms.items()},
        )

    def monic(self, order: MonomialOrder = DEGREVLEX) -> Polynomial:
        if not self._terms:
            return self
        return self.scale(1 / self.leading_coefficient(order))

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._terms == other._terms
        if isinstance(other, (int, Rational)):
            return self._terms == self.ring.const(other)._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Polynomial({format_poly(self)!r})"


# -- operations ----------------------------------------------------------------


def arith(a: Polynomial, b: Polynomial, op: str) -> Polynomial:
    """Exact ``add``, ``sub`` or ``mul`` of two polynomials of one ring."""
    if a.ring != b.ring:
        raise RingMismatch(f"{a.ring} vs {b.ring}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def exact_divide(a: Polynomial, b: Polynomial) -> Polynomial:
    """Return q with a == q*b, or raise NotDivisible."""
    if a.ring != b.ring:
        raise RingMismatch(f"{a.ring} vs {b.ring}")
    if b.is_zero():
        raise DivideByZero("division by the zero polynomial")
    lm_b, lc_b = b.leading_term()
    q = {}
    r = a
    while r:
        lm_r, lc_r = r.leading_term()
        e = tuple(x - y for x, y in zip(lm_r, lm_b))
        if any(x < 0 for x in e):
            raise NotDivisible(f"{a} is not divisible by {b}")
        c = lc_r / lc_b
        q[e] = c
        r = r - b.mul_monomial(e, c)
    return Polynomial._raw(a.ring, q)


def partial_derivative(f: Polynomial, var) -> Polynomial:
    i = var if isinstance(var, int) else f.ring.index(var)
    if not 0 <= i < f.ring.n:
        raise IndexError(f"variable index {i} out of range")
    out = {}
    for e, c in f.items():
        if e[i]:
            d = list(e)
            d[i] -= 1
            out[tuple(d)] = c * e[i]
    return Polynomial._raw(f.ring, out)


def substitute_linear(f: Polynomial, matrix) -> Polynomial:
    """Linear change of coordinates.

    Variable ``x_j`` is replaced by ``sum_i M[i][j] * x_i``, so that
    ``substitute_linear(substitute_linear(f, A), B) == substitute_linear(f, B @ A)``.
    """
    n = f.ring.n
    M = [[Fraction(v) for v in row] for row in matrix]
    if len(M) != n or any(len(row) != n for row in M):
        raise ValueError(f"expected a {n}x{n} matrix")
    if determinant(M) == 0:
        raise SingularMatrix("substitution matrix is not invertible")
    gens = f.ring.gens()
    images = []
    for j in range(n):
        img = f.ring.zero()
        for i in range(n):
            if M[i][j]:
                img = img + gens[i].scale(M[i][j])
        images.append(img)
    return evaluate(f, images)


def evaluate(f: Polynomial, images: Sequence[Polynomial]) -> Polynomial:
    """Substitute ``images[j]`` for variable ``j`` (all in one target ring)."""
    if not images:
        raise ValueError("need one image per variable")
    target = images[0].ring
    powers = [{0: target.one()} for _ in images]

    def power(j, k):
        cache = powers[j]
        if k not in cache:
            cache[k] = power(j, k - 1) * images[j]
        return cache[k]

    out = target.zero()
    for e, c in f.items():
        term = target.const(c)
        for j, k in enumerate(e):
            if k:
                term = term * power(j, k)
        out = out + term
    return out


def determinant(M) -> Fraction:
    A = [[Fraction(v) for v in row] for row in M]
    n = len(A)
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col]), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            A[col], A[piv] = A[piv], A[col]
            det = -det
        p = A[col][col]
        det *= p
        for r in range(col + 1, n):
            if A[r][col]:
                factor = A[r][col] / p
                A[r] = [a - factor * b for a, b in zip(A[r], A[col])]
    return det


def monomials_of_degree(ring: RingCtx, d: int, order: MonomialOrder = DEGREVLEX) -> list:
    """All degree-d exponent tuples, largest first under ``order``."""
    if d < 0:
        raise ValueError("degree must be nonnegative")
    n = ring.n
    out = []
    for combo in combinations_with_replacement(range(n), d):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out.sort(key=order.key, reverse=True)
    assert len(out) == comb(d + n - 1, n - 1)
    return out


# -- text format ---------------------------------------------------------------


def _format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_monomial(ring: RingCtx, exps) -> str:
    parts = []
    for name, k in zip(ring.variables, exps):
        if k == 1:
            parts.append(name)
        elif k:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def format_poly(f: Polynomial, order: MonomialOrder = DEGREVLEX) -> str:
    if f.is_zero():
        return "0"
    out = []
    for i, (e, c) in enumerate(f.terms(order)):
        mono = format_monomial(f.ring, e)
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if not mono:
            body = _format_coeff(a)
        elif a == 1:
            body = mono
        else:
            body = f"{_format_coeff(a)}*{mono}"
        if i == 0:
            out.append(body if sign == "+" else "-" + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<name>[a-zA-Z][a-zA-Z0-9_]*)|(?P<op>\*\*|[-+*/^()]))"
)


def _tokenize(src):
    pos = 0
    tokens = []
    while True:
        while pos < len(src) and src[pos].isspace():
            pos += 1
        if pos >= len(src):
            break
        m = _TOKEN_RE.match(src, pos)
        if not m:
            raise PolynomialSyntaxError(f"unexpected character {src[pos]!r}", pos)
        kind = m.lastgroup
        start = m.start(kind)
        text = m.group(kind)
        if text == "**":
            text = "^"
        tokens.append((kind, text, start))
        pos = m.end()
    tokens.append(("end", "", len(src)))
    return tokens


class _Parser:
    # expr  := ['+'|'-'] term (('+'|'-') term)*
    # term  := unary (('*'|'/') unary | <implicit> power)*
    # unary := '-' unary | power
    # power := atom ['^' ['-'] int]
    # atom  := int | name | '(' expr ')'

    def __init__(self, src, ring):
        self.src = src
        self.ring = ring
        self.toks = _tokenize(src)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, text):
        t = self.take()
        if t[1] != text:
            raise PolynomialSyntaxError(f"expected {text!r}, found {t[1] or 'end of input'!r}", t[2])
        return t

    def parse(self):
        if self.peek()[0] == "end":
            raise PolynomialSyntaxError("empty polynomial", 0)
        result = self.expr()
        t = self.peek()
        if t[0] != "end":
            raise PolynomialSyntaxError(f"unexpected {t[1]!r}", t[2])
        return result

    def expr(self):
        sign = 1
        if self.peek()[1] in "+-" and self.peek()[0] == "op":
            sign = -1 if self.take()[1] == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while self.peek()[0] == "op" and self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self):
        acc = self.unary()
        while True:
            kind, text, pos = self.peek()
            if kind == "op" and text == "*":
                self.take()
                acc = acc * self.unary()
            elif kind == "op" and text == "/":
                self.take()
                rhs = self.unary()
                if not rhs.is_constant():
                    raise PolynomialSyntaxError("can only divide by a constant", pos)
                if rhs.is_zero():
                    raise PolynomialSyntaxError("division by zero", pos)
                acc = acc / rhs.coefficient((0,) * self.ring.n)
            elif kind in ("name", "num") or (kind == "op" and text == "("):
                # juxtaposition, as in 2x^2 or 3(x+y)
                acc = acc * self.power()
            else:
                return acc

    def unary(self):
        if self.peek()[0] == "op" and self.peek()[1] == "-":
            self.take()
            return -self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            kind, text, pos = self.take()
            if kind == "op" and text == "-":
                raise NegativeExponent(f"negative exponent at position {pos}")
            if kind != "num":
                raise PolynomialSyntaxError("exponent must be a nonnegative integer", pos)
            base = base ** int(text)
        return base

    def atom(self):
        kind, text, pos = self.take()
        if kind == "num":
            return self.ring.const(int(text))
        if kind == "name":
            if text not in self.ring.variables:
                raise UnknownVariable(f"unknown variable {text!r} at position {pos}")
            return self.ring.gen(text)
        if kind == "op" and text == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        raise PolynomialSyntaxError(f"unexpected {text or 'end of input'!r}", pos)


def parse_poly(src: str, ring: RingCtx) -> Polynomial:
    """Parse text such as ``"x^4*y^4 - 2*x^2*y^2*z^4 + 1/2*t"``."""
    return _Parser(src, ring).parse()
