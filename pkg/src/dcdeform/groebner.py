"""Buchberger's algorithm with the Gebauer-Moeller pair criteria.

The kernel works on a private representation: a polynomial is a list of
``(key, coeff)`` pairs sorted by decreasing key, where ``key`` is the packed
integer sort key of :class:`~dcdeform.ring.MonomialOrder` and ``coeff`` a
``gmpy2.mpq``. Because the key is linear in the exponents, multiplying by a
monomial just adds its key. Exponent tuples are looked up in a memo table.

For input that is homogeneous with respect to a nonnegative grading, pairs
are processed degree by degree and the computation may be truncated at a
degree bound; the members of degree <= bound then coincide with those of the
untruncated reduced basis.
"""

from __future__ import annotations

import heapq
import logging
from operator import add, sub
from typing import Iterable, Sequence

from gmpy2 import mpq

from . import budget
from .errors import NotHomogeneous, RingMismatch, TruncationError, ZeroInput
from .ring import DEGREVLEX, MonomialOrder, Polynomial, RingCtx

log = logging.getLogger(__name__)


class _Ctx:
    """Per (ring, order) memo of key -> (exponents, support mask)."""

    __slots__ = ("ring", "order", "weights", "memo", "grading")

    def __init__(self, ring: RingCtx, order: MonomialOrder, grading=None):
        self.ring = ring
        self.order = order
        self.weights = order.weights(ring.n)
        self.memo = {}
        self.grading = tuple(grading) if grading is not None else (1,) * ring.n

    def key(self, e) -> int:
        k = sum(w * x for w, x in zip(self.weights, e))
        if k not in self.memo:
            self.memo[k] = (e, _mask(e))
        return k

    def encode(self, f: Polynomial) -> list:
        terms = [(self.key(e), mpq(c.numerator, c.denominator)) for e, c in f.items()]
        terms.sort(key=lambda t: t[0], reverse=True)
        return terms

    def decode(self, terms) -> Polynomial:
        from fractions import Fraction

        memo = self.memo
        return Polynomial._raw(
            self.ring,
            {memo[k][0]: Fraction(int(c.numerator), int(c.denominator)) for k, c in terms},
        )

    def exps(self, k):
        return self.memo[k][0]

    def gdeg(self, k) -> int:
        return sum(w * x for w, x in zip(self.grading, self.memo[k][0]))


def _mask(e) -> int:
    m = 0
    for i, x in enumerate(e):
        if x:
            m |= 1 << i
    return m


def _monic(terms):
    lc = terms[0][1]
    if lc == 1:
        return terms
    inv = 1 / lc
    return [(k, c * inv) for k, c in terms]


class _Reducers:
    """Growing list of monic polynomials used as reducers, with a divisor cache."""

    def __init__(self, ctx: _Ctx):
        self.ctx = ctx
        self.polys = []
        self.lms = []
        self.masks = []
        self._cache = {}

    def add(self, terms):
        e, m = self.ctx.memo[terms[0][0]]
        self.polys.append(terms)
        self.lms.append(e)
        self.masks.append(m)
        return len(self.polys) - 1

    def find(self, k, active=None) -> int:
        """Index of the first reducer whose leading monomial divides key k."""
        if active is not None:
            e, m = self.ctx.memo[k]
            for i in active:
                if not self.masks[i] & ~m and all(a <= b for a, b in zip(self.lms[i], e)):
                    return i
            return -1
        hit = self._cache.get(k)
        start = 0
        if hit is not None:
            idx, checked = hit
            if idx >= 0:
                return idx
            start = checked
        e, m = self.ctx.memo[k]
        lms, masks = self.lms, self.masks
        for i in range(start, len(lms)):
            if not masks[i] & ~m and all(a <= b for a, b in zip(lms[i], e)):
                self._cache[k] = (i, 0)
                return i
        self._cache[k] = (-1, len(lms))
        return -1


def _reduce(terms, reducers: _Reducers, full=True, active=None):
    """Normal form of ``terms`` (not made monic). Tail-reduces when ``full``."""
    if not terms:
        return []
    memo = reducers.ctx.memo
    acc = dict(terms)
    heap = [-k for k, _ in terms]
    heapq.heapify(heap)
    rem = []
    find = reducers.find
    polys = reducers.polys
    pop, push = heapq.heappop, heapq.heappush
    while heap:
        k = -pop(heap)
        c = acc.pop(k, None)
        if c is None:
            continue
        j = find(k, active)
        if j < 0:
            rem.append((k, c))
            if not full:
                rem.extend(sorted(acc.items(), key=lambda t: t[0], reverse=True))
                return rem
            continue
        g = polys[j]
        kq = k - g[0][0]
        eq = None
        for i in range(1, len(g)):
            kt, ct = g[i]
            kk = kq + kt
            v = acc.get(kk)
            if v is None:
                if kk not in memo:
                    if eq is None:
                        eq = tuple(map(sub, memo[k][0], memo[g[0][0]][0]))
                    e = tuple(map(add, eq, memo[kt][0]))
                    memo[kk] = (e, _mask(e))
                acc[kk] = -c * ct
                push(heap, -kk)
            else:
                v = v - c * ct
                if v:
                    acc[kk] = v
                else:
                    del acc[kk]
    return rem


def _lcm(a, b):
    return tuple(map(max, a, b))


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _coprime(a, b) -> bool:
    return not any(x and y for x, y in zip(a, b))


def _spoly(f, g, ctx: _Ctx):
    memo = ctx.memo
    ef, eg = memo[f[0][0]][0], memo[g[0][0]][0]
    lcm = _lcm(ef, eg)
    kl = ctx.key(lcm)
    kf = kl - f[0][0]
    kg = kl - g[0][0]
    qf = tuple(map(sub, lcm, ef))
    qg = tuple(map(sub, lcm, eg))
    cf, cg = f[0][1], g[0][1]
    acc = {}
    for kt, ct in f[1:]:
        kk = kf + kt
        if kk not in memo:
            e = tuple(map(add, qf, memo[kt][0]))
            memo[kk] = (e, _mask(e))
        acc[kk] = acc.get(kk, 0) + cg * ct
    for kt, ct in g[1:]:
        kk = kg + kt
        if kk not in memo:
            e = tuple(map(add, qg, memo[kt][0]))
            memo[kk] = (e, _mask(e))
        acc[kk] = acc.get(kk, 0) - cf * ct
    out = [(k, c) for k, c in acc.items() if c]
    out.sort(key=lambda t: t[0], reverse=True)
    return out


class GroebnerBasis:
    """Reduced Groebner basis (monic members, sorted by increasing leading
    monomial). ``degree_bound`` is ``None`` for a complete basis; otherwise
    only members of graded degree <= bound were computed."""

    def __init__(self, ring, order, polys, degree_bound=None, grading=None, stats=None, source=None):
        self.ring = ring
        self.order = order
        self.generators = tuple(polys)
        self.degree_bound = degree_bound
        self.grading = tuple(grading) if grading is not None else (1,) * ring.n
        self.stats = dict(stats or {})
        self.source = source
        self._ctx = None
        self._red = None

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def __getitem__(self, i):
        return self.generators[i]

    def __eq__(self, other):
        if not isinstance(other, GroebnerBasis):
            return NotImplemented
        return (
            self.ring == other.ring
            and self.order == other.order
            and self.degree_bound == other.degree_bound
            and self.generators == other.generators
        )

    def __hash__(self):
        return hash((self.ring, self.order, self.degree_bound, self.generators))

    def __repr__(self):
        bound = "" if self.degree_bound is None else f", degree_bound={self.degree_bound}"
        return f"GroebnerBasis({[str(g) for g in self.generators]}, order={self.order}{bound})"

    @property
    def is_truncated(self) -> bool:
        return self.degree_bound is not None

    @property
    def is_unit(self) -> bool:
        return len(self.generators) == 1 and self.generators[0].is_constant()

    def leading_monomials(self) -> list:
        return [g.leading_monomial(self.order) for g in self.generators]

    def _reducers(self):
        if self._red is None:
            self._ctx = _Ctx(self.ring, self.order, self.grading)
            self._red = _Reducers(self._ctx)
            for g in self.generators:
                self._red.add(self._ctx.encode(g))
        return self._ctx, self._red

    def reduce(self, f: Polynomial) -> Polynomial:
        if f.ring != self.ring:
            raise RingMismatch(f"{f.ring} vs {self.ring}")
        self._check_degree(f)
        ctx, red = self._reducers()
        return ctx.decode(_reduce(ctx.encode(f), red, full=True))

    def contains(self, f: Polynomial) -> bool:
        return self.reduce(f).is_zero()

    def _check_degree(self, f):
        if self.degree_bound is not None and f.degree(self.grading) > self.degree_bound:
            raise TruncationError(
                f"basis is truncated at degree {self.degree_bound}; "
                f"cannot decide degree {f.degree(self.grading)}"
            )


def normal_form(f: Polynomial, G: Sequence[Polynomial], order: MonomialOrder = DEGREVLEX) -> Polynomial:
    """Remainder of f under multivariate division by G (first divisor in the
    sequence wins); fully reduced, not made monic."""
    ctx = _Ctx(f.ring, order)
    red = _Reducers(ctx)
    for g in G:
        if g.ring != f.ring:
            raise RingMismatch(f"{g.ring} vs {f.ring}")
        if g:
            red.add(_monic(ctx.encode(g)))
    return ctx.decode(_reduce(ctx.encode(f), red, full=True))


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder = DEGREVLEX) -> Polynomial:
    if f.is_zero() or g.is_zero():
        raise ZeroInput("S-polynomial of a zero polynomial")
    if f.ring != g.ring:
        raise RingMismatch(f"{f.ring} vs {g.ring}")
    ef, cf = f.leading_term(order)
    eg, cg = g.leading_term(order)
    lcm = _lcm(ef, eg)
    return f.mul_monomial(tuple(map(sub, lcm, ef)), 1 / cf) - g.mul_monomial(
        tuple(map(sub, lcm, eg)), 1 / cg
    )


def groebner_basis(
    gens: Iterable[Polynomial],
    order: MonomialOrder = DEGREVLEX,
    *,
    criteria: bool = True,
    degree_bound: int | None = None,
    grading: Sequence[int] | None = None,
    source=None,
) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    ``grading`` gives per-variable weights (default all 1) used for the
    normal selection strategy and for ``degree_bound``; truncation requires
    every generator to be homogeneous for a nonnegative grading.
    """
    gens = list(gens)
    if not gens:
        raise ValueError("need the ring; pass at least one (possibly zero) generator")
    ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise RingMismatch(f"{g.ring} vs {ring}")
    ctx = _Ctx(ring, order, grading)
    homogeneous = min(ctx.grading) >= 0 and all(g.is_homogeneous(ctx.grading) for g in gens)
    if degree_bound is not None and not homogeneous:
        raise NotHomogeneous("degree truncation needs homogeneous generators")

    stats = {"pairs": 0, "zero_reductions": 0, "max_degree": 0, "criteria": criteria}
    inputs = []
    for g in gens:
        if g.is_zero():
            continue
        t = ctx.encode(g)
        if degree_bound is not None and ctx.gdeg(t[0][0]) > degree_bound:
            continue
        inputs.append(t)

    red = _Reducers(ctx)
    G = []  # indices into red.polys forming the current basis
    active = set()
    queue = []
    unit = False

    def pair_entry(i, j):
        a, b = red.lms[i], red.lms[j]
        lcm = _lcm(a, b)
        return (ctx.gdeg(ctx.key(lcm)), ctx.key(lcm), i, j)

    def update(h):
        lmh = red.lms[h]
        if not criteria:
            for g in G:
                entry = pair_entry(g, h)
                if degree_bound is None or entry[0] <= degree_bound:
                    active.add((g, h))
                    heapq.heappush(queue, entry)
            G.append(h)
            return
        lcm_h = {g: _lcm(lmh, red.lms[g]) for g in G}
        C = list(G)
        D = []
        while C:
            g1 = C.pop(0)
            l1 = lcm_h[g1]
            if _coprime(lmh, red.lms[g1]) or not (
                any(_divides(lcm_h[g2], l1) for g2 in C) or any(_divides(lcm_h[g2], l1) for g2 in D)
            ):
                D.append(g1)
        for pair in list(active):
            g1, g2 = pair
            l12 = _lcm(red.lms[g1], red.lms[g2])
            if (
                _divides(lmh, l12)
                and _lcm(red.lms[g1], lmh) != l12
                and _lcm(lmh, red.lms[g2]) != l12
            ):
                active.discard(pair)
        for g in D:
            if not _coprime(lmh, red.lms[g]):
                entry = pair_entry(g, h)
                if degree_bound is None or entry[0] <= degree_bound:
                    active.add((g, h))
                    heapq.heappush(queue, entry)
        G[:] = [g for g in G if not _divides(lmh, red.lms[g])] + [h]

    def insert(terms):
        nonlocal unit
        h = red.add(_monic(terms))
        if red.lms[h] == (0,) * ring.n:
            unit = True
        stats["max_degree"] = max(stats["max_degree"], ctx.gdeg(terms[0][0]))
        update(h)

    # generators enter the queue alongside pairs so graded input is handled degree by degree
    pending = sorted(
        ((ctx.gdeg(t[0][0]), t[0][0], -1, idx) for idx, t in enumerate(inputs)),
    )
    for entry in pending:
        heapq.heappush(queue, entry)

    while queue and not unit:
        budget.check()
        entry = heapq.heappop(queue)
        _, _, i, j = entry
        if i == -1:
            t = _reduce(inputs[j], red, full=False)
        else:
            if (i, j) not in active:
                continue
            active.discard((i, j))
            stats["pairs"] += 1
            t = _reduce(_spoly(red.polys[i], red.polys[j], ctx), red, full=False)
        if not t:
            if i != -1:
                stats["zero_reductions"] += 1
            continue
        insert(t)

    if unit:
        final = [[(0, mpq(1))]]
        ctx.key((0,) * ring.n)
    else:
        final = _interreduce([red.polys[g] for g in G], ctx)
    polys = [ctx.decode(t) for t in final]
    stats["basis_size"] = len(polys)
    log.debug(
        "groebner: %d pairs, %d zero reductions, max degree %d, basis size %d",
        stats["pairs"], stats["zero_reductions"], stats["max_degree"], len(polys),
    )
    return GroebnerBasis(ring, order, polys, degree_bound, ctx.grading, stats, source)


def _interreduce(polys, ctx):
    # minimal basis: drop members whose leading monomial is divisible by another's
    polys = sorted(polys, key=lambda t: t[0][0])
    keep = []
    for t in polys:
        e = ctx.exps(t[0][0])
        if not any(_divides(ctx.exps(s[0][0]), e) for s in keep):
            keep.append(t)
    out = []
    for i, t in enumerate(keep):
        red = _Reducers(ctx)
        for j, s in enumerate(keep):
            if j != i:
                red.add(s)
        tail = _reduce(t[1:], red, full=True)
        out.append(_monic([t[0]] + tail))
    return out


def verify_certificate(basis: GroebnerBasis) -> bool:
    """Check post hoc that every S-polynomial reduces to zero modulo the basis
    (within the degree bound for a truncated basis)."""
    ctx, red = basis._reducers()
    polys = red.polys
    for i in range(len(polys)):
        for j in range(i + 1, len(polys)):
            lcm = _lcm(red.lms[i], red.lms[j])
            if basis.degree_bound is not None and sum(
                w * x for w, x in zip(basis.grading, lcm)
            ) > basis.degree_bound:
                continue
            if _reduce(_spoly(polys[i], polys[j], ctx), red, full=True):
                return False
    return True


def is_reduced(basis: GroebnerBasis) -> bool:
    """Monic members, and no term of a member divisible by another member's
    leading monomial."""
    lms = basis.leading_monomials()
    for i, g in enumerate(basis.generators):
        if g.leading_coefficient(basis.order) != 1:
            return False
        for j, lm in enumerate(lms):
            if i != j and any(_divides(lm, e) for e in g.monomials(basis.order)):
                return False
    return True


def ideal_member(f: Polynomial, basis: GroebnerBasis) -> bool:
    return basis.contains(f)
