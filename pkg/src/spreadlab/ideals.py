"""Ideal-theoretic calculus: sums, products, intersection, colon,
saturation, elimination, dimension/height, and integral closure of
monomial ideals.

Ideals cache their canonical reduced Groebner basis; equality and
membership go through that basis.  Intersections use an auxiliary
variable and a block elimination order; colon ideals come from
intersections with principal ideals; saturation iterates the colon
until it stabilizes and reports how many steps that took.
"""

from __future__ import annotations

import itertools
import threading
from typing import Iterable, List, Sequence, Tuple

from .groebner import GroebnerBasis, groebner_basis
from .ring import (
    ContextError,
    MonomialOrder,
    Polynomial,
    RingContext,
    mono_divides,
)


class Ideal:
    """An ideal of F_p[variables], held as generators plus a cached basis."""

    __slots__ = ("ctx", "gens", "_gb", "_lock")

    def __init__(self, ctx: RingContext, gens: Iterable):
        self.ctx = ctx
        polys = []
        for g in gens:
            f = ctx.poly(g)
            if not f.is_zero:
                polys.append(f)
        # drop exact duplicates, keep first occurrence
        seen = set()
        uniq = []
        for f in polys:
            if f.terms not in seen:
                seen.add(f.terms)
                uniq.append(f)
        self.gens = tuple(uniq)
        self._gb = None
        self._lock = threading.Lock()

    @classmethod
    def from_groebner(cls, gb: GroebnerBasis) -> "Ideal":
        ideal = cls(gb.ctx, gb.basis)
        ideal._gb = gb
        return ideal

    @property
    def gb(self) -> GroebnerBasis:
        if self._gb is None:
            with self._lock:
                if self._gb is None:
                    self._gb = groebner_basis(self.gens, self.ctx)
        return self._gb

    # predicates --------------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.gb.is_zero_ideal

    @property
    def is_unit(self) -> bool:
        return self.gb.is_unit_ideal

    @property
    def is_proper(self) -> bool:
        return not self.is_unit

    def contains(self, f) -> bool:
        return self.gb.contains(self.ctx.poly(f))

    def contains_ideal(self, other: "Ideal") -> bool:
        self._same_ring(other)
        return all(self.gb.contains(g) for g in other.gens)

    def is_homogeneous(self, weights=None) -> bool:
        from .ring import is_weighted_homogeneous

        return all(is_weighted_homogeneous(g, weights) for g in self.gens)

    def is_monomial(self) -> bool:
        return all(len(g.terms) == 1 for g in self.gens)

    def _same_ring(self, other: "Ideal"):
        if self.ctx != other.ctx:
            raise ContextError("ideals from different rings")

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        if self.ctx != other.ctx:
            return False
        return self.gb.basis == other.gb.basis

    def __hash__(self):
        return hash(self.gb)

    def __repr__(self):
        return "Ideal(" + ", ".join(str(g) for g in self.gens) + ")"


def ideal(ctx: RingContext, *gens) -> Ideal:
    if len(gens) == 1 and isinstance(gens[0], (list, tuple)):
        gens = tuple(gens[0])
    return Ideal(ctx, gens)


def maximal_ideal(ctx: RingContext) -> Ideal:
    """The ideal generated by all variables."""
    return Ideal(ctx, ctx.gens())


def unit_ideal(ctx: RingContext) -> Ideal:
    return Ideal(ctx, [ctx.one()])


def ideal_equal(A: Ideal, B: Ideal) -> bool:
    """True exactly when the reduced bases coincide."""
    return A == B


# ---------------------------------------------------------------------------
# sum / product / power
# ---------------------------------------------------------------------------

def ideal_sum(A: Ideal, B: Ideal) -> Ideal:
    A._same_ring(B)
    return Ideal(A.ctx, A.gens + B.gens)


def ideal_product(A: Ideal, B: Ideal) -> Ideal:
    A._same_ring(B)
    return Ideal(A.ctx, [f * g for f in A.gens for g in B.gens])


def ideal_power(A: Ideal, k: int) -> Ideal:
    if k < 0:
        raise ValueError("ideal power wants a nonnegative exponent")
    if k == 0:
        return unit_ideal(A.ctx)
    gens = []
    for combo in itertools.combinations_with_replacement(A.gens, k):
        f = combo[0]
        for g in combo[1:]:
            f = f * g
        gens.append(f)
    return Ideal(A.ctx, gens)


def ideal_combine(A: Ideal, B: Ideal = None, op: str = "sum", k: int = None) -> Ideal:
    if op == "sum":
        return ideal_sum(A, B)
    if op == "product":
        return ideal_product(A, B)
    if op == "power":
        return ideal_power(A, k)
    raise ValueError(f"unknown ideal operation {op!r}")


# ---------------------------------------------------------------------------
# elimination
# ---------------------------------------------------------------------------

_AUX = "t@"


def _extended_context(ctx: RingContext, extra_names: Sequence[str]) -> RingContext:
    """Extend ctx by auxiliary variables ranked above everything else."""
    names = tuple(extra_names) + ctx.variables
    elim = tuple(range(len(extra_names)))
    order = MonomialOrder.block(elim, ctx.order)
    weights = (1,) * len(extra_names) + ctx.weights
    return RingContext(ctx.p, names, order, weights)


def _lift(f: Polynomial, big: RingContext, offset: int) -> Polynomial:
    pad = (0,) * offset
    return Polynomial(big, tuple((pad + m, c) for m, c in f.terms))


def _project(f: Polynomial, small: RingContext, offset: int) -> Polynomial:
    terms = []
    for m, c in f.terms:
        if any(e for e in m[:offset]):
            raise ValueError("term still involves an eliminated variable")
        terms.append((m[offset:], c))
    terms.sort(key=lambda t: small.key(t[0]), reverse=True)
    return Polynomial(small, tuple(terms))


def eliminate(A: Ideal, names: Sequence[str]) -> Ideal:
    """A intersected with the subring in the remaining variables.

    The result lives in a context on the remaining variables with the
    same order kind and the restricted weights.
    """
    names = list(names)
    if not names:
        raise ValueError("no variables requested for elimination")
    idx = sorted(A.ctx.var_index(n) for n in set(names))
    if len(idx) >= A.ctx.nvars:
        raise ValueError("cannot eliminate every variable")
    ctx = A.ctx
    keep = [i for i in range(ctx.nvars) if i not in idx]
    small = RingContext(
        ctx.p,
        tuple(ctx.variables[i] for i in keep),
        ctx.order if ctx.order.kind in ("grevlex", "lex") else MonomialOrder.grevlex(),
        tuple(ctx.weights[i] for i in keep),
    )
    elim_ctx = RingContext(
        ctx.p,
        ctx.variables,
        MonomialOrder.block(tuple(idx), MonomialOrder.grevlex()),
        ctx.weights,
    )
    lifted = [_reorder(g, elim_ctx) for g in A.gens]
    gb = groebner_basis(lifted, elim_ctx)
    kept = []
    for g in gb.basis:
        if all(all(m[i] == 0 for i in idx) for m, _ in g.terms):
            terms = []
            for m, c in g.terms:
                mm = tuple(m[i] for i in keep)
                terms.append((mm, c))
            terms.sort(key=lambda t: small.key(t[0]), reverse=True)
            kept.append(Polynomial(small, tuple(terms)))
    return Ideal(small, kept)


def _reorder(f: Polynomial, target: RingContext) -> Polynomial:
    """Re-sort the terms of f for a context sharing the same variables."""
    terms = sorted(f.terms, key=lambda t: target.key(t[0]), reverse=True)
    return Polynomial(target, tuple(terms))


# ---------------------------------------------------------------------------
# intersection / colon / saturation
# ---------------------------------------------------------------------------

def intersect(A: Ideal, B: Ideal) -> Ideal:
    """A cap B via t*A + (1-t)*B in an extended ring, then eliminating t."""
    A._same_ring(B)
    ctx = A.ctx
    if A.is_zero or B.is_zero:
        return Ideal(ctx, ())
    big = _extended_context(ctx, (_AUX,))
    t = big.var(_AUX)
    one = big.one()
    gens = [t * _lift(g, big, 1) for g in A.gens]
    gens += [(one - t) * _lift(g, big, 1) for g in B.gens]
    gb = groebner_basis(gens, big)
    kept = [
        _project(g, ctx, 1)
        for g in gb.basis
        if all(m[0] == 0 for m, _ in g.terms)
    ]
    return Ideal(ctx, kept)


def _divide_exact(f: Polynomial, b: Polynomial) -> Polynomial:
    """Exact division f/b; ValueError if b does not divide f."""
    ctx = f.ctx
    q = ctx.zero()
    r = f
    binv = pow(b.lc(), -1, ctx.p)
    while not r.is_zero:
        lm_r, lc_r = r.lm(), r.lc()
        if not mono_divides(b.lm(), lm_r):
            raise ValueError("inexact polynomial division")
        qm = tuple(x - y for x, y in zip(lm_r, b.lm()))
        qterm = ctx.monomial(qm, lc_r * binv)
        q = q + qterm
        r = r - qterm * b
    return q


def quotient(A: Ideal, B: Ideal) -> Ideal:
    """Colon ideal A : B = {f | f*B inside A}."""
    A._same_ring(B)
    if B.is_zero:
        raise ValueError("colon by the zero ideal")
    result = None
    for b in B.gens:
        if b.constant_value() not in (None, 0):
            piece = Ideal(A.ctx, A.gens)      # A : (unit) = A
        else:
            inter = intersect(A, Ideal(A.ctx, [b]))
            piece = Ideal(A.ctx, [_divide_exact(g, b) for g in inter.gens])
        result = piece if result is None else intersect(result, piece)
    return result


def saturate(A: Ideal, B: Ideal) -> Tuple[Ideal, int]:
    """A : B^infinity by iterated colon, plus the saturation index.

    The index is the least k with A : B^k = A : B^(k+1); it is 0 when A
    is already saturated with respect to B.
    """
    A._same_ring(B)
    if B.is_zero:
        raise ValueError("saturation by the zero ideal")
    current = A
    index = 0
    while True:
        nxt = quotient(current, B)
        if nxt == current:
            return current, index
        current = nxt
        index += 1


def saturate_by_elimination(A: Ideal, B: Ideal) -> Ideal:
    """A : B^infinity via the extra-variable route, one generator at a time.

    For each generator b the ideal A + (y*b - 1) is built in an extended
    ring and y is eliminated; the results are intersected.  Independent
    of the iterated-colon path, which makes it the cross-check of choice.
    """
    A._same_ring(B)
    if B.is_zero:
        raise ValueError("saturation by the zero ideal")
    ctx = A.ctx
    result = None
    for b in B.gens:
        if b.constant_value() not in (None, 0):
            piece = Ideal(ctx, A.gens)
        else:
            big = _extended_context(ctx, (_AUX,))
            yvar = big.var(_AUX)
            gens = [_lift(g, big, 1) for g in A.gens]
            gens.append(yvar * _lift(b, big, 1) - big.one())
            gb = groebner_basis(gens, big)
            kept = [
                _project(g, ctx, 1)
                for g in gb.basis
                if all(m[0] == 0 for m, _ in g.terms)
            ]
            piece = Ideal(ctx, kept)
        result = piece if result is None else intersect(result, piece)
    return result


# ---------------------------------------------------------------------------
# dimension and height
# ---------------------------------------------------------------------------

def _min_cover(supports: List[frozenset]) -> int:
    """Minimum number of variables meeting every support set."""
    supports = sorted(set(supports), key=lambda s: (len(s), sorted(s)))
    pruned = []
    for s in supports:
        if not any(t <= s for t in pruned):
            pruned.append(s)
    best = [len(set().union(*pruned))] if pruned else [0]

    def rec(remaining, used):
        if used >= best[0]:
            return
        if not remaining:
            best[0] = used
            return
        pivot = min(remaining, key=len)
        for v in sorted(pivot):
            rest = [s for s in remaining if v not in s]
            rec(rest, used + 1)

    rec(pruned, 0)
    return best[0]


def krull_dim(A: Ideal) -> int:
    """Krull dimension of ring/A, from the leading-term monomial ideal.

    dim equals the largest size of a variable subset S such that no
    minimal generator of the leading-term ideal has support inside S;
    the zero ideal gives the full dimension, the unit ideal gives -1.
    """
    if A.is_zero:
        return A.ctx.nvars
    if A.is_unit:
        return -1
    supports = [
        frozenset(i for i, e in enumerate(g.lm()) if e > 0) for g in A.gb.basis
    ]
    return A.ctx.nvars - _min_cover(supports)


def height(A: Ideal) -> int:
    """Height of a proper nonzero ideal: nvars - krull_dim."""
    if A.is_zero or A.is_unit:
        raise ValueError("height wants a proper nonzero ideal")
    return A.ctx.nvars - krull_dim(A)


def is_max_ideal_associated(A: Ideal) -> bool:
    """Whether the maximal ideal is an associated prime of ring/A.

    For the graded-local model this holds exactly when saturating by the
    variable ideal strictly enlarges A, equivalently when the single
    colon A : m already does.
    """
    if not A.is_proper:
        raise ValueError("associated-prime test wants a proper ideal")
    if A.is_zero:
        return False
    return quotient(A, maximal_ideal(A.ctx)) != A


# ---------------------------------------------------------------------------
# integral closure of monomial ideals (Newton polyhedron)
# ---------------------------------------------------------------------------

def _fm_feasible(rows: List[Tuple[Tuple[int, ...], int]], nvars: int) -> bool:
    """Fourier-Motzkin feasibility of {coeffs . u + const >= 0}."""
    from math import gcd

    def normalize(row):
        coeffs, const = row
        g = 0
        for c in coeffs:
            g = gcd(g, abs(c))
        g = gcd(g, abs(const))
        if g > 1:
            coeffs = tuple(c // g for c in coeffs)
            const = const // g
        return coeffs, const

    rows = [normalize(r) for r in rows]
    for v in range(nvars):
        pos, neg, zero = [], [], []
        for coeffs, const in rows:
            c = coeffs[v]
            if c > 0:
                pos.append((coeffs, const))
            elif c < 0:
                neg.append((coeffs, const))
            else:
                zero.append((coeffs, const))
        new_rows = zero
        for pc, pk in pos:
            for nc, nk in neg:
                a, b = pc[v], -nc[v]
                coeffs = tuple(b * x + a * y for x, y in zip(pc, nc))
                new_rows.append(normalize((coeffs, b * pk + a * nk)))
        rows = list(dict.fromkeys(new_rows))
    return all(const >= 0 for _, const in rows)


def _in_newton_polyhedron(point, exps) -> bool:
    """Exactly decide point in conv(exps) + nonnegative orthant."""
    k = len(exps)
    n = len(point)
    if k == 1:
        return all(p >= e for p, e in zip(point, exps[0]))
    # variables u_1..u_{k-1}; u_k = 1 - sum(u_i)
    rows = []
    for i in range(k - 1):
        rows.append((tuple(1 if j == i else 0 for j in range(k - 1)), 0))
    rows.append((tuple(-1 for _ in range(k - 1)), 1))          # u_k >= 0
    last = exps[-1]
    for j in range(n):
        coeffs = tuple(last[j] - exps[i][j] for i in range(k - 1))
        rows.append((coeffs, point[j] - last[j]))
    return _fm_feasible(rows, k - 1)


def _minimal_monomials(exps: List[tuple]) -> List[tuple]:
    out = []
    for e in sorted(set(exps)):
        if not any(mono_divides(f, e) for f in out if f != e):
            out = [f for f in out if not mono_divides(e, f)]
            out.append(e)
    return sorted(out)


def monomial_integral_closure(A: Ideal) -> Ideal:
    """Integral closure of a monomial ideal via its Newton polyhedron.

    Candidate exponents are enumerated up to the componentwise maximum
    of the generators; hull membership is an exact rational feasibility
    test.  Idempotence is part of the test suite rather than assumed.
    """
    if not A.is_monomial():
        raise ValueError("integral closure implemented for monomial ideals only")
    if A.is_zero:
        return Ideal(A.ctx, ())
    exps = _minimal_monomials([g.lm() for g in A.gens])
    bound = tuple(max(e[i] for e in exps) for i in range(A.ctx.nvars))
    members = []
    for cand in itertools.product(*(range(b + 1) for b in bound)):
        if _in_newton_polyhedron(cand, exps):
            members.append(cand)
    gens = _minimal_monomials(members)
    return Ideal(A.ctx, [A.ctx.monomial(e) for e in gens])
