"""Buchberger engine: canonical reduced Groebner bases and normal forms.

Pair selection follows the normal strategy (smallest lcm first in the
ring's order) with the Gebauer-Moeller pair pruning criteria.  All
reductions are monic and divisor choice is by basis index, so the
output is the unique reduced basis of the ideal for the ring's order --
identical for any ordering or rescaling of the input generators.

Internally a polynomial is a list of (key, monomial, coefficient)
triples sorted strictly descending, where the key is the ring order's
flat tuple packed into a single integer (24 bits per component, so
integer comparison and addition agree with the tuple order).
"""

from __future__ import annotations

import heapq
from typing import Iterable, Optional, Sequence

from .ring import (
    ContextError,
    Polynomial,
    RingContext,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
)

_KEY_BITS = 24


def _packer(ctx: RingContext):
    keyfn = ctx.key
    bits = _KEY_BITS

    def pack(mono):
        k = 0
        for c in keyfn(mono):
            k = (k << bits) + c
        return k

    return pack


def _to_terms(f: Polynomial, pack=None):
    pack = pack or _packer(f.ctx)
    return [(pack(m), m, c) for m, c in f.terms]


def _from_terms(ctx: RingContext, terms) -> Polynomial:
    return Polynomial(ctx, tuple((m, c) for _, m, c in terms))


def _shift(terms, qkey, qmono, scale, p):
    return [(k + qkey, mono_mul(m, qmono), (c * scale) % p) for k, m, c in terms]


def _merge_sub(a, b, p):
    """a - b for descending term lists (b already carries its scale)."""
    out = []
    i = j = 0
    na, nb = len(a), len(b)
    while i < na and j < nb:
        ka, kb = a[i][0], b[j][0]
        if ka > kb:
            out.append(a[i])
            i += 1
        elif kb > ka:
            kj, mj, cj = b[j]
            out.append((kj, mj, p - cj))
            j += 1
        else:
            c = (a[i][2] - b[j][2]) % p
            if c:
                out.append((ka, a[i][1], c))
            i += 1
            j += 1
    if i < na:
        out.extend(a[i:])
    else:
        for kj, mj, cj in b[j:]:
            out.append((kj, mj, p - cj))
    return out


def _normal_form_terms(f, basis, p):
    """Remainder of f modulo the monic term-lists in basis.

    No remainder term is divisible by any basis leading monomial; the
    divisor for each reduction step is the first match in basis order.
    """
    work = f
    pos = 0
    rem = []
    while pos < len(work):
        key0, m0, c0 = work[pos]
        hit = None
        for entry in basis:
            if mono_divides(entry[1], m0):
                hit = entry
                break
        if hit is None:
            rem.append(work[pos])
            pos += 1
            continue
        hkey, hm, hterms = hit
        qkey = key0 - hkey
        qmono = mono_div(m0, hm)
        scaled_tail = _shift(hterms[1:], qkey, qmono, c0, p)
        work = _merge_sub(work[pos + 1 :], scaled_tail, p)
        pos = 0
    return rem


def _monic(terms, p):
    c = terms[0][2]
    if c == 1:
        return terms
    inv = pow(c, -1, p)
    return [(k, m, (cc * inv) % p) for k, m, cc in terms]


def _buchberger(inputs, ctx: RingContext):
    p = ctx.p
    pack = _packer(ctx)

    G = []          # monic descending term lists
    entries = []    # (lm_key, lm, terms) view used by the reducer
    heap = []
    pairs = set()   # live (i, j) pairs, i < j
    lcms = {}       # (i, j) -> lcm monomial

    def install(h):
        """Gebauer-Moeller update of the pair set for a new element h."""
        t = len(G)
        lm_h = h[0][1]
        cand = [(i, mono_lcm(G[i][0][1], lm_h)) for i in range(t)]
        # M: keep only divisibility-minimal lcms
        keep = []
        for i, l in cand:
            if not any(l2 != l and mono_divides(l2, l) for _, l2 in cand):
                keep.append((i, l))
        # F: one pair per distinct lcm, none at all if some pair is coprime
        classes = {}
        for i, l in keep:
            classes.setdefault(l, []).append(i)
        fresh = []
        for l, idxs in classes.items():
            if any(mono_mul(G[i][0][1], lm_h) == l for i in idxs):
                continue
            fresh.append((min(idxs), l))
        # B: retire old pairs strictly refined by the new leading monomial
        for (i, j) in list(pairs):
            l = lcms[(i, j)]
            if (
                mono_divides(lm_h, l)
                and mono_lcm(G[i][0][1], lm_h) != l
                and mono_lcm(G[j][0][1], lm_h) != l
            ):
                pairs.discard((i, j))
                del lcms[(i, j)]
        G.append(h)
        entries.append((h[0][0], h[0][1], h))
        for i, l in sorted(fresh):
            pairs.add((i, t))
            lcms[(i, t)] = l
            heapq.heappush(heap, (pack(l), i, t))

    for f in inputs:
        t = _normal_form_terms(f, entries, p)
        if t:
            install(_monic(t, p))

    while heap:
        _, i, j = heapq.heappop(heap)
        if (i, j) not in pairs:
            continue
        pairs.discard((i, j))
        lcm = lcms.pop((i, j))
        ki, mi = G[i][0][0], G[i][0][1]
        kj, mj = G[j][0][0], G[j][0][1]
        lk = pack(lcm)
        s = _merge_sub(
            _shift(G[i][1:], lk - ki, mono_div(lcm, mi), 1, p),
            _shift(G[j][1:], lk - kj, mono_div(lcm, mj), 1, p),
            p,
        )
        h = _normal_form_terms(s, entries, p)
        if h:
            install(_monic(h, p))

    return _reduce_basis(G, p)


def _reduce_basis(G, p):
    """Minimalize and tail-reduce to the canonical reduced basis."""
    order = sorted(range(len(G)), key=lambda i: G[i][0][0])
    keep = []
    for i in order:
        lm = G[i][0][1]
        if any(mono_divides(G[j][0][1], lm) for j in keep):
            continue
        keep = [j for j in keep if not mono_divides(lm, G[j][0][1])]
        keep.append(i)
    basis = [G[i] for i in sorted(keep, key=lambda i: G[i][0][0])]
    changed = True
    while changed:
        changed = False
        for i in range(len(basis)):
            others = [
                (g[0][0], g[0][1], g) for j, g in enumerate(basis) if j != i
            ]
            h = _normal_form_terms(basis[i], others, p)
            if not h:
                basis.pop(i)
                changed = True
                break
            h = _monic(h, p)
            if h != basis[i]:
                basis[i] = h
                changed = True
    basis.sort(key=lambda g: g[0][0])
    return basis


class GroebnerBasis:
    """Canonical reduced basis of an ideal for the ring's order."""

    __slots__ = ("ctx", "basis", "_entries")

    def __init__(self, ctx: RingContext, basis: Sequence[Polynomial]):
        self.ctx = ctx
        self.basis = tuple(basis)
        self._entries = None

    @property
    def reduced(self) -> bool:
        return True

    def _divisors(self):
        if self._entries is None:
            pack = _packer(self.ctx)
            self._entries = [
                (pack(g.lm()), g.lm(), _to_terms(g, pack)) for g in self.basis
            ]
        return self._entries

    def normal_form(self, f: Polynomial) -> Polynomial:
        if f.ctx != self.ctx:
            raise ContextError("polynomial from a different ring")
        if f.is_zero or not self.basis:
            return f
        pack = _packer(self.ctx)
        rem = _normal_form_terms(_to_terms(f, pack), self._divisors(), self.ctx.p)
        return _from_terms(self.ctx, rem)

    def contains(self, f: Polynomial) -> bool:
        return self.normal_form(f).is_zero

    @property
    def is_zero_ideal(self) -> bool:
        return not self.basis

    @property
    def is_unit_ideal(self) -> bool:
        return len(self.basis) == 1 and self.basis[0].constant_value() == 1

    def leading_monomials(self):
        return [g.lm() for g in self.basis]

    def __eq__(self, other):
        return (
            isinstance(other, GroebnerBasis)
            and self.ctx == other.ctx
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.ctx.p, self.ctx.variables, self.basis))

    def __iter__(self):
        return iter(self.basis)

    def __len__(self):
        return len(self.basis)

    def __repr__(self):
        return f"GroebnerBasis({[str(g) for g in self.basis]})"


def groebner_basis(gens: Iterable[Polynomial], ctx: Optional[RingContext] = None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by gens.

    An empty or all-zero generator list yields the basis of the zero
    ideal (an empty basis), not an error.
    """
    gens = list(gens)
    if ctx is None:
        if not gens:
            raise ValueError("need a ring context for an empty generator list")
        ctx = gens[0].ctx
    pack = _packer(ctx)
    inputs = []
    for g in gens:
        if not isinstance(g, Polynomial):
            g = ctx.poly(g)
        if g.ctx != ctx:
            raise ContextError("generators from different rings")
        if not g.is_zero:
            inputs.append(_to_terms(g, pack))
    if not inputs:
        return GroebnerBasis(ctx, ())
    basis = _buchberger(inputs, ctx)
    return GroebnerBasis(ctx, [_from_terms(ctx, t) for t in basis])


def normal_form(f: Polynomial, G: GroebnerBasis) -> Polynomial:
    """Remainder of f modulo G; zero exactly when f lies in the ideal."""
    return G.normal_form(f)
