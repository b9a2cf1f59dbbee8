"""Multivariate polynomial arithmetic over a prime field.

A :class:`RingContext` fixes the characteristic, the variable names, a
monomial order and a positive weight vector.  Polynomials are immutable
term lists kept strictly descending in the ring's order; coefficients
are plain Python ints in ``[1, p)``.  The maximal ideal of the (graded)
local model is always the ideal generated by all variables, and local
computations are only meaningful for ideals that are homogeneous under
the ring's weights -- callers that need that guarantee go through
:func:`weighted_degree`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional


class ContextError(ValueError):
    """Operands belong to different ring contexts."""


class HomogeneityError(ValueError):
    """Input violates the weighted-homogeneity convention."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# ---------------------------------------------------------------------------
# monomials: exponent tuples
# ---------------------------------------------------------------------------

Monomial = tuple

def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))

def mono_div(a, b):
    return tuple(x - y for x, y in zip(a, b))

def mono_divides(a, b):
    """True when x^a divides x^b componentwise."""
    return all(x <= y for x, y in zip(a, b))

def mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))

def mono_deg(a):
    return sum(a)

def mono_wdeg(a, w):
    return sum(x * y for x, y in zip(a, w))


# ---------------------------------------------------------------------------
# monomial orders
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MonomialOrder:
    """A multiplicative total order on exponent tuples.

    Orders are exposed as additive key functions: ``key(a)`` is a tuple
    of ints, tuples compare the way the monomials do, and
    ``key(a*b) == key(a) + key(b)`` componentwise.  Kinds:

    * ``grevlex`` -- degree, ties by reverse lexicography.
    * ``lex`` -- plain lexicographic on the exponent tuple.
    * ``wgrevlex`` -- weighted degree first, grevlex tiebreak.
    * ``block`` -- eliminated variables dominate: any monomial touching
      an eliminated variable outranks every monomial free of them.
    """

    kind: str = "grevlex"
    weights: Optional[tuple] = None
    elim: Optional[tuple] = None          # variable indices, block only
    inner: Optional["MonomialOrder"] = None

    @staticmethod
    def grevlex() -> "MonomialOrder":
        return MonomialOrder("grevlex")

    @staticmethod
    def lex() -> "MonomialOrder":
        return MonomialOrder("lex")

    @staticmethod
    def weighted_grevlex(weights) -> "MonomialOrder":
        w = tuple(int(x) for x in weights)
        if any(x <= 0 for x in w):
            raise ValueError("order weights must be positive")
        return MonomialOrder("wgrevlex", weights=w)

    @staticmethod
    def block(elim_indices, inner: "MonomialOrder" = None) -> "MonomialOrder":
        return MonomialOrder(
            "block",
            elim=tuple(sorted(elim_indices)),
            inner=inner or MonomialOrder.grevlex(),
        )

    def key_function(self, nvars: int):
        """Specialized exponent-tuple -> flat int-tuple key closure."""
        k = self.kind
        if k == "grevlex":
            def key(exps):
                return (sum(exps),) + tuple(-e for e in reversed(exps))
            return key
        if k == "lex":
            return tuple
        if k == "wgrevlex":
            w = self.weights
            if len(w) != nvars:
                raise ValueError("order weight length mismatch")
            def key(exps):
                return (
                    sum(e * x for e, x in zip(exps, w)),
                    sum(exps),
                ) + tuple(-e for e in reversed(exps))
            return key
        if k == "block":
            elim = self.elim
            if elim and (min(elim) < 0 or max(elim) >= nvars):
                raise ValueError("block elimination index out of range")
            rest = tuple(i for i in range(nvars) if i not in set(elim))
            inner_key = self.inner.key_function(len(rest))
            def key(exps):
                inside = [exps[i] for i in elim]
                head = (sum(inside),) + tuple(-e for e in reversed(inside))
                return head + inner_key(tuple(exps[i] for i in rest))
            return key
        raise ValueError(f"unknown order kind {k!r}")

    def key(self, exps):
        return self.key_function(len(exps))(exps)

    def name(self) -> str:
        return self.kind


# ---------------------------------------------------------------------------
# ring context
# ---------------------------------------------------------------------------

DEFAULT_PRIME = 32003


@dataclass(frozen=True)
class RingContext:
    """Ambient polynomial ring data: F_p[variables] with order and weights."""

    p: int = DEFAULT_PRIME
    variables: tuple = ("x", "y", "z")
    order: MonomialOrder = field(default_factory=MonomialOrder.grevlex)
    weights: tuple = None

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"characteristic {self.p} is not prime")
        vs = tuple(self.variables)
        if len(vs) < 1:
            raise ValueError("need at least one variable")
        if len(set(vs)) != len(vs):
            raise ValueError("duplicate variable names")
        object.__setattr__(self, "variables", vs)
        w = self.weights
        w = tuple(int(x) for x in w) if w is not None else (1,) * len(vs)
        if len(w) != len(vs):
            raise ValueError("weight vector length mismatch")
        if any(x <= 0 for x in w):
            raise ValueError("weights must be strictly positive")
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "_keyfn", self.order.key_function(len(vs)))

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def key(self, mono):
        return self._keyfn(mono)

    def var_index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise ValueError(f"unknown variable {name!r}") from None

    # element construction -------------------------------------------------

    def zero(self) -> "Polynomial":
        return Polynomial(self, ())

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c: int) -> "Polynomial":
        c %= self.p
        if c == 0:
            return self.zero()
        return Polynomial(self, (((0,) * self.nvars, c),))

    def var(self, name: str) -> "Polynomial":
        i = self.var_index(name)
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, ((tuple(e), 1),))

    def gens(self):
        return [self.var(v) for v in self.variables]

    def monomial(self, exps, coeff: int = 1) -> "Polynomial":
        exps = tuple(int(e) for e in exps)
        if len(exps) != self.nvars or any(e < 0 for e in exps):
            raise ValueError("bad exponent vector")
        c = coeff % self.p
        return Polynomial(self, ((exps, c),)) if c else self.zero()

    def poly(self, source) -> "Polynomial":
        if isinstance(source, Polynomial):
            if source.ctx != self:
                raise ContextError("polynomial from a different ring")
            return source
        if isinstance(source, int):
            return self.const(source)
        return parse_polynomial(self, source)


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------

class Polynomial:
    """Immutable polynomial: terms sorted strictly descending in the order.

    The zero polynomial is the empty term tuple.  All arithmetic is exact
    mod p and restores the sortedness invariant.
    """

    __slots__ = ("ctx", "terms", "_hash")

    def __init__(self, ctx: RingContext, terms):
        self.ctx = ctx
        self.terms = tuple(terms)
        self._hash = None

    @classmethod
    def _from_dict(cls, ctx: RingContext, d: dict) -> "Polynomial":
        p = ctx.p
        items = [(m, c % p) for m, c in d.items() if c % p]
        items.sort(key=lambda t: ctx.key(t[0]), reverse=True)
        return cls(ctx, items)

    # basic inspection ------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def lm(self):
        """Leading monomial (exponent tuple)."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return self.terms[0][0]

    def lc(self) -> int:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return self.terms[0][1]

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        inv = pow(self.terms[0][1], -1, self.ctx.p)
        if inv == 1:
            return self
        p = self.ctx.p
        return Polynomial(self.ctx, tuple((m, (c * inv) % p) for m, c in self.terms))

    def total_degree(self) -> int:
        if not self.terms:
            raise ValueError("degree of zero polynomial is undefined")
        return max(mono_deg(m) for m, _ in self.terms)

    def constant_value(self):
        """Coefficient view of a constant polynomial, else None."""
        if not self.terms:
            return 0
        if len(self.terms) == 1 and all(e == 0 for e in self.terms[0][0]):
            return self.terms[0][1]
        return None

    # arithmetic -------------------------------------------------------------

    def _check(self, other) -> "Polynomial":
        if isinstance(other, int):
            return self.ctx.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        if other.ctx != self.ctx:
            raise ContextError("mixed ring contexts")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        d = dict(self.terms)
        for m, c in other.terms:
            d[m] = d.get(m, 0) + c
        return Polynomial._from_dict(self.ctx, d)

    __radd__ = __add__

    def __neg__(self):
        p = self.ctx.p
        return Polynomial(self.ctx, tuple((m, p - c) for m, c in self.terms))

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            c = other % self.ctx.p
            if c == 0:
                return self.ctx.zero()
            p = self.ctx.p
            return Polynomial(self.ctx, tuple((m, (k * c) % p) for m, k in self.terms))
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        d = {}
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                m = mono_mul(m1, m2)
                d[m] = d.get(m, 0) + c1 * c2
        return Polynomial._from_dict(self.ctx, d)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = self.ctx.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def deriv(self, name: str) -> "Polynomial":
        i = self.ctx.var_index(name)
        d = {}
        for m, c in self.terms:
            e = m[i]
            if e == 0:
                continue
            mm = list(m)
            mm[i] = e - 1
            d[tuple(mm)] = d.get(tuple(mm), 0) + c * e
        return Polynomial._from_dict(self.ctx, d)

    def subs(self, values: dict) -> "Polynomial":
        """Substitute polynomials (or ints) for variables, remaining vars kept."""
        ctx = self.ctx
        target = None
        for v in values.values():
            if isinstance(v, Polynomial):
                target = v.ctx
                break
        target = target or ctx
        images = []
        for i, name in enumerate(ctx.variables):
            if name in values:
                v = values[name]
                images.append(target.const(v) if isinstance(v, int) else v)
            else:
                images.append(target.var(name))
        out = target.zero()
        pow_cache = [dict() for _ in images]
        for m, c in self.terms:
            term = target.const(c)
            for i, e in enumerate(m):
                if e == 0:
                    continue
                cache = pow_cache[i]
                if e not in cache:
                    cache[e] = images[i] ** e
                term = term * cache[e]
            out = out + term
        return out

    # comparisons / hashing ---------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            return self == self.ctx.const(other)
        return (
            isinstance(other, Polynomial)
            and self.ctx == other.ctx
            and self.terms == other.terms
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ctx.variables, self.ctx.p, self.terms))
        return self._hash

    # rendering ----------------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        p = self.ctx.p
        names = self.ctx.variables
        chunks = []
        for m, c in self.terms:
            signed = c if c <= p // 2 else c - p
            sign = "-" if signed < 0 else "+"
            mag = abs(signed)
            factors = []
            for name, e in zip(names, m):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            chunks.append((sign, body))
        first_sign, first_body = chunks[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in chunks[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"Polynomial({self})"


# ---------------------------------------------------------------------------
# weighted homogeneity
# ---------------------------------------------------------------------------

def weighted_degree(f: Polynomial, weights=None) -> Optional[int]:
    """Common weighted degree of all terms of f, or None if inhomogeneous.

    Raises ValueError on the zero polynomial (its degree is undefined).
    Arbitrary integer weight vectors are accepted so that auxiliary
    gradings (e.g. zero weights on base variables) can be checked too.
    """
    if f.is_zero:
        raise ValueError("weighted degree of the zero polynomial is undefined")
    w = tuple(weights) if weights is not None else f.ctx.weights
    if len(w) != f.ctx.nvars:
        raise ValueError("weight vector length mismatch")
    degs = {mono_wdeg(m, w) for m, _ in f.terms}
    if len(degs) == 1:
        return degs.pop()
    return None


def is_weighted_homogeneous(f: Polynomial, weights=None) -> bool:
    if f.is_zero:
        return True
    return weighted_degree(f, weights) is not None


# ---------------------------------------------------------------------------
# text syntax: terms joined by +/-, * for products, ^ for powers
# ---------------------------------------------------------------------------

def _tokenize(s: str):
    s = s.replace("−", "-")  # unicode minus
    i, n = 0, len(s)
    while i < n:
        ch = s[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "+-*^":
            yield ch, ch
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and s[j].isdigit():
                j += 1
            yield "int", s[i:j]
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (s[j].isalnum() or s[j] == "_"):
                j += 1
            yield "name", s[i:j]
            i = j
            continue
        raise ValueError(f"unexpected character {ch!r} in polynomial")


def parse_polynomial(ctx: RingContext, text: str) -> Polynomial:
    tokens = list(_tokenize(text))
    if not tokens:
        raise ValueError("empty polynomial text")
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else (None, None)

    def take(kind=None):
        nonlocal pos
        if pos >= len(tokens):
            raise ValueError("unexpected end of polynomial")
        tk, tv = tokens[pos]
        if kind and tk != kind:
            raise ValueError(f"expected {kind}, found {tv!r}")
        pos += 1
        return tv

    def parse_factor() -> Polynomial:
        tk, tv = peek()
        if tk == "int":
            take()
            return ctx.const(int(tv))
        if tk == "name":
            take()
            base = ctx.var(tv)
            if peek()[0] == "^":
                take("^")
                exp = int(take("int"))
                return base ** exp
            return base
        raise ValueError(f"expected a factor, found {tv!r}")

    def parse_term() -> Polynomial:
        out = parse_factor()
        while peek()[0] == "*":
            take("*")
            out = out * parse_factor()
        return out

    sign = 1
    if peek()[0] in ("+", "-"):
        sign = -1 if take() == "-" else 1
    result = parse_term() * sign
    while pos < len(tokens):
        op = take()
        if op not in ("+", "-"):
            raise ValueError(f"expected + or -, found {op!r}")
        t = parse_term()
        result = result + (t if op == "+" else -t)
    return result
