"""Filtrations of ideals, their Rees presentations, and analytic spread.

A filtration is a descending chain I_1 >= I_2 >= ... with
I_i * I_j <= I_{i+j}.  Four kinds are built in:

* ``adic`` -- I_n = I^n;
* ``symbolic`` -- I_n = I^n : J^infinity (J defaults to the ideal of
  all variables, the right notion for space-curve primes);
* ``truncated`` -- the Noetherian approximation generated by the first
  a members: I_{a,n} = I_n for n <= a and the sum of products of lower
  pieces beyond that;
* ``trivial_max`` -- I_n equal to the maximal ideal for every n >= 1.

The Rees algebra of a truncation is presented by adjoining one variable
T{n}_{j} of degree n per chosen generator of I_n and eliminating the
auxiliary variable t from the relations T{n}_{j} - f*t^n.  The analytic
spread is the Krull dimension of the special fiber, i.e. of k[T] modulo
the image of the Rees kernel under x -> 0 (that image generates exactly
(Q + (x)) restricted to k[T], so no second elimination is needed).
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .groebner import groebner_basis
from .ideals import (
    Ideal,
    ideal_power,
    ideal_product,
    ideal_sum,
    height,
    krull_dim,
    maximal_ideal,
    saturate,
    unit_ideal,
)
from .ring import (
    HomogeneityError,
    MonomialOrder,
    Polynomial,
    RingContext,
    weighted_degree,
)


def symbolic_power(I: Ideal, n: int, J: Optional[Ideal] = None) -> Ideal:
    """n-th symbolic power as the saturation of I^n by J.

    J defaults to the ideal of all variables; arbitrary proper nonzero
    J are accepted for the general colon-algebra setting.
    """
    if n < 1:
        raise ValueError("symbolic power wants n >= 1")
    if not I.is_proper:
        raise ValueError("symbolic power of the unit ideal")
    if J is None:
        J = maximal_ideal(I.ctx)
    if J.is_zero or not J.is_proper:
        raise ValueError("saturating ideal must be proper and nonzero")
    return saturate(ideal_power(I, n), J)[0]


def _partitions(n: int, max_part: int):
    """Partitions of n into parts <= max_part, parts descending."""
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


class Filtration:
    """A filtration with memoized members, materialized on demand."""

    def __init__(self, ctx: RingContext, kind: str, data: dict):
        self.ctx = ctx
        self.kind = kind
        self._data = data
        self._cache: Dict[int, Ideal] = {}
        self._lock = threading.Lock()

    # constructors ----------------------------------------------------------

    @classmethod
    def adic(cls, I: Ideal) -> "Filtration":
        return cls(I.ctx, "adic", {"ideal": I})

    @classmethod
    def symbolic(cls, I: Ideal, J: Optional[Ideal] = None) -> "Filtration":
        if J is not None and (J.is_zero or not J.is_proper):
            raise ValueError("saturating ideal must be proper and nonzero")
        return cls(I.ctx, "symbolic", {"ideal": I, "colon": J})

    @classmethod
    def truncated(cls, members: Sequence[Ideal]) -> "Filtration":
        members = tuple(members)
        if not members:
            raise ValueError("a truncated filtration needs at least one member")
        ctx = members[0].ctx
        return cls(ctx, "truncated", {"members": members})

    @classmethod
    def trivial_max(cls, ctx: RingContext) -> "Filtration":
        return cls(ctx, "trivial_max", {})

    # ------------------------------------------------------------------------

    @property
    def truncation_bound(self) -> Optional[int]:
        if self.kind == "truncated":
            return len(self._data["members"])
        return None

    def materialize(self, n: int) -> Ideal:
        if n < 0:
            raise ValueError("filtration degree must be nonnegative")
        if n == 0:
            return unit_ideal(self.ctx)
        if n in self._cache:
            return self._cache[n]
        value = self._compute(n)
        with self._lock:
            self._cache.setdefault(n, value)
        return self._cache[n]

    def _compute(self, n: int) -> Ideal:
        kind = self.kind
        if kind == "adic":
            return ideal_power(self._data["ideal"], n)
        if kind == "symbolic":
            return symbolic_power(self._data["ideal"], n, self._data["colon"])
        if kind == "trivial_max":
            return maximal_ideal(self.ctx)
        if kind == "truncated":
            members = self._data["members"]
            a = len(members)
            if n <= a:
                return members[n - 1]
            # canonical generator lists keep the partition products small
            canon = [Ideal.from_groebner(m.gb) for m in members]
            cache: Dict[tuple, Ideal] = {}

            def prefix_product(part: tuple) -> Ideal:
                if part not in cache:
                    if len(part) == 1:
                        cache[part] = canon[part[0] - 1]
                    else:
                        cache[part] = ideal_product(
                            prefix_product(part[:-1]), canon[part[-1] - 1]
                        )
                return cache[part]

            gens: List[Polynomial] = []
            for part in _partitions(n, a):
                gens.extend(prefix_product(part).gens)
            return Ideal(self.ctx, gens)
        raise ValueError(f"unknown filtration kind {kind!r}")

    def truncate(self, a: int) -> "Filtration":
        """The a-th truncated filtration generated by the first a members."""
        if a < 1:
            raise ValueError("truncation bound must be at least 1")
        members = [self.materialize(n) for n in range(1, a + 1)]
        return Filtration.truncated(members)

    def __repr__(self):
        return f"Filtration(kind={self.kind!r})"


# ---------------------------------------------------------------------------
# Rees presentation and fiber cone
# ---------------------------------------------------------------------------

_T_AUX = "t@"


@dataclass
class ReesPresentation:
    """Presentation of the Rees algebra of a truncation.

    ``ring_ctx`` is the combined polynomial ring in the base variables
    and the fiber variables; ``rees_kernel`` is the kernel of
    T{n}_{j} -> f_{n,j} * t^n there; ``fiber_kernel`` lives in the
    T-variables alone and cuts out the special fiber.
    """

    base_ctx: RingContext
    ring_ctx: RingContext
    fiber_ctx: Optional[RingContext]
    generators: Tuple[Tuple[str, int, Polynomial], ...]   # (name, degree, generator)
    rees_kernel: Ideal
    fiber_kernel: Optional[Ideal]

    @property
    def tvar_names(self):
        return tuple(name for name, _, _ in self.generators)

    def tdegree_weights(self):
        """Grading with base variables in degree 0 and T{n}_j in degree n."""
        zeros = (0,) * self.base_ctx.nvars
        return zeros + tuple(deg for _, deg, _ in self.generators)

    def substitution_images(self):
        """Map of presentation variables to their images f * t^n.

        The images live in the base ring extended by a single variable t;
        substituting them into any element of the Rees kernel must give 0.
        """
        ext = RingContext(
            self.base_ctx.p,
            self.base_ctx.variables + ("t",),
            MonomialOrder.grevlex(),
            self.base_ctx.weights + (1,),
        )
        tvar = ext.var("t")
        images = {}
        for name, degree, gen in self.generators:
            lifted = Polynomial(
                ext, tuple((m + (0,), c) for m, c in gen.terms)
            )
            images[name] = lifted * tvar ** degree
        for v in self.base_ctx.variables:
            images[v] = ext.var(v)
        return ext, images


def _chosen_generators(F: Filtration, a: int) -> List[Tuple[int, Polynomial]]:
    """Canonical algebra-generator choice through degree a.

    Walks the canonical reduced basis of each member in ascending
    order and keeps exactly the elements not already produced by
    products of lower members and previously kept elements.  Degree 1
    always keeps its full reduced basis; higher degrees only receive
    variables for genuinely new generators, which keeps presentations
    small without changing the presented algebra.
    """
    chosen: List[Tuple[int, Polynomial]] = []
    members = {n: F.materialize(n) for n in range(1, a + 1)}
    for n in range(1, a + 1):
        member = members[n]
        if member.is_unit:
            raise ValueError("filtration member is the unit ideal")
        product_gens: List[Polynomial] = []
        for i in range(1, n // 2 + 1):
            product_gens.extend(ideal_product(members[i], members[n - i]).gens)
        absorbed = Ideal(F.ctx, product_gens)
        for g in member.gb.basis:
            if not absorbed.contains(g):
                chosen.append((n, g))
                absorbed = Ideal(F.ctx, absorbed.gens + (g,))
    return chosen


def rees_presentation(F: Filtration, a: int = 1) -> ReesPresentation:
    """Present the Rees algebra of the truncation of F at a.

    The kernel is computed by block-order elimination of t from the
    relations T{n}_{j} - f_{n,j} t^n; the fiber kernel is generated by
    the images of the kernel generators under x -> 0.
    """
    if a < 1:
        raise ValueError("presentation bound must be at least 1")
    ctx = F.ctx
    chosen: List[Tuple[str, int, Polynomial]] = []
    counters = {n: 0 for n in range(1, a + 1)}
    for n, g in _chosen_generators(F, a):
        counters[n] += 1
        chosen.append((f"T{n}_{counters[n]}", n, g))

    base_n = ctx.nvars
    tnames = tuple(name for name, _, _ in chosen)

    if not tnames:
        combined = RingContext(ctx.p, ctx.variables, MonomialOrder.grevlex(), ctx.weights)
        return ReesPresentation(
            base_ctx=ctx,
            ring_ctx=combined,
            fiber_ctx=None,
            generators=(),
            rees_kernel=Ideal(combined, ()),
            fiber_kernel=None,
        )

    def twent(g):
        w = weighted_degree(g)
        return w if w is not None and w > 0 else 1

    tweights = tuple(twent(g) for _, _, g in chosen)

    # elimination ring: t@ ranked above base and fiber variables
    elim_ctx = RingContext(
        ctx.p,
        (_T_AUX,) + ctx.variables + tnames,
        MonomialOrder.block((0,), MonomialOrder.grevlex()),
        (1,) + ctx.weights + tweights,
    )
    tvar = elim_ctx.var(_T_AUX)
    relations = []
    for name, degree, gen in chosen:
        lifted = Polynomial(
            elim_ctx,
            tuple(((0,) + m + (0,) * len(tnames), c) for m, c in gen.terms),
        )
        relations.append(elim_ctx.var(name) - lifted * tvar ** degree)

    gb = groebner_basis(relations, elim_ctx)

    combined = RingContext(
        ctx.p, ctx.variables + tnames, MonomialOrder.grevlex(), ctx.weights + tweights
    )
    kernel_gens = []
    for g in gb.basis:
        if all(m[0] == 0 for m, _ in g.terms):
            terms = sorted(
                ((m[1:], c) for m, c in g.terms),
                key=lambda t: combined.key(t[0]),
                reverse=True,
            )
            kernel_gens.append(Polynomial(combined, tuple(terms)))
    rees_kernel = Ideal(combined, kernel_gens)

    fiber_ctx = RingContext(
        ctx.p, tnames, MonomialOrder.grevlex(), tuple(deg for _, deg, _ in chosen)
    )
    fiber_gens = []
    for g in rees_kernel.gb.basis:
        terms = []
        for m, c in g.terms:
            if any(m[:base_n]):
                continue
            terms.append((m[base_n:], c))
        if terms:
            terms.sort(key=lambda t: fiber_ctx.key(t[0]), reverse=True)
            fiber_gens.append(Polynomial(fiber_ctx, tuple(terms)))
    fiber_kernel = Ideal(fiber_ctx, fiber_gens)

    return ReesPresentation(
        base_ctx=ctx,
        ring_ctx=combined,
        fiber_ctx=fiber_ctx,
        generators=tuple(chosen),
        rees_kernel=rees_kernel,
        fiber_kernel=fiber_kernel,
    )


# ---------------------------------------------------------------------------
# analytic spread
# ---------------------------------------------------------------------------

@dataclass
class SpreadReport:
    ell: int
    ring_dim: int
    ht: Optional[int]
    bounds_ok: bool
    presentation: Optional[ReesPresentation]
    witness_exponent: Optional[int] = None
    witness_bound: Optional[int] = None
    notes: Tuple[str, ...] = ()


def _validate_spread_input(I: Ideal):
    if not I.is_proper:
        raise ValueError("analytic spread wants a proper ideal")
    if not I.is_homogeneous():
        raise HomogeneityError(
            "analytic spread needs weighted-homogeneous generators; "
            "inhomogeneous input would break the graded-local dictionary"
        )


def _fiber_dimension(I: Ideal) -> Tuple[int, ReesPresentation]:
    """Dimension of the special fiber of a single ideal inside (x...).

    The fiber cone R[It]/(x)R[It] is a quotient of k[T] by the t-graded
    kernel, so its dimension agrees with the local analytic spread for
    any ideal contained in the variable ideal, homogeneous or not.
    """
    pres = rees_presentation(Filtration.adic(I), 1)
    return krull_dim(pres.fiber_kernel), pres


def _reduction_shortcut(I: Ideal, max_subsets: int = 64):
    """Certified small reduction of I drawn from its own generators.

    Scans subsets of at most nvars canonical generators in canonical
    order and checks the Nakayama-form certificate
    I^2 = J*I + m*I^2 exactly; graded Nakayama then makes J a genuine
    reduction of I, so the two share the analytic spread while J has a
    much smaller presentation.  Returns (J, note) or None.  Entirely
    deterministic.
    """
    ctx = I.ctx
    n = ctx.nvars
    gens = list(I.gb.basis)
    if len(gens) <= n:
        return None
    m_ideal = maximal_ideal(ctx)
    base = Ideal.from_groebner(I.gb)
    square = ideal_power(base, 2)
    tried = 0
    for d in range(2, n + 1):
        for combo in itertools.combinations(range(len(gens)), d):
            tried += 1
            if tried > max_subsets:
                return None
            J = Ideal(ctx, [gens[i] for i in combo])
            lhs = ideal_sum(ideal_product(J, base), ideal_product(m_ideal, square))
            if lhs == square:
                note = (
                    "analytic spread via certified reduction: generators "
                    f"{list(combo)} of the reduced basis satisfy "
                    "I^2 = J*I + m*I^2, checked exactly"
                )
                return J, note
    return None


_SPREAD_MEMO: Dict[Ideal, "SpreadReport"] = {}


def analytic_spread(I: Ideal) -> SpreadReport:
    """Analytic spread of an ideal: dimension of its special fiber.

    Requires a proper, weighted-homogeneous ideal (hence contained in
    the ideal of variables).  The report records the classical bounds
    ht(I) <= ell <= dim R.  Ideals with more generators than variables
    are first replaced by a certified reduction, which has the same
    analytic spread and a much smaller presentation; the certificate is
    recorded in the report notes.
    """
    _validate_spread_input(I)
    n = I.ctx.nvars
    if I.is_zero:
        return SpreadReport(
            ell=0, ring_dim=n, ht=None, bounds_ok=True, presentation=None,
            notes=("zero ideal: fiber is the residue field",),
        )
    if I in _SPREAD_MEMO:
        return _SPREAD_MEMO[I]
    notes = ()
    if len(I.gb.basis) > n:
        found = _reduction_shortcut(I)
        if found is not None:
            J, note = found
            ell, pres = _fiber_dimension(J)
            notes = (note,)
        else:
            ell, pres = _fiber_dimension(I)
    else:
        ell, pres = _fiber_dimension(I)
    ht = height(I)
    report = SpreadReport(
        ell=ell,
        ring_dim=n,
        ht=ht,
        bounds_ok=(ht <= ell <= n),
        presentation=pres,
        notes=notes,
    )
    _SPREAD_MEMO[I] = report
    return report


def analytic_spread_truncated(
    F: Filtration,
    a: int,
    witness_bound: Optional[int] = None,
) -> SpreadReport:
    """Analytic spread of the a-th truncation of F.

    Besides the fiber dimension, searches e <= witness_bound (default
    3a) for a single ideal I_{a,e} whose own analytic spread equals the
    truncation's; the found exponent (or its absence up to the bound)
    is recorded in the report.  Pass ``witness_bound=0`` to skip.
    """
    if a < 1:
        raise ValueError("truncation bound must be at least 1")
    trunc = F if F.kind == "truncated" and F.truncation_bound == a else F.truncate(a)
    I1 = trunc.materialize(1)
    _validate_spread_input(I1)
    n = F.ctx.nvars
    pres = rees_presentation(trunc, a)
    if pres.fiber_ctx is None:
        return SpreadReport(
            ell=0, ring_dim=n, ht=None, bounds_ok=True, presentation=pres,
            notes=("zero filtration",),
        )
    ell = krull_dim(pres.fiber_kernel)
    ht = height(I1) if not I1.is_zero else None
    bounds_ok = (ell <= n) and (ht is None or ht <= ell)

    bound = 3 * a if witness_bound is None else witness_bound
    witness = None
    for e in range(1, bound + 1):
        member = trunc.materialize(e)
        if member.is_zero or not member.is_proper:
            continue
        if analytic_spread(member).ell == ell:
            witness = e
            break
    notes = ()
    if witness is None and bound > 0:
        notes = (f"no single-ideal spread witness found up to e = {bound}",)
    return SpreadReport(
        ell=ell,
        ring_dim=n,
        ht=ht,
        bounds_ok=bounds_ok,
        presentation=pres,
        witness_exponent=witness,
        witness_bound=bound,
        notes=notes,
    )


@dataclass
class EquimultipleReport:
    equimultiple: bool
    ht: int
    ell: int


def equimultiple_check(I: Ideal) -> EquimultipleReport:
    """Compare height and analytic spread; equal means equimultiple."""
    report = analytic_spread(I)
    if report.ht is None:
        raise ValueError("equimultiplicity needs a nonzero ideal")
    return EquimultipleReport(report.ht == report.ell, report.ht, report.ell)


# ---------------------------------------------------------------------------
# spread-zero witnesses and finite-generation probe
# ---------------------------------------------------------------------------

def fiber_nilpotency_witness(
    F: Filtration, n: int, f: Polynomial, max_power: int
) -> Optional[int]:
    """Least m <= max_power with f^m inside m_R * I_{m n}, else None.

    Existence of such witnesses for every element of every member is
    the ideal-theoretic face of the filtration having analytic spread
    zero; an adic filtration of a nonzero ideal never produces one.
    """
    if max_power < 1:
        raise ValueError("witness search bound must be at least 1")
    member = F.materialize(n)
    if not member.contains(f):
        raise ValueError("element does not lie in the requested member")
    m_ideal = maximal_ideal(F.ctx)
    for m in range(1, max_power + 1):
        target = ideal_product(m_ideal, F.materialize(m * n))
        if target.contains(f ** m):
            return m
    return None


def finite_generation_probe(
    I: Ideal,
    J: Optional[Ideal] = None,
    a_max: int = 3,
    n_max: Optional[int] = None,
) -> dict:
    """Evidence-gathering probe for the symbolic algebra of I.

    Reports, up to the stated bounds only: (i) for each a <= a_max
    whether the a-th truncation reproduces every symbolic power up to
    n_max (stabilization means the symbolic algebra is generated in
    degrees <= a as far as tested); (ii) the truncation spreads with the
    dichotomy flags; (iii) the spreads of the symbolic powers themselves
    with the below-dimension check at the maximal ideal.  The report is
    a bounded search, never a proof.
    """
    if a_max < 1:
        raise ValueError("probe bound a_max must be at least 1")
    if n_max is None:
        n_max = a_max + 2
    if n_max < a_max:
        raise ValueError("n_max must be at least a_max")

    F = Filtration.symbolic(I, J)
    n = I.ctx.nvars
    symbolic_members = {k: F.materialize(k) for k in range(1, n_max + 1)}

    matches = {}
    generated_at = None
    for a in range(1, a_max + 1):
        trunc = F.truncate(a)
        ok = all(
            trunc.materialize(k) == symbolic_members[k]
            for k in range(a + 1, n_max + 1)
        )
        matches[a] = ok
        if ok and generated_at is None:
            generated_at = a

    truncation_spreads = {}
    truncation_witness = {}
    for a in range(1, a_max + 1):
        rep = analytic_spread_truncated(F, a)
        truncation_spreads[a] = rep.ell
        truncation_witness[a] = rep.witness_exponent

    symbolic_spreads = {
        k: analytic_spread(symbolic_members[k]).ell for k in range(1, a_max + 1)
    }

    return {
        "label": f"evidence up to bound a = {a_max}",
        "evidence_bound": a_max,
        "tested_degree_bound": n_max,
        "ring_dim": n,
        "truncation_matches_symbolic": matches,
        "generated_in_degrees_at_most": generated_at,
        "truncation_spreads": truncation_spreads,
        "truncation_spread_witness": truncation_witness,
        "some_truncation_spread_below_dim": any(
            v < n for v in truncation_spreads.values()
        ),
        "all_truncation_spreads_equal_dim": all(
            v == n for v in truncation_spreads.values()
        ),
        "symbolic_power_spreads": symbolic_spreads,
        "some_symbolic_spread_below_dim": any(
            v < n for v in symbolic_spreads.values()
        ),
    }
