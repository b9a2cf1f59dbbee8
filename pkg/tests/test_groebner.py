import random

from spreadlab import (
    MonomialOrder,
    RingContext,
    groebner_basis,
    ideal,
    ideal_equal,
    normal_form,
)
from spreadlab.ring import mono_div, mono_lcm

from oracles import naive_buchberger


def test_linear_elimination(ctx3):
    G = groebner_basis([ctx3.poly("x + y"), ctx3.poly("x - y")])
    assert {str(g) for g in G} == {"x", "y"}


def test_already_reduced(ctx3):
    G = groebner_basis([ctx3.var("x")])
    assert [str(g) for g in G] == ["x"]


def test_zero_ideal(ctx3):
    assert groebner_basis([ctx3.zero()], ctx3).basis == ()
    assert groebner_basis([], ctx3).basis == ()


def test_space_curve_matches_naive_oracle(curve_ctx, curve_prime):
    expected = naive_buchberger(list(curve_prime.gens), curve_ctx)
    got = groebner_basis(curve_prime.gens, curve_ctx).basis
    assert tuple(got) == tuple(expected)


def test_canonical_under_shuffle_and_rescale(ctx3):
    rng = random.Random(23)
    gens = [ctx3.poly("x^2 - y*z"), ctx3.poly("x*y + z^2"), ctx3.poly("y^3 - x*z^2")]
    reference = groebner_basis(gens, ctx3).basis
    for _ in range(8):
        shuffled = gens[:]
        rng.shuffle(shuffled)
        scaled = [g * rng.randrange(1, 32003) for g in shuffled]
        assert groebner_basis(scaled, ctx3).basis == reference


def test_buchberger_criterion_on_output(ctx3, curve_prime):
    for gens in (
        [ctx3.poly("x^2 - y"), ctx3.poly("x*y - z"), ctx3.poly("y^2 - x*z")],
        list(curve_prime.gens),
    ):
        ctx = gens[0].ctx
        G = groebner_basis(gens, ctx)
        basis = list(G.basis)
        for i in range(len(basis)):
            for j in range(i + 1, len(basis)):
                f, g = basis[i], basis[j]
                lcm = mono_lcm(f.lm(), g.lm())
                s = ctx.monomial(mono_div(lcm, f.lm())) * f - ctx.monomial(
                    mono_div(lcm, g.lm())
                ) * g
                assert G.normal_form(s).is_zero


def test_membership_soundness(ctx3):
    rng = random.Random(31)
    gens = [ctx3.poly("x^2 + y*z"), ctx3.poly("y^2 - z^2")]
    G = groebner_basis(gens, ctx3)
    for _ in range(20):
        combo = ctx3.zero()
        for g in gens:
            cof = ctx3.zero()
            for _ in range(rng.randrange(1, 3)):
                cof = cof + ctx3.monomial(
                    tuple(rng.randrange(3) for _ in range(3)), rng.randrange(1, 32003)
                )
            combo = combo + cof * g
        assert G.normal_form(combo).is_zero
    assert not G.normal_form(ctx3.one()).is_zero


def test_one_reduces_to_one_mod_proper(ctx3):
    G = groebner_basis([ctx3.var("x"), ctx3.var("y")], ctx3)
    assert normal_form(ctx3.one(), G) == ctx3.one()


def test_substitution_under_lex():
    ctx = RingContext(32003, ("x", "y"), MonomialOrder.lex())
    G = groebner_basis([ctx.poly("x - y")], ctx)
    assert normal_form(ctx.poly("x^2"), G) == ctx.poly("y^2")


def test_ideal_equal(ctx3):
    assert ideal_equal(
        ideal(ctx3, ctx3.var("x"), ctx3.var("y")),
        ideal(ctx3, ctx3.poly("x + y"), ctx3.poly("x - y")),
    )
    assert not ideal_equal(ideal(ctx3, ctx3.var("x")), ideal(ctx3, ctx3.poly("x^2")))


def test_random_small_ideals_match_oracle(ctx2):
    rng = random.Random(47)
    for _ in range(10):
        gens = []
        for _ in range(rng.randrange(1, 4)):
            f = ctx2.zero()
            for _ in range(rng.randrange(1, 4)):
                f = f + ctx2.monomial(
                    (rng.randrange(4), rng.randrange(4)), rng.randrange(1, 32003)
                )
            gens.append(f)
        expected = naive_buchberger(gens, ctx2)
        got = groebner_basis(gens, ctx2).basis
        assert tuple(got) == tuple(expected)
