import math

import numpy as np
import pytest

from spreadlab import RingContext
from spreadlab.fatpoints import (
    FatPointScheme,
    fiber_generator_census,
    graded_power_containment,
    h0,
    linear_system,
    monomial_basis,
    mult_map_surjective,
    multiply_forms,
    sample_scheme,
)


NAGATA_SEED = 42
ELLIPTIC_SEED = 7


@pytest.fixture(scope="module")
def nagata():
    return sample_scheme(16, 1, "none", seed=NAGATA_SEED)


@pytest.fixture(scope="module")
def elliptic():
    return sample_scheme(12, 1, "elliptic", seed=ELLIPTIC_SEED)


# --- sampling ----------------------------------------------------------------

def test_sampling_deterministic(nagata):
    again = sample_scheme(16, 1, "none", seed=NAGATA_SEED)
    assert again.points == nagata.points


def test_points_distinct(nagata, elliptic):
    assert len(set(nagata.points)) == 16
    assert len(set(elliptic.points)) == 12


def test_elliptic_points_on_cubic(elliptic):
    p = elliptic.p
    for pt in elliptic.points:
        total = 0
        for c, (a, b, e) in zip(elliptic.cubic, monomial_basis(3)):
            total += c * pow(pt[0], a, p) * pow(pt[1], b, p) * pow(pt[2], e, p)
        assert total % p == 0


def test_tiny_field_capacity_error():
    # the projective plane over F_7 has only 57 points
    with pytest.raises(ValueError):
        sample_scheme(60, 1, "none", seed=1, p=7, max_tries=400)


def test_duplicate_detection():
    with pytest.raises(ValueError):
        FatPointScheme(32003, ((1, 0, 0), (1, 0, 0)), (1, 1), None, 0)


# --- h0 values -----------------------------------------------------------------

def test_pencil_of_lines():
    s = sample_scheme(1, 1, "none", seed=5)
    assert h0(s, 1) == 2


def test_conic_through_five_points():
    s = sample_scheme(5, 1, "none", seed=11)
    assert h0(s, 2) == 1


def test_nagata_no_quartic(nagata):
    ls = linear_system(nagata, 4)
    assert ls.h0 == 0
    assert ls.rank == len(monomial_basis(4))   # 15 independent conditions


def test_nagata_vanishing_at_scale(nagata):
    for m in (1, 2, 3):
        assert h0(nagata, 4 * m, m) == 0


def test_elliptic_ladder(elliptic):
    for m in (1, 2, 3):
        assert h0(elliptic, 3 * m, m) == 1
        assert h0(elliptic, 3 * m - 1, m) == 0


def test_elliptic_quartics(elliptic):
    assert h0(elliptic, 4, 1) == 3


def test_h0_monotone(nagata):
    values = [h0(nagata, d, 1) for d in range(3, 9)]
    assert values == sorted(values)
    assert h0(nagata, 8, 2) <= h0(nagata, 8, 1)


def test_condition_count_bound(nagata, elliptic):
    for scheme, d, m in ((nagata, 6, 1), (nagata, 9, 2), (elliptic, 7, 2)):
        s = scheme.with_multiplicities(m)
        ls = linear_system(s, d)
        conditions = scheme.r * math.comb(m + 1, 2)
        N = len(monomial_basis(d))
        assert ls.rank <= conditions
        assert ls.h0 >= N - conditions
    # nonspecial sample: equality
    ls = linear_system(nagata.with_multiplicities(1), 6)
    assert ls.h0 == len(monomial_basis(6)) - 16


def test_basis_vanishing_rechecked(nagata, elliptic):
    assert linear_system(nagata.with_multiplicities(2), 9).verify_vanishing()
    assert linear_system(elliptic.with_multiplicities(1), 4).verify_vanishing()


def test_basis_vanishing_independent_route(elliptic):
    """Re-substitute basis forms symbolically along local parameters."""
    m = 2
    d = 7
    ls = linear_system(elliptic.with_multiplicities(m), d)
    ctx = RingContext(elliptic.p, ("s", "t"))
    from spreadlab.fatpoints import _local_frame

    for row in ls.basis[:3]:
        for pt in elliptic.points[:4]:
            U, V = _local_frame(pt, elliptic.p)
            svar, tvar = ctx.gens()
            coords = [
                ctx.const(pt[i]) + svar * U[i] + tvar * V[i] for i in range(3)
            ]
            total = ctx.zero()
            for c, (e1, e2, e3) in zip(row.tolist(), monomial_basis(d)):
                if c:
                    total = total + ctx.const(int(c)) * (
                        coords[0] ** e1 * coords[1] ** e2 * coords[2] ** e3
                    )
            for mono, coeff in total.terms:
                assert mono[0] + mono[1] >= m or coeff == 0


# --- multiplication maps ----------------------------------------------------------

def test_multmap_nagata_surjective(nagata):
    rep = mult_map_surjective(nagata, 8, 1)
    assert rep.surjective


def test_multmap_elliptic_surjective(elliptic):
    rep = mult_map_surjective(elliptic, 8, 1)
    assert rep.surjective


def test_multmap_elliptic_cubic_fails(elliptic):
    rep = mult_map_surjective(elliptic, 3, 1)
    assert not rep.surjective
    assert (rep.image_dim, rep.target_dim) == (0, 1)


# --- containments -------------------------------------------------------------------

def test_nagata_containment_small(nagata):
    rep = graded_power_containment(nagata, 1, 4, 21)
    assert not rep["empty"]
    assert all(row["contained"] for row in rep["degrees"].values())


def test_containment_empty_flag(nagata):
    rep = graded_power_containment(nagata, 1, 4, 19)
    assert rep["empty"]


def test_elliptic_exception_degree(elliptic):
    rep = graded_power_containment(elliptic, 1, 4, 13)
    assert rep["expected_exception_degree"] == 12
    assert rep["degrees"][12]["contained"] is False
    assert rep["degrees"][13]["contained"] is True


# --- census --------------------------------------------------------------------------

def test_elliptic_census_one_survivor(elliptic):
    rep = fiber_generator_census(elliptic, 1, 5)
    assert rep["survivors"] == [(1, 3)]
    by_degree = {row["degree"]: row for row in rep["pieces"]}
    assert by_degree[3]["piece_dim"] == 1


def test_nagata_census_no_survivors(nagata):
    rep = fiber_generator_census(nagata, 1, 6)
    assert rep["survivors"] == []
    assert all(not row["survives"] for row in rep["pieces"])


def test_census_empty(nagata):
    rep = fiber_generator_census(nagata, 0, 6)
    assert rep["pieces"] == [] and rep["survivors"] == []


# --- product machinery ----------------------------------------------------------------

def test_multiply_forms_agrees_with_ring():
    ctx = RingContext(32003, ("x1", "x2", "x3"))
    rng_vec = np.array([3, 1, 0, 2, 0, 5], dtype=np.int64)       # degree 2
    other = np.array([1, 0, 4], dtype=np.int64)                  # degree 1
    prod = multiply_forms(rng_vec, 2, other, 1, 32003)
    f = ctx.zero()
    for c, m in zip(rng_vec.tolist(), monomial_basis(2)):
        f = f + ctx.monomial(m, int(c))
    g = ctx.zero()
    for c, m in zip(other.tolist(), monomial_basis(1)):
        g = g + ctx.monomial(m, int(c))
    expected = f * g
    h = ctx.zero()
    for c, m in zip(prod.tolist(), monomial_basis(3)):
        h = h + ctx.monomial(m, int(c))
    assert h == expected
