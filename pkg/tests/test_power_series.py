import itertools

import pytest

from ordercalc.cyclotomic import CycField
from ordercalc.errors import (
    EqualIdeals,
    IdealIsUnitIdeal,
    NotSaturated,
    TruncMismatch,
)
from ordercalc.power_series import (
    CommIdeal,
    TruncSeries,
    ideal_from_generators,
    nakayama_corank1_pick,
    series_dim,
    socle_and_cosocle_picks,
    socle_pick,
    staircase_ideal,
)

Q = CycField(1)


def mono(i, j, N=5, coeff=1):
    return TruncSeries.monomial(Q, N, i, j, coeff)


def gens(*pairs, N=5):
    return [mono(i, j, N) for (i, j) in pairs]


def maximal(N=5):
    return CommIdeal.maximal(Q, N)


def test_series_products_truncate():
    # (u+v)^2 vanishes at truncation order 2
    s = TruncSeries.from_int_coeffs(Q, 2, {(1, 0): 1, (0, 1): 1})
    assert (s * s).is_zero()
    # u*v survives at order 3
    assert mono(1, 0, 3) * mono(0, 1, 3) == mono(1, 1, 3)
    # (1+u)(1-u+u^2) = 1 once degree-3 terms drop
    a = TruncSeries.from_int_coeffs(Q, 3, {(0, 0): 1, (1, 0): 1})
    b = TruncSeries.from_int_coeffs(Q, 3, {(0, 0): 1, (1, 0): -1, (2, 0): 1})
    assert a * b == TruncSeries.one(Q, 3)


def test_series_trunc_mismatch():
    with pytest.raises(TruncMismatch):
        mono(1, 0, 3) + mono(1, 0, 4)


def test_maximal_ideal_colength():
    m = ideal_from_generators(gens((1, 0), (0, 1), N=3), N=3)
    assert m.saturated and m.colength() == 1


def test_monomial_staircase_colength():
    J = ideal_from_generators(gens((2, 0), (0, 1), N=4), N=4)
    assert J.colength() == 2
    assert J.standard_monomials() == [(0, 0), (1, 0)]


def brute_monomial_colength(exponents, N):
    """Independent staircase count for monomial ideals."""
    count = 0
    for i, j in itertools.product(range(N), repeat=2):
        if i + j >= N:
            continue
        if not any(i >= a and j >= b for a, b in exponents):
            count += 1
    return count


def test_colength_against_staircase_oracle():
    J = ideal_from_generators(gens((2, 0), (1, 1), (0, 3), N=6), N=6)
    assert J.colength() == brute_monomial_colength([(2, 0), (1, 1), (0, 3)], 6) == 4


def test_non_principal_like_generator_is_caught_by_saturation():
    # u + v^2 generates an ideal of infinite colength (the quotient is a
    # power series line); the truncated closures at N = 4 and N = 5
    # disagree and the saturation certificate rejects both.
    for N in (4, 5):
        g = TruncSeries.from_int_coeffs(Q, N, {(1, 0): 1, (0, 2): 1})
        J = ideal_from_generators([g], N=N)
        assert not J.saturated
        with pytest.raises(NotSaturated):
            J.colength()
    dims = []
    for N in (4, 5):
        g = TruncSeries.from_int_coeffs(Q, N, {(1, 0): 1, (0, 2): 1})
        J = ideal_from_generators([g], N=N)
        dims.append(series_dim(N) - J.space.dim)
    assert dims[0] != dims[1]


@pytest.mark.parametrize("k", [1, 2, 3])
def test_power_colength_formula(k):
    N = 6
    powers = [(i, k - i) for i in range(k + 1)]
    J = ideal_from_generators(gens(*powers, N=N), N=N)
    assert J.colength() == k * (k + 1) // 2


def test_closure_is_a_fixpoint():
    J = ideal_from_generators(gens((2, 0), (0, 1), N=5), N=5)
    again = CommIdeal.from_generators(J.basis_series(), N=5, field=Q)
    assert again == J


def test_truncation_stability_of_colength():
    J = ideal_from_generators(gens((2, 0), (1, 1), (0, 3), N=5), N=5)
    assert J.retruncate(6).colength() == J.colength()
    assert J.retruncate(7).colength() == J.colength()


def test_nakayama_pick_examples():
    # whole ring drops to the maximal ideal
    assert nakayama_corank1_pick(CommIdeal.whole(Q, 5)) == maximal()
    # maximal ideal keeps v (last degree-one monomial) and u^2
    got = nakayama_corank1_pick(maximal())
    assert got == ideal_from_generators(gens((0, 1), (2, 0), N=5), N=5)
    # principal-flavoured input: (u) drops to u*(u,v)
    J = ideal_from_generators(gens((1, 0), N=4), N=4)
    # (u) alone is unsaturated; saturate by adding v^3
    J = ideal_from_generators(gens((1, 0), (0, 3), N=4), N=4)
    got = nakayama_corank1_pick(J)
    assert got.colength() == J.colength() + 1
    assert J.contains_ideal(got)


def test_nakayama_pick_postconditions():
    for pairs in [((1, 0), (0, 1)), ((2, 0), (0, 1)), ((2, 0), (1, 1), (0, 2))]:
        J = ideal_from_generators(gens(*pairs, N=6), N=6)
        out = nakayama_corank1_pick(J)
        assert out.colength() == J.colength() + 1
        assert J.contains_ideal(out)
        # contains (u,v)*J
        shifted_u = J.shifted_space(1, 0)
        shifted_v = J.shifted_space(0, 1)
        assert out.space.contains_subspace(shifted_u)
        assert out.space.contains_subspace(shifted_v)
        # deterministic
        assert nakayama_corank1_pick(J) == out


def test_socle_pick_examples():
    assert socle_pick(maximal()).is_whole()
    m2 = ideal_from_generators(gens((2, 0), (1, 1), (0, 2), N=5), N=5)
    assert socle_pick(m2) == ideal_from_generators(gens((0, 1), (2, 0), N=5), N=5)
    J = ideal_from_generators(gens((2, 0), (0, 1), N=5), N=5)
    assert socle_pick(J) == maximal()


def test_socle_pick_postconditions():
    J = ideal_from_generators(gens((3, 0), (1, 1), (0, 2), N=6), N=6)
    out = socle_pick(J)
    assert out.colength() == J.colength() - 1
    assert out.contains_ideal(J)
    # the added vector is annihilated into J by u and v
    extra = [row for p, row in out.space.rows.items() if p not in J.space.rows]
    assert len(extra) == 1
    from ordercalc.power_series import _shift

    assert J.space.contains(_shift(extra[0], 6, 1, 0))
    assert J.space.contains(_shift(extra[0], 6, 0, 1))


def test_socle_pick_rejects_unit_ideal():
    with pytest.raises(IdealIsUnitIdeal):
        socle_pick(CommIdeal.whole(Q, 4))


def test_socle_and_cosocle_picks():
    m = maximal()
    m2 = ideal_from_generators(gens((2, 0), (1, 1), (0, 2), N=5), N=5)
    smaller, larger = socle_and_cosocle_picks(m2, m)
    assert smaller == ideal_from_generators(gens((0, 1), (2, 0), N=5), N=5)
    # one-dimensional quotients on both sides
    assert m.space.dim - smaller.space.dim == 1
    assert larger.space.dim - m2.space.dim == 1
    assert m.contains_ideal(smaller) and smaller.contains_ideal(m2)
    assert m.contains_ideal(larger) and larger.contains_ideal(m2)

    J = ideal_from_generators(gens((2, 0), (0, 1), N=5), N=5)
    smaller2, larger2 = socle_and_cosocle_picks(J, m)
    assert smaller2 == J
    assert larger2 == m


def test_socle_and_cosocle_picks_equal_ideals():
    with pytest.raises(EqualIdeals):
        socle_and_cosocle_picks(maximal(), maximal())


def test_staircase_ideal():
    st = staircase_ideal(3, 5)
    assert st.standard_monomials() == [(0, 0), (1, 0), (0, 1)]
    assert st == ideal_from_generators(gens((2, 0), (1, 1), (0, 2), N=5), N=5)
    assert staircase_ideal(1, 5) == maximal()
    assert staircase_ideal(2, 5).standard_monomials() == [(0, 0), (1, 0)]


def test_cyclotomic_coefficients_are_supported():
    F = CycField(3)
    z = F.zeta()
    g = TruncSeries(F, 4, {(1, 0): F.one(), (0, 1): z})
    h = TruncSeries(F, 4, {(0, 1): F.one()})
    J = ideal_from_generators([g, h], N=4, field=F)
    assert J.colength() == 1
