import pytest

from ordercalc.cyclotomic import CycField
from ordercalc.errors import (
    ImproperIdeal,
    NotCosimple,
    NotSmoothRam,
    RequiresFGreaterOne,
    ZeroPoint,
)
from ordercalc.orders import AlgebraSpec, maximal_ideal
from ordercalc.power_series import CommIdeal, TruncSeries, ideal_from_generators
from ordercalc.pools import pool_eligible_chains
from ordercalc.submodules import (
    IdealChain,
    chain_compose,
    check_dual_containment,
    close_left_ideal,
    is_two_sided,
    left_escape,
    mf_expand,
)
from ordercalc.deformations import (
    deform_smooth_ram,
    deform_unramified,
    divisibility_probe,
    family_fiber,
    simple_corank_step,
)

Q = CycField(1)


def comm(pairs, N):
    return ideal_from_generators(
        [TruncSeries.monomial(Q, N, i, j) for i, j in pairs], N=N, field=Q
    )


def chain_ideal(entries, e, N):
    spec = AlgebraSpec.smooth_ram(e, 1, N)
    return chain_compose(IdealChain(entries), spec), spec


# -- smooth-ramification deformation ----------------------------------------------


def test_deform_all_equal_branch_worked_example():
    # chain (m, m) at e = 2: the last entry shrinks by the corank pick
    # (v, u^2), the first grows to the whole ring; colength 4 is kept
    # and the containment breaks.
    m = CommIdeal.maximal(Q, 6)
    J, spec = chain_ideal([m, m], 2, 6)
    cert = deform_smooth_ram(J)
    assert cert.branch == "all_equal"
    assert cert.colength == J.colength() == 4
    assert cert.chain_after[1] == comm([(0, 1), (2, 0)], 6)
    assert cert.chain_after[0].is_whole()
    assert cert.dual_containment_before and not cert.dual_containment_after
    assert cert.left_ideal_verified and left_escape(cert.after) is None
    assert not check_dual_containment(cert.after)
    assert not is_two_sided(cert.after)


def test_deform_split_branch_worked_example():
    # the radical chain (R, m) splits at the first step: the first entry
    # drops to m, the second rises to R, and the first row now violates
    # the chain order
    m = CommIdeal.maximal(Q, 6)
    R = CommIdeal.whole(Q, 6)
    rad, spec = chain_ideal([R, m], 2, 6)
    cert = deform_smooth_ram(rad)
    assert cert.branch == "split" and cert.split_index == 1
    assert cert.chain_after[0] == m
    assert cert.chain_after[1].is_whole()
    assert cert.colength == 2
    assert not cert.dual_containment_after


def test_deform_no_op_branch():
    spec = AlgebraSpec.smooth_ram(2, 1, 5)
    m1 = close_left_ideal(maximal_ideal(spec, 1), spec)
    cert = deform_smooth_ram(m1)
    assert cert.branch == "no_op"
    assert cert.before == cert.after == m1
    assert not cert.dual_containment_before and not cert.dual_containment_after
    assert cert.family_samples == []


def test_deform_wrong_kind_and_unit_ideal():
    with pytest.raises(NotSmoothRam):
        deform_smooth_ram_dummy = deform_smooth_ram
        from ordercalc.submodules import whole_ideal

        deform_smooth_ram_dummy(whole_ideal(AlgebraSpec.singular_ram(2, 1, 4)))
    from ordercalc.submodules import whole_ideal

    with pytest.raises(ImproperIdeal):
        deform_smooth_ram(whole_ideal(AlgebraSpec.smooth_ram(2, 1, 4)))


def test_deform_e3_split_branch():
    m = CommIdeal.maximal(Q, 5)
    R = CommIdeal.whole(Q, 5)
    J, spec = chain_ideal([R, R, m], 3, 5)
    cert = deform_smooth_ram(J)
    assert cert.branch == "split" and cert.split_index == 2
    assert cert.colength == J.colength() == 3
    assert not check_dual_containment(cert.after)
    for s in cert.family_samples:
        assert s.colength == 3


def test_deform_f_two_delegates_through_blocks():
    m = CommIdeal.maximal(Q, 6)
    J, spec = chain_ideal([m, m], 2, 6)
    big = mf_expand(J, 2)
    cert = deform_smooth_ram(big)
    assert cert.branch == "all_equal"
    assert cert.colength == big.colength() == 16
    assert cert.after.spec.f == 2
    assert not check_dual_containment(cert.after)
    assert cert.family_samples[0].ideal == big
    assert cert.family_samples[1].ideal == cert.after


# -- the pencil --------------------------------------------------------------------


def test_family_fiber_endpoints_and_generic_point():
    m = CommIdeal.maximal(Q, 6)
    J, spec = chain_ideal([m, m], 2, 6)
    cert = deform_smooth_ram(J)
    one, zero = Q.one(), Q.zero()
    assert family_fiber(J, cert.after, (one, zero)) == J
    assert family_fiber(J, cert.after, (zero, one)) == cert.after
    mid = family_fiber(J, cert.after, (one, one))
    assert mid != J and mid != cert.after
    assert mid.colength() == 4
    assert left_escape(mid) is None


def test_family_fiber_zero_point_rejected():
    m = CommIdeal.maximal(Q, 6)
    J, spec = chain_ideal([m, m], 2, 6)
    cert = deform_smooth_ram(J)
    with pytest.raises(ZeroPoint):
        family_fiber(J, cert.after, (Q.zero(), Q.zero()))


def test_family_fiber_rejects_unrelated_ideals():
    m = CommIdeal.maximal(Q, 6)
    R = CommIdeal.whole(Q, 6)
    J, spec = chain_ideal([m, m], 2, 6)
    rad, _ = chain_ideal([R, m], 2, 6)
    with pytest.raises(NotCosimple):
        family_fiber(J, rad, (Q.one(), Q.one()))


def test_family_fiber_colength_constant_across_sampled_points():
    J = pool_eligible_chains(2, 1, seed=9)[0]
    cert = deform_smooth_ram(J)
    cols = {s.colength for s in cert.family_samples}
    assert cols == {J.colength()}
    assert len(cert.family_samples) == 12


# -- unramified deformation ---------------------------------------------------------


def test_deform_unramified_minimal_example():
    spec = AlgebraSpec.unramified(2, 5)
    m = CommIdeal.maximal(Q, 5)
    R = CommIdeal.whole(Q, 5)
    cert = deform_unramified([m, R], spec)
    assert cert.colength == 2
    assert not cert.dual_containment_after
    assert cert.witness is not None
    assert cert.branch == "unramified"
    assert cert.family_samples == []  # endpoint-only by design


def test_deform_unramified_staircase_choice():
    # colength 3 picks the minimal staircase, which is the square of the
    # maximal ideal
    spec = AlgebraSpec.unramified(2, 5)
    m2 = comm([(2, 0), (1, 1), (0, 2)], 5)
    R = CommIdeal.whole(Q, 5)
    cert = deform_unramified([m2, R], spec)
    assert cert.colength == 6
    from ordercalc.submodules import morita_drop, FreeModuleSubmodule

    assert morita_drop(cert.after) == FreeModuleSubmodule.from_summands([m2, R])


def test_deform_unramified_f_three():
    spec = AlgebraSpec.unramified(3, 4)
    m = CommIdeal.maximal(Q, 4)
    R = CommIdeal.whole(Q, 4)
    cert = deform_unramified([m, R, R], spec)
    assert cert.colength == 3
    assert not is_two_sided(cert.after)


def test_deform_unramified_preconditions():
    spec1 = AlgebraSpec.unramified(1, 4)
    R = CommIdeal.whole(Q, 4)
    with pytest.raises(RequiresFGreaterOne):
        deform_unramified([R], spec1)
    spec = AlgebraSpec.unramified(2, 4)
    with pytest.raises(ImproperIdeal):
        deform_unramified([R, R], spec)


# -- divisibility probe --------------------------------------------------------------


def test_probe_singular_f2_l1_is_empty():
    spec = AlgebraSpec.singular_ram(2, 2, 4)
    result = divisibility_probe(spec, 1)
    assert not result.divides
    assert result.witness is None
    assert result.reduced_simple_count == 1
    assert result.checks["simples_at_f"] == 0


def test_probe_singular_witnesses_up_to_four():
    spec = AlgebraSpec.singular_ram(2, 1, 4)
    for l in range(1, 5):
        result = divisibility_probe(spec, l)
        assert result.divides
        assert result.witness.colength() == l
        assert left_escape(result.witness) is None


def test_probe_smooth_f2_l2():
    spec = AlgebraSpec.smooth_ram(2, 2, 4)
    result = divisibility_probe(spec, 2)
    assert result.divides and result.witness.colength() == 2


@pytest.mark.parametrize("kind,e", [("unramified", 1), ("smooth_ram", 2), ("singular_ram", 3)])
@pytest.mark.parametrize("f", [1, 2])
def test_probe_matches_divisibility(kind, e, f):
    spec = AlgebraSpec.make(kind, e, f, 4)
    for l in range(0, 2 * f + 1):
        result = divisibility_probe(spec, l)
        assert result.divides == (l % f == 0)
        if result.divides:
            assert result.witness.colength() == l


def test_probe_guard():
    from ordercalc.errors import DimensionBound

    with pytest.raises(DimensionBound):
        divisibility_probe(AlgebraSpec.smooth_ram(2, 1, 4), 1000)


def test_simple_corank_step_decrements():
    spec = AlgebraSpec.smooth_ram(2, 1, 5)
    from ordercalc.submodules import whole_ideal

    ideal = whole_ideal(spec)
    for expected in (1, 2, 3):
        ideal = simple_corank_step(ideal)
        assert ideal.colength() == expected
        assert left_escape(ideal) is None
