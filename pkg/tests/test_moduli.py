"""Moduli pipelines: stacks, unstable strata, decompositions, both modes."""

import pytest

from curvemotives.curves import jacobian_class, sym_power_class
from curvemotives.moduli import (
    behrend_dhillon_bun,
    bgm_chi,
    bun_chi,
    cross_mode_agreement,
    j_linear_closed_form,
    j_squared_cancellation,
    m2_chi,
    m2_var,
    m3_chi,
    m3_var,
    rank2_decomposition,
    rank2_template_blocks,
    rank3_decomposition,
    rank3_index_pairs,
    rank3_template_blocks,
    template_class,
    unstable_rank2_chi,
    unstable_rank2_var_closed,
    unstable_rank2_var_sum,
    unstable_rank3_chi,
    var_rank2_check,
    var_rank3_check,
    x_identity_all,
    x_identity_delta,
)
from curvemotives.series import CoeffPoly, GenusContext


def test_m2_genus2_table():
    m2 = m2_chi(GenusContext.adic(2))
    assert m2.coefficient(0) == 1
    assert m2.coefficient(1) == CoeffPoly.one(2) + CoeffPoly.single(2, (1, 0))
    assert m2.coefficient(2) == 1
    assert m2.coefficient(3) == 1
    assert m2.vanishes_above(3) is None


def test_m2_equals_template():
    for g in (2, 3, 4):
        ctx = GenusContext.adic(g)
        assert bool(m2_chi(ctx).equals(rank2_decomposition(ctx)))
        assert max(m2_chi(ctx).coeffs) == 3 * g - 3


def test_rank2_blocks():
    assert rank2_template_blocks(2) == [((0,), (0, 3)), ((1,), (1,))]
    assert rank2_template_blocks(3) == [((0,), (0, 6)), ((1,), (1, 4)), ((2,), (2,))]


def test_rank3_index_pairs_g2():
    assert rank3_index_pairs(2) == [(0, 0), (0, 1), (1, 0), (0, 2), (1, 1)]


def test_rank3_blocks_g2():
    assert rank3_template_blocks(2) == [
        ((0, 0), (0, 8)),
        ((0, 1), (2, 5)),
        ((1, 0), (1, 6)),
        ((0, 2), (4, 2)),
        ((1, 1), (3,)),
    ]


def test_rank3_block_count():
    # all pairs below the diagonal sum, the truncated boundary row, the middle
    for g in (2, 3, 4, 5, 6):
        want = (2 * g - 1) * (g - 1) + (g - 1) + 1
        assert len(rank3_template_blocks(g)) == want


def test_m3_equals_template():
    for g in (2, 3):
        ctx = GenusContext.adic(g)
        assert bool(m3_chi(ctx).equals(rank3_decomposition(ctx)))
        assert max(m3_chi(ctx).coeffs) == 8 * g - 8


def test_m3_g6_duplicate_exponent_block():
    # at g = 6 the block (0, 8) has both exponents equal to 16, so the
    # template must count it twice
    assert ((0, 8), (16, 16)) in rank3_template_blocks(6)
    ctx = GenusContext.adic(6)
    assert bool(m3_chi(ctx).equals(rank3_decomposition(ctx)))


def test_template_class_accumulates_duplicate_exponents():
    ctx = GenusContext.adic(2)
    doubled = template_class(ctx, [((0, 0), (2, 2))])
    assert doubled.coefficient(2) == 2


def test_bun_and_bgm():
    from curvemotives.curves import zeta_at_lefschetz

    ctx = GenusContext.adic(2)
    assert bool(bun_chi(ctx, 2).equals(zeta_at_lefschetz(ctx, 1)))
    b = bgm_chi(ctx)
    assert b.coefficient(0) == 1 and b.coefficient(7) == 1
    with pytest.raises(ValueError):
        bun_chi(ctx, 4)
    with pytest.raises(ValueError):
        bun_chi(GenusContext.dimensional(2), 2)


def test_unstable_rank2_lowest_coefficient():
    ctx = GenusContext.adic(2)
    un = unstable_rank2_chi(ctx)
    assert min(un.coeffs) == 2
    assert un.coefficient(2) == (CoeffPoly.one(2) + CoeffPoly.single(2, (1, 0))
                                 + CoeffPoly.single(2, (0, 1)))


def test_unstable_rank3_support_starts_at_2g_minus_1():
    for g in (2, 3):
        un = unstable_rank3_chi(GenusContext.adic(g))
        assert min(un.coeffs) == 2 * g - 1


def test_j_squared_cancellation():
    for g in (2, 3):
        steps = j_squared_cancellation(GenusContext.adic(g))
        assert [label for label, _ in steps] == [
            "sum-vanishes", "stack-term-form", "linear-term-form",
            "quadratic-term-form"]
        assert all(bool(cmp) for _, cmp in steps)


def test_j_linear_closed_form():
    for g in (2, 3, 4):
        assert bool(j_linear_closed_form(GenusContext.adic(g)))


def test_x_identity_holds():
    for g in range(2, 9):
        for label, delta in x_identity_all(g):
            assert not delta, "%s at g=%d: %s" % (label, g, delta)


def test_x_identity_argument_guards():
    with pytest.raises(ValueError):
        x_identity_delta(1, 0)
    with pytest.raises(ValueError):
        x_identity_delta(3, 2)
    with pytest.raises(ValueError):
        x_identity_delta(3, -1)


def test_behrend_dhillon_top_coefficient():
    dctx = GenusContext.dimensional(2)
    assert behrend_dhillon_bun(dctx, 2).coefficient(3) == 1
    assert behrend_dhillon_bun(dctx, 3).coefficient(8) == 1
    with pytest.raises(ValueError):
        behrend_dhillon_bun(GenusContext.adic(2), 2)


def test_unstable_var_sum_and_closed_form():
    for g in (2, 3):
        dctx = GenusContext.dimensional(g)
        total = unstable_rank2_var_sum(dctx)
        assert bool(total.equals(unstable_rank2_var_closed(dctx)))
        # the d = 1 stratum dominates: top exponent 2g-3
        assert max(total.coeffs) == 2 * g - 3


def test_var_mode_moduli_match_templates():
    for g in (2, 3):
        dctx = GenusContext.dimensional(g)
        assert bool(m2_var(dctx).equals(rank2_decomposition(dctx)))
        assert bool(m3_var(dctx).equals(rank3_decomposition(dctx)))


def test_cross_mode_agreement_of_moduli_classes():
    for g in (2, 3):
        dctx = GenusContext.dimensional(g)
        actx = GenusContext.adic(g)
        mv, ma = m2_var(dctx), m2_chi(actx)
        cmp = cross_mode_agreement(mv, ma, 0, min(mv.valid_hi, ma.valid_hi))
        assert bool(cmp)


def test_cross_mode_disagreement_is_witnessed():
    dctx = GenusContext.dimensional(2)
    actx = GenusContext.adic(2)
    cmp = cross_mode_agreement(m2_var(dctx), m2_chi(actx).shift(1), 0, 5)
    assert not cmp and cmp.witness_exponent == 0


def test_var_rank2_check_shape():
    steps = dict(var_rank2_check(GenusContext.dimensional(2)))
    assert bool(steps["decomposition"])
    assert bool(steps["cross-mode"])
    assert not steps["l3-prefactor-probe"]  # the variant reading fails


def test_var_rank3_check_passes():
    steps = var_rank3_check(GenusContext.dimensional(2))
    assert all(bool(cmp) for _, cmp in steps)


def test_mode_guards():
    with pytest.raises(ValueError):
        m2_chi(GenusContext.dimensional(2))
    with pytest.raises(ValueError):
        unstable_rank2_var_sum(GenusContext.adic(2))
