"""Numeric realizations, counting data, and the independent oracles."""

import pytest

from curvemotives.curves import jacobian_class, sym_power_class
from curvemotives.moduli import m2_chi, m3_chi, rank2_decomposition
from curvemotives.polys import IntPoly, IntPoly2
from curvemotives.realize import (
    HODGE,
    POINCARE,
    CountingData,
    count_cross_check,
    count_target,
    genus2_fixture_counts,
    newstead_oracle,
    realize,
    sym_count_oracle,
)
from curvemotives.series import CoeffPoly, GenusContext, MotiveSeries


def _fixture():
    return CountingData(3, [4, 6])


def test_fixture_brute_force_counts():
    data = genus2_fixture_counts()
    assert data.q == 3
    assert data.counts == [4, 6]


def test_lambda_counts_from_newton():
    data = _fixture()
    assert [data.lambda_count(a) for a in range(5)] == [1, 0, -2, 0, 9]
    assert data.lambda_count(4) == data.q ** 2  # top weight is q^g
    assert data.lambda_count(5) == 0


def test_counting_data_validation():
    with pytest.raises(ValueError):
        CountingData(1, [4])
    with pytest.raises(ValueError):
        CountingData(3, [])
    with pytest.raises(ValueError):
        CountingData(3, [-1])
    # counts that no curve can have: Newton produces a non-integer class
    with pytest.raises(ArithmeticError):
        CountingData(2, [2, 3])


def test_frobenius_counts_extend():
    data = _fixture()
    assert data.frobenius_count(1) == 4
    assert data.frobenius_count(2) == 6
    # beyond g, recovered through the eigenvalue recurrence
    assert data.frobenius_count(3) == 28
    assert data.frobenius_count(4) == 110
    with pytest.raises(ValueError):
        data.frobenius_count(0)


def test_from_json():
    data = CountingData.from_json({"q": 3, "counts": [4, 6]})
    assert data.g == 2 and data.lambda_count(2) == -2


def test_sym_count_oracle_values():
    data = _fixture()
    assert [sym_count_oracle(data, m) for m in range(5)] == [1, 4, 11, 32, 104]
    with pytest.raises(ValueError):
        sym_count_oracle(data, -1)


def test_count_cross_check_rows():
    ctx = GenusContext.adic(2)
    rows = count_cross_check(ctx, _fixture(), k_max=6)
    assert len(rows) == 7
    assert all(got == want for _, got, want in rows)


def test_count_realization_is_multiplicative():
    ctx = GenusContext.adic(2)
    target = count_target(_fixture())
    jac = jacobian_class(ctx)
    c2 = sym_power_class(ctx, 2)
    assert realize(jac * c2, target) == realize(jac, target) * realize(c2, target)


def test_poincare_of_jacobian():
    t = IntPoly.x
    for g in (2, 3):
        ctx = GenusContext.adic(g)
        assert realize(jacobian_class(ctx), POINCARE) == (1 + t(1)) ** (2 * g)


def test_hodge_of_jacobian():
    ctx = GenusContext.adic(2)
    u = IntPoly2.monomial(1, 0)
    v = IntPoly2.monomial(0, 1)
    assert realize(jacobian_class(ctx), HODGE) == ((1 + u) * (1 + v)) ** 2


def test_hodge_of_weight_one_class():
    ctx = GenusContext.adic(2)
    lam1 = MotiveSeries(ctx, {0: CoeffPoly.single(2, (1, 0))})
    got = realize(lam1, HODGE)
    assert got == 2 * IntPoly2.monomial(1, 0) + 2 * IntPoly2.monomial(0, 1)


def test_newstead_oracle_genus2_literal():
    t = IntPoly.x
    assert newstead_oracle(2) == 1 + t(2) + 4 * t(3) + t(4) + t(6)


def test_newstead_oracle_shape():
    for g in range(2, 7):
        p = newstead_oracle(g)
        d = 6 * g - 6
        assert p.degree() == d and p.coeff(0) == 1
        # Poincare duality of the moduli space: palindromic coefficients
        assert all(p.coeff(e) == p.coeff(d - e) for e in range(d + 1))


def test_poincare_of_moduli_matches_newstead():
    for g in (2, 3, 4):
        ctx = GenusContext.adic(g)
        assert realize(rank2_decomposition(ctx), POINCARE) == newstead_oracle(g)
        assert realize(m2_chi(ctx), POINCARE) == newstead_oracle(g)


def test_hodge_diagonal_reproduces_poincare():
    ctx = GenusContext.adic(3)
    for cls in (m2_chi(ctx), m3_chi(ctx), jacobian_class(ctx)):
        assert realize(cls, HODGE).diagonal() == realize(cls, POINCARE)


def test_hodge_symmetry_of_moduli():
    # h^{p,q} = h^{q,p}: the Hodge polynomial is symmetric in u and v
    ctx = GenusContext.adic(2)
    h = realize(m3_chi(ctx), HODGE)
    assert h == h.swap()


def test_count_rejects_negative_exponents():
    dctx = GenusContext.dimensional(2)
    s = MotiveSeries(dctx, {-1: CoeffPoly.one(2)})
    with pytest.raises(ValueError):
        realize(s, count_target(_fixture()))


def test_count_genus_mismatch_rejected():
    ctx = GenusContext.adic(3)
    with pytest.raises(ValueError):
        realize(jacobian_class(ctx), count_target(_fixture()))
