"""Classes attached to the curve itself: symmetric powers, the Jacobian,
and the motivic zeta function with its decomposition identities.

All constructors return exact polynomial classes (full validity range); the
only genuinely infinite objects here are the zeta evaluations at powers of L,
which are exact on the whole window by construction.
"""

from __future__ import annotations

from .series import (
    CoeffPoly,
    Mode,
    MotiveSeries,
    UnitSign,
    geom_unit_inverse,
    lambda_class,
    lefschetz_power,
    one,
)

__all__ = [
    "sym_power_class",
    "jacobian_class",
    "binomial_h1_series",
    "ZetaSeries",
    "zeta_series",
    "zeta_at_lefschetz",
    "dec_zeta_finite_part",
    "dec_zeta_rhs",
    "check_zeta_rationality",
    "check_functional_equation",
    "check_symmetric_power_decomposition",
]


def _basis_row(g, b):
    """Canonical form of the degree-b exterior power: (monomial, L-offset)."""
    if b <= g:
        c, off = b, 0
    else:
        c, off = 2 * g - b, b - g
    return tuple(1 if i == c - 1 else 0 for i in range(g)), off


def _sym_terms(g, k):
    """Raw coefficient dict of the k-th symmetric power class.

    The class is the sum of l_b * L^c over b + c <= k, with rows b > g
    rewritten by duality (adding b-g to the L-offset of the whole row).
    """
    acc = {}
    for b in range(0, min(k, 2 * g) + 1):
        mono, off = _basis_row(g, b)
        for c in range(0, k - b + 1):
            e = off + c
            row = acc.setdefault(e, {})
            row[mono] = row.get(mono, 0) + 1
    return acc


def _series_from_raw(ctx, raw):
    return MotiveSeries(ctx, {e: CoeffPoly(ctx.g, row) for e, row in raw.items()})


def sym_power_class(ctx, k: int) -> MotiveSeries:
    """Class of the k-th symmetric power of the curve (k >= 0)."""
    if k < 0:
        raise ValueError("symmetric power index must be >= 0, got %d" % k)
    return _series_from_raw(ctx, _sym_terms(ctx.g, k))


def jacobian_class(ctx) -> MotiveSeries:
    """Class of the Jacobian: the sum of all exterior powers 0..2g."""
    out = one(ctx)
    for a in range(1, 2 * ctx.g + 1):
        out = out + lambda_class(ctx, a)
    return out


def binomial_h1_series(ctx, m: int) -> MotiveSeries:
    """The binomial expansion of (1 + L^m) raised to the degree-one
    cohomology: the sum of l_a * L^{m a} over a = 0..2g."""
    if m < 1:
        raise ValueError("binomial exponent must be >= 1, got %d" % m)
    out = one(ctx)
    for a in range(1, 2 * ctx.g + 1):
        out = out + lambda_class(ctx, a).shift(m * a)
    return out


class ZetaSeries:
    """The motivic zeta function as a series in a formal variable t.

    The t^k coefficient is the (exact, untruncated) class of the k-th
    symmetric power; construction refuses windows too narrow to store it
    without loss.
    """

    def __init__(self, ctx, t_max):
        if t_max < 0:
            raise ValueError("t_max must be >= 0, got %d" % t_max)
        w = ctx.window
        if t_max > w.hi or w.lo > 0:
            raise ValueError(
                "window [%d, %d] cannot hold the symmetric powers up to k=%d exactly"
                % (w.lo, w.hi, t_max))
        self.ctx = ctx
        self.t_max = t_max
        self._coeffs = [sym_power_class(ctx, k) for k in range(t_max + 1)]

    def coeff(self, k) -> MotiveSeries:
        if not 0 <= k <= self.t_max:
            raise ValueError("t-degree %d outside [0, %d]" % (k, self.t_max))
        return self._coeffs[k]

    def __len__(self):
        return self.t_max + 1


def zeta_series(ctx, t_max: int | None = None) -> ZetaSeries:
    """Zeta series with default t-precision 4g."""
    if t_max is None:
        t_max = 4 * ctx.g
    return ZetaSeries(ctx, t_max)


def zeta_at_lefschetz(ctx, i: int) -> MotiveSeries:
    """Zeta function evaluated at t = L^i, summed termwise across the window.

    In ADIC mode i >= 1 (terms march toward +infinity); in DIMENSIONAL mode
    i <= -2 (terms march toward -infinity; i = -1 would pile up infinitely
    many contributions at a single exponent and is rejected).
    """
    w = ctx.window
    g = ctx.g
    acc = {}
    if ctx.mode is Mode.ADIC:
        if i < 1:
            raise ValueError("adic zeta evaluation needs i >= 1, got %d" % i)
        k = 0
        while i * k <= w.hi:
            for e, row in _sym_terms(g, k).items():
                e += i * k
                if e > w.hi:
                    continue
                dst = acc.setdefault(e, {})
                for mono, c in row.items():
                    dst[mono] = dst.get(mono, 0) + c
            k += 1
    else:
        if i > -2:
            raise ValueError("dimensional zeta evaluation needs i <= -2, got %d" % i)
        # the k-th term has support [ik, ik+k]; it clears the floor once
        # k(i+1) < lo
        k = 0
        while k * (i + 1) >= w.lo:
            for e, row in _sym_terms(g, k).items():
                e += i * k
                if e < w.lo or e > w.hi:
                    continue
                dst = acc.setdefault(e, {})
                for mono, c in row.items():
                    dst[mono] = dst.get(mono, 0) + c
            k += 1
    return _series_from_raw(ctx, acc)


def dec_zeta_finite_part(ctx, i: int) -> MotiveSeries:
    """The two finite blocks of the zeta decomposition at t = L^(+-i).

    ADIC (evaluation at L^i, i >= 1):
        sum_{k=0}^{g-1} [C_k] L^{ik}  +  sum_{k=0}^{g-2} [C_k] L^{(2i+1)(g-1)-(i+1)k}
    DIMENSIONAL (evaluation at L^{-i} scaled by L^{(2i-1)(g-1)}, i >= 2):
        sum_{k=0}^{g-1} [C_k] L^{(i-1)k}  +  sum_{k=0}^{g-2} [C_k] L^{(2i-1)(g-1)-ik}
    """
    g = ctx.g
    if ctx.mode is Mode.ADIC:
        if i < 1:
            raise ValueError("adic decomposition needs i >= 1, got %d" % i)
        first = lambda k: i * k
        second = lambda k: (2 * i + 1) * (g - 1) - (i + 1) * k
    else:
        if i < 2:
            raise ValueError("dimensional decomposition needs i >= 2, got %d" % i)
        first = lambda k: (i - 1) * k
        second = lambda k: (2 * i - 1) * (g - 1) - i * k
    out = None
    for k in range(0, g):
        t = sym_power_class(ctx, k).shift(first(k))
        out = t if out is None else out + t
    for k in range(0, g - 1):
        out = out + sym_power_class(ctx, k).shift(second(k))
    return out


def dec_zeta_rhs(ctx, i: int) -> MotiveSeries:
    """Finite blocks plus the Jacobian tail of the zeta decomposition.

    ADIC:        ... + [J] L^{ig} / ((1 - L^i)(1 - L^{i+1}))
    DIMENSIONAL: ... + [J] L^{(i-1)g} / ((L^{i-1} - 1)(L^i - 1)), i >= 2
    """
    g = ctx.g
    out = dec_zeta_finite_part(ctx, i)
    jac = jacobian_class(ctx)
    if ctx.mode is Mode.ADIC:
        tail = jac.shift(i * g)
        tail = tail * geom_unit_inverse(ctx, i, UnitSign.ONE_MINUS_L_I)
        tail = tail * geom_unit_inverse(ctx, i + 1, UnitSign.ONE_MINUS_L_I)
    else:
        if i < 2:
            raise ValueError("dimensional decomposition needs i >= 2, got %d" % i)
        tail = jac.shift((i - 1) * g)
        tail = tail * geom_unit_inverse(ctx, i - 1, UnitSign.L_I_MINUS_ONE)
        tail = tail * geom_unit_inverse(ctx, i, UnitSign.L_I_MINUS_ONE)
    return out + tail


# -- identity checks -------------------------------------------------------


def check_zeta_rationality(ctx, t_max: int | None = None):
    """(1-t)(1-Lt) Z(C,t) is a polynomial of t-degree 2g whose t^k
    coefficient is the k-th exterior power.

    Returns [(label, Comparison), ...], one entry per t-degree up to t_max.
    """
    z = zeta_series(ctx, t_max)
    ell = lefschetz_power(ctx, 1)
    unit = one(ctx)
    steps = []
    for k in range(0, z.t_max + 1):
        p = z.coeff(k)
        if k >= 1:
            p = p - (unit + ell) * z.coeff(k - 1)
        if k >= 2:
            p = p + ell * z.coeff(k - 2)
        want = lambda_class(ctx, k) if k <= 2 * ctx.g else MotiveSeries(ctx)
        steps.append(("t^%d" % k, p.equals(want)))
    return steps


def check_functional_equation(ctx):
    """Numerator symmetry of the zeta function: for every a in 0..2g the
    degree-a exterior power times L^g equals the degree-(2g-a) one times L^a
    (the cleared form of l_a = l_{2g-a} L^{a-g})."""
    g = ctx.g
    steps = []
    for a in range(0, 2 * g + 1):
        lhs = lambda_class(ctx, a).shift(g)
        rhs = lambda_class(ctx, 2 * g - a).shift(a)
        steps.append(("a=%d" % a, lhs.equals(rhs)))
    return steps


def check_symmetric_power_decomposition(ctx, k: int):
    """Symmetric powers at and above the middle decompose against the
    Jacobian: for g <= k <= 2g-2

        [C_k] = [J] (1 + L + ... + L^{k-g}) + [C_{2g-2-k}] L^{k-g+1}

    and for k >= 2g-1 the same without the second term.  Returns a
    Comparison."""
    g = ctx.g
    if k < g:
        raise ValueError("decomposition needs k >= g, got k=%d < g=%d" % (k, g))
    ladder = MotiveSeries(ctx, {e: CoeffPoly.one(g) for e in range(0, k - g + 1)})
    rhs = jacobian_class(ctx) * ladder
    if k <= 2 * g - 2:
        rhs = rhs + sym_power_class(ctx, 2 * g - 2 - k).shift(k - g + 1)
    return sym_power_class(ctx, k).equals(rhs)
