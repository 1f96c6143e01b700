"""Numeric realizations of polynomial motive classes.

Three ring homomorphisms out of the lambda-basis:

* Poincare:  lambda^a -> C(2g, a) t^a,  L -> t^2  (univariate integer poly);
* Hodge:     lambda^a -> sum_i C(g, i) C(g, a-i) u^i v^{a-i},  L -> u v
  (bivariate integer poly);
* counting:  lambda^a -> the a-th elementary symmetric function of the
  negated Frobenius eigenvalues,  L -> q  (an integer).

The counting images are recovered from a short list of point counts
N_1..N_g over F_q, .., F_{q^g} by Newton's identities; the remaining
images follow from the functional-equation rule e_{g+d} = q^d e_{g-d}.
Nothing here is approximate: intermediate rationals must clear to integers
or the constructor refuses the data.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .polys import IntPoly, IntPoly2

__all__ = [
    "CountingData",
    "RealizationTarget",
    "POINCARE",
    "HODGE",
    "count_target",
    "realize",
    "newstead_oracle",
    "sym_count_oracle",
    "count_cross_check",
    "genus2_fixture_counts",
]


class CountingData:
    """Point counts of a genus-g curve over F_q, F_{q^2}, .., F_{q^g},
    digested into the counting images of the lambda classes.

    lambda_count(a) is the trace of Frobenius on the weight-a piece of the
    Jacobian, with the sign convention that makes counting a ring
    homomorphism (the class of the curve itself counts as
    1 + lambda_count(1) + q = N_1).
    """

    def __init__(self, q, counts):
        if not isinstance(q, int) or q < 2:
            raise ValueError("q must be a prime power >= 2, got %r" % (q,))
        counts = list(counts)
        if not counts:
            raise ValueError("need at least one point count")
        if any(not isinstance(n, int) or n < 0 for n in counts):
            raise ValueError("point counts must be nonnegative integers")
        self.q = q
        self.counts = counts
        self.g = len(counts)
        g, lam = self.g, [1]
        # Newton's identities on the negated eigenvalues; their j-th power
        # sum is (-1)^j (q^j + 1 - N_j)
        signed = [0] + [(-1) ** j * (q ** j + 1 - counts[j - 1])
                        for j in range(1, g + 1)]
        for a in range(1, g + 1):
            acc = Fraction(0)
            for i in range(1, a + 1):
                acc += (-1) ** (i - 1) * lam[a - i] * signed[i]
            e = acc / a
            if e.denominator != 1:
                raise ArithmeticError(
                    "counts %r over q=%d are not the counts of a curve "
                    "(non-integral class at weight %d)" % (counts, q, a))
            lam.append(int(e))
        for delta in range(1, g + 1):
            lam.append(q ** delta * lam[g - delta])
        self._lam = lam           # lambda_count(0..2g)
        self._psums = [0] + signed[1:]  # power sums of the negated eigenvalues

    @classmethod
    def from_json(cls, obj):
        return cls(obj["q"], obj["counts"])

    def lambda_count(self, a):
        if a < 0:
            raise ValueError("weight must be nonnegative, got %d" % a)
        if a > 2 * self.g:
            return 0
        return self._lam[a]

    def _power_sum(self, j):
        """j-th power sum of the negated eigenvalues, extended past g by the
        characteristic-polynomial recurrence."""
        twog = 2 * self.g
        while len(self._psums) <= j:
            m = len(self._psums)
            acc = 0
            for i in range(1, min(m, twog) + 1):
                acc += (-1) ** (i - 1) * self._lam[i] * self._psums[m - i]
            if m <= twog:
                acc += (-1) ** (m - 1) * m * self._lam[m]
            self._psums.append(acc)
        return self._psums[j]

    def frobenius_count(self, j):
        """Number of points over F_{q^j}, for any j >= 1."""
        if j < 1:
            raise ValueError("field extension degree must be >= 1, got %d" % j)
        return self.q ** j + 1 - (-1) ** j * self._power_sum(j)


@dataclass(frozen=True)
class RealizationTarget:
    kind: str
    counting: CountingData | None = None


POINCARE = RealizationTarget("poincare")
HODGE = RealizationTarget("hodge")


def count_target(data: CountingData) -> RealizationTarget:
    return RealizationTarget("count", data)


def _lambda_images(target, g):
    """Images of lambda^0 .. lambda^g under the target."""
    if target.kind == "poincare":
        return [comb(2 * g, a) * IntPoly.x(a) for a in range(g + 1)]
    if target.kind == "hodge":
        out = []
        for a in range(g + 1):
            p = IntPoly2()
            for i in range(0, a + 1):
                p = p + IntPoly2.monomial(i, a - i, comb(g, i) * comb(g, a - i))
            out.append(p)
        return out
    if target.kind == "count":
        if target.counting is None:
            raise ValueError("counting realization needs point-count data")
        if target.counting.g != g:
            raise ValueError("point-count data is for genus %d, class has genus %d"
                             % (target.counting.g, g))
        return [target.counting.lambda_count(a) for a in range(g + 1)]
    raise ValueError("unknown realization target %r" % (target.kind,))


def _lefschetz_image(target):
    if target.kind == "poincare":
        return IntPoly.x(2)
    if target.kind == "hodge":
        return IntPoly2.monomial(1, 1)
    return target.counting.q


def realize(series, target):
    """Apply the target homomorphism to a polynomial class, monomial by
    monomial.  The stored coefficients are taken at face value, so only
    feed this classes that are genuinely polynomial (moduli classes,
    symmetric powers, the Jacobian)."""
    g = series.g
    lam = _lambda_images(target, g)
    ell = _lefschetz_image(target)
    total = 0
    for e, c in series.coeffs.items():
        if e < 0 and target.kind == "count":
            raise ValueError("counting realization needs nonnegative exponents")
        for mono, n in c.items():
            term = n
            for i, ei in enumerate(mono):
                for _ in range(ei):
                    term = term * lam[i + 1]
            total = total + term * ell ** e
    return total


def newstead_oracle(g: int) -> IntPoly:
    """Independent Poincare polynomial of the rank-2 odd-determinant moduli
    space:  ((1+t^3)^{2g} - t^{2g} (1+t)^{2g}) / ((1-t^2)(1-t^4))."""
    if g < 2:
        raise ValueError("genus must be >= 2, got %d" % g)
    t = IntPoly.x
    numer = (1 + t(3)) ** (2 * g) - t(2 * g) * (1 + t(1)) ** (2 * g)
    return numer.exact_div((1 - t(2)) * (1 - t(4)))


def sym_count_oracle(data: CountingData, m: int) -> int:
    """Number of degree-m effective divisors (points of the m-th symmetric
    power), from the point counts alone:  m z_m = sum_j N_j z_{m-j}."""
    if m < 0:
        raise ValueError("symmetric power index must be >= 0, got %d" % m)
    z = [Fraction(1)]
    for k in range(1, m + 1):
        acc = Fraction(0)
        for j in range(1, k + 1):
            acc += data.frobenius_count(j) * z[k - j]
        zk = acc / k
        if zk.denominator != 1:
            raise ArithmeticError("non-integral symmetric-power count at m=%d" % k)
        z.append(zk)
    return int(z[m])


def count_cross_check(ctx, data: CountingData, k_max=None):
    """Counting realization of each symmetric-power class against the
    divisor-count recurrence.  Returns [(k, realized, expected), ...]."""
    from .curves import sym_power_class

    if ctx.g != data.g:
        raise ValueError("context genus %d does not match data genus %d"
                         % (ctx.g, data.g))
    if k_max is None:
        k_max = 2 * ctx.g
    target = count_target(data)
    rows = []
    for k in range(0, k_max + 1):
        got = realize(sym_power_class(ctx, k), target)
        rows.append((k, got, sym_count_oracle(data, k)))
    return rows


def genus2_fixture_counts():
    """Brute-force point counts of y^2 = x^5 - x over F_3 and F_9
    (including the single point at infinity).  Returns a CountingData."""
    n1 = 1
    for x in range(3):
        for y in range(3):
            if (y * y - (x ** 5 - x)) % 3 == 0:
                n1 += 1
    # F_9 = F_3[s]/(s^2 + 1), elements (a, b) standing for a + b s
    def mul(u, v):
        return ((u[0] * v[0] - u[1] * v[1]) % 3, (u[0] * v[1] + u[1] * v[0]) % 3)

    def sub(u, v):
        return ((u[0] - v[0]) % 3, (u[1] - v[1]) % 3)

    elems = [(a, b) for a in range(3) for b in range(3)]
    n2 = 1
    for x in elems:
        x5 = x
        for _ in range(4):
            x5 = mul(x5, x)
        rhs = sub(x5, x)
        for y in elems:
            if mul(y, y) == rhs:
                n2 += 1
    return CountingData(3, [n1, n2])
