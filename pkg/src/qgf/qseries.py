"""Truncated formal power series in t with exact rational coefficients.

A series of order N carries coefficients c_0..c_N; arithmetic truncates at
the smaller operand order and is exact throughout.  The builders at the
bottom produce the right-hand sides of the three generating-function
identities checked in `qgf.verify`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .qcore import (
    QContext,
    q_factorial,
    q_integer,
    q_shifted_power,
    require_series_q,
    to_rational,
)


@dataclass(frozen=True)
class TruncatedSeries:
    """Coefficients c_0..c_N of a power series truncated at order N."""

    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) == 0:
            raise ValueError("a truncated series needs at least c_0")
        object.__setattr__(
            self, "coeffs", tuple(to_rational(c) for c in self.coeffs))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def constant(cls, value, order: int) -> "TruncatedSeries":
        return cls((to_rational(value),) + (Fraction(0),) * order)

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        return cls.constant(1, order)

    @classmethod
    def monomial(cls, value, power: int, order: int) -> "TruncatedSeries":
        """value * t^power, truncated; vanishes entirely if power > order."""
        coeffs = [Fraction(0)] * (order + 1)
        if power < 0:
            raise ValueError("power must be nonnegative")
        if power <= order:
            coeffs[power] = to_rational(value)
        return cls(tuple(coeffs))

    def scaled(self, factor) -> "TruncatedSeries":
        factor = to_rational(factor)
        return TruncatedSeries(tuple(factor * c for c in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return series_mul(self, other)
        return NotImplemented


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product truncated at min(order_a, order_b)."""
    order = min(a.order, b.order)
    coeffs = []
    for m in range(order + 1):
        coeffs.append(sum((a.coeffs[i] * b.coeffs[m - i]
                           for i in range(m + 1)), Fraction(0)))
    return TruncatedSeries(tuple(coeffs))


def series_inverse(a: TruncatedSeries) -> TruncatedSeries:
    """Multiplicative inverse: series_mul(a, result) is the unit series."""
    if a.coeffs[0] == 0:
        raise ValueError("not invertible: zero constant term")
    inv0 = 1 / a.coeffs[0]
    coeffs = [inv0]
    for m in range(1, a.order + 1):
        acc = sum((a.coeffs[i] * coeffs[m - i]
                   for i in range(1, m + 1)), Fraction(0))
        coeffs.append(-inv0 * acc)
    return TruncatedSeries(tuple(coeffs))


def coefficient(a: TruncatedSeries, j: int) -> Fraction:
    """c_j; indices past the truncation order are an error, not zero."""
    if j < 0 or j > a.order:
        raise ValueError(
            f"coefficient index {j} beyond truncation order {a.order}")
    return a.coeffs[j]


def _mul_one_plus_ct(a: TruncatedSeries, c: Fraction) -> TruncatedSeries:
    # multiply by the linear factor (1 + c*t) without changing the order
    coeffs = list(a.coeffs)
    for m in range(a.order, 0, -1):
        coeffs[m] += c * coeffs[m - 1]
    return TruncatedSeries(tuple(coeffs))


def gf_bernstein_rhs(ctx: QContext, k: int, x, order: int) -> TruncatedSeries:
    """Series whose t^n coefficient, times [n]_q!, is the Bernstein basis
    value of index k and degree n at x.

    Built as (x^k t^k / [k]_q!) * sum_n (1-x)_q^n t^n / [n]_q!, where the
    n-th numerator is the q-shifted power, not an ordinary n-th power.
    """
    require_series_q(ctx)
    if k < 0:
        raise ValueError("k must be nonnegative")
    x = to_rational(x)
    coeffs = [Fraction(1)]
    qs = Fraction(1)  # q^n, tracking the next shifted-power factor
    for n in range(1, order + 1):
        coeffs.append(coeffs[-1] * (1 - qs * x) / q_integer(ctx, n))
        qs *= ctx.q
    exp_part = TruncatedSeries(tuple(coeffs))
    mono = TruncatedSeries.monomial(x ** k / q_factorial(ctx, k), k, order)
    return series_mul(mono, exp_part)


def gf_mkz_rhs(ctx: QContext, n: int, x, order: int) -> TruncatedSeries:
    """Series whose t^k coefficient is the MKZ basis value m_{k,n} at x.

    Expands (1-x)_q^n / (1-xt)_q^{n+2} by building the degree-(n+2)
    polynomial prod_{s=0}^{n+1} (1 - q^s x t) and inverting it, so the
    coefficients come from series inversion rather than the closed-form
    q-binomial route.
    """
    require_series_q(ctx)
    if n < 0:
        raise ValueError("n must be nonnegative")
    x = to_rational(x)
    poly = TruncatedSeries.one(order)
    qs = Fraction(1)
    for _ in range(n + 2):
        poly = _mul_one_plus_ct(poly, -qs * x)
        qs *= ctx.q
    return series_inverse(poly).scaled(q_shifted_power(ctx, 1, x, n))


def gf_beta_rhs(ctx: QContext, n: int, x, order: int) -> TruncatedSeries:
    """Series with c_k = q^{k(k-1)/2} x^k / ((1+x)_q^{n+k+1} [k]_q!).

    c_k is assembled as the k-th exponential-type term over the shifted
    product prod_{s=0}^{k-1} (1 + q^{n+1+s} x), scaled by 1/(1+x)_q^{n+1};
    the two products merge into (1+x)_q^{n+k+1}.
    """
    require_series_q(ctx)
    if n < 1:
        raise ValueError("n must be at least 1")
    x = to_rational(x)
    if x < 0:
        raise ValueError("x must be nonnegative")
    term = 1 / q_shifted_power(ctx, 1, -x, n + 1)
    coeffs = [term]
    qtri = Fraction(1)      # q^{k-1}
    qshift = ctx.q ** (n + 1)  # q^{n+k}
    for k in range(1, order + 1):
        term *= qtri * x / ((1 + qshift * x) * q_integer(ctx, k))
        coeffs.append(term)
        qtri *= ctx.q
        qshift *= ctx.q
    return TruncatedSeries(tuple(coeffs))
