"""Exact q-calculus scalar primitives over arbitrary-precision rationals.

Everything in this module is a `fractions.Fraction`; no floats anywhere.
The deformation parameter q lives in (0, 1], with q = 1 kept only as the
classical limit of the scalar primitives.  The partial q-exponential sums
require q < 1 because their denominators contain (1 - q^j) factors.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction

ExactRational = Fraction


def to_rational(value) -> Fraction:
    """Coerce a value to an exact Fraction.

    Strings parse exactly: "p/r" as a quotient, decimal literals by digit
    expansion ("0.9" -> 9/10).  Python floats convert to their exact binary
    value; prefer strings or Fractions when decimal exactness matters.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


@dataclass
class QContext:
    """The parameter q plus memoized tables of [k]_q and [k]_q!.

    The tables grow monotonically and are guarded by a lock, so a context
    may be shared across threads; all derived values are immutable.
    """

    q: Fraction
    _qint: list = field(default_factory=lambda: [Fraction(0)],
                        init=False, repr=False, compare=False)
    _qfact: list = field(default_factory=lambda: [Fraction(1)],
                         init=False, repr=False, compare=False)
    _lock: threading.Lock = field(default_factory=threading.Lock,
                                  init=False, repr=False, compare=False)

    def __post_init__(self):
        self.q = to_rational(self.q)
        if not 0 < self.q <= 1:
            raise ValueError("q must satisfy 0<q≤1")

    def _ensure(self, k: int) -> None:
        # [j]_q = 1 + q·[j-1]_q reproduces both branches of the definition.
        with self._lock:
            while len(self._qint) <= k:
                j = len(self._qint)
                self._qint.append(1 + self.q * self._qint[j - 1])
                self._qfact.append(self._qfact[j - 1] * self._qint[j])


def require_series_q(ctx: QContext) -> None:
    """Reject q = 1; series-side formulas divide by (1 - q^j)."""
    if ctx.q >= 1:
        raise ValueError("q must satisfy 0<q<1")


def q_integer(ctx: QContext, k: int) -> Fraction:
    """[k]_q = (1 - q^k)/(1 - q) for q != 1, and k at q = 1."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    ctx._ensure(k)
    return ctx._qint[k]


def q_factorial(ctx: QContext, k: int) -> Fraction:
    """[k]_q! = [k]_q [k-1]_q ... [1]_q, with [0]_q! = 1."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    ctx._ensure(k)
    return ctx._qfact[k]


def q_binomial(ctx: QContext, n: int, k: int) -> Fraction:
    """Gaussian binomial [n]_q!/([k]_q! [n-k]_q!), 0 outside 0 <= k <= n.

    The zero extension keeps coefficient-indexed identities valid at every
    index, e.g. degree-n basis values vanish for k > n.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if k < 0 or k > n:
        return Fraction(0)
    return q_factorial(ctx, n) / (q_factorial(ctx, k) * q_factorial(ctx, n - k))


def q_shifted_power(ctx: QContext, a, b, n: int, offset: int = 0) -> Fraction:
    """(a - b)_q^n = prod_{s=0}^{n-1} (a - q^s b); empty product is 1.

    With offset m the product runs over q^{m+s}, which splits a shifted
    power as (a-b)_q^{n+m} = (a-b)_q^n * q_shifted_power(a, b, m, offset=n).
    Call with b negative to obtain (1+x)_q^n.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if offset < 0:
        raise ValueError("offset must be nonnegative")
    a = to_rational(a)
    b = to_rational(b)
    result = Fraction(1)
    qs = ctx.q ** offset
    for _ in range(n):
        result *= a - qs * b
        qs *= ctx.q
    return result


def eq_partial(ctx: QContext, x, order: int) -> Fraction:
    """Partial sum of e_q: sum_{k=0}^{order} x^k / prod_{j=1}^{k} (1 - q^j)."""
    require_series_q(ctx)
    if order < 0:
        raise ValueError("order must be nonnegative")
    x = to_rational(x)
    total = term = Fraction(1)
    qj = Fraction(1)
    for j in range(1, order + 1):
        qj *= ctx.q
        term *= x / (1 - qj)
        total += term
    return total


def Eq_partial(ctx: QContext, x, order: int) -> Fraction:
    """Partial sum of E_q: like e_q but with q^{k(k-1)/2} weights."""
    require_series_q(ctx)
    if order < 0:
        raise ValueError("order must be nonnegative")
    x = to_rational(x)
    total = term = Fraction(1)
    qj = Fraction(1)
    qtri = Fraction(1)  # q^{j-1}, accumulating the triangular exponent
    for j in range(1, order + 1):
        qj *= ctx.q
        term *= qtri * x / (1 - qj)
        qtri *= ctx.q
        total += term
    return total


def q_beta(ctx: QContext, m: int, n: int) -> Fraction:
    """q-Beta function B_q(m, n) = [m-1]_q! [n-1]_q! / [m+n-1]_q!.

    Satisfies 1/B_q(k+1, n) = [n+k choose n]_q [n]_q, the normalization
    carried by the q-Beta basis weights.
    """
    if m < 1 or n < 1:
        raise ValueError("q_beta requires m >= 1 and n >= 1")
    return (q_factorial(ctx, m - 1) * q_factorial(ctx, n - 1)
            / q_factorial(ctx, m + n - 1))
