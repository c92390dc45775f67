"""Closed-form evaluation of the three basis families.

All three are nonnegative weight families used by the positive linear
operators in `qgf.qoperators`:

  bernstein:  [n choose k]_q x^k (1-x)_q^{n-k}          on x in [0, 1]
  mkz:        [n+k+1 choose k]_q x^k (1-x)_q^n          on x in [0, 1]
  beta:       q^{k(k-1)/2} x^k / (B_q(k+1,n) (1+x)_q^{n+k+1})  on x >= 0

The MKZ family does not sum to 1; its exact row sum is
1/((1 - q^n x)(1 - q^{n+1} x)) for 0 <= x < 1 and is covered by tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .qcore import (
    QContext,
    q_beta,
    q_binomial,
    q_shifted_power,
    to_rational,
)

FAMILIES = ("bernstein", "mkz", "beta")


@dataclass(frozen=True)
class BasisValue:
    """One evaluated basis weight, tagged with where it came from."""

    family: str
    k: int
    n: int
    x: Fraction
    value: Fraction


def _check_index(k: int, n: int, n_min: int = 0) -> None:
    if k < 0:
        raise ValueError("k must be nonnegative")
    if n < n_min:
        raise ValueError(f"n must be at least {n_min}")


def bernstein_basis(ctx: QContext, k: int, n: int, x) -> Fraction:
    """[n choose k]_q x^k (1-x)_q^{n-k}; zero when k exceeds n."""
    _check_index(k, n)
    x = to_rational(x)
    if not 0 <= x <= 1:
        raise ValueError("bernstein basis requires x in [0,1]")
    if k > n:
        return Fraction(0)
    return q_binomial(ctx, n, k) * x ** k * q_shifted_power(ctx, 1, x, n - k)


def mkz_basis(ctx: QContext, k: int, n: int, x) -> Fraction:
    """[n+k+1 choose k]_q x^k (1-x)_q^n; vanishes at x = 1 for n >= 1."""
    _check_index(k, n)
    x = to_rational(x)
    if not 0 <= x <= 1:
        raise ValueError("mkz basis requires x in [0,1]")
    return q_binomial(ctx, n + k + 1, k) * x ** k * q_shifted_power(ctx, 1, x, n)


def beta_basis(ctx: QContext, k: int, n: int, x) -> Fraction:
    """q^{k(k-1)/2} x^k / (B_q(k+1,n) (1+x)_q^{n+k+1}) for x >= 0, n >= 1."""
    _check_index(k, n, n_min=1)
    x = to_rational(x)
    if x < 0:
        raise ValueError("beta basis requires x >= 0")
    numerator = ctx.q ** (k * (k - 1) // 2) * x ** k
    denominator = q_beta(ctx, k + 1, n) * q_shifted_power(ctx, 1, -x, n + k + 1)
    return numerator / denominator


_EVALUATORS = {
    "bernstein": bernstein_basis,
    "mkz": mkz_basis,
    "beta": beta_basis,
}


def basis_value(ctx: QContext, family: str, k: int, n: int, x) -> BasisValue:
    """Evaluate one family by name and package the result."""
    if family not in _EVALUATORS:
        raise ValueError(f"unknown basis family {family!r}")
    x = to_rational(x)
    return BasisValue(family, k, n, x, _EVALUATORS[family](ctx, k, n, x))
