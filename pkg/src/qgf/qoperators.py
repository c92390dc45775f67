"""Positive linear operators built on the three basis families.

The Bernstein operator is a finite sum and can be evaluated exactly.  The
MKZ and Beta operators are infinite sums; they are truncated when the
running term drops below `tol` while decreasing, and every result carries
a geometric tail bound as `residual_estimate`.  Weights and nodes are
always computed in exact rational arithmetic; float mode only rounds the
individual terms, so the reported residual dominates the true error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .qbasis import bernstein_basis
from .qcore import (
    QContext,
    q_integer,
    q_shifted_power,
    require_series_q,
    to_rational,
)

MKZ_DEFAULT_KMAX = 10_000
BETA_DEFAULT_KMAX = 500
DEFAULT_TOL = 1e-12

# float-mode MKZ keeps x away from 1 so the geometric tail ratio stays < 1
MKZ_FLOAT_X_CAP = Fraction(99, 100)

_CATALOG = ("const1", "identity", "square", "monomial", "reciprocal1p",
            "expneg")


@dataclass(frozen=True)
class FunctionSpec:
    """A test function from the fixed catalog, defined on [0, inf).

    Polynomial entries (const1, identity, square, monomial) and
    reciprocal1p evaluate exactly at rational points; expneg = exp(-u)
    exists only in float mode.
    """

    name: str
    degree: int | None = None

    def __post_init__(self):
        if self.name not in _CATALOG:
            raise ValueError(f"unknown catalog function {self.name!r}")
        if self.name == "monomial":
            if self.degree is None or self.degree < 0:
                raise ValueError("monomial needs a nonnegative degree")
        elif self.degree is not None:
            raise ValueError(f"{self.name} takes no degree parameter")

    @classmethod
    def parse(cls, text: str) -> "FunctionSpec":
        """Parse a catalog label such as "square" or "monomial:3"."""
        name, sep, arg = text.partition(":")
        if not sep:
            return cls(name)
        if name != "monomial":
            raise ValueError(f"{name} takes no parameter")
        return cls(name, int(arg))

    @property
    def label(self) -> str:
        if self.name == "monomial":
            return f"monomial:{self.degree}"
        return self.name

    @property
    def is_exact(self) -> bool:
        return self.name != "expneg"

    @property
    def poly_degree(self) -> int | None:
        """Monomial degree when f is u^d, else None."""
        return {"const1": 0, "identity": 1, "square": 2,
                "monomial": self.degree}.get(self.name)

    @property
    def increasing(self) -> bool:
        d = self.poly_degree
        return d is not None and d >= 1

    def exact(self, u: Fraction) -> Fraction:
        if self.name == "const1":
            return Fraction(1)
        if self.name == "identity":
            return u
        if self.name == "square":
            return u * u
        if self.name == "monomial":
            return u ** self.degree
        if self.name == "reciprocal1p":
            return 1 / (1 + u)
        raise ValueError("expneg is not exactly evaluable; use float mode")

    def approx(self, u: float) -> float:
        if self.name == "const1":
            return 1.0
        if self.name == "identity":
            return u
        if self.name == "square":
            return u * u
        if self.name == "monomial":
            return u ** self.degree
        if self.name == "reciprocal1p":
            return 1.0 / (1.0 + u)
        return math.exp(-u)


@dataclass(frozen=True)
class OperatorResult:
    """Operator value plus how the truncation went.

    residual_estimate bounds the dropped tail (0 for finite sums);
    converged is False only when k_max ran out with the tail still above
    tol.
    """

    value: Fraction | float
    terms_used: int
    residual_estimate: float
    converged: bool = True


def bernstein_node(ctx: QContext, k: int, n: int) -> Fraction:
    return q_integer(ctx, k) / q_integer(ctx, n)


def mkz_node(ctx: QContext, k: int, n: int) -> Fraction:
    return q_integer(ctx, k) / q_integer(ctx, n)


def mkz_node_limit(ctx: QContext, n: int) -> Fraction:
    """Supremum of the MKZ node sequence; exceeds 1 once q < 1."""
    require_series_q(ctx)
    return 1 / ((1 - ctx.q) * q_integer(ctx, n))


def beta_node(ctx: QContext, k: int, n: int) -> Fraction:
    """[k]_q / (q^{k-1} [n]_q); strictly increasing and unbounded in k."""
    return q_integer(ctx, k) * ctx.q ** (1 - k) / q_integer(ctx, n)


def _check_mode(mode: str) -> None:
    if mode not in ("exact", "float"):
        raise ValueError(f"mode must be 'exact' or 'float', not {mode!r}")


def _term_value(f: FunctionSpec, weight: Fraction, node: Fraction, mode: str):
    if mode == "exact":
        return weight * f.exact(node)
    if f.is_exact:
        return float(weight * f.exact(node))
    return float(weight) * f.approx(float(node))


def _sum_terms(terms, mode: str):
    if mode == "exact":
        return sum(terms, Fraction(0))
    return math.fsum(terms)


def _fixed_count(mode: str, terms: int | None) -> int | None:
    if mode == "exact":
        if terms is None:
            raise ValueError("exact mode sums a fixed term count; pass terms")
        if terms < 1:
            raise ValueError("terms must be at least 1")
        return terms
    return None


def bernstein_op(ctx: QContext, f: FunctionSpec, n: int, x,
                 mode: str = "exact") -> OperatorResult:
    """Finite sum over k = 0..n of basis weights times f([k]_q/[n]_q)."""
    _check_mode(mode)
    if n < 1:
        raise ValueError("n must be at least 1")
    x = to_rational(x)
    if not 0 <= x <= 1:
        raise ValueError("bernstein operator requires x in [0,1]")
    terms = [_term_value(f, bernstein_basis(ctx, k, n, x),
                         bernstein_node(ctx, k, n), mode)
             for k in range(n + 1)]
    return OperatorResult(_sum_terms(terms, mode), n + 1, 0.0)


def mkz_op(ctx: QContext, f: FunctionSpec, n: int, x,
           tol: float = DEFAULT_TOL, k_max: int = MKZ_DEFAULT_KMAX,
           mode: str = "float", terms: int | None = None) -> OperatorResult:
    """Truncated sum over k >= 0 of m_{k,n}(x) f([k]_q/[n]_q).

    Stops once the running term is below tol and decreasing and the
    weight ratio r_k = x (1-q^{n+k+2})/(1-q^{k+1}) has fallen below 1;
    the tail bound is weight * sup_f * r/(1-r), where sup_f covers f over
    the remaining nodes (they increase toward 1/((1-q)[n]_q)).  Exact
    mode sums a caller-fixed number of terms instead.
    """
    _check_mode(mode)
    require_series_q(ctx)
    if n < 1:
        raise ValueError("n must be at least 1")
    x = to_rational(x)
    if not 0 <= x < 1:
        raise ValueError("mkz operator requires x in [0,1)")
    if mode == "float" and x > MKZ_FLOAT_X_CAP:
        raise ValueError("float-mode mkz operator requires x <= 0.99")
    if tol <= 0:
        raise ValueError("tol must be positive")
    fixed = _fixed_count(mode, terms)

    if x == 0:
        value = _term_value(f, Fraction(1), Fraction(0), mode)
        return OperatorResult(value, 1, 0.0)

    f_sup = f.approx(float(mkz_node_limit(ctx, n))) if f.increasing else None

    def tail_bound(weight, node, k):
        ratio = x * (1 - ctx.q ** (n + k + 2)) / (1 - ctx.q ** (k + 1))
        if ratio >= 1:
            return math.inf
        r = float(ratio)
        sup = f_sup if f_sup is not None else f.approx(float(node))
        return float(weight) * sup * r / (1 - r)

    weight = q_shifted_power(ctx, 1, x, n)  # m_{0,n}(x)
    collected = []
    prev_abs = None
    k = 0
    while True:
        node = mkz_node(ctx, k, n)
        term = _term_value(f, weight, node, mode)
        collected.append(term)
        term_abs = abs(term)
        if fixed is not None:
            if k + 1 >= fixed:
                residual = tail_bound(weight, node, k)
                converged = True
                break
        else:
            if prev_abs is not None and term_abs < tol and term_abs < prev_abs:
                residual = tail_bound(weight, node, k)
                if residual < math.inf:
                    converged = True
                    break
            if k + 1 >= k_max:
                residual = tail_bound(weight, node, k)
                converged = residual <= tol
                break
        prev_abs = term_abs
        weight *= x * q_integer(ctx, n + k + 2) / q_integer(ctx, k + 1)
        k += 1

    return OperatorResult(_sum_terms(collected, mode), len(collected),
                          residual, converged)


def beta_op(ctx: QContext, f: FunctionSpec, n: int, x,
            tol: float = DEFAULT_TOL, k_max: int = BETA_DEFAULT_KMAX,
            mode: str = "float", terms: int | None = None) -> OperatorResult:
    """Truncated sum of v_{k,n}(x) f([k]_q/(q^{k-1}[n]_q)) / [n]_q.

    The q^{k(k-1)/2} factor in the weights makes the terms decay
    super-exponentially, so the same stop-when-small-and-decreasing rule
    applies with ratio r_k = q^k x (1-q^{n+k+1})/(1-q^{k+1}), inflated by
    ((1+q)/q)^d for monomial f of degree d since the Beta nodes grow
    without bound.
    """
    _check_mode(mode)
    require_series_q(ctx)
    if n < 1:
        raise ValueError("n must be at least 1")
    x = to_rational(x)
    if x < 0:
        raise ValueError("beta operator requires x >= 0")
    if tol <= 0:
        raise ValueError("tol must be positive")
    fixed = _fixed_count(mode, terms)

    if x == 0:
        value = _term_value(f, Fraction(1), Fraction(0), mode)
        return OperatorResult(value, 1, 0.0)

    growth = Fraction(1)
    if f.increasing:
        growth = ((1 + ctx.q) / ctx.q) ** f.poly_degree

    def tail_bound(term_abs, k, qk):
        # term-based bound; needs k >= 1 so the per-step node growth of
        # increasing f is covered by the ((1+q)/q)^d factor
        if k < 1:
            return math.inf
        ratio = (qk * x * (1 - ctx.q ** (n + k + 1))
                 / (1 - ctx.q ** (k + 1)) * growth)
        if ratio >= 1:
            return math.inf
        r = float(ratio)
        return float(term_abs) * r / (1 - r)

    # v_{0,n}(x)/[n]_q
    weight = 1 / q_shifted_power(ctx, 1, -x, n + 1)
    collected = []
    prev_abs = None
    k = 0
    qk = Fraction(1)  # q^k
    while True:
        node = beta_node(ctx, k, n)
        term = _term_value(f, weight, node, mode)
        collected.append(term)
        term_abs = abs(term)
        if fixed is not None:
            if k + 1 >= fixed:
                residual = tail_bound(term_abs, k, qk)
                converged = True
                break
        else:
            if prev_abs is not None and term_abs < tol and term_abs < prev_abs:
                residual = tail_bound(term_abs, k, qk)
                if residual < math.inf:
                    converged = True
                    break
            if k + 1 >= k_max:
                residual = tail_bound(term_abs, k, qk)
                converged = residual <= tol
                break
        prev_abs = term_abs
        weight *= (qk * x * q_integer(ctx, n + k + 1)
                   / (q_integer(ctx, k + 1) * (1 + ctx.q ** (n + k + 1) * x)))
        qk *= ctx.q
        k += 1

    return OperatorResult(_sum_terms(collected, mode), len(collected),
                          residual, converged)
