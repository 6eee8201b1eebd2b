"""Finite nonnegative cosine series and their closed-form functionals.

A weight function is represented as

    w(t) = sum_theta  b_theta * cos(2*pi*theta*t),   b_theta >= 0, theta >= 0,

with finitely many terms.  Everything downstream needs only a handful of
functionals of w, all of which reduce to the kernel

    S(x) = sin(2*pi*x) / (2*pi*x),   S(0) = 1,

via the product-to-sum identity for cosines:

    I1 = integral_0^1 w(t) dt          = sum_theta b_theta * S(theta)
    I2 = integral_0^1 w(t)^2 dt        = 1/2 * b^T (S(D) + S(P)) b
                                         with D_jk = theta_j - theta_k,
                                              P_jk = theta_j + theta_k
    a_m = integral_{-1}^{1} w(t) e^{-i pi m t} dt
        = sum_theta b_theta [sinc(pi(2 theta - m)) + sinc(pi(2 theta + m))]

The ratio rho = I1^2 / I2 <= 1 (Cauchy-Schwarz) and, whenever I1 < 0, the
asymptotic constant c = 2(1 - rho) bounds B2[g] set sizes:
|A| <~ sqrt(c (2g-1) N) for A contained in [0, N].

All arithmetic is 64-bit floating point; the closed forms target >= 12
significant digits (verified against adaptive quadrature in the test suite).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, HypothesisError, ValidationError

# Taylor switch-over for the sinc kernels.  Below SINC_CUT the direct formula
# sin(x)/x is replaced by a 4-term Taylor polynomial (degree 6), exact to
# ~1e-28 at the cut, so the branch is seamless at full double precision.
SINC_CUT = 1e-4
# The derivative kernel cos(x)/x - sin(x)/x^2 cancels catastrophically near
# zero (it is O(x) but both terms are O(1/x)), so its Taylor branch needs a
# wider window.  At 1e-2 the degree-7 polynomial still has ~1e-22 rel error.
DSINC_CUT = 1e-2


def sinc(x):
    """sin(x)/x with sinc(0) = 1; accepts scalars or arrays."""
    x = np.asarray(x, dtype=float)
    small = np.abs(x) < SINC_CUT
    safe = np.where(small, 1.0, x)
    out = np.sin(safe) / safe
    u2 = x * x
    taylor = 1.0 - u2 / 6.0 * (1.0 - u2 / 20.0 * (1.0 - u2 / 42.0))
    return np.where(small, taylor, out)


def dsinc(x):
    """d/dx [sin(x)/x]; accepts scalars or arrays."""
    x = np.asarray(x, dtype=float)
    small = np.abs(x) < DSINC_CUT
    safe = np.where(small, 1.0, x)
    out = (np.cos(safe) - np.sin(safe) / safe) / safe
    u2 = x * x
    taylor = -x / 3.0 * (1.0 - u2 / 10.0 * (1.0 - u2 / 28.0 * (1.0 - u2 / 54.0)))
    return np.where(small, taylor, out)


def kernel_s(x):
    """S(x) = sin(2 pi x)/(2 pi x) with S(0) = 1.

    Taylor branch applies for |x| < SINC_CUT (in x units, not 2*pi*x units).
    """
    x = np.asarray(x, dtype=float)
    u = 2.0 * math.pi * x
    small = np.abs(x) < SINC_CUT
    safe = np.where(small, 1.0, u)
    out = np.sin(safe) / safe
    u2 = u * u
    taylor = 1.0 - u2 / 6.0 * (1.0 - u2 / 20.0 * (1.0 - u2 / 42.0))
    return np.where(small, taylor, out)


def kernel_ds(x):
    """S'(x) = 2 pi * sinc'(2 pi x)."""
    return 2.0 * math.pi * dsinc(2.0 * math.pi * np.asarray(x, dtype=float))


@dataclass(frozen=True)
class CosineTerm:
    """One term b * cos(2 pi theta t); b >= 0 and theta >= 0."""

    coeff: float
    freq: float

    def __post_init__(self):
        c = float(self.coeff)
        f = float(self.freq)
        if not (math.isfinite(c) and math.isfinite(f)):
            raise ValidationError(f"non-finite term ({self.coeff}, {self.freq})")
        if c < 0:
            raise ValidationError(f"coefficient must be nonnegative, got {c}")
        if f < 0:
            raise ValidationError(f"frequency must be nonnegative, got {f}")
        object.__setattr__(self, "coeff", c)
        object.__setattr__(self, "freq", f)


class CosineSeries:
    """Ordered finite list of CosineTerm.

    Frequencies need not be distinct or sorted; every functional below is a
    symmetric sum over terms, so results are independent of term order up to
    floating rounding.
    """

    __slots__ = ("terms", "_b", "_theta")

    def __init__(self, terms):
        terms = tuple(
            t if isinstance(t, CosineTerm) else CosineTerm(*t) for t in terms
        )
        if not terms:
            raise ValidationError("series must have at least one term")
        self.terms = terms
        self._b = np.array([t.coeff for t in terms], dtype=float)
        self._theta = np.array([t.freq for t in terms], dtype=float)

    @property
    def coeffs(self) -> np.ndarray:
        return self._b

    @property
    def freqs(self) -> np.ndarray:
        return self._theta

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        return isinstance(other, CosineSeries) and self.terms == other.terms

    def __repr__(self):
        inner = ", ".join(f"({t.coeff:g}, {t.freq:g})" for t in self.terms[:6])
        if len(self.terms) > 6:
            inner += f", ... {len(self.terms)} terms"
        return f"CosineSeries([{inner}])"

    def scaled(self, factor: float) -> "CosineSeries":
        """Series with every coefficient multiplied by factor > 0."""
        if factor <= 0:
            raise ValidationError("scale factor must be positive")
        return CosineSeries(
            [CosineTerm(t.coeff * factor, t.freq) for t in self.terms]
        )

    def is_zero(self) -> bool:
        return bool(np.all(self._b == 0.0))


@dataclass(frozen=True)
class FunctionalSummary:
    """The functionals of one series that both bounds consume.

    a_upper is a certified over-estimate of A(w) = |w'(1)| + sup|w''|:
    the derivative value is exact, the sup norm is bounded by the triangle
    inequality sum_theta b_theta (2 pi theta)^2.
    """

    i1: float
    i2: float
    rho: float
    w0: float
    a_upper: float


def eval_w(series: CosineSeries, t) -> float | np.ndarray:
    """w(t) = sum b_theta cos(2 pi theta t); even in t; t may be an array."""
    t_arr = np.atleast_1d(np.asarray(t, dtype=float))
    vals = series.coeffs @ np.cos(2.0 * math.pi * np.outer(series.freqs, t_arr))
    if np.ndim(t) == 0:
        return float(vals[0])
    return vals


def integral_i1(series: CosineSeries) -> float:
    """I1 = integral_0^1 w = sum b_theta S(theta), no quadrature involved."""
    return float(series.coeffs @ kernel_s(series.freqs))


def integral_i2(series: CosineSeries) -> float:
    """I2 = integral_0^1 w^2 via the product-to-sum closed form, O(K^2)."""
    th = series.freqs
    b = series.coeffs
    diff = th[:, None] - th[None, :]
    summ = th[:, None] + th[None, :]
    return float(0.5 * (b @ ((kernel_s(diff) + kernel_s(summ)) @ b)))


def ratio_rho(series: CosineSeries) -> float:
    """rho = I1^2 / I2, always in [0, 1] for a nonzero series."""
    if series.is_zero():
        raise DomainError("rho is undefined for the identically zero series")
    i1 = integral_i1(series)
    i2 = integral_i2(series)
    if i2 <= 0.0:
        # I2 > 0 for every nonzero series; reaching 0 here means the
        # coefficients are so small that I2 underflowed in double precision
        raise DomainError("I2 underflowed to zero; series is numerically zero")
    return i1 * i1 / i2


def asymptotic_constant(series: CosineSeries) -> float:
    """c = 2 (1 - rho); requires I1 < 0.

    Under that hypothesis every B2[g] set A in [0, N] satisfies
    |A| <~ sqrt(c (2g-1) N) as N grows.
    """
    i1 = integral_i1(series)
    if not i1 < 0:
        raise HypothesisError(
            f"asymptotic constant requires I1 < 0, got I1 = {i1!r}"
        )
    return 2.0 * (1.0 - ratio_rho(series))


def fourier_a(series: CosineSeries, m: int) -> float:
    """m-th cosine coefficient of the 2-periodic extension of w.

    a_m = integral_{-1}^{1} w(t) exp(-i pi m t) dt, real by evenness:
    a_m = sum b_theta [sinc(pi(2 theta - m)) + sinc(pi(2 theta + m))].
    """
    if m < 0 or m != int(m):
        raise ValidationError(f"coefficient index must be a nonnegative integer, got {m}")
    th = series.freqs
    b = series.coeffs
    return float(
        b @ (sinc(math.pi * (2.0 * th - m)) + sinc(math.pi * (2.0 * th + m)))
    )


def fourier_coefficients(series: CosineSeries, m_max: int) -> np.ndarray:
    """Vectorized [a_0, a_1, ..., a_m_max]; same formula as fourier_a."""
    m = np.arange(m_max + 1, dtype=float)
    th = series.freqs[:, None]
    b = series.coeffs
    return b @ (sinc(math.pi * (2.0 * th - m)) + sinc(math.pi * (2.0 * th + m)))


def curvature_bound(series: CosineSeries) -> float:
    """Certified upper bound for A(w) = |w'(1)| + sup_t |w''(t)|.

    w'(1) = -sum b_theta 2 pi theta sin(2 pi theta) is exact; the second
    derivative is bounded term by term: |w''| <= sum b_theta (2 pi theta)^2.
    """
    th = series.freqs
    b = series.coeffs
    two_pi_th = 2.0 * math.pi * th
    w1 = -float(b @ (two_pi_th * np.sin(two_pi_th)))
    return abs(w1) + float(b @ (two_pi_th * two_pi_th))


def summarize(series: CosineSeries) -> FunctionalSummary:
    """Bundle (I1, I2, rho, w(0), A-upper) for the bound evaluators."""
    i1 = integral_i1(series)
    i2 = integral_i2(series)
    if series.is_zero():
        raise DomainError("summary is undefined for the identically zero series")
    return FunctionalSummary(
        i1=i1,
        i2=i2,
        rho=i1 * i1 / i2,
        w0=float(np.sum(series.coeffs)),
        a_upper=curvature_bound(series),
    )


def coefficient_decay_bound(a_upper: float, m) -> float:
    """|a_m| <= 2 A(w) / (pi^2 m^2) for m >= 1 (two integrations by parts).

    m may be a scalar or an integer array; the bound is applied elementwise.
    """
    m_arr = np.asarray(m)
    if np.any(m_arr < 1):
        raise ValidationError("decay bound applies to m >= 1")
    out = 2.0 * a_upper / (math.pi * math.pi * m_arr * m_arr)
    return float(out) if np.ndim(m) == 0 else out


def parseval_tail_bound(a_upper: float, m_star: int) -> float:
    """Upper bound for sum_{m > m_star} a_m^2 using the decay bound.

    sum_{m > M} m^-4 <= 1/(3 M^3), so the tail is at most
    (2 A / pi^2)^2 / (3 m_star^3).
    """
    if m_star < 1:
        raise ValidationError("tail bound applies to m_star >= 1")
    c = 2.0 * a_upper / (math.pi * math.pi)
    return c * c / (3.0 * m_star**3)


def reconstruction_tail_bound(a_upper: float, m_star: int) -> float:
    """Upper bound for sum_{m > m_star} |a_m|: at most (2 A / pi^2) / m_star."""
    if m_star < 1:
        raise ValidationError("tail bound applies to m_star >= 1")
    return 2.0 * a_upper / (math.pi * math.pi * m_star)
