"""High-precision building blocks for the saddle-point approximations.

All evaluations honour the ambient mpmath precision (``mp.prec``); callers
that need a specific mantissa width wrap calls in ``mp.workprec(bits)``.
Real values are ``mpmath.mpf``, complex values ``mpmath.mpc``.

The functions here:

* ``B(r, z)``        -- e^z with its first r Taylor terms removed,
* ``Q(r, z)``        -- the logarithmic-derivative scale z*B'/B, strictly
                        increasing from r to infinity on (0, inf),
* ``Q_prime(r, z)``  -- its derivative, pinned to [1/(r+1), 1],
* ``H(r, z)``        -- the saddle-curvature combination of B_{r-2..r},
* ``phi_dd(r,p,q,z)``-- the second derivative of -p*ln z + q*ln B(r, z),
* exact rational Taylor series of B and of e^{-x/(r+1)} * B(r, x).

Derivative identities used throughout: B(r,.)' = B(r-1,.) and
B(r,.)'' = B(r-2,.) with the empty-sum convention B(0,.) = B(-1,.) = e^z.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp, mpf

from .errors import CapacityError, DomainError

MAX_SERIES_ORDER = 2048


def B(r: int, z):
    """Truncated exponential tail e^z - sum_{k<r} z^k/k!.

    For r <= 0 the subtracted sum is empty, so B is e^z itself.  Near the
    origin (|z| < r/2) the difference would cancel catastrophically, so the
    tail series sum_{k>=r} z^k/k! is summed directly instead.
    """
    if r <= 0:
        return mp.exp(z)
    z = mp.mpmathify(z)
    if abs(z) * 2 < r:
        return _tail_series(r, z)
    poly = mp.one
    term = mp.one
    for k in range(1, r):
        term = term * z / k
        poly += term
    return mp.exp(z) - poly


def _tail_series(r: int, z):
    # Terms decay by at least |z|/k < 1/2 once k >= r, so a single
    # small-term check terminates correctly.
    cutoff = mpf(2) ** (-(mp.prec + 8))
    term = mp.one
    for k in range(1, r + 1):
        term = term * z / k
    total = term
    k = r
    while abs(term) > abs(total) * cutoff:
        k += 1
        term = term * z / k
        total += term
    return total


def _require_positive(z) -> mpf:
    z = mp.mpmathify(z)
    if not z > 0:
        raise DomainError(f"argument must be positive, got {z}")
    return z


def Q(r: int, z) -> mpf:
    """z * B(r-1, z) / B(r, z) for real z > 0; increases from r to infinity."""
    z = _require_positive(z)
    return z * B(r - 1, z) / B(r, z)


def Q_prime(r: int, z) -> mpf:
    """Derivative of Q(r, .), via Q' = B'/B + z B''/B - z (B'/B)^2."""
    z = _require_positive(z)
    with mp.extraprec(_cancellation_bits(z) + 8):
        t = B(r - 1, z) / B(r, z)
        u = B(r - 2, z) / B(r, z)
        out = t + z * u - z * t * t
    return +out


def H(r: int, z) -> mpf:
    """Saddle-curvature combination
    (B_{r-1} B_r + z B_{r-2} B_r - z B_{r-1}^2) / (2 B_r^2).

    The three numerator terms share their leading Taylor order and cancel
    it exactly, so the evaluation pads precision by ~log2(1/z) bits when
    z is small.
    """
    z = _require_positive(z)
    with mp.extraprec(_cancellation_bits(z) + 8):
        br = B(r, z)
        brm1 = B(r - 1, z)
        brm2 = B(r - 2, z)
        num = brm1 * br + z * brm2 * br - z * brm1 * brm1
        out = num / (2 * br * br)
    return +out


def phi_dd(r: int, p: int, q: int, z) -> mpf:
    """Second derivative of Phi(z) = -p ln z + q ln B(r, z) at z.

    At the saddle the p/z^2 and q-terms cancel down to ~(p - r q)/z^2, so
    precision is padded by the size ratio of p to p - r q.
    """
    if p < 1 or q < 1:
        raise DomainError(f"need p >= 1 and q >= 1, got p={p}, q={q}")
    z = _require_positive(z)
    pad = (p // max(1, abs(p - r * q))).bit_length()
    with mp.extraprec(pad + _cancellation_bits(z) + 8):
        t = B(r - 1, z) / B(r, z)
        u = B(r - 2, z) / B(r, z)
        out = p / (z * z) + q * u - q * t * t
    return +out


def _cancellation_bits(z) -> int:
    # Leading Taylor orders cancel for small z and the O(z) terms cancel
    # for large z; either way the loss is about |log2 z| bits.  mp.mag is
    # a cheap bound on log2|z|.
    return abs(int(mp.mag(z)))


# ---------------------------------------------------------------------------
# Exact rational Taylor series
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RationalSeries:
    """Power series truncated at a fixed order, with exact Fraction
    coefficients.  Sums and Cauchy products truncate to the shorter
    operand's order, keeping every retained coefficient exact."""

    coefficients: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(
            self, "coefficients",
            tuple(Fraction(c) for c in self.coefficients))

    @property
    def truncation_order(self) -> int:
        return len(self.coefficients) - 1

    def coefficient(self, n: int) -> Fraction:
        if not 0 <= n <= self.truncation_order:
            raise DomainError(f"coefficient index {n} outside stored order")
        return self.coefficients[n]

    def __add__(self, other: "RationalSeries") -> "RationalSeries":
        n = min(self.truncation_order, other.truncation_order)
        return RationalSeries(tuple(
            self.coefficients[i] + other.coefficients[i] for i in range(n + 1)))

    def __mul__(self, other: "RationalSeries") -> "RationalSeries":
        n = min(self.truncation_order, other.truncation_order)
        a, b = self.coefficients, other.coefficients
        out = []
        for m in range(n + 1):
            acc = Fraction(0)
            for i in range(m + 1):
                if a[i]:
                    acc += a[i] * b[m - i]
            out.append(acc)
        return RationalSeries(tuple(out))

    @classmethod
    def exponential(cls, rate, order: int) -> "RationalSeries":
        """Series of e^{rate*x} to the given order, rate exact rational."""
        rate = Fraction(rate)
        coeffs = [Fraction(1)]
        for n in range(1, order + 1):
            coeffs.append(coeffs[-1] * rate / n)
        return cls(tuple(coeffs))


def series_B(r: int, N: int, *, cap: int = MAX_SERIES_ORDER) -> RationalSeries:
    """Taylor coefficients of B(r, x): 1/k! for k >= r, zero below."""
    _check_series_args(r, N, cap)
    coeffs = [Fraction(0)] * (N + 1)
    for k in range(r, N + 1):
        coeffs[k] = Fraction(1, math.factorial(k))
    return RationalSeries(tuple(coeffs))


def series_exp_damped_B(r: int, N: int, *, cap: int = MAX_SERIES_ORDER) -> RationalSeries:
    """Taylor coefficients of e^{-x/(r+1)} * B(r, x), via the explicit sum
    c_n = sum_{k=r}^{n} (1/k!) (-1/(r+1))^{n-k} / (n-k)!  over the common
    denominator n! (r+1)^n."""
    _check_series_args(r, N, cap)
    coeffs = []
    for n in range(N + 1):
        num = 0
        for k in range(r, n + 1):
            num += math.comb(n, k) * (-1) ** (n - k) * (r + 1) ** k
        coeffs.append(Fraction(num, math.factorial(n) * (r + 1) ** n))
    return RationalSeries(tuple(coeffs))


def _check_series_args(r: int, N: int, cap: int):
    if r < 1 or N < 1:
        raise DomainError(f"need r >= 1 and N >= 1, got r={r}, N={N}")
    if N > cap:
        raise CapacityError(f"series order {N} exceeds cap {cap}")
