"""Log-domain evaluation of the asymptotic approximations to S_r(p, q).

Three formulas:

* :func:`hennecart_F` -- saddle-point approximation with the exact
  (p - rq)! prefactor,
* :func:`cd_C`        -- the variant whose prefactor replaces (p - rq)!
  by its Stirling approximation; related to F by the exact factor
  :func:`ratio_CF`,
* :func:`largeq_W`    -- the boundary-regime formula for S_r(rq + a, q)
  with a small relative to q^{2/5}, built from factorials only.

Everything is computed and returned as natural logs: F overflows any
fixed-width float once p reaches a few hundred.  Log-factorials take the
exact big-integer route up to 10^6 and switch to log-Gamma above; the two
routes are cross-checked in the test suite over an overlap window.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import gmpy2
from mpmath import mp, mpf

from .errors import ConsistencyError, DomainError
from .exact import log_of_count
from .saddle import xi
from .specfun import B, H, phi_dd

LOG_FACTORIAL_EXACT_LIMIT = 10 ** 6


class Formula(enum.Enum):
    HENNECART = "hennecart"
    CD = "cd"
    LARGE_Q = "largeq"


@dataclass(frozen=True)
class ApproxResult:
    """One evaluated approximation; log_value is the natural log.

    z0 is the saddle point (None for the large-q formula, which does not
    use one); t0 satisfies q * t0 = p - r*q.
    """

    formula: Formula
    log_value: mpf
    r: int
    p: int
    q: int
    z0: mpf | None
    t0: mpf


_log_factorial_cache: dict[tuple[int, int], mpf] = {}


def log_factorial(n: int, precision_bits: int = 128) -> mpf:
    """ln n!, exact-mantissa route below 10^6, log-Gamma above."""
    if n < 0:
        raise DomainError(f"factorial of negative {n}")
    key = (n, precision_bits)
    cached = _log_factorial_cache.get(key)
    if cached is not None:
        return cached
    if n <= 1:
        out = mp.zero
    elif n <= LOG_FACTORIAL_EXACT_LIMIT:
        out = log_of_count(int(gmpy2.fac(n)), precision_bits)
    else:
        with mp.workprec(precision_bits + 8):
            out = mp.loggamma(mpf(n) + 1)
    if len(_log_factorial_cache) > 4096:
        _log_factorial_cache.clear()
    _log_factorial_cache[key] = out
    return out


def ratio_CF(p_minus_rq: int, precision_bits: int = 128) -> mpf:
    """n! over its Stirling approximation sqrt(2 pi n) (n/e)^n, the exact
    multiplicative gap between the CD and Hennecart formulas.  Tends to
    1 + 1/(12 n) + O(n^-2)."""
    n = p_minus_rq
    if n < 1:
        raise DomainError(f"need p - r*q >= 1, got {n}")
    with mp.workprec(precision_bits + 8):
        log_ratio = (log_factorial(n, precision_bits + 8)
                     - mp.log(2 * mp.pi * n) / 2
                     - n * (mp.ln(mpf(n)) - 1))
        out = mp.exp(log_ratio)
    return out


def _validate_interior(r: int, p: int, q: int):
    if r < 1 or q < 1:
        raise DomainError(f"need r >= 1 and q >= 1, got r={r}, q={q}")
    if p - r * q < 1:
        raise DomainError(
            f"saddle formulas need p - r*q >= 1 (strict interior), "
            f"got p={p}, q={q}, r={r}")


def hennecart_F(r: int, p: int, q: int, precision_bits: int = 128) -> ApproxResult:
    """log of
    p!/(q!(p-rq)!) * ((p-rq)/e)^(p-rq) * B_r(z0)^q / z0^(p+1)
                   * sqrt(q t0 / Phi''(z0)).
    """
    _validate_interior(r, p, q)
    a = p - r * q
    with mp.workprec(precision_bits + 16):
        z0 = xi(r, mpf(p) / q).z0
        curvature = phi_dd(r, p, q, z0)
        if not curvature > 0:
            raise ConsistencyError(
                f"Phi'' at the saddle must be positive, got "
                f"{mp.nstr(curvature, 10)} for (r={r}, p={p}, q={q})")
        t0 = mpf(a) / q
        log_value = (log_factorial(p, precision_bits + 16)
                     - log_factorial(q, precision_bits + 16)
                     - log_factorial(a, precision_bits + 16)
                     + a * (mp.ln(mpf(a)) - 1)
                     + q * mp.ln(B(r, z0))
                     - (p + 1) * mp.ln(z0)
                     + mp.ln(q * t0 / curvature) / 2)
    return ApproxResult(Formula.HENNECART, log_value, r, p, q, z0, t0)


def cd_C(r: int, p: int, q: int, precision_bits: int = 128) -> ApproxResult:
    """log of the closed form p! B_r(z0)^q / (2 q! z0^p sqrt(q pi z0 H(z0))).

    Definitionally equal to hennecart_F times ratio_CF(p - r*q); the test
    suite holds the two sides to working precision.
    """
    _validate_interior(r, p, q)
    a = p - r * q
    with mp.workprec(precision_bits + 16):
        z0 = xi(r, mpf(p) / q).z0
        curvature = H(r, z0)
        if not curvature > 0:
            raise ConsistencyError(
                f"H at the saddle must be positive, got "
                f"{mp.nstr(curvature, 10)} for (r={r}, p={p}, q={q})")
        log_value = (log_factorial(p, precision_bits + 16)
                     - log_factorial(q, precision_bits + 16)
                     + q * mp.ln(B(r, z0))
                     - p * mp.ln(z0)
                     - mp.ln(mpf(2))
                     - mp.log(q * mp.pi * z0 * curvature) / 2)
        t0 = mpf(a) / q
    return ApproxResult(Formula.CD, log_value, r, p, q, z0, t0)


def largeq_W(r: int, q: int, a: int, precision_bits: int = 128) -> ApproxResult:
    """log of (rq+a)!/(a! q! (r!)^q) * (q/(r+1))^a.

    At a = 0 this is exactly log of the all-blocks-size-r count
    (rq)!/(q!(r!)^q)."""
    if r < 1 or q < 1 or a < 0:
        raise DomainError(f"need r >= 1, q >= 1, a >= 0, got r={r}, q={q}, a={a}")
    p = r * q + a
    with mp.workprec(precision_bits + 16):
        log_value = (log_factorial(p, precision_bits + 16)
                     - log_factorial(a, precision_bits + 16)
                     - log_factorial(q, precision_bits + 16)
                     - q * log_factorial(r, precision_bits + 16)
                     + a * (mp.ln(mpf(q)) - mp.ln(mpf(r + 1))))
        t0 = mpf(a) / q
    return ApproxResult(Formula.LARGE_Q, log_value, r, p, q, None, t0)
