"""Saddle-point location: invert Q_r on (r, infinity).

The saddle z0 of Phi(z) = -p ln z + q ln B_r(z) solves Q_r(z0) = p/q.
Q_r is strictly increasing, so a bisection-safeguarded Newton iteration
with a sign-change bracket is guaranteed to converge; asymptotic
expansions of the inverse seed the iteration:

    Q_r^{-1}(x) ~ (r+1)(x - r)   as x -> r+
    Q_r^{-1}(x) ~ x              as x -> infinity
"""

from __future__ import annotations

from dataclasses import dataclass

from mpmath import mp, mpf

from .errors import DomainError, SolverError
from .specfun import Q, Q_prime

_MAX_ITERATIONS = 500
_MAX_BRACKET_EXPANSIONS = 300


@dataclass(frozen=True)
class SaddlePoint:
    """Solved saddle with solver diagnostics.

    x is the target ratio p/q; residual is |Q_r(z0) - x| / x.  linearized
    marks inputs so close to r that the asymptotic value was returned
    outright because evaluation noise in Q_r dominates below that scale.
    """

    r: int
    x: mpf
    z0: mpf
    residual: mpf
    iterations: int
    linearized: bool = False


def initial_guess(r: int, x) -> mpf:
    """Hybrid seed: linear inverse near x = r, identity for large x."""
    x = mp.mpmathify(x)
    if x - r < 1:
        return (r + 1) * (x - r)
    return +x


def xi(r: int, x, tol=None) -> SaddlePoint:
    """Solve Q_r(z0) = x for z0 > 0.

    Newton steps on G(z) = Q_r(z) - x, falling back to bisection whenever
    a step would leave the current sign-change bracket.  Default tolerance
    is 2^-(prec - 16) relative at the ambient precision.
    """
    if r < 1:
        raise DomainError(f"need r >= 1, got r={r}")
    x = mp.mpmathify(x)
    if not x > r:
        raise DomainError(
            f"Q_{r} maps (0,inf) onto ({r},inf); no saddle for x={x}")
    if tol is None:
        tol = mpf(2) ** (16 - mp.prec)
    else:
        tol = mp.mpmathify(tol)

    if x - r < mpf(2) ** (-(mp.prec // 2)):
        z0 = (r + 1) * (x - r)
        return SaddlePoint(r=r, x=x, z0=z0, residual=_residual(r, x, z0),
                           iterations=0, linearized=True)

    with mp.extraprec(24):
        guess = initial_guess(r, x)
        lo, hi = _bracket(r, x, guess)
        z = guess if lo < guess < hi else (lo + hi) / 2
        iterations = 0
        best = None
        # converge well past tol so residuals recomputed by callers at
        # the nominal precision still clear it
        target = tol / 16
        for iterations in range(1, _MAX_ITERATIONS + 1):
            g = Q(r, z) - x
            if best is None or abs(g) < best[1]:
                best = (z, abs(g))
            if abs(g) <= target * x:
                break
            if g > 0:
                hi = z
            else:
                lo = z
            step = g / Q_prime(r, z)
            candidate = z - step
            if not lo < candidate < hi:
                candidate = (lo + hi) / 2
            if candidate == z:  # bracket exhausted at this precision
                break
            z = candidate
        z, gap = best
        if gap > tol * x:
            raise SolverError(
                f"saddle solve for (r={r}, x={mp.nstr(x, 20)}) stalled",
                diagnostics={"lo": mp.nstr(lo, 25), "hi": mp.nstr(hi, 25),
                             "residual": mp.nstr(gap / x, 10),
                             "iterations": iterations})
        residual = gap / x
    return SaddlePoint(r=r, x=+x, z0=+z, residual=+residual,
                       iterations=iterations)


def _residual(r: int, x, z0) -> mpf:
    if z0 <= 0:
        return mp.inf
    return abs(Q(r, z0) - x) / x


def _bracket(r: int, x, guess) -> tuple[mpf, mpf]:
    """Expand [guess/4, max(4*guess, x + r)] geometrically to a sign change."""
    lo = guess / 4
    hi = max(4 * guess, x + r)
    for _ in range(_MAX_BRACKET_EXPANSIONS):
        if Q(r, lo) < x:
            break
        lo /= 4
    else:
        raise SolverError(f"no lower bracket for (r={r}, x={mp.nstr(x, 20)})")
    for _ in range(_MAX_BRACKET_EXPANSIONS):
        if Q(r, hi) > x:
            break
        hi *= 4
    else:
        raise SolverError(f"no upper bracket for (r={r}, x={mp.nstr(x, 20)})")
    return lo, hi
