"""Finite checkers for the conjectured properties and quoted lemmas.

Reports are findings, not assertions: a checker only raises when its own
internal cross-validation disagrees (a bug), never because the property
under test fails to hold.  Every checker is deterministic for fixed
parameters, and the exact-arithmetic ones are precision-independent.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from mpmath import mp, mpf

from . import analysis
from .errors import ConsistencyError, DomainError
from .specfun import B, Q_prime, RationalSeries, series_B, series_exp_damped_B


class Verdict(enum.Enum):
    ALL_PASS = "AllPass"
    COUNTEREXAMPLE_FOUND = "CounterexampleFound"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class ConjectureReport:
    name: str
    parameters: dict[str, Any]
    verdict: Verdict
    checked_range: str
    witness: dict[str, Any] | None = None
    details: dict[str, Any] = field(default_factory=dict)

    def as_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "parameters": self.parameters,
            "verdict": self.verdict.value,
            "checked_range": self.checked_range,
            "witness": self.witness,
            "details": self.details,
        }


def check_nonneg_coeffs(r: int, N: int, *, cap: int | None = None) -> ConjectureReport:
    """Are the Taylor coefficients of e^{-x/(r+1)} B_r(x) all non-negative
    up to order N?

    Exact rationals, two routes: the explicit coefficient sum and the
    series product e^{-x/(r+1)} * B_r(x).  The routes must agree exactly;
    exactness also means the verdict is never Inconclusive.
    """
    kwargs = {"cap": cap} if cap is not None else {}
    direct = series_exp_damped_B(r, N, **kwargs)
    convolved = (RationalSeries.exponential(Fraction(-1, r + 1), N)
                 * series_B(r, N, **kwargs))
    if direct.coefficients != convolved.coefficients:
        raise ConsistencyError(
            f"coefficient routes disagree for r={r}, N={N}")
    witness = None
    verdict = Verdict.ALL_PASS
    for n, c in enumerate(direct.coefficients):
        if c < 0:
            verdict = Verdict.COUNTEREXAMPLE_FOUND
            witness = {"index": n, "coefficient": str(c)}
            break
    return ConjectureReport(
        name="nonneg-coeffs",
        parameters={"r": r, "N": N},
        verdict=verdict,
        checked_range=f"all Taylor coefficients c_0..c_{N}",
        witness=witness)


def check_scaled_error_bound(r: int, p_list: list[int], bound: float = 0.16,
                             precision_bits: int = 128) -> ConjectureReport:
    """Does max |p (F/S - 1)| stay below `bound` over the full q range of
    every listed p?"""
    if not p_list:
        raise DomainError("p_list must be non-empty")
    worst = None
    for p in p_list:
        for rec in analysis.error_grid(r, p, precision_bits=precision_bits):
            if rec.flagged:
                raise ConsistencyError(
                    f"grid cell (r={r}, p={p}, q={rec.q}) flagged: {rec.error}")
            if worst is None or abs(rec.scaled_err_F) > worst[0]:
                worst = (abs(rec.scaled_err_F), rec)
    value, rec = worst
    report_details = {"max_scaled_err": float(value),
                      "at": {"p": rec.p, "q": rec.q}}
    if value <= bound:
        return ConjectureReport(
            name="scaled-error-bound",
            parameters={"r": r, "p_list": list(p_list), "bound": bound},
            verdict=Verdict.ALL_PASS,
            checked_range=f"p in {list(p_list)}, q in [1, (p-1)//r]",
            details=report_details)
    return ConjectureReport(
        name="scaled-error-bound",
        parameters={"r": r, "p_list": list(p_list), "bound": bound},
        verdict=Verdict.COUNTEREXAMPLE_FOUND,
        checked_range=f"p in {list(p_list)}, q in [1, (p-1)//r]",
        witness={"p": rec.p, "q": rec.q, "scaled_err_F": float(rec.scaled_err_F)},
        details=report_details)


def default_cone_x_grid(n: int = 60, lo: float = 0.01, hi: float = 50.0) -> list[mpf]:
    step = (mp.ln(mpf(hi)) - mp.ln(mpf(lo))) / (n - 1)
    return [mp.exp(mp.ln(mpf(lo)) + i * step) for i in range(n)]


def scan_zero_free_cone(r: int, beta, x_grid=None, y_steps: int = 11,
                        precision_bits: int = 128) -> ConjectureReport:
    """Sample |B_r(x + iy)| e^{-x} over the cone |y| <= beta*x and report
    the minimum.

    A finite sample cannot certify a zero, so the verdict is AllPass when
    the minimum clears the rounding-noise margin 2^-(precision_bits/2) and
    Inconclusive otherwise -- never CounterexampleFound.  |B_r| is
    conjugate-symmetric in y, so only y >= 0 is sampled.
    """
    beta = mp.mpmathify(beta)
    if not beta > 0:
        raise DomainError(f"need beta > 0, got {beta}")
    with mp.workprec(precision_bits):
        if x_grid is None:
            x_grid = default_cone_x_grid()
        margin = mpf(2) ** (-(precision_bits // 2))
        minimum = None
        location = None
        for x in x_grid:
            x = mp.mpmathify(x)
            for j in range(y_steps):
                y = beta * x * j / (y_steps - 1) if y_steps > 1 else mp.zero
                m = abs(B(r, mp.mpc(x, y))) * mp.exp(-x)
                if minimum is None or m < minimum:
                    minimum, location = m, (x, y)
        verdict = Verdict.ALL_PASS if minimum > margin else Verdict.INCONCLUSIVE
    return ConjectureReport(
        name="zero-free-cone",
        parameters={"r": r, "beta": float(beta), "y_steps": y_steps,
                    "x_grid_size": len(list(x_grid))},
        verdict=verdict,
        checked_range=(f"x in [{mp.nstr(mp.mpmathify(x_grid[0]), 6)}, "
                       f"{mp.nstr(mp.mpmathify(x_grid[-1]), 6)}], "
                       f"|y| <= {mp.nstr(beta, 6)} x"),
        details={"min_normalized_modulus": float(minimum),
                 "at": {"x": float(location[0]), "y": float(location[1])},
                 "noise_margin": float(margin)})


def default_z_grid(n: int = 200, lo: float = 1e-6, hi: float = 1e3) -> list[mpf]:
    step = (mp.ln(mpf(hi)) - mp.ln(mpf(lo))) / (n - 1)
    return [mp.exp(mp.ln(mpf(lo)) + i * step) for i in range(n)]


def check_q_derivative_bounds(r_list, z_grid=None, precision_bits: int = 128,
                              slack: float = 1e-20) -> ConjectureReport:
    """Is 1/(r+1) <= Q_r'(z) <= 1 (within `slack`) at every grid point?"""
    r_list = list(r_list)
    with mp.workprec(precision_bits):
        if z_grid is None:
            z_grid = default_z_grid()
        slack = mpf(slack)
        witness = None
        for r in r_list:
            lo_bound = mp.one / (r + 1) - slack
            hi_bound = mp.one + slack
            for z in z_grid:
                v = Q_prime(r, z)
                if not lo_bound <= v <= hi_bound:
                    witness = {"r": r, "z": float(z), "Q_prime": float(v)}
                    break
            if witness:
                break
    return ConjectureReport(
        name="q-derivative-bounds",
        parameters={"r_list": r_list, "grid_size": len(list(z_grid)),
                    "slack": float(slack)},
        verdict=Verdict.COUNTEREXAMPLE_FOUND if witness else Verdict.ALL_PASS,
        checked_range=(f"r in {r_list}, z on {len(list(z_grid))}-point log grid "
                       f"[{mp.nstr(mp.mpmathify(z_grid[0]), 6)}, "
                       f"{mp.nstr(mp.mpmathify(z_grid[-1]), 6)}]"),
        witness=witness)
