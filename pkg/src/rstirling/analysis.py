"""Relative-error grids over (p, q), regime labels, and file export.

For a fixed r and p, every admissible q gets one :class:`ErrorRecord`
holding the exact log value (from the recurrence table), the log values
of the Hennecart/CD/large-q approximations, their signed relative errors
(approx/exact - 1), and the regime label from the two-part convergence
argument: HighQ when 1 <= p - rq <= p^(1/5), LowQ otherwise.

Cells whose evaluation raises a domain error are emitted as flagged
records (numeric fields None) rather than aborting the grid, so exported
figures render with gaps.
"""

from __future__ import annotations

import csv
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np
from mpmath import mp, mpf

from . import approx
from .errors import DomainError
from .exact import StirlingTable, build_table, log_of_count
from .saddle import xi

REGIME_HIGH_Q = "HighQ"
REGIME_LOW_Q = "LowQ"

EXPORT_COLUMNS = ("r", "p", "q", "a", "z0", "qz0", "log_exact", "rel_err_F",
                  "rel_err_C", "rel_err_W", "scaled_err_F", "regime")
_INT_COLUMNS = {"r", "p", "q", "a"}


@dataclass(frozen=True)
class ErrorRecord:
    """One (r, p, q) grid cell; numeric fields are None when flagged."""

    r: int
    p: int
    q: int
    a: int
    z0: mpf | None = None
    qz0: mpf | None = None
    log_exact: mpf | None = None
    rel_err_F: mpf | None = None
    rel_err_C: mpf | None = None
    rel_err_W: mpf | None = None
    scaled_err_F: mpf | None = None
    regime: str | None = None
    error: str | None = None

    @property
    def flagged(self) -> bool:
        return self.error is not None


def classify_regime(p: int, a: int) -> str:
    """HighQ iff 1 <= p - rq <= p^(1/5) (the boundary strip where the
    partition-sum argument takes over from the contour analysis)."""
    return REGIME_HIGH_Q if 1 <= a <= p ** 0.2 else REGIME_LOW_Q


def error_grid(r: int, p: int, q_range=None, precision_bits: int = 128,
               table: StirlingTable | None = None,
               parallelism: int = 1) -> list[ErrorRecord]:
    """One record per q, in the order given (default: every admissible q).

    The exact table is built once and shared across cells; after that,
    cells are independent.  With parallelism > 1 they are evaluated on a
    process pool (mpmath's working precision is process-global, so worker
    threads would race on it); output order still matches q_range.
    """
    if q_range is None:
        q_range = range(1, (p - 1) // r + 1)
    q_list = list(q_range)
    if table is None or table.r != r or table.max_p < p:
        table = build_table(r, p)
    args = [(r, p, q, table.value(p, q) if 0 <= q <= p // r else 0,
             precision_bits) for q in q_list]
    if parallelism > 1:
        with ProcessPoolExecutor(max_workers=parallelism) as pool:
            return list(pool.map(_grid_cell, args))
    return [_grid_cell(arg) for arg in args]


def _grid_cell(args: tuple) -> ErrorRecord:
    r, p, q, exact, precision_bits = args
    a = p - r * q
    try:
        if q < 1 or a < 1:
            raise DomainError(
                f"grid cells need 1 <= q <= (p-1)/r, got q={q} for p={p}, r={r}")
        log_exact = log_of_count(exact, precision_bits)
        f = approx.hennecart_F(r, p, q, precision_bits)
        c = approx.cd_C(r, p, q, precision_bits)
        w = approx.largeq_W(r, q, a, precision_bits)
        with mp.workprec(precision_bits):
            rel_f = mp.expm1(f.log_value - log_exact)
            rel_c = mp.expm1(c.log_value - log_exact)
            rel_w = mp.expm1(w.log_value - log_exact)
            scaled = p * rel_f
            qz0 = q * f.z0
        return ErrorRecord(r=r, p=p, q=q, a=a, z0=f.z0, qz0=qz0,
                           log_exact=log_exact, rel_err_F=rel_f,
                           rel_err_C=rel_c, rel_err_W=rel_w,
                           scaled_err_F=scaled, regime=classify_regime(p, a))
    except DomainError as exc:
        return ErrorRecord(r=r, p=p, q=q, a=a, error=str(exc))


def qz0_profile(r: int, p: int, q_range=None, *, coeff: float = 0.5,
                exponent: float = 0.9,
                precision_bits: int = 128) -> list[tuple[int, mpf, bool]]:
    """(q, q*z0, bound_ok) rows, where bound_ok checks the growth floor
    q*z0 >= coeff * min(p^exponent, p - rq).

    coeff is the empirically calibrated constant from the run config; the
    asymptotic statement fixes only the shape of the floor.
    """
    if q_range is None:
        q_range = range(1, (p - 1) // r + 1)
    out = []
    with mp.workprec(precision_bits):
        for q in q_range:
            a = p - r * q
            if q < 1 or a < 1:
                raise DomainError(f"qz0 profile needs 1 <= q <= (p-1)/r, got q={q}")
            qz0 = q * xi(r, mpf(p) / q).z0
            floor = coeff * min(p ** exponent, a)
            out.append((q, +qz0, bool(qz0 >= floor)))
    return out


def high_q_asymptote_gap(r: int, p: int, q: int, precision_bits: int = 128) -> mpf:
    """q*z0 / ((r+1)(p - rq)), which tends to 1 as q approaches p/r."""
    a = p - r * q
    if a < 1:
        raise DomainError(f"need p - r*q >= 1, got p={p}, q={q}")
    with mp.workprec(precision_bits):
        return q * xi(r, mpf(p) / q).z0 / ((r + 1) * a)


# ---------------------------------------------------------------------------
# Derived grid statistics
# ---------------------------------------------------------------------------

def max_scaled_error(records: list[ErrorRecord]) -> mpf:
    vals = [abs(rec.scaled_err_F) for rec in records if not rec.flagged]
    if not vals:
        raise DomainError("no unflagged records")
    return max(vals)


def same_curve_deviation(records_a: list[ErrorRecord],
                         records_b: list[ErrorRecord],
                         exclude: int = 3) -> float:
    """Max gap between the two scaled-error curves, interpolated on q/p,
    after dropping `exclude` cells at each end of each series.

    The dropped cells are the ones nearest the domain boundaries, where
    finite-size effects are strongest.
    """
    xa, ya = _curve(records_a, exclude)
    xb, yb = _curve(records_b, exclude)
    lo = max(xa[0], xb[0])
    hi = min(xa[-1], xb[-1])
    if lo >= hi:
        raise DomainError("scaled-error curves share no q/p range")
    samples = np.unique(np.concatenate([
        xa[(xa >= lo) & (xa <= hi)], xb[(xb >= lo) & (xb <= hi)]]))
    gap = np.interp(samples, xa, ya) - np.interp(samples, xb, yb)
    return float(np.max(np.abs(gap)))


def _curve(records: list[ErrorRecord], exclude: int) -> tuple[np.ndarray, np.ndarray]:
    clean = sorted((rec for rec in records if not rec.flagged),
                   key=lambda rec: rec.q)
    if exclude:
        clean = clean[exclude:-exclude]
    if len(clean) < 2:
        raise DomainError("too few cells left after boundary exclusion")
    x = np.array([rec.q / rec.p for rec in clean], dtype=float)
    y = np.array([float(rec.scaled_err_F) for rec in clean], dtype=float)
    return x, y


def envelope_constant(records: list[ErrorRecord]) -> float:
    """Smallest K with |rel_err_F| <= K/(q z0) over the cells where
    p - rq >= p^(1/5) (the regime the contour argument covers)."""
    vals = [abs(rec.rel_err_F) * rec.qz0 for rec in records
            if not rec.flagged and rec.regime == REGIME_LOW_Q]
    if not vals:
        raise DomainError("no low-q cells in grid")
    return float(max(vals))


# ---------------------------------------------------------------------------
# Export / import
# ---------------------------------------------------------------------------

def export(records: list[ErrorRecord], format: str, path) -> None:
    """Write records in the fixed column order; floats carry 17
    significant digits so a parse round-trips the grid."""
    if not records:
        raise DomainError("refusing to export an empty record list")
    if format == "csv":
        _export_csv(records, path)
    elif format == "json":
        _export_json(records, path)
    else:
        raise DomainError(f"unknown export format {format!r}")


def _cell_values(rec: ErrorRecord) -> list:
    vals = []
    for name in EXPORT_COLUMNS:
        v = getattr(rec, name)
        if name in _INT_COLUMNS:
            vals.append(int(v))
        elif name == "regime":
            vals.append(v if v is not None else "")
        elif v is None:
            vals.append(None)
        else:
            vals.append(float(v))
    return vals


def _export_csv(records, path):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(EXPORT_COLUMNS)
        for rec in records:
            row = []
            for name, v in zip(EXPORT_COLUMNS, _cell_values(rec)):
                if v is None:
                    row.append("")
                elif isinstance(v, float):
                    row.append(f"{v:.16e}")
                else:
                    row.append(v)
            writer.writerow(row)


def _export_json(records, path):
    payload = [dict(zip(EXPORT_COLUMNS, _cell_values(rec))) for rec in records]
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=1)
        fh.write("\n")


def read_records(path, format: str | None = None) -> list[ErrorRecord]:
    """Parse a file written by :func:`export` back into records."""
    if format is None:
        format = "json" if str(path).endswith(".json") else "csv"
    if format == "csv":
        with open(path, newline="") as fh:
            reader = csv.DictReader(fh)
            if reader.fieldnames != list(EXPORT_COLUMNS):
                raise DomainError(
                    f"unexpected CSV header {reader.fieldnames} in {path}")
            raw = [{k: (None if v == "" else v) for k, v in row.items()}
                   for row in reader]
    elif format == "json":
        with open(path) as fh:
            raw = json.load(fh)
    else:
        raise DomainError(f"unknown export format {format!r}")
    records = []
    for row in raw:
        kwargs = {}
        for name in EXPORT_COLUMNS:
            v = row.get(name)
            if v is None:
                kwargs[name] = None
            elif name in _INT_COLUMNS:
                kwargs[name] = int(v)
            elif name == "regime":
                kwargs[name] = v or None
            else:
                kwargs[name] = mpf(float(v))
        records.append(ErrorRecord(**kwargs))
    return records
