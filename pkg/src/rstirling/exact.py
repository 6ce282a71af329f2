"""Exact computation of r-associated Stirling numbers of the second kind.

``S_r(p, q)`` counts the partitions of a p-element set into q blocks of
size at least r.  Boundary convention: the count is 1 at (0, 0) and 0 at
every other pair with q > floor(p/r) or q < 1.

Four independent routes are provided and cross-checked against each other:

* :func:`build_table`            -- dynamic programming over the recurrence
                                    (the method of record),
* :func:`stirling_alekseyev_r2`  -- alternating binomial sum over classical
                                    Stirling numbers, r = 2 only,
* :func:`stirling_partition_sum` -- sum over integer partitions of
                                    a = p - r*q; cheap for small a even when
                                    q is enormous,
* :func:`stirling_contour`       -- circle-integral quadrature in log
                                    domain at arbitrary precision.

Plus :func:`brute_force_counts`, an exhaustive set-partition census used
as the ground-truth oracle for small p.

Counts are plain Python ints at the API surface; gmpy2 does the heavy
lifting where factorials run to millions of bits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

import gmpy2
from mpmath import mp, mpf

from .errors import CapacityError, ConsistencyError, DomainError, QuadratureError
from .specfun import B

MAX_TABLE_P = 2000
MAX_PARTITION_A = 64
MAX_BRUTE_P = 13
MAX_CONTOUR_NODES = 1 << 17


class StirlingTable:
    """Dense table of S_r(p, q) for 0 <= p <= max_p, 0 <= q <= floor(p/r).

    Built once by :func:`build_table`; afterwards read-only, so completed
    tables are safe to share across threads.  Lookups outside the stored
    triangle return 0 per the boundary convention.
    """

    def __init__(self, r: int, rows: list[tuple[int, ...]]):
        self.r = r
        self._rows = rows

    @property
    def max_p(self) -> int:
        return len(self._rows) - 1

    def value(self, p: int, q: int) -> int:
        if p < 0 or p > self.max_p:
            raise DomainError(f"p={p} outside table range 0..{self.max_p}")
        row = self._rows[p]
        if q < 0 or q >= len(row):
            return 0
        return row[q]

    def row(self, p: int) -> tuple[int, ...]:
        return self._rows[p]

    def row_sum(self, p: int) -> int:
        return sum(self._rows[p])


def build_table(r: int, max_p: int, *, cap: int = MAX_TABLE_P) -> StirlingTable:
    """Fill the table bottom-up with
    S_r(p, q) = q * S_r(p-1, q) + C(p-1, r-1) * S_r(p-r, q-1).

    The two terms split on whether removing the highest element leaves its
    block legal (size still >= r) or dissolves a block of exactly r.
    """
    if r < 1 or max_p < 1:
        raise DomainError(f"need r >= 1 and max_p >= 1, got r={r}, max_p={max_p}")
    if max_p > cap:
        raise CapacityError(f"max_p={max_p} exceeds table cap {cap}")
    rows: list[tuple[int, ...]] = [(1,)]
    for p in range(1, max_p + 1):
        qmax = p // r
        row = [0] * (qmax + 1)
        if p >= r:
            stay = rows[p - 1]
            merge = rows[p - r]
            c = math.comb(p - 1, r - 1)
            for q in range(1, qmax + 1):
                v = q * stay[q] if q < len(stay) else 0
                if q - 1 < len(merge):
                    v += c * merge[q - 1]
                row[q] = v
        rows.append(tuple(row))
    return StirlingTable(r, rows)


def stirling_alekseyev_r2(p: int, q: int, *, s1_table: StirlingTable | None = None) -> int:
    """S_2(p, q) as the alternating sum over classical Stirling numbers,
    sum_{i=0}^{q} (-1)^i C(p, i) S_1(p-i, q-i).

    Intermediate terms are signed; the final value is asserted
    non-negative.  Pass a prebuilt r=1 table to amortise across calls.
    """
    if p < 1 or q < 0 or q > p // 2:
        raise DomainError(f"need p >= 1 and 0 <= q <= p//2, got p={p}, q={q}")
    if s1_table is None or s1_table.r != 1 or s1_table.max_p < p:
        s1_table = build_table(1, p)
    total = 0
    for i in range(q + 1):
        total += (-1) ** i * math.comb(p, i) * s1_table.value(p - i, q - i)
    if total < 0:
        raise ConsistencyError(
            f"alternating sum for S_2({p},{q}) came out negative: {total}")
    return total


# ---------------------------------------------------------------------------
# Partition-indexed sum for S_r(rq + a, q)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IntegerPartition:
    """A partition in multiplicity form: multiplicities[i] parts of size
    i + 1 (index 0 holds the count of 1s)."""

    multiplicities: tuple[int, ...]

    @property
    def a(self) -> int:
        return sum((i + 1) * m for i, m in enumerate(self.multiplicities))

    @property
    def k(self) -> int:
        return sum(self.multiplicities)

    def items(self) -> Iterator[tuple[int, int]]:
        """(part size, multiplicity) pairs with multiplicity > 0."""
        for i, m in enumerate(self.multiplicities):
            if m:
                yield i + 1, m


def partitions_with_max_parts(a: int, max_parts: int) -> Iterator[IntegerPartition]:
    """All integer partitions of a with at most max_parts parts."""
    if a < 0:
        raise DomainError(f"need a >= 0, got {a}")
    mults = [0] * a

    def descend(remaining: int, size: int, parts_left: int):
        if remaining == 0:
            yield IntegerPartition(tuple(mults))
            return
        if size == 0 or parts_left * size < remaining:
            return
        top = min(remaining // size, parts_left)
        for m in range(top, -1, -1):
            mults[size - 1] = m
            yield from descend(remaining - m * size, size - 1, parts_left - m)
        mults[size - 1] = 0

    yield from descend(a, a, max_parts)


def stirling_partition_sum(r: int, q: int, a: int, *, cap: int = MAX_PARTITION_A) -> int:
    """S_r(rq + a, q) summed over integer partitions lambda of a with
    k <= q parts:

        sum_lambda (rq+a)! / ( (r!)^(q-k) (q-k)! prod_i ((i+r)!)^mu_i mu_i! )

    Each lambda marks which blocks exceed the minimum size r and by how
    much.  The factorials shared by every term are factored out so only a
    single huge division happens per call, keeping the cost polynomial in
    a and (up to factorial sizes) independent of q.
    """
    if r < 1 or q < 1 or a < 0:
        raise DomainError(f"need r >= 1, q >= 1, a >= 0, got r={r}, q={q}, a={a}")
    if a > cap:
        raise CapacityError(f"a={a} exceeds partition-enumeration cap {cap}")
    r_fact = gmpy2.fac(r)
    # term(lambda) = common * (r!)^k * q(q-1)...(q-k+1) / prod_i ((i+r)!)^mu_i mu_i!
    # with common = (rq+a)! / ((r!)^q q!)
    weight = Fraction(0)
    for part in partitions_with_max_parts(a, min(q, a) if a else 0):
        k = part.k
        num = int(r_fact) ** k * math.prod(range(q - k + 1, q + 1))
        den = 1
        for size, mult in part.items():
            den *= int(gmpy2.fac(size + r)) ** mult * math.factorial(mult)
        weight += Fraction(num, den)
    numerator = gmpy2.fac(r * q + a) * weight.numerator
    denominator = r_fact ** q * gmpy2.fac(q) * weight.denominator
    value, remainder = gmpy2.f_divmod(numerator, denominator)
    if remainder:
        raise ConsistencyError(
            f"partition sum for (r={r}, q={q}, a={a}) is not an integer")
    return int(value)


# ---------------------------------------------------------------------------
# Exhaustive oracle
# ---------------------------------------------------------------------------

def brute_force_counts(r: int, p: int, *, cap: int = MAX_BRUTE_P) -> dict[int, int]:
    """Census {q: count} of set partitions of {1..p} with all blocks >= r,
    by exhaustive backtracking over element placements.

    Element k+1 either joins an existing block or opens a new one; opening
    order makes each partition appear exactly once.  Branches are pruned
    only when the outstanding size deficit exceeds the elements left, which
    cannot exclude any valid partition.
    """
    if r < 1 or p < 0:
        raise DomainError(f"need r >= 1 and p >= 0, got r={r}, p={p}")
    if p > cap:
        raise CapacityError(f"p={p} exceeds brute-force cap {cap}")
    if p == 0:
        return {0: 1}
    counts: dict[int, int] = {}
    sizes: list[int] = []

    def place(k: int, deficit: int):
        if k == p:
            if deficit == 0:
                nblocks = len(sizes)
                counts[nblocks] = counts.get(nblocks, 0) + 1
            return
        remaining = p - k - 1
        for i in range(len(sizes)):
            s = sizes[i]
            d = deficit - 1 if s < r else deficit
            if d <= remaining:
                sizes[i] = s + 1
                place(k + 1, d)
                sizes[i] = s
        d = deficit + r - 1
        if d <= remaining:
            sizes.append(1)
            place(k + 1, d)
            sizes.pop()

    place(0, 0)
    return counts


def stirling_brute(r: int, p: int, q: int, *, cap: int = MAX_BRUTE_P) -> int:
    if p == 0 and q == 0:
        return 1
    return brute_force_counts(r, p, cap=cap).get(q, 0)


# ---------------------------------------------------------------------------
# Contour quadrature and logarithms of counts
# ---------------------------------------------------------------------------

def log_of_count(n: int, precision_bits: int = 128) -> mpf:
    """Natural log of a positive integer: the rounded mantissa keeps the
    top precision_bits of n, the exponent contributes the bit length."""
    if n <= 0:
        raise DomainError(f"log of non-positive count {n}")
    with mp.workprec(precision_bits + 4):
        out = mp.ln(mpf(int(n)))
    return out


def stirling_contour(r: int, p: int, q: int, radius=None, nodes: int = 64,
                     precision_bits: int = 256, *,
                     max_nodes: int = MAX_CONTOUR_NODES) -> mpf:
    """log S_r(p, q) by trapezoid quadrature of the circle integral

        S_r(p, q) = (p!/q!) (1/2pi) Int_{-pi}^{pi}
                    B_r(R e^{i t})^q (R e^{i t})^{-p} dt.

    The node count doubles, reusing previous evaluations, until two
    successive estimates agree to 2^-(precision_bits/2) relative; the
    integrand is periodic and entire in t, so convergence is geometric.
    The default radius is the saddle point xi_r(p/q), which concentrates
    the mass near t = 0; by Cauchy's theorem any admissible radius gives
    the same value, just with slower quadrature convergence.
    """
    if r < 1 or p < 1 or q < 1 or r * q > p:
        raise DomainError(
            f"need r >= 1, p >= 1, 1 <= q <= p/r, got r={r}, p={p}, q={q}")
    if nodes < 16:
        raise DomainError(f"need nodes >= 16, got {nodes}")
    with mp.workprec(precision_bits + 16):
        if radius is None:
            if p == r * q:
                radius = mp.one  # saddle undefined on the boundary
            else:
                from .saddle import xi
                radius = xi(r, mpf(p) / q).z0
        R = mp.mpmathify(radius)
        if not R > 0:
            raise DomainError(f"need radius > 0, got {R}")
        log_peak = mp.ln(B(r, R))

        def integrand(t) -> mp.mpc:
            # t in units of pi; modulus is capped at 1 (peak at t = 0)
            z = R * mp.expjpi(t)
            return mp.exp(q * (mp.log(B(r, z)) - log_peak)) * mp.expjpi(-p * t)

        n = nodes + (nodes % 2)
        two = mpf(2)
        # conjugate symmetry: f(2 - t) = conj(f(t)), so sum real parts of
        # half the circle and double
        total = mp.re(integrand(mpf(0))) + mp.re(integrand(mpf(1)))
        for j in range(1, n // 2):
            total += 2 * mp.re(integrand(two * j / n))
        estimate = total / n
        tol = mpf(2) ** (-(precision_bits // 2))
        history = [(n, estimate)]
        while n < max_nodes:
            for j in range(n // 2):
                total += 2 * mp.re(integrand(two * (2 * j + 1) / (2 * n)))
            n *= 2
            refined = total / n
            history.append((n, refined))
            if abs(refined - estimate) <= tol * abs(refined):
                estimate = refined
                break
            estimate = refined
        else:
            raise QuadratureError(
                f"contour quadrature did not converge below {max_nodes} nodes",
                diagnostics={"history": [(k, mp.nstr(v, 25)) for k, v in history[-4:]],
                             "radius": mp.nstr(R, 25)})
        if not estimate > 0:
            raise QuadratureError(
                "contour mean is not positive; radius likely unusable",
                diagnostics={"estimate": mp.nstr(estimate, 25),
                             "radius": mp.nstr(R, 25)})
        log_fact_ratio = (log_of_count(int(gmpy2.fac(p)), precision_bits + 16)
                          - log_of_count(int(gmpy2.fac(q)), precision_bits + 16))
        out = log_fact_ratio + q * log_peak - p * mp.ln(R) + mp.ln(estimate)
    return out
