"""Command-line interface.

Subcommands: exact, approx, grid, verify, selftest.  Numeric output uses
17 significant digits in scientific notation (integers in full decimal)
so downstream tooling can round-trip values losslessly.

Exit codes: 0 success, 2 domain error, 3 capacity, 4 I/O,
5 internal-consistency failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from mpmath import mp, mpf

from . import analysis, approx, verify
from .config import RunConfig, resolve_config
from .errors import (CapacityError, ConsistencyError, DomainError,
                     QuadratureError, SolverError)
from .exact import (build_table, log_of_count, stirling_alekseyev_r2,
                    stirling_brute, stirling_contour, stirling_partition_sum)

EXIT_OK = 0
EXIT_DOMAIN = 2
EXIT_CAPACITY = 3
EXIT_IO = 4
EXIT_INTERNAL = 5


def _fmt(x) -> str:
    return f"{float(x):.16e}"


def cmd_exact(args, cfg: RunConfig) -> int:
    r, p, q = args.r, args.p, args.q
    if r < 1 or p < 1:
        raise DomainError(f"need r >= 1 and p >= 1, got r={r}, p={p}")
    if not 0 <= q <= p // r:
        raise DomainError(
            f"q={q} violates 0 <= q <= p/r = {p}/{r} (no such partition)")
    if args.method == "recurrence":
        print(build_table(r, p, cap=cfg.max_p).value(p, q))
    elif args.method == "alekseyev":
        if r != 2:
            raise DomainError("the alekseyev method is specific to r=2")
        print(stirling_alekseyev_r2(p, q))
    elif args.method == "partition-sum":
        a = p - r * q
        if a < 0:
            raise DomainError(f"partition-sum needs p >= r*q, got p={p}, q={q}")
        print(stirling_partition_sum(r, q, a, cap=cfg.max_a))
    elif args.method == "brute":
        print(stirling_brute(r, p, q))
    else:  # contour: prints the log value
        log_value = stirling_contour(r, p, q, radius=args.radius,
                                     nodes=args.nodes,
                                     precision_bits=cfg.precision_bits)
        print(_fmt(log_value))
    return EXIT_OK


def cmd_approx(args, cfg: RunConfig) -> int:
    r = args.r
    bits = cfg.precision_bits
    if args.formula == "largeq":
        if args.a is not None:
            q, a = args.q, args.a
            if args.p is not None and args.p != r * q + a:
                raise DomainError(f"--p {args.p} contradicts r*q + a = {r * q + a}")
        else:
            if args.p is None:
                raise DomainError("largeq needs --a (with --q) or --p and --q")
            q, a = args.q, args.p - r * args.q
            if a < 0:
                raise DomainError(f"largeq needs p >= r*q, got p={args.p}, q={q}")
        result = approx.largeq_W(r, q, a, bits)
        log_exact = None
        if a <= cfg.max_a:
            exact = stirling_partition_sum(r, q, a, cap=cfg.max_a)
            log_exact = log_of_count(exact, bits)
    else:
        if args.p is None:
            raise DomainError(f"{args.formula} needs --p")
        p, q = args.p, args.q
        fn = approx.hennecart_F if args.formula == "hennecart" else approx.cd_C
        result = fn(r, p, q, bits)
        log_exact = None
        if p <= min(cfg.exact_rel_err_cap, cfg.max_p):
            exact = build_table(r, p, cap=cfg.max_p).value(p, q)
            if exact > 0:
                log_exact = log_of_count(exact, bits)
    print(f"log_value {_fmt(result.log_value)}")
    if log_exact is not None:
        with mp.workprec(bits):
            rel = mp.expm1(result.log_value - log_exact)
        print(f"rel_err {_fmt(rel)}")
    return EXIT_OK


def cmd_grid(args, cfg: RunConfig) -> int:
    q_from = args.q_from if args.q_from is not None else 1
    q_to = args.q_to if args.q_to is not None else (args.p - 1) // args.r
    records = analysis.error_grid(args.r, args.p, range(q_from, q_to + 1),
                                  precision_bits=cfg.precision_bits,
                                  parallelism=cfg.parallelism)
    fmt = args.format or cfg.format
    path = args.output or cfg.output_path
    if path is None:
        raise DomainError("grid needs --output (or output_path in the config)")
    analysis.export(records, fmt, path)
    flagged = sum(rec.flagged for rec in records)
    print(f"wrote {len(records)} rows ({flagged} flagged) to {path}")
    return EXIT_OK


def cmd_verify(args, cfg: RunConfig) -> int:
    bits = cfg.precision_bits
    if args.check == "nonneg-coeffs":
        n = args.N if args.N is not None else 300
        report = verify.check_nonneg_coeffs(args.r, n, cap=cfg.max_n)
    elif args.check == "scaled-error-bound":
        p_list = [int(tok) for tok in args.p_list.split(",")] if args.p_list else [50, 100]
        report = verify.check_scaled_error_bound(args.r, p_list,
                                                 bound=args.bound,
                                                 precision_bits=bits)
    elif args.check == "zero-free-cone":
        report = verify.scan_zero_free_cone(args.r, args.beta,
                                            precision_bits=bits)
    elif args.check == "q-derivative-bounds":
        r_list = [int(tok) for tok in args.r_list.split(",")] if args.r_list \
            else list(range(1, args.r + 1))
        report = verify.check_q_derivative_bounds(r_list, precision_bits=bits)
    else:
        raise DomainError(f"unknown check {args.check!r}")
    payload = json.dumps(report.as_dict(), indent=1)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(payload + "\n")
        print(f"wrote report to {args.output}")
    else:
        print(payload)
    return EXIT_OK


def cmd_selftest(args, cfg: RunConfig) -> int:
    """Quick cross-validation of the oracle stack; exits nonzero on any
    disagreement.  A fuller sweep lives in the pytest acceptance suite."""
    bits = cfg.precision_bits
    failures = 0

    def check(name: str, ok: bool, detail: str = ""):
        nonlocal failures
        line = f"{'PASS' if ok else 'FAIL'}  {name}"
        if detail and not ok:
            line += f"  ({detail})"
        print(line)
        failures += not ok

    t2 = build_table(2, 30)
    s1 = build_table(1, 30)
    ok = all(t2.value(p, q) == stirling_alekseyev_r2(p, q, s1_table=s1)
             for p in range(1, 31) for q in range(0, p // 2 + 1))
    check("recurrence = alekseyev (r=2, p <= 30)", ok)

    ok = True
    for r in (1, 2, 3):
        for q in (1, 2, 5, 9):
            for a in (0, 1, 2, 5):
                t = build_table(r, r * q + a)
                if t.value(r * q + a, q) != stirling_partition_sum(r, q, a):
                    ok = False
    check("recurrence = partition sum (r <= 3, small cells)", ok)

    ok = all(build_table(r, 8).value(p, q) == stirling_brute(r, p, q)
             for r in (1, 2, 3) for p in range(1, 9) for q in range(0, p + 1))
    check("recurrence = exhaustive enumeration (p <= 8)", ok)

    log25 = stirling_contour(2, 6, 2, precision_bits=256)
    with mp.workprec(280):
        gap = abs(mp.exp(log25 - log_of_count(25, 280)) - 1)
    check("contour oracle at S_2(6,2) = 25", gap < mpf("1e-12"), f"gap {_fmt(gap)}")

    with mp.workprec(bits):
        f = approx.hennecart_F(2, 50, 20, bits)
        c = approx.cd_C(2, 50, 20, bits)
        ratio = approx.ratio_CF(10, bits)
        gap = abs(c.log_value - f.log_value - mp.ln(ratio))
    check("C = F * Stirling correction identity", gap < mpf("1e-25"), f"gap {_fmt(gap)}")

    from .saddle import xi
    from .specfun import Q
    with mp.workprec(bits):
        worst = max(abs(Q(r, xi(r, mpf(x)).z0) - x) / x
                    for r in (1, 2, 3) for x in (r + mpf("0.01"), 2 * r + 1, mpf(1000)))
        tol = mpf(2) ** (16 - bits)
    check("saddle round trip", worst <= tol, f"worst residual {_fmt(worst)}")

    print(f"{'OK' if not failures else 'FAILED'}: selftest "
          f"({failures} failure{'s' if failures != 1 else ''})")
    return EXIT_OK if not failures else EXIT_INTERNAL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rstirling",
        description="Exact and asymptotic r-associated Stirling numbers "
                    "of the second kind.",
        allow_abbrev=False)
    parser.add_argument("--config", help="key=value config file")
    parser.add_argument("--precision-bits", type=int, dest="precision_bits")
    parser.add_argument("--max-p", type=int, dest="max_p")
    parser.add_argument("--max-a", type=int, dest="max_a")
    parser.add_argument("--max-N", type=int, dest="max_n")
    parser.add_argument("--parallelism", type=int)
    sub = parser.add_subparsers(dest="command", required=True)

    p_exact = sub.add_parser("exact", help="print S_r(p, q) exactly")
    p_exact.add_argument("--r", type=int, required=True)
    p_exact.add_argument("--p", type=int, required=True)
    p_exact.add_argument("--q", type=int, required=True)
    p_exact.add_argument("--method", default="recurrence",
                         choices=["recurrence", "alekseyev", "partition-sum",
                                  "contour", "brute"])
    p_exact.add_argument("--radius", type=float,
                         help="contour radius (default: the saddle point)")
    p_exact.add_argument("--nodes", type=int, default=64)
    p_exact.set_defaults(func=cmd_exact)

    p_approx = sub.add_parser("approx", help="print log of an approximation")
    p_approx.add_argument("--r", type=int, required=True)
    p_approx.add_argument("--p", type=int)
    p_approx.add_argument("--q", type=int, required=True)
    p_approx.add_argument("--a", type=int,
                          help="p - r*q (largeq formula only)")
    p_approx.add_argument("--formula", default="hennecart",
                          choices=["hennecart", "cd", "largeq"])
    p_approx.set_defaults(func=cmd_approx)

    p_grid = sub.add_parser("grid", help="write a relative-error grid")
    p_grid.add_argument("--r", type=int, required=True)
    p_grid.add_argument("--p", type=int, required=True)
    p_grid.add_argument("--q-from", type=int, dest="q_from")
    p_grid.add_argument("--q-to", type=int, dest="q_to")
    p_grid.add_argument("--format", choices=["csv", "json"])
    p_grid.add_argument("--output")
    p_grid.set_defaults(func=cmd_grid)

    p_verify = sub.add_parser("verify", help="run one conjecture/lemma checker")
    p_verify.add_argument("check", choices=["nonneg-coeffs", "scaled-error-bound",
                                            "zero-free-cone", "q-derivative-bounds"])
    p_verify.add_argument("--r", type=int, default=2)
    p_verify.add_argument("--r-list", dest="r_list",
                          help="comma-separated r values (q-derivative-bounds)")
    p_verify.add_argument("--N", type=int)
    p_verify.add_argument("--p-list", dest="p_list",
                          help="comma-separated p values (scaled-error-bound)")
    p_verify.add_argument("--bound", type=float, default=0.16)
    p_verify.add_argument("--beta", type=float, default=0.1)
    p_verify.add_argument("--output")
    p_verify.set_defaults(func=cmd_verify)

    p_self = sub.add_parser("selftest", help="run the embedded oracle checks")
    p_self.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = resolve_config(
            config_path=args.config,
            precision_bits=args.precision_bits,
            max_p=args.max_p,
            max_a=args.max_a,
            max_n=args.max_n,
            parallelism=args.parallelism)
        return args.func(args, cfg)
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ConsistencyError, SolverError, QuadratureError) as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
