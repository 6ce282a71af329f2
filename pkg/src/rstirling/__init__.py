"""rstirling: exact and asymptotic r-associated Stirling numbers.

S_r(p, q) counts partitions of a p-element set into q blocks of size at
least r.  The package computes it exactly by several independent routes,
evaluates the saddle-point approximations at arbitrary precision, and
quantifies the gap between them across the whole admissible (p, q) range.
"""

from .analysis import ErrorRecord, error_grid, export, qz0_profile, read_records
from .approx import ApproxResult, Formula, cd_C, hennecart_F, largeq_W, ratio_CF
from .errors import (CapacityError, ConsistencyError, DomainError,
                     QuadratureError, SolverError)
from .exact import (IntegerPartition, StirlingTable, brute_force_counts,
                    build_table, log_of_count, stirling_alekseyev_r2,
                    stirling_brute, stirling_contour, stirling_partition_sum)
from .saddle import SaddlePoint, xi
from .specfun import (B, H, Q, Q_prime, RationalSeries, phi_dd, series_B,
                      series_exp_damped_B)
from .verify import (ConjectureReport, Verdict, check_nonneg_coeffs,
                     check_q_derivative_bounds, check_scaled_error_bound,
                     scan_zero_free_cone)

__version__ = "0.1.0"

__all__ = [
    "ApproxResult", "B", "CapacityError", "ConjectureReport",
    "ConsistencyError", "DomainError", "ErrorRecord", "Formula", "H",
    "IntegerPartition", "Q", "Q_prime", "QuadratureError", "RationalSeries",
    "SaddlePoint", "SolverError", "StirlingTable", "Verdict",
    "brute_force_counts", "build_table", "cd_C", "check_nonneg_coeffs",
    "check_q_derivative_bounds", "check_scaled_error_bound", "error_grid",
    "export", "hennecart_F", "largeq_W", "log_of_count", "phi_dd",
    "qz0_profile", "ratio_CF", "read_records", "scan_zero_free_cone",
    "series_B", "series_exp_damped_B", "stirling_alekseyev_r2",
    "stirling_brute", "stirling_contour", "stirling_partition_sum",
    "xi", "__version__",
]
