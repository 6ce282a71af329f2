"""Run configuration: defaults, key=value config files, flag overrides.

Environment variables are deliberately not consulted; a run is fully
determined by its config file plus explicit flags.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .errors import DomainError


@dataclass(frozen=True)
class RunConfig:
    precision_bits: int = 128
    output_path: str | None = None
    format: str = "csv"
    max_p: int = 2000
    max_a: int = 64
    max_n: int = 2048
    parallelism: int = 1
    exact_rel_err_cap: int = 400       # largest p for which rel_err vs the
                                       # recurrence table is printed
    qz0_floor_coeff: float = 0.5       # empirically calibrated constant in
                                       # the q*z0 growth-floor check
    qz0_floor_exponent: float = 0.9
    same_curve_exclude: int = 3

    def validate(self) -> "RunConfig":
        if self.precision_bits < 64:
            raise DomainError(
                f"precision_bits must be >= 64, got {self.precision_bits}")
        for name in ("max_p", "max_a", "max_n", "parallelism"):
            if getattr(self, name) < 1:
                raise DomainError(f"{name} must be positive")
        if self.format not in ("csv", "json"):
            raise DomainError(f"format must be csv or json, got {self.format!r}")
        return self


_INT_KEYS = {"precision_bits", "max_p", "max_a", "max_n", "parallelism",
             "exact_rel_err_cap", "same_curve_exclude"}
_FLOAT_KEYS = {"qz0_floor_coeff", "qz0_floor_exponent"}
_STR_KEYS = {"output_path", "format"}


def load_config_file(path) -> dict:
    """Parse simple key=value lines; '#' starts a comment."""
    overrides = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise DomainError(f"{path}:{lineno}: expected key=value")
            key, value = (part.strip() for part in line.split("=", 1))
            if key in _INT_KEYS:
                overrides[key] = int(value)
            elif key in _FLOAT_KEYS:
                overrides[key] = float(value)
            elif key in _STR_KEYS:
                overrides[key] = value
            else:
                raise DomainError(f"{path}:{lineno}: unknown config key {key!r}")
    return overrides


def resolve_config(config_path=None, **flag_overrides) -> RunConfig:
    """Defaults, then config file, then explicit flags."""
    cfg = RunConfig()
    if config_path:
        cfg = replace(cfg, **load_config_file(config_path))
    flags = {k: v for k, v in flag_overrides.items() if v is not None}
    if flags:
        cfg = replace(cfg, **flags)
    return cfg.validate()
