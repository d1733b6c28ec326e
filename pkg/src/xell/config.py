"""Configuration for verification runs."""

import math
import os
from dataclasses import dataclass, field, replace
from typing import Mapping, Optional, Tuple

TOL_SCALE_ENV = "XELL_TOL_SCALE"


@dataclass
class VerifyConfig:
    """Tolerances, quadrature limits and grid sizes for the check battery."""

    tol_scale: float = 1.0
    quad_rtol: float = 1e-10
    quad_cap: int = 2048
    interior_points: int = 100
    limit_h_schedule: Tuple[float, ...] = (1e2, 1e3, 1e4)
    limit_beta_schedule: Tuple[float, ...] = (1e2, 1e3, 1e4, 1e5)
    fd_points: int = 4000
    jobs: int = 1
    tolerances: dict = field(
        default_factory=lambda: {
            "ortho": 1e-8,
            "eigen": 1e-8,
            "shape": 1e-9,
            "mirror": 1e-10,
            "coincidence": 1e-10,
            "limit": 0.2,
            "sign": 0.0,
            "spectrum_L": 1e-2,
            "spectrum_J": 5e-2,
        }
    )

    @classmethod
    def from_env(
        cls,
        environ: Optional[Mapping[str, str]] = None,
        **overrides,
    ) -> "VerifyConfig":
        """Create configuration, reading the tolerance multiplier from the environment."""
        env = os.environ if environ is None else environ
        raw = env.get(TOL_SCALE_ENV)
        tol_scale = 1.0
        if raw is not None and raw.strip():
            try:
                tol_scale = float(raw)
            except ValueError:
                raise ValueError(f"{TOL_SCALE_ENV} must be a real number, got {raw!r}")
        return cls(tol_scale=tol_scale, **overrides)

    @classmethod
    def quick(cls, **overrides) -> "VerifyConfig":
        """Bounded scope that finishes in seconds."""
        config = cls.from_env(**overrides)
        config.quad_cap = min(config.quad_cap, 256)
        return config

    @classmethod
    def full(cls, **overrides) -> "VerifyConfig":
        return cls.from_env(**overrides)

    def tolerance(self, check: str) -> float:
        """Default tolerance for a check class, multiplied by ``tol_scale``."""
        if check not in self.tolerances:
            raise ValueError(f"Unknown check class: {check}")
        return self.tolerances[check] * self.tol_scale

    def with_tolerance(self, check: str, value: float) -> "VerifyConfig":
        """Copy with one tolerance overridden (before scaling)."""
        tolerances = dict(self.tolerances)
        tolerances[check] = value
        return replace(self, tolerances=tolerances)

    def validate(self) -> None:
        """Validate configuration settings."""
        if not math.isfinite(self.tol_scale) or self.tol_scale <= 0:
            raise ValueError(f"tol_scale must be a positive real, got {self.tol_scale}")

        if self.quad_rtol <= 0:
            raise ValueError("quad_rtol must be positive")

        if self.quad_cap < 1:
            raise ValueError("quad_cap must be at least 1")

        if self.interior_points < 2:
            raise ValueError("interior_points must be at least 2")

        if self.fd_points < 10:
            raise ValueError(f"fd_points too small: {self.fd_points}")

        if self.jobs < 1:
            raise ValueError(f"Invalid jobs: {self.jobs}")

        for name in ("limit_h_schedule", "limit_beta_schedule"):
            schedule = getattr(self, name)
            if len(schedule) < 2:
                raise ValueError(f"{name} needs at least two entries to fit a slope")
            if any(b <= a for a, b in zip(schedule, schedule[1:])):
                raise ValueError(f"{name} must be strictly increasing")

        for check, value in self.tolerances.items():
            if value < 0:
                raise ValueError(f"Tolerance for {check} cannot be negative")
