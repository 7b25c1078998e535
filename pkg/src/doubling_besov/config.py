"""Grid parameters shared by the weight classifier and the norm integrals."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import Any

from .errors import ValidationError


@dataclass(frozen=True)
class QuadratureConfig:
    """Radial/angular grid parameters, boundary truncation and tolerances.

    Attributes
    ----------
    angular_log2_size : int
        ``log2`` of the uniform angular node count (and of boundary grids).
    radial_ratio : float
        Geometric ratio ``lambda`` of the radial grid ``1 - r_k ~ lambda**k``.
    radial_epsilon : float
        Truncation ``1 - eps`` for integrals of functions over the disc.
    weight_epsilon : float
        Truncation for one-dimensional weight integrals.
    probe_depth : float
        How close to the boundary closed-form weights are probed when
        classifying; the asymptotic conditions need many decades.
    h_samples : int
        Shift samples per octave for the sup in the modulus of continuity.
    tolerance : float
        Absolute tolerance for sign checks of nonnegative inner quantities.
    """

    angular_log2_size: int = 12
    radial_ratio: float = 0.9
    radial_epsilon: float = 1e-6
    weight_epsilon: float = 1e-8
    probe_depth: float = 1e-30
    h_samples: int = 64
    tolerance: float = 1e-7
    stabilization_window: int = 20
    stabilization_rtol: float = 1e-2
    growth_slope: float = 0.05
    dcheck_margin: float = 1e-3
    dcheck_max_log2k: int = 10
    sampled_probe_factor: float = 1e4
    divergence_threshold: float = 1e12

    def __post_init__(self) -> None:
        if not 0.0 < self.radial_ratio < 1.0:
            raise ValidationError("radial_ratio must lie in (0, 1)")
        for name in ("radial_epsilon", "weight_epsilon", "probe_depth"):
            v = getattr(self, name)
            if not 0.0 < v < 1.0:
                raise ValidationError(f"{name} must lie in (0, 1)")
        if self.angular_log2_size < 8:
            raise ValidationError("angular_log2_size must be >= 8")
        if self.h_samples < 8:
            raise ValidationError("h_samples must be >= 8")
        if self.stabilization_window < 2:
            raise ValidationError("stabilization_window must be >= 2")

    @property
    def angular_size(self) -> int:
        return 1 << self.angular_log2_size

    def refined(self) -> "QuadratureConfig":
        """One refinement step: double angular resolution, ``lambda -> sqrt(lambda)``."""
        return dataclasses.replace(
            self,
            angular_log2_size=self.angular_log2_size + 1,
            radial_ratio=self.radial_ratio ** 0.5,
            h_samples=2 * self.h_samples,
        )

    def with_overrides(self, overrides: dict[str, Any] | None) -> "QuadratureConfig":
        if not overrides:
            return self
        names = {f.name for f in dataclasses.fields(self)}
        unknown = set(overrides) - names
        if unknown:
            raise ValidationError(f"unknown config keys: {sorted(unknown)}")
        return dataclasses.replace(self, **overrides)

    def to_dict(self) -> dict[str, Any]:
        return dataclasses.asdict(self)
