"""Algorithm variants and their configuration."""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass

from rolepso import roles

# Canonical algorithm names in registry order, mapped to the role their
# designated subswarm plays.
ALGORITHMS: dict[str, str] = {
    "PSO": "standard",
    "RebelPSO": "rebel",
    "RejectorPSO": "rejector",
    "ContrarianPSO": "contrarian",
    "DefeatistPSO": "defeatist",
    "EschewerPSO": "eschewer",
    "EscapistPSO": "escapist",
    "AnarchicPSO": "anarchic",
    "AmnesiacPSO": "amnesiac",
    "ErraticPSO": "erratic",
    "WandererPSO": "wanderer",
    "DrifterPSO": "drifter",
}

VARIANT_NAMES: dict[str, str] = {role: name for name, role in ALGORITHMS.items()}

# Domain-relative default for both noise scales, chosen by a coarse sweep on
# the tuning functions (Sphere, Rastrigin, Ackley) at d=100 with the default
# budget; see CONFIG.md.
DEFAULT_NOISE_FRACTION = 0.001


@dataclass(frozen=True)
class AlgorithmConfig:
    """Full coefficient set for one algorithm variant.

    ``lam`` scales the random direction vector of the uninformed roles and
    ``sigma`` is the drifter's position-noise standard deviation; both may
    be left as ``None`` to be resolved against the problem's domain width
    (0.001 x width each, calibrated on the tuning functions at d=100 with
    the default budget) when a run starts.
    """

    variant: str = "standard"
    omega: float = 0.7298
    c1: float = 1.49618
    c2: float = 1.49618
    role_coefficient: float = 1.49618
    role_fraction: float = 0.2
    lam: float | None = None
    sigma: float | None = None
    swarm_size: int = 100
    max_evaluations: int = 25_000
    name: str = ""

    def __post_init__(self) -> None:
        if self.variant not in roles.ROLE_IDS:
            raise ValueError(
                f"unknown variant {self.variant!r}; expected one of {roles.ROLES}"
            )
        for field in ("omega", "c1", "c2", "role_coefficient"):
            value = getattr(self, field)
            if not math.isfinite(value):
                raise ValueError(f"{field} must be finite, got {value}")
        if not 0.0 <= self.role_fraction <= 1.0:
            raise ValueError(
                f"role_fraction must lie in [0, 1], got {self.role_fraction}"
            )
        for field in ("lam", "sigma"):
            value = getattr(self, field)
            if value is not None and (not math.isfinite(value) or value < 0.0):
                raise ValueError(f"{field} must be finite and >= 0, got {value}")
        if self.swarm_size < 2:
            raise ValueError("swarm_size must be at least 2")
        if self.max_evaluations < self.swarm_size:
            raise ValueError("max_evaluations must cover at least one swarm sweep")
        if not self.name:
            object.__setattr__(self, "name", VARIANT_NAMES[self.variant])

    @property
    def effective_fraction(self) -> float:
        """Subswarm fraction actually applied; plain PSO has no subswarm."""
        return 0.0 if self.variant == "standard" else self.role_fraction

    def resolved_for(self, problem) -> "AlgorithmConfig":
        """Fill domain-relative defaults for ``lam`` and ``sigma``."""
        width = float(problem.mean_width)
        lam = DEFAULT_NOISE_FRACTION * width if self.lam is None else self.lam
        sigma = DEFAULT_NOISE_FRACTION * width if self.sigma is None else self.sigma
        if lam == self.lam and sigma == self.sigma:
            return self
        return dataclasses.replace(self, lam=lam, sigma=sigma)


def default_config(algorithm: str, **overrides) -> AlgorithmConfig:
    """Config for a canonical algorithm name (``PSO``, ``WandererPSO``, ...)."""
    if algorithm in ALGORITHMS:
        return AlgorithmConfig(variant=ALGORITHMS[algorithm], name=algorithm, **overrides)
    if algorithm in roles.ROLE_IDS:
        return AlgorithmConfig(variant=algorithm, **overrides)
    raise KeyError(
        f"unknown algorithm {algorithm!r}; expected one of {sorted(ALGORITHMS)}"
    )
