"""The scalable benchmark catalog: 32 suite functions plus 3 tuning functions.

Shifted and rotated instances are generated from the problem seed instead of
relying on external data files, so the same (name, dimension, seed) triple
always reconstructs the identical instance.  Formulas, bounds, and optima
per name are documented in FUNCTIONS.md.
"""

from __future__ import annotations

import json
import zlib
from dataclasses import dataclass
from typing import Callable

import numpy as np

from rolepso.problems import functions, rotations


class UnknownProblemError(LookupError):
    """Raised for a problem name not present in the catalog."""


# Frozen constants for optima without a closed form, derived once by
# brute-force grid search plus local refinement of the one-dimensional
# component (see FUNCTIONS.md and the oracle tests).
STYBLINSKI_TANG_XSTAR = -2.903534018185960
STYBLINSKI_TANG_MIN = -39.166165703771426
SHUBERT3_XSTAR = -7.39728499650848
SHUBERT3_MIN = -14.837950025710592
SHUBERT4_XSTAR = -7.708313734642032
SHUBERT4_MIN = -12.870885497725688

OptimumFn = Callable[[int], tuple[np.ndarray, float]]


def _at_zero(value: float = 0.0) -> OptimumFn:
    return lambda d: (np.zeros(d), value)


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    base: str
    lower: float
    upper: float
    shifted: bool = False
    rotated: bool = False
    tuning_only: bool = False
    min_dimension: int = 2
    dimension_multiple: int = 1
    optimum: OptimumFn | None = None


_CATALOG_ENTRIES: tuple[CatalogEntry, ...] = (
    CatalogEntry("Alpine N1", "alpine1", -10.0, 10.0, optimum=_at_zero()),
    CatalogEntry(
        "Crowned Cross", "crowned_cross", -10.0, 10.0,
        optimum=lambda d: (np.zeros(d), 1e-4 * (d - 1)),
    ),
    CatalogEntry("Egg-Holder", "egg_holder", -512.0, 512.0),
    CatalogEntry(
        "Expanded Shaffer", "expanded_schaffer6", -100.0, 100.0, optimum=_at_zero()
    ),
    CatalogEntry(
        "Generalized Schaffer N1", "schaffer1", -100.0, 100.0, optimum=_at_zero()
    ),
    CatalogEntry(
        "Generalized Schaffer N2", "schaffer2", -100.0, 100.0, optimum=_at_zero()
    ),
    CatalogEntry("Generalized Schaffer N3", "schaffer3", -100.0, 100.0),
    CatalogEntry("Generalized Schaffer N4", "schaffer4", -100.0, 100.0),
    CatalogEntry(
        "Generalized Schmidt-Vetters", "schmidt_vetters", 0.0, 10.0, min_dimension=3
    ),
    CatalogEntry(
        "Lennard-Jones Minimum Energy Cluster", "lennard_jones", -3.0, 3.0,
        min_dimension=6, dimension_multiple=3,
    ),
    CatalogEntry("Michalewicz", "michalewicz", 0.0, float(np.pi)),
    CatalogEntry("Mishra N3", "mishra3", -10.0, 10.0),
    CatalogEntry("Mishra N4", "mishra4", -10.0, 10.0),
    CatalogEntry("Modified Rosenbrock No.02", "modified_rosenbrock2", -2.0, 2.0),
    CatalogEntry(
        "Rotated Bent Cigar", "bent_cigar", -100.0, 100.0,
        rotated=True, optimum=_at_zero(),
    ),
    CatalogEntry(
        "Rotated Discus", "discus", -100.0, 100.0, rotated=True, optimum=_at_zero()
    ),
    CatalogEntry(
        "Rotated High Conditioned Elliptic", "elliptic", -100.0, 100.0,
        rotated=True, optimum=_at_zero(),
    ),
    CatalogEntry("Salomon", "salomon", -100.0, 100.0, optimum=_at_zero()),
    CatalogEntry("Schwefel N20", "schwefel220", -100.0, 100.0, optimum=_at_zero()),
    CatalogEntry(
        "Schwefel N36", "schwefel236", 0.0, 500.0,
        optimum=lambda d: (np.full(d, 12.0), -3456.0 * (d - 1)),
    ),
    CatalogEntry("Schwefel N6", "schwefel206", -100.0, 100.0),
    CatalogEntry(
        "Shifted Schwefel", "schwefel_sine", -500.0, 500.0,
        shifted=True, optimum=_at_zero(),
    ),
    CatalogEntry(
        "Shifted and Rotated HGBat", "hgbat", -5.0, 5.0,
        shifted=True, rotated=True, optimum=_at_zero(),
    ),
    CatalogEntry(
        "Shifted and Rotated HappyCat", "happycat", -5.0, 5.0,
        shifted=True, rotated=True, optimum=_at_zero(),
    ),
    CatalogEntry(
        "Shifted and Rotated Schaffer F7", "schaffer_f7", -100.0, 100.0,
        shifted=True, rotated=True, optimum=_at_zero(),
    ),
    CatalogEntry(
        "Shifted and Rotated Weierstrass", "weierstrass", -0.5, 0.5,
        shifted=True, rotated=True, optimum=_at_zero(),
    ),
    CatalogEntry(
        "Shubert N3", "shubert3", -10.0, 10.0,
        optimum=lambda d: (np.full(d, SHUBERT3_XSTAR), SHUBERT3_MIN * d),
    ),
    CatalogEntry(
        "Shubert N4", "shubert4", -10.0, 10.0,
        optimum=lambda d: (np.full(d, SHUBERT4_XSTAR), SHUBERT4_MIN * d),
    ),
    CatalogEntry("SineEnvelope", "sine_envelope", -100.0, 100.0, optimum=_at_zero()),
    CatalogEntry(
        "Stochastic", "stochastic", -5.0, 5.0,
        optimum=lambda d: (1.0 / np.arange(1, d + 1), 0.0),
    ),
    CatalogEntry("StretchedV", "stretched_v", -10.0, 10.0, optimum=_at_zero()),
    CatalogEntry(
        "Styblinski-Tang", "styblinski_tang", -5.0, 5.0,
        optimum=lambda d: (np.full(d, STYBLINSKI_TANG_XSTAR), STYBLINSKI_TANG_MIN * d),
    ),
    CatalogEntry("Sphere", "sphere", -5.12, 5.12, tuning_only=True, optimum=_at_zero()),
    CatalogEntry(
        "Rastrigin", "rastrigin", -5.12, 5.12, tuning_only=True, optimum=_at_zero()
    ),
    CatalogEntry(
        "Ackley", "ackley", -32.768, 32.768, tuning_only=True, optimum=_at_zero()
    ),
)

CATALOG: dict[str, CatalogEntry] = {e.name: e for e in _CATALOG_ENTRIES}

TUNING_ONLY: frozenset[str] = frozenset(
    e.name for e in _CATALOG_ENTRIES if e.tuning_only
)


def list_problems() -> list[str]:
    """All catalog names; the final three are the tuning-only functions."""
    return [e.name for e in _CATALOG_ENTRIES]


def is_tuning_only(name: str) -> bool:
    return name in TUNING_ONLY


@dataclass(frozen=True, eq=False)
class BenchmarkProblem:
    """One concrete problem instance, immutable after construction."""

    name: str
    dimension: int
    seed: int
    base: str
    lower: np.ndarray
    upper: np.ndarray
    shift: np.ndarray | None = None
    rotation: np.ndarray | None = None
    noise_seed: int | None = None

    @property
    def stochastic(self) -> bool:
        return self.base == "stochastic"

    @property
    def mean_width(self) -> float:
        return float(np.mean(self.upper - self.lower))

    def transformed(self, x: np.ndarray) -> np.ndarray:
        """Map a search-space point to the base function's frame."""
        z = x if self.shift is None else x - self.shift
        if self.rotation is not None:
            z = self.rotation @ z
        return z

    def evaluate(self, x: np.ndarray) -> float:
        """Reference evaluation; deterministic for every base function.

        The Stochastic function draws its per-evaluation weights from a
        generator freshly seeded with the instance's noise seed, so this
        entry point stays a pure function of (instance, x).
        """
        x = np.asarray(x, dtype=np.float64)
        if x.shape != (self.dimension,):
            raise ValueError(
                f"{self.name} expects a vector of length {self.dimension}, "
                f"got shape {x.shape}"
            )
        z = self.transformed(x)
        if self.stochastic:
            weights = np.random.default_rng(self.noise_seed).random(self.dimension)
            return functions.stochastic(z, weights)
        return functions.REFERENCE[self.base](z)

    def descriptor(self) -> dict:
        """JSON-friendly descriptor; shift/rotation regenerate from the seed."""
        return {
            "name": self.name,
            "dimension": self.dimension,
            "seed": self.seed,
            "bounds": [float(self.lower[0]), float(self.upper[0])],
        }

    def to_json(self) -> str:
        return json.dumps(self.descriptor())


def _instance_rng(name: str, dimension: int, seed: int) -> np.random.Generator:
    # Fold the name and dimension into the seed so instances that share a
    # user seed do not share transforms; negative seeds wrap to uint64.
    entropy = [seed & 0xFFFFFFFFFFFFFFFF, dimension, zlib.crc32(name.encode("utf-8"))]
    return np.random.default_rng(np.random.SeedSequence(entropy))


def make_problem(name: str, dimension: int, seed: int = 0) -> BenchmarkProblem:
    """Build the deterministic instance for (name, dimension, seed)."""
    entry = CATALOG.get(name)
    if entry is None:
        raise UnknownProblemError(
            f"unknown problem {name!r}; valid names: {', '.join(list_problems())}"
        )
    if dimension < max(2, entry.min_dimension):
        raise ValueError(
            f"{name} requires dimension >= {max(2, entry.min_dimension)}"
        )
    if dimension % entry.dimension_multiple != 0:
        raise ValueError(
            f"{name} requires the dimension to be a multiple of "
            f"{entry.dimension_multiple}, got {dimension}"
        )
    lower = np.full(dimension, entry.lower)
    upper = np.full(dimension, entry.upper)
    rng = _instance_rng(name, dimension, seed)
    shift = rotations.random_shift(lower, upper, rng) if entry.shifted else None
    rotation = rotations.random_orthogonal(dimension, rng) if entry.rotated else None
    noise_seed = int(rng.integers(2**63)) if entry.base == "stochastic" else None
    for arr in (lower, upper, shift, rotation):
        if arr is not None:
            arr.setflags(write=False)
    return BenchmarkProblem(
        name=name,
        dimension=dimension,
        seed=seed,
        base=entry.base,
        lower=lower,
        upper=upper,
        shift=shift,
        rotation=rotation,
        noise_seed=noise_seed,
    )


def problem_from_descriptor(descriptor: dict | str) -> BenchmarkProblem:
    if isinstance(descriptor, str):
        descriptor = json.loads(descriptor)
    problem = make_problem(
        descriptor["name"], int(descriptor["dimension"]), int(descriptor["seed"])
    )
    bounds = descriptor.get("bounds")
    if bounds is not None and (
        float(bounds[0]) != problem.lower[0] or float(bounds[1]) != problem.upper[0]
    ):
        raise ValueError(
            f"descriptor bounds {bounds} disagree with the catalog bounds "
            f"[{problem.lower[0]}, {problem.upper[0]}] for {problem.name}"
        )
    return problem


@dataclass(frozen=True)
class OptimumInfo:
    position: np.ndarray | None = None
    value: float | None = None


def known_optimum(
    problem_or_name: BenchmarkProblem | str, dimension: int | None = None
) -> OptimumInfo:
    """Documented optimum where the literature defines one, else empty.

    Shifted instances have seed-dependent optima, so passing the instance
    itself resolves the position; passing just the name of a shifted
    problem yields the optimal value without a position.
    """
    if isinstance(problem_or_name, BenchmarkProblem):
        problem = problem_or_name
        name, dimension = problem.name, problem.dimension
    else:
        problem = None
        name = problem_or_name
        if dimension is None:
            raise ValueError("dimension is required when passing a name")
    entry = CATALOG.get(name)
    if entry is None:
        raise UnknownProblemError(
            f"unknown problem {name!r}; valid names: {', '.join(list_problems())}"
        )
    if entry.optimum is None:
        return OptimumInfo()
    z_star, value = entry.optimum(dimension)
    if entry.shifted:
        if problem is None or problem.shift is None:
            return OptimumInfo(position=None, value=value)
        # Catalog invariant: every shifted entry has its base optimum at the
        # origin, so the optimum sits exactly at the shift point.
        assert not np.any(z_star)
        return OptimumInfo(position=problem.shift.copy(), value=value)
    return OptimumInfo(position=z_star, value=value)
