"""Seeded shift vectors and random orthogonal matrices."""

from __future__ import annotations

import numpy as np


def random_orthogonal(dimension: int, rng: np.random.Generator) -> np.ndarray:
    """Random orthogonal matrix via QR of a standard-normal matrix.

    The triangular factor's diagonal signs are folded into Q, which makes
    the factorization (and therefore the matrix) unique for a given draw.
    """
    if dimension < 2:
        raise ValueError("rotation needs dimension >= 2")
    a = rng.standard_normal((dimension, dimension))
    q, r = np.linalg.qr(a)
    q = q * np.sign(np.diag(r))
    return np.ascontiguousarray(q)


def random_shift(
    lower: np.ndarray, upper: np.ndarray, rng: np.random.Generator
) -> np.ndarray:
    """Shift drawn uniformly from the central 80% of the box."""
    width = upper - lower
    return lower + width * (0.1 + 0.8 * rng.random(lower.size))
