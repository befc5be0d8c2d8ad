"""Reference implementations of the base test functions.

Each evaluator maps an already shifted/rotated point ``z`` (1-d float array)
to a scalar.  These numpy forms are the semantic reference; the compiled
engine carries loop translations of the same formulas and is cross-checked
against this module in the test suite.  Formula provenance and the exact
generalization used for each catalog name are documented in FUNCTIONS.md.
"""

from __future__ import annotations

import numpy as np

TWO_PI = 2.0 * np.pi

# Weierstrass series truncation (standard CEC settings).
WEIERSTRASS_A = 0.5
WEIERSTRASS_B = 3.0
WEIERSTRASS_KMAX = 20

# Schwefel sine-surface constants.
SCHWEFEL_OFFSET = 420.9687462275036
SCHWEFEL_BIAS = 418.9828872724338


def sphere(z: np.ndarray) -> float:
    return float(np.dot(z, z))


def rastrigin(z: np.ndarray) -> float:
    return float(10.0 * z.size + np.sum(z * z - 10.0 * np.cos(TWO_PI * z)))


def ackley(z: np.ndarray) -> float:
    d = z.size
    return float(
        -20.0 * np.exp(-0.2 * np.sqrt(np.dot(z, z) / d))
        - np.exp(np.sum(np.cos(TWO_PI * z)) / d)
        + 20.0
        + np.e
    )


def alpine1(z: np.ndarray) -> float:
    return float(np.sum(np.abs(z * np.sin(z) + 0.1 * z)))


def crowned_cross(z: np.ndarray) -> float:
    u, v = z[:-1], z[1:]
    r = np.sqrt(u * u + v * v)
    t = np.abs(np.sin(u) * np.sin(v)) * np.exp(np.abs(100.0 - r / np.pi))
    return float(np.sum(1e-4 * (t + 1.0) ** 0.1))


def egg_holder(z: np.ndarray) -> float:
    u, v = z[:-1], z[1:]
    return float(
        np.sum(
            -(v + 47.0) * np.sin(np.sqrt(np.abs(v + 0.5 * u + 47.0)))
            - u * np.sin(np.sqrt(np.abs(u - (v + 47.0))))
        )
    )


def _schaffer6_term(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    s = u * u + v * v
    return 0.5 + (np.sin(np.sqrt(s)) ** 2 - 0.5) / (1.0 + 0.001 * s) ** 2


def expanded_schaffer6(z: np.ndarray) -> float:
    return float(np.sum(_schaffer6_term(z, np.roll(z, -1))))


def schaffer1(z: np.ndarray) -> float:
    u, v = z[:-1], z[1:]
    s = u * u + v * v
    return float(np.sum(0.5 + (np.sin(s * s) ** 2 - 0.5) / (1.0 + 0.001 * s) ** 2))


def schaffer2(z: np.ndarray) -> float:
    u, v = z[:-1], z[1:]
    s = u * u + v * v
    return float(
        np.sum(0.5 + (np.sin(u * u - v * v) ** 2 - 0.5) / (1.0 + 0.001 * s) ** 2)
    )


def schaffer3(z: np.ndarray) -> float:
    u, v = z[:-1], z[1:]
    s = u * u + v * v
    return float(
        np.sum(
            0.5
            + (np.sin(np.cos(np.abs(u * u - v * v))) ** 2 - 0.5)
            / (1.0 + 0.001 * s) ** 2
        )
    )


def schaffer4(z: np.ndarray) -> float:
    u, v = z[:-1], z[1:]
    s = u * u + v * v
    return float(
        np.sum(
            0.5
            + (np.cos(np.sin(np.abs(u * u - v * v))) ** 2 - 0.5)
            / (1.0 + 0.001 * s) ** 2
        )
    )


def schmidt_vetters(z: np.ndarray) -> float:
    # Windowed over consecutive coordinate triples; the negated exponent and
    # the tiny denominator guard keep the classic 3-d form total on the box.
    a, b, c = z[:-2], z[1:-1], z[2:]
    ratio = (a + b) / (b + 1e-16)
    return float(
        np.sum(
            1.0 / (1.0 + (a - b) ** 2)
            + np.sin(0.5 * (np.pi * b + c))
            + np.exp(-((ratio - 2.0) ** 2))
        )
    )


def lennard_jones(z: np.ndarray) -> float:
    # d = 3 * atoms; 12-6 pair potential normalized to a -1 pair minimum,
    # with a soft guard against coincident atoms.
    atoms = z.size // 3
    xyz = z.reshape(atoms, 3)
    total = 0.0
    for i in range(atoms - 1):
        diff = xyz[i + 1 :] - xyz[i]
        r2 = np.sum(diff * diff, axis=1)
        s = 1.0 / (r2 * r2 * r2 + 1e-12)
        total += float(np.sum(s * s - 2.0 * s))
    return total


def michalewicz(z: np.ndarray) -> float:
    i = np.arange(1, z.size + 1)
    return float(-np.sum(np.sin(z) * np.sin(i * z * z / np.pi) ** 20))


def mishra3(z: np.ndarray) -> float:
    u, v = z[:-1], z[1:]
    s = u * u + v * v
    return float(
        np.sum(np.sqrt(np.abs(np.cos(np.sqrt(s)))) + 0.01 * (u + v))
    )


def mishra4(z: np.ndarray) -> float:
    u, v = z[:-1], z[1:]
    s = u * u + v * v
    return float(
        np.sum(np.sqrt(np.abs(np.sin(np.sqrt(s)))) + 0.01 * (u + v))
    )


def modified_rosenbrock2(z: np.ndarray) -> float:
    u, v = z[:-1], z[1:]
    return float(
        np.sum(
            74.0
            + 100.0 * (v - u * u) ** 2
            + (1.0 - u) ** 2
            - 400.0 * np.exp(-((u + 1.0) ** 2 + (v + 1.0) ** 2) / 0.1)
        )
    )


def bent_cigar(z: np.ndarray) -> float:
    return float(z[0] * z[0] + 1e6 * np.dot(z[1:], z[1:]))


def discus(z: np.ndarray) -> float:
    return float(1e6 * z[0] * z[0] + np.dot(z[1:], z[1:]))


def elliptic(z: np.ndarray) -> float:
    d = z.size
    weights = np.power(10.0, 6.0 * np.arange(d) / (d - 1))
    return float(np.sum(weights * z * z))


def salomon(z: np.ndarray) -> float:
    r = float(np.sqrt(np.dot(z, z)))
    return 1.0 - np.cos(TWO_PI * r) + 0.1 * r


def schwefel220(z: np.ndarray) -> float:
    return float(np.sum(np.abs(z)))


def schwefel236(z: np.ndarray) -> float:
    u, v = z[:-1], z[1:]
    return float(np.sum(-u * v * (72.0 - 2.0 * u - 2.0 * v)))


def schwefel206(z: np.ndarray) -> float:
    u, v = z[:-1], z[1:]
    return float(
        np.sum(
            np.maximum(
                np.abs(u + 2.0 * v - 7.0), np.abs(2.0 * u + v - 5.0)
            )
        )
    )


def schwefel_sine(z: np.ndarray) -> float:
    # Origin-centered sine surface with the usual out-of-range correction so
    # the global minimum stays at z = 0 even when |z + offset| > 500.
    d = z.size
    y = z + SCHWEFEL_OFFSET
    total = 0.0
    for yi in y:
        if yi > 500.0:
            w = 500.0 - np.fmod(yi, 500.0)
            total += w * np.sin(np.sqrt(np.abs(w))) - (yi - 500.0) ** 2 / (10000.0 * d)
        elif yi < -500.0:
            w = np.fmod(np.abs(yi), 500.0) - 500.0
            total += w * np.sin(np.sqrt(np.abs(w))) - (yi + 500.0) ** 2 / (10000.0 * d)
        else:
            total += yi * np.sin(np.sqrt(np.abs(yi)))
    return float(SCHWEFEL_BIAS * d - total)


def schaffer_f7(z: np.ndarray) -> float:
    u, v = z[:-1], z[1:]
    s = np.sqrt(u * u + v * v)
    root = np.sqrt(s)
    acc = np.sum(root + root * np.sin(50.0 * s**0.2) ** 2)
    return float((acc / (z.size - 1)) ** 2)


def hgbat(z: np.ndarray) -> float:
    u = z - 1.0
    r2 = float(np.dot(u, u))
    s = float(np.sum(u))
    return abs(r2 * r2 - s * s) ** 0.5 + (0.5 * r2 + s) / z.size + 0.5


def happycat(z: np.ndarray) -> float:
    u = z - 1.0
    r2 = float(np.dot(u, u))
    s = float(np.sum(u))
    return abs(r2 - z.size) ** 0.25 + (0.5 * r2 + s) / z.size + 0.5


def weierstrass(z: np.ndarray) -> float:
    k = np.arange(WEIERSTRASS_KMAX + 1)
    ak = WEIERSTRASS_A**k
    bk = WEIERSTRASS_B**k
    inner = np.sum(ak * np.cos(TWO_PI * np.outer(z + 0.5, bk)), axis=1)
    return float(np.sum(inner) - z.size * np.sum(ak * np.cos(np.pi * bk)))


def shubert3(z: np.ndarray) -> float:
    j = np.arange(1, 6)
    return float(np.sum(j * np.sin(np.outer(z, j + 1) + j)))


def shubert4(z: np.ndarray) -> float:
    j = np.arange(1, 6)
    return float(np.sum(j * np.cos(np.outer(z, j + 1) + j)))


def sine_envelope(z: np.ndarray) -> float:
    u, v = z[:-1], z[1:]
    s = u * u + v * v
    return float(
        np.sum((np.sin(np.sqrt(s)) ** 2 - 0.5) / (1.0 + 0.001 * s) ** 2 + 0.5)
    )


def stochastic(z: np.ndarray, weights: np.ndarray) -> float:
    targets = 1.0 / np.arange(1, z.size + 1)
    return float(np.sum(weights * np.abs(z - targets)))


def stretched_v(z: np.ndarray) -> float:
    u, v = z[:-1], z[1:]
    t = u * u + v * v
    return float(np.sum(t**0.25 * (np.sin(50.0 * t**0.1) ** 2 + 0.1)))


def styblinski_tang(z: np.ndarray) -> float:
    return float(0.5 * np.sum(z**4 - 16.0 * z * z + 5.0 * z))


# Registry order is frozen: the compiled engine dispatches on the index and
# asserts the same order at import.
BASE_ORDER: tuple[str, ...] = (
    "sphere",
    "rastrigin",
    "ackley",
    "alpine1",
    "crowned_cross",
    "egg_holder",
    "expanded_schaffer6",
    "schaffer1",
    "schaffer2",
    "schaffer3",
    "schaffer4",
    "schmidt_vetters",
    "lennard_jones",
    "michalewicz",
    "mishra3",
    "mishra4",
    "modified_rosenbrock2",
    "bent_cigar",
    "discus",
    "elliptic",
    "salomon",
    "schwefel220",
    "schwefel236",
    "schwefel206",
    "schwefel_sine",
    "schaffer_f7",
    "hgbat",
    "happycat",
    "weierstrass",
    "shubert3",
    "shubert4",
    "sine_envelope",
    "stochastic",
    "stretched_v",
    "styblinski_tang",
)

BASE_INDEX: dict[str, int] = {name: i for i, name in enumerate(BASE_ORDER)}

REFERENCE = {name: globals()[name] for name in BASE_ORDER}
