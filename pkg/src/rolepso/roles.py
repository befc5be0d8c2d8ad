"""Particle roles and their velocity rules.

Every particle carries one of twelve roles.  A role decides which velocity
rule the particle follows and therefore how many random draws it consumes
per iteration.  The draw protocol is fixed so that runs are reproducible
and both execution engines (compiled and pure Python) agree:

* per particle, scalar multipliers come first (cognitive slot, then social
  slot, whichever the role uses), followed by the components of the random
  direction vector xi when the role has one;
* xi components are mapped from unit uniforms via ``2*u - 1``;
* the drifter's position noise is drawn from the standard-normal block and
  scaled by sigma at use time.
"""

from __future__ import annotations

import math

import numpy as np

ROLES: tuple[str, ...] = (
    "standard",
    "rebel",
    "rejector",
    "contrarian",
    "defeatist",
    "eschewer",
    "escapist",
    "anarchic",
    "amnesiac",
    "erratic",
    "wanderer",
    "drifter",
)

ROLE_IDS: dict[str, int] = {name: i for i, name in enumerate(ROLES)}

(
    STANDARD,
    REBEL,
    REJECTOR,
    CONTRARIAN,
    DEFEATIST,
    ESCHEWER,
    ESCAPIST,
    ANARCHIC,
    AMNESIAC,
    ERRATIC,
    WANDERER,
    DRIFTER,
) = range(12)

# Roles that use a direction-vector draw in the velocity rule.
_XI_ROLES = frozenset({ANARCHIC, AMNESIAC, ERRATIC, WANDERER})


def uniform_draw_count(role_id: int, dim: int) -> int:
    """Number of unit uniforms a particle of this role consumes per iteration."""
    if role_id == ERRATIC:
        return dim
    if role_id in (ANARCHIC, AMNESIAC):
        return 1 + dim
    if role_id == WANDERER:
        return 2 + dim
    return 2


def normal_draw_count(role_id: int, dim: int) -> int:
    """Number of standard normals a particle of this role consumes per iteration."""
    return dim if role_id == DRIFTER else 0


def round_half_up(value: float) -> int:
    return int(math.floor(value + 0.5))


def assign_roles(
    n: int, fraction: float, role: str, rng: np.random.Generator
) -> list[str]:
    """Tag ``round_half_up(fraction * n)`` particles with ``role``, rest standard.

    The tagged subset is drawn uniformly without replacement.  A zero-sized
    subset consumes no randomness, which keeps a variant at fraction 0 on
    the exact random stream of plain PSO.
    """
    if n < 1:
        raise ValueError("swarm must contain at least one particle")
    if not 0.0 <= fraction <= 1.0:
        raise ValueError(f"role fraction must lie in [0, 1], got {fraction}")
    if role not in ROLE_IDS:
        raise ValueError(f"unknown role {role!r}; expected one of {ROLES}")
    tags = ["standard"] * n
    k = round_half_up(fraction * n)
    if k > 0 and role != "standard":
        chosen = rng.choice(n, size=min(k, n), replace=False)
        for i in chosen:
            tags[i] = role
    return tags


def role_velocity(
    role_id: int,
    u: np.ndarray,
    x: np.ndarray,
    v: np.ndarray,
    pbest: np.ndarray,
    pworst: np.ndarray,
    gbest: np.ndarray,
    gworst: np.ndarray,
    omega: float,
    c1: float,
    c2: float,
    c_role: float,
    lam: float,
) -> np.ndarray:
    """New velocity from pre-drawn uniforms ``u`` (see module docstring).

    Pure function of its inputs; the engines and the single-particle API
    both route through it so the role arithmetic exists exactly once.
    """
    if role_id == STANDARD or role_id == DRIFTER:
        return omega * v + c1 * u[0] * (pbest - x) + c2 * u[1] * (gbest - x)
    if role_id == REBEL:
        return omega * v + c1 * u[0] * (pbest - x) + c_role * u[1] * (x - gbest)
    if role_id == REJECTOR:
        return omega * v + c_role * u[0] * (x - pbest) + c2 * u[1] * (gbest - x)
    if role_id == CONTRARIAN:
        return omega * v + c1 * u[0] * (pbest - x) + c_role * u[1] * (gworst - x)
    if role_id == DEFEATIST:
        return omega * v + c_role * u[0] * (pworst - x) + c2 * u[1] * (gbest - x)
    if role_id == ESCHEWER:
        return omega * v + c1 * u[0] * (pbest - x) + c_role * u[1] * (x - gworst)
    if role_id == ESCAPIST:
        return omega * v + c_role * u[0] * (x - pworst) + c2 * u[1] * (gbest - x)
    if role_id == ANARCHIC:
        xi = 2.0 * u[1:] - 1.0
        return omega * v + c1 * u[0] * (pbest - x) + lam * xi
    if role_id == AMNESIAC:
        xi = 2.0 * u[1:] - 1.0
        return omega * v + lam * xi + c2 * u[0] * (gbest - x)
    if role_id == ERRATIC:
        xi = 2.0 * u - 1.0
        return omega * v + lam * xi
    if role_id == WANDERER:
        xi = 2.0 * u[2:] - 1.0
        return (
            omega * v
            + c1 * u[0] * (pbest - x)
            + c2 * u[1] * (gbest - x)
            + lam * xi
        )
    raise ValueError(f"unknown role id {role_id}")


def draw_layout(role_ids: np.ndarray, dim: int) -> tuple[np.ndarray, np.ndarray]:
    """Per-particle offsets into the per-iteration uniform and normal blocks.

    Returns ``(u_off, z_off)`` of length ``n + 1``; particle ``i`` owns
    ``uniforms[u_off[i]:u_off[i+1]]`` and ``normals[z_off[i]:z_off[i+1]]``.
    """
    n = len(role_ids)
    u_off = np.zeros(n + 1, dtype=np.int64)
    z_off = np.zeros(n + 1, dtype=np.int64)
    for i, rid in enumerate(role_ids):
        u_off[i + 1] = u_off[i] + uniform_draw_count(int(rid), dim)
        z_off[i + 1] = z_off[i] + normal_draw_count(int(rid), dim)
    return u_off, z_off
