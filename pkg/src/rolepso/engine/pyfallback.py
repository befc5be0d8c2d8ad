"""Pure-numpy execution engine.

Implements the same sweep semantics as the compiled kernel: particles are
processed in index order and the global memories refresh immediately after
each evaluation, so later particles in the same iteration already see them.
"""

from __future__ import annotations

import math

import numpy as np

from rolepso import roles
from rolepso.problems import functions

NAME = "python"


def _check_noise(problem, noise, n, d):
    if problem.stochastic:
        if noise is None or noise.shape != (n * d,):
            raise ValueError(
                f"{problem.name} needs a ({n * d},) noise block, one weight "
                f"per coordinate per evaluation"
            )


def _evaluate_one(problem, x: np.ndarray, noise_row: np.ndarray | None) -> float:
    z = problem.transformed(x)
    if problem.stochastic:
        return functions.stochastic(z, noise_row)
    return functions.REFERENCE[problem.base](z)


def evaluate_positions(
    problem, positions: np.ndarray, noise: np.ndarray | None = None
) -> tuple[np.ndarray, int]:
    """Fitness of each row of ``positions``; returns (fits, bad_index).

    ``bad_index`` is the first particle whose fitness came back non-finite,
    or -1 when all values are usable.
    """
    n, d = positions.shape
    _check_noise(problem, noise, n, d)
    fits = np.empty(n)
    for i in range(n):
        row = None if noise is None else noise[i * d : (i + 1) * d]
        fits[i] = _evaluate_one(problem, positions[i], row)
        if not math.isfinite(fits[i]):
            return fits, i
    return fits, -1


def run_sweep(
    problem,
    cfg,
    pos: np.ndarray,
    vel: np.ndarray,
    pb_pos: np.ndarray,
    pb_fit: np.ndarray,
    pw_pos: np.ndarray,
    pw_fit: np.ndarray,
    gb_pos: np.ndarray,
    gb_fit: np.ndarray,
    gw_pos: np.ndarray,
    gw_fit: np.ndarray,
    role_ids: np.ndarray,
    uniforms: np.ndarray,
    u_off: np.ndarray,
    normals: np.ndarray,
    z_off: np.ndarray,
    noise: np.ndarray | None,
) -> int:
    """One iteration over all particles, in place; returns bad index or -1."""
    n, d = pos.shape
    _check_noise(problem, noise, n, d)
    for i in range(n):
        rid = int(role_ids[i])
        u = uniforms[u_off[i] : u_off[i + 1]]
        new_v = roles.role_velocity(
            rid,
            u,
            pos[i],
            vel[i],
            pb_pos[i],
            pw_pos[i],
            gb_pos,
            gw_pos,
            cfg.omega,
            cfg.c1,
            cfg.c2,
            cfg.role_coefficient,
            cfg.lam,
        )
        new_x = pos[i] + new_v
        if rid == roles.DRIFTER:
            new_x = new_x + cfg.sigma * normals[z_off[i] : z_off[i + 1]]
        np.clip(new_x, problem.lower, problem.upper, out=new_x)
        row = None if noise is None else noise[i * d : (i + 1) * d]
        fit = _evaluate_one(problem, new_x, row)
        pos[i] = new_x
        vel[i] = new_v
        if not math.isfinite(fit):
            return i
        if fit < pb_fit[i]:
            pb_pos[i] = new_x
            pb_fit[i] = fit
        if fit > pw_fit[i]:
            pw_pos[i] = new_x
            pw_fit[i] = fit
        if fit < gb_fit[0]:
            gb_pos[:] = new_x
            gb_fit[0] = fit
        if fit > gw_fit[0]:
            gw_pos[:] = new_x
            gw_fit[0] = fit
    return -1
