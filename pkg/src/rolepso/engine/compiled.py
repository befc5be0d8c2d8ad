"""Adapter exposing the compiled kernels behind the engine interface."""

from __future__ import annotations

import numpy as np

from rolepso import roles
from rolepso.engine import _kernels
from rolepso.problems import functions

NAME = "compiled"

if tuple(_kernels.BASE_ORDER) != functions.BASE_ORDER:
    raise ImportError("compiled kernel was built against a different base registry")
if tuple(_kernels.ROLE_ORDER) != roles.ROLES:
    raise ImportError("compiled kernel was built against a different role registry")


def _check_noise(problem, noise, n, d):
    if problem.stochastic:
        if noise is None or noise.shape != (n * d,):
            raise ValueError(
                f"{problem.name} needs a ({n * d},) noise block, one weight "
                f"per coordinate per evaluation"
            )


def evaluate_positions(
    problem, positions: np.ndarray, noise: np.ndarray | None = None
) -> tuple[np.ndarray, int]:
    n, d = positions.shape
    _check_noise(problem, noise, n, d)
    fits = np.empty(n)
    bad = _kernels.evaluate_batch(
        positions,
        fits,
        functions.BASE_INDEX[problem.base],
        problem.shift,
        problem.rotation,
        noise,
        np.empty(d),
        np.empty(d),
    )
    return fits, bad


def run_sweep(
    problem,
    cfg,
    pos,
    vel,
    pb_pos,
    pb_fit,
    pw_pos,
    pw_fit,
    gb_pos,
    gb_fit,
    gw_pos,
    gw_fit,
    role_ids,
    uniforms,
    u_off,
    normals,
    z_off,
    noise,
) -> int:
    d = pos.shape[1]
    _check_noise(problem, noise, pos.shape[0], d)
    return _kernels.sweep(
        pos,
        vel,
        pb_pos,
        pb_fit,
        pw_pos,
        pw_fit,
        gb_pos,
        gb_fit,
        gw_pos,
        gw_fit,
        role_ids,
        uniforms,
        u_off,
        normals,
        z_off,
        cfg.omega,
        cfg.c1,
        cfg.c2,
        cfg.role_coefficient,
        cfg.lam,
        cfg.sigma,
        functions.BASE_INDEX[problem.base],
        problem.lower,
        problem.upper,
        problem.shift,
        problem.rotation,
        noise,
        np.empty(d),
        np.empty(d),
        np.empty(d),
    )
