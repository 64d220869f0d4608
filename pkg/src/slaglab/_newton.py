"""Damped Newton iteration in log coordinates, shared by the neck inverters."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import NewtonError


@dataclass
class InversionResult:
    a: np.ndarray
    residual_norm: float
    iterations: int
    converged: bool
    trace: list = field(default_factory=list)


def damped_newton_log(residual_fn, a0, tol=1e-9, max_iter=30, fd_step=1e-6,
                      max_halvings=25):
    """Solve residual_fn(a) = 0 for positive a by Newton steps on log(a).

    The Jacobian is forward-difference in log coordinates; steps are halved
    while the residual norm fails to decrease.  Raises NewtonError with the
    best iterate when max_iter is exhausted.
    """
    x = np.log(np.asarray(a0, dtype=float))
    r = np.asarray(residual_fn(np.exp(x)), dtype=float)
    rnorm = float(np.linalg.norm(r))
    trace = [rnorm]
    best_x, best_norm = x.copy(), rnorm

    for it in range(1, max_iter + 1):
        if rnorm <= tol:
            return InversionResult(np.exp(x), rnorm, it - 1, True, trace)
        n = x.size
        jac = np.empty((r.size, n))
        for j in range(n):
            xp = x.copy()
            xp[j] += fd_step
            jac[:, j] = (np.asarray(residual_fn(np.exp(xp))) - r) / fd_step
        try:
            step = np.linalg.lstsq(jac, -r, rcond=None)[0]
        except np.linalg.LinAlgError as exc:
            raise NewtonError("singular Jacobian", np.exp(best_x), best_norm, it) from exc
        # keep steps sane in log space
        step_norm = float(np.linalg.norm(step))
        if step_norm > 5.0:
            step *= 5.0 / step_norm

        scale = 1.0
        for _ in range(max_halvings):
            x_new = x + scale * step
            r_new = np.asarray(residual_fn(np.exp(x_new)), dtype=float)
            rnorm_new = float(np.linalg.norm(r_new))
            if rnorm_new < rnorm:
                break
            scale *= 0.5
        else:
            raise NewtonError(
                f"line search stalled at residual {rnorm:.3e}",
                np.exp(best_x), best_norm, it,
            )
        x, r, rnorm = x_new, r_new, rnorm_new
        trace.append(rnorm)
        if rnorm < best_norm:
            best_x, best_norm = x.copy(), rnorm

    if rnorm <= tol:
        return InversionResult(np.exp(x), rnorm, max_iter, True, trace)
    raise NewtonError(
        f"no convergence in {max_iter} iterations; best residual {best_norm:.3e}",
        np.exp(best_x), best_norm, max_iter,
    )
