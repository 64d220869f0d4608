"""Lagrangian graphs over R^m: residual operators and the inversion transform.

The graph of df over a domain in R^m is special Lagrangian exactly when

    Im det_C(I + i Hess f) = 0,

and is an expander soliton (H = alpha F_perp) exactly when

    arg det_C(I + i Hess f) = alpha (2 f - sum_j x_j df/dx_j) + c.

Linearizing the expander equation at f = 0 (c = 0) gives

    sum_j d^2 f/dx_j^2 + alpha (sum_j x_j df/dx_j - 2 f) = 0,

whose residual operator is exposed separately for the asymptotic-mode tests.

The inversion transform conjugates decaying fields on an outer annulus with
fields on a punctured ball:  F(y) = s^{2-m} f(y/s^2), s = |y|, an involution
on sample points.  Summing its Hessian identity over the diagonal yields

    sum_i d^2 f/dx_i^2 (y/s^2) = s^{m+2} sum_i d^2 F/dy_i^2 (y),

the Laplacian identity verified by `inversion_laplacian_pair`.

Complex determinants are evaluated through an LU factorization, accumulating
log-magnitude and phase from the pivots so large Hessians cannot overflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy.linalg import lu_factor

from .errors import BranchCutError, DimensionMismatchError

FD_STEP_SCALE = 1e-4
BRANCH_CUT_TOL = 1e-6


@dataclass
class ScalarField:
    """A smooth function R^m -> R with derivative access up to order 2+.

    Analytic derivative callables are used when supplied; otherwise central
    finite differences with step h = 1e-4 (1 + |x|): fourth-order stencils
    for gradients and pure second derivatives, second-order cross stencils
    for mixed Hessian entries.  Error model: O(h^4 f^(5)) + O(eps/h) for
    first derivatives, O(h^4 f^(6)) + O(eps/h^2) for pure second derivatives,
    O(h^2 f^(4)) for mixed ones.
    """

    func: Callable[[np.ndarray], float]
    dim: int
    grad: Optional[Callable[[np.ndarray], np.ndarray]] = None
    hess: Optional[Callable[[np.ndarray], np.ndarray]] = None
    step_scale: float = FD_STEP_SCALE

    def _fd_step(self, x) -> float:
        return self.step_scale * (1.0 + float(np.linalg.norm(x)))

    def value(self, x) -> float:
        return float(self.func(np.asarray(x, dtype=float)))

    def __call__(self, x) -> float:
        return self.value(x)

    def gradient(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape[0] != self.dim:
            raise DimensionMismatchError("point has wrong dimension")
        if self.grad is not None:
            return np.asarray(self.grad(x), dtype=float)
        h = self._fd_step(x)
        g = np.empty(self.dim)
        for i in range(self.dim):
            e = np.zeros(self.dim)
            e[i] = 1.0
            g[i] = (
                -self.value(x + 2 * h * e)
                + 8.0 * self.value(x + h * e)
                - 8.0 * self.value(x - h * e)
                + self.value(x - 2 * h * e)
            ) / (12.0 * h)
        return g

    def hessian(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape[0] != self.dim:
            raise DimensionMismatchError("point has wrong dimension")
        if self.hess is not None:
            return np.asarray(self.hess(x), dtype=float)
        h = self._fd_step(x)
        m = self.dim
        out = np.empty((m, m))
        f0 = self.value(x)
        for i in range(m):
            e = np.zeros(m)
            e[i] = 1.0
            out[i, i] = (
                -self.value(x + 2 * h * e)
                + 16.0 * self.value(x + h * e)
                - 30.0 * f0
                + 16.0 * self.value(x - h * e)
                - self.value(x - 2 * h * e)
            ) / (12.0 * h * h)
        for i in range(m):
            for j in range(i + 1, m):
                ei = np.zeros(m)
                ej = np.zeros(m)
                ei[i] = 1.0
                ej[j] = 1.0
                val = (
                    self.value(x + h * ei + h * ej)
                    - self.value(x + h * ei - h * ej)
                    - self.value(x - h * ei + h * ej)
                    + self.value(x - h * ei - h * ej)
                ) / (4.0 * h * h)
                out[i, j] = out[j, i] = val
        return out

    def laplacian(self, x) -> float:
        return float(np.trace(self.hessian(x)))


def polynomial_field(coeffs: dict, dim: int) -> ScalarField:
    """ScalarField for sum_beta c_beta x^beta with analytic derivatives.

    coeffs maps multi-index tuples (length dim) to coefficients.
    """
    items = [(np.array(beta, dtype=int), float(c)) for beta, c in coeffs.items()]
    for beta, _ in items:
        if beta.shape[0] != dim:
            raise DimensionMismatchError("multi-index length != dim")

    def value(x):
        x = np.asarray(x, dtype=float)
        return float(sum(c * np.prod(x ** beta) for beta, c in items))

    def grad(x):
        x = np.asarray(x, dtype=float)
        g = np.zeros(dim)
        for beta, c in items:
            for i in range(dim):
                if beta[i] == 0:
                    continue
                b = beta.copy()
                b[i] -= 1
                g[i] += c * beta[i] * np.prod(x ** b)
        return g

    def hess(x):
        x = np.asarray(x, dtype=float)
        hmat = np.zeros((dim, dim))
        for beta, c in items:
            for i in range(dim):
                if beta[i] == 0:
                    continue
                for j in range(dim):
                    bij = beta.copy()
                    bij[i] -= 1
                    factor = c * beta[i]
                    if bij[j] == 0:
                        continue
                    bj = bij.copy()
                    bj[j] -= 1
                    hmat[i, j] += factor * bij[j] * np.prod(x ** bj)
        return hmat

    return ScalarField(value, dim, grad=grad, hess=hess)


def complex_det_lu(matrix) -> tuple[float, float]:
    """(log|det|, principal arg) of a complex matrix via LU pivots.

    The phase is accumulated pivot by pivot (plus pi per row swap) and then
    reduced to (-pi, pi]; the log-magnitude form avoids overflow.
    """
    matrix = np.asarray(matrix, dtype=complex)
    lu, piv = lu_factor(matrix, check_finite=False)
    diag = np.diag(lu)
    if np.any(diag == 0.0):
        return -math.inf, 0.0
    swaps = int(np.sum(piv != np.arange(matrix.shape[0])))
    log_abs = float(np.sum(np.log(np.abs(diag))))
    phase = float(np.sum(np.angle(diag))) + math.pi * (swaps % 2)
    phase = math.remainder(phase, 2.0 * math.pi)
    if phase <= -math.pi:
        phase += 2.0 * math.pi
    return log_abs, phase


def sl_graph_residual(field: ScalarField, x) -> float:
    """Im det_C(I + i Hess f) at x; zero iff the graph of df is special
    Lagrangian there."""
    hess = field.hessian(x)
    m = hess.shape[0]
    log_abs, phase = complex_det_lu(np.eye(m) + 1j * hess)
    return float(math.exp(log_abs) * math.sin(phase))


def graph_phase(field: ScalarField, x) -> float:
    """arg det_C(I + i Hess f) at x, principal branch in (-pi, pi].

    Raises BranchCutError within 1e-6 of the cut, where the principal value
    would silently jump.
    """
    hess = field.hessian(x)
    m = hess.shape[0]
    _, phase = complex_det_lu(np.eye(m) + 1j * hess)
    if math.pi - abs(phase) < BRANCH_CUT_TOL:
        raise BranchCutError(
            f"graph phase {phase:.9f} is within {BRANCH_CUT_TOL} of the branch cut"
        )
    return phase


def expander_graph_residual(field: ScalarField, alpha: float, c: float, x) -> float:
    """arg det_C(I + i Hess f) - alpha (2 f - sum x_j df_j) - c at x."""
    x = np.asarray(x, dtype=float)
    phase = graph_phase(field, x)
    grad = field.gradient(x)
    return float(phase - alpha * (2.0 * field.value(x) - float(x @ grad)) - c)


def linearized_expander_residual(field: ScalarField, alpha: float, x) -> float:
    """Residual of the linearized expander equation:
    sum_j d^2 f/dx_j^2 + alpha (sum_j x_j df_j - 2 f)."""
    x = np.asarray(x, dtype=float)
    grad = field.gradient(x)
    return float(field.laplacian(x) + alpha * (float(x @ grad) - 2.0 * field.value(x)))


def inversion_transform(field: ScalarField, m: int, direction: str = "forward") -> ScalarField:
    """Conjugate a field by the inversion x -> x/|x|^2 with weight |.|^{2-m}.

    forward: a field f on an outer annulus becomes F(y) = s^{2-m} f(y/s^2)
    on a punctured ball; backward is the same formula read the other way.
    The composition of the two directions is the identity on sample points.
    Evaluation at the origin is undefined and raises ValueError.
    """
    if direction not in ("forward", "backward"):
        raise ValueError("direction must be 'forward' or 'backward'")
    if field.dim != m:
        raise DimensionMismatchError("field dimension != m")

    def transformed(y):
        y = np.asarray(y, dtype=float)
        s2 = float(y @ y)
        if s2 == 0.0:
            raise ValueError("inversion transform is undefined at the origin")
        return s2 ** (0.5 * (2 - m)) * field.value(y / s2)

    # composite evaluators carry extra rounding noise; a slightly larger
    # step balances it against the stencil truncation error
    return ScalarField(transformed, m, step_scale=1e-3)


def inversion_laplacian_pair(field_ball: ScalarField, m: int, y) -> tuple[float, float]:
    """Both sides of the inversion Laplacian identity at y != 0.

    With F = field_ball on the punctured ball and f its backward transform
    f(x) = r^{2-m} F(x/r^2) on the outer annulus:

        lhs = sum_i d^2 f/dx_i^2 evaluated at x = y/s^2   (finite differences),
        rhs = s^{m+2} sum_i d^2 F/dy_i^2 (y).
    """
    y = np.asarray(y, dtype=float)
    s2 = float(y @ y)
    if s2 == 0.0:
        raise ValueError("identity is undefined at the origin")
    field_outer = inversion_transform(field_ball, m, "backward")
    lhs = field_outer.laplacian(y / s2)
    rhs = s2 ** (0.5 * (m + 2)) * field_ball.laplacian(y)
    return float(lhs), float(rhs)
