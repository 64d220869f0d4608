"""Asymptotic modes of the linearized expander equation on an outer annulus.

Decaying solutions of

    sum_j d^2 f/dx_j^2 + alpha (sum_j x_j df_j - 2 f) = 0

separate over the unit sphere.  Writing f = r^{-b} e^{-alpha r^2 / 2}
p(x/r) A(r^{-2}) with p a degree-k homogeneous harmonic polynomial
(eigenvalue K = k (m + k - 2) of the sphere Laplacian), the radial factor
solves a linear ODE singular at t = r^{-2} = 0:

    4 t^2 A'' + 2 (alpha + c1 t) A' + (c0 - K) A - alpha (m + 2 - b) A / t = 0,

with c1 = 2 b - m + 4 and c0 = b (b - m + 2).  The t^{-1} term is absorbed
exactly when the weight exponent is b = m + 2, which is also the decay rate
of the equation's WKB branch; then c1 = m + 8, c0 = 4 (m + 2), and assembled
single modes solve the linearized equation identically
(`solve_separation_radial`, `assemble_expansion`).

The hierarchy with damping c1 = m + 6 and constant c0 = 3 (m + 1) (the
weight exponent b = m + 1, whose residual against the full equation is the
lower-order term -alpha f) is exposed as the default of `solve_radial_mode`;
its threshold K > 3 (m + 1) governs the monotonicity and log-derivative
bounds checked by the verification suite.

For either coefficient pair, substituting A = sum c_l t^l gives the
recursion (match the t^l coefficient; 4 t^2 A'' contributes 4 l (l-1) c_l)

    2 alpha (l+1) c_{l+1} = -(4 l^2 + (2 c1 - 4) l + c0 - K) c_l,

so c_0 = 1 and c_1 = (K - c0) / (2 alpha).  Unless the bracket vanishes at
some integer l (then A is a polynomial), the c_l grow factorially and the
series is asymptotic only; it is summed to its smallest term, which near
t = 0 leaves an exponentially small error.  Away from 0 the solution is
continued by adaptive Runge-Kutta seeded from the series deep inside its
reliable region; series and integration must agree on the overlap window.

When K > c0, A is strictly increasing from A(0) = 1 and its logarithmic
derivative A'/A stays within [0, (K - c0) / (2 alpha)], with the right
endpoint attained at t = 0.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy.integrate import solve_ivp

from .errors import DimensionMismatchError
from .graphs import ScalarField, polynomial_field

SERIES_FLOOR = 1e-22
_RK_RTOL = 1e-13
_RK_ATOL = 1e-15


# ---------------------------------------------------------------------------
# homogeneous harmonic polynomials
# ---------------------------------------------------------------------------

def monomials(m: int, k: int):
    """All multi-indices of total degree k in m variables, sorted."""
    if k == 0:
        return [tuple([0] * m)]
    out = set()
    for combo in itertools.combinations_with_replacement(range(m), k):
        beta = [0] * m
        for i in combo:
            beta[i] += 1
        out.add(tuple(beta))
    return sorted(out)


def harmonic_dimension(m: int, k: int) -> int:
    """dim of degree-k harmonics: C(m+k-1, k) - C(m+k-3, k-2)."""
    if k == 0:
        return 1
    if k == 1:
        return m
    return math.comb(m + k - 1, k) - math.comb(m + k - 3, k - 2)


def laplacian_matrix(m: int, k: int) -> np.ndarray:
    """Matrix of the flat Laplacian from degree-k to degree-(k-2) monomials."""
    cols = monomials(m, k)
    rows = monomials(m, k - 2) if k >= 2 else []
    row_index = {beta: i for i, beta in enumerate(rows)}
    mat = np.zeros((len(rows), len(cols)), dtype=np.int64)
    for j, beta in enumerate(cols):
        for i in range(m):
            if beta[i] >= 2:
                target = list(beta)
                target[i] -= 2
                mat[row_index[tuple(target)], j] += beta[i] * (beta[i] - 1)
    return mat


def _fraction_nullspace(mat: np.ndarray):
    """Exact nullspace basis of an integer matrix over the rationals."""
    rows, cols = mat.shape
    work = [[Fraction(int(v)) for v in row] for row in mat]
    pivot_cols = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if work[i][c] != 0), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        inv = 1 / work[r][c]
        work[r] = [v * inv for v in work[r]]
        for i in range(rows):
            if i != r and work[i][c] != 0:
                factor = work[i][c]
                work[i] = [a - factor * b for a, b in zip(work[i], work[r])]
        pivot_cols.append(c)
        r += 1
        if r == rows:
            break
    free_cols = [c for c in range(cols) if c not in pivot_cols]
    basis = []
    for fc in free_cols:
        vec = [Fraction(0)] * cols
        vec[fc] = Fraction(1)
        for i, pc in enumerate(pivot_cols):
            vec[pc] = -work[i][fc]
        basis.append(vec)
    return basis


def sphere_monomial_moment(beta) -> float:
    """Integral of x^beta over the unit sphere S^{m-1}.

    Zero unless every exponent is even; otherwise
    2 prod_i Gamma((beta_i + 1)/2) / Gamma((|beta| + m)/2).
    """
    beta = tuple(int(b) for b in beta)
    if any(b % 2 for b in beta):
        return 0.0
    m = len(beta)
    log_num = sum(math.lgamma(0.5 * (b + 1)) for b in beta)
    log_den = math.lgamma(0.5 * (sum(beta) + m))
    return 2.0 * math.exp(log_num - log_den)


@dataclass(frozen=True)
class HarmonicPolynomial:
    """Homogeneous harmonic polynomial stored by monomial coefficients."""

    m: int
    degree: int
    coeffs: dict

    def __call__(self, x) -> float:
        x = np.asarray(x, dtype=float)
        return float(
            sum(c * np.prod(x ** np.array(beta)) for beta, c in self.coeffs.items())
        )

    def laplacian_coeffs(self) -> dict:
        out: dict = {}
        for beta, c in self.coeffs.items():
            for i in range(self.m):
                if beta[i] >= 2:
                    target = list(beta)
                    target[i] -= 2
                    key = tuple(target)
                    out[key] = out.get(key, 0.0) + c * beta[i] * (beta[i] - 1)
        return out

    def max_laplacian_coeff(self) -> float:
        lap = self.laplacian_coeffs()
        return max((abs(v) for v in lap.values()), default=0.0)

    def as_field(self) -> ScalarField:
        return polynomial_field(self.coeffs, self.m)

    def sphere_inner(self, other: "HarmonicPolynomial") -> float:
        total = 0.0
        for beta, c in self.coeffs.items():
            for gamma, d in other.coeffs.items():
                merged = tuple(b + g for b, g in zip(beta, gamma))
                total += c * d * sphere_monomial_moment(merged)
        return total


@lru_cache(maxsize=None)
def harmonic_basis(m: int, k: int) -> tuple:
    """L^2(S^{m-1})-orthonormal basis of the degree-k harmonics on R^m.

    The kernel of the Laplacian on degree-k monomials is computed exactly
    over the rationals, then orthonormalized against the closed-form sphere
    moments of monomials.
    """
    if m < 3:
        raise DimensionMismatchError("m must be >= 3")
    if k < 0:
        raise ValueError("degree must be nonnegative")
    cols = monomials(m, k)
    if k < 2:
        raw = [{beta: 1.0} for beta in cols]
    else:
        basis_vecs = _fraction_nullspace(laplacian_matrix(m, k))
        raw = [
            {beta: float(v) for beta, v in zip(cols, vec) if v != 0}
            for vec in basis_vecs
        ]
    polys = [HarmonicPolynomial(m, k, c) for c in raw]
    # symmetric orthonormalization via the sphere Gram matrix
    n = len(polys)
    gram = np.empty((n, n))
    for i in range(n):
        for j in range(i, n):
            gram[i, j] = gram[j, i] = polys[i].sphere_inner(polys[j])
    evals, evecs = np.linalg.eigh(gram)
    if np.min(evals) <= 0:
        raise RuntimeError("sphere Gram matrix is not positive definite")
    transform = evecs @ np.diag(evals ** -0.5) @ evecs.T
    out = []
    for j in range(n):
        coeffs: dict = {}
        for i in range(n):
            w = transform[i, j]
            if w == 0.0:
                continue
            for beta, c in polys[i].coeffs.items():
                coeffs[beta] = coeffs.get(beta, 0.0) + w * c
        out.append(HarmonicPolynomial(m, k, coeffs))
    return tuple(out)


# ---------------------------------------------------------------------------
# the singular radial ODE
# ---------------------------------------------------------------------------

def default_damping(m: int) -> int:
    return m + 6


def default_constant(m: int) -> int:
    return 3 * (m + 1)


def separation_damping(m: int) -> int:
    return m + 8


def separation_constant(m: int) -> int:
    return 4 * (m + 2)


def taylor_recursion_bracket(m: int, k: int, l: int, damping=None, constant=None) -> float:
    """Coefficient multiplying c_l in the step to c_{l+1}."""
    damping = default_damping(m) if damping is None else damping
    constant = default_constant(m) if constant is None else constant
    big_k = k * (m + k - 2)
    return 4.0 * l * l + (2.0 * damping - 4.0) * l + constant - big_k


def taylor_c1(m: int, k: int, alpha: float, constant=None) -> float:
    """c_1 = (K - c0) / (2 alpha), the ODE evaluated at t = 0 with A(0) = 1."""
    constant = default_constant(m) if constant is None else constant
    return (k * (m + k - 2) - constant) / (2.0 * alpha)


def _series_terms(m, k, alpha, t, deriv, damping, constant, lmax=600):
    c = 1.0
    yield 0, (1.0 if not deriv else 0.0)
    for l in range(lmax):
        bracket = taylor_recursion_bracket(m, k, l, damping, constant)
        c_next = -c * bracket / (2.0 * alpha * (l + 1))
        term = (l + 1) * c_next * t ** l if deriv else c_next * t ** (l + 1)
        yield l + 1, term
        c = c_next
        if not np.isfinite(c):
            return


def _series_sum(m, k, alpha, t, damping, constant, deriv=False):
    """Sum the asymptotic series at t, truncated at its globally smallest
    term; returns (value, error_estimate)."""
    partials = []
    mags = []
    total = 0.0
    global_min = math.inf
    grown = 0
    for idx, term in _series_terms(m, k, alpha, t, deriv, damping, constant):
        total += term
        partials.append(total)
        mag = abs(term)
        mags.append(mag)
        if idx == 0:
            continue
        if mag < SERIES_FLOOR * max(1.0, abs(total)):
            return total, mag
        if mag < global_min:
            global_min = mag
            grown = 0
        else:
            grown += 1
        if grown >= 4 and mag > 1e4 * max(global_min, 1e-300):
            break
    idx_best = 1 + int(np.argmin(mags[1:]))
    return partials[idx_best], mags[idx_best]


def _ode_rhs(t, y, m, k, alpha, damping, constant):
    big_k = k * (m + k - 2)
    a, ap = y
    app = -(2.0 * (alpha + damping * t) * ap + (constant - big_k) * a) / (4.0 * t * t)
    return (ap, app)


@dataclass
class RadialSolution:
    """Radial factor A: asymptotic series near 0, Runge-Kutta beyond.

    Evaluation uses the series on [0, t_switch] and the dense integrator
    output on [t_switch, t_max]; `overlap_window` exposes the interval where
    both representations are reliable and must agree.
    """

    m: int
    k: int
    alpha: float
    damping: float
    constant: float
    t_max: float
    t_switch: float
    t_seed: float
    coeffs: np.ndarray
    _dense: object

    @property
    def eigenvalue(self) -> int:
        return self.k * (self.m + self.k - 2)

    def log_derivative_bound(self) -> float:
        """Upper bound for A'/A when the eigenvalue exceeds the ODE's
        constant term."""
        if self.eigenvalue <= self.constant:
            raise ValueError(
                "bound requires k (m+k-2) > the constant term; "
                f"got {self.eigenvalue} <= {self.constant}"
            )
        return (self.eigenvalue - self.constant) / (2.0 * self.alpha)

    def series_value(self, t: float, deriv: bool = False) -> float:
        return _series_sum(self.m, self.k, self.alpha, t,
                           self.damping, self.constant, deriv)[0]

    def value(self, t: float) -> float:
        if t < 0.0:
            raise ValueError("t must be nonnegative")
        if t <= self.t_switch:
            return self.series_value(t)
        if t > self.t_max + 1e-12:
            raise ValueError(f"t = {t} beyond solved range {self.t_max}")
        return float(self._dense(min(t, self.t_max))[0])

    def derivative(self, t: float) -> float:
        if t < 0.0:
            raise ValueError("t must be nonnegative")
        if t <= self.t_switch:
            return self.series_value(t, deriv=True)
        if t > self.t_max + 1e-12:
            raise ValueError(f"t = {t} beyond solved range {self.t_max}")
        return float(self._dense(min(t, self.t_max))[1])

    def __call__(self, t: float) -> float:
        return self.value(t)

    def overlap_window(self, points: int = 7) -> np.ndarray:
        return np.linspace(self.t_seed, self.t_switch, points)

    def overlap_disagreement(self, points: int = 7) -> float:
        worst = 0.0
        for t in self.overlap_window(points):
            series = self.series_value(t)
            dense = float(self._dense(t)[0])
            worst = max(worst, abs(series - dense) / max(1.0, abs(series)))
        return worst


def solve_radial_mode(m: int, k: int, alpha: float, t_max: float = 2.0,
                      damping=None, constant=None) -> RadialSolution:
    """Solve the radial hierarchy on [0, t_max] (series + RK continuation).

    Defaults to the damping/constant pair (m+6, 3(m+1)), whose threshold
    K > 3 (m+1) governs the monotonicity and log-derivative bounds.  The
    integrator is seeded from the series at t_seed = t_switch/10, deep
    inside the region where the optimally truncated series is reliable; the
    handoff point is t_switch = min(0.01, alpha/10), halved while the
    smallest series term there is not yet below 1e-10.
    """
    if m < 3 or k < 0 or alpha <= 0.0 or t_max <= 0.0:
        raise ValueError("need m >= 3, k >= 0, alpha > 0, t_max > 0")
    damping = default_damping(m) if damping is None else float(damping)
    constant = default_constant(m) if constant is None else float(constant)
    t_switch = min(0.01, alpha / 10.0)
    for _ in range(40):
        _, err = _series_sum(m, k, alpha, t_switch, damping, constant)
        if err < 1e-10:
            break
        t_switch *= 0.5
    else:
        raise RuntimeError("series unreliable at every candidate handoff point")
    t_seed = t_switch / 10.0
    a0, _ = _series_sum(m, k, alpha, t_seed, damping, constant)
    ap0, _ = _series_sum(m, k, alpha, t_seed, damping, constant, deriv=True)
    sol = solve_ivp(
        _ode_rhs,
        (t_seed, t_max),
        [a0, ap0],
        args=(m, k, alpha, damping, constant),
        method="DOP853",
        rtol=_RK_RTOL,
        atol=_RK_ATOL,
        dense_output=True,
    )
    if not sol.success:
        raise RuntimeError(f"radial ODE integration failed: {sol.message}")

    # keep coefficients up to the term falling below the floor at t_switch
    coeffs = [1.0]
    c = 1.0
    for l in range(600):
        c = -c * taylor_recursion_bracket(m, k, l, damping, constant) / (
            2.0 * alpha * (l + 1)
        )
        coeffs.append(c)
        mag = abs(c) * t_switch ** (l + 1)
        if mag < SERIES_FLOOR or (l > 4 and mag > 1e6):
            break
    return RadialSolution(
        m=m, k=k, alpha=alpha, damping=damping, constant=constant,
        t_max=t_max, t_switch=t_switch, t_seed=t_seed,
        coeffs=np.array(coeffs), _dense=sol.sol,
    )


def solve_separation_radial(m: int, k: int, alpha: float,
                            t_max: float = 2.0) -> RadialSolution:
    """Radial factor of the exact separation: paired with the weight
    r^{-(m+2)} e^{-alpha r^2/2} and a degree-k harmonic, the assembled mode
    solves the linearized expander equation identically.  Uses the
    damping/constant pair (m+8, 4(m+2)), the unique one whose weight absorbs
    every singular term."""
    return solve_radial_mode(m, k, alpha, t_max,
                             damping=separation_damping(m),
                             constant=separation_constant(m))


def check_log_derivative_bound(solution: RadialSolution, t_grid, slack: float = 1e-9) -> bool:
    """0 <= A'/A <= (K - c0)/(2 alpha) at every grid point, within the given
    slack.  Raises ValueError when the threshold condition K > c0 fails."""
    bound = solution.log_derivative_bound()
    for t in np.asarray(t_grid, dtype=float):
        ld = solution.derivative(float(t)) / solution.value(float(t))
        if not (-slack <= ld <= bound + slack):
            return False
    return True


# ---------------------------------------------------------------------------
# mode assembly
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExpansionMode:
    """A degree-k harmonic polynomial paired with its radial factor."""

    poly: HarmonicPolynomial
    radial: RadialSolution

    def __post_init__(self):
        if self.poly.degree != self.radial.k or self.poly.m != self.radial.m:
            raise DimensionMismatchError("polynomial and radial factor disagree")

    @property
    def k(self) -> int:
        return self.radial.k

    @property
    def m(self) -> int:
        return self.radial.m

    @property
    def alpha(self) -> float:
        return self.radial.alpha


def assemble_expansion(modes, x) -> float:
    """f(x) = r^{-(m+2)} e^{-alpha r^2/2} sum_k p_k(x/r) A_k(r^{-2}).

    All modes must share m and alpha, and their radial factors must belong
    to the separation hierarchy (see `solve_separation_radial`), so that the
    assembled field solves the linearized expander equation; r must be
    positive and inside the radial solutions' solved range.
    """
    modes = list(modes)
    if not modes:
        return 0.0
    m = modes[0].m
    alpha = modes[0].alpha
    for mode in modes:
        if mode.m != m or mode.alpha != alpha:
            raise DimensionMismatchError("modes mix different m or alpha")
        if mode.radial.constant != separation_constant(m) or (
            mode.radial.damping != separation_damping(m)
        ):
            raise ValueError(
                "assembly needs separation-hierarchy radial factors; build "
                "them with solve_separation_radial"
            )
    x = np.asarray(x, dtype=float)
    r = float(np.linalg.norm(x))
    if r <= 0.0:
        raise ValueError("assembly requires r > 0")
    t = r ** -2
    total = sum(mode.poly(x / r) * mode.radial.value(t) for mode in modes)
    return r ** (-(m + 2)) * math.exp(-0.5 * alpha * r * r) * total


def expansion_field(modes) -> ScalarField:
    """The assembled expansion as a ScalarField (finite-difference
    derivatives), for residual checks against the linearized operator."""
    modes = list(modes)
    if not modes:
        raise ValueError("need at least one mode")
    m = modes[0].m
    return ScalarField(lambda x: assemble_expansion(modes, x), m)
