"""Bethe Ansatz equations via the strictly convex Yang-Yang Morse function.

For each quantum number ``kappa`` in the ``(m, n)`` box the logarithmic Bethe
equations are the critical-point equations of ``V_kappa``.  The unique global
minimum is found by damped Newton iteration started at the symplectic Schur
point; a gradient-flow integrator gives an independent route to the same point.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp
from scipy.special import spence

from .lattice import LatticeConfig, Partition
from .measures import ModelParams

__all__ = [
    "MorseProblem",
    "BetheSolution",
    "ConvergenceError",
    "v_integral",
    "v_prime",
    "v_antiderivative",
    "quantum_numbers",
    "schur_point",
    "morse_value",
    "morse_grad",
    "morse_hess",
    "bae_residual",
    "k_bounds",
    "k_bounds_as_printed",
    "check_bounds",
    "in_alcove",
    "solve_bethe",
    "gradient_flow",
    "FlowResult",
]


ARMIJO_C = 1e-4
MAX_NEWTON_ITER = 200
DEFAULT_TOL = 1e-12


class ConvergenceError(RuntimeError):
    pass


def v_integral(a: float, z):
    """``v_a(z) = int_0^z (1 - a^2) / (1 - 2 a cos x + a^2) dx`` for ``|a| < 1``.

    Uses the branch ``z + 2 arctan(a sin z / (1 - a cos z))``, which is smooth
    on all of R, odd, and satisfies ``v_a(z + 2 pi) = v_a(z) + 2 pi``.
    """
    if not abs(a) < 1:
        raise ValueError(f"|a| must be < 1, got {a}")
    z = np.asarray(z, dtype=float)
    return z + 2.0 * np.arctan2(a * np.sin(z), 1.0 - a * np.cos(z))


def v_prime(a: float, z):
    """Derivative of :func:`v_integral`: the Poisson kernel ``(1-a^2)/(1-2a cos z+a^2)``."""
    z = np.asarray(z, dtype=float)
    return (1.0 - a * a) / (1.0 - 2.0 * a * np.cos(z) + a * a)


def v_antiderivative(a: float, z):
    """``int_0^z v_a(x) dx``.

    From ``v_a(z) = z + 2 sum_k a^k sin(k z) / k`` one gets
    ``z^2/2 + 2 (Li2(a) - Re Li2(a e^{iz}))``; ``Li2(w) = spence(1 - w)``.
    """
    z = np.asarray(z, dtype=float)
    if a == 0.0:
        return 0.5 * z * z
    li_a = spence(complex(1.0 - a)).real
    li_z = spence(1.0 - a * np.exp(1j * z)).real
    return 0.5 * z * z + 2.0 * (li_a - li_z)


@dataclass(frozen=True)
class MorseProblem:
    """Yang-Yang function ``V_kappa`` for one quantum number ``kappa``.

    ``kappa`` lives in the ``(m, n)`` box: ``m`` parts bounded by ``n``.
    """

    cfg: LatticeConfig
    params: ModelParams
    kappa: Partition

    def __post_init__(self) -> None:
        if self.kappa.n != self.cfg.m or self.kappa.m != self.cfg.n:
            raise ValueError(
                f"kappa {self.kappa} must lie in the ({self.cfg.m},{self.cfg.n}) box"
            )


def quantum_numbers(prob: MorseProblem) -> np.ndarray:
    """Right-hand sides ``2 pi (m + 1 - j + kappa_j)``, ``j = 1..m``."""
    m = prob.cfg.m
    j = np.arange(1, m + 1)
    return 2.0 * np.pi * (m + 1 - j + np.asarray(prob.kappa.parts))


def schur_point(prob: MorseProblem) -> np.ndarray:
    """Exact minimiser at ``q = p_pm = q_pm = 0``: ``pi (m+1-j+kappa_j) / (m+n+1)``."""
    n, m = prob.cfg.n, prob.cfg.m
    return quantum_numbers(prob) / (2.0 * (m + n + 1))


def morse_value(xi, prob: MorseProblem) -> float:
    xi = np.asarray(xi, dtype=float)
    n = prob.cfg.n
    q = prob.params.q
    val = float(np.sum(n * xi * xi - quantum_numbers(prob) * xi))
    for a in prob.params.boundary:
        val += float(np.sum(v_antiderivative(a, xi)))
    j, k = np.triu_indices(len(xi), 1)
    if len(j):
        val += float(np.sum(v_antiderivative(q, xi[j] + xi[k]) + v_antiderivative(q, xi[j] - xi[k])))
    return val


def morse_grad(xi, prob: MorseProblem) -> np.ndarray:
    """Gradient of ``V_kappa``: the left minus right side of the logarithmic Bethe equations."""
    xi = np.asarray(xi, dtype=float)
    n = prob.cfg.n
    q = prob.params.q
    g = 2.0 * n * xi - quantum_numbers(prob)
    for a in prob.params.boundary:
        g = g + v_integral(a, xi)
    plus = v_integral(q, xi[:, None] + xi[None, :])
    minus = v_integral(q, xi[:, None] - xi[None, :])
    np.fill_diagonal(plus, 0.0)
    np.fill_diagonal(minus, 0.0)
    return g + plus.sum(axis=1) + minus.sum(axis=1)


def morse_hess(xi, prob: MorseProblem) -> np.ndarray:
    xi = np.asarray(xi, dtype=float)
    n = prob.cfg.n
    q = prob.params.q
    d = np.full(len(xi), 2.0 * n)
    for a in prob.params.boundary:
        d = d + v_prime(a, xi)
    plus = v_prime(q, xi[:, None] + xi[None, :])
    minus = v_prime(q, xi[:, None] - xi[None, :])
    np.fill_diagonal(plus, 0.0)
    np.fill_diagonal(minus, 0.0)
    h = plus - minus
    h[np.diag_indices_from(h)] = d + plus.sum(axis=1) + minus.sum(axis=1)
    return h


def bae_residual(xi, cfg: LatticeConfig, params: ModelParams) -> float:
    """``max_j |LHS_j / RHS_j - 1|`` for the multiplicative Bethe equations."""
    xi = np.asarray(xi, dtype=float)
    n = cfg.n
    q = params.q
    z = np.exp(1j * xi)
    lhs = np.exp(2j * n * xi)
    rhs = np.ones(len(xi), dtype=complex)
    for a, b in ((params.alpha_plus, params.beta_plus), (params.alpha_minus, params.beta_minus)):
        rhs *= (1 - b * z + a * z * z) / (z * z - b * z + a)
    zm = z[:, None] / z[None, :]
    zp = z[:, None] * z[None, :]
    cross = (1 - q * zm) * (1 - q * zp) / ((zm - q) * (zp - q))
    np.fill_diagonal(cross, 1.0)
    rhs *= np.prod(cross, axis=1)
    return float(np.max(np.abs(lhs / rhs - 1)))


def _ratio(a: float, sign: int) -> float:
    r = (1.0 + abs(a)) / (1.0 - abs(a))
    return r if sign > 0 else 1.0 / r


def k_bounds(params: ModelParams, cfg: LatticeConfig) -> tuple[float, float]:
    """``(K_-, K_+)`` controlling the solution bounds and the Hessian floor ``2 (n + K_-)``."""
    out = []
    for sign in (-1, 1):
        k = (cfg.m - 1) * _ratio(params.q, sign)
        k += 0.5 * sum(_ratio(a, sign) for a in params.boundary)
        out.append(k)
    return out[0], out[1]


def k_bounds_as_printed(params: ModelParams, cfg: LatticeConfig) -> tuple[float, float]:
    """Variant whose last boundary term is the constant ``(1-|q_-|)/(1-|q_-|) = 1``.

    Kept for diagnostics only.
    """
    out = []
    for sign in (-1, 1):
        k = (cfg.m - 1) * _ratio(params.q, sign)
        k += 0.5 * (sum(_ratio(a, sign) for a in params.boundary[:3]) + 1.0)
        out.append(k)
    return out[0], out[1]


def in_alcove(xi) -> bool:
    """``pi > xi_1 > xi_2 > ... > xi_m > 0``."""
    xi = np.asarray(xi, dtype=float)
    return bool(xi[0] < np.pi and xi[-1] > 0 and np.all(np.diff(xi) < 0))


def check_bounds(xi, prob: MorseProblem, slack: float = 1e-12) -> bool:
    """Whether ``xi`` satisfies the a-priori bounds on ``xi_j`` and ``xi_j - xi_k``."""
    xi = np.asarray(xi, dtype=float)
    n, m = prob.cfg.n, prob.cfg.m
    k_minus, k_plus = k_bounds(prob.params, prob.cfg)
    kap = np.asarray(prob.kappa.parts)
    j = np.arange(1, m + 1)
    num = np.pi * (m + 1 - j + kap)
    if np.any(xi < num / (n + k_plus) - slack) or np.any(xi > num / (n + k_minus) + slack):
        return False
    jj, kk = np.triu_indices(m, 1)
    num = np.pi * ((kk - jj) + kap[jj] - kap[kk])
    diff = xi[jj] - xi[kk]
    return bool(
        np.all(diff >= num / (n + k_plus) - slack) and np.all(diff <= num / (n + k_minus) + slack)
    )


@dataclass(frozen=True)
class BetheSolution:
    kappa: Partition
    xi: np.ndarray = field(repr=False)
    grad_norm: float
    hessian_min_eig: float
    energy: float
    bae_residual: float
    iterations: int


def solve_bethe(
    prob: MorseProblem,
    tol: float = DEFAULT_TOL,
    x0=None,
    max_iter: int = MAX_NEWTON_ITER,
) -> BetheSolution:
    """Global minimum of ``V_kappa`` by Newton's method with Armijo backtracking.

    Starts from the Schur point unless ``x0`` is given and stops once
    ``||grad||_inf <= tol``.  Raises :class:`ConvergenceError` after
    ``max_iter`` steps, which strict convexity should rule out.
    """
    xi = schur_point(prob) if x0 is None else np.array(x0, dtype=float)
    g = morse_grad(xi, prob)
    it = 0
    while np.max(np.abs(g)) > tol:
        if it >= max_iter:
            raise ConvergenceError(
                f"no convergence for kappa={prob.kappa} after {max_iter} steps, "
                f"|grad|={np.max(np.abs(g)):.3e}"
            )
        h = morse_hess(xi, prob)
        step = -np.linalg.solve(h, g)
        f0 = morse_value(xi, prob)
        slope = float(g @ step)
        t = 1.0
        while t > 1e-10:
            trial = xi + t * step
            # Near convergence V changes below its rounding error; take the full step.
            if np.max(np.abs(step)) < 1e-6 or morse_value(trial, prob) <= f0 + ARMIJO_C * t * slope:
                break
            t *= 0.5
        xi = xi + t * step
        g = morse_grad(xi, prob)
        it += 1
    h = morse_hess(xi, prob)
    energy = 2.0 * (1.0 - prob.params.q) * float(np.sum(np.cos(xi)))
    return BetheSolution(
        kappa=prob.kappa,
        xi=xi,
        grad_norm=float(np.max(np.abs(g))),
        hessian_min_eig=float(np.linalg.eigvalsh(h)[0]),
        energy=energy,
        bae_residual=bae_residual(xi, prob.cfg, prob.params),
        iterations=it,
    )


@dataclass(frozen=True)
class FlowResult:
    t: np.ndarray = field(repr=False)
    xi: np.ndarray = field(repr=False)  # shape (len(t), m)
    grad_norm: np.ndarray = field(repr=False)

    @property
    def final(self) -> np.ndarray:
        return self.xi[-1]


def gradient_flow(
    prob: MorseProblem,
    xi0=None,
    t_end: float | None = None,
    steps: int = 200,
    rtol: float = 1e-10,
    atol: float = 1e-13,
) -> FlowResult:
    """Integrate ``d xi / dt = -grad V_kappa(xi)`` with an adaptive 5(4) Runge-Kutta pair.

    The trajectory is sampled at ``steps + 1`` equally spaced times.  By
    default ``t_end`` is long enough for the guaranteed decay rate
    ``2 (n + K_-)`` to shrink the initial error by about ``e^-35``.
    """
    xi0 = schur_point(prob) if xi0 is None else np.asarray(xi0, dtype=float)
    if t_end is None:
        k_minus, _ = k_bounds(prob.params, prob.cfg)
        t_end = 35.0 / (2.0 * (prob.cfg.n + k_minus))
    t_eval = np.linspace(0.0, t_end, steps + 1)
    sol = solve_ivp(
        lambda t, y: -morse_grad(y, prob),
        (0.0, t_end),
        xi0,
        method="RK45",
        t_eval=t_eval,
        rtol=rtol,
        atol=atol,
    )
    if sol.status != 0:
        raise ConvergenceError(f"gradient flow integration failed: {sol.message}")
    traj = sol.y.T
    gn = np.array([np.max(np.abs(morse_grad(x, prob))) for x in traj])
    return FlowResult(sol.t, traj, gn)
