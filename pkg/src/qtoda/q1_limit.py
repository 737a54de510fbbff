"""The ``q -> 1`` limit: decoupled Bethe equations and factorized eigenfunctions.

At ``q = 1`` the Bethe equations decouple into one scalar equation per
variable.  Its ``n + 1`` solutions are the roots of a Bernstein-Szego
polynomial (the Askey-Wilson polynomial at base ``0``), and the spectral
point attached to ``kappa`` just picks ``theta_{kappa_j}`` for each ``j``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .bethe import v_antiderivative, v_integral, v_prime
from .hall_littlewood import _univariate_table, wave_function_q1
from .hamiltonian import build_toda_q1
from .lattice import LatticeConfig, Partition, enumerate_partitions, multiplicity
from .measures import ModelParams, multinomial_normalizer
from .spectrum import (
    compare_spectra,
    eigen_residuals,
    energy_q1,
    gram_matrix,
    max_offdiag,
    oracle_spectrum,
)

__all__ = [
    "AskeyWilsonRoots",
    "bs_polynomial",
    "aw_roots",
    "q1_bethe_solution",
    "decoupled_morse_value",
    "decoupled_morse_grad",
    "univariate_gram",
    "gram_sum_direct",
    "gram_sum_factorized",
    "verify_q1_eigensystem",
]


def bs_polynomial(theta: float, n: int, params: ModelParams) -> float:
    """Bernstein-Szego polynomial of degree ``n + 1`` in ``cos theta``, two-term form.

    ``c(theta) e^{i(n+1)theta} + c(-theta) e^{-i(n+1)theta}`` with
    ``c(theta) = prod_{a} (1 - a e^{-i theta}) / (1 - e^{-2 i theta})`` over the
    four boundary roots.  Normalized so that it reduces to
    ``sin((n+2) theta) / sin theta`` when all boundary roots vanish.
    """
    z = np.exp(-1j * theta)
    den = 1 - z * z
    if abs(den) < 1e-12:
        raise ValueError("theta in pi Z")
    c = 1.0 + 0j
    for a in params.boundary:
        c *= 1 - a * z
    term = c / den * np.exp(1j * (n + 1) * theta)
    return float(2.0 * term.real)


def _scalar_lhs(theta: float, n: int, params: ModelParams) -> float:
    return 2.0 * n * theta + sum(float(v_integral(a, theta)) for a in params.boundary)


def _scalar_dlhs(theta: float, n: int, params: ModelParams) -> float:
    return 2.0 * n + sum(float(v_prime(a, theta)) for a in params.boundary)


@dataclass(frozen=True)
class AskeyWilsonRoots:
    thetas: np.ndarray = field(repr=False)
    params: ModelParams
    n: int

    def __getitem__(self, k: int) -> float:
        return float(self.thetas[k])


def _solve_scalar(target: float, n: int, params: ModelParams, tol: float = 1e-15) -> float:
    # LHS is strictly increasing with LHS(0) = 0 and LHS(pi) = 2 pi (n + 2).
    lo, hi = 0.0, np.pi
    x = target / (2.0 * (n + 2))
    for _ in range(200):
        f = _scalar_lhs(x, n, params) - target
        if f > 0:
            hi = x
        else:
            lo = x
        step = f / _scalar_dlhs(x, n, params)
        new = x - step
        if not lo < new < hi:
            new = 0.5 * (lo + hi)
        if abs(new - x) <= tol * max(1.0, abs(x)):
            return new
        x = new
    return x


def aw_roots(n: int, params: ModelParams) -> AskeyWilsonRoots:
    """Roots ``0 < theta_0 < ... < theta_n < pi`` of the decoupled logarithmic Bethe equation.

    ``theta_k`` solves ``2 n theta + sum_a v_a(theta) = 2 pi (k + 1)``.
    """
    thetas = np.array([_solve_scalar(2 * np.pi * (k + 1), n, params) for k in range(n + 1)])
    thetas.setflags(write=False)
    return AskeyWilsonRoots(thetas, params, n)


def q1_bethe_solution(kappa: Partition, roots: AskeyWilsonRoots) -> np.ndarray:
    """``(theta_{kappa_1}, ..., theta_{kappa_m})``, weakly decreasing in ``(0, pi)``."""
    return np.array([roots.thetas[k] for k in kappa.parts])


def decoupled_morse_value(xi, kappa: Partition, params: ModelParams) -> float:
    xi = np.asarray(xi, dtype=float)
    n = kappa.m
    kap = np.asarray(kappa.parts)
    val = float(np.sum(n * xi * xi - 2 * np.pi * (kap + 1) * xi))
    for a in params.boundary:
        val += float(np.sum(v_antiderivative(a, xi)))
    return val


def decoupled_morse_grad(xi, kappa: Partition, params: ModelParams) -> np.ndarray:
    xi = np.asarray(xi, dtype=float)
    n = kappa.m
    g = 2.0 * n * xi - 2 * np.pi * (np.asarray(kappa.parts) + 1)
    for a in params.boundary:
        g = g + v_integral(a, xi)
    return g


def decoupled_bae_residual(theta: float, n: int, params: ModelParams) -> float:
    """``|LHS / RHS - 1|`` of the scalar multiplicative Bethe equation."""
    z = np.exp(1j * theta)
    lhs = np.exp(2j * n * theta)
    rhs = 1.0 + 0j
    for a, b in ((params.alpha_plus, params.beta_plus), (params.alpha_minus, params.beta_minus)):
        rhs *= (1 - b * z + a * z * z) / (z * z - b * z + a)
    return float(abs(lhs / rhs - 1))


# -- orthogonality sums ------------------------------------------------------


def univariate_gram(roots: AskeyWilsonRoots) -> np.ndarray:
    """``S[k, k'] = sum_l R_l(theta_k) R_l(theta_k') / ((1-a_+)^[l=0] (1-a_-)^[l=n])``."""
    n = roots.n
    p = roots.params
    table = _univariate_table(np.arange(n + 1), roots.thetas, p)  # (l, k)
    w = np.ones(n + 1)
    w[0] /= 1.0 - p.alpha_plus
    w[n] /= 1.0 - p.alpha_minus
    return (table * w[:, None]).T @ table


def gram_sum_direct(kappa: Partition, nu: Partition, roots: AskeyWilsonRoots) -> float:
    """Inner product of two factorized eigenfunctions, summed over the ``(m, n)`` box."""
    from .hall_littlewood import hl_factorized_q1
    from math import factorial

    n = roots.n
    p = roots.params
    m = kappa.n
    xk = q1_bethe_solution(kappa, roots)
    xn = q1_bethe_solution(nu, roots)
    total = 0.0
    for lam in enumerate_partitions(LatticeConfig(m, n)):
        mult = [multiplicity(lam, i) for i in range(n + 1)]
        w = factorial(m) / ((1 - p.alpha_plus) ** mult[0] * (1 - p.alpha_minus) ** mult[n])
        for c in mult:
            w /= factorial(c)
        total += hl_factorized_q1(lam, xk, p) * hl_factorized_q1(lam, xn, p) * w
    return total


def gram_sum_factorized(kappa: Partition, nu: Partition, roots: AskeyWilsonRoots) -> float:
    """Same inner product as :func:`gram_sum_direct`, as a sum over pairs of
    reorderings of products of univariate sums."""
    s = univariate_gram(roots)
    total = 0.0
    for ks in itertools.permutations(kappa.parts):
        for ns in itertools.permutations(nu.parts):
            total += float(np.prod([s[a, b] for a, b in zip(ks, ns)]))
    return total


# -- verification ------------------------------------------------------------


def verify_q1_eigensystem(cfg: LatticeConfig, params: ModelParams, tol: float = 1e-9) -> dict:
    """Check the factorized Bethe eigenbasis of the ``q -> 1`` hamiltonian.

    Returns a report with per-``kappa`` residuals, the spectrum comparison
    against the Jacobi oracle, the largest normalized Gram off-diagonal and
    the multinomial normalization error; ``report["passed"]`` combines them.
    """
    op = build_toda_q1(cfg, params)
    roots = aw_roots(cfg.n, params)
    kappas = enumerate_partitions(cfg.transpose())
    xis = [q1_bethe_solution(k, roots) for k in kappas]
    vecs = np.array([wave_function_q1(x, cfg, params).values for x in xis])
    energies = np.array([energy_q1(x) for x in xis])
    res = eigen_residuals(op, vecs, energies)

    g = gram_matrix(vecs, op.weight)
    norms = np.sqrt(np.diag(g))
    ortho = max_offdiag(g / np.outer(norms, norms))

    oracle = oracle_spectrum(op)
    spec_err = compare_spectra(energies, oracle)
    scale = max(1.0, float(np.max(np.abs(oracle))))

    norm_sum = float(np.sum(op.weight.values))
    norm_closed = multinomial_normalizer(cfg.n, cfg.m, params.alpha_plus, params.alpha_minus)
    norm_err = abs(norm_sum - norm_closed) / norm_closed

    bs_res = max(abs(bs_polynomial(t, cfg.n, params)) for t in roots.thetas)
    bae_res = max(decoupled_bae_residual(t, cfg.n, params) for t in roots.thetas)

    checks = {
        "eigen_residual": float(np.max(res)) <= tol,
        "orthogonality": ortho <= tol,
        "spectrum": spec_err <= tol * scale,
        "normalization": norm_err <= 1e-12,
        "bs_roots": bs_res <= 1e-10,
        "bae": bae_res <= 1e-12,
    }
    return {
        "q1": True,
        "n": cfg.n,
        "m": cfg.m,
        "params": params.as_dict(),
        "roots": roots.thetas.tolist(),
        "solutions": [
            {"kappa": list(k.parts), "xi": x.tolist(), "E": e, "residual": float(r)}
            for k, x, e, r in zip(kappas, xis, energies, res)
        ],
        "spectrum_comparison": {
            "bethe": np.sort(energies).tolist(),
            "oracle": oracle.tolist(),
            "max_abs_diff": spec_err,
        },
        "gram_max_offdiag": ortho,
        "normalization_rel_error": norm_err,
        "bs_root_residual": bs_res,
        "bae_residual": bae_res,
        "checks": checks,
        "passed": all(checks.values()),
    }
