"""Bethe Ansatz eigensystem of the hamiltonian and its independent checks.

The Bethe route: solve the Bethe equations for every ``kappa`` in the
``(m, n)`` box, tabulate the Hall-Littlewood wave functions and check the
eigenvalue equation.  The oracle route: a cyclic Jacobi eigensolver applied
to the symmetrized matrix, with no dependence on the Bethe machinery.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .bethe import BetheSolution, MorseProblem, solve_bethe, DEFAULT_TOL
from .hall_littlewood import wave_function
from .hamiltonian import LatticeOperator, build_toda, symmetrize
from .lattice import LatticeConfig, enumerate_partitions
from .measures import ModelParams, WeightTable, weight_table

__all__ = [
    "EigenSystem",
    "ResidualError",
    "JacobiError",
    "energy",
    "energy_q1",
    "build_eigensystem",
    "eigen_residuals",
    "jacobi_eigenvalues",
    "oracle_spectrum",
    "compare_spectra",
    "gram_matrix",
    "orthogonality_report",
    "max_offdiag",
    "completeness",
    "poincare_value",
    "min_gap",
    "DEGENERACY_GAP",
]

log = logging.getLogger(__name__)

RESIDUAL_TOL = 1e-9
DEGENERACY_GAP = 1e-8


class ResidualError(ArithmeticError):
    """Eigenvalue-equation residual above tolerance for some quantum numbers."""

    def __init__(self, message: str, kappas=()):
        super().__init__(message)
        self.kappas = list(kappas)


class JacobiError(RuntimeError):
    pass


def energy(xi, q: float) -> float:
    """``2 (1 - q) sum_j cos xi_j``."""
    return 2.0 * (1.0 - q) * float(np.sum(np.cos(np.asarray(xi, dtype=float))))


def energy_q1(xi) -> float:
    return 2.0 * float(np.sum(np.cos(np.asarray(xi, dtype=float))))


def poincare_value(params: ModelParams, m: int) -> float:
    """Value of every wave function at the origin: ``(alpha_+;q)_m (q;q)_m / (1-q)^m``."""
    from .measures import q_pochhammer

    q = params.q
    return q_pochhammer(params.alpha_plus, q, m) * q_pochhammer(q, q, m) / (1.0 - q) ** m


@dataclass(frozen=True)
class EigenSystem:
    """Bethe eigenpairs; row ``k`` of ``eigenvectors`` belongs to ``solutions[k]``."""

    cfg: LatticeConfig
    params: ModelParams
    solutions: list[BetheSolution] = field(repr=False)
    eigenvectors: np.ndarray = field(repr=False)
    operator: LatticeOperator = field(repr=False)
    residuals: np.ndarray = field(repr=False)

    @property
    def energies(self) -> np.ndarray:
        return np.array([s.energy for s in self.solutions])

    @property
    def weight(self) -> WeightTable:
        return self.operator.weight

    @property
    def gram(self) -> np.ndarray:
        return gram_matrix(self.eigenvectors, self.weight)


def eigen_residuals(op: LatticeOperator, vectors: np.ndarray, energies) -> np.ndarray:
    """``||M psi - E psi||_inf / ||psi||_inf`` for each row ``psi`` of ``vectors``."""
    energies = np.asarray(energies, dtype=float)
    applied = vectors @ op.matrix.T
    diff = applied - energies[:, None] * vectors
    return np.max(np.abs(diff), axis=1) / np.max(np.abs(vectors), axis=1)


def build_eigensystem(
    cfg: LatticeConfig,
    params: ModelParams,
    tol: float = DEFAULT_TOL,
    residual_tol: float = RESIDUAL_TOL,
) -> EigenSystem:
    """Solve the Bethe equations for every ``kappa`` and verify ``H psi = E psi``.

    Raises :class:`ResidualError` naming the offending ``kappa`` values when a
    relative residual exceeds ``residual_tol``.
    """
    op = build_toda(cfg, params)
    kappas = enumerate_partitions(cfg.transpose())
    sols = [solve_bethe(MorseProblem(cfg, params, kappa), tol) for kappa in kappas]
    vecs = np.array([wave_function(s.xi, cfg, params).values for s in sols])
    res = eigen_residuals(op, vecs, [s.energy for s in sols])
    bad = [str(s.kappa) for s, r in zip(sols, res) if not r <= residual_tol]
    if bad:
        raise ResidualError(
            f"eigenvalue residual above {residual_tol:g} for kappa in {bad}", bad
        )
    return EigenSystem(cfg, params, sols, vecs, op, res)


# -- oracle ------------------------------------------------------------------


def _off_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.sqrt(np.sum(off * off)))


def jacobi_eigenvalues(
    s: np.ndarray, rel_tol: float = 1e-13, max_sweeps: int = 100
) -> np.ndarray:
    """Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations, sorted ascending.

    Sweeps until the off-diagonal Frobenius norm is at most
    ``rel_tol * ||s||_F``.
    """
    a = np.array(s, dtype=float, copy=True)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("need a square matrix")
    if not np.allclose(a, a.T, rtol=0, atol=1e-12 * max(1.0, np.max(np.abs(a)))):
        raise ValueError("matrix is not symmetric")
    a = 0.5 * (a + a.T)
    dim = a.shape[0]
    scale = float(np.linalg.norm(a))
    target = rel_tol * scale
    for _ in range(max_sweeps):
        if _off_norm(a) <= target:
            return np.sort(np.diag(a))
        for p in range(dim - 1):
            for r in range(p + 1, dim):
                apr = a[p, r]
                if abs(apr) < 1e-300:
                    continue
                theta = (a[r, r] - a[p, p]) / (2.0 * apr)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1.0)) if theta != 0 else 1.0
                c = 1.0 / np.sqrt(t * t + 1.0)
                sn = t * c
                # A <- J^T A J with J the rotation in the (p, r) plane
                col_p = a[:, p].copy()
                col_r = a[:, r].copy()
                a[:, p] = c * col_p - sn * col_r
                a[:, r] = sn * col_p + c * col_r
                row_p = a[p, :].copy()
                row_r = a[r, :].copy()
                a[p, :] = c * row_p - sn * row_r
                a[r, :] = sn * row_p + c * row_r
                a[p, r] = a[r, p] = 0.0
    if _off_norm(a) <= target:
        return np.sort(np.diag(a))
    raise JacobiError(f"Jacobi did not converge in {max_sweeps} sweeps")


def oracle_spectrum(op: LatticeOperator) -> np.ndarray:
    """Sorted eigenvalues of ``D^(1/2) M D^(-1/2)`` from :func:`jacobi_eigenvalues`."""
    return jacobi_eigenvalues(symmetrize(op))


def compare_spectra(bethe_energies, oracle) -> float:
    """Largest difference after sorting both lists (degenerate values paired by order)."""
    a = np.sort(np.asarray(bethe_energies, dtype=float))
    b = np.sort(np.asarray(oracle, dtype=float))
    if a.shape != b.shape:
        raise ValueError(f"spectra have different sizes: {a.shape} vs {b.shape}")
    return float(np.max(np.abs(a - b)))


def min_gap(energies) -> float:
    e = np.sort(np.asarray(energies, dtype=float))
    return float(np.min(np.diff(e))) if len(e) > 1 else np.inf


# -- orthogonality and completeness ---------------------------------------------


def gram_matrix(vectors: np.ndarray, w: WeightTable | np.ndarray) -> np.ndarray:
    weights = w.values if isinstance(w, WeightTable) else np.asarray(w)
    return (vectors * weights[None, :]) @ vectors.T


def orthogonality_report(es: EigenSystem, w: WeightTable | None = None) -> np.ndarray:
    """Normalized inner products ``<psi_k, psi_l> / (||psi_k|| ||psi_l||)``.

    The diagonal is one; the off-diagonal entries vanish for orthogonal
    eigenfunctions.
    """
    g = gram_matrix(es.eigenvectors, es.weight if w is None else w)
    norms = np.sqrt(np.diag(g))
    return g / np.outer(norms, norms)


def max_offdiag(normalized_gram: np.ndarray, energies=None, gap: float = DEGENERACY_GAP) -> float:
    """Largest off-diagonal entry, restricted to pairs whose energies differ by more than ``gap``."""
    g = np.abs(np.array(normalized_gram, dtype=float))
    np.fill_diagonal(g, 0.0)
    if energies is not None:
        e = np.asarray(energies, dtype=float)
        g[np.abs(e[:, None] - e[None, :]) <= gap] = 0.0
    return float(np.max(g)) if g.size else 0.0


def completeness(vectors: np.ndarray, w: WeightTable | np.ndarray) -> tuple[float, float]:
    """Singular values of the weight-normalized eigenvector matrix.

    Rows are scaled to unit norm in the weighted inner product and columns by
    ``sqrt(w)``; returns ``(smallest, largest)`` singular value.
    """
    weights = w.values if isinstance(w, WeightTable) else np.asarray(w)
    scaled = vectors * np.sqrt(weights)[None, :]
    scaled = scaled / np.linalg.norm(scaled, axis=1, keepdims=True)
    sv = np.linalg.svd(scaled, compute_uv=False)
    return float(sv[-1]), float(sv[0])
