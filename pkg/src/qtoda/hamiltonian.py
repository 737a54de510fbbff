"""Dense matrices of the q-difference Toda hamiltonian and its ``q -> 1`` limit.

Rows and columns are indexed by :func:`~qtoda.lattice.enumerate_partitions`.
``(M psi)[mu] = sum_nu M[mu, nu] psi[nu]``, so the hop ``mu -> mu + e_i``
sits in column ``mu + e_i`` of row ``mu``.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .lattice import LatticeConfig, enumerate_partitions, index_map
from .measures import ModelParams, WeightTable, weight_table

__all__ = [
    "LatticeOperator",
    "build_toda",
    "build_toda_q1",
    "inner_product",
    "check_self_adjoint",
    "symmetrize",
    "matrix_csv",
    "write_matrix_csv",
]


@dataclass(frozen=True)
class LatticeOperator:
    cfg: LatticeConfig
    matrix: np.ndarray = field(repr=False)
    weight: WeightTable = field(repr=False)
    label: str = "toda"

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def apply(self, psi: np.ndarray) -> np.ndarray:
        return self.matrix @ psi


def _assemble(cfg: LatticeConfig, diag, up, down) -> np.ndarray:
    points = enumerate_partitions(cfg)
    index = index_map(cfg)
    n = cfg.n
    mat = np.zeros((len(points), len(points)))
    for row, mu in enumerate(points):
        p = mu.padded()
        mat[row, row] = diag(p)
        for i in range(1, n + 1):
            target = mu.shifted(i, +1)
            if target is not None:
                mat[row, index[target]] = up(p, i)
            target = mu.shifted(i, -1)
            if target is not None:
                mat[row, index[target]] = down(p, i)
    mat.setflags(write=False)
    return mat


def build_toda(cfg: LatticeConfig, params: ModelParams) -> LatticeOperator:
    """Matrix of the q-difference Toda hamiltonian on the ``(n, m)`` box."""
    q = params.q
    ap, bp = params.alpha_plus, params.beta_plus
    am, bm = params.alpha_minus, params.beta_minus
    m, n = cfg.m, cfg.n

    def diag(p):
        return bp * (1.0 - q ** (m - p[1])) + bm * (1.0 - q ** p[n])

    def up(p, i):
        coef = 1.0 - q ** (p[i - 1] - p[i])
        if i == 1:
            coef *= 1.0 - ap * q ** (m - p[1] - 1)
        return coef

    def down(p, i):
        coef = 1.0 - q ** (p[i] - p[i + 1])
        if i == n:
            coef *= 1.0 - am * q ** (p[n] - 1)
        return coef

    mat = _assemble(cfg, diag, up, down)
    return LatticeOperator(cfg, mat, weight_table(cfg, params, "toda"), "toda")


def build_toda_q1(cfg: LatticeConfig, params: ModelParams) -> LatticeOperator:
    """The ``q -> 1`` hamiltonian with coefficients linear in the gaps.

    Equals ``lim build_toda(...).matrix / (1 - q)``; its inner product is the
    multinomial weight.
    """
    ap, bp = params.alpha_plus, params.beta_plus
    am, bm = params.alpha_minus, params.beta_minus
    m, n = cfg.m, cfg.n

    def diag(p):
        return bp * (m - p[1]) + bm * p[n]

    def up(p, i):
        return (1.0 - ap if i == 1 else 1.0) * (p[i - 1] - p[i])

    def down(p, i):
        return (1.0 - am if i == n else 1.0) * (p[i] - p[i + 1])

    mat = _assemble(cfg, diag, up, down)
    return LatticeOperator(cfg, mat, weight_table(cfg, params, "multinomial"), "toda_q1")


def inner_product(psi, phi, w: WeightTable | np.ndarray) -> float:
    """``sum_mu psi(mu) phi(mu) w_mu`` for real-valued lattice functions."""
    weights = w.values if isinstance(w, WeightTable) else np.asarray(w)
    psi = np.asarray(psi)
    phi = np.asarray(phi)
    if psi.shape != weights.shape or phi.shape != weights.shape:
        raise ValueError(
            f"dimension mismatch: psi {psi.shape}, phi {phi.shape}, weights {weights.shape}"
        )
    return float(np.sum(psi * phi * weights))


def check_self_adjoint(op: LatticeOperator) -> float:
    """Largest ``|w_mu M[mu, nu] - w_nu M[nu, mu]|`` over the lattice."""
    wm = op.weight.values[:, None] * op.matrix
    return float(np.max(np.abs(wm - wm.T)))


def symmetrize(op: LatticeOperator) -> np.ndarray:
    """``D^(1/2) M D^(-1/2)`` with ``D = diag(weights)``; symmetric for self-adjoint ``op``."""
    s = np.sqrt(op.weight.values)
    return s[:, None] * op.matrix / s[None, :]


def matrix_csv(op: LatticeOperator) -> str:
    """Row-major CSV text; the header row lists the partitions in matrix order."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    points = op.weight.points
    writer.writerow(["row"] + [str(mu) for mu in points])
    for mu, row in zip(points, op.matrix):
        writer.writerow([str(mu)] + [format(x, ".17g") for x in row])
    return buf.getvalue()


def write_matrix_csv(op: LatticeOperator, path: str | Path) -> None:
    Path(path).write_text(matrix_csv(op))
