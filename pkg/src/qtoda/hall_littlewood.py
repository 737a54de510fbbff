"""Hyperoctahedral Hall-Littlewood polynomials and Bethe Ansatz wave functions.

``R_lambda(xi)`` is a sum over the signed permutations ``w`` of
``C(w xi) exp(i <w xi, lambda>)``.  All ``m! 2^m`` signed permutations are
generated once per ``m`` and the sum is evaluated for every ``lambda`` of a
lattice in one matrix product.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .lattice import LatticeConfig, Partition, conjugate, enumerate_partitions
from .measures import ModelParams

__all__ = [
    "MAX_M",
    "SingularSpectralPoint",
    "ImaginaryResidueError",
    "WaveFunction",
    "signed_permutations",
    "c_function",
    "hl_polynomial",
    "hl_table",
    "wave_function",
    "hl_univariate_q1",
    "hl_factorized_q1",
    "wave_function_q1",
    "wall_distance",
]

MAX_M = 8
WALL_TOL = 1e-12
IMAG_TOL = 1e-10


class SingularSpectralPoint(ValueError):
    """A c-function denominator is numerically zero (``xi`` on a wall)."""


class ImaginaryResidueError(ArithmeticError):
    """The complex sum left an imaginary part above tolerance."""


@lru_cache(maxsize=None)
def signed_permutations(m: int) -> tuple[np.ndarray, np.ndarray]:
    """All signed permutations of ``m`` letters.

    Returns ``(perms, signs)`` of shape ``(m! 2^m, m)`` such that the
    permuted point is ``signs * xi[perms]``.
    """
    if not 1 <= m <= MAX_M:
        raise ValueError(f"m must be in 1..{MAX_M}, got {m}")
    perms = np.array(list(itertools.permutations(range(m))), dtype=int)
    signs = np.array(list(itertools.product((1, -1), repeat=m)), dtype=float)
    P = np.repeat(perms, len(signs), axis=0)
    S = np.tile(signs, (len(perms), 1))
    P.setflags(write=False)
    S.setflags(write=False)
    return P, S


def wall_distance(xi) -> float:
    """Smallest ``|1 - exp(-i x)|`` over the arguments ``2 xi_j``, ``xi_j +- xi_k``."""
    xi = np.asarray(xi, dtype=float)
    args = [2 * xi]
    j, k = np.triu_indices(len(xi), 1)
    args += [xi[j] - xi[k], xi[j] + xi[k]]
    x = np.concatenate(args)
    return float(np.min(np.abs(1 - np.exp(-1j * x)))) if x.size else np.inf


def _c_values(points: np.ndarray, params: ModelParams) -> np.ndarray:
    """c-function at each row of ``points`` (shape ``(N, m)``)."""
    q = params.q
    ap, bp = params.alpha_plus, params.beta_plus
    z = np.exp(-1j * points)
    den1 = 1 - z * z
    if np.min(np.abs(den1)) < WALL_TOL:
        raise SingularSpectralPoint("2 xi_j on a wall of the regular set")
    out = np.prod((1 - bp * z + ap * z * z) / den1, axis=1)
    m = points.shape[1]
    if m > 1:
        j, k = np.triu_indices(m, 1)
        zm = z[:, j] / z[:, k]  # exp(-i (xi_j - xi_k))
        zp = z[:, j] * z[:, k]  # exp(-i (xi_j + xi_k))
        den = (1 - zm) * (1 - zp)
        if np.min(np.abs(1 - zm)) < WALL_TOL or np.min(np.abs(1 - zp)) < WALL_TOL:
            raise SingularSpectralPoint("xi_j +- xi_k on a wall of the regular set")
        out = out * np.prod((1 - q * zm) * (1 - q * zp) / den, axis=1)
    return out


def c_function(xi, params: ModelParams) -> complex:
    """The c-function ``C(xi_1, ..., xi_m)`` of the BC_m Hall-Littlewood sum."""
    xi = np.atleast_1d(np.asarray(xi, dtype=float))
    return complex(_c_values(xi[None, :], params)[0])


def _terms(xi: np.ndarray, params: ModelParams) -> tuple[np.ndarray, np.ndarray]:
    P, S = signed_permutations(len(xi))
    wxi = S * xi[P]
    return wxi, _c_values(wxi, params)


def _real_part(values: np.ndarray, scale: np.ndarray) -> np.ndarray:
    resid = np.abs(values.imag)
    bad = resid > IMAG_TOL * np.maximum(scale, 1.0)
    if np.any(bad):
        worst = float(np.max(resid / np.maximum(scale, 1.0)))
        raise ImaginaryResidueError(f"imaginary residue {worst:.3e} exceeds {IMAG_TOL}")
    return values.real


def hl_table(lams: np.ndarray, xi, params: ModelParams) -> np.ndarray:
    """``R_lambda(xi)`` for each row ``lambda`` of the integer array ``lams``."""
    xi = np.asarray(xi, dtype=float)
    lams = np.atleast_2d(np.asarray(lams))
    if lams.shape[1] != len(xi):
        raise ValueError("partition length must equal the number of spectral variables")
    wxi, cvals = _terms(xi, params)
    phases = np.exp(1j * (lams @ wxi.T))
    values = phases @ cvals
    scale = np.full(len(lams), np.sum(np.abs(cvals)))
    return _real_part(values, scale)


def hl_polynomial(lam: Partition, xi, params: ModelParams) -> float:
    """Macdonald's hyperoctahedral Hall-Littlewood polynomial ``R_lambda(xi)``.

    ``lam`` lives in the ``(m, n)`` box and ``xi`` has ``m`` entries.
    Raises :class:`SingularSpectralPoint` on a wall of the regular set.
    """
    return float(hl_table(np.array([lam.parts]), xi, params)[0])


@dataclass(frozen=True)
class WaveFunction:
    """Bethe Ansatz wave function tabulated over the ``(n, m)`` box."""

    cfg: LatticeConfig
    xi: np.ndarray = field(repr=False)
    values: np.ndarray = field(repr=False)

    @property
    def origin_value(self) -> float:
        # (0^n) is enumerated last
        return float(self.values[-1])

    def __getitem__(self, mu: Partition) -> float:
        return float(self.values[enumerate_partitions(self.cfg).index(mu)])


def _conjugate_parts(cfg: LatticeConfig) -> np.ndarray:
    return np.array([conjugate(mu).parts for mu in enumerate_partitions(cfg)], dtype=int)


def wave_function(xi, cfg: LatticeConfig, params: ModelParams) -> WaveFunction:
    """``psi_xi(mu) = R_{mu'}(xi)`` for every ``mu`` in the ``(n, m)`` box."""
    xi = np.asarray(xi, dtype=float)
    if len(xi) != cfg.m:
        raise ValueError(f"xi needs {cfg.m} entries, got {len(xi)}")
    values = hl_table(_conjugate_parts(cfg), xi, params)
    return WaveFunction(cfg, xi, values)


# -- q -> 1 -----------------------------------------------------------------


def _univariate_table(ls: np.ndarray, theta: np.ndarray, params: ModelParams) -> np.ndarray:
    """``R_l(theta)`` on the outer grid ``ls x theta``."""
    ap, bp = params.alpha_plus, params.beta_plus
    theta = np.asarray(theta, dtype=float)
    z = np.exp(-1j * theta)
    den = 1 - z * z
    if np.min(np.abs(den)) < WALL_TOL:
        raise SingularSpectralPoint("theta in pi Z")
    c = (1 - bp * z + ap * z * z) / den
    phase = np.exp(1j * np.outer(ls, theta))
    values = c[None, :] * phase
    # the two terms are complex conjugates of each other
    return 2.0 * values.real


def hl_univariate_q1(l: int, theta: float, params: ModelParams) -> float:
    """Univariate ``q = 1`` Hall-Littlewood polynomial ``R_l(theta)``.

    Only the ``+`` boundary couplings enter.  ``theta`` must avoid ``pi Z``.
    """
    return float(_univariate_table(np.array([l]), np.array([theta]), params)[0, 0])


def _factorized(lams: np.ndarray, xi: np.ndarray, params: ModelParams) -> np.ndarray:
    m = len(xi)
    n_max = int(lams.max()) if lams.size else 0
    table = _univariate_table(np.arange(n_max + 1), xi, params)  # (l, j)
    out = np.zeros(len(lams))
    cols = np.arange(m)
    for perm in itertools.permutations(range(m)):
        # prod_j R_{lam_j}(xi_{perm(j)})
        out += np.prod(table[lams, np.array(perm)[cols]], axis=1)
    return out


def hl_factorized_q1(lam: Partition, xi, params: ModelParams) -> float:
    """``q -> 1`` limit of :func:`hl_polynomial`: ``sum_sigma prod_j R_{lam_j}(xi_sigma(j))``."""
    xi = np.asarray(xi, dtype=float)
    if len(xi) != lam.n:
        raise ValueError("partition length must equal the number of spectral variables")
    return float(_factorized(np.array([lam.parts]), xi, params)[0])


def wave_function_q1(xi, cfg: LatticeConfig, params: ModelParams) -> WaveFunction:
    """Factorized ``q -> 1`` wave function ``mu -> R~_{mu'}(xi)``.

    Valid for repeated entries of ``xi``; only ``xi_j`` in ``pi Z`` is excluded.
    """
    xi = np.asarray(xi, dtype=float)
    if len(xi) != cfg.m:
        raise ValueError(f"xi needs {cfg.m} entries, got {len(xi)}")
    return WaveFunction(cfg, xi, _factorized(_conjugate_parts(cfg), xi, params))
