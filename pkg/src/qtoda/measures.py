"""Model parameters, q-shifted factorials and the lattice weights.

Three weight families define inner products on the lattice:

* ``toda``: perturbed q-multinomials on the ``(n, m)`` box,
* ``conjugate``: the same weights written on the transposed ``(m, n)`` box,
* ``multinomial``: the ``q -> 1`` limit, a two-parameter multinomial law.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from .lattice import LatticeConfig, Partition, enumerate_partitions, multiplicity

__all__ = [
    "ModelParams",
    "WeightTable",
    "q_pochhammer",
    "log_q_pochhammer",
    "toda_weight",
    "conjugate_weight",
    "multinomial_weight",
    "multinomial_rho",
    "multinomial_normalizer",
    "weight_table",
]

# switch to log-space products above this lattice extent
LOG_SPACE_THRESHOLD = 20


@dataclass(frozen=True)
class ModelParams:
    """Scale parameter ``q`` and the boundary roots ``p_pm``, ``q_pm``.

    The boundary couplings are ``alpha = p * q`` and ``beta = p + q`` on each
    end.  Zero values are admitted everywhere; only ``|x| >= 1`` is rejected.
    """

    q: float = 0.0
    p_plus: float = 0.0
    q_plus: float = 0.0
    p_minus: float = 0.0
    q_minus: float = 0.0

    def __post_init__(self) -> None:
        for name in ("q", "p_plus", "q_plus", "p_minus", "q_minus"):
            value = float(getattr(self, name))
            object.__setattr__(self, name, value)
            if not math.isfinite(value) or abs(value) >= 1.0:
                raise ValueError(f"{name} outside (-1,1): {value!r}")

    @property
    def alpha_plus(self) -> float:
        return self.p_plus * self.q_plus

    @property
    def beta_plus(self) -> float:
        return self.p_plus + self.q_plus

    @property
    def alpha_minus(self) -> float:
        return self.p_minus * self.q_minus

    @property
    def beta_minus(self) -> float:
        return self.p_minus + self.q_minus

    @property
    def boundary(self) -> tuple[float, float, float, float]:
        """``(p_plus, q_plus, p_minus, q_minus)``."""
        return (self.p_plus, self.q_plus, self.p_minus, self.q_minus)

    def with_q(self, q: float) -> ModelParams:
        return ModelParams(q, *self.boundary)

    def in_root_domain(self) -> bool:
        """Whether ``alpha_pm``, ``beta_pm`` satisfy the quadratic-root conditions.

        Checks ``alpha**2 < 1`` and ``4 alpha <= beta**2 <= (1 + alpha)**2``
        on both ends, which holds automatically for real roots in ``(-1, 1)``.
        """
        eps = 1e-14
        for a, b in ((self.alpha_plus, self.beta_plus), (self.alpha_minus, self.beta_minus)):
            if not a * a < 1:
                return False
            if not 4 * a - eps <= b * b <= (1 + a) ** 2 + eps:
                return False
        return True

    def as_dict(self) -> dict[str, float]:
        return {
            "q": self.q,
            "p_plus": self.p_plus,
            "q_plus": self.q_plus,
            "p_minus": self.p_minus,
            "q_minus": self.q_minus,
        }


def q_pochhammer(a: float, q: float, l: int) -> float:
    """``(a; q)_l = (1 - a)(1 - a q) ... (1 - a q**(l-1))``, equal to 1 for ``l = 0``."""
    if l < 0:
        raise ValueError("l must be nonnegative")
    out = 1.0
    qk = 1.0
    for _ in range(l):
        out *= 1.0 - a * qk
        qk *= q
    return out


def log_q_pochhammer(a: float, q: float, l: int) -> float:
    """``log (a; q)_l``; every factor must be positive."""
    if l < 0:
        raise ValueError("l must be nonnegative")
    out = 0.0
    qk = 1.0
    for _ in range(l):
        out += math.log1p(-a * qk)
        qk *= q
    return out


def _toda_from_gaps(gaps, params: ModelParams, m: int) -> float:
    """Weight from the gap vector ``(g_0, ..., g_n)`` that sums to ``m``.

    ``g_0`` is the number of empty sites next to the ``+`` end and ``g_n``
    the number of particles sitting at the ``-`` end.
    """
    q = params.q
    top, bottom = gaps[0], gaps[-1]
    if m > LOG_SPACE_THRESHOLD:
        log_w = (
            log_q_pochhammer(q, q, m)
            - log_q_pochhammer(params.alpha_plus, q, top)
            - log_q_pochhammer(params.alpha_minus, q, bottom)
            - sum(log_q_pochhammer(q, q, g) for g in gaps)
        )
        return math.exp(log_w)
    den = q_pochhammer(params.alpha_plus, q, top) * q_pochhammer(params.alpha_minus, q, bottom)
    for g in gaps:
        den *= q_pochhammer(q, q, g)
    w = q_pochhammer(q, q, m) / den
    if not w > 0:
        raise ValueError(f"nonpositive weight {w}; parameters outside the admissible domain")
    return w


def toda_weight(mu: Partition, params: ModelParams) -> float:
    """Weight of ``mu`` in the ``(n, m)`` box for the q-difference Toda inner product."""
    return _toda_from_gaps(mu.gaps(), params, mu.m)


def conjugate_weight(lam: Partition, params: ModelParams) -> float:
    """Weight of ``lam`` in the transposed ``(m, n)`` box, written through multiplicities.

    Equals ``toda_weight(mu)`` whenever ``lam == conjugate(mu)``.
    """
    n = lam.m
    m = lam.n
    gaps = [multiplicity(lam, i) for i in range(n + 1)]
    return _toda_from_gaps(gaps, params, m)


def multinomial_rho(n: int, alpha_plus: float, alpha_minus: float) -> np.ndarray:
    """Cell probabilities ``(rho_0, ..., rho_n)`` of the limiting multinomial law."""
    a = 1.0 / (1.0 - alpha_plus)
    b = 1.0 / (1.0 - alpha_minus)
    total = (n - 1) + a + b
    rho = np.full(n + 1, 1.0 / total)
    rho[0] = a / total
    rho[n] = b / total
    return rho


def multinomial_normalizer(n: int, m: int, alpha_plus: float, alpha_minus: float) -> float:
    """Closed-form total mass of the multinomial weights on the ``(n, m)`` box."""
    return ((n - 1) + 1.0 / (1.0 - alpha_plus) + 1.0 / (1.0 - alpha_minus)) ** m


def multinomial_weight(mu: Partition, params: ModelParams) -> float:
    """``q -> 1`` limit of :func:`toda_weight`.

    ``m! / ((1 - alpha_+)^(m - mu_1) (1 - alpha_-)^(mu_n) prod_i (mu_i - mu_{i+1})!)``
    """
    gaps = mu.gaps()
    m = mu.m
    ap, am = params.alpha_plus, params.alpha_minus
    if m > LOG_SPACE_THRESHOLD:
        log_w = (
            math.lgamma(m + 1)
            - gaps[0] * math.log1p(-ap)
            - gaps[-1] * math.log1p(-am)
            - sum(math.lgamma(g + 1) for g in gaps)
        )
        return math.exp(log_w)
    den = (1.0 - ap) ** gaps[0] * (1.0 - am) ** gaps[-1]
    for g in gaps:
        den *= math.factorial(g)
    return math.factorial(m) / den


_WEIGHT_FUNCS = {
    "toda": toda_weight,
    "conjugate": conjugate_weight,
    "multinomial": multinomial_weight,
}


@dataclass(frozen=True)
class WeightTable:
    """Weights tabulated over an enumerated lattice.

    ``values[k]`` belongs to ``points[k]``; the order matches
    :func:`~qtoda.lattice.enumerate_partitions` for ``cfg``.
    """

    kind: Literal["toda", "conjugate", "multinomial"]
    cfg: LatticeConfig
    points: tuple[Partition, ...]
    values: np.ndarray = field(repr=False)

    def __getitem__(self, mu: Partition) -> float:
        return float(self.values[self.points.index(mu)])

    def __len__(self) -> int:
        return len(self.points)

    def as_dict(self) -> dict[Partition, float]:
        return dict(zip(self.points, self.values.tolist()))


def weight_table(cfg: LatticeConfig, params: ModelParams, kind: str = "toda") -> WeightTable:
    """Tabulate a weight family over the lattice ``cfg``.

    For ``kind="conjugate"`` the table lives on ``cfg`` interpreted as the
    transposed box, i.e. pass ``LatticeConfig(m, n)``.
    """
    try:
        func = _WEIGHT_FUNCS[kind]
    except KeyError:
        raise ValueError(f"unknown weight kind {kind!r}") from None
    points = tuple(enumerate_partitions(cfg))
    values = np.array([func(mu, params) for mu in points], dtype=float)
    values.setflags(write=False)
    return WeightTable(kind, cfg, points, values)  # type: ignore[arg-type]
