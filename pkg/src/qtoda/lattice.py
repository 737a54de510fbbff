"""Configuration spaces of the chain: partitions inside an ``n x m`` box.

A point of the configuration space records the positions
``m >= mu_1 >= ... >= mu_n >= 0`` of ``n`` particles on the sites
``{0, ..., m}``.  Conjugation transposes the box and maps the particle
picture onto the occupation-number picture on ``{0, ..., n}``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb

import numpy as np

__all__ = [
    "LatticeConfig",
    "Partition",
    "enumerate_partitions",
    "conjugate",
    "multiplicity",
    "index_map",
    "parts_array",
]


@dataclass(frozen=True)
class LatticeConfig:
    """Box of ``n`` particles on the sites ``0..m``."""

    n: int
    m: int

    def __post_init__(self) -> None:
        if int(self.n) != self.n or int(self.m) != self.m:
            raise TypeError("n and m must be integers")
        if self.n < 1 or self.m < 1:
            raise ValueError(f"need n >= 1 and m >= 1, got n={self.n}, m={self.m}")

    @property
    def dim(self) -> int:
        return comb(self.n + self.m, self.n)

    def transpose(self) -> LatticeConfig:
        return LatticeConfig(self.m, self.n)


@dataclass(frozen=True, order=True)
class Partition:
    """A partition with at most ``len(parts)`` parts, each bounded by ``m``.

    ``parts`` has exactly ``n`` entries (zeros included); ``m`` is the
    largest admissible part, so the partition lives in the ``(n, m)`` box.
    """

    parts: tuple[int, ...]
    m: int

    def __post_init__(self) -> None:
        parts = tuple(int(p) for p in self.parts)
        object.__setattr__(self, "parts", parts)
        if not parts:
            raise ValueError("a partition needs at least one part")
        if parts[0] > self.m or parts[-1] < 0:
            raise ValueError(f"{parts} does not fit in the box with m={self.m}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"{parts} is not weakly decreasing")

    @property
    def n(self) -> int:
        return len(self.parts)

    @property
    def box(self) -> LatticeConfig:
        return LatticeConfig(self.n, self.m)

    def padded(self) -> tuple[int, ...]:
        """Parts with the fixed end particles ``mu_0 = m`` and ``mu_{n+1} = 0``."""
        return (self.m, *self.parts, 0)

    def gaps(self) -> tuple[int, ...]:
        """``(mu_0 - mu_1, ..., mu_n - mu_{n+1})``, length ``n + 1``."""
        p = self.padded()
        return tuple(p[i] - p[i + 1] for i in range(self.n + 1))

    def shifted(self, i: int, step: int) -> Partition | None:
        """Move particle ``i`` (1-based) by ``step``; ``None`` if it leaves the box."""
        parts = list(self.parts)
        parts[i - 1] += step
        p = (self.m, *parts, 0)
        if all(p[k] >= p[k + 1] for k in range(len(p) - 1)):
            return Partition(tuple(parts), self.m)
        return None

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, k):
        return self.parts[k]

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")"


@lru_cache(maxsize=None)
def _enumerate(n: int, m: int) -> tuple[Partition, ...]:
    out: list[Partition] = []

    def rec(prefix: list[int], bound: int) -> None:
        if len(prefix) == n:
            out.append(Partition(tuple(prefix), m))
            return
        for part in range(bound, -1, -1):
            prefix.append(part)
            rec(prefix, part)
            prefix.pop()

    rec([], m)
    return tuple(out)


def enumerate_partitions(cfg: LatticeConfig) -> list[Partition]:
    """All points of the ``(n, m)`` box in reverse-lexicographic order.

    The first element is ``(m, ..., m)`` and the last is ``(0, ..., 0)``.
    """
    return list(_enumerate(cfg.n, cfg.m))


def index_map(cfg: LatticeConfig) -> dict[Partition, int]:
    return {mu: k for k, mu in enumerate(_enumerate(cfg.n, cfg.m))}


def parts_array(cfg: LatticeConfig) -> np.ndarray:
    """Integer array of shape ``(dim, n)`` with the enumerated partitions as rows."""
    return np.array([mu.parts for mu in _enumerate(cfg.n, cfg.m)], dtype=int)


def conjugate(mu: Partition) -> Partition:
    """Transpose ``mu`` from the ``(n, m)`` box into the ``(m, n)`` box.

    The value ``i`` occurs ``mu_i - mu_{i+1}`` times in the result, with
    ``mu_0 = m`` and ``mu_{n+1} = 0``.
    """
    gaps = mu.gaps()
    parts: list[int] = []
    for i in range(mu.n, -1, -1):
        parts.extend([i] * gaps[i])
    return Partition(tuple(parts), mu.n)


def multiplicity(lam: Partition, i: int) -> int:
    """Number of parts of ``lam`` equal to ``i``, for ``0 <= i <= lam.m``."""
    if not 0 <= i <= lam.m:
        raise ValueError(f"multiplicity index {i} outside 0..{lam.m}")
    return sum(1 for part in lam.parts if part == i)
