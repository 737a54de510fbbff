from math import comb

import pytest
from hypothesis import given, strategies as st

from qtoda.lattice import (
    LatticeConfig,
    Partition,
    conjugate,
    enumerate_partitions,
    index_map,
    multiplicity,
)


def test_enumerate_2_2():
    pts = enumerate_partitions(LatticeConfig(2, 2))
    assert {p.parts for p in pts} == {(0, 0), (1, 0), (1, 1), (2, 0), (2, 1), (2, 2)}
    assert len(pts) == 6


def test_enumerate_1_1():
    assert [p.parts for p in enumerate_partitions(LatticeConfig(1, 1))] == [(1,), (0,)]


def test_enumerate_3_4_count():
    assert len(enumerate_partitions(LatticeConfig(3, 4))) == 35


def test_enumeration_is_reverse_lexicographic():
    pts = [p.parts for p in enumerate_partitions(LatticeConfig(3, 3))]
    assert pts == sorted(pts, reverse=True)
    assert pts[0] == (3, 3, 3) and pts[-1] == (0, 0, 0)


@pytest.mark.parametrize("n", range(1, 9))
@pytest.mark.parametrize("m", range(1, 9))
def test_count_is_binomial(n, m):
    cfg = LatticeConfig(n, m)
    pts = enumerate_partitions(cfg)
    assert len(pts) == comb(n + m, n) == cfg.dim
    assert len(set(pts)) == len(pts)
    assert len(index_map(cfg)) == len(pts)


@pytest.mark.parametrize(
    "mu, expected",
    [((2, 1), (2, 1)), ((2, 0), (1, 1)), ((0, 0), (0, 0)), ((2, 2), (2, 2))],
)
def test_conjugate_examples(mu, expected):
    assert conjugate(Partition(mu, 2)).parts == expected


def test_conjugate_of_zero_changes_length():
    mu = Partition((0, 0, 0), 5)
    lam = conjugate(mu)
    assert lam.parts == (0,) * 5 and lam.m == 3


@pytest.mark.parametrize("n, m", [(1, 1), (2, 3), (3, 2), (4, 3), (5, 5)])
def test_conjugation_is_a_bijection(n, m):
    image = {conjugate(mu) for mu in enumerate_partitions(LatticeConfig(n, m))}
    assert image == set(enumerate_partitions(LatticeConfig(m, n)))


def test_multiplicity_examples():
    lam = Partition((2, 1, 0, 0), 2)
    assert multiplicity(lam, 0) == 2
    n, m = 3, 4
    assert multiplicity(Partition((n,) * m, n), n) == m
    with pytest.raises(ValueError):
        multiplicity(lam, 3)


@st.composite
def boxed_partitions(draw):
    n = draw(st.integers(1, 8))
    m = draw(st.integers(1, 8))
    parts = sorted(draw(st.lists(st.integers(0, m), min_size=n, max_size=n)), reverse=True)
    return Partition(tuple(parts), m)


@given(boxed_partitions())
def test_conjugate_multiplicities_and_involution(mu):
    lam = conjugate(mu)
    p = mu.padded()
    assert lam.n == mu.m and lam.m == mu.n
    for i in range(mu.n + 1):
        assert multiplicity(lam, i) == p[i] - p[i + 1]
    assert sum(multiplicity(lam, i) for i in range(mu.n + 1)) == mu.m
    assert conjugate(lam) == mu


def test_invalid_inputs():
    with pytest.raises(ValueError):
        LatticeConfig(0, 2)
    with pytest.raises(ValueError):
        Partition((1, 2), 3)
    with pytest.raises(ValueError):
        Partition((4, 0), 3)


def test_shifted_respects_box():
    mu = Partition((2, 1), 2)
    assert mu.shifted(1, +1) is None
    assert mu.shifted(2, +1).parts == (2, 2)
    assert mu.shifted(1, -1).parts == (1, 1)
    assert Partition((1, 1), 2).shifted(1, -1) is None
