import numpy as np
import pytest

from qtoda.hamiltonian import (
    build_toda,
    build_toda_q1,
    check_self_adjoint,
    inner_product,
    matrix_csv,
    symmetrize,
    write_matrix_csv,
)
from qtoda.lattice import LatticeConfig, enumerate_partitions
from qtoda.measures import ModelParams


def test_one_particle_one_gap_by_hand():
    p = ModelParams(0.3, 0.5, 0.2, -0.4, 0.6)
    q, ap, am, bp, bm = p.q, p.alpha_plus, p.alpha_minus, p.beta_plus, p.beta_minus
    op = build_toda(LatticeConfig(1, 1), p)
    # rows and columns ordered (1), (0)
    expected = np.array(
        [
            [bm * (1 - q), (1 - am) * (1 - q)],
            [(1 - ap) * (1 - q), bp * (1 - q)],
        ]
    )
    np.testing.assert_allclose(op.matrix, expected, atol=1e-16)
    np.testing.assert_allclose(op.weight.values, [1 / (1 - am), 1 / (1 - ap)], rtol=1e-15)


def test_q_zero_hops_are_zero_one():
    p = ModelParams(0.0, 0.3, 0.1, 0.2, -0.5)
    op = build_toda(LatticeConfig(2, 3), p)
    off = op.matrix - np.diag(np.diag(op.matrix))
    vals = set(np.round(off[off != 0], 14))
    assert vals <= {1.0, round(1 - p.alpha_plus, 14), round(1 - p.alpha_minus, 14)}


def test_row_sums_at_schur_point():
    # at q = alpha = beta = 0 the diagonal vanishes and H is the graph adjacency
    op = build_toda(LatticeConfig(2, 2), ModelParams())
    assert np.all(np.diag(op.matrix) == 0)
    np.testing.assert_array_equal(op.matrix, op.matrix.T)


@pytest.mark.parametrize("n, m", [(1, 1), (2, 2), (2, 3), (3, 2), (4, 3)])
def test_self_adjoint(n, m, params):
    op = build_toda(LatticeConfig(n, m), params)
    assert check_self_adjoint(op) <= 1e-12 * np.max(np.abs(op.matrix))
    s = symmetrize(op)
    np.testing.assert_allclose(s, s.T, atol=1e-13)


@pytest.mark.parametrize("n, m", [(1, 2), (2, 3), (3, 3)])
def test_q1_operator_is_limit(n, m):
    base = ModelParams(0.0, 0.4, -0.1, 0.3, 0.2)
    lim = build_toda_q1(LatticeConfig(n, m), base)
    for eps in (1e-5, 1e-6):
        op = build_toda(LatticeConfig(n, m), base.with_q(1 - eps))
        np.testing.assert_allclose(op.matrix / eps, lim.matrix, atol=50 * eps * m * m)
    assert check_self_adjoint(lim) <= 1e-12 * np.max(np.abs(lim.matrix))


def test_inner_product_symmetry(rng, params):
    op = build_toda(LatticeConfig(3, 2), params)
    f, g = rng.standard_normal((2, op.dim))
    assert inner_product(op.apply(f), g, op.weight) == pytest.approx(
        inner_product(f, op.apply(g), op.weight), rel=1e-12, abs=1e-12
    )
    with pytest.raises(ValueError):
        inner_product(f[:-1], g, op.weight)


def test_matrix_csv(tmp_path):
    op = build_toda(LatticeConfig(2, 2), ModelParams(0.3, 0.2, 0.2, 0.2, 0.2))
    text = matrix_csv(op)
    lines = text.strip().split("\n")
    assert len(lines) == 7
    assert lines[0].split(",")[0] == "row"
    assert lines[0].count("(") == 6
    body = np.array([[float(x) for x in l.rsplit('"', 1)[-1].lstrip(",").split(",")] for l in lines[1:]])
    np.testing.assert_array_equal(body, op.matrix)
    path = tmp_path / "m.csv"
    write_matrix_csv(op, path)
    assert path.read_text() == text
