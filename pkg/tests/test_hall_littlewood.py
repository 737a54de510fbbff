import cmath
import itertools
import math

import numpy as np
import pytest

from qtoda.hall_littlewood import (
    SingularSpectralPoint,
    c_function,
    hl_factorized_q1,
    hl_polynomial,
    hl_univariate_q1,
    signed_permutations,
    wall_distance,
    wave_function,
)
from qtoda.lattice import LatticeConfig, Partition
from qtoda.measures import ModelParams
from qtoda.spectrum import poincare_value

P = ModelParams(0.3, 0.2, 0.2, 0.2, 0.2)
XI = (1.9, 0.7)


def _reference_c(x, p):
    """Term-by-term c-function with scalar complex arithmetic."""
    val = 1
    for xj in x:
        z = cmath.exp(-1j * xj)
        val *= (1 - p.beta_plus * z + p.alpha_plus * z * z) / (1 - z * z)
    for j, k in itertools.combinations(range(len(x)), 2):
        for s in (x[j] - x[k], x[j] + x[k]):
            z = cmath.exp(-1j * s)
            val *= (1 - p.q * z) / (1 - z)
    return val


def _reference_hl(lam, x, p):
    total = 0
    for perm in itertools.permutations(range(len(x))):
        for signs in itertools.product((1, -1), repeat=len(x)):
            wx = [s * x[i] for s, i in zip(signs, perm)]
            total += _reference_c(wx, p) * cmath.exp(1j * sum(l * y for l, y in zip(lam, wx)))
    return total


def test_signed_permutation_count():
    for m in range(1, 5):
        P_, S_ = signed_permutations(m)
        assert len(P_) == math.factorial(m) * 2**m
        assert len({tuple(s * p) for p, s in zip(P_ + 1, S_)}) == len(P_)


def test_c_function_frozen():
    c = c_function(XI, P)
    assert c.real == pytest.approx(0.14598919137770563613, abs=1e-15)
    assert c.imag == pytest.approx(-0.12372021690463889378, abs=1e-15)


@pytest.mark.parametrize(
    "lam, expected",
    [((1, 0), 0.348581031208291207636), ((2, 1), -0.799233251149956362738), ((0, 0), 1.233024)],
)
def test_hl_frozen(lam, expected):
    assert hl_polynomial(Partition(lam, 2), XI, P) == pytest.approx(expected, rel=1e-13)


def test_poincare_value_frozen():
    assert poincare_value(P, 2) == pytest.approx(1.233024, rel=1e-15)


@pytest.mark.parametrize("lam", [(0, 0, 0), (1, 0, 0), (2, 2, 1), (3, 1, 0), (3, 3, 3)])
def test_against_scalar_reference(lam, params):
    x = [2.3, 1.1, 0.4]
    val = hl_polynomial(Partition(lam, 3), x, params)
    ref = _reference_hl(lam, x, params)
    assert abs(ref.imag) < 1e-10 * max(1, abs(ref))
    assert val == pytest.approx(ref.real, rel=1e-11, abs=1e-11)


def test_invariant_under_signed_permutations(rng):
    lam = Partition((2, 1, 1), 3)
    x = np.array([2.1, 1.3, 0.5])
    base = hl_polynomial(lam, x, P)
    for _ in range(10):
        y = rng.permutation(x) * rng.choice([-1, 1], 3)
        assert hl_polynomial(lam, y, P) == pytest.approx(base, rel=1e-12)


def test_one_variable_three_term_recurrence(params):
    # R_{l+1} + R_{l-1} = 2 cos(x) R_l for l >= 1
    x = 1.234
    r = [hl_polynomial(Partition((l,), 6), [x], params) for l in range(7)]
    for l in range(1, 6):
        assert r[l + 1] + r[l - 1] == pytest.approx(2 * math.cos(x) * r[l], abs=1e-12)


def test_polynomial_degree_in_cosines():
    # R_lambda is a polynomial in cos x of degree lambda_1 in each variable
    lam = Partition((2, 1), 3)
    y = 0.8

    def f(c):
        return hl_polynomial(lam, [y, math.acos(c)], P)

    cs = np.linspace(-0.6, 0.6, 7)
    vals = np.array([f(c) for c in cs])
    coef = np.polyfit(cs, vals, 4)
    np.testing.assert_allclose(coef[:2], 0, atol=1e-9)
    assert abs(coef[2]) > 1e-3


def test_singular_point_raises():
    with pytest.raises(SingularSpectralPoint):
        hl_polynomial(Partition((1, 0), 2), [1.0, 1.0], P)
    with pytest.raises(SingularSpectralPoint):
        hl_polynomial(Partition((1,), 2), [0.0], P)
    assert wall_distance([1.0, 1.0]) == pytest.approx(0.0, abs=1e-15)


def test_wave_function_origin_is_poincare(params):
    cfg = LatticeConfig(2, 3)
    psi = wave_function([2.5, 1.4, 0.3], cfg, params)
    assert psi.origin_value == pytest.approx(poincare_value(params, 3), rel=1e-11)
    assert psi[Partition((0, 0), 3)] == psi.origin_value


def test_univariate_q1_frozen():
    assert hl_univariate_q1(1, math.pi / 2, P) == pytest.approx(-0.4, abs=1e-15)
    assert hl_univariate_q1(2, 1.1, P) == pytest.approx(-0.499879131651153327265, rel=1e-14)


def test_factorized_is_q_to_one_limit():
    base = ModelParams(0.0, 0.3, 0.2, -0.2, 0.1)
    x = [2.2, 1.0]
    lam = Partition((2, 1), 3)
    lim = hl_factorized_q1(lam, x, base)
    errs = [abs(hl_polynomial(lam, x, base.with_q(1 - e)) - lim) for e in (1e-3, 1e-4)]
    assert errs[1] < errs[0] / 5 and errs[1] < 1e-2


def test_factorized_allows_repeated_entries():
    v = hl_factorized_q1(Partition((1, 0), 2), [1.0, 1.0], P)
    r0, r1 = hl_univariate_q1(0, 1.0, P), hl_univariate_q1(1, 1.0, P)
    assert v == pytest.approx(2 * r0 * r1, rel=1e-14)
