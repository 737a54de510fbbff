"""Bethe Ansatz spectral analysis of an open q-difference Toda chain.

The chain has ``n`` particles on the sites ``0..m`` with two-parameter
interactions at both ends.  Its eigenfunctions are hyperoctahedral
Hall-Littlewood polynomials evaluated at the minima of Yang-Yang Morse
functions.
"""
from .bethe import (
    BetheSolution,
    MorseProblem,
    gradient_flow,
    k_bounds,
    morse_grad,
    morse_hess,
    morse_value,
    solve_bethe,
    v_integral,
)
from .hall_littlewood import (
    c_function,
    hl_factorized_q1,
    hl_polynomial,
    hl_univariate_q1,
    wave_function,
    wave_function_q1,
)
from .hamiltonian import (
    LatticeOperator,
    build_toda,
    build_toda_q1,
    check_self_adjoint,
    inner_product,
)
from .lattice import LatticeConfig, Partition, conjugate, enumerate_partitions, multiplicity
from .measures import (
    ModelParams,
    WeightTable,
    conjugate_weight,
    multinomial_weight,
    q_pochhammer,
    toda_weight,
    weight_table,
)
from .q1_limit import aw_roots, bs_polynomial, q1_bethe_solution, verify_q1_eigensystem
from .spectrum import (
    EigenSystem,
    build_eigensystem,
    energy,
    oracle_spectrum,
    orthogonality_report,
)

__version__ = "0.1.0"
