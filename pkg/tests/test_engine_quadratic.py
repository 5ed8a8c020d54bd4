import numpy as np
import pytest

from mgsim import circuits, sampling
from mgsim.engine_quadratic import (FAST_PATH_THRESHOLD, _accumulate_transfer,
                                    _fast_expectation, _observable_coeff_matrix,
                                    gate_transfer, heisenberg_observable, simulate)
from mgsim.errors import DimensionError
from mgsim.exponents import compile_u1, raw_exponent
from mgsim.jw import EXTRA_LINE, PARITY, JwFamily
from mgsim.oracle import INVERSE, expectation_heisenberg
from mgsim.pauli import ProductState, expectation

H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)


def test_zero_exponent_transfer():
    t = gate_transfer(raw_exponent(2))
    assert np.allclose(t.K, np.eye(5))
    assert t.det_factor == 1


def test_transfer_is_orthogonal(rng):
    # K^T = K^-1 holds for any antisymmetric exponent; complex exponents can
    # make ||K|| large, so the check is relative to ||K||^2
    for _ in range(20):
        g = raw_exponent(3, a={(1, 4): complex(rng.normal(), rng.normal())},
                         b={2: complex(rng.normal(), rng.normal())})
        K = gate_transfer(g).K
        scale = max(1.0, np.linalg.norm(K) ** 2)
        assert np.linalg.norm(K @ K.T - np.eye(7)) < 1e-9 * scale


def test_empty_circuit():
    state = ProductState.computational([0, 0, 0])
    res = simulate([], state, 2)
    assert res.p0 == 1.0 and res.p1 == 0.0
    assert res.expectation == 1.0


def test_hadamard_population():
    state = ProductState.computational([0, 0])
    res = simulate([compile_u1(H, 2)], state, 1)
    assert abs(res.p0 - 0.5) < 1e-12


def test_measured_line_bounds():
    state = ProductState.computational([0, 0])
    with pytest.raises(DimensionError):
        simulate([], state, 3)


def test_matches_oracle(rng):
    for _ in range(30):
        n = int(rng.integers(1, 7))
        depth = int(rng.integers(0, 12))
        circ = sampling.random_circuit(n, depth, rng, unitary=bool(rng.integers(0, 2)))
        gates = circuits.compile(circ)
        state = circ.input_state()
        ref = expectation_heisenberg(gates, state, circ.k, INVERSE)
        got = simulate(gates, state, circ.k, unitary=None).expectation
        assert abs(got - ref) < 1e-9


def test_c0_modes_agree(rng):
    for _ in range(10):
        n = int(rng.integers(2, 6))
        circ = sampling.random_circuit(n, 6, rng, unitary=False)
        gates = circuits.compile(circ)
        state = circ.input_state()
        a = simulate(gates, state, circ.k, c0_mode=PARITY).expectation
        b = simulate(gates, state, circ.k, c0_mode=EXTRA_LINE).expectation
        assert abs(a - b) < 1e-10


def test_fast_path_matches_sum_path(rng):
    for trial in range(10):
        n = int(rng.integers(2, 8))
        circ = sampling.random_circuit(n, 8, rng, unitary=bool(trial % 2),
                                       computational_input=bool(trial % 3 == 0))
        gates = circuits.compile(circ)
        state = circ.input_state()
        K = _accumulate_transfer(gates, n)
        B = _observable_coeff_matrix(K, circ.k, n)
        slow = simulate(gates, state, circ.k).expectation  # n < threshold: sum path
        assert n <= FAST_PATH_THRESHOLD
        fast = _fast_expectation(B, state)
        assert abs(slow - fast) < 1e-10


def test_large_n_uses_fast_path(rng):
    n = FAST_PATH_THRESHOLD + 10
    circ = sampling.random_circuit(n, 30, rng, classes=("gvw", "diag", "exp"))
    gates = circuits.compile(circ)
    res = simulate(gates, circ.input_state(), circ.k, unitary=True)
    assert res.p0 is not None and 0 <= res.p0 <= 1 + 1e-9


def test_heisenberg_observable_expectation(rng):
    n = 4
    circ = sampling.random_circuit(n, 5, rng)
    gates = circuits.compile(circ)
    fam = JwFamily(n, PARITY)
    obs = heisenberg_observable(gates, circ.k, fam)
    state = circ.input_state()
    via_sum = expectation(state, obs)
    direct = simulate(gates, state, circ.k).expectation
    assert abs(via_sum - direct) < 1e-12


def test_x1_y1_observables(rng):
    from mgsim.oracle import apply_gate, apply_matrix

    X = np.array([[0, 1], [1, 0]], dtype=complex)
    Y = np.array([[0, -1j], [1j, 0]])
    n = 3
    circ = sampling.random_circuit(n, 4, rng)
    gates = circuits.compile(circ)
    state = circ.input_state()
    psi = state.to_vector()
    for g in gates:
        psi = apply_gate(psi, g, n)
    for obs, mat in (("X1", X), ("Y1", Y)):
        v = apply_matrix(psi, mat, [1], n)
        for g in reversed(gates):
            v = apply_gate(v, g, n, inverse=True)
        ref = complex(np.vdot(state.to_vector(), v))
        got = simulate(gates, state, 1, observable=obs).expectation
        assert abs(got - ref) < 1e-9


def test_populations_only_when_real():
    # a gate with complex scalar leaves the expectation real (scalar cancels
    # under inverse conjugation), but a genuinely complex value must not
    # populate p0/p1
    state = ProductState.normalized([[1, 1j]])
    g = raw_exponent(1, b={1: 0.5})  # non-unitary
    res = simulate([g], state, 1)
    if abs(res.expectation.imag) > 1e-9:
        assert res.p0 is None and res.p1 is None
