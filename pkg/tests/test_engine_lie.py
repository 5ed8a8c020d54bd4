import numpy as np
import pytest

from mgsim import circuits, sampling
from mgsim.engine_lie import (LieBasis, adjoint_transfer, build_basis,
                              gate_coefficients, heisenberg_observable,
                              simulate, structure_constants)
from mgsim.engine_quadratic import gate_transfer
from mgsim.engine_quadratic import simulate as simulate_quadratic
from mgsim.exponents import raw_exponent
from mgsim.pauli import ProductState, commutation_sign, pauli_mul


@pytest.mark.parametrize("n,dim", [(1, 4), (2, 11), (3, 22)])
def test_basis_dimension(n, dim):
    basis = build_basis(n)
    assert basis.dim == dim == n * (2 * n + 1) + 1
    # all elements are Hermitian units and mutually distinct
    keys = {(e.x_mask, e.z_mask) for e in basis.elements}
    assert len(keys) == dim
    assert all(e.is_hermitian_unit() for e in basis.elements)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_closure_exact(n):
    # every commutator of basis elements is exactly a multiple of one element
    sc = structure_constants(n)
    basis = sc.basis
    for i in range(1, basis.dim):
        for j in range(i + 1, basis.dim):
            ei, ej = basis.elements[i], basis.elements[j]
            hit = sc.bracket(i, j)
            if commutation_sign(ei, ej) == 1:
                assert hit is None
            else:
                k, val = hit
                prod = pauli_mul(ei, ej)
                ek = basis.elements[k]
                assert (prod.x_mask, prod.z_mask) == (ek.x_mask, ek.z_mask)
                assert 2 * prod.scalar == val * ek.scalar  # exact


def test_linear_linear_lands_in_quadratics():
    sc = structure_constants(2)
    basis = sc.basis
    k, val = sc.bracket(1, 2)  # [c_1, c_2]
    assert k == basis.index_of_pair(1, 2)
    # [c_1, c_2] = 2 c_1 c_2 = -2i (i c_1 c_2)
    assert val == -2j


def test_disjoint_quadratics_commute():
    sc = structure_constants(3)
    basis = sc.basis
    assert sc.bracket(basis.index_of_pair(1, 2), basis.index_of_pair(3, 4)) is None


def test_shared_index_quadratics():
    sc = structure_constants(2)
    basis = sc.basis
    k, val = sc.bracket(basis.index_of_pair(1, 2), basis.index_of_pair(2, 3))
    assert k == basis.index_of_pair(1, 3)
    assert abs(val) == 2


def test_jacobi_sampled(rng):
    sc = structure_constants(3)
    d = sc.basis.dim

    def ad(i, eta):
        out = np.zeros(d, dtype=complex)
        for j in np.flatnonzero(eta):
            hit = sc.bracket(i, j)
            if hit:
                out[hit[0]] += eta[j] * hit[1]
        return out

    for _ in range(100):
        i, j = (int(v) for v in rng.integers(1, d, size=2))
        ek = np.zeros(d, dtype=complex)
        ek[int(rng.integers(1, d))] = 1.0
        lhs = ad(i, ad(j, ek)) - ad(j, ad(i, ek))
        hit = sc.bracket(i, j)
        rhs = hit[1] * ad(hit[0], ek) if hit else np.zeros(d, dtype=complex)
        assert np.abs(lhs - rhs).max() < 1e-12


def test_adjoint_transfer_identity():
    sc = structure_constants(2)
    assert np.allclose(adjoint_transfer(np.zeros(sc.basis.dim), sc), np.eye(sc.basis.dim))


def test_adjoint_transfer_matches_quadratic_block(rng):
    # a single quadratic generator rotates the (c_1, c_2) plane; the Lie
    # transfer must equal the inverse of the quadratic engine's K block
    g = raw_exponent(2, a={(1, 2): complex(rng.normal(), rng.normal())})
    sc = structure_constants(2)
    a = adjoint_transfer(gate_coefficients(g, sc.basis), sc)
    K = gate_transfer(g).K
    assert np.linalg.norm(a[1:3, 1:3] - np.linalg.inv(K)[1:3, 1:3]) < 1e-10


def test_adjoint_transfer_vs_dense_conjugation(rng):
    from mgsim.oracle import dense_gate

    n = 3
    g = raw_exponent(n, a={(2, 5): 0.4 - 0.2j}, b={1: 0.3j}, s=0.1)
    sc = structure_constants(n)
    basis = sc.basis
    a = adjoint_transfer(gate_coefficients(g, basis), sc)
    G = dense_gate(g)
    Ginv = np.linalg.inv(G)
    for i in (1, 4, basis.index_of_pair(1, 2)):
        lhs = G @ basis.elements[i].to_matrix() @ Ginv
        rhs = sum(a[k, i] * basis.elements[k].to_matrix() for k in np.flatnonzero(a[:, i]))
        assert np.linalg.norm(lhs - rhs) < 1e-9


def test_empty_circuit():
    state = ProductState.computational([0, 0])
    res = simulate([], state, 1)
    assert res.p0 == 1.0


def test_matches_quadratic_engine(rng):
    for _ in range(20):
        n = int(rng.integers(1, 6))
        circ = sampling.random_circuit(n, int(rng.integers(0, 10)), rng,
                                       unitary=bool(rng.integers(0, 2)))
        gates = circuits.compile(circ)
        state = circ.input_state()
        a = simulate(gates, state, circ.k).expectation
        b = simulate_quadratic(gates, state, circ.k).expectation
        assert abs(a - b) < 1e-9


def test_heisenberg_observable_matches_quadratic(rng):
    from mgsim.engine_quadratic import heisenberg_observable as quad_obs
    from mgsim.jw import PARITY, JwFamily

    n = 3
    circ = sampling.random_circuit(n, 5, rng)
    gates = circuits.compile(circ)
    s1 = heisenberg_observable(gates, circ.k, n)
    s2 = quad_obs(gates, circ.k, JwFamily(n, PARITY))
    assert np.linalg.norm(s1.to_matrix() - s2.to_matrix()) < 1e-9
