"""Dense-matrix reference implementations for small n.

Everything here is brute force on explicit state vectors / density
matrices and exists to validate the bit-level fast paths: the stabilizer
indexing, the syndrome reduction, and the Bell-outcome distribution.
Size guards keep accidental exponential blowups out of production runs.
"""

from __future__ import annotations

import numpy as np

from .graphs import Graph, PauliString, parity

__all__ = [
    "dense_graph_state",
    "dense_basis_state",
    "apply_pauli",
    "dense_expectation",
    "diagonal_density",
    "dense_bell_state",
    "dense_bell_distribution",
    "bell_pair_eigenvalue",
]

STATE_GUARD = 10
EXPECTATION_GUARD = 5
BELL_GUARD = 4


def _parity_vec(masks: np.ndarray) -> np.ndarray:
    return (np.bitwise_count(masks.astype(np.uint64)).astype(int)) & 1


def dense_graph_state(g: Graph) -> np.ndarray:
    """Explicit amplitudes of the CZ-on-plus-states graph state."""
    if g.n > STATE_GUARD:
        raise ValueError(f"dense states limited to n <= {STATE_GUARD}")
    idx = np.arange(1 << g.n, dtype=np.uint64)
    signs = np.zeros(1 << g.n, dtype=int)
    for u, v in g.edges():
        signs ^= ((idx >> np.uint64(u)) & np.uint64(1)).astype(int) & (
            (idx >> np.uint64(v)) & np.uint64(1)
        ).astype(int)
    amps = np.where(signs, -1.0, 1.0) / np.sqrt(1 << g.n)
    return amps.astype(complex)


def dense_basis_state(g: Graph, b: int) -> np.ndarray:
    """Graph-basis element: Z^b applied to the graph state."""
    amps = dense_graph_state(g)
    idx = np.arange(1 << g.n, dtype=np.uint64)
    flips = _parity_vec(idx & np.uint64(b))
    return amps * np.where(flips, -1.0, 1.0)


def apply_pauli(vec: np.ndarray, p: PauliString) -> np.ndarray:
    """Apply the Hermitian representative of (x, z) to a state vector.

    P|i> = i^popcount(x AND z) * (-1)^popcount(z AND i) |i XOR x>.
    """
    size = vec.shape[0]
    if size != 1 << p.n:
        raise ValueError("dimension mismatch")
    idx = np.arange(size, dtype=np.uint64)
    phases = np.where(_parity_vec(idx & np.uint64(p.z)), -1.0, 1.0)
    phases = phases * (1j ** (p.x & p.z).bit_count())
    out = np.empty(size, dtype=complex)
    out[idx ^ np.uint64(p.x)] = phases * vec
    return out


def dense_expectation(state: np.ndarray, p: PauliString) -> float:
    """Tr(rho P) for a density matrix, or <psi|P|psi> for a pure state."""
    if p.n > EXPECTATION_GUARD:
        raise ValueError(f"dense expectations limited to n <= {EXPECTATION_GUARD}")
    state = np.asarray(state)
    if state.ndim == 1:
        return float(np.real(np.vdot(state, apply_pauli(state, p))))
    size = state.shape[0]
    idx = np.arange(size, dtype=np.uint64)
    phases = np.where(_parity_vec(idx & np.uint64(p.z)), -1.0, 1.0)
    phases = phases * (1j ** (p.x & p.z).bit_count())
    # Tr(rho P) = sum_i phase(i) rho[i XOR x, i]
    return float(np.real(np.sum(phases * state[idx ^ np.uint64(p.x), idx])))


def diagonal_density(g: Graph, a: np.ndarray) -> np.ndarray:
    """Density matrix of the graph-diagonal mixture with weights ``a``."""
    size = 1 << g.n
    if a.shape[0] != size:
        raise ValueError("weight vector length mismatch")
    rho = np.zeros((size, size), dtype=complex)
    for b in range(size):
        if a[b]:
            v = dense_basis_state(g, b)
            rho += a[b] * np.outer(v, v.conj())
    return rho


def dense_bell_state(n: int, beta: int) -> np.ndarray:
    """Two-copy Bell-basis state on 2n qubits for outcome label ``beta``.

    Copy 1 occupies qubits 0..n-1, copy 2 qubits n..2n-1; node k pairs
    qubit k with qubit n+k.  Bit 2k of ``beta`` is the Z exponent and bit
    2k+1 the X exponent of the label operator acting on copy 1.
    """
    zmask = xmask = 0
    for k in range(n):
        zmask |= ((beta >> (2 * k)) & 1) << k
        xmask |= ((beta >> (2 * k + 1)) & 1) << k
    size = 1 << n
    vec = np.zeros(1 << (2 * n), dtype=complex)
    norm = 1.0 / np.sqrt(size)
    for i in range(size):
        sign = -1.0 if parity(zmask & (i ^ xmask)) else 1.0
        vec[(i ^ xmask) + (i << n)] = sign * norm
    return vec


def dense_bell_distribution(g: Graph, a: np.ndarray) -> np.ndarray:
    """Exact outcome distribution Pr(beta) of the two-copy Bell circuit.

    The input mixture is diagonal in the graph basis, so the distribution
    is a double sum of squared overlaps weighted by ``a``.
    """
    n = g.n
    if n > BELL_GUARD:
        raise ValueError(f"Bell distributions limited to n <= {BELL_GUARD}")
    size = 1 << n
    basis = np.stack([dense_basis_state(g, b) for b in range(size)])
    pr = np.zeros(1 << (2 * n))
    for beta in range(1 << (2 * n)):
        phi = dense_bell_state(n, beta)
        overlap = _pair_overlaps(phi, basis)  # [b, b'] = <phi_beta|Phi_b (x) Phi_b'>
        pr[beta] = float(np.real(a @ (np.abs(overlap) ** 2) @ a))
    return pr


def _pair_overlaps(phi: np.ndarray, basis: np.ndarray) -> np.ndarray:
    size = basis.shape[1]
    # composite index = i1 + (i2 << n): reshaped rows are copy-2, cols copy-1
    phi_grid = phi.reshape(size, size)
    return basis @ phi_grid.conj().T @ basis.T


def bell_pair_eigenvalue(g: Graph, beta: int, b: int) -> float:
    """<phi_beta| P_b (x) P_b |phi_beta> evaluated densely."""
    from .graphs import stabilizer_element

    n = g.n
    if n > BELL_GUARD:
        raise ValueError(f"Bell eigenvalues limited to n <= {BELL_GUARD}")
    p = stabilizer_element(g, b)
    both = PauliString(2 * n, p.x | (p.x << n), p.z | (p.z << n))
    phi = dense_bell_state(n, beta)
    return float(np.real(np.vdot(phi, apply_pauli(phi, both))))
