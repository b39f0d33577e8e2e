"""Graph-diagonal noise models, error-string sampling, and Pauli channels.

A diagonal state is a distribution ``a`` over n-bit error strings ``b``:
the state is the mixture of graph-basis elements with weights ``a_b`` and
``a_0`` is the fidelity.  Depolarizing, i.i.d. dephasing, and bimodal
models are implicit (no 2^n storage), so sampling works unchanged at
n = 200; the explicit model carries the full vector and is size-guarded.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _bits
from .graphs import Graph, PauliString
from .transforms import EXPLICIT_VECTOR_GUARD

__all__ = [
    "DiagonalState",
    "PauliChannel",
    "make_depolarizing",
    "make_dephasing_iid",
    "make_bimodal",
    "make_explicit",
    "dephasing_mu_for_fidelity",
    "sample_error",
    "sample_errors",
    "exact_a",
    "channel_to_diagonal",
]

CHANNEL_GUARD = 12


@dataclass(frozen=True)
class DiagonalState:
    """Distribution over n-bit error strings; immutable."""

    n: int
    model: str  # depolarizing | dephasing_iid | bimodal | explicit
    F: float | None = None
    mu: float | None = None
    b_star: int | None = None
    a: np.ndarray | None = field(default=None, repr=False)

    @property
    def fidelity(self) -> float:
        if self.model == "depolarizing" or self.model == "bimodal":
            return float(self.F)
        if self.model == "dephasing_iid":
            return float((1.0 - self.mu) ** self.n)
        return float(self.a[0])


def make_depolarizing(n: int, F: float) -> DiagonalState:
    """Uniform error model: weight F on 0, the rest spread evenly."""
    if not 0.0 <= F <= 1.0:
        raise ValueError("F must be in [0, 1]")
    return DiagonalState(n, "depolarizing", F=F)


def make_dephasing_iid(n: int, mu: float) -> DiagonalState:
    """Independent per-qubit phase-flip model with flip probability mu."""
    if not 0.0 <= mu <= 1.0:
        raise ValueError("mu must be in [0, 1]")
    return DiagonalState(n, "dephasing_iid", mu=mu)


def make_bimodal(n: int, F: float, b_star: int) -> DiagonalState:
    """All error weight on a single string ``b_star != 0``."""
    if not 0.0 <= F <= 1.0:
        raise ValueError("F must be in [0, 1]")
    if b_star == 0 or not 0 < b_star < (1 << n):
        raise ValueError("b_star must be a nonzero n-bit string")
    return DiagonalState(n, "bimodal", F=F, b_star=b_star)


def make_explicit(a: np.ndarray) -> DiagonalState:
    a = np.asarray(a, dtype=float)
    m = a.shape[0]
    if m == 0 or m & (m - 1):
        raise ValueError("length must be a power of two")
    n = m.bit_length() - 1
    if n > EXPLICIT_VECTOR_GUARD:
        raise ValueError(f"explicit model limited to n <= {EXPLICIT_VECTOR_GUARD}")
    if np.any(a < 0) or abs(a.sum() - 1.0) > 1e-9:
        raise ValueError("entries must be nonnegative and sum to 1")
    return DiagonalState(n, "explicit", a=a)


def dephasing_mu_for_fidelity(n: int, F: float) -> float:
    """Flip probability giving fidelity F under the i.i.d. dephasing model."""
    return 1.0 - F ** (1.0 / n)


def sample_errors(state: DiagonalState, count: int, rng: np.random.Generator) -> np.ndarray:
    """Draw ``count`` error strings as a packed (count, W) uint64 array."""
    n = state.n
    w = _bits.words_per(n)
    if state.model == "depolarizing":
        out = np.zeros((count, w), dtype=np.uint64)
        noisy = rng.random(count) >= state.F
        k = int(noisy.sum())
        if k:
            draws = _bits.random_bit_words(k, n, rng)
            # rejection of the all-zero string: uniform over nonzero strings
            while True:
                zero = ~draws.any(axis=1)
                nz = int(zero.sum())
                if not nz:
                    break
                draws[zero] = _bits.random_bit_words(nz, n, rng)
            out[noisy] = draws
        return out
    if state.model == "dephasing_iid":
        bits = (rng.random((count, n)) < state.mu).astype(np.uint64)
        return _bits.pack_bit_matrix(bits)
    if state.model == "bimodal":
        out = np.zeros((count, w), dtype=np.uint64)
        noisy = rng.random(count) >= state.F
        out[noisy] = _bits.int_to_words(state.b_star, n)
        return out
    if state.model == "explicit":
        idx = rng.choice(state.a.shape[0], size=count, p=state.a)
        return _bits.ints_to_words(idx, n)
    raise ValueError(f"unknown model {state.model!r}")


def sample_error(state: DiagonalState, rng: np.random.Generator) -> int:
    """Single error string as an int."""
    return _bits.words_to_ints(sample_errors(state, 1, rng))[0]


def exact_a(state: DiagonalState) -> np.ndarray:
    """Explicit probability vector of the model (ground truth for metrics)."""
    n = state.n
    if n > EXPLICIT_VECTOR_GUARD:
        raise ValueError(f"explicit vectors limited to n <= {EXPLICIT_VECTOR_GUARD}")
    if state.model == "explicit":
        return state.a.copy()
    size = 1 << n
    if state.model == "depolarizing":
        a = np.full(size, (1.0 - state.F) / (size - 1) if size > 1 else 0.0)
        a[0] = state.F
        return a
    if state.model == "dephasing_iid":
        weights = np.bitwise_count(np.arange(size, dtype=np.uint64)).astype(int)
        return state.mu**weights * (1.0 - state.mu) ** (n - weights)
    if state.model == "bimodal":
        a = np.zeros(size)
        a[0] = state.F
        a[state.b_star] = 1.0 - state.F
        return a
    raise ValueError(f"unknown model {state.model!r}")


@dataclass(frozen=True)
class PauliChannel:
    """Pauli error rates, one per (phase-free) Pauli string."""

    n: int
    terms: dict  # PauliString -> rate

    def __post_init__(self):
        total = 0.0
        for p, rate in self.terms.items():
            if p.n != self.n:
                raise ValueError("Pauli length mismatch")
            if rate < 0:
                raise ValueError("negative rate")
            total += rate
        if abs(total - 1.0) > 1e-9:
            raise ValueError("rates must sum to 1")


def channel_to_diagonal(g: Graph, ch: PauliChannel) -> DiagonalState:
    """Collapse a Pauli channel on the graph state to its diagonal vector.

    Each Pauli error maps the graph state to exactly one basis element; the
    receiving index is ``z XOR A@x`` for an error with symplectic pair
    (x, z), so each rate is simply added to that coset's entry.
    """
    if g.n > CHANNEL_GUARD:
        raise ValueError(f"channel conversion limited to n <= {CHANNEL_GUARD}")
    a = np.zeros(1 << g.n)
    for p, rate in ch.terms.items():
        a[p.z ^ g.adjacency_times(p.x)] += rate
    return make_explicit(a)
