"""Shot generation and reduction to syndrome statistics.

Each two-copy shot reduces to an n-bit syndrome: the joint outcome of the
commuting pair-observables (generator tensor generator).  The histogram of
syndromes is the sufficient statistic for every squared-expectation
estimate, so raw 2n-bit outcomes are only kept on request.

Two shot sources exist: the circuit path runs the literal Bell circuit on
a tableau per shot, and the fast path draws two error strings and XORs
them.  The fast path is a derived shortcut and is only trusted because the
test suite's equivalence gate pins it against the circuit path and the
dense oracle.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from . import _bits
from .graphs import Graph
from .noise import DiagonalState, sample_errors
from .tableau import BellOutcome, run_bell_circuit, run_bell_circuit_batch
from .transforms import EXPLICIT_VECTOR_GUARD, wht

__all__ = [
    "Syndrome",
    "SyndromeHistogram",
    "CHatVector",
    "syndrome_from_outcome",
    "syndromes_from_betas",
    "sample_syndromes_circuit",
    "sample_syndromes_fast",
    "sample_syndrome_words_fast",
    "c_hat_full",
    "c_hat_selected",
    "write_shot_log",
    "read_shot_log",
]


def syndrome_from_outcome(g: Graph, beta: BellOutcome) -> int:
    """Reduce a 2n-bit Bell outcome to its n-bit syndrome.

    s = z XOR A@x, where x and z collect the per-node exponent bits of the
    outcome.  The pair-observable indexed by ``b`` then has eigenvalue
    (-1)^popcount(b AND s).  This closed form is validated against the
    dense oracle by the equivalence-gate tests.
    """
    return beta.z_mask() ^ g.adjacency_times(beta.x_mask())


def syndromes_from_betas(g: Graph, betas: np.ndarray) -> np.ndarray:
    """Vectorized beta -> syndrome reduction (same law as per-outcome)."""
    betas = np.asarray(betas, dtype=np.uint64)
    one = np.uint64(1)
    z_mask = np.zeros_like(betas)
    x_mask = np.zeros_like(betas)
    for k in range(g.n):
        z_mask |= ((betas >> np.uint64(2 * k)) & one) << np.uint64(k)
        x_mask |= ((betas >> np.uint64(2 * k + 1)) & one) << np.uint64(k)
    acc = np.zeros_like(betas)
    for j in range(g.n):
        row = np.uint64(g.adjacency[j])
        acc ^= np.where((x_mask >> np.uint64(j)) & one == one, row, np.uint64(0))
    return (z_mask ^ acc).astype(np.int64)


@dataclass
class Syndrome:
    n: int
    s: int


@dataclass
class SyndromeHistogram:
    """Counts of observed syndromes; dense vector for small n, map otherwise."""

    n: int
    total: int
    dense: np.ndarray | None = field(default=None, repr=False)
    sparse: Counter | None = field(default=None, repr=False)

    @classmethod
    def empty(cls, n: int) -> "SyndromeHistogram":
        if n <= EXPLICIT_VECTOR_GUARD:
            return cls(n, 0, dense=np.zeros(1 << n, dtype=np.int64))
        return cls(n, 0, sparse=Counter())

    def add_ints(self, syndromes: np.ndarray):
        if self.dense is not None:
            self.dense += np.bincount(syndromes, minlength=self.dense.shape[0])
        else:
            self.sparse.update(int(s) for s in syndromes)
        self.total += len(syndromes)

    def merge(self, other: "SyndromeHistogram") -> "SyndromeHistogram":
        if other.n != self.n:
            raise ValueError("qubit count mismatch")
        if self.dense is not None:
            self.dense += other.dense
        else:
            self.sparse.update(other.sparse)
        self.total += other.total
        return self

    def frequencies(self) -> np.ndarray:
        if self.dense is None:
            raise ValueError("dense frequencies unavailable for large n")
        if self.total == 0:
            raise ValueError("empty histogram")
        return self.dense / self.total

    def items(self):
        if self.dense is not None:
            for s in np.nonzero(self.dense)[0]:
                yield int(s), int(self.dense[s])
        else:
            yield from self.sparse.items()


@dataclass
class CHatVector:
    """Clipped estimates of squared stabilizer expectations.

    ``values`` is clipped to [0, 1]; ``raw`` keeps the pre-clip estimates
    for unbiasedness checks.  ``indices`` is None for a full 2^n vector.
    """

    n: int
    values: np.ndarray
    raw: np.ndarray
    indices: list[int] | None = None


def sample_syndromes_circuit(
    g: Graph,
    state: DiagonalState,
    count: int,
    rng: np.random.Generator,
    engine: str = "batch",
) -> SyndromeHistogram:
    """Circuit-backed shots: sample (b, b'), run the Bell circuit, reduce.

    ``engine`` selects the vectorized lockstep simulator ("batch") or the
    one-tableau-per-shot reference ("scalar"); both run the literal
    circuit and the test suite pins them against each other.
    """
    hist = SyndromeHistogram.empty(g.n)
    pairs = sample_errors(state, 2 * count, rng)
    bs = _bits.words_to_ints(pairs[:count])
    b_primes = _bits.words_to_ints(pairs[count:])
    if engine == "batch":
        chunk = 1 << 16
        syndromes = np.empty(count, dtype=np.int64)
        for lo in range(0, count, chunk):
            hi = min(lo + chunk, count)
            betas = run_bell_circuit_batch(g, bs[lo:hi], b_primes[lo:hi], rng)
            syndromes[lo:hi] = syndromes_from_betas(g, betas)
    elif engine == "scalar":
        syndromes = np.empty(count, dtype=np.int64)
        for j in range(count):
            beta = run_bell_circuit(g, bs[j], b_primes[j], rng)
            syndromes[j] = syndrome_from_outcome(g, beta)
    else:
        raise ValueError(f"unknown engine {engine!r}")
    hist.add_ints(syndromes)
    return hist


def sample_syndrome_words_fast(
    state: DiagonalState, count: int, rng: np.random.Generator
) -> np.ndarray:
    """Fast-path shots as a packed (count, W) word array: s = b XOR b'."""
    b = sample_errors(state, count, rng)
    b_prime = sample_errors(state, count, rng)
    return np.bitwise_xor(b, b_prime)


def sample_syndromes_fast(
    g: Graph, state: DiagonalState, count: int, rng: np.random.Generator
) -> SyndromeHistogram:
    """Fast-path shots aggregated into a histogram."""
    if state.n != g.n:
        raise ValueError("state/graph qubit count mismatch")
    hist = SyndromeHistogram.empty(g.n)
    words = sample_syndrome_words_fast(state, count, rng)
    if hist.dense is not None:
        hist.add_ints(words[:, 0].astype(np.int64))
    else:
        hist.add_ints(np.array(_bits.words_to_ints(words), dtype=object))
    return hist


def c_hat_full(hist: SyndromeHistogram) -> CHatVector:
    """Full vector of squared-expectation estimates from a histogram.

    The per-shot eigenvalue for index ``b`` is (-1)^popcount(b AND s), so
    the vector of shot means is exactly the Walsh-Hadamard transform of
    the empirical syndrome frequencies, clipped at zero.
    """
    raw = wht(hist.frequencies())
    return CHatVector(hist.n, np.clip(raw, 0.0, 1.0), raw)


def c_hat_selected(shots, indices: list[int], n: int | None = None) -> CHatVector:
    """Squared-expectation estimates for selected indices only.

    ``shots`` is either a SyndromeHistogram or a packed (N, W) syndrome
    word array; nothing of size 2^n is allocated.
    """
    if isinstance(shots, SyndromeHistogram):
        n = shots.n
        total = shots.total
        sums = np.zeros(len(indices))
        for s, count in shots.items():
            for j, b in enumerate(indices):
                sign = 1.0 if (b & s).bit_count() % 2 == 0 else -1.0
                sums[j] += sign * count
        raw = sums / total
    else:
        if n is None:
            raise ValueError("n required for word-array input")
        words = np.asarray(shots)
        total = words.shape[0]
        raw = np.empty(len(indices))
        if len(indices) >= 16:
            # bit-transposed layout: each index costs wt(index) XOR passes
            transposed = _bits.transpose_bits(words, n)
            acc = np.empty(transposed.shape[1], dtype=np.uint64)
            for j, b in enumerate(indices):
                acc[:] = 0
                q = 0
                bb = int(b)
                while bb:
                    if bb & 1:
                        acc ^= transposed[q]
                    bb >>= 1
                    q += 1
                ones = int(np.bitwise_count(acc).sum())
                raw[j] = 1.0 - 2.0 * ones / total
        else:
            masks = _bits.ints_to_words(indices, n)
            for j in range(len(indices)):
                par = _bits.parity_with_mask(words, masks[j])
                raw[j] = 1.0 - 2.0 * par.mean()
    return CHatVector(n, np.clip(raw, 0.0, 1.0), raw, indices=list(indices))


def write_shot_log(path, hist_or_words, n: int, seed) -> None:
    """Optional debug log: header then one lowercase hex syndrome per line."""
    if isinstance(hist_or_words, SyndromeHistogram):
        syndromes = []
        for s, count in hist_or_words.items():
            syndromes.extend([s] * count)
    else:
        syndromes = _bits.words_to_ints(np.asarray(hist_or_words))
    with open(path, "w") as fh:
        fh.write(f"n={n} shots={len(syndromes)} seed={seed}\n")
        width = (n + 3) // 4
        for s in syndromes:
            fh.write(f"{s:0{width}x}\n")


def read_shot_log(path) -> tuple[int, int, list[int]]:
    """Returns (n, seed, syndromes) from a shot log."""
    with open(path) as fh:
        header = fh.readline().split()
        fields = dict(kv.split("=") for kv in header)
        syndromes = [int(line, 16) for line in fh if line.strip()]
    return int(fields["n"]), int(fields["seed"]), syndromes
