"""Stabilizer-circuit simulator and the literal two-copy Bell circuit.

Standard destabilizer/stabilizer tableau (rows 0..m-1 destabilizers,
m..2m-1 stabilizers) with rows stored as int bitmasks.  This is the
trusted-but-slow engine: every shot builds a fresh tableau and runs the
actual CNOT + H + computational-readout circuit, and the fast syndrome
sampler is only enabled once it matches this path in distribution.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graphs import Graph, PauliString, parity

__all__ = [
    "Tableau",
    "BellOutcome",
    "graph_state_tableau",
    "run_bell_circuit",
    "run_bell_circuit_batch",
]


@dataclass(frozen=True)
class BellOutcome:
    """2n-bit Bell-measurement outcome.

    Node ``k`` owns the bit pair (2k, 2k+1): bit 2k is the Z-exponent slot
    (copy-1 readout) and bit 2k+1 the X-exponent slot (copy-2 readout) of
    the Bell-state label Z^z X^x applied to half of the |00>+|11> pair.
    """

    n: int
    beta: int

    def z_mask(self) -> int:
        """Per-node Z-exponent bits collected into an n-bit int."""
        return _gather_even_bits(self.beta, self.n, offset=0)

    def x_mask(self) -> int:
        """Per-node X-exponent bits collected into an n-bit int."""
        return _gather_even_bits(self.beta, self.n, offset=1)


def _gather_even_bits(beta: int, n: int, offset: int) -> int:
    out = 0
    for k in range(n):
        out |= ((beta >> (2 * k + offset)) & 1) << k
    return out


class Tableau:
    """Aaronson-Gottesman tableau over ``m`` qubits, initialized to |0>^m."""

    def __init__(self, m: int):
        if m < 1:
            raise ValueError("need at least one qubit")
        self.m = m
        self.x = [0] * (2 * m)
        self.z = [0] * (2 * m)
        self.r = [0] * (2 * m)
        for j in range(m):
            self.x[j] = 1 << j  # destabilizer X_j
            self.z[m + j] = 1 << j  # stabilizer Z_j

    def _check(self, *qubits: int):
        for q in qubits:
            if not 0 <= q < self.m:
                raise ValueError(f"qubit {q} out of range")

    def apply_h(self, q: int) -> "Tableau":
        self._check(q)
        bit = 1 << q
        x, z, r = self.x, self.z, self.r
        for i in range(2 * self.m):
            xb, zb = x[i] & bit, z[i] & bit
            if xb and zb:
                r[i] ^= 1
            if bool(xb) != bool(zb):
                x[i] ^= bit
                z[i] ^= bit
        return self

    def apply_s(self, q: int) -> "Tableau":
        self._check(q)
        bit = 1 << q
        x, z, r = self.x, self.z, self.r
        for i in range(2 * self.m):
            if x[i] & bit:
                if z[i] & bit:
                    r[i] ^= 1
                z[i] ^= bit
        return self

    def apply_z(self, q: int) -> "Tableau":
        self._check(q)
        bit = 1 << q
        for i in range(2 * self.m):
            if self.x[i] & bit:
                self.r[i] ^= 1
        return self

    def apply_cx(self, c: int, t: int) -> "Tableau":
        self._check(c, t)
        cb, tb = 1 << c, 1 << t
        x, z, r = self.x, self.z, self.r
        for i in range(2 * self.m):
            xc, zc = x[i] & cb, z[i] & cb
            xt, zt = x[i] & tb, z[i] & tb
            if xc and zt and (bool(xt) == bool(zc)):
                r[i] ^= 1
            if xc:
                x[i] ^= tb
            if zt:
                z[i] ^= cb
        return self

    def apply_cz(self, a: int, b: int) -> "Tableau":
        self._check(a, b)
        ab, bb = 1 << a, 1 << b
        x, z, r = self.x, self.z, self.r
        for i in range(2 * self.m):
            xa, xb = x[i] & ab, x[i] & bb
            if xa and xb and (bool(z[i] & ab) != bool(z[i] & bb)):
                r[i] ^= 1
            if xb:
                z[i] ^= ab
            if xa:
                z[i] ^= bb
        return self

    def _product_sign(self, h: tuple[int, int, int], i: tuple[int, int, int]) -> int:
        """Sign bit of (row i) * (row h) for rows given as (x, z, r)."""
        x1, z1, r1 = i
        x2, z2, r2 = h
        mask = (1 << self.m) - 1
        nx1, nz1 = ~x1 & mask, ~z1 & mask
        nx2, nz2 = ~x2 & mask, ~z2 & mask
        plus = (x1 & z1 & nx2 & z2) | (x1 & nz1 & x2 & z2) | (nx1 & z1 & x2 & nz2)
        minus = (x1 & z1 & x2 & nz2) | (x1 & nz1 & nx2 & z2) | (nx1 & z1 & x2 & z2)
        total = (2 * (r1 + r2) + plus.bit_count() - minus.bit_count()) % 4
        return 1 if total == 2 else 0

    def _rowsum(self, h: int, i: int):
        """Row h <- row h * row i with exact phase tracking."""
        self.r[h] = self._product_sign(
            (self.x[h], self.z[h], self.r[h]), (self.x[i], self.z[i], self.r[i])
        )
        self.x[h] ^= self.x[i]
        self.z[h] ^= self.z[i]

    def measure_z(self, q: int, rng: np.random.Generator) -> int:
        """Computational-basis measurement with state update."""
        self._check(q)
        bit = 1 << q
        m = self.m
        p = next((i for i in range(m, 2 * m) if self.x[i] & bit), None)
        if p is not None:
            # Z_q anticommutes with stabilizer row p: fair coin
            for i in range(2 * m):
                if i != p and self.x[i] & bit:
                    self._rowsum(i, p)
            self.x[p - m] = self.x[p]
            self.z[p - m] = self.z[p]
            self.r[p - m] = self.r[p]
            self.x[p] = 0
            self.z[p] = bit
            self.r[p] = int(rng.integers(0, 2))
            return self.r[p]
        # deterministic: accumulate the stabilizer rows whose destabilizer
        # partner anticommutes with Z_q; the scratch row ends as +/- Z_q
        scratch = (0, 0, 0)
        for i in range(m):
            if self.x[i] & bit:
                row = (self.x[i + m], self.z[i + m], self.r[i + m])
                scratch = (
                    scratch[0] ^ row[0],
                    scratch[1] ^ row[1],
                    self._product_sign(scratch, row),
                )
        return scratch[2]

    def stabilizer_rows(self) -> list[tuple[int, int, int]]:
        """(x, z, sign) triples of the stabilizer half."""
        m = self.m
        return [(self.x[i], self.z[i], self.r[i]) for i in range(m, 2 * m)]

    def is_symplectic(self) -> bool:
        """Check the defining pairing: rows commute except paired ones."""
        m = self.m
        for i in range(2 * m):
            for j in range(i + 1, 2 * m):
                form = parity(self.x[i] & self.z[j]) ^ parity(self.z[i] & self.x[j])
                expected = 1 if j == i + m else 0
                if form != expected:
                    return False
        return True


def graph_state_tableau(g: Graph, offset: int = 0, m: int | None = None) -> Tableau:
    """Tableau holding the graph state on qubits offset..offset+n-1."""
    t = Tableau(m if m is not None else g.n + offset)
    _prepare_graph(t, g, offset)
    return t


def _prepare_graph(t: Tableau, g: Graph, offset: int):
    for q in range(g.n):
        t.apply_h(offset + q)
    for u, v in g.edges():
        t.apply_cz(offset + u, offset + v)


def run_bell_circuit(g: Graph, b: int, b_prime: int, rng: np.random.Generator) -> BellOutcome:
    """One shot of the two-copy Bell measurement on basis states b, b'.

    Prepares the two graph-basis states on 2n qubits (copy 1 on 0..n-1,
    copy 2 on n..2n-1), applies transversal CNOT (copy 1 controls), H on
    copy 1, and reads all qubits out.
    """
    n = g.n
    t = Tableau(2 * n)
    _prepare_graph(t, g, 0)
    _prepare_graph(t, g, n)
    for k in range(n):
        if (b >> k) & 1:
            t.apply_z(k)
        if (b_prime >> k) & 1:
            t.apply_z(n + k)
    for k in range(n):
        t.apply_cx(k, n + k)
    for k in range(n):
        t.apply_h(k)
    beta = 0
    for k in range(n):
        beta |= t.measure_z(k, rng) << (2 * k)  # copy 1 -> Z slot
    for k in range(n):
        beta |= t.measure_z(n + k, rng) << (2 * k + 1)  # copy 2 -> X slot
    return BellOutcome(n, beta)


class _BatchTableau:
    """Many independent tableaus advanced in lockstep with numpy.

    Same row layout and phase arithmetic as :class:`Tableau`, but the
    state is (shots, 2m) arrays so identical gate sequences vectorize
    across shots.  Limited to m <= 64 qubits (one word per row).
    """

    def __init__(self, shots: int, m: int):
        if m > 64:
            raise ValueError("batch engine limited to 64 qubits")
        self.m = m
        self.shots = shots
        self.mask = np.uint64((1 << m) - 1)
        self.x = np.zeros((shots, 2 * m), dtype=np.uint64)
        self.z = np.zeros((shots, 2 * m), dtype=np.uint64)
        self.r = np.zeros((shots, 2 * m), dtype=np.uint8)
        for j in range(m):
            self.x[:, j] = np.uint64(1 << j)
            self.z[:, m + j] = np.uint64(1 << j)

    def apply_h(self, q: int):
        bit = np.uint64(1 << q)
        xb = self.x & bit
        zb = self.z & bit
        self.r ^= ((xb != 0) & (zb != 0)).astype(np.uint8)
        flip = np.where((xb != 0) != (zb != 0), bit, np.uint64(0))
        self.x ^= flip
        self.z ^= flip

    def apply_cz(self, a: int, b: int):
        ab, bb = np.uint64(1 << a), np.uint64(1 << b)
        xa = self.x & ab
        xb = self.x & bb
        self.r ^= (
            (xa != 0) & (xb != 0) & (((self.z & ab) != 0) != ((self.z & bb) != 0))
        ).astype(np.uint8)
        self.z ^= np.where(xb != 0, ab, np.uint64(0))
        self.z ^= np.where(xa != 0, bb, np.uint64(0))

    def apply_cx(self, c: int, t: int):
        cb, tb = np.uint64(1 << c), np.uint64(1 << t)
        xc = (self.x & cb) != 0
        zc = (self.z & cb) != 0
        xt = (self.x & tb) != 0
        zt = (self.z & tb) != 0
        self.r ^= (xc & zt & (xt == zc)).astype(np.uint8)
        self.x ^= np.where(xc, tb, np.uint64(0))
        self.z ^= np.where(zt, cb, np.uint64(0))

    def apply_z_frames(self, masks: np.ndarray):
        """Per-shot all-qubit Z layer: shot s applies Z^masks[s]."""
        self.r ^= (np.bitwise_count(self.x & masks[:, None]) & np.uint64(1)).astype(
            np.uint8
        )

    def _product_sign(self, x2, z2, r2, x1, z1, r1) -> np.ndarray:
        """Vector twin of Tableau._product_sign (row1 * row2)."""
        mask = self.mask
        nx1, nz1 = ~x1 & mask, ~z1 & mask
        nx2, nz2 = ~x2 & mask, ~z2 & mask
        plus = (x1 & z1 & nx2 & z2) | (x1 & nz1 & x2 & z2) | (nx1 & z1 & x2 & nz2)
        minus = (x1 & z1 & x2 & nz2) | (x1 & nz1 & nx2 & z2) | (nx1 & z1 & x2 & z2)
        total = (
            2 * (r1.astype(np.int64) + r2.astype(np.int64))
            + np.bitwise_count(plus).astype(np.int64)
            - np.bitwise_count(minus).astype(np.int64)
        ) % 4
        return (total == 2).astype(np.uint8)

    def measure_z(self, q: int, rng: np.random.Generator) -> np.ndarray:
        bit = np.uint64(1 << q)
        m = self.m
        hits = (self.x & bit) != 0  # (shots, 2m)
        random_mask = hits[:, m:].any(axis=1)
        out = np.zeros(self.shots, dtype=np.uint8)

        det = np.nonzero(~random_mask)[0]
        if det.size:
            sx = np.zeros(det.size, dtype=np.uint64)
            sz = np.zeros(det.size, dtype=np.uint64)
            sr = np.zeros(det.size, dtype=np.uint8)
            for i in range(m):
                sel = hits[det, i]
                if not sel.any():
                    continue
                rx = self.x[det, m + i]
                rz = self.z[det, m + i]
                rr = self.r[det, m + i]
                new_r = self._product_sign(sx, sz, sr, rx, rz, rr)
                sx = np.where(sel, sx ^ rx, sx)
                sz = np.where(sel, sz ^ rz, sz)
                sr = np.where(sel, new_r, sr)
            out[det] = sr

        ran = np.nonzero(random_mask)[0]
        if ran.size:
            pivot = m + np.argmax(hits[ran, m:], axis=1)
            px = self.x[ran, pivot]
            pz = self.z[ran, pivot]
            pr = self.r[ran, pivot]
            row_hits = hits[ran].copy()
            row_hits[np.arange(ran.size), pivot] = False
            for i in range(2 * m):
                sel = np.nonzero(row_hits[:, i])[0]
                if not sel.size:
                    continue
                rows = ran[sel]
                self.r[rows, i] = self._product_sign(
                    self.x[rows, i],
                    self.z[rows, i],
                    self.r[rows, i],
                    px[sel],
                    pz[sel],
                    pr[sel],
                )
                self.x[rows, i] ^= px[sel]
                self.z[rows, i] ^= pz[sel]
            self.x[ran, pivot - m] = px
            self.z[ran, pivot - m] = pz
            self.r[ran, pivot - m] = pr
            coin = rng.integers(0, 2, size=ran.size, dtype=np.uint8)
            self.x[ran, pivot] = 0
            self.z[ran, pivot] = bit
            self.r[ran, pivot] = coin
            out[ran] = coin
        return out


def run_bell_circuit_batch(
    g: Graph, bs: np.ndarray, b_primes: np.ndarray, rng: np.random.Generator
) -> np.ndarray:
    """Vectorized shots of the two-copy Bell circuit; returns beta labels.

    Same circuit and measurement order as :func:`run_bell_circuit`, with
    one tableau per shot advanced in lockstep; limited to n <= 32.
    """
    n = g.n
    if 2 * n > 64:
        raise ValueError("batch circuit limited to n <= 32")
    shots = len(bs)
    t = _BatchTableau(shots, 2 * n)
    for q in range(2 * n):
        t.apply_h(q)
    for u, v in g.edges():
        t.apply_cz(u, v)
        t.apply_cz(n + u, n + v)
    frames = np.asarray(bs, dtype=np.uint64) | (
        np.asarray(b_primes, dtype=np.uint64) << np.uint64(n)
    )
    t.apply_z_frames(frames)
    for k in range(n):
        t.apply_cx(k, n + k)
    for k in range(n):
        t.apply_h(k)
    beta = np.zeros(shots, dtype=np.uint64)
    for k in range(n):
        beta |= t.measure_z(k, rng).astype(np.uint64) << np.uint64(2 * k)
    for k in range(n):
        beta |= t.measure_z(n + k, rng).astype(np.uint64) << np.uint64(2 * k + 1)
    return beta


def stabilizer_signs_match(t: Tableau, g: Graph) -> bool:
    """True if every stabilizer row is a +1-signed element of g's group.

    The x-part of a row indexes a group element; the row matches when its
    z-part agrees with that element and the sign bit is clear.
    """
    from .graphs import stabilizer_element

    for x, z, r in t.stabilizer_rows():
        el = stabilizer_element(g, x)
        if el.z != z or r != 0:
            return False
    return True
