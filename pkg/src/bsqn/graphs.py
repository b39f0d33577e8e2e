"""Graphs, bit-packed Pauli strings, and stabilizer-group indexing.

Bit conventions used throughout the package:

* An n-bit string ``b`` is stored as a Python int with bit ``j`` (LSB = bit 0)
  referring to qubit ``j``.
* Printed bitstrings put qubit 0 leftmost, so ``"100"`` means qubit 0 set.
* Index bit ``j`` corresponds to the stabilizer generator of vertex ``j``;
  the product of generators selected by ``b`` is the group element indexed
  by ``b``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

__all__ = [
    "Graph",
    "PauliString",
    "complete_graph",
    "path_graph",
    "graph_from_edges",
    "stabilizer_element",
    "stabilizer_sign",
    "anticommutation_bit",
    "coset_members",
    "parity",
    "bits_to_str",
    "str_to_bits",
    "graph_to_edgelist",
    "graph_from_edgelist",
]

COSET_ENUM_GUARD = 20


def parity(x: int) -> int:
    """Parity of the popcount of ``x``."""
    return x.bit_count() & 1


def bits_to_str(b: int, n: int) -> str:
    """Render ``b`` as a bitstring with qubit 0 leftmost."""
    return "".join("1" if (b >> j) & 1 else "0" for j in range(n))


def str_to_bits(s: str) -> int:
    """Parse a bitstring with qubit 0 leftmost."""
    b = 0
    for j, ch in enumerate(s):
        if ch == "1":
            b |= 1 << j
        elif ch != "0":
            raise ValueError(f"invalid bit {ch!r} in {s!r}")
    return b


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph given by bit-packed adjacency rows.

    ``adjacency[j]`` is the neighbor mask of vertex ``j``.  Immutable after
    construction; safe for shared concurrent reads.
    """

    n: int
    adjacency: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("graph needs at least one vertex")
        if len(self.adjacency) != self.n:
            raise ValueError("adjacency must have one row per vertex")
        mask = (1 << self.n) - 1
        for j, row in enumerate(self.adjacency):
            if row & ~mask:
                raise ValueError(f"row {j} references vertices >= n")
            if (row >> j) & 1:
                raise ValueError(f"self-loop at vertex {j}")
            for k in range(self.n):
                if ((row >> k) & 1) != ((self.adjacency[k] >> j) & 1):
                    raise ValueError("adjacency is not symmetric")

    def neighbors(self, v: int) -> int:
        return self.adjacency[v]

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for u in range(self.n):
            row = self.adjacency[u] >> (u + 1)
            v = u + 1
            while row:
                if row & 1:
                    out.append((u, v))
                row >>= 1
                v += 1
        return out

    def adjacency_times(self, b: int) -> int:
        """Matrix-vector product ``A @ b`` over F2 (XOR of selected rows)."""
        acc = 0
        j = 0
        while b:
            if b & 1:
                acc ^= self.adjacency[j]
            b >>= 1
            j += 1
        return acc


@dataclass(frozen=True)
class PauliString:
    """Hermitian n-qubit Pauli modulo phase, as an (x, z) bit-vector pair.

    Site ``k`` carries I/X/Z/Y for ``(x_k, z_k)`` = (0,0)/(1,0)/(0,1)/(1,1).
    """

    n: int
    x: int
    z: int

    def __post_init__(self):
        mask = (1 << self.n) - 1
        if self.x & ~mask or self.z & ~mask:
            raise ValueError("x/z bits exceed qubit count")

    def letters(self) -> str:
        out = []
        for k in range(self.n):
            xk = (self.x >> k) & 1
            zk = (self.z >> k) & 1
            out.append("IXZY"[xk + 2 * zk])
        return "".join(out)

    def mul(self, other: "PauliString") -> "PauliString":
        """Phase-free product (XOR of symplectic pairs)."""
        if other.n != self.n:
            raise ValueError("length mismatch")
        return PauliString(self.n, self.x ^ other.x, self.z ^ other.z)

    def commutes_with(self, other: "PauliString") -> bool:
        """Symplectic-form test: True iff the two strings commute."""
        return parity(self.x & other.z) == parity(self.z & other.x)

    def __str__(self) -> str:
        return self.letters()


def complete_graph(n: int) -> Graph:
    """Complete graph on ``n`` vertices (``n = 1`` has no edges)."""
    mask = (1 << n) - 1
    return Graph(n, tuple(mask ^ (1 << j) for j in range(n)))


def path_graph(n: int) -> Graph:
    """Linear (path) graph 0-1-...-(n-1)."""
    return graph_from_edges(n, [(j, j + 1) for j in range(n - 1)])


def graph_from_edges(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a graph from an edge list; duplicates collapse to one edge."""
    rows = [0] * n
    for u, v in edges:
        if u == v:
            raise ValueError(f"self-loop ({u},{v})")
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u},{v}) out of range for n={n}")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(n, tuple(rows))


def stabilizer_element(g: Graph, b: int) -> PauliString:
    """Product of the generators selected by ``b``, phases discarded.

    The x-part equals ``b`` and the z-part is ``A @ b`` over F2, which makes
    the indexing injective in the x-part.
    """
    if not 0 <= b < (1 << g.n):
        raise ValueError("index out of range")
    return PauliString(g.n, b, g.adjacency_times(b))


def stabilizer_sign(g: Graph, b: int) -> int:
    """Sign of the generator product relative to its Hermitian letters.

    The group element indexed by ``b`` equals ``sign * P`` where ``P`` is
    the phase-free Hermitian string from :func:`stabilizer_element`.  The
    sign is accumulated by normal-ordering the generator product into
    X-part-then-Z-part form and comparing with the i^(#Y) convention.
    """
    z_acc = 0
    flips = 0
    for j in range(g.n):
        if (b >> j) & 1:
            # moving X_j through the accumulated Z part costs a sign
            flips ^= (z_acc >> j) & 1
            z_acc ^= g.adjacency[j]
    z_final = g.adjacency_times(b)
    y_sites = (b & z_final).bit_count()
    if y_sites % 2:
        raise AssertionError("stabilizer element is not Hermitian")
    # element = (-1)^flips X^b Z^z = (-1)^flips (-i)^y_sites * Hermitian
    sign = -1 if flips else 1
    if y_sites % 4 == 2:
        sign = -sign
    return sign


def anticommutation_bit(b: int, p: PauliString) -> int:
    """1 if ``p`` anticommutes with the all-Z string selected by ``b``.

    Only the x-part of ``p`` can anticommute with Z factors, so this is the
    parity of ``b AND x``.
    """
    return parity(b & p.x)


def coset_members(g: Graph, b: int) -> set[PauliString]:
    """All phase-free Paulis that map the graph state to basis element ``b``.

    These are the products of the all-Z string for ``b`` with every
    stabilizer element; exactly ``2**n`` strings.
    """
    if g.n > COSET_ENUM_GUARD:
        raise ValueError(f"coset enumeration limited to n <= {COSET_ENUM_GUARD}")
    rep = PauliString(g.n, 0, b)
    return {rep.mul(stabilizer_element(g, i)) for i in range(1 << g.n)}


def graph_to_edgelist(g: Graph) -> str:
    """Serialize as ``n`` on line 1 and one ``u v`` pair per line after."""
    lines = [str(g.n)]
    lines += [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def graph_from_edgelist(text: str) -> Graph:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty edge-list")
    n = int(lines[0])
    edges = []
    for ln in lines[1:]:
        u, v = ln.split()
        edges.append((int(u), int(v)))
    return graph_from_edges(n, edges)
