"""Packed bit-vector helpers shared by the samplers and estimators.

Bulk data (error strings, syndromes, sampled indices) is held as uint64 word
arrays of shape (N, W) with W = ceil(n / 64); bit ``j`` of word ``w`` is
qubit ``64*w + j``, consistent with the int encoding in :mod:`bsqn.graphs`.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "words_per",
    "int_to_words",
    "ints_to_words",
    "words_to_ints",
    "pack_bit_matrix",
    "transpose_bits",
    "parity_with_mask",
]

WORD_BITS = 64
_WORD_MASK = (1 << 64) - 1


def words_per(n: int) -> int:
    return (n + WORD_BITS - 1) // WORD_BITS


def int_to_words(b: int, n: int) -> np.ndarray:
    w = words_per(n)
    out = np.empty(w, dtype=np.uint64)
    for i in range(w):
        out[i] = (b >> (WORD_BITS * i)) & _WORD_MASK
    return out


def ints_to_words(bs, n: int) -> np.ndarray:
    out = np.empty((len(bs), words_per(n)), dtype=np.uint64)
    for r, b in enumerate(bs):
        out[r] = int_to_words(int(b), n)
    return out


def words_to_ints(words: np.ndarray) -> list[int]:
    words = np.atleast_2d(words)
    out = []
    for row in words:
        b = 0
        for i, word in enumerate(row):
            b |= int(word) << (WORD_BITS * i)
        out.append(b)
    return out


def pack_bit_matrix(bits: np.ndarray) -> np.ndarray:
    """Pack an (N, n) 0/1 matrix into (N, W) uint64 words."""
    n_rows, n = bits.shape
    w = words_per(n)
    padded = np.zeros((n_rows, w * WORD_BITS), dtype=np.uint64)
    padded[:, :n] = bits
    weights = (np.uint64(1) << np.arange(WORD_BITS, dtype=np.uint64))
    return (padded.reshape(n_rows, w, WORD_BITS) * weights).sum(axis=2, dtype=np.uint64)


def random_bit_words(count: int, n: int, rng: np.random.Generator) -> np.ndarray:
    """``count`` uniform n-bit strings as packed (count, W) words."""
    w = words_per(n)
    draws = rng.integers(0, 2**64, size=(count, w), dtype=np.uint64)
    tail = n - WORD_BITS * (w - 1)
    if tail < WORD_BITS:
        draws[:, -1] &= np.uint64((1 << tail) - 1)
    return draws


def transpose_bits(words: np.ndarray, n: int) -> np.ndarray:
    """Transpose an (N, W) packed matrix to (n, ceil(N/64)) packed columns.

    Row q of the result packs bit q of every input row along the shot
    axis, so XOR-accumulating rows computes per-shot parities in bulk.
    """
    big = words.shape[0]
    cols = (big + WORD_BITS - 1) // WORD_BITS
    bits = np.zeros((n, cols * WORD_BITS), dtype=np.uint64)
    for q in range(n):
        w, b = divmod(q, WORD_BITS)
        bits[q, :big] = (words[:, w] >> np.uint64(b)) & np.uint64(1)
    weights = np.uint64(1) << np.arange(WORD_BITS, dtype=np.uint64)
    return (bits.reshape(n, cols, WORD_BITS) * weights).sum(axis=2, dtype=np.uint64)


def parity_with_mask(words: np.ndarray, mask: np.ndarray) -> np.ndarray:
    """Per-row parity of popcount(row AND mask) for an (N, W) word array."""
    masked = np.bitwise_and(words, mask[np.newaxis, :])
    return (np.bitwise_count(masked).sum(axis=1) & 1).astype(np.uint8)
