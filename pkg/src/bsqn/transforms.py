"""Fast Walsh-Hadamard transform and error metrics on length-2^n vectors.

The transform implemented here is the unnormalized +/-1 butterfly:
``out[b] = sum_i (-1)^popcount(b AND i) v[i]``.  The diagonal vector ``a``
and the stabilizer-expectation vector ``w`` are related by ``w = wht(a)``
and ``a = wht(w) / 2**n``; normalization is applied explicitly at the call
sites that need it so repeated transforms do not accumulate rounding.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "wht_inplace",
    "wht",
    "a_from_w",
    "w_from_a",
    "error_metrics",
    "hellinger_diagnostic",
]

EXPLICIT_VECTOR_GUARD = 26  # 2^26 doubles = 512 MiB; hard stop above that


def _check_length(v: np.ndarray) -> int:
    m = v.shape[-1]
    if m == 0 or (m & (m - 1)) != 0:
        raise ValueError(f"length {m} is not a power of two")
    n = m.bit_length() - 1
    if n > EXPLICIT_VECTOR_GUARD:
        raise ValueError(f"explicit vectors limited to n <= {EXPLICIT_VECTOR_GUARD}")
    return m


def wht_inplace(v: np.ndarray) -> np.ndarray:
    """Unnormalized Walsh-Hadamard butterfly, in place, O(n 2^n)."""
    m = _check_length(v)
    h = 1
    while h < m:
        block = v.reshape(-1, 2, h)
        lo = block[:, 0, :].copy()
        hi = block[:, 1, :]
        block[:, 0, :] = lo + hi
        block[:, 1, :] = lo - hi
        h *= 2
    return v


def wht(v: np.ndarray) -> np.ndarray:
    """Copying variant of :func:`wht_inplace`."""
    return wht_inplace(np.array(v, dtype=float))


def w_from_a(a: np.ndarray) -> np.ndarray:
    """Stabilizer expectations from diagonal elements: ``w = wht(a)``."""
    return wht(a)


def a_from_w(w: np.ndarray) -> np.ndarray:
    """Diagonal elements from stabilizer expectations: ``a = wht(w)/2^n``."""
    out = wht(w)
    out /= out.shape[-1]
    return out


def error_metrics(a_hat: np.ndarray, a_true: np.ndarray) -> dict[str, float]:
    """l2/linf norms of ``a_hat - a_true`` plus the fidelity error |delta[0]|."""
    a_hat = np.asarray(a_hat, dtype=float)
    a_true = np.asarray(a_true, dtype=float)
    if a_hat.shape != a_true.shape:
        raise ValueError("shape mismatch")
    delta = a_hat - a_true
    return {
        "l2": float(np.linalg.norm(delta)),
        "linf": float(np.max(np.abs(delta))) if delta.size else 0.0,
        "fidelity_error": float(abs(delta[0])),
    }


def hellinger_diagnostic(p: np.ndarray, q: np.ndarray) -> float:
    """Hellinger distance between two distributions on the same support."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    if p.shape != q.shape:
        raise ValueError("shape mismatch")
    if np.any(p < 0) or np.any(q < 0):
        raise ValueError("negative entries")
    for name, v in (("p", p), ("q", q)):
        if abs(v.sum() - 1.0) > 1e-9:
            raise ValueError(f"{name} does not sum to 1")
    return float(np.linalg.norm(np.sqrt(p) - np.sqrt(q)) / np.sqrt(2.0))
