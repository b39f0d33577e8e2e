"""The estimation protocols: full-vector and random-element Bell-sampling
estimation, and the single-copy direct-measurement baselines.

Sign handling: the magnitudes from two-copy sampling lose the sign of each
stabilizer expectation.  When some diagonal element exceeds 1/2, its index
fixes every sign deterministically; the caller must assert that premise
through a :class:`SignRule`, otherwise estimation refuses.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _bits
from .bellsampler import CHatVector, c_hat_selected
from .graphs import Graph, stabilizer_element
from .noise import DiagonalState, sample_errors
from .transforms import a_from_w

__all__ = [
    "SignRule",
    "RandomElementEstimate",
    "MeasurementSetting",
    "MeasurementPlan",
    "bsqn_full",
    "bsqn_random_element",
    "dge_plan",
    "dge_simulate",
]


@dataclass(frozen=True)
class SignRule:
    """Reference index whose diagonal element is asserted to exceed 1/2."""

    reference_index: int = 0
    asserted: bool = False

    def require(self):
        if not self.asserted:
            raise ValueError(
                "sign recovery needs an asserted reference element > 1/2; "
                "construct SignRule(reference_index=..., asserted=True)"
            )


def bsqn_full(c_hat: CHatVector, sign_rule: SignRule) -> np.ndarray:
    """Full diagonal vector from a complete vector of squared estimates.

    Signs come from the reference index: sign of element i is
    (-1)^popcount(ref AND i).  With the default reference 0 all signs are
    positive.  Negative clipped squares contribute zero magnitude.
    """
    sign_rule.require()
    if c_hat.indices is not None:
        raise ValueError("full-vector estimation needs the complete c vector")
    ref = sign_rule.reference_index
    size = c_hat.values.shape[0]
    idx = np.arange(size, dtype=np.uint64)
    signs = np.where(
        np.bitwise_count(idx & np.uint64(ref)).astype(int) & 1, -1.0, 1.0
    )
    w_hat = signs * np.sqrt(c_hat.values)
    return a_from_w(w_hat)


@dataclass
class RandomElementEstimate:
    """Outcome of estimating one diagonal element from sampled indices."""

    target_b: int
    M: int
    indices: list[int]
    c_hat: np.ndarray
    estimate: float


def bsqn_random_element(
    syndromes: np.ndarray,
    n: int,
    target_b: int,
    M: int,
    rng: np.random.Generator,
    sign_rule: SignRule,
) -> RandomElementEstimate:
    """Estimate a single diagonal element from M uniformly sampled indices.

    Indices are drawn with replacement as n independent fair bits each, so
    repeats and the identity index are allowed.  The shared syndrome
    stream serves every sampled index; no 2^n-sized structure is built.
    """
    sign_rule.require()
    if M < 1:
        raise ValueError("M must be positive")
    index_words = _bits.random_bit_words(M, n, rng)
    indices = _bits.words_to_ints(index_words)
    c = c_hat_selected(syndromes, indices, n)
    flip = target_b ^ sign_rule.reference_index
    signs = np.array([-1.0 if (flip & i).bit_count() & 1 else 1.0 for i in indices])
    estimate = float(np.mean(signs * np.sqrt(c.values)))
    return RandomElementEstimate(target_b, M, indices, c.values, estimate)


@dataclass(frozen=True)
class MeasurementSetting:
    """One single-copy setting: per-qubit basis letters plus the group
    elements readable from it (index, support mask)."""

    bases: str
    stabilizers: tuple[tuple[int, int], ...]


@dataclass
class MeasurementPlan:
    n: int
    strategy: str
    settings: list[MeasurementSetting]
    shots_per_setting: list[int] = field(default_factory=list)

    def minimum_shots(self) -> int:
        return len(self.settings)


def _is_complete(g: Graph) -> bool:
    mask = (1 << g.n) - 1
    return all(g.adjacency[j] == mask ^ (1 << j) for j in range(g.n))


def _setting_for_element(g: Graph, b: int) -> MeasurementSetting:
    p = stabilizer_element(g, b)
    support = p.x | p.z
    letters = []
    for k in range(g.n):
        if (support >> k) & 1:
            letters.append(p.letters()[k])
        else:
            letters.append("Z")  # arbitrary off-support basis
    return MeasurementSetting("".join(letters), ((b, support),))


def dge_plan(g: Graph, strategy: str) -> MeasurementPlan:
    """Group the 2^n - 1 nontrivial elements into measurement settings.

    naive: one setting per element, any graph.
    complete_overlap_y: complete graphs; one all-Y setting covers every
      even-weight element, plus one full-support setting per odd-weight
      element (2^(n-1) + 1 settings).
    complete_disjoint_y: complete graphs with even n; even-weight elements
      are paired with their bitwise complement into shared all-Y settings.
    """
    n = g.n
    full = (1 << n) - 1
    if strategy == "naive":
        settings = [_setting_for_element(g, b) for b in range(1, 1 << n)]
        return MeasurementPlan(n, strategy, settings)
    if strategy not in ("complete_overlap_y", "complete_disjoint_y"):
        raise ValueError(f"unknown strategy {strategy!r}")
    if not _is_complete(g):
        raise ValueError(f"{strategy} requires a complete graph")
    odd = [b for b in range(1, 1 << n) if b.bit_count() & 1]
    even = [b for b in range(1, 1 << n) if b.bit_count() % 2 == 0]
    odd_settings = [_setting_for_element(g, b) for b in odd]
    if strategy == "complete_overlap_y":
        all_y = MeasurementSetting("Y" * n, tuple((b, b) for b in even))
        return MeasurementPlan(n, strategy, [all_y] + odd_settings)
    if n % 2:
        raise ValueError("complete_disjoint_y requires even n")
    pair_settings = []
    seen = set()
    for b in even:
        partner = b ^ full
        if b in seen or partner in seen:
            continue
        seen.add(b)
        seen.add(partner)
        members = tuple((c, c) for c in sorted({b, partner}) if c != 0)
        pair_settings.append(MeasurementSetting("Y" * n, members))
    # the complement of the identity is all-ones, covered above via even list
    return MeasurementPlan(n, strategy, pair_settings + odd_settings)


def dge_simulate(
    plan: MeasurementPlan,
    g: Graph,
    state: DiagonalState,
    total_shots: int,
    rng: np.random.Generator,
) -> tuple[np.ndarray, np.ndarray]:
    """Simulate single-copy estimation under a plan; returns (w_hat, a_hat).

    Shots are floor-divided across settings and the remainder is handed
    out uniformly at random, one setting each.  Each shot draws an error
    string and yields eigenvalue (-1)^popcount(error AND index) for every
    element readable in that setting.
    """
    n_settings = len(plan.settings)
    if total_shots < n_settings:
        raise ValueError(
            f"budget {total_shots} below minimum of {n_settings} "
            f"(one shot per setting)"
        )
    base, rem = divmod(total_shots, n_settings)
    shots = np.full(n_settings, base, dtype=np.int64)
    if rem:
        shots[rng.choice(n_settings, size=rem, replace=False)] += 1
    plan.shots_per_setting = shots.tolist()

    size = 1 << plan.n
    sums = np.zeros(size)
    counts = np.zeros(size, dtype=np.int64)
    for setting, k in zip(plan.settings, shots):
        errors = sample_errors(state, int(k), rng)[:, 0]  # n <= 26 fits one word
        for b, _support in setting.stabilizers:
            par = np.bitwise_count(errors & np.uint64(b)).astype(np.int64) & 1
            sums[b] += float(k - 2 * par.sum())
            counts[b] += k
    w_hat = np.zeros(size)
    w_hat[0] = 1.0
    covered = counts > 0
    w_hat[covered] = sums[covered] / counts[covered]
    return w_hat, a_from_w(w_hat)
