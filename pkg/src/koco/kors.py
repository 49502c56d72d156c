"""Streaming kernel row sampling driven by online ridge-leverage scores.

The sampler keeps a dictionary of (index, weight) pairs. Each round the
incoming point is scored against the dictionary augmented with itself at
weight one, the score is inflated by (1+eps) so it over-estimates the
true leverage, and a Bernoulli coin with probability min(beta*score, 1)
decides whether the point joins the dictionary with importance weight
1/probability.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import SchurNotPositive
from .kernels import KernelSpec, cross_vector, eval_kernel
from .linalg import SCHUR_RTOL, RegularizedInverse
from .rng import bernoulli, named_rng


@dataclass(frozen=True)
class KorsConfig:
    alpha: float
    epsilon: float
    beta: float
    delta: float
    rng_seed: int = 0

    def __post_init__(self):
        if self.alpha <= 0:
            raise ValueError("alpha must be positive")
        if not 0.0 < self.epsilon <= 1.0:
            raise ValueError("epsilon must lie in (0, 1]")
        if self.beta <= 0:
            raise ValueError("beta must be positive")
        if not 0.0 < self.delta < 1.0:
            raise ValueError("delta must lie in (0, 1)")

    @property
    def rho(self) -> float:
        """Over/under-estimation ratio (1+eps)/(1-eps)."""
        if self.epsilon >= 1.0:
            return np.inf
        return (1.0 + self.epsilon) / (1.0 - self.epsilon)


def required_budget(horizon: int, delta: float, epsilon: float) -> float:
    """Smallest budget for which the sampler's guarantees are asserted."""
    return 3.0 * np.log(horizon / delta) / epsilon**2


def dict_size_bound(cfg: KorsConfig, d_onl: float) -> float:
    """High-probability cap on the dictionary size given the online dimension."""
    return 3.0 * cfg.rho * cfg.beta * d_onl / cfg.epsilon**2


@dataclass(frozen=True)
class DictEntry:
    index: int     # stream position of the member
    weight: float  # importance weight 1/prob
    prob: float    # acceptance probability used at admission


@dataclass
class KorsStep:
    tau_tilde: float
    p_tilde: float
    accepted: int
    size: int


@dataclass
class Dictionary:
    """Sampler state: member list plus the weighted selection inverse."""

    entries: list[DictEntry] = field(default_factory=list)
    sub_inv: RegularizedInverse | None = None
    # kernel data of the members, aligned with `entries`; sweights are the
    # selection-matrix diagonal entries 1/sqrt(prob)
    points: list[np.ndarray] = field(default_factory=list)
    d_scale: list[float] = field(default_factory=list)
    sweights: list[float] = field(default_factory=list)

    def __len__(self):
        return len(self.entries)


class KorsSampler:
    """Online row sampler over a (possibly gradient-rescaled) kernel stream.

    `d_t` below is the per-round rescale factor of the feature (1 for a
    plain kernel stream); kernel evaluations only ever touch dictionary
    members, so a step costs O(size^2).
    """

    def __init__(self, kernel: KernelSpec, cfg: KorsConfig):
        self.kernel = kernel
        self.cfg = cfg
        self.dict = Dictionary(sub_inv=RegularizedInverse(cfg.alpha))
        self._rng = named_rng(cfg.rng_seed, "kors-coins")
        self._pending: tuple[np.ndarray, float, np.ndarray, float] | None = None
        self._counter = 0

    @property
    def size(self) -> int:
        return len(self.dict)

    # -- scoring ---------------------------------------------------------

    def _member_column(self, x: np.ndarray, d_t: float) -> np.ndarray:
        """Weighted rescaled kernel column of x against the members."""
        if not self.dict.points:
            return np.zeros(0)
        ks = cross_vector(self.kernel, np.vstack(self.dict.points), x)
        return ks * np.asarray(self.dict.d_scale) * d_t * np.asarray(self.dict.sweights)

    def estimate_rls(self, x, d_t: float = 1.0) -> float:
        """Leverage over-estimate of x against dictionary-plus-self.

        The estimate equals (1+eps)(1 - alpha/s) where s is the Schur
        complement of the self column appended at weight one: the same
        floats the append-then-evict bordering would produce, with the
        eviction realized by never materializing the bordered block.
        """
        x = np.asarray(x, dtype=np.float64).reshape(-1)
        cross = self._member_column(x, d_t)
        kdiag = d_t * d_t * eval_kernel(self.kernel, x, x)
        return self._estimate_from_column(cross, kdiag, stash=(x, d_t))

    def _estimate_from_column(self, cross: np.ndarray, kdiag: float,
                              stash=None) -> float:
        s = self.dict.sub_inv.schur_complement(cross, kdiag)
        if s <= SCHUR_RTOL * (kdiag + self.cfg.alpha):
            raise SchurNotPositive(
                f"temporary member made the selection matrix singular (s={s:.3e})")
        tau = (1.0 + self.cfg.epsilon) * (1.0 - self.cfg.alpha / s)
        if stash is not None:
            self._pending = (stash[0], stash[1], cross, kdiag)
        return float(max(tau, 0.0))

    # -- sampling --------------------------------------------------------

    def sample(self, index: int, tau_tilde: float) -> tuple[float, int]:
        """Coin flip on the pending point; on success it joins the dictionary."""
        if self._pending is None:
            raise RuntimeError("sample() without a preceding estimate_rls()")
        x, d_t, cross, kdiag = self._pending
        self._pending = None
        p = min(self.cfg.beta * tau_tilde, 1.0)
        z = bernoulli(self._rng, p)
        if z:
            w = 1.0 / p
            # fold the admission weight into the appended row/column
            self.dict.sub_inv.append(cross * np.sqrt(w), kdiag * w)
            self.dict.entries.append(DictEntry(index=index, weight=w, prob=p))
            self.dict.points.append(x)
            self.dict.d_scale.append(d_t)
            self.dict.sweights.append(np.sqrt(w))
        return p, z

    def step(self, x, d_t: float = 1.0, index: int | None = None) -> KorsStep:
        """Score, flip, and (maybe) admit one stream point."""
        if index is None:
            self._counter += 1
            index = self._counter
        tau = self.estimate_rls(x, d_t)
        p, z = self.sample(index, tau)
        return KorsStep(tau_tilde=tau, p_tilde=p, accepted=z, size=self.size)

    # -- selection weights for audits -------------------------------------

    def selection_sq_weights(self, horizon: int) -> np.ndarray:
        """Squared selection weights over stream indices 1..horizon."""
        w = np.zeros(horizon)
        for e in self.dict.entries:
            if e.index <= horizon:
                w[e.index - 1] = e.weight
        return w
