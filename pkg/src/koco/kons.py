"""Exact kernel online Newton-step learner.

The learner never materializes feature-space weights. Each round it
predicts from a coefficient vector b over past rounds and a maintained
regularized inverse of the gradient-rescaled gram matrix, then folds
the observed derivative into one new coefficient and one appended
row/column. Predictions provably coincide with the explicit-feature
projected Newton recursion, which the test suite checks against the
oracle module at every step.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .kernels import KernelSpec, cross_vector, eval_kernel
from .linalg import RegularizedInverse
from .losses import LossEvent, clip_to_interval, loss_derivative, loss_value

ETA_FIXED_SIGMA = "fixed-sigma"
ETA_INVERSE_SQRT = "inverse-sqrt"

# q_t is positive in exact arithmetic but can underflow when many
# near-duplicate points arrive; floor it before dividing.
Q_FLOOR = 1e-12


@dataclass(frozen=True)
class KonsConfig:
    clip_c: float
    alpha: float
    eta_mode: str = ETA_FIXED_SIGMA
    sigma: float = 0.0
    lipschitz: float = 1.0

    def __post_init__(self):
        if self.clip_c <= 0:
            raise ValueError("clip_c must be positive")
        if self.alpha <= 0:
            raise ValueError("alpha must be positive")
        if self.eta_mode not in (ETA_FIXED_SIGMA, ETA_INVERSE_SQRT):
            raise ValueError(f"unknown eta mode {self.eta_mode!r}")
        if self.eta_mode == ETA_FIXED_SIGMA and self.sigma <= 0:
            raise ValueError("fixed-sigma stepsizes require sigma > 0")
        if self.lipschitz <= 0:
            raise ValueError("lipschitz must be positive")


def eta_at(cfg: KonsConfig, t: int) -> float:
    """Stepsize of round t (1-based)."""
    if t < 1:
        raise ValueError("rounds are 1-based")
    if cfg.eta_mode == ETA_FIXED_SIGMA:
        return cfg.sigma
    return float(1.0 / (cfg.lipschitz * cfg.clip_c * np.sqrt(t)))


@dataclass
class StepRecord:
    """Per-round trace entry (shared by all learners)."""

    t: int
    ybar: float          # unclipped prediction
    yhat: float          # clipped prediction actually played
    loss: float
    gdot: float          # observed scalar derivative
    eta: float
    tau: float           # leverage of the round in the learner's preconditioner
    p_accept: float      # sampling probability (1 for exact learners)
    accepted: int        # coin outcome (1 for exact learners)
    dict_size: int       # preconditioner support size after the round
    rg_increment: float  # gradient-term regret increment of the round
    elapsed_us: float = 0.0


class Kons:
    """Exact second-order kernel online learner with clipped predictions.

    One instance owns one stream; `step` is the driver path (predict,
    observe, and account in one call). State grows by one rescaled
    kernel row per round, so round t costs O(t^2) time.
    """

    def __init__(self, kernel: KernelSpec, cfg: KonsConfig):
        self.kernel = kernel
        self.cfg = cfg
        self.t = 0
        self.rg_total = 0.0
        self.reg_inv = RegularizedInverse(cfg.alpha)
        self._pts: np.ndarray | None = None  # grows (cap, dim)
        self._d = np.zeros(16)       # gdot_i * sqrt(eta_i)
        self._b = np.zeros(16)       # dual coefficients
        self._kbar_b = np.zeros(16)  # cached rescaled-gram @ b
        self.records: list[StepRecord] = []

    # -- buffers ---------------------------------------------------------

    def _grow(self, n: int) -> None:
        if self._d.shape[0] < n:
            cap = max(2 * self._d.shape[0], n)
            for name in ("_d", "_b", "_kbar_b"):
                old = getattr(self, name)
                new = np.zeros(cap)
                new[: self.t] = old[: self.t]
                setattr(self, name, new)
        if self._pts is not None and self._pts.shape[0] < n:
            cap = max(2 * self._pts.shape[0], n)
            new = np.zeros((cap, self._pts.shape[1]))
            new[: self.t] = self._pts[: self.t]
            self._pts = new

    @property
    def points(self) -> np.ndarray:
        if self._pts is None:
            return np.zeros((0, 0))
        return self._pts[: self.t]

    @property
    def d_scale(self) -> np.ndarray:
        return self._d[: self.t]

    @property
    def b(self) -> np.ndarray:
        return self._b[: self.t]

    @property
    def kbar_b(self) -> np.ndarray:
        return self._kbar_b[: self.t]

    # -- prediction ------------------------------------------------------

    def predict(self, x) -> tuple[float, float]:
        """(unclipped, clipped) prediction for input x; state untouched."""
        return self._predict(self._cross(x))

    def _cross(self, x) -> np.ndarray:
        if self.t == 0:
            return np.zeros(0)
        return cross_vector(self.kernel, self.points, x)

    def _predict(self, k: np.ndarray) -> tuple[float, float]:
        if self.t == 0:
            return 0.0, 0.0
        kd = k * self.d_scale
        ybar = (float(kd @ self.b)
                - float(kd @ self.reg_inv.apply(self.kbar_b))) / self.cfg.alpha
        return ybar, clip_to_interval(ybar, self.cfg.clip_c)

    # -- update ----------------------------------------------------------

    def step(self, x, ev: LossEvent) -> StepRecord:
        """Predict on x, incur the loss of ev, and absorb its derivative."""
        tic = time.perf_counter_ns()
        x = np.asarray(x, dtype=np.float64).reshape(-1)
        k = self._cross(x)
        ybar, yhat = self._predict(k)
        rec = self._observe(x, k, ev, ybar, yhat)
        rec.elapsed_us = (time.perf_counter_ns() - tic) / 1e3
        self.records.append(rec)
        return rec

    def observe(self, x, ev: LossEvent, ybar: float, yhat: float) -> StepRecord:
        """Absorb one round whose prediction was already computed."""
        x = np.asarray(x, dtype=np.float64).reshape(-1)
        rec = self._observe(x, self._cross(x), ev, ybar, yhat)
        self.records.append(rec)
        return rec

    def _observe(self, x: np.ndarray, k: np.ndarray, ev: LossEvent,
                 ybar: float, yhat: float) -> StepRecord:
        t_new = self.t + 1
        eta = eta_at(self.cfg, t_new)
        gdot = loss_derivative(ev, yhat)
        d_t = gdot * float(np.sqrt(eta))

        # rescaled kernel row of the new point (zero row when gdot == 0,
        # which leaves the preconditioner untouched, as it must)
        kc = k * self.d_scale * d_t
        kdiag = d_t * d_t * eval_kernel(self.kernel, x, x)

        q_raw = (kdiag - float(kc @ self.reg_inv.apply(kc))) / self.cfg.alpha
        q = max(q_raw, Q_FLOOR)
        b_t = d_t * yhat - d_t * (ybar - yhat) / q - 1.0 / np.sqrt(eta)

        self.reg_inv.append(kc, kdiag)

        if self._pts is None:
            self._pts = np.zeros((16, x.shape[0]))
        self._grow(t_new)
        self._pts[self.t] = x
        self._d[self.t] = d_t
        self._b[self.t] = b_t
        self._kbar_b[: self.t] += kc * b_t
        self._kbar_b[self.t] = float(kc @ self.b) + kdiag * b_t
        self.t = t_new

        # leverage of the round in its own (post-update) preconditioner;
        # the bordered corner gives it as q/(1+q)
        tau = max(q_raw, 0.0) / (1.0 + max(q_raw, 0.0))
        rg_inc = tau / eta
        self.rg_total += rg_inc

        return StepRecord(t=t_new, ybar=ybar, yhat=yhat,
                          loss=loss_value(ev, yhat), gdot=gdot, eta=eta,
                          tau=tau, p_accept=1.0, accepted=1,
                          dict_size=t_new, rg_increment=rg_inc)

    # -- audits ----------------------------------------------------------

    def audit_cache(self) -> float:
        """Max-abs deviation of the cached gram@b vector from scratch."""
        if self.t == 0:
            return 0.0
        return float(np.max(np.abs(self.reg_inv.mat @ self.b - self.kbar_b)))


# ---------------------------------------------------------------------------
# regret accounting
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RegretReport:
    r_t: float  # cumulative loss minus comparator loss
    r_g: float  # gradient (leverage) term
    r_d: float  # stepsize-excess term


def regret_report(records: list[StepRecord], comparator,
                  sigma_t: float) -> RegretReport:
    """Measured regret decomposition of a finished run.

    `comparator` supplies the per-point predictions and total loss of
    the best fixed clipped function; `sigma_t` is the curvature
    constant of the loss family on the run's interval.
    """
    if len(records) != len(comparator.preds):
        raise ValueError("trace and comparator cover different horizons")
    r_t = float(sum(r.loss for r in records) - comparator.total_loss)
    r_g = float(sum(r.rg_increment for r in records))
    r_d = float(sum((r.eta - sigma_t) * r.gdot**2 * (r.yhat - comparator.preds[i]) ** 2
                    for i, r in enumerate(records)))
    return RegretReport(r_t=r_t, r_g=r_g, r_d=r_d)
