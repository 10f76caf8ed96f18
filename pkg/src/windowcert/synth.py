"""Reproducible synthetic datasets and the window-collision construction.

The two case-study fixtures pair an exponential-mixture ground truth with a
stored noisy observation vector.  Observed columns are literal constants: the
original noise draw is not reproducible from its seed alone, so regenerating
them would silently drift.  Noise injected here uses NumPy's PCG64 generator
with its standard normal transform and is deterministic per seed.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .signal import (
    ExponentialMixture,
    RationalParams,
    WindowData,
    generate_sequence,
    mixture_sequence,
    window_sums,
)


@dataclass(frozen=True)
class CaseStudyFixture:
    """A case-study dataset: mixture ground truth plus observed windows."""

    label: str
    d: int
    W: int
    mixture: ExponentialMixture
    true_windows: tuple
    observed_windows: tuple
    noise_level: float

    def observed(self) -> WindowData:
        return WindowData(
            self.observed_windows,
            self.W,
            len(self.observed_windows),
            noise_eps=self.noise_level,
        )

    def true(self) -> WindowData:
        return WindowData(self.true_windows, self.W, len(self.true_windows))


_CASE_A_MIXTURE = ExponentialMixture(
    rates=(0.831127, 0.872789, 0.853477),
    weights=(0.522164, 0.195934, 0.281902),
)

# Observed windows are stored verbatim (1% multiplicative noise draw).
_CASE_A_OBSERVED = (
    4.754830,
    1.303021,
    0.351327,
    0.097663,
    0.028026,
    0.008326,
    0.002474,
    7.69e-04,
    2.41e-04,
    7.78e-05,
    2.42e-05,
    7.93e-06,
)

_CASE_B_MIXTURE = ExponentialMixture(
    rates=(0.904182, 0.877627),
    weights=(0.801912, 0.198088),
)

# Observed windows are stored verbatim (2% multiplicative noise draw).
_CASE_B_OBSERVED = (
    4.578368,
    2.433641,
    1.304007,
    0.686328,
    0.380817,
    0.197523,
    0.104636,
    0.060241,
)

# Case C is an outline only: a configuration preset with no fixture numbers.
CASE_C_PRESET = {"label": "case-c", "d": 3, "W": 10}


def _true_windows(mix: ExponentialMixture, W: int, count: int) -> tuple:
    seq = mixture_sequence(mix, W * count - 1)
    return window_sums(seq, W, count).sums


def case_a_fixture() -> CaseStudyFixture:
    """Multi-exponential decay: d=3, W=8, 12 windows, 1% noise."""
    return CaseStudyFixture(
        label="case-a",
        d=3,
        W=8,
        mixture=_CASE_A_MIXTURE,
        true_windows=_true_windows(_CASE_A_MIXTURE, 8, 12),
        observed_windows=_CASE_A_OBSERVED,
        noise_level=0.01,
    )


def case_b_fixture() -> CaseStudyFixture:
    """Two-segment response decay: d=2, W=6, 8 windows, 2% noise."""
    return CaseStudyFixture(
        label="case-b",
        d=2,
        W=6,
        mixture=_CASE_B_MIXTURE,
        true_windows=_true_windows(_CASE_B_MIXTURE, 6, 8),
        observed_windows=_CASE_B_OBSERVED,
        noise_level=0.02,
    )


def add_multiplicative_noise(S, level: float, seed: int) -> np.ndarray:
    """out[k] = S[k] * (1 + level * g_k) with g_k standard normal (PCG64)."""
    if level < 0.0:
        raise ValueError("noise level must be nonnegative")
    s = np.asarray(S, dtype=float)
    rng = np.random.default_rng(seed)
    return s * (1.0 + level * rng.standard_normal(s.shape))


def collision_pair(
    base: Union[RationalParams, ExponentialMixture],
    d: int,
    W: int,
    K: int,
    extra_bumps: int = 6,
):
    """Two nonnegative prefixes with identical first K+1 window sums.

    The second prefix adds unit bumps at indices N + m^2 (N = W(K+1) - 1),
    which lie beyond the observed span but defeat every finite-depth linear
    recurrence: two consecutive bumps with gap wider than the recurrence
    depth force a unit residual.  Returns (y_in, y_out, N).
    """
    if W < 1 or K < 0:
        raise ValueError("need W >= 1 and K >= 0")
    n_bumps = max(extra_bumps, d + 2)
    big_n = W * (K + 1) - 1
    length = big_n + n_bumps * n_bumps + 1
    if isinstance(base, ExponentialMixture):
        y_in = [float(v) for v in mixture_sequence(base, length - 1)]
    else:
        y_in = [float(v) for v in generate_sequence(base, length - 1)]
    if any(v < 0.0 for v in y_in):
        raise ValueError("base sequence must be nonnegative")
    y_out = list(y_in)
    for m in range(1, n_bumps + 1):
        idx = big_n + m * m
        if idx < length:
            y_out[idx] += 1.0
    return y_in, y_out, big_n


def recurrence_fit_residual(sequence, d: int, start: int) -> float:
    """Max |residual| of the best depth-d least-squares recurrence fit.

    Fits coefficients q minimizing sum over n >= start of
    (y_n + q_1 y_{n-1} + ... + q_d y_{n-d})^2 and reports the worst residual
    of the optimum.  Near zero for depth-<=d rational tails; at least the
    bump height for tails with isolated unit bumps separated by more than d.
    """
    y = np.asarray(sequence, dtype=float)
    if start < d or start >= len(y):
        raise ValueError("fit range must start at index >= d and inside the sequence")
    rows = np.array([[y[n - m] for m in range(1, d + 1)] for n in range(start, len(y))])
    rhs = -y[start:]
    q, *_ = np.linalg.lstsq(rows, rhs, rcond=None)
    residuals = y[start:] + rows @ q
    return float(np.max(np.abs(residuals)))
