"""Rational (finite-state) signals and the W-block window operator.

A degree-d rational signal is parameterized by initial values (y_0..y_d) and
recurrence coefficients (q_1..q_d); for n >= d+1 it satisfies
y_n = -(q_1 y_{n-1} + ... + q_d y_{n-d}).  The observable is the vector of
W-block window sums S_k = sum_{j<W} y_{Wk+j}.

Sequence generation runs in exact integer arithmetic when every parameter is
an integer (Python ints never overflow), and in double precision otherwise.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass

import numpy as np


def _is_int(v) -> bool:
    return isinstance(v, int) and not isinstance(v, bool)


@dataclass(frozen=True)
class RationalParams:
    """Parameter vector of a degree-<=d rational signal.

    ``initial`` has length degree+1, ``recurrence`` has length degree
    (trailing zeros allowed for lower effective degree).
    """

    initial: tuple
    recurrence: tuple
    degree: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "initial", tuple(self.initial))
        object.__setattr__(self, "recurrence", tuple(self.recurrence))
        if self.degree < 1:
            raise ValueError(f"degree must be >= 1, got {self.degree}")
        if len(self.initial) != self.degree + 1:
            raise ValueError(
                f"initial must have length degree+1={self.degree + 1}, "
                f"got {len(self.initial)}"
            )
        if len(self.recurrence) != self.degree:
            raise ValueError(
                f"recurrence must have length degree={self.degree}, "
                f"got {len(self.recurrence)}"
            )

    @classmethod
    def from_vector(cls, pi, degree: int) -> "RationalParams":
        pi = tuple(pi)
        if len(pi) != 2 * degree + 1:
            raise ValueError(f"parameter vector must have length {2 * degree + 1}")
        return cls(pi[: degree + 1], pi[degree + 1 :], degree)

    def as_vector(self) -> tuple:
        return self.initial + self.recurrence

    @property
    def is_integer(self) -> bool:
        return all(_is_int(v) for v in self.as_vector())


@dataclass(frozen=True)
class WindowData:
    """K window sums at block length W, with a declared noise tolerance."""

    sums: tuple
    block_length: int
    count: int
    noise_eps: float = 0.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "sums", tuple(self.sums))
        if self.block_length < 1:
            raise ValueError("block_length must be >= 1")
        if self.count != len(self.sums) or self.count < 1:
            raise ValueError("count must equal len(sums) and be >= 1")
        if self.noise_eps < 0.0:
            raise ValueError("noise_eps must be nonnegative")

    def to_json(self) -> str:
        return json.dumps(
            {
                "W": self.block_length,
                "K": self.count,
                "sums": [float(s) for s in self.sums],
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "WindowData":
        obj = json.loads(text)
        return cls(tuple(obj["sums"]), int(obj["W"]), int(obj["K"]))

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["k", "S_k"])
        for k, s in enumerate(self.sums):
            writer.writerow([k, repr(s) if isinstance(s, float) else s])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, block_length: int) -> "WindowData":
        rows = list(csv.reader(io.StringIO(text)))
        if not rows or rows[0][:2] != ["k", "S_k"]:
            raise ValueError("expected CSV header 'k,S_k'")
        sums = tuple(float(r[1]) for r in rows[1:] if r)
        return cls(sums, block_length, len(sums))


def generate_sequence(params: RationalParams, n_max: int) -> list:
    """Iterate the recurrence to produce y_0..y_{n_max}.

    Entries 0..d are the initial values verbatim; from n = d+1 on,
    y_n = -(q_1 y_{n-1} + ... + q_d y_{n-d}).  Integer parameters give an
    exact integer sequence.
    """
    d = params.degree
    if n_max < d:
        raise ValueError(f"n_max must be >= degree {d}, got {n_max}")
    q = params.recurrence
    y = list(params.initial)
    for n in range(d + 1, n_max + 1):
        y.append(-sum(q[m - 1] * y[n - m] for m in range(1, d + 1)))
    return y


def window_sums(sequence, W: int, K: int) -> WindowData:
    """Sum consecutive blocks of length W; exact for integer sequences."""
    if W < 1 or K < 1:
        raise ValueError("W and K must be >= 1")
    if len(sequence) < W * K:
        raise ValueError(
            f"sequence of length {len(sequence)} too short for {K} windows of {W}"
        )
    sums = tuple(sum(sequence[W * k + j] for j in range(W)) for k in range(K))
    return WindowData(sums, W, K)


def window_map(params: RationalParams, W: int) -> tuple:
    """First 2d+1 window sums of the signal generated from ``params``."""
    if W < 1:
        raise ValueError("W must be >= 1")
    d = params.degree
    K = 2 * d + 1
    seq = generate_sequence(params, W * K - 1)
    return window_sums(seq, W, K).sums


@dataclass(frozen=True)
class ExponentialMixture:
    """Positive mixture y_n = sum_j w_j a_j^n with distinct rates in (0, 1)."""

    rates: tuple
    weights: tuple

    def __post_init__(self) -> None:
        object.__setattr__(self, "rates", tuple(float(a) for a in self.rates))
        object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))
        if len(self.rates) != len(self.weights) or not self.rates:
            raise ValueError("rates and weights must be nonempty and equal length")
        if any(not 0.0 < a < 1.0 for a in self.rates):
            raise ValueError("rates must lie strictly in (0, 1)")
        if len(set(self.rates)) != len(self.rates):
            raise ValueError("rates must be pairwise distinct")
        if any(w <= 0.0 for w in self.weights):
            raise ValueError("weights must be strictly positive")

    @property
    def order(self) -> int:
        return len(self.rates)


def mixture_sequence(mix: ExponentialMixture, n_max: int) -> np.ndarray:
    """Samples y_0..y_{n_max} of the exponential mixture."""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    n = np.arange(n_max + 1)
    a = np.asarray(mix.rates)
    w = np.asarray(mix.weights)
    return (w[None, :] * a[None, :] ** n[:, None]).sum(axis=1)


def mixture_window_params(mix: ExponentialMixture, W: int):
    """Window-sum nodes and amplitudes induced by the mixture.

    The W-block sums of the mixture satisfy S_k = sum_i B_i mu_i^k with
    mu_i = a_i^W and B_i = w_i (1 - a_i^W) / (1 - a_i).
    """
    if W < 1:
        raise ValueError("W must be >= 1")
    if any(a == 1.0 for a in mix.rates):
        raise ValueError("rate equal to 1 makes the geometric block sum singular")
    nodes = tuple(a**W for a in mix.rates)
    amps = tuple(
        w * (1.0 - a**W) / (1.0 - a) for a, w in zip(mix.rates, mix.weights)
    )
    return nodes, amps
