"""Decision layer: reconstruct, project, and threshold.

The end-to-end certifier takes K window sums, recovers an exponential-sum
model (reconstruction step), rebuilds the positive sample configuration over
the observed horizon, projects its log to mean zero, and compares the summed
reciprocal cost against a noise-derived threshold.  Outcomes are ternary:
``zero`` (certified neutral), ``nonzero`` (certified non-neutral), or
``inconclusive`` (degenerate or unresolvable data).
"""
from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import prony
from .cost import RatioBand, cost, tolerance_epsilon
from .loggeom import certificate_value, project_mean_zero
from .prony import PronyConfig, PronyModel, prony_reconstruct
from .rankcert import jacobian
from .signal import RationalParams, WindowData

POSITIVITY = "positivity"
NEUTRAL_INCONSISTENT = "neutral_inconsistent"
LIPSCHITZ_SINGULAR = "lipschitz_singular"


class Decision(str, enum.Enum):
    ZERO = "zero"
    NONZERO = "nonzero"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class PipelineConfig:
    """Tunables of the certification pipeline."""

    eps0: float = 1e-2
    prony: PronyConfig = field(default_factory=PronyConfig)
    # Absolute slack added to the neutral-consistency window check, scaled by
    # the magnitude of the first sum; absorbs roundtrip roundoff at eps = 0.
    neutral_slack: float = 1e-9
    # Floor on the zero/nonzero decision threshold; absorbs the O(eps_mach^2)
    # certificate value that mean-projection roundoff produces on an exactly
    # constant configuration when the declared noise (and hence the bound)
    # is zero.
    certificate_floor: float = 1e-24


DEFAULT_CONFIG = PipelineConfig()


@dataclass(frozen=True)
class CertReport:
    """Decision plus the quantitative bounds backing it."""

    decision: Decision
    certificate_value: Optional[float]
    defect_estimate: Optional[float]
    threshold: Optional[float]
    eps_bound: Optional[float]
    lipschitz_estimate: Optional[float]
    reconstruction: Optional[PronyModel]
    flags: frozenset = field(default_factory=frozenset)

    def to_json(self) -> str:
        return json.dumps(
            {
                "decision": self.decision.value,
                "certificate_value": self.certificate_value,
                "defect": self.defect_estimate,
                "threshold": self.threshold,
                "eps_bound": self.eps_bound,
                "L": self.lipschitz_estimate,
                "flags": sorted(self.flags),
                "model": json.loads(self.reconstruction.to_json())
                if self.reconstruction is not None
                else None,
            }
        )


def eps_bound(L: float, K: int, eps0: float, eps: float) -> float:
    """Quadratic certificate bound exp(L sqrt(K) eps0) * L^2 K eps^2 / 2.

    Valid for window noise of sup-norm eps within the regime eps <= eps0 on
    which the reconstruction Lipschitz constant L was established.
    """
    if L <= 0.0 or K < 1 or eps0 <= 0.0:
        raise ValueError("L, K, eps0 must be positive")
    if eps < 0.0:
        raise ValueError("eps must be nonnegative")
    if eps > eps0:
        raise ValueError(f"eps={eps} exceeds the certified regime eps0={eps0}")
    if eps == 0.0:
        return 0.0
    exponent = L * math.sqrt(K) * eps0
    if exponent > 700.0:
        # Conditioning so poor the bound is vacuous.
        return math.inf
    return 0.5 * math.exp(exponent) * L * L * K * eps * eps


def inverse_operator_norm(matrix) -> float:
    """Spectral norm of the inverse: 1 / smallest singular value."""
    m = np.asarray(matrix, dtype=float)
    sv = np.linalg.svd(m, compute_uv=False)
    if sv[-1] <= 0.0 or not np.isfinite(sv[-1]):
        raise ValueError("matrix is singular")
    return float(1.0 / sv[-1])


def estimate_lipschitz(params: RationalParams, W: int) -> float:
    """Conditioning of local parameter recovery from window sums.

    Operator 2-norm of the inverse Jacobian of the window map at ``params``.
    Raises on a singular Jacobian (degenerate locus).
    """
    jac = np.asarray(jacobian(params, W), dtype=float)
    return inverse_operator_norm(jac)


def decide_certificate(u, threshold: float) -> Decision:
    """Two-valued coercive decision on a projected log-vector."""
    if threshold < 0.0:
        raise ValueError("threshold must be nonnegative")
    value = certificate_value(u)
    return Decision.ZERO if value <= threshold else Decision.NONZERO


def _samples_from_model(model: PronyModel, W: int, n_samples: int):
    """Per-sample reconstruction of the model over the report horizon.

    Each window-sum node mu maps to the sample rate a = mu^(1/W) with weight
    chosen so the geometric block sums reproduce the window amplitudes; a node
    at 1 contributes a constant A/W per sample.  Returns None when a node is
    not a positive real (no positive sample realization in this family).
    """
    rates = []
    weights = []
    for mu, amp in zip(model.nodes, model.amplitudes):
        mu = complex(mu)
        if abs(mu.imag) > 0.0 or mu.real <= 0.0:
            return None
        mu = mu.real
        amp = complex(amp).real
        if abs(mu - 1.0) <= 1e-12:
            rates.append(1.0)
            weights.append(amp / W)
        else:
            a = mu ** (1.0 / W)
            rates.append(a)
            weights.append(amp * (1.0 - a) / (1.0 - mu))
    n = np.arange(n_samples)
    samples = np.zeros(n_samples)
    for a, w in zip(rates, weights):
        samples = samples + w * a**n
    return rates, weights, samples


def _params_from_samples(rates, samples, d: int) -> RationalParams:
    """Rational parameters of the reconstructed sample signal."""
    poly = np.poly(np.asarray(rates))
    recurrence = tuple(float(c) for c in poly[1:])
    initial = tuple(float(v) for v in samples[: d + 1])
    return RationalParams(initial, recurrence, d)


def _inconclusive(model: Optional[PronyModel], flags) -> CertReport:
    return CertReport(
        decision=Decision.INCONCLUSIVE,
        certificate_value=None,
        defect_estimate=None,
        threshold=None,
        eps_bound=None,
        lipschitz_estimate=None,
        reconstruction=model,
        flags=frozenset(flags),
    )


def pipeline(
    w: WindowData,
    d: int,
    noise_eps: float = 0.0,
    config: PipelineConfig = DEFAULT_CONFIG,
) -> CertReport:
    """End-to-end certification of K window sums at declared noise level.

    Reconstruction failures (degenerate Prony step, non-positive sample
    values, singular conditioning) yield ``inconclusive`` with flags; they
    never escape as exceptions.
    """
    K = w.count
    if K < 2 * d:
        raise ValueError(f"need at least 2d={2 * d} windows, got {K}")
    if noise_eps < 0.0:
        raise ValueError("noise_eps must be nonnegative")

    model = prony_reconstruct(w, d, config.prony)
    if model.degenerate:
        return _inconclusive(model, model.flags)

    horizon = w.block_length * K
    rebuilt = _samples_from_model(model, w.block_length, horizon)
    if rebuilt is None:
        return _inconclusive(model, {POSITIVITY})
    rates, _, samples = rebuilt
    if np.any(samples <= 0.0) or not np.all(np.isfinite(samples)):
        return _inconclusive(model, {POSITIVITY})

    try:
        lipschitz = estimate_lipschitz(
            _params_from_samples(rates, samples, d), w.block_length
        )
    except (ValueError, np.linalg.LinAlgError):
        return _inconclusive(model, {LIPSCHITZ_SINGULAR})

    threshold = eps_bound(lipschitz, K, config.eps0, noise_eps)
    u = project_mean_zero(np.log(samples))
    value = certificate_value(u)
    defect_estimate = float(np.linalg.norm(u))

    flags = set()
    if value <= max(threshold, config.certificate_floor):
        # A zero verdict additionally requires the observed windows to be
        # consistent with a constant (neutral) realization within the noise.
        neutral_level = float(np.exp(np.mean(np.log(samples))))
        neutral_sums = w.block_length * neutral_level
        slack = noise_eps + config.neutral_slack * max(1.0, abs(neutral_sums))
        observed = np.asarray(w.sums, dtype=float)
        if np.max(np.abs(observed - neutral_sums)) <= slack:
            decision = Decision.ZERO
        else:
            decision = Decision.INCONCLUSIVE
            flags.add(NEUTRAL_INCONSISTENT)
    else:
        decision = Decision.NONZERO

    return CertReport(
        decision=decision,
        certificate_value=value,
        defect_estimate=defect_estimate,
        threshold=threshold,
        eps_bound=threshold,
        lipschitz_estimate=lipschitz,
        reconstruction=model,
        flags=frozenset(flags),
    )


def meaning_set(costs) -> set:
    """Indices attaining the minimum cost (1-ulp quantization guard)."""
    values = [float(c) for c in costs]
    if not values:
        raise ValueError("cost list must be nonempty")
    lo = min(values)
    guard = math.nextafter(lo, math.inf)
    return {i for i, c in enumerate(values) if c <= guard}


def eps_meaning_set(costs, eps: float) -> set:
    """Indices within eps of the minimum cost."""
    if eps < 0.0:
        raise ValueError("eps must be nonnegative")
    values = [float(c) for c in costs]
    if not values:
        raise ValueError("cost list must be nonempty")
    lo = min(values)
    guard = math.nextafter(lo + eps, math.inf)
    return {i for i, c in enumerate(values) if c <= guard}


@dataclass(frozen=True)
class CostedCandidates:
    """A state scale, candidate scales, and the band containing their ratios."""

    state_scale: float
    candidate_scales: tuple
    band: RatioBand

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "candidate_scales", tuple(float(v) for v in self.candidate_scales)
        )
        if self.state_scale <= 0.0 or any(v <= 0.0 for v in self.candidate_scales):
            raise ValueError("all scales must be positive")
        for v in self.candidate_scales:
            if not self.band.contains(self.state_scale / v):
                raise ValueError(
                    f"ratio {self.state_scale / v} outside band "
                    f"[{self.band.lower}, {self.band.upper}]"
                )


def rank_candidates(cands: CostedCandidates, observed_ratios, delta: float):
    """Pick the candidate with minimal cost of its observed ratio.

    With relative ratio error at most delta, the winner's true cost is within
    2 * guarantee_eps of the true minimum.  Returns (best_index,
    guarantee_eps).
    """
    ratios = [float(r) for r in observed_ratios]
    if len(ratios) != len(cands.candidate_scales):
        raise ValueError("one observed ratio per candidate required")
    for r in ratios:
        if not cands.band.contains(r):
            raise ValueError(f"observed ratio {r} outside band")
    costs = [cost(r) for r in ratios]
    best = min(range(len(costs)), key=costs.__getitem__)
    return best, tolerance_epsilon(cands.band, delta)
