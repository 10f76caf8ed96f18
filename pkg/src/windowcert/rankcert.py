"""Identifiability certificates for the truncated window map.

The map from parameters (y_0..y_d, q_1..q_d) to the first 2d+1 window sums is
polynomial; a single integer point where its Jacobian determinant is nonzero
modulo a prime certifies that the determinant is nonzero over the reals, hence
that the map is locally invertible on an open dense parameter set.

The Jacobian is assembled by propagating parameter derivatives through the
recurrence: u_n + q_1 u_{n-1} + ... + q_d u_{n-d} equals 0 when differentiating
with respect to an initial value, and -y_{n-j} when differentiating with
respect to q_j.  Integer parameters give a bit-exact integer matrix (Python
ints are arbitrary precision, so exact assembly never overflows).
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass
from typing import Optional

from .signal import RationalParams, generate_sequence, window_sums

# Witness bases make Miller-Rabin deterministic below 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for moduli used in certificates."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _derivative_rows(params: RationalParams, W: int, modulus: Optional[int] = None):
    """Rows of the Jacobian of the first 2d+1 window sums, one per window.

    Column order is (y_0..y_d, q_1..q_d).  With ``modulus`` set, all
    arithmetic is reduced mod that value.
    """
    d = params.degree
    K = 2 * d + 1
    n_max = W * K - 1
    q = list(params.recurrence)
    y = generate_sequence(params, n_max)
    if modulus is not None:
        q = [v % modulus for v in q]
        y = [v % modulus for v in y]

    def step(u, n, source):
        v = -sum(q[m - 1] * u[n - m] for m in range(1, d + 1)) + source
        return v % modulus if modulus is not None else v

    columns = []
    for alpha in range(2 * d + 1):
        u = [0] * (d + 1)
        if alpha <= d:
            u[alpha] = 1
            for n in range(d + 1, n_max + 1):
                u.append(step(u, n, 0))
        else:
            j = alpha - d
            for n in range(d + 1, n_max + 1):
                u.append(step(u, n, -y[n - j]))
        columns.append(u)

    rows = []
    for k in range(K):
        row = [sum(col[W * k + j] for j in range(W)) for col in columns]
        if modulus is not None:
            row = [v % modulus for v in row]
        rows.append(row)
    return rows


def jacobian(params: RationalParams, W: int) -> list:
    """(2d+1) x (2d+1) Jacobian of the window map; exact for integer params."""
    if W < 1:
        raise ValueError("W must be >= 1")
    return _derivative_rows(params, W)


def jacobian_mod(params: RationalParams, W: int, p: int) -> list:
    """Jacobian with all arithmetic reduced modulo the prime p."""
    if W < 1:
        raise ValueError("W must be >= 1")
    if not is_prime(p):
        raise ValueError(f"modulus {p} is not prime")
    if not params.is_integer:
        raise ValueError("modular mode requires integer parameters")
    return _derivative_rows(params, W, modulus=p)


def det_mod(matrix, p: int) -> int:
    """Determinant residue in [0, p) by Gaussian elimination over F_p."""
    if not is_prime(p):
        raise ValueError(f"modulus {p} is not prime")
    m = [[int(v) % p for v in row] for row in matrix]
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("matrix must be square")
    det = 1
    for i in range(n):
        pivot = next((r for r in range(i, n) if m[r][i]), None)
        if pivot is None:
            return 0
        if pivot != i:
            m[i], m[pivot] = m[pivot], m[i]
            det = -det % p
        det = det * m[i][i] % p
        inv = pow(m[i][i], p - 2, p)
        for r in range(i + 1, n):
            f = m[r][i] * inv % p
            if f:
                m[r] = [(a - f * b) % p for a, b in zip(m[r], m[i])]
    return det


@dataclass(frozen=True)
class RankCertificate:
    """Integer witness point plus its modular determinant verdict."""

    params: RationalParams
    d: int
    W: int
    prime: int
    jacobian: tuple
    det_residue: int
    nonzero: bool
    window_sums: tuple
    exact: bool = True

    def to_json(self) -> str:
        return json.dumps(
            {
                "d": self.d,
                "W": self.W,
                "p": self.prime,
                "pi0": [int(v) for v in self.params.as_vector()],
                "window_sums": [str(v) for v in self.window_sums],
                "jacobian": [[str(v) for v in row] for row in self.jacobian],
                "det_mod_p": self.det_residue,
                "nonzero": self.nonzero,
                "exact": self.exact,
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "RankCertificate":
        obj = json.loads(text)
        d = int(obj["d"])
        return cls(
            params=RationalParams.from_vector([int(v) for v in obj["pi0"]], d),
            d=d,
            W=int(obj["W"]),
            prime=int(obj["p"]),
            jacobian=tuple(tuple(int(v) for v in row) for row in obj["jacobian"]),
            det_residue=int(obj["det_mod_p"]),
            nonzero=bool(obj["nonzero"]),
            window_sums=tuple(int(v) for v in obj["window_sums"]),
            exact=bool(obj["exact"]),
        )


def certify_witness(params: RationalParams, d: int, W: int, p: int) -> RankCertificate:
    """Assemble the exact Jacobian at an integer point and its verdict mod p."""
    if params.degree != d:
        raise ValueError(f"params have degree {params.degree}, expected {d}")
    if not params.is_integer:
        raise ValueError("witness certification requires integer parameters")
    if not is_prime(p):
        raise ValueError(f"modulus {p} is not prime")
    jac = jacobian(params, W)
    residue = det_mod(jac, p)
    sums = window_sums(generate_sequence(params, W * (2 * d + 1) - 1), W, 2 * d + 1)
    return RankCertificate(
        params=params,
        d=d,
        W=W,
        prime=p,
        jacobian=tuple(tuple(row) for row in jac),
        det_residue=residue,
        nonzero=residue != 0,
        window_sums=sums.sums,
        exact=True,
    )


def search_witness(
    d: int,
    W: int,
    coordinate_bound: int,
    p: int,
    seed: int = 0,
    max_trials: int = 100,
) -> Optional[RankCertificate]:
    """Randomized search for an integer point with nonsingular Jacobian mod p.

    Deterministic given the seed; trials draw coordinates uniformly from
    [-bound, bound], skipping the all-zero recurrence.  Returns None after
    max_trials failures.
    """
    if coordinate_bound < 1:
        raise ValueError("coordinate_bound must be >= 1")
    if not is_prime(p):
        raise ValueError(f"modulus {p} is not prime")
    rng = random.Random(seed)
    for _ in range(max_trials):
        pi = [rng.randint(-coordinate_bound, coordinate_bound) for _ in range(2 * d + 1)]
        if all(v == 0 for v in pi[d + 1 :]):
            continue
        cert = certify_witness(RationalParams.from_vector(pi, d), d, W, p)
        if cert.nonzero:
            return cert
    return None


def hankel_witness_det(d: int, W: int) -> float:
    """Explicit positive Hankel determinant of the rate family a_i = 1/(i+1).

    The window sums of y_n = sum_i a_i^n have Hankel determinant
    (prod_{i<j} (mu_j - mu_i))^2 * prod_i B_i with mu_i = a_i^W and
    B_i = (1 - a_i^W)/(1 - a_i).
    """
    if d < 1 or W < 1:
        raise ValueError("d and W must be >= 1")
    rates = [1.0 / (i + 2) for i in range(d)]
    mu = [a**W for a in rates]
    amp = [(1.0 - a**W) / (1.0 - a) for a in rates]
    vdm = 1.0
    for i in range(d):
        for j in range(i + 1, d):
            vdm *= mu[j] - mu[i]
    det = vdm * vdm
    for b in amp:
        det *= b
    return det
