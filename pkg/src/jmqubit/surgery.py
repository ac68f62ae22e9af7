"""Explicit joint-POVM constructors.

Covers the optimal joint for a full planar symmetric family, the marginal-
surgery recipes for pairs and M-element subsets of such a family, the general
coplanar same-purity chain construction, and the fully general (possibly
biased) chain construction. Every constructor checks its closed-form purity
bound up front (with 1e-12 slack) and produces a joint whose marginals equal
the requested POVMs to 1e-12.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .criteria import (
    chain_margin,
    coplanar_chain_bound,
    normalize_for_chain,
    planar_nwise_bound,
    planar_subset_bound,
)
from .povm import BinaryQubitPovm, Effect, JointPovm, apply_orthogonal

BOUND_SLACK = 1e-12


@dataclass(frozen=True)
class PlanarSymmetricFamily:
    """N unbiased POVMs of common purity whose Bloch lines dissect the plane
    equiangularly: n_k = (cos (k-1)pi/N, sin (k-1)pi/N, 0)."""

    n: int
    eta: float

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if not 0.0 < self.eta <= 1.0:
            raise ValueError("eta must be in (0, 1]")

    def direction(self, k: int) -> np.ndarray:
        if not 1 <= k <= self.n:
            raise IndexError("index out of range")
        theta = (k - 1) * math.pi / self.n
        return np.array([math.cos(theta), math.sin(theta), 0.0])

    def povm(self, k: int) -> BinaryQubitPovm:
        return BinaryQubitPovm(0.0, self.eta * self.direction(k))

    def povms(self, subset=None) -> list:
        ks = range(1, self.n + 1) if subset is None else subset
        return [self.povm(k) for k in ks]


def build_planar_symmetric_joint(fam: PlanarSymmetricFamily) -> JointPovm:
    """Optimal joint POVM for the full family: 2N nonzero effects
    (1/2N)(I + mu e.sigma) with mu = eta N sin(pi/2N), outcome of e given by
    the signs of n_k . e."""
    N, eta = fam.n, fam.eta
    mu = eta * N * math.sin(math.pi / (2 * N))
    if mu > 1.0 + BOUND_SLACK:
        raise ValueError(
            f"eta {eta} above the N-wise bound {planar_nwise_bound(N)}"
        )
    if N % 2 == 1:
        e_angles = [j * math.pi / N for j in range(2 * N)]
    else:
        e_angles = [(2 * j + 1) * math.pi / (2 * N) for j in range(2 * N)]
    effects = {}
    for ang in e_angles:
        e = np.array([math.cos(ang), math.sin(ang), 0.0])
        mask = 0
        for k in range(N):
            if math.cos(ang - k * math.pi / N) > 0.0:
                mask |= 1 << k
        effects[mask] = Effect(1.0 / N, (mu / N) * e)
    return JointPovm(N, effects, validate=False)


def _run_masks(n: int, p: int) -> tuple:
    """Bitmasks of (+1 x p, -1 x (n-p)) and its negation."""
    plus = (1 << p) - 1
    return plus, plus ^ ((1 << n) - 1)


def build_coplanar_same_purity_joint(angles, eta: float) -> JointPovm:
    """Joint POVM for N coplanar unbiased same-purity POVMs at line angles
    (0, a_1, ..., a_{N-1}), all in [0, pi).

    2N nonzero effects: for each p < N a rank-one pair with geometric part
    along t_p = (sin m_p, -cos m_p, 0), m_p the mean of adjacent angles, and
    two "all-equal" effects along s = (cos(a_{N-1}/2), sin(a_{N-1}/2), 0).
    """
    alphas = [0.0] + [float(a) for a in angles]
    N = len(alphas)
    if any(b <= a for a, b in zip(alphas, alphas[1:])):
        raise ValueError("angles must be strictly increasing and positive")
    if alphas[-1] >= math.pi:
        raise ValueError("total span must stay below pi")
    bound = coplanar_chain_bound(alphas[1:])
    if eta > bound + BOUND_SLACK:
        raise ValueError(f"eta {eta} above the chain bound {bound}")

    effects = {}
    sin_total = 0.0
    for p in range(1, N):
        half_gap = (alphas[p] - alphas[p - 1]) / 2.0
        mean = (alphas[p] + alphas[p - 1]) / 2.0
        w = eta * math.sin(half_gap)
        sin_total += math.sin(half_gap)
        t = np.array([math.sin(mean), -math.cos(mean), 0.0])
        k_plus, k_minus = _run_masks(N, p)
        effects[k_plus] = Effect(w, w * t)
        effects[k_minus] = Effect(w, -w * t)
    half_span = alphas[-1] / 2.0
    s = np.array([math.cos(half_span), math.sin(half_span), 0.0])
    a_eq = 1.0 - eta * sin_total
    g = eta * math.cos(half_span)
    all_plus = (1 << N) - 1
    effects[all_plus] = Effect(a_eq, g * s)
    effects[0] = Effect(a_eq, -g * s)
    return JointPovm(N, effects, validate=False)


def surgery_mtuple(N: int, subset, eta: float) -> JointPovm:
    """Joint POVM for the subset {k_1 < ... < k_M} of an N-member planar
    symmetric family at purity eta, valid up to the subset chain bound."""
    ks = list(subset)
    if ks != sorted(set(ks)) or not ks or ks[0] < 1 or ks[-1] > N:
        raise ValueError("subset must be strictly increasing within 1..N")
    bound = planar_subset_bound(N, ks)
    if eta > bound + BOUND_SLACK:
        raise ValueError(f"eta {eta} above the subset bound {bound}")
    rel_angles = [(k - ks[0]) * math.pi / N for k in ks[1:]]
    joint = build_coplanar_same_purity_joint(rel_angles, eta)
    theta0 = (ks[0] - 1) * math.pi / N
    c, s = math.cos(theta0), math.sin(theta0)
    rot = np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])
    return apply_orthogonal(joint, rot)


def surgery_pair(N: int, k1: int, k2: int, eta: float) -> JointPovm:
    """Marginal-surgery joint for the pair (E_k1, E_k2), k1 < k2."""
    if k1 >= k2:
        raise ValueError("need k1 < k2")
    return surgery_mtuple(N, [k1, k2], eta)


@dataclass(frozen=True)
class AppliedRelabeling:
    """Normalization applied inside the general chain constructor: the POVM
    placed at chain position i is input index order[i], with its outcomes
    flipped when flips[i] is set. The returned joint is already mapped back
    to the caller's order and labels."""

    order: tuple
    flips: tuple


def build_general_binary_joint(povms) -> tuple:
    """Chain joint for arbitrary binary qubit POVMs (possibly biased).

    Returns (JointPovm, AppliedRelabeling). Requires the chain inequality
    |a_1 + a_N| + sum |a_p - a_{p+1}| <= 2(1 - max bias) after flipping all
    biases non-negative and stable-sorting by bias.
    """
    if not povms:
        raise ValueError("need at least one POVM")
    margin = chain_margin(povms)
    if margin < -BOUND_SLACK:
        raise ValueError(f"chain inequality violated by {-margin}")
    ps, order, flips = normalize_for_chain(povms)
    N = len(ps)
    a = [p.bloch for p in ps]
    b = [p.bias for p in ps]

    effects = {}
    if N == 1:
        effects[1] = Effect(1.0 + b[0], a[0])
        effects[0] = Effect(1.0 - b[0], -a[0])
    else:
        half_sum = 0.0
        for p in range(1, N):
            t = 0.5 * (a[p - 1] - a[p])
            nt = float(np.linalg.norm(t))
            half_sum += nt
            k_plus, k_minus = _run_masks(N, p)
            effects[k_plus] = Effect(nt, t)
            effects[k_minus] = Effect(nt + (b[p] - b[p - 1]), -t)
        s = 0.5 * (a[0] + a[N - 1])
        effects[(1 << N) - 1] = Effect(1.0 + b[0] - half_sum, s)
        effects[0] = Effect(1.0 - b[N - 1] - half_sum, -s)

    # map chain positions/labels back to the caller's order
    mapped = {}
    for mask, eff in effects.items():
        out = 0
        for i in range(N):
            bit = (mask >> i) & 1
            if flips[i]:
                bit ^= 1
            if bit:
                out |= 1 << order[i]
        if out in mapped:
            raise AssertionError("outcome collision while relabeling")
        mapped[out] = eff
    joint = JointPovm(N, mapped, validate=False)
    return joint, AppliedRelabeling(order, flips)
