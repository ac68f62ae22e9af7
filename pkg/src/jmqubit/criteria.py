"""Closed-form joint-measurability criteria for binary qubit POVMs.

Each criterion returns a Verdict carrying its decision, its logical strength
(iff / necessary-only / sufficient-only) and the signed slack ("margin") of
the tested inequality in its natural normalization. Ties |margin| <= 1e-12
resolve toward Compatible, matching the half-open purity intervals
(lo, bound] used throughout.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .povm import BinaryQubitPovm

TIE = 1e-12

COMPATIBLE = "compatible"
INCOMPATIBLE = "incompatible"
UNKNOWN = "unknown"

IFF = "iff"
NECESSARY_ONLY = "necessary-only"
SUFFICIENT_ONLY = "sufficient-only"


@dataclass(frozen=True)
class Verdict:
    decision: str
    strength: str
    margin: float
    criterion_id: str

    @property
    def is_compatible(self) -> bool:
        return self.decision == COMPATIBLE

    @property
    def is_incompatible(self) -> bool:
        return self.decision == INCOMPATIBLE


def _verdict(margin: float, strength: str, criterion_id: str) -> Verdict:
    """margin >= 0 means the criterion's compatibility inequality holds."""
    if margin >= -TIE:
        decision = COMPATIBLE
    elif strength == SUFFICIENT_ONLY:
        decision = UNKNOWN
    else:
        decision = INCOMPATIBLE
    if strength == NECESSARY_ONLY and decision == COMPATIBLE:
        # a satisfied necessary condition proves nothing
        decision = UNKNOWN
    return Verdict(decision, strength, float(margin), criterion_id)


# ---------------------------------------------------------------------------
# pairs


def pair_unbiased(eta1: float, n1, eta2: float, n2) -> Verdict:
    """Two unbiased POVMs: compatible iff |v+| + |v-| <= 2, v+- = eta1 n1 +- eta2 n2."""
    v1 = float(eta1) * np.asarray(n1, dtype=float)
    v2 = float(eta2) * np.asarray(n2, dtype=float)
    s = np.linalg.norm(v1 + v2) + np.linalg.norm(v1 - v2)
    return _verdict(2.0 - s, IFF, "pair-unbiased")


def _half_trace_radius(alpha: float, a: float) -> float:
    # F = (1/2)(sqrt(alpha^2 - a^2) + sqrt((2-alpha)^2 - a^2)), clipped for roundoff
    t1 = max(alpha * alpha - a * a, 0.0)
    t2 = max((2.0 - alpha) * (2.0 - alpha) - a * a, 0.0)
    return 0.5 * (math.sqrt(t1) + math.sqrt(t2))


def pair_general(p1: BinaryQubitPovm, p2: BinaryQubitPovm) -> Verdict:
    """General (possibly biased) pair criterion.

    Compatible iff
      (1 - F1^2 - F2^2)(1 - b1^2/F1^2 - b2^2/F2^2) <= (a1.a2 - b1 b2)^2
    with F_k the half-sum of the two effect determinant radii. F_k vanishes
    only for a projective measurement, where compatibility degenerates to
    commutation (parallel Bloch vectors); that branch is handled explicitly.
    """
    a1, a2 = p1.bloch, p2.bloch
    b1, b2 = p1.bias, p2.bias
    F1 = _half_trace_radius(1.0 + b1, p1.eta)
    F2 = _half_trace_radius(1.0 + b2, p2.eta)
    if F1 * F2 < 1e-12:
        # at least one projective measurement: compatible iff commuting
        cross = np.linalg.norm(np.cross(a1, a2))
        return _verdict(-cross, IFF, "pair-general")
    lhs = (1.0 - F1 * F1 - F2 * F2) * (
        1.0 - (b1 * b1) / (F1 * F1) - (b2 * b2) / (F2 * F2)
    )
    rhs = (float(np.dot(a1, a2)) - b1 * b2) ** 2
    return _verdict(rhs - lhs, IFF, "pair-general")


# ---------------------------------------------------------------------------
# Fermat-Torricelli point


class FtConvergenceError(RuntimeError):
    def __init__(self, residual: float):
        super().__init__(f"geometric-median iteration did not converge (residual {residual:.3e})")
        self.residual = residual


def _anchor_gradient(pts: np.ndarray, j: int) -> tuple:
    """Sum of unit vectors toward the other points, skipping coincident ones."""
    total = np.zeros(3)
    dup = 0
    for i in range(len(pts)):
        if i == j:
            continue
        d = pts[i] - pts[j]
        nd = np.linalg.norm(d)
        if nd < 1e-14:
            dup += 1
            continue
        total += d / nd
    return total, dup


def _diagonal_intersection(pts: np.ndarray):
    """Intersection of the diagonals if the 4 points are in convex position."""
    for (a, b), (c, d) in ((( 0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2))):
        u = pts[b] - pts[a]
        v = pts[d] - pts[c]
        M = np.stack([u, -v], axis=1)
        rhs = pts[c] - pts[a]
        sol, *_ = np.linalg.lstsq(M, rhs, rcond=None)
        t, s = sol
        if np.linalg.norm(M @ sol - rhs) > 1e-9:
            continue
        if 1e-9 < t < 1 - 1e-9 and 1e-9 < s < 1 - 1e-9:
            return pts[a] + t * u
    return None


def fermat_torricelli(points, max_iter: int = 10000) -> np.ndarray:
    """Minimizer of the total Euclidean distance to the given points.

    Anchor points are checked first via the subgradient condition; coplanar
    convex quadrilaterals use the diagonal-intersection shortcut (cross-checked
    against first-order optimality); otherwise Weiszfeld iteration runs from
    the centroid, perturbing away from non-optimal anchors.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 3:
        raise ValueError("points must be an (m,3) array")
    m = len(pts)

    for j in range(m):
        grad, dup = _anchor_gradient(pts, j)
        if np.linalg.norm(grad) <= 1.0 + dup + 1e-12:
            return pts[j].copy()

    scale = max(1.0, float(np.max(np.abs(pts))))
    if m == 4:
        rel = pts - pts.mean(axis=0)
        if abs(np.linalg.det(np.stack([rel[1] - rel[0], rel[2] - rel[0], rel[3] - rel[0]]))) <= 1e-10 * scale**3:
            y = _diagonal_intersection(pts)
            if y is not None:
                d = np.linalg.norm(pts - y, axis=1)
                grad = ((y - pts) / d[:, None]).sum(axis=0)
                if np.linalg.norm(grad) <= 1e-8:
                    return y

    y = pts.mean(axis=0)
    grad = np.full(3, np.inf)
    for _ in range(max_iter):
        d = np.linalg.norm(pts - y, axis=1)
        j = int(np.argmin(d))
        if d[j] < 1e-12 * scale:
            grad, dup = _anchor_gradient(pts, j)
            g = np.linalg.norm(grad)
            if g <= 1.0 + dup + 1e-12:
                return pts[j].copy()
            # non-optimal anchor: step off along the descent direction
            y = pts[j] + (1e-9 * scale) * grad / g
            continue
        w = 1.0 / d
        y_new = (w[:, None] * pts).sum(axis=0) / w.sum()
        step = np.linalg.norm(y_new - y)
        y = y_new
        d = np.linalg.norm(pts - y, axis=1)
        grad = ((y - pts) / d[:, None]).sum(axis=0)
        if np.linalg.norm(grad) <= 1e-9 or step <= 1e-15 * scale:
            return y
    residual = float(np.linalg.norm(grad))
    if residual <= 1e-6:
        return y
    raise FtConvergenceError(residual)


def total_distance(points, y) -> float:
    pts = np.asarray(points, dtype=float)
    return float(np.linalg.norm(pts - np.asarray(y, dtype=float), axis=1).sum())


# ---------------------------------------------------------------------------
# triples


def triple_unbiased(etas, ns) -> Verdict:
    """Three unbiased POVMs: compatible iff the FT objective of the four
    derived points v0 = -sum(eta_i n_i), v_j = -2 eta_j n_j - v0 is <= 4."""
    etas = np.asarray(etas, dtype=float)
    ns = np.asarray(ns, dtype=float)
    if etas.shape != (3,) or ns.shape != (3, 3):
        raise ValueError("need 3 purities and 3 unit vectors")
    a = etas[:, None] * ns
    v0 = -a.sum(axis=0)
    pts = np.vstack([v0, -2.0 * a - v0])
    try:
        y = fermat_torricelli(pts)
    except FtConvergenceError:
        return Verdict(UNKNOWN, IFF, float("nan"), "triple-ft")
    return _verdict(4.0 - total_distance(pts, y), IFF, "triple-ft")


def triple_coplanar_unbiased(a1, a2, a3) -> Verdict:
    """Coplanar unbiased triple with a2 the angular middle vector.

    If a2 is (sub)convex in {a1, a3} the pair condition on (a1, a3) applies;
    otherwise compatible iff |a1+a3| + |a2-a1| + |a3-a2| <= 2.
    """
    a1 = np.asarray(a1, dtype=float)
    a2 = np.asarray(a2, dtype=float)
    a3 = np.asarray(a3, dtype=float)
    A = np.stack([a1, a2, a3])
    svals = np.linalg.svd(A, compute_uv=False)
    if svals[-1] > 1e-10 * max(1.0, svals[0]):
        raise ValueError("vectors are not coplanar within 1e-10")
    M = np.stack([a1, a3], axis=1)
    coef, *_ = np.linalg.lstsq(M, a2, rcond=None)
    if np.linalg.norm(M @ coef - a2) > 1e-10:
        raise ValueError("middle vector not in the span of the outer vectors")
    lam, mu = float(coef[0]), float(coef[1])
    if lam < -1e-12 or mu < -1e-12:
        raise ValueError("middle-vector ordering violated: a2 must lie between a1 and a3")
    if lam + mu <= 1.0 + 1e-12:
        s = np.linalg.norm(a1 + a3) + np.linalg.norm(a3 - a1)
    else:
        s = np.linalg.norm(a1 + a3) + np.linalg.norm(a2 - a1) + np.linalg.norm(a3 - a2)
    return _verdict(2.0 - s, IFF, "triple-coplanar")


# ---------------------------------------------------------------------------
# N-POVM bounds, common purity


def n_necessary_sufficient(eta: float, ns) -> tuple:
    """Necessary and sufficient purity bounds for N unbiased same-purity POVMs.

    necessary: eta <= max_x |sum_k x_k n_k| / N over all sign strings x;
    sufficient: eta <= 2^N / sum_x |sum_k x_k n_k|.
    """
    ns = np.asarray(ns, dtype=float)
    N = len(ns)
    if N > 20:
        raise ValueError("N exceeds the 2^N enumeration cap of 20")
    signs = ((np.arange(2 ** N)[:, None] >> np.arange(N)) & 1) * 2.0 - 1.0
    norms = np.linalg.norm(signs @ ns, axis=1)
    nec_bound = float(norms.max()) / N
    suf_bound = (2.0 ** N) / float(norms.sum())
    nec = _verdict(nec_bound - eta, NECESSARY_ONLY, "n-wise-necessary")
    suf = _verdict(suf_bound - eta, SUFFICIENT_ONLY, "n-wise-sufficient")
    return nec, suf


def planar_nwise_bound(N: int) -> float:
    return 1.0 / (N * math.sin(math.pi / (2 * N)))


def planar_symmetric_nwise(N: int, eta: float) -> Verdict:
    """Full planar symmetric family: compatible iff eta <= 1/(N sin pi/2N)."""
    if N < 1:
        raise ValueError("N must be >= 1")
    return _verdict(planar_nwise_bound(N) - eta, IFF, "planar-symmetric-nwise")


def planar_pair_bound(N: int, gap: int) -> float:
    x = gap * math.pi / (2 * N)
    return 1.0 / (math.sin(x) + math.cos(x))


def planar_subset_bound(N: int, subset) -> float:
    ks = list(subset)
    gaps = [ks[p + 1] - ks[p] for p in range(len(ks) - 1)]
    span = ks[-1] - ks[0]
    return 1.0 / (
        sum(math.sin(g * math.pi / (2 * N)) for g in gaps)
        + math.cos(span * math.pi / (2 * N))
    )


def planar_subset_sufficient(N: int, subset, eta: float) -> Verdict:
    """Subset of a planar symmetric family; sufficient bound, iff for M in {2,3,N}."""
    ks = sorted(set(subset))
    if list(subset) != ks:
        raise ValueError("subset must be strictly increasing")
    if not ks or ks[0] < 1 or ks[-1] > N:
        raise ValueError("subset out of range")
    M = len(ks)
    strength = IFF if M in (1, 2, 3) or M == N else SUFFICIENT_ONLY
    return _verdict(planar_subset_bound(N, ks) - eta, strength, "planar-subset")


def coplanar_chain_bound(angles) -> float:
    """1/(sum sin(gap/2) + cos(last/2)) for line angles 0 < a_1 < ... < pi."""
    alphas = [0.0] + [float(a) for a in angles]
    sins = sum(
        math.sin((alphas[k + 1] - alphas[k]) / 2.0) for k in range(len(alphas) - 1)
    )
    return 1.0 / (sins + math.cos(alphas[-1] / 2.0))


def coplanar_same_purity_sufficient(angles, eta: float) -> Verdict:
    """Coplanar unbiased same-purity POVMs at line angles (0, a_1, ..., a_{N-1})."""
    alphas = [float(a) for a in angles]
    if any(b <= a for a, b in zip([0.0] + alphas, alphas)):
        raise ValueError("angles must be strictly increasing and positive")
    if alphas and alphas[-1] >= math.pi:
        raise ValueError("total span must stay below pi")
    strength = IFF if len(alphas) + 1 in (1, 2, 3) else SUFFICIENT_ONLY
    return _verdict(coplanar_chain_bound(alphas) - eta, strength, "coplanar-chain")


def pair_same_purity_bound(phi: float) -> float:
    return 1.0 / (abs(math.sin(phi / 2.0)) + abs(math.cos(phi / 2.0)))


def triple_same_purity_bound(phi1: float, phi2: float) -> float:
    """Same-purity coplanar triple with adjacent angular gaps phi1, phi2."""
    return 1.0 / (
        math.cos((phi1 + phi2) / 2.0) + math.sin(phi1 / 2.0) + math.sin(phi2 / 2.0)
    )


# ---------------------------------------------------------------------------
# general biased chain


def normalize_for_chain(povms) -> tuple:
    """Flip outcomes so every bias is >= 0, then stable-sort by bias.

    Returns (normalized povms, order, flips) where order[i] is the input index
    placed at position i and flips[i] says whether that input was relabeled.
    """
    flipped = []
    flips = []
    for p in povms:
        if p.bias < 0:
            flipped.append(BinaryQubitPovm(-p.bias, -p.bloch))
            flips.append(True)
        else:
            flipped.append(p)
            flips.append(False)
    order = sorted(range(len(povms)), key=lambda i: flipped[i].bias)
    return (
        [flipped[i] for i in order],
        tuple(order),
        tuple(flips[i] for i in order),
    )


def chain_margin(povms) -> float:
    """Slack of |a_1+a_N| + sum |a_p - a_{p+1}| <= 2(1 - max bias), normalized order."""
    ps, _, _ = normalize_for_chain(povms)
    a = [p.bloch for p in ps]
    lhs = float(np.linalg.norm(a[0] + a[-1]))
    lhs += sum(float(np.linalg.norm(a[p] - a[p + 1])) for p in range(len(a) - 1))
    rhs = 2.0 * (1.0 - max(p.bias for p in ps))
    return rhs - lhs


def general_binary_sufficient(povms) -> Verdict:
    """Sufficient chain condition for arbitrary binary qubit POVMs.

    Outcomes are flipped so all biases are non-negative and the POVMs are
    stable-sorted by bias (ties keep the caller's order), then the chain
    inequality is evaluated. Iff for N <= 2 unbiased; sufficient-only beyond.
    """
    if not povms:
        raise ValueError("need at least one POVM")
    iff = len(povms) <= 2 and all(p.is_unbiased for p in povms)
    strength = IFF if iff else SUFFICIENT_ONLY
    return _verdict(chain_margin(povms), strength, "biased-chain")


def best_chain_ordering(povms) -> tuple:
    """Search all orderings (up to path reversal) for the best chain margin.

    Only meaningful when biases tie (the convention otherwise pins the order).
    N <= 8.
    """
    N = len(povms)
    if N > 8:
        raise ValueError("ordering search capped at N = 8")
    best = None
    for perm in itertools.permutations(range(N)):
        if perm[::-1] < perm:
            continue  # a path and its reversal have the same margin
        m = chain_margin([povms[i] for i in perm])
        if best is None or m > best[1]:
            best = (perm, m)
    perm, margin = best
    strength = IFF if N <= 2 and all(p.is_unbiased for p in povms) else SUFFICIENT_ONLY
    return perm, _verdict(margin, strength, "biased-chain")
