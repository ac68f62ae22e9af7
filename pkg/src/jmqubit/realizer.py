"""Certified realizations of joint-measurability structures.

Ships the N-cycle and N-Specker planar recipes, the named miscellaneous
scenarios (complete graphs, the 5-vertex triple cycle, three 6-vertex
structures), and the full atlas of all 20 four-vertex structures, including
the two special constructions (mixed purity / non-coplanar) for atlas id 6,
which provably cannot be realized with coplanar same-purity unbiased POVMs.

Each certificate carries a joint-POVM witness for every maximal compatible
set and a violated-criterion margin (or oracle report) for every minimal
incompatible set.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import oracle as oracle_mod
from .criteria import (
    COMPATIBLE,
    INCOMPATIBLE,
    UNKNOWN,
    Verdict,
    coplanar_chain_bound,
    general_binary_sufficient,
    best_chain_ordering,
    n_necessary_sufficient,
    pair_general,
    pair_unbiased,
    planar_nwise_bound,
    planar_pair_bound,
    planar_subset_bound,
    planar_symmetric_nwise,
    triple_unbiased,
)
from .povm import BinaryQubitPovm, JointPovm, povms_from_json_dict, povms_to_json_dict, unbiased_povm
from .structures import JmStructure, n_cycle, n_specker, structure_of
from .surgery import (
    PlanarSymmetricFamily,
    build_general_binary_joint,
    surgery_mtuple,
)

SQ23 = math.sqrt(2.0 / 3.0)

# purity interval for 5 planar symmetric POVMs where the exact structure is
# an open problem (between the 5-Specker window and the triple-cycle window)
UNDECIDED_INTERVAL_N5 = (
    1.0 / (3.0 * math.sin(math.pi / 10.0) + math.sin(math.pi / 5.0)),
    planar_subset_bound(5, [1, 2, 4]),
)

ID6_NOGO_NOTE = (
    "the star structure {12},{13},{14} admits no realization with four "
    "coplanar same-purity unbiased POVMs; special mixed-purity or "
    "non-coplanar constructions are required"
)


# ---------------------------------------------------------------------------
# geometry helpers for the composite decider


def _unit_rows(povms) -> np.ndarray:
    rows = []
    for p in povms:
        n = p.eta
        rows.append(p.bloch / n if n > 0 else np.array([1.0, 0.0, 0.0]))
    return np.array(rows)


def _common_purity(povms, tol: float = 1e-9) -> Optional[float]:
    etas = [p.eta for p in povms]
    if max(etas) - min(etas) <= tol:
        return sum(etas) / len(etas)
    return None


def _coplanar_line_angles(povms, tol: float = 1e-9) -> Optional[np.ndarray]:
    """Sorted line angles in [0, pi) if the Bloch vectors are coplanar."""
    A = np.array([p.bloch for p in povms])
    u, s, vt = np.linalg.svd(A)
    if len(s) > 2 and s[2] > tol * max(1.0, s[0]):
        return None
    x = A @ vt[0]
    y = A @ vt[1] if len(vt) > 1 else np.zeros(len(A))
    ang = np.mod(np.arctan2(y, x), np.pi)
    ang[np.abs(ang - np.pi) < 1e-12] = 0.0
    return np.sort(ang)


def _cyclic_gaps(line_angles: np.ndarray) -> np.ndarray:
    gaps = np.diff(line_angles)
    closing = np.pi - (line_angles[-1] - line_angles[0])
    return np.append(gaps, closing)


def coplanar_cyclic_bound(line_angles: np.ndarray) -> float:
    """Chain bound in cut-invariant form: 1 / sum of sin(gap/2) over all
    cyclic line gaps (the M gaps sum to pi)."""
    return 1.0 / float(np.sum(np.sin(_cyclic_gaps(line_angles) / 2.0)))


def closed_form_decider(povms):
    """Composite decision procedure over the closed-form criteria.

    Returns a callable mapping a 1-based index tuple to a decision string.
    Iff criteria decide pairs, unbiased triples, and full equiangular
    families; sufficient chain bounds and the necessary sign-string bound
    cover the rest; anything left is Unknown.
    """

    def decide(combo) -> str:
        sub = [povms[i - 1] for i in combo]
        m = len(sub)
        if m == 1:
            return COMPATIBLE
        if m == 2:
            return pair_general(sub[0], sub[1]).decision
        unbiased = all(p.is_unbiased for p in sub)
        if m == 3 and unbiased:
            return triple_unbiased([p.eta for p in sub], _unit_rows(sub)).decision
        eta = _common_purity(sub) if unbiased else None
        if eta is not None:
            angles = _coplanar_line_angles(sub)
            if angles is not None:
                gaps = _cyclic_gaps(angles)
                if np.max(np.abs(gaps - np.pi / m)) <= 1e-9:
                    return planar_symmetric_nwise(m, eta).decision
                if eta <= coplanar_cyclic_bound(angles) + 1e-12:
                    return COMPATIBLE
            nec, suf = n_necessary_sufficient(eta, _unit_rows(sub))
            if nec.decision == INCOMPATIBLE:
                return INCOMPATIBLE
            if suf.decision == COMPATIBLE:
                return COMPATIBLE
        if m <= 6:
            _, v = best_chain_ordering(sub)
        else:
            v = general_binary_sufficient(sub)
        if v.decision == COMPATIBLE:
            return COMPATIBLE
        return UNKNOWN

    return decide


def oracle_decider(povms, params: oracle_mod.OracleParams = oracle_mod.OracleParams()):
    """Decision procedure backed by the feasibility oracle."""

    def decide(combo) -> str:
        res = oracle_mod.decide([povms[i - 1] for i in combo], params)
        if res.status == oracle_mod.FEASIBLE:
            return COMPATIBLE
        if res.status == oracle_mod.LIKELY_INFEASIBLE:
            return INCOMPATIBLE
        return UNKNOWN

    return decide


# ---------------------------------------------------------------------------
# certificates


@dataclass(frozen=True)
class CompatEvidence:
    subset: tuple  # 1-based positions into the certificate's POVM list
    constructor: str
    digest: str
    joint: JointPovm


@dataclass(frozen=True)
class IncompatEvidence:
    subset: tuple
    criterion: str
    margin: float


@dataclass(frozen=True)
class RealizationCertificate:
    label: str
    povms: tuple
    eta: float
    eta_window: tuple  # (lo, hi], lo exclusive
    claimed: JmStructure
    compatible: tuple  # CompatEvidence per maximal compatible set of size >= 2
    incompatible: tuple  # IncompatEvidence per minimal incompatible set
    recipe: dict
    notes: tuple = ()

    def to_json_dict(self) -> dict:
        return {
            "label": self.label,
            "povms": povms_to_json_dict(self.povms)["povms"],
            "eta": self.eta,
            "eta_window": list(self.eta_window),
            "structure": self.claimed.to_json_dict(),
            "evidence": {
                "compatible": [
                    {
                        "subset": list(e.subset),
                        "constructor": e.constructor,
                        "digest": e.digest,
                        "joint": e.joint.to_json_dict(),
                    }
                    for e in self.compatible
                ],
                "incompatible": [
                    {
                        "subset": list(e.subset),
                        "criterion": e.criterion,
                        "margin": e.margin,
                    }
                    for e in self.incompatible
                ],
            },
            "recipe": self.recipe,
            "notes": list(self.notes),
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "RealizationCertificate":
        povms = tuple(povms_from_json_dict({"povms": d["povms"]}))
        compat = tuple(
            CompatEvidence(
                tuple(e["subset"]),
                e["constructor"],
                e["digest"],
                JointPovm.from_json_dict(e["joint"], tol=1e-8),
            )
            for e in d["evidence"]["compatible"]
        )
        incompat = tuple(
            IncompatEvidence(tuple(e["subset"]), e["criterion"], float(e["margin"]))
            for e in d["evidence"]["incompatible"]
        )
        return cls(
            d.get("label", ""),
            povms,
            float(d["eta"]),
            tuple(d["eta_window"]),
            JmStructure.from_json_dict(d["structure"]),
            compat,
            incompat,
            d.get("recipe", {}),
            tuple(d.get("notes", [])),
        )


def joint_digest(joint: JointPovm) -> str:
    payload = json.dumps(joint.to_json_dict(), sort_keys=True)
    return hashlib.sha256(payload.encode()).hexdigest()


def _minimal_incompatible_sets(claimed: JmStructure) -> list:
    import itertools

    n = claimed.n_vertices
    minimal = []
    for size in range(2, n + 1):
        for combo in itertools.combinations(range(1, n + 1), size):
            s = frozenset(combo)
            if claimed.is_compatible(s):
                continue
            if any(bad <= s for bad in minimal):
                continue
            # minimal means every proper subset is compatible
            if all(
                claimed.is_compatible(s - {v}) for v in s
            ):
                minimal.append(s)
    return sorted(minimal, key=lambda s: (len(s), sorted(s)))


def _incompat_evidence(subset, povms_sub) -> IncompatEvidence:
    """Prefer Iff criteria, then the necessary bound, then the oracle."""
    m = len(povms_sub)
    unbiased = all(p.is_unbiased for p in povms_sub)
    if m == 2:
        if unbiased:
            v = pair_unbiased(
                povms_sub[0].eta, _unit_rows(povms_sub)[0],
                povms_sub[1].eta, _unit_rows(povms_sub)[1],
            )
        else:
            v = pair_general(povms_sub[0], povms_sub[1])
    elif m == 3 and unbiased:
        v = triple_unbiased([p.eta for p in povms_sub], _unit_rows(povms_sub))
    else:
        v = None
        eta = _common_purity(povms_sub) if unbiased else None
        if eta is not None:
            angles = _coplanar_line_angles(povms_sub)
            if angles is not None and np.max(
                np.abs(_cyclic_gaps(angles) - np.pi / m)
            ) <= 1e-9:
                v = planar_symmetric_nwise(m, eta)
            if v is None or v.decision != INCOMPATIBLE:
                nec, _ = n_necessary_sufficient(eta, _unit_rows(povms_sub))
                if nec.decision == INCOMPATIBLE:
                    v = nec
    if v is not None and v.decision == INCOMPATIBLE:
        return IncompatEvidence(tuple(subset), v.criterion_id, v.margin)
    res = oracle_mod.decide(list(povms_sub))
    if res.status != oracle_mod.LIKELY_INFEASIBLE:
        raise RuntimeError(f"no incompatibility evidence found for subset {subset}")
    return IncompatEvidence(tuple(subset), "oracle", -res.residual)


def _certificate(
    label, povms, eta, window, expected, recipe, notes, witness_builder
) -> RealizationCertificate:
    povms = tuple(povms)
    claimed = structure_of(povms, closed_form_decider(povms))
    if claimed.is_partial:
        raise RuntimeError(f"{label}: structure left partially decided")
    if expected is not None and claimed.maximal != expected.maximal:
        raise RuntimeError(
            f"{label}: realized structure {claimed.sorted_maximal()} does not "
            f"match the expected {expected.sorted_maximal()}"
        )
    compat = []
    for mset in claimed.sorted_maximal():
        if len(mset) < 2:
            continue
        constructor, joint = witness_builder(tuple(mset))
        compat.append(
            CompatEvidence(tuple(mset), constructor, joint_digest(joint), joint)
        )
    incompat = [
        _incompat_evidence(tuple(sorted(s)), [povms[i - 1] for i in sorted(s)])
        for s in _minimal_incompatible_sets(claimed)
    ]
    return RealizationCertificate(
        label, povms, eta, tuple(window), claimed,
        tuple(compat), tuple(incompat), recipe, tuple(notes),
    )


def _planar_certificate(label, N, subset, window, expected, eta=None, notes=()):
    lo, hi = window
    if eta is None:
        eta = 0.5 * (lo + hi)
    if not lo < eta <= hi:
        raise ValueError(f"eta {eta} outside the window ({lo}, {hi}]")
    fam = PlanarSymmetricFamily(N, eta)
    subset = list(subset)
    povms = fam.povms(subset)

    def witness(positions):
        ks = [subset[i - 1] for i in positions]
        joint = surgery_mtuple(N, ks, eta)
        return f"planar-subset-joint(N={N}, ks={ks})", joint

    recipe = {"kind": "planar-symmetric-subset", "n": N, "subset": subset}
    return _certificate(label, povms, eta, window, expected, recipe, notes, witness)


def _general_pair_witness(povms):
    def witness(positions):
        sub = [povms[i - 1] for i in positions]
        joint, _ = build_general_binary_joint(sub)
        return "binary-chain-joint", joint

    return witness


# ---------------------------------------------------------------------------
# window tables


def n_cycle_window(N: int) -> tuple:
    """(lo, hi] purity window turning the full planar family into an N-cycle.

    For N=3 the generic pair formula degenerates (no non-adjacent pair); the
    binding incompatibility is the triple, giving the trine window.
    """
    if N < 3:
        raise ValueError("cycle needs N >= 3")
    if N == 3:
        return (planar_nwise_bound(3), planar_pair_bound(3, 1))
    return (planar_pair_bound(N, 2), planar_pair_bound(N, 1))


def n_specker_window(N: int) -> tuple:
    if N < 3:
        raise ValueError("Specker scenario needs N >= 3")
    lo = planar_nwise_bound(N)
    hi = 1.0 / ((N - 2) * math.sin(math.pi / (2 * N)) + math.sin(math.pi / N))
    return (lo, hi)


def realize_n_cycle(N: int, eta: Optional[float] = None) -> RealizationCertificate:
    return _planar_certificate(
        f"{N}-cycle", N, range(1, N + 1), n_cycle_window(N), n_cycle(N), eta
    )


def realize_n_specker(N: int, eta: Optional[float] = None) -> RealizationCertificate:
    return _planar_certificate(
        f"{N}-specker", N, range(1, N + 1), n_specker_window(N), n_specker(N), eta
    )


def _pairs_within(N, max_gap):
    out = []
    for i in range(1, N + 1):
        for j in range(i + 1, N + 1):
            if min(j - i, N - (j - i)) <= max_gap:
                out.append(frozenset({i, j}))
    return out


def _consecutive_triples(N):
    return [frozenset({k, k % N + 1, (k + 1) % N + 1}) for k in range(1, N + 1)]


MISC_SCENARIOS = {
    "4-complete": dict(
        N=4,
        window=lambda: (planar_subset_bound(4, [1, 2, 3]), planar_pair_bound(4, 2)),
        structure=lambda: JmStructure.from_sets(4, _pairs_within(4, 2)),
    ),
    "5-complete": dict(
        N=5,
        window=lambda: (planar_subset_bound(5, [1, 2, 3]), planar_pair_bound(5, 2)),
        structure=lambda: JmStructure.from_sets(5, _pairs_within(5, 2)),
    ),
    "5-triple-cycle": dict(
        N=5,
        window=lambda: (planar_subset_bound(5, [1, 2, 4]), planar_subset_bound(5, [1, 2, 3])),
        structure=lambda: JmStructure.from_sets(5, _consecutive_triples(5)),
    ),
    "6-two-step-pairs": dict(
        N=6,
        window=lambda: (planar_subset_bound(6, [1, 2, 3]), planar_pair_bound(6, 2)),
        structure=lambda: JmStructure.from_sets(6, _pairs_within(6, 2)),
    ),
    "6-consecutive-triples": dict(
        N=6,
        window=lambda: (planar_pair_bound(6, 3), planar_subset_bound(6, [1, 2, 3])),
        structure=lambda: JmStructure.from_sets(6, _consecutive_triples(6)),
    ),
    "6-triples-antipodal-pairs": dict(
        N=6,
        window=lambda: (planar_subset_bound(6, [1, 2, 4]), planar_pair_bound(6, 3)),
        structure=lambda: JmStructure.from_sets(
            6,
            _consecutive_triples(6)
            + [frozenset({1, 4}), frozenset({2, 5}), frozenset({3, 6})],
        ),
    ),
}


def realize_misc(tag: str, eta: Optional[float] = None) -> RealizationCertificate:
    if tag not in MISC_SCENARIOS:
        raise KeyError(f"unknown scenario tag {tag!r}; known: {sorted(MISC_SCENARIOS)}")
    scenario = MISC_SCENARIOS[tag]
    N = scenario["N"]
    notes = ()
    if N == 5:
        notes = (
            "the exact structure of 5 planar symmetric POVMs is undecided for "
            f"eta in ({UNDECIDED_INTERVAL_N5[0]!r}, {UNDECIDED_INTERVAL_N5[1]!r}]",
        )
    return _planar_certificate(
        tag, N, range(1, N + 1), scenario["window"](), scenario["structure"](), eta, notes
    )


# ---------------------------------------------------------------------------
# the four-vertex atlas

# id -> (N, subset, lo(), hi()); windows are the sharp closed forms from the
# Iff pair/triple criteria. ids 1 and 18 carry recomputed windows, flagged in
# their certificate notes; id 6 is the special pair below.
FOUR_VERTEX_CATALOG = {
    1: (4, (1, 2, 3, 4), lambda: planar_pair_bound(4, 1), lambda: 1.0),
    2: (7, (1, 2, 4, 6), lambda: planar_pair_bound(7, 2), lambda: planar_pair_bound(7, 1)),
    3: (6, (1, 2, 4, 5), lambda: planar_pair_bound(6, 2), lambda: planar_pair_bound(6, 1)),
    4: (6, (1, 2, 3, 5), lambda: planar_pair_bound(6, 2), lambda: planar_pair_bound(6, 1)),
    5: (5, (1, 2, 3, 4), lambda: planar_pair_bound(5, 2), lambda: planar_pair_bound(5, 1)),
    7: (8, (1, 2, 3, 6), lambda: planar_subset_bound(8, [1, 2, 3]), lambda: planar_pair_bound(8, 2)),
    8: (4, (1, 2, 3, 4), lambda: planar_pair_bound(4, 2), lambda: planar_pair_bound(4, 1)),
    9: (7, (1, 2, 3, 6), lambda: planar_subset_bound(7, [1, 2, 3]), lambda: planar_pair_bound(7, 2)),
    10: (6, (1, 2, 3, 5), lambda: planar_subset_bound(6, [1, 2, 3]), lambda: planar_pair_bound(6, 2)),
    11: (4, (1, 2, 3, 4), lambda: planar_subset_bound(4, [1, 2, 3]), lambda: planar_pair_bound(4, 2)),
    12: (8, (1, 2, 3, 6), lambda: planar_pair_bound(8, 3), lambda: planar_subset_bound(8, [1, 2, 3])),
    13: (7, (1, 2, 3, 6), lambda: planar_pair_bound(7, 3), lambda: planar_subset_bound(7, [1, 2, 3])),
    14: (6, (1, 2, 3, 5), lambda: planar_pair_bound(6, 3), lambda: planar_subset_bound(6, [1, 2, 3])),
    15: (6, (1, 2, 3, 5), lambda: planar_subset_bound(6, [1, 2, 4]), lambda: planar_pair_bound(6, 3)),
    16: (6, (1, 2, 3, 4), lambda: planar_pair_bound(6, 3), lambda: planar_subset_bound(6, [1, 2, 3])),
    17: (5, (1, 2, 3, 4), lambda: planar_subset_bound(5, [1, 2, 4]), lambda: planar_subset_bound(5, [1, 2, 3])),
    18: (7, (1, 2, 3, 5), lambda: planar_subset_bound(7, [1, 3, 5]), lambda: planar_subset_bound(7, [1, 2, 5])),
    19: (4, (1, 2, 3, 4), lambda: planar_nwise_bound(4), lambda: planar_subset_bound(4, [1, 2, 3])),
    20: (4, (1, 2, 3, 4), lambda: 0.0, lambda: planar_nwise_bound(4)),
}

ATLAS_IDS = tuple(range(1, 21))

MIXED_PURITY_THETA = math.radians(22.5)  # admissible interval is (15, 30] degrees
NON_COPLANAR_ALPHA = math.radians(30.0)


def mixed_purity_window(theta: float = MIXED_PURITY_THETA) -> tuple:
    """Common-purity window for the three coplanar POVMs of the mixed recipe."""
    lo = 1.0 / (math.sin(theta) + math.cos(theta))  # keep E2,E3 incompatible
    hi = 1.0 / (math.sin(theta / 2) + math.cos(theta / 2))  # keep E1,Ek compatible
    return (lo, hi)


def mixed_purity_povms(theta: float = MIXED_PURITY_THETA, eta: float = SQ23) -> list:
    return [
        unbiased_povm(eta, [1.0, 0.0, 0.0]),
        unbiased_povm(eta, [math.cos(theta), math.sin(theta), 0.0]),
        unbiased_povm(eta, [math.cos(theta), -math.sin(theta), 0.0]),
        unbiased_povm(1.0, [1.0, 0.0, 0.0]),  # projective along the shared axis
    ]


def non_coplanar_window(alpha: float = NON_COPLANAR_ALPHA) -> tuple:
    phi = math.acos(math.cos(alpha) ** 2)  # angle between E4 and E2/E3
    lo = 1.0 / (math.sin(phi / 2) + math.cos(phi / 2))
    hi = 1.0 / (math.sin(alpha / 2) + math.cos(alpha / 2))
    return (lo, hi)


def non_coplanar_povms(alpha: float = NON_COPLANAR_ALPHA, eta: Optional[float] = None) -> list:
    if eta is None:
        lo, hi = non_coplanar_window(alpha)
        eta = 0.5 * (lo + hi)
    return [
        unbiased_povm(eta, [1.0, 0.0, 0.0]),
        unbiased_povm(eta, [math.cos(alpha), math.sin(alpha), 0.0]),
        unbiased_povm(eta, [math.cos(alpha), -math.sin(alpha), 0.0]),
        unbiased_povm(eta, [math.cos(alpha), 0.0, math.sin(alpha)]),
    ]


_STAR_STRUCTURE = lambda: JmStructure.from_sets(
    4, [frozenset({1, 2}), frozenset({1, 3}), frozenset({1, 4})]
)


def realize_four_vertex(
    atlas_id: int, variant: str = "mixed-purity", eta: Optional[float] = None
) -> RealizationCertificate:
    """Certificate for one of the 20 four-vertex structures.

    For ids != 6 a planar-symmetric subset at the window midpoint is used.
    Id 6 uses the mixed-purity recipe by default (three coplanar POVMs at
    purity sqrt(2/3), two of them at +-22.5 degrees about the first, plus a
    projective measurement on the shared axis) or the non-coplanar recipe
    (variant="non-coplanar", alpha = 30 degrees, window midpoint purity).
    """
    if atlas_id not in ATLAS_IDS:
        raise ValueError("atlas id must be 1..20")
    if atlas_id != 6:
        N, subset, lo, hi = FOUR_VERTEX_CATALOG[atlas_id]
        notes = ()
        if atlas_id in (1, 18):
            notes = ("window recomputed from the sharp pair and triple criteria",)
        return _planar_certificate(
            f"four-vertex-{atlas_id}", N, subset, (lo(), hi()), None, eta, notes
        )
    if variant == "mixed-purity":
        window = mixed_purity_window()
        povms = mixed_purity_povms(eta=eta if eta is not None else SQ23)
        recipe = {
            "kind": "mixed-purity",
            "theta_degrees": math.degrees(MIXED_PURITY_THETA),
        }
        used_eta = eta if eta is not None else SQ23
    elif variant == "non-coplanar":
        window = non_coplanar_window()
        used_eta = eta if eta is not None else 0.5 * (window[0] + window[1])
        povms = non_coplanar_povms(eta=used_eta)
        recipe = {
            "kind": "non-coplanar",
            "alpha_degrees": math.degrees(NON_COPLANAR_ALPHA),
        }
    else:
        raise ValueError("variant must be 'mixed-purity' or 'non-coplanar'")
    if not window[0] < used_eta <= window[1]:
        raise ValueError(f"eta {used_eta} outside the window {window}")
    return _certificate(
        "four-vertex-6",
        povms,
        used_eta,
        window,
        _STAR_STRUCTURE(),
        recipe,
        (ID6_NOGO_NOTE,),
        _general_pair_witness(povms),
    )


def atlas_manifest() -> dict:
    """Windows and structures of all 20 four-vertex entries (no heavy joints)."""
    entries = []
    for i in ATLAS_IDS:
        if i == 6:
            entries.append(
                {
                    "id": 6,
                    "kind": "special",
                    "variants": {
                        "mixed-purity": {"eta": SQ23, "window": list(mixed_purity_window())},
                        "non-coplanar": {"window": list(non_coplanar_window())},
                    },
                    "structure": _STAR_STRUCTURE().to_json_dict(),
                    "notes": [ID6_NOGO_NOTE],
                }
            )
            continue
        N, subset, lo, hi = FOUR_VERTEX_CATALOG[i]
        cert = realize_four_vertex(i)
        entries.append(
            {
                "id": i,
                "kind": "planar-symmetric-subset",
                "n": N,
                "subset": list(subset),
                "window": [lo(), hi()],
                "eta": cert.eta,
                "structure": cert.claimed.to_json_dict(),
                "notes": list(cert.notes),
            }
        )
    return {
        "entries": entries,
        "undecided_interval_n5": list(UNDECIDED_INTERVAL_N5),
    }


# ---------------------------------------------------------------------------
# verification


@dataclass(frozen=True)
class VerificationReport:
    ok: bool
    issues: tuple = ()
    inconclusive: tuple = ()


def _reevaluate_incompat(criterion: str, povms_sub) -> Optional[Verdict]:
    units = _unit_rows(povms_sub)
    if criterion == "pair-unbiased":
        return pair_unbiased(povms_sub[0].eta, units[0], povms_sub[1].eta, units[1])
    if criterion == "pair-general":
        return pair_general(povms_sub[0], povms_sub[1])
    if criterion == "triple-ft":
        return triple_unbiased([p.eta for p in povms_sub], units)
    if criterion == "planar-symmetric-nwise":
        eta = _common_purity(povms_sub)
        if eta is None:
            return None
        return planar_symmetric_nwise(len(povms_sub), eta)
    if criterion == "n-wise-necessary":
        eta = _common_purity(povms_sub)
        if eta is None:
            return None
        return n_necessary_sufficient(eta, units)[0]
    return None


def verify_certificate(
    cert: RealizationCertificate,
    mode: str = "closed-form",
    oracle_params: oracle_mod.OracleParams = oracle_mod.OracleParams(),
) -> VerificationReport:
    """Re-derive every evidence entry. mode: closed-form | oracle | both."""
    if mode not in ("closed-form", "oracle", "both"):
        raise ValueError("mode must be closed-form, oracle, or both")
    issues = []
    inconclusive = []
    povms = list(cert.povms)

    if mode in ("closed-form", "both"):
        recomputed = structure_of(povms, closed_form_decider(povms))
        if recomputed.is_partial:
            inconclusive.append("closed-form structure is partial")
        if recomputed.maximal != cert.claimed.maximal:
            issues.append(
                f"claimed structure {cert.claimed.sorted_maximal()} != "
                f"recomputed {recomputed.sorted_maximal()}"
            )
        lo, hi = cert.eta_window
        if not lo < cert.eta <= hi:
            issues.append(f"eta {cert.eta} outside window ({lo}, {hi}]")
        covered = {frozenset(e.subset) for e in cert.compatible}
        expected = {frozenset(m) for m in cert.claimed.maximal if len(m) >= 2}
        if covered != expected:
            issues.append("compatible evidence does not cover the maximal sets")
        for e in cert.compatible:
            if joint_digest(e.joint) != e.digest:
                issues.append(f"digest mismatch for subset {list(e.subset)}")
            rep = e.joint.validate(1e-11)
            if not rep.ok:
                issues.append(f"witness for {list(e.subset)} invalid: {rep.violations}")
            for pos, k in enumerate(e.subset, start=1):
                m = e.joint.marginal_povm(pos)
                p = povms[k - 1]
                err = max(abs(m.bias - p.bias), float(np.max(np.abs(m.bloch - p.bloch))))
                if err > 1e-11:
                    issues.append(
                        f"witness for {list(e.subset)} marginal {k} off by {err:.2e}"
                    )
        needed = {frozenset(s) for s in _minimal_incompatible_sets(cert.claimed)}
        got = {frozenset(e.subset) for e in cert.incompatible}
        if needed != got:
            issues.append("incompatible evidence does not cover the minimal sets")
        for e in cert.incompatible:
            sub = [povms[i - 1] for i in e.subset]
            if e.criterion == "oracle":
                if mode == "closed-form":
                    inconclusive.append(
                        f"subset {list(e.subset)}: oracle evidence not re-run in closed-form mode"
                    )
                continue
            v = _reevaluate_incompat(e.criterion, sub)
            if v is None or v.decision != INCOMPATIBLE:
                issues.append(
                    f"criterion {e.criterion} does not prove {list(e.subset)} incompatible"
                )
            elif abs(v.margin - e.margin) > 1e-9:
                issues.append(
                    f"margin mismatch for {list(e.subset)}: {v.margin} vs {e.margin}"
                )

    if mode in ("oracle", "both"):
        for e in cert.compatible:
            res = oracle_mod.decide([povms[i - 1] for i in e.subset], oracle_params)
            if res.status == oracle_mod.LIKELY_INFEASIBLE:
                issues.append(f"oracle contradicts compatibility of {list(e.subset)}")
            elif res.status != oracle_mod.FEASIBLE:
                inconclusive.append(f"oracle inconclusive on {list(e.subset)}")
        for e in cert.incompatible:
            res = oracle_mod.decide([povms[i - 1] for i in e.subset], oracle_params)
            if res.status == oracle_mod.FEASIBLE:
                issues.append(f"oracle contradicts incompatibility of {list(e.subset)}")
            elif res.status != oracle_mod.LIKELY_INFEASIBLE:
                inconclusive.append(f"oracle inconclusive on {list(e.subset)}")

    return VerificationReport(not issues, tuple(issues), tuple(inconclusive))
