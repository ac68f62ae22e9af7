"""Joint-measurability structures: downward-closed hypergraphs of compatible
subsets, stored by their maximal compatible sets, plus canonical forms and
isomorphism for small vertex counts."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .criteria import COMPATIBLE, INCOMPATIBLE, UNKNOWN

ISO_CAP = 8  # canonicalization iterates over all vertex permutations


def _maximal_only(sets: Iterable[frozenset]) -> frozenset:
    fam = set(sets)
    return frozenset(
        s for s in fam if not any(s < t for t in fam)
    )


@dataclass(frozen=True)
class JmStructure:
    """Vertices 1..n; compatibility of any subset decided by containment in a
    maximal compatible set. Always downward closed; singletons always in."""

    n_vertices: int
    maximal: frozenset = field(default_factory=frozenset)
    undecided: frozenset = field(default_factory=frozenset)

    @classmethod
    def from_sets(cls, n: int, compatible_sets, undecided=()) -> "JmStructure":
        sets = {frozenset(s) for s in compatible_sets}
        sets |= {frozenset([v]) for v in range(1, n + 1)}
        for s in sets:
            if not s or min(s) < 1 or max(s) > n:
                raise ValueError("subset out of vertex range")
        return cls(n, _maximal_only(sets), frozenset(frozenset(u) for u in undecided))

    @property
    def is_partial(self) -> bool:
        return bool(self.undecided)

    def is_compatible(self, subset) -> bool:
        s = frozenset(subset)
        return any(s <= m for m in self.maximal)

    def all_compatible_sets(self) -> set:
        out = set()
        for m in self.maximal:
            for r in range(1, len(m) + 1):
                out.update(map(frozenset, itertools.combinations(sorted(m), r)))
        return out

    def sorted_maximal(self) -> list:
        return sorted((sorted(m) for m in self.maximal), key=lambda s: (len(s), s))

    def to_json_dict(self) -> dict:
        return {"n": self.n_vertices, "maximal": self.sorted_maximal()}

    @classmethod
    def from_json_dict(cls, d: dict) -> "JmStructure":
        return cls.from_sets(int(d["n"]), [frozenset(s) for s in d["maximal"]])


def n_cycle(N: int) -> JmStructure:
    """Compatibility exactly between cyclically adjacent pairs."""
    if N < 3:
        raise ValueError("cycle needs N >= 3")
    pairs = [frozenset({k, k % N + 1}) for k in range(1, N + 1)]
    return JmStructure.from_sets(N, pairs)


def nm_compatible(N: int, M: int) -> JmStructure:
    """Every M-element subset compatible, nothing larger."""
    if not 1 <= M <= N:
        raise ValueError("need 1 <= M <= N")
    return JmStructure.from_sets(
        N, map(frozenset, itertools.combinations(range(1, N + 1), M))
    )


def n_complete(N: int) -> JmStructure:
    return nm_compatible(N, 2)


def n_specker(N: int) -> JmStructure:
    """Every (N-1)-subset compatible, full set incompatible."""
    if N < 2:
        raise ValueError("Specker scenario needs N >= 2")
    return nm_compatible(N, N - 1)


def canonicalize(s: JmStructure) -> tuple:
    """Lexicographically minimal maximal-set family over vertex permutations."""
    n = s.n_vertices
    if n > ISO_CAP:
        raise ValueError(f"canonicalization capped at {ISO_CAP} vertices")
    base = [tuple(sorted(m)) for m in s.maximal]
    best = None
    for perm in itertools.permutations(range(1, n + 1)):
        relabeled = sorted(
            tuple(sorted(perm[v - 1] for v in m)) for m in base
        )
        key = sorted(relabeled, key=lambda t: (len(t), t))
        if best is None or key < best:
            best = key
    return tuple(map(tuple, best))


def is_isomorphic(a: JmStructure, b: JmStructure) -> bool:
    if a.n_vertices != b.n_vertices:
        return False
    return canonicalize(a) == canonicalize(b)


def enumerate_structures(n: int) -> list:
    """All non-isomorphic downward-closed structures on n vertices (n small).

    Brute force over subsets of the size->=2 power set, keeping the downward
    closed families; returns one representative JmStructure per class.
    """
    if n > 4:
        raise ValueError("exhaustive enumeration intended for n <= 4")
    bigs = [
        frozenset(c)
        for r in range(2, n + 1)
        for c in itertools.combinations(range(1, n + 1), r)
    ]
    reps = {}
    for bits in range(1 << len(bigs)):
        chosen = {bigs[i] for i in range(len(bigs)) if bits >> i & 1}
        if any(
            frozenset(sub) not in chosen
            for e in chosen
            for r in range(2, len(e))
            for sub in itertools.combinations(sorted(e), r)
        ):
            continue
        s = JmStructure.from_sets(n, chosen)
        reps.setdefault(canonicalize(s), s)
    return [reps[k] for k in sorted(reps)]


def structure_of(povms, decider: Callable) -> JmStructure:
    """Compute the structure of a POVM list with a subset decider.

    decider(subset_indices_1based) must return one of the criteria decision
    strings. Subsets are visited smallest first; supersets of an incompatible
    set are pruned without calling the decider. Unknown answers make the
    result partial (undecided subsets listed, treated as not compatible for
    maximality).
    """
    n = len(povms)
    compatible = {frozenset([k]) for k in range(1, n + 1)}
    incompatible: set = set()
    undecided: set = set()
    for size in range(2, n + 1):
        for combo in itertools.combinations(range(1, n + 1), size):
            s = frozenset(combo)
            if any(bad <= s for bad in incompatible):
                continue
            d = decider(combo)
            if d == COMPATIBLE:
                compatible.add(s)
            elif d == INCOMPATIBLE:
                incompatible.add(s)
            elif d == UNKNOWN:
                undecided.add(s)
            else:
                raise ValueError(f"decider returned {d!r}")
    # closure: an undecided subset of a decided-compatible set is compatible
    undecided = {u for u in undecided if not any(u <= c for c in compatible)}
    return JmStructure(n, _maximal_only(compatible), frozenset(undecided))
