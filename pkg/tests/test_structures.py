import itertools

import pytest

from jmqubit import (
    COMPATIBLE,
    INCOMPATIBLE,
    UNKNOWN,
    JmStructure,
    canonicalize,
    enumerate_structures,
    is_isomorphic,
    n_complete,
    n_cycle,
    n_specker,
    nm_compatible,
    structure_of,
)


def test_from_sets_keeps_maximal_only():
    s = JmStructure.from_sets(3, [{1, 2}, {1, 2, 3}])
    assert s.maximal == frozenset({frozenset({1, 2, 3})})
    assert s.is_compatible({1, 2})
    assert s.is_compatible({3})
    assert not s.is_partial


def test_from_sets_rejects_bad_vertices():
    with pytest.raises(ValueError):
        JmStructure.from_sets(3, [{0, 1}])
    with pytest.raises(ValueError):
        JmStructure.from_sets(3, [{3, 4}])


def test_named_structures():
    c = n_cycle(4)
    assert c.is_compatible({1, 2}) and c.is_compatible({1, 4})
    assert not c.is_compatible({1, 3})
    sp = n_specker(3)
    assert sp.is_compatible({1, 2}) and not sp.is_compatible({1, 2, 3})
    assert n_complete(4).maximal == nm_compatible(4, 2).maximal
    with pytest.raises(ValueError):
        n_cycle(2)


def test_all_compatible_sets_downward_closed():
    s = n_specker(4)
    fam = s.all_compatible_sets()
    for m in fam:
        for r in range(1, len(m)):
            for sub in itertools.combinations(sorted(m), r):
                assert frozenset(sub) in fam


def test_canonicalize_invariant_under_relabeling():
    s = JmStructure.from_sets(4, [{1, 2}, {2, 3}, {1, 2, 4}])
    # relabeled under the permutation 1<->4, 2<->3
    relabeled = JmStructure.from_sets(4, [{3, 4}, {2, 3}, {1, 3, 4}])
    assert is_isomorphic(s, relabeled)
    assert canonicalize(s) == canonicalize(relabeled)


def test_is_isomorphic_distinguishes():
    path = JmStructure.from_sets(4, [{1, 2}, {2, 3}])
    disjoint = JmStructure.from_sets(4, [{1, 2}, {3, 4}])
    assert not is_isomorphic(path, disjoint)


def test_enumerate_small():
    assert len(enumerate_structures(2)) == 2  # edge or no edge
    assert len(enumerate_structures(3)) == 5
    assert len(enumerate_structures(4)) == 20


def test_structure_of_with_stub_decider():
    # compatible: all pairs, the triple {1,2,3}; everything else incompatible
    def decider(combo):
        s = frozenset(combo)
        if len(s) <= 2 or s == frozenset({1, 2, 3}):
            return COMPATIBLE
        return INCOMPATIBLE

    out = structure_of([None] * 4, decider)
    assert out.is_compatible({1, 2, 3})
    assert out.is_compatible({1, 4})
    assert not out.is_compatible({1, 2, 4})
    assert not out.is_partial


def test_structure_of_prunes_supersets():
    calls = []

    def decider(combo):
        calls.append(combo)
        return INCOMPATIBLE if len(combo) >= 2 else COMPATIBLE

    structure_of([None] * 4, decider)
    # once every pair is incompatible, no triple or quadruple is queried
    assert max(len(c) for c in calls) == 2


def test_structure_of_partial_and_closure():
    # the triple is Unknown but the quadruple is declared compatible first?
    # no: sizes go smallest-first, so stage an Unknown pair cleaned up by a
    # compatible triple
    def decider(combo):
        s = frozenset(combo)
        if s == frozenset({1, 2}):
            return UNKNOWN
        if len(s) <= 3:
            return COMPATIBLE
        return INCOMPATIBLE

    out = structure_of([None] * 4, decider)
    # {1,2} is inside the compatible {1,2,3}, so it is not undecided
    assert not out.is_partial
    assert out.is_compatible({1, 2})


def test_structure_of_keeps_genuine_unknown():
    def decider(combo):
        return UNKNOWN if len(combo) == 3 else (
            COMPATIBLE if len(combo) <= 2 else INCOMPATIBLE
        )

    out = structure_of([None] * 3, decider)
    assert out.is_partial
    assert frozenset({1, 2, 3}) in out.undecided


def test_json_roundtrip():
    s = n_cycle(5)
    assert JmStructure.from_json_dict(s.to_json_dict()).maximal == s.maximal
