import itertools
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from sunada import groups as gc


@pytest.fixture(scope="module")
def z8():
    return gc.build_semidirect_z8()


@pytest.fixture(scope="module")
def s6():
    return gc.build_symmetric(6)


@pytest.fixture(scope="module")
def sl32():
    return gc.build_sl(3, 2)


def test_orders(z8, s6, sl32):
    assert (z8.order, s6.order, sl32.order) == (32, 720, 168)
    for G in (z8, gc.build_symmetric(4), sl32):
        assert G.check_axioms()


def test_semidirect_law(z8):
    # (x, y)(u, v) = (xu, xv + y) in (Z/8)^x x Z/8
    for (x, y), (u, v) in itertools.product(z8.labels, repeat=2):
        g = z8.multiply(z8.element((x, y)), z8.element((u, v)))
        assert z8.labels[g] == ((x * u) % 8, (x * v + y) % 8)


def test_symmetric_composition(s6):
    s = s6.element(gc.parse_cycles("(1,2)", 6))
    t = s6.element(gc.parse_cycles("(2,3)", 6))
    # right-to-left: (1,2)(2,3) sends 3 -> 2 -> 1
    assert gc.format_cycles(s6.labels[s6.multiply(s, t)]) == "(1,2,3)"


def test_parse_cycles_roundtrip(s6):
    for lab in s6.labels[:: 37]:
        assert gc.parse_cycles(gc.format_cycles(lab), 6) == lab
    with pytest.raises(gc.GroupError):
        gc.parse_cycles("(1,7)", 6)


def test_sl_determinants(sl32):
    ident = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    assert sl32.labels[0] == ident
    for m in sl32.labels:
        assert round(np.linalg.det(np.array(m))) % 2 == 1


def test_size_guard():
    with pytest.raises(gc.SizeGuardError):
        gc.build_symmetric(8)


def test_table_group():
    G = gc.build_from_table([[(i + j) % 3 for j in range(3)] for i in range(3)])
    assert G.order == 3 and G.is_abelian()
    assert G.element_order(1) == 3


def test_conjugacy_classes_s6(s6):
    classes = s6.conjugacy_classes()
    assert len(classes) == 11
    sizes = Counter()
    for c in classes:
        sizes[gc.cycle_type_of_permutation(s6.labels[c.representative])] = len(c)
    assert sizes[(1, 1, 2, 2)] == 45
    assert sum(len(c) for c in classes) == 720


def _brute_counts(G, H):
    # class of h as the explicit set {g h g^-1}
    def orbit(h):
        return frozenset(G.multiply(g, h, int(G.inv[g])) for g in range(G.order))
    return Counter(orbit(h) for h in H)


def test_almost_conjugate_matches_brute_force(z8, s6):
    A = gc.Subgroup(z8, [z8.element(x) for x in [(1, 0), (3, 0), (5, 0), (7, 0)]])
    B = gc.Subgroup(z8, [z8.element(x) for x in [(1, 0), (3, 4), (5, 4), (7, 0)]])
    assert _brute_counts(z8, A) == _brute_counts(z8, B)
    assert gc.is_almost_conjugate(z8, A, B)
    # brute force: no g with g A g^-1 = B
    assert all(set(A.conjugate_by(g).members) != set(B.members) for g in range(z8.order))
    assert gc.conjugating_element(z8, A, B) is None


def test_conjugating_element_found(s6):
    A = gc.subgroup_from_generators(s6, [s6.element(gc.parse_cycles("(1,2)", 6))])
    B = gc.subgroup_from_generators(s6, [s6.element(gc.parse_cycles("(4,6)", 6))])
    g = gc.conjugating_element(s6, A, B)
    assert g is not None and set(A.conjugate_by(g).members) == set(B.members)


def test_example3_subgroups(s6):
    p = lambda t: s6.element(gc.parse_cycles(t, 6))  # noqa: E731
    A = gc.subgroup_from_generators(s6, [p("(1,2)(3,4)"), p("(1,3)(2,4)")])
    assert {gc.format_cycles(s6.labels[g]) for g in A} == {"id", "(1,2)(3,4)", "(1,3)(2,4)", "(1,4)(2,3)"}
    B = gc.subgroup_from_generators(s6, [p("(1,2)(3,4)"), p("(1,2)(5,6)")])
    assert gc.is_almost_conjugate(s6, A, B)
    assert gc.conjugating_element(s6, A, B) is None


def test_invalid_subgroup_rejected(s6):
    with pytest.raises(gc.GroupError):
        gc.Subgroup(s6, [0, s6.element(gc.parse_cycles("(1,2,3)", 6))])


def test_coset_space_brute_force(sl32):
    A = gc.subgroup_from_predicate(sl32, lambda m: m[1][0] == 0 and m[2][0] == 0)
    cs = gc.CosetSpace(sl32, A)
    assert cs.index == 7
    # right cosets as explicit sets
    sets = {frozenset(int(sl32.mul[h, g]) for h in A) for g in range(sl32.order)}
    assert len(sets) == 7
    for g in range(0, sl32.order, 11):
        for c in range(7):
            rep = cs.reps[c]
            target = frozenset(int(sl32.mul[h, sl32.mul[rep, g]]) for h in A)
            assert int(sl32.mul[cs.reps[cs.act(c, g)], 0]) in target


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 719), st.integers(0, 719))
def test_action_is_right_action(g, h):
    G = gc.build_symmetric(6) if not hasattr(test_action_is_right_action, "G") else test_action_is_right_action.G
    test_action_is_right_action.G = G
    H = gc.subgroup_from_generators(G, [G.element(gc.parse_cycles("(1,2)(3,4)", 6))])
    cs = gc.CosetSpace(G, H)
    gh = G.multiply(g, h)
    assert all(cs.act(cs.act(c, g), h) == cs.act(c, gh) for c in range(0, cs.index, 17))


def test_gassmann_search():
    z8 = gc.build_semidirect_z8()
    pairs = gc.gassmann_search(z8, 4)
    assert pairs, "the order-32 group has a Gassmann pair of order 4"
    A, B = pairs[0]
    assert gc.is_almost_conjugate(z8, A, B) and gc.conjugating_element(z8, A, B) is None
    # symmetric groups of degree <= 5 have no Gassmann pairs
    assert gc.gassmann_search(gc.build_symmetric(4), 24) == []


def test_gassmann_search_s6_contains_klein_pair(s6):
    pairs = gc.gassmann_search(s6, 4)
    assert any(A.order == 4 and B.order == 4 for A, B in pairs)
