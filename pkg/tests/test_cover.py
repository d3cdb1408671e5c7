"""Covers against the drawn quotient graphs and independent genus/cycle-type checks."""

import pytest

from sunada.cover import (
    CoverError,
    combinatorial_isospectrality,
    cover_genus,
    deck_group,
    elevations_of,
    export_dot,
    is_regular,
    power_labels,
)
from sunada.groups import Subgroup, cycle_type_of_permutation


def labelled_perm(exp, key, gen):
    """Generator action as a map between drawn vertex names (powers of the label element)."""
    cv = exp.cover(key)
    names = exp.labels(key)
    perm = cv.generator_perm(cv.alphabet.index(gen))
    return {names[c]: names[int(perm[c])] for c in range(cv.n_vertices)}


def pairs(pmap):
    return {frozenset((u, v)) for u, v in pmap.items() if u != v}


def fig3(prefix, ks):
    def lab(k):
        return prefix if k == 0 else (f"{prefix} a3" if k == 1 else f"{prefix} a3^{k}")

    return {frozenset((lab(i), lab(j))) for i, j in ks}


def test_fig3_quotient_graphs(ex1):
    for key in "AB":
        a3 = labelled_perm(ex1, key, "a3")
        lab = lambda k: key if k == 0 else (f"{key} a3" if k == 1 else f"{key} a3^{k}")  # noqa: E731
        assert all(a3[lab(k)] == lab((k + 1) % 8) for k in range(8))
    # dotted a1 and dashed a2 edges as drawn; both generators are involutions
    assert pairs(labelled_perm(ex1, "A", "a1")) == fig3("A", [(1, 5), (3, 7)])
    assert pairs(labelled_perm(ex1, "A", "a2")) == fig3("A", [(1, 3), (2, 6), (5, 7)])
    assert pairs(labelled_perm(ex1, "B", "a1")) == fig3("B", [(0, 4), (2, 6)])
    assert pairs(labelled_perm(ex1, "B", "a2")) == fig3("B", [(0, 4), (1, 7), (3, 5)])


def cycles(key, *chains):
    lab = lambda k: key if k == 0 else (f"{key} b" if k == 1 else f"{key} b^{k}")  # noqa: E731
    out = {}
    for ch in chains:
        for u, v in zip(ch, ch[1:] + ch[:1]):
            out[lab(u)] = lab(v)
    return out


def moved(pmap):
    return {u: v for u, v in pmap.items() if u != v}


def test_fig6_quotient_graphs(ex2):
    assert moved(labelled_perm(ex2, "A", "a1")) == cycles("A", (0, 3), (6, 4, 5, 2))
    assert moved(labelled_perm(ex2, "A", "a2")) == cycles("A", (3, 6, 4), (2, 5, 1))
    assert moved(labelled_perm(ex2, "B", "a1")) == cycles("B", (0, 1, 6, 3), (5, 2))
    assert moved(labelled_perm(ex2, "B", "a2")) == cycles("B", (1, 4, 3), (6, 2, 5))


def test_commutator_enumerates_cosets(ex2):
    b = ex2.named["b"]
    assert ex2.group.element_order(b) == 7
    for key in "AB":
        assert len(power_labels(ex2.cover(key), b, "b")) == 7


@pytest.mark.parametrize("fixture,index,genus", [("ex1", 8, 17), ("ex2", 7, 15)])
def test_genus_formula_and_ribbon_genus(request, fixture, index, genus):
    exp = request.getfixturevalue(fixture)
    for key in "AB":
        cv = exp.cover(key)
        assert cv.n_vertices == index
        assert cover_genus(cv) == genus
        # independent: thicken the full cover graph and count faces
        g = cv.ribbon_graph(range(cv.alphabet.rank))
        assert g.genus() == genus


def test_isospectrality_brute_force(ex1, ex2, ex3):
    for exp in (ex1, ex2, ex3):
        rep = combinatorial_isospectrality(exp.cover("A"), exp.cover("B"))
        assert rep.passed
        # explicit permutation of cosets, then its cycle type
        G = exp.group
        for g in range(0, G.order, max(1, G.order // 40)):
            for key in "AB":
                cs = exp.cover(key).cosets
                img = [cs.act(c, g) + 1 for c in range(cs.index)]
                assert cycle_type_of_permutation(img) == rep.cycle_types[g][0 if key == "A" else 1]


def test_gassmann_failure_witness(ex3):
    # a transposition and a double transposition generate isomorphic, non-Gassmann subgroups
    from sunada.cover import build_cover
    from sunada.groups import parse_cycles, subgroup_from_generators

    G = ex3.group
    p = lambda t: G.element(parse_cycles(t, 6))  # noqa: E731
    A = subgroup_from_generators(G, [p("(1,2)")], "A")
    B = subgroup_from_generators(G, [p("(1,2)(3,4)")], "B")
    r = combinatorial_isospectrality(build_cover(ex3.quotient, A), build_cover(ex3.quotient, B))
    assert not r.passed and p("(1,2)") in r.violations


def test_elevations_example1(ex1):
    w = ex1.word("a1^-2 a2")
    for key, expected in (("A", ["A", "A a3^4"]), ("B", ["B a3^2", "B a3^6"])):
        deg1 = [e for e in elevations_of(ex1.cover(key), w) if e.degree == 1]
        assert [ex1.coset_name(key, e.start_coset) for e in deg1] == expected
        assert sum(e.degree for e in elevations_of(ex1.cover(key), w)) == 8


def test_elevation_degrees_example3(ex3):
    rho = ex3.word("g2")
    assert {e.degree for e in elevations_of(ex3.cover("A"), rho)} <= {2, 4}


def test_regular_and_deck(ex1):
    assert not is_regular(ex1.cover("A"))
    with pytest.raises(CoverError):
        deck_group(ex1.cover("A"))
    from sunada.cover import build_cover

    N = Subgroup(ex1.group, [0], name="1")
    D = deck_group(build_cover(ex1.quotient, N))
    assert D.order == 32 and D.check_axioms()


def test_dot_export(ex1):
    text = export_dot(ex1.cover("A"), labels=ex1.labels("A"))
    assert text.count("[label=\"A") == 8
    assert text.count("style=solid") == 8
    assert text.count("style=dotted") == 2 and text.count("style=dashed") == 3
    assert text == export_dot(ex1.cover("A"), labels=ex1.labels("A"))
