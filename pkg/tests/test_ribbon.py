import pytest
from hypothesis import given, settings, strategies as st

from sunada.ribbon import (
    IN,
    OUT,
    TWO_LETTER_ORDERS,
    NonPrimitivePath,
    RibbonGraph,
    UnreducedPath,
    figure_order,
    pants_order,
    restrict_order,
    self_intersection,
    torus_order,
)
from sunada.traces import cyclic_words
from sunada.words import primitive_period


def rose(name):
    return RibbonGraph.rose(TWO_LETTER_ORDERS[name])


def si(g, letters):
    return self_intersection(g, g.path_from_letters(0, letters)).count


def test_face_counts():
    assert len(RibbonGraph.rose(pants_order(2)).faces()) == 3
    assert len(RibbonGraph.rose(torus_order()).faces()) == 1
    annulus = RibbonGraph.rose([(0, OUT), (0, IN)])
    assert len(annulus.faces()) == 2
    for g in (2, 3, 5):
        r = RibbonGraph.rose(figure_order(g))
        assert len(r.faces()) == 1 and r.genus() == g


def same_cyclic(u, v):
    return len(u) == len(v) and any(u[k:] + u[:k] == v for k in range(len(u)))


def test_restriction():
    o = figure_order(3)
    assert same_cyclic(restrict_order(o, [0, 1]), TWO_LETTER_ORDERS["figure"])
    assert same_cyclic(restrict_order(o, [0, 3]), torus_order())
    # a2, a3 sit like pants_order up to rotation and reflection
    assert len(RibbonGraph.rose(restrict_order(o, [1, 2])).faces()) == 3


def test_known_counts():
    p, t = rose("pants"), rose("torus")
    assert si(p, [1]) == 0 and si(p, [1, 2]) == 0
    assert si(p, [1, -2]) == 1  # the figure eight
    assert si(t, [1, 2]) == 0 and si(t, [1, -2]) == 0
    assert si(t, [1, 2, -1, -2]) == 0  # boundary of the torus
    assert si(t, [1, 1, 2]) == 0  # slope 1/2
    assert si(t, [1, 1, 2, 2]) == 1


def test_power_rejected():
    g = rose("pants")
    with pytest.raises(NonPrimitivePath):
        self_intersection(g, g.path_from_letters(0, [1, 2, 1, 2]))
    with pytest.raises(UnreducedPath):
        self_intersection(g, g.path_from_letters(0, [1, -1, 2]))


words6 = [w for L in range(1, 7) for w in cyclic_words(L) if primitive_period(w) == L]


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(words6), st.integers(0, 5), st.sampled_from(sorted(TWO_LETTER_ORDERS)))
def test_rotation_and_reversal_invariance(w, k, order):
    g = rose(order)
    path = g.path_from_letters(0, w)
    c = self_intersection(g, path).count
    assert self_intersection(g, path.rotate(k)).count == c
    assert self_intersection(g, path.reversed(g)).count == c
    inv = [-x for x in reversed(w)]
    assert si(g, inv) == c


def test_witnesses_match_count():
    g = rose("pants")
    r = self_intersection(g, g.path_from_letters(0, [1, 1, -2, -2, 1, 2]))
    assert r.count == len(r.crossing_witnesses)


def test_cover_of_rose_is_cover():
    # a double cover of the pants rose: |faces| and Euler characteristic double
    r = RibbonGraph.from_generator_action([[1, 0], [0, 1]], pants_order(2))
    assert r.euler_characteristic() == 2 * RibbonGraph.rose(pants_order(2)).euler_characteristic()
