import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from sunada.hyperbolic import (
    PANTS_AB,
    PUNCTURED_TORUS,
    CosetMembership,
    MoebiusMap,
    NonHyperbolic,
    PrecisionWarning,
    axes_cross,
    axis_of,
    elevation_length_check,
    length_of,
    parse_rep,
    rep_for_rose,
    rep_from_traces,
    self_intersection_oracle,
)
from sunada.ribbon import TWO_LETTER_ORDERS, RibbonGraph, self_intersection
from sunada.traces import cyclic_words, trace_polynomial
from sunada.words import Word, primitive_period

words5 = [w for L in range(1, 6) for w in cyclic_words(L) if primitive_period(w) == L]


def test_fixed_points_are_fixed():
    m = np.array([[2.0, 1.0], [1.0, 1.0]])
    ax = axis_of(m)
    f = MoebiusMap.from_matrix(m)
    for p in (ax.repelling, ax.attracting):
        assert math.isclose(f(p), p, rel_tol=1e-12)
    # iterating pushes points toward the attracting end
    z = 0.3
    for _ in range(40):
        z = f(z)
    assert math.isclose(z, ax.attracting, rel_tol=1e-9)


def test_axes_cross():
    a = axis_of([[2.0, 0.0], [0.0, 0.5]])  # 0 -> inf
    b = axis_of(np.array([[5.0, -4.0], [-4.0, 3.4]]) / math.sqrt(5 * 3.4 - 16))
    assert axes_cross(a, b) == ((b.repelling < 0) != (b.attracting < 0))


def test_translation_length():
    f = MoebiusMap.from_matrix([[3.0, 0.0], [0.0, 1 / 3]])
    assert math.isclose(f.translation_length(), 2 * math.log(3))
    with pytest.raises(NonHyperbolic):
        MoebiusMap.from_matrix([[1.0, 1.0], [0.0, 1.0]]).translation_length()


def test_rep_traces_match_polynomials():
    for traces in (PUNCTURED_TORUS, PANTS_AB):
        rep = rep_from_traces(*traces)
        for w in words5:
            p = trace_polynomial(Word(w))
            assert math.isclose(rep.trace(w), p(*traces), rel_tol=1e-9, abs_tol=1e-9)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(words5), st.integers(1, 6))
def test_length_multiplicative(w, n):
    rep = rep_from_traces(*PANTS_AB)
    assert abs(length_of(rep, list(w) * n) - n * length_of(rep, w)) <= 1e-9 * max(1, n * length_of(rep, w))
    assert elevation_length_check(rep, w, n) <= 1e-9 * max(1, n * length_of(rep, w))


def test_parabolic_rejected():
    rep = rep_from_traces(*PUNCTURED_TORUS)
    with pytest.raises(NonHyperbolic):
        length_of(rep, [1, 2, -1, -2])


def test_parse_rep_warns():
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        parse_rep("3,3,6.5")  # tr[a,b] = -0.25
    assert any(issubclass(c.category, PrecisionWarning) for c in caught)


@pytest.mark.parametrize("order", sorted(TWO_LETTER_ORDERS))
def test_oracle_matches_rose_short_words(order):
    g = RibbonGraph.rose(TWO_LETTER_ORDERS[order])
    rep = rep_for_rose(TWO_LETTER_ORDERS[order])
    for w in words5:
        if order == "torus" and sorted(w) == [-2, -1, 1, 2]:
            continue  # boundary of the punctured torus is parabolic
        comb = self_intersection(g, g.path_from_letters(0, w)).count
        assert self_intersection_oracle(rep, w, radius=8) == comb, w


def test_oracle_details_and_radius_stability():
    rep = rep_from_traces(*PANTS_AB)
    w = (1, 1, -2, 1, 2)
    r8 = self_intersection_oracle(rep, w, radius=8, details=True)
    r10 = self_intersection_oracle(rep, w, radius=10)
    assert r8.count == r10 and r8.consistent and r8.radius == 8


def test_oracle_on_cover_elevations(ex1):
    """Elevation counts on the Example 1 covers through the coset-stabiliser lifts."""
    from sunada.cover import elevations_of
    from sunada.curves import elevation_self_intersection
    from sunada.ribbon import restrict_order

    w = ex1.word("a1^-2 a2")
    for key in "AB":
        cv = ex1.cover(key)
        rep = rep_for_rose(restrict_order(cv.order, [0, 1]))
        for e in elevations_of(cv, w):
            m = CosetMembership.from_cover(cv, e.start_coset, [0, 1])
            assert self_intersection_oracle(rep, (-1, -1, 2), m, radius=8) == elevation_self_intersection(cv, e).count
