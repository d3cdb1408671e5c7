import itertools

import numpy as np
from hypothesis import given, settings, strategies as st

from sunada.traces import (
    X,
    Y,
    Z,
    TracePoly,
    cyclic_words,
    is_trace_twin_pair,
    no_length_twins_certificate,
    power_trace,
    powers_conjugate,
    trace_commensurable,
    trace_polynomial,
)
from sunada.words import Word, parse_word, SurfacePresentation

T = lambda s: trace_polynomial(parse_word(s))  # noqa: E731


def test_small_polynomials():
    assert T("a^2") == X * X - 2
    assert T("a b^-1") == X * Y - Z
    assert T("a b") + T("a b^-1") == X * Y
    assert str(T("a b a^-1 b^-1")) == "-x*y*z + x^2 + y^2 + z^2 - 2"
    assert T("") == TracePoly.const(2)


def test_polynomial_arithmetic():
    p = (X + 1) * (X - 1)
    assert p == X**2 - 1 and p.degree == 2
    assert sorted(map(tuple, p.to_list())) == [(-1, 0, 0, 0), (1, 2, 0, 0)]


words6 = [w for L in range(1, 7) for w in cyclic_words(L)]


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(words6), st.integers(0, 5))
def test_class_function(w, k):
    p = trace_polynomial(Word(w))
    rot = w[k % len(w):] + w[: k % len(w)]
    assert trace_polynomial(Word(rot)) == p
    assert trace_polynomial(~Word(w)) == p


def test_power_trace_exhaustive():
    for w in words6:
        p = trace_polynomial(Word(w))
        for n in range(1, 6):
            assert power_trace(p, n) == trace_polynomial(Word(w) ** n)
    assert power_trace(X, 3) == X**3 - 3 * X


def _rand_sl2(rng, n):
    m = rng.normal(size=(n, 2, 2))
    d = np.linalg.det(m)
    m[d < 0, 0] *= -1
    return m / np.sqrt(np.abs(d))[:, None, None]


def test_against_matrices_small():
    rng = np.random.default_rng(0)
    A, B = _rand_sl2(rng, 50), _rand_sl2(rng, 50)
    inv = np.linalg.inv
    gens = {1: A, 2: B, -1: inv(A), -2: inv(B)}
    x, y, z = (np.trace(m, axis1=1, axis2=2) for m in (A, B, A @ B))
    for w in (w for L in range(1, 7) for w in cyclic_words(L)):
        M = gens[w[0]]
        for l in w[1:]:
            M = M @ gens[l]
        tr = np.trace(M, axis1=1, axis2=2)
        assert np.allclose(trace_polynomial(Word(w))(x, y, z), tr, rtol=1e-9, atol=1e-9)


def test_classical_trace_twins():
    u, v = parse_word("a^2 b^-1 a b"), parse_word("a^2 b a b^-1")
    assert trace_polynomial(u) == trace_polynomial(v)
    w = trace_commensurable(u, v)
    assert (w.m, w.n) == (1, 1)
    assert is_trace_twin_pair(u, v)
    assert is_trace_twin_pair(parse_word("a b^2 a^2 b"), parse_word("a b a^2 b^2"))
    assert powers_conjugate(u, v, 6) is None


def test_inverse_not_twin():
    w = parse_word("a^2 b^3")
    assert (trace_commensurable(w, ~w).m, trace_commensurable(w, ~w).n) == (1, 1)
    assert not is_trace_twin_pair(w, ~w)
    assert trace_commensurable(parse_word("a"), parse_word("b")) is None


def test_power_pair_family_has_no_twins():
    """Any word trace-commensurable with a^j b^k has a power conjugate to one of its powers."""
    us = [Word(u) for L in range(1, 7) for u in cyclic_words(L)]
    for j, k in itertools.product([1, 2, 3, -1, -2, -3], [1, 2, 3, -1, -2, -3]):
        w = Word([1] * abs(j) if j > 0 else [-1] * abs(j)) * Word([2] * k if k > 0 else [-2] * -k)
        for u in us:
            if trace_commensurable(w, u, bound=3) is not None:
                assert not is_trace_twin_pair(w, u, bound=3), (j, k, u)


def test_certificates():
    P3 = SurfacePresentation(3)
    P2 = SurfacePresentation(2)
    c = no_length_twins_certificate(parse_word("a1^-2 a2", P3.alphabet), 3)
    assert c.granted and c.family == "pants-pair"
    assert not no_length_twins_certificate(parse_word("a1^-2 a2", P2.alphabet), 2).granted
    assert not no_length_twins_certificate(parse_word("a1 b1", P3.alphabet), 3).granted
    assert no_length_twins_certificate(parse_word("b2^5", P3.alphabet), 3).granted
    assert not no_length_twins_certificate(parse_word("a1 a2 a1 a3", P3.alphabet), 3).granted
