"""Numerical oracle: explicit Fuchsian representations of ``F2``.

Lengths come from traces.  Self-intersection numbers are counted directly
in the upper half plane: a closed geodesic crosses itself once for every pair
of its lifts whose endpoints interleave, counted modulo the stabiliser of one
lift.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .words import CyclicWord, Word, primitive_period


class NonHyperbolic(ValueError):
    pass


class PrecisionWarning(UserWarning):
    pass


TRACE_TOL = 1e-9


@dataclass(frozen=True)
class MoebiusMap:
    a: float
    b: float
    c: float
    d: float

    @classmethod
    def from_matrix(cls, m) -> "MoebiusMap":
        m = np.asarray(m, dtype=float)
        det = np.linalg.det(m)
        if det <= 0:
            raise ValueError("matrix must have positive determinant")
        m = m / math.sqrt(det)
        return cls(*map(float, m.ravel()))

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]])

    @property
    def trace(self) -> float:
        return self.a + self.d

    def det(self) -> float:
        return self.a * self.d - self.b * self.c

    def is_hyperbolic(self) -> bool:
        return abs(self.trace) > 2 + TRACE_TOL

    def __matmul__(self, other: "MoebiusMap") -> "MoebiusMap":
        return MoebiusMap(*(self.matrix @ other.matrix).ravel())

    def inverse(self) -> "MoebiusMap":
        return MoebiusMap(self.d, -self.b, -self.c, self.a)

    def __call__(self, z):
        if z == math.inf:
            return self.a / self.c if self.c else math.inf
        den = self.c * z + self.d
        return (self.a * z + self.b) / den if den else math.inf

    def axis(self) -> "Axis":
        return axis_of(self.matrix)

    def translation_length(self) -> float:
        if not self.is_hyperbolic():
            raise NonHyperbolic(f"|trace| = {abs(self.trace):.12g} <= 2")
        return 2 * math.acosh(abs(self.trace) / 2)


@dataclass(frozen=True)
class Axis:
    """Oriented geodesic from ``repelling`` to ``attracting`` (``inf`` allowed)."""

    repelling: float
    attracting: float


def _fixed_points(m) -> tuple[float, float]:
    (a, b), (c, d) = m
    t = a + d
    if abs(t) <= 2:
        raise NonHyperbolic("not hyperbolic")
    if c == 0:
        # diagonal-ish: fixed points inf and b/(d-a)
        fin = b / (d - a)
        return (fin, math.inf) if abs(a) > abs(d) else (math.inf, fin)
    disc = np.sqrt((a - d) ** 2 + 4 * b * c)
    # avoid cancellation: take the larger-modulus root, get the other from r1 r2 = -b/c
    qq = (a - d) + np.copysign(disc, a - d)
    roots = [qq / (2 * c), -2 * b / qq if qq else 0.0]
    # attracting fixed point has derivative 1/(cz+d)^2 < 1
    key = [abs(c * r + d) for r in roots]
    att = roots[0] if key[0] > key[1] else roots[1]
    rep = roots[1] if att is roots[0] else roots[0]
    return rep, att


def axis_of(m) -> Axis:
    r, a = _fixed_points(np.asarray(m, dtype=float))
    return Axis(r, a)


def _sep(p: float, q: float, x: float) -> bool:
    """Is ``x`` strictly between ``p`` and ``q`` on the real line (``inf`` counts as beyond both)?"""
    if x == math.inf:
        return False
    lo, hi = min(p, q), max(p, q)
    return lo < x < hi


def axes_cross(ax1: Axis, ax2: Axis) -> bool:
    """Endpoint pairs interleave on the circle ``R ∪ {inf}``."""
    p, q = ax1.repelling, ax1.attracting
    r, s = ax2.repelling, ax2.attracting
    pts = [p, q, r, s]
    if len({round(v, 12) if v != math.inf else v for v in pts}) < 4:
        return False
    if math.inf in (p, q):
        fin = q if p == math.inf else p
        return (r - fin) * (s - fin) < 0 if math.inf not in (r, s) else False
    if math.inf in (r, s):
        fin = s if r == math.inf else r
        return (p - fin) * (q - fin) < 0
    return _sep(p, q, r) != _sep(p, q, s)


# ---------------------------------------------------------------------------
# representations


class Representation:
    """``a, b -> SL2(R)`` with prescribed ``(tr a, tr b, tr ab)``."""

    def __init__(self, x: float, y: float, z: float):
        self.traces = (float(x), float(y), float(z))
        if x <= 2:
            raise NonHyperbolic("tr a must exceed 2")
        lam = (x + math.sqrt(x * x - 4)) / 2
        A = np.array([[lam, 0.0], [0.0, 1 / lam]])
        p = (z - y / lam) / (lam - 1 / lam)
        s = y - p
        B = np.array([[p, 1.0], [p * s - 1, s]])
        self.A, self.B = A, B
        self.gens = {1: A, 2: B, -1: _inv(A), -2: _inv(B)}
        # extended precision copies for the lift enumeration
        lam_l = (np.longdouble(x) + np.sqrt(np.longdouble(x) ** 2 - 4)) / 2
        p_l = (np.longdouble(z) - np.longdouble(y) / lam_l) / (lam_l - 1 / lam_l)
        s_l = np.longdouble(y) - p_l
        A_l = np.array([[lam_l, 0], [0, 1 / lam_l]], dtype=np.longdouble)
        B_l = np.array([[p_l, 1], [p_l * s_l - 1, s_l]], dtype=np.longdouble)
        self.gens_ext = {1: A_l, 2: B_l, -1: _inv(A_l), -2: _inv(B_l)}
        self.commutator_trace = x * x + y * y + z * z - x * y * z - 2
        if self.commutator_trace > -2 + TRACE_TOL and abs(self.commutator_trace - 2) < TRACE_TOL:
            warnings.warn("commutator trace 2: representation is reducible", PrecisionWarning)

    def __repr__(self):
        return "Representation(x={:g}, y={:g}, z={:g})".format(*self.traces)

    def is_punctured_torus(self) -> bool:
        return abs(self.commutator_trace + 2) < TRACE_TOL

    def matrix(self, w) -> np.ndarray:
        m = np.eye(2)
        for x in _letters(w):
            m = m @ self.gens[x]
        return m

    def trace(self, w) -> float:
        return float(np.trace(self.matrix(w)))


def _inv(m):
    return np.array([[m[1, 1], -m[0, 1]], [-m[1, 0], m[0, 0]]])


def _letters(w):
    return w.letters if isinstance(w, (Word, CyclicWord)) else tuple(w)


def rep_from_traces(x: float, y: float, z: float) -> Representation:
    return Representation(x, y, z)


def parse_rep(text: str) -> Representation:
    """``"x,y,z"``; warns when the commutator trace is not at most ``-2``."""
    x, y, z = (float(t) for t in text.split(","))
    rep = Representation(x, y, z)
    if rep.commutator_trace > -2 + TRACE_TOL and not is_pants_traces(x, y, z):
        warnings.warn(f"tr[a,b] = {rep.commutator_trace:g}: discreteness not certified", PrecisionWarning)
    return rep


def is_pants_traces(x, y, z) -> bool:
    """Three boundary traces beyond 2 in absolute value whose signed product is negative."""
    third = [z, x * y - z]
    return x > 2 and y > 2 and any(t < -2 for t in third)


PUNCTURED_TORUS = (3.0, 3.0, 3.0)     # tr[a, b] = -2
PANTS_AB = (3.0, 3.0, -3.0)           # boundary a, b, ab
PANTS_AB_INV = (3.0, 3.0, 12.0)       # boundary a, b, ab^-1

# Fuchsian representation whose quotient surface matches each two-letter ribbon order
REP_FOR_ORDER = {"torus": PUNCTURED_TORUS, "pants": PANTS_AB, "figure": PANTS_AB_INV}


def rep_for_rose(order: Sequence[tuple[int, int]]) -> Representation:
    """A Fuchsian representation whose surface is the thickened two-petal rose.

    One boundary component means a punctured torus.  Otherwise the rose is a
    pair of pants and the third boundary curve is whichever of ``ab``,
    ``ab^-1`` is simple on it.
    """
    from .ribbon import RibbonGraph, self_intersection

    g = RibbonGraph.rose(order)
    if g.rank != 2:
        raise ValueError("need a two-letter vertex order")
    if len(g.faces()) == 1:
        return rep_from_traces(*PUNCTURED_TORUS)
    simple_ab = self_intersection(g, g.path_from_letters(0, [1, 2])).count == 0
    return rep_from_traces(*(PANTS_AB if simple_ab else PANTS_AB_INV))


def length_of(rep: Representation, w) -> float:
    letters = _letters(w)
    if not letters:
        raise NonHyperbolic("the identity is not hyperbolic")
    t = abs(rep.trace(letters))
    if t <= 2 + TRACE_TOL:
        raise NonHyperbolic(f"|trace| = {t:.12g} <= 2")
    return 2 * math.acosh(t / 2)


def elevation_length_check(rep: Representation, w, degree: int) -> float:
    """Residual between the elevation's length (trace of ``w^d``) and ``d`` times the base length."""
    letters = _letters(w)
    return abs(length_of(rep, letters * degree) - degree * length_of(rep, letters))


# ---------------------------------------------------------------------------
# self-intersection oracle


class CosetMembership:
    """Stabiliser of a coset under generator permutations: ``{h : c · h = c}``."""

    def __init__(self, perms: Sequence[Sequence[int]], coset: int):
        self.perms = [np.asarray(p, dtype=np.int64) for p in perms]
        self.inverse = [np.argsort(p) for p in self.perms]
        self.coset = int(coset)

    def step(self, states: np.ndarray, letter: int) -> np.ndarray:
        t = abs(letter) - 1
        return (self.perms[t] if letter > 0 else self.inverse[t])[states]

    def degree(self, letters) -> int:
        c, d = self.coset, 0
        while True:
            for x in letters:
                c = int(self.step(np.array([c]), x)[0])
            d += 1
            if c == self.coset:
                return d

    @classmethod
    def from_cover(cls, cover, coset: int, gens: Sequence[int]):
        return cls([cover.generator_perm(g) for g in gens], coset)


@dataclass
class OracleResult:
    count: int
    crossing_lifts: int
    degree: int
    radius: int
    min_margin: float

    @property
    def consistent(self) -> bool:
        return self.crossing_lifts % 2 == 0


def _ball(rep: Representation, radius: int, membership: CosetMembership | None = None):
    """Reduced words of length at most ``radius``: matrices, letter rows, lengths, coset states."""
    alphabet = (1, -1, 2, -2)
    mats, words, states = [np.eye(2, dtype=np.longdouble)[None]], [np.zeros((1, radius), dtype=np.int8)], []
    start = membership.coset if membership else 0
    states.append(np.array([start], dtype=np.int64))
    lengths = [np.zeros(1, dtype=np.int64)]
    cur_m, cur_w, cur_s = mats[0], words[0], states[0]
    for k in range(radius):
        nm, nw, ns = [], [], []
        last = cur_w[:, k - 1] if k else np.zeros(len(cur_w), dtype=np.int8)
        for x in alphabet:
            keep = last != -x
            w = cur_w[keep].copy()
            w[:, k] = x
            nm.append(cur_m[keep] @ rep.gens_ext[x])
            nw.append(w)
            ns.append(membership.step(cur_s[keep], x) if membership else cur_s[keep])
        cur_m, cur_w, cur_s = np.concatenate(nm), np.concatenate(nw), np.concatenate(ns)
        mats.append(cur_m)
        words.append(cur_w)
        states.append(cur_s)
        lengths.append(np.full(len(cur_m), k + 1, dtype=np.int64))
    M, Wd, S, Ln = (np.concatenate(v) for v in (mats, words, states, lengths))
    if membership:
        keep = S == membership.coset
        M, Wd, Ln = M[keep], Wd[keep], Ln[keep]
    return M, Wd, Ln


def _ball_cached(rep: Representation, radius: int):
    cache = rep.__dict__.setdefault("_balls", {})
    if radius not in cache:
        cache[radius] = _ball(rep, radius)
    return cache[radius]


def _overlap(words: np.ndarray, lengths: np.ndarray, pattern: Sequence[int], from_end: bool) -> np.ndarray:
    """Length of the longest prefix (or suffix) of each word agreeing with ``pattern``."""
    n, radius = words.shape
    out = np.zeros(n, dtype=np.int64)
    alive = np.ones(n, dtype=bool)
    for i in range(min(len(pattern), radius)):
        if from_end:
            idx = lengths - 1 - i
            ok = idx >= 0
            col = np.where(ok, words[np.arange(n), np.clip(idx, 0, None)], 0)
        else:
            ok = lengths > i
            col = words[:, i]
        alive &= ok & (col == pattern[i])
        out += alive
    return out


def _locally_minimal(words, lengths, W: Sequence[int]) -> np.ndarray:
    """``h`` not shortened by multiplying with ``W^(+-1)`` on either side."""
    n = len(W)
    inv = [-x for x in reversed(W)]
    keep = np.ones(len(words), dtype=bool)
    for pat in (W, inv):
        # W^-1 h cancels the prefix of h that spells W, etc.
        keep &= 2 * _overlap(words, lengths, pat, False) <= n
        keep &= 2 * _overlap(words, lengths, [-x for x in reversed(pat)], True) <= n
    return keep


def self_intersection_oracle(rep: Representation, w, membership: CosetMembership | None = None,
                             radius: int = 10, details: bool = False):
    """Count crossings of the closed geodesic of ``w`` (or of its elevation).

    With ``membership`` the curve is the elevation of ``w`` at that coset:
    lifts are translates by ``h`` in the coset stabiliser and the stabiliser of
    the base lift is generated by ``w^d``.  Lifts ``h`` are enumerated in the
    ball of reduced words of length at most ``radius``, so the count is exact
    only once the ball reaches every crossing double coset.
    """
    letters = CyclicWord(Word(_letters(w))).letters
    if not letters:
        raise NonHyperbolic("the identity is not hyperbolic")
    if primitive_period(letters) != len(letters):
        raise ValueError("oracle needs a primitive word")
    d = membership.degree(letters) if membership else 1
    W = np.eye(2, dtype=np.longdouble)
    for x in letters * d:
        W = W @ rep.gens_ext[x]
    if abs(float(W[0, 0] + W[1, 1])) <= 2 + TRACE_TOL:
        raise NonHyperbolic("word is not hyperbolic")
    rpt, att = _fixed_points(W)
    period = d * length_of(rep, letters)
    one, zero = np.longdouble(1), np.longdouble(0)
    # T sends repelling -> 0 and attracting -> inf
    if rpt == math.inf:
        T = np.array([[zero, one], [one, -att]])
    elif att == math.inf:
        T = np.array([[one, -rpt], [zero, one]])
    else:
        T = np.array([[one, -rpt], [one, -att]])
    H, words, lengths = _ball_cached(rep, radius) if membership is None else _ball(rep, radius, membership)
    # one short representative per double coset <W> h <W> suffices; long ones lose precision
    H = H[_locally_minimal(words, lengths, letters * d)]
    M = T @ H

    def image(pt):
        vec = np.array([one, zero]) if pt == math.inf else np.array([pt, one])
        return M @ vec

    pr, pa = image(rpt), image(att)
    # h preserves the axis iff it commutes with W; the relative commutator is well conditioned
    comm = np.linalg.norm(H @ W - W @ H, axis=(1, 2))
    same = comm <= 1e-12 * np.linalg.norm(H, axis=(1, 2)) * np.linalg.norm(W)
    pr, pa = pr[~same], pa[~same]
    with np.errstate(divide="ignore", invalid="ignore"):
        # normalised endpoints u = T h(r), v = T h(a)
        u = pr[:, 0] / pr[:, 1]
        v = pa[:, 0] / pa[:, 1]
        cross = (u * v < 0) & np.isfinite(u) & np.isfinite(v)
        ratio = np.minimum(np.abs(u), np.abs(v)) / np.maximum(np.abs(u), np.abs(v))
    margin = float(ratio[cross].min()) if cross.any() else 1.0
    if margin < 1e-9:
        warnings.warn("near-tangent lift; crossing decision at precision limit", PrecisionWarning)
    uc, vc = u[cross], v[cross]
    # lifts modulo translation along the axis: (orientation, shape, position mod period)
    su = np.sign(uc).astype(float)
    lu, lv = np.log(np.abs(uc)).astype(float), np.log(np.abs(vc)).astype(float)
    shape = lv - lu
    pos = np.mod((lu + lv) / 2, period)
    keys = sorted(zip(su.tolist(), shape.tolist(), pos.tolist()))
    distinct = _cluster(keys, period)
    count = distinct // 2
    if distinct % 2:
        warnings.warn("odd number of crossing lifts; radius too small", PrecisionWarning)
    res = OracleResult(count, distinct, d, radius, margin)
    return res if details else count


def _cluster(keys, period, tol=1e-4) -> int:
    reps: list[tuple[float, float, float]] = []
    for s, sh, p in keys:
        hit = False
        for s2, sh2, p2 in reps:
            if s == s2 and abs(sh - sh2) < tol:
                dp = abs(p - p2) % period
                if min(dp, period - dp) < tol:
                    hit = True
                    break
        if not hit:
            reps.append((s, sh, p))
    return len(reps)
