"""Trace polynomials on the free group ``F2 = <a, b>``.

Every ``tr rho(w)`` is an integer polynomial in ``x = tr a``, ``y = tr b`` and
``z = tr ab``.  It is computed by repeatedly splitting the word with the
identity ``tr(P) tr(Q) = tr(PQ) + tr(PQ^-1)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .words import TWO_LETTERS, CyclicWord, Word, WordError, _cyclic_core, free_reduce, letter_key, least_rotation


class TracePoly:
    """Integer polynomial in ``x, y, z`` stored as ``{(ex, ey, ez): coef}``."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for k, c in (terms or {}).items():
            if c:
                clean[tuple(k)] = clean.get(tuple(k), 0) + int(c)
        self.terms = {k: c for k, c in clean.items() if c}

    @classmethod
    def const(cls, c: int) -> "TracePoly":
        return cls({(0, 0, 0): c})

    @classmethod
    def var(cls, name: str) -> "TracePoly":
        return cls({{"x": (1, 0, 0), "y": (0, 1, 0), "z": (0, 0, 1)}[name]: 1})

    def _coerce(self, other):
        return other if isinstance(other, TracePoly) else TracePoly.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return TracePoly(out)

    __radd__ = __add__

    def __neg__(self):
        return TracePoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        out: dict = {}
        for (a, b, c), u in self.terms.items():
            for (d, e, f), v in other.terms.items():
                k = (a + d, b + e, c + f)
                out[k] = out.get(k, 0) + u * v
        return TracePoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = TracePoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = TracePoly.const(other)
        return isinstance(other, TracePoly) and self.terms == other.terms

    def __hash__(self):
        return hash(self.canonical())

    def canonical(self) -> tuple:
        """Terms sorted by descending total degree, then descending exponents."""
        return tuple(sorted(((k, c) for k, c in self.terms.items()), key=lambda kc: (-sum(kc[0]), tuple(-e for e in kc[0]))))

    def to_list(self) -> list[list[int]]:
        return [[c, *k] for k, c in self.canonical()]

    @property
    def degree(self) -> int:
        return max((sum(k) for k in self.terms), default=0)

    def __call__(self, x, y, z):
        total = 0
        for (a, b, c), coef in self.terms.items():
            total = total + coef * (x**a) * (y**b) * (z**c)
        return total

    evaluate = __call__

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (a, b, c), coef in self.canonical():
            mono = "*".join(f"{v}^{e}" if e > 1 else v for v, e in zip("xyz", (a, b, c)) if e)
            if not mono:
                body = str(abs(coef))
            elif abs(coef) == 1:
                body = mono
            else:
                body = f"{abs(coef)}*{mono}"
            sign = "-" if coef < 0 else "+"
            parts.append((sign, body))
        head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        return " ".join([head] + [f"{s} {b}" for s, b in parts[1:]])

    def __repr__(self):
        return f"TracePoly({self})"


X, Y, Z = TracePoly.var("x"), TracePoly.var("y"), TracePoly.var("z")


def chebyshev(p: TracePoly, n: int) -> TracePoly:
    """``tr(M^n)`` from ``p = tr(M)`` (``n`` may be negative)."""
    n = abs(n)
    if n == 0:
        return TracePoly.const(2)
    prev, cur = TracePoly.const(2), p
    for _ in range(n - 1):
        prev, cur = cur, p * cur - prev
    return cur


def power_trace(p: TracePoly, n: int) -> TracePoly:
    if n < 1:
        raise ValueError("power must be positive")
    return chebyshev(p, n)


def _key(letters: tuple[int, ...]) -> tuple[int, ...]:
    """Canonical cyclic word up to inversion."""
    core = _cyclic_core(free_reduce(letters))
    if not core:
        return ()
    best = None
    for seq in (core, tuple(-x for x in reversed(core))):
        k = least_rotation([letter_key(x) for x in seq])
        rot = seq[k:] + seq[:k]
        if best is None or [letter_key(x) for x in rot] < [letter_key(x) for x in best]:
            best = rot
    return best


def _inv(letters):
    return tuple(-x for x in reversed(letters))


@lru_cache(maxsize=None)
def _trace(key: tuple[int, ...]) -> TracePoly:
    n = len(key)
    if n == 0:
        return TracePoly.const(2)
    gens = {abs(x) for x in key}
    if len(gens) == 1:
        return chebyshev(X if 1 in gens else Y, n)
    if n == 2:
        # key is canonical, so it is one of (a, b), (a, b^-1) up to inversion
        return Z if key[0] * key[1] > 0 else X * Y - Z
    w = key
    for i in range(n):
        for j in range(i + 1, n):
            if w[i] == w[j]:
                # w = xU xV  ->  tr(xU) tr(xV) - tr(U V^-1)
                xu, xv = w[i:j], w[j:] + w[:i]
                u, v = xu[1:], xv[1:]
                return _t(xu) * _t(xv) - _t(u + _inv(v))
    for i in range(n):
        for j in range(i + 1, n):
            if w[i] == -w[j]:
                # w = P Q with P = xU, Q = x^-1 V  ->  tr P tr Q - tr(P Q^-1)
                p, q = w[i:j], w[j:] + w[:i]
                return _t(p) * _t(q) - _t(p + _inv(q))
    raise AssertionError("unreachable: a cyclic word of length > 2 over two letters repeats a letter")


def _t(letters) -> TracePoly:
    return _trace(_key(tuple(letters)))


def trace_polynomial(w) -> TracePoly:
    """Polynomial in ``x = tr a, y = tr b, z = tr ab`` equal to ``tr w``."""
    if isinstance(w, (Word, CyclicWord)):
        if w.alphabet.rank != 2:
            raise WordError("trace polynomials need a two-letter alphabet")
        letters = w.letters
    else:
        letters = tuple(w)
        if any(abs(x) > 2 for x in letters):
            raise WordError("trace polynomials need a two-letter alphabet")
    return _t(letters)


# ---------------------------------------------------------------------------
# commensurability

# integer points of SL2(Z) used to discard most non-matches before comparing polynomials
_FINGERPRINT_REPS = (
    (((2, 1), (1, 1)), ((1, 2), (1, 3))),
    (((3, 2), (1, 1)), ((1, 3), (2, 7))),
)


def _imat(a, b):
    return ((a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]),
            (a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]))


def _iinv(a):
    return ((a[1][1], -a[0][1]), (-a[1][0], a[0][0]))


def _int_trace(letters, rep) -> int:
    gens = {1: rep[0], 2: rep[1], -1: _iinv(rep[0]), -2: _iinv(rep[1])}
    m = ((1, 0), (0, 1))
    for x in letters:
        m = _imat(m, gens[x])
    return m[0][0] + m[1][1]


def _power_fingerprints(letters, bound) -> list[tuple[int, ...]]:
    """``(tr rho_k(w^m)^2)_k`` for ``m = 1..bound`` via the Chebyshev recursion."""
    out = []
    base = [_int_trace(letters, rep) for rep in _FINGERPRINT_REPS]
    prev, cur = [2] * len(base), base
    for _ in range(bound):
        out.append(tuple(t * t for t in cur))
        prev, cur = cur, [b * c - p for b, c, p in zip(base, cur, prev)]
    return out


@dataclass(frozen=True)
class CommensurabilityWitness:
    m: int
    n: int


def _letters(w):
    return w.letters if isinstance(w, (Word, CyclicWord)) else tuple(w)


def trace_commensurable(w1, w2, bound: int = 8) -> CommensurabilityWitness | None:
    """Least ``(m, n)`` with ``tr(w1^m)^2 = tr(w2^n)^2``, searching ``1 <= m, n <= bound``."""
    l1, l2 = _letters(w1), _letters(w2)
    f1, f2 = _power_fingerprints(l1, bound), _power_fingerprints(l2, bound)
    if not set(f1) & set(f2):
        return None
    p1, p2 = trace_polynomial(l1), trace_polynomial(l2)
    pairs = sorted(itertools.product(range(1, bound + 1), repeat=2), key=lambda mn: (mn[0] + mn[1], mn))
    for m, n in pairs:
        if f1[m - 1] == f2[n - 1] and power_trace(p1, m) ** 2 == power_trace(p2, n) ** 2:
            return CommensurabilityWitness(m, n)
    return None


def powers_conjugate(w1, w2, bound: int) -> tuple[int, int] | None:
    """Some ``w1^m`` conjugate to ``w2^(+-n)`` with ``m, n <= bound``."""
    c1, c2 = CyclicWord(Word(_letters(w1))), CyclicWord(Word(_letters(w2)))
    if not c1.letters or not c2.letters:
        return None
    for m in range(1, bound + 1):
        pm = c1.power(m)
        for n in range(1, bound + 1):
            if len(pm) != n * len(c2):
                continue
            if pm == c2.power(n) or pm == c2.power(-n):
                return (m, n)
    return None


def is_trace_twin_pair(w1, w2, bound: int = 8) -> bool:
    if trace_commensurable(w1, w2, bound) is None:
        return False
    return powers_conjugate(w1, w2, bound) is None


# ---------------------------------------------------------------------------
# certificates


@dataclass(frozen=True)
class Certificate:
    granted: bool
    family: str
    reason: str

    def to_dict(self):
        return {"granted": self.granted, "family": self.family, "reason": self.reason}


def _standard(genus, gen):
    """``("a"|"b", i)`` for a surface generator index."""
    return ("a", gen + 1) if gen < genus else ("b", gen - genus + 1)


def no_length_twins_certificate(w: Word, genus: int) -> Certificate:
    """Certify the word lies in a family proven to have no length twins.

    Granted families: nonzero powers of one standard generator, and
    ``x^j y^l`` for two standard generators meeting only at the basepoint
    (so their neighbourhood is a pair of pants) on a surface of genus at
    least 3.
    """
    cw = CyclicWord(w)
    if not cw.letters:
        return Certificate(False, "none", "trivial word")
    runs = cw.word.runs()
    if len({g for g, _ in runs}) == 1:
        return Certificate(True, "simple-power", "nonzero power of a simple standard generator")
    if len(runs) != 2:
        return Certificate(False, "none", "not of the form x^j y^l in two standard generators")
    (g1, j), (g2, l) = runs
    (k1, i1), (k2, i2) = _standard(genus, g1), _standard(genus, g2)
    if k1 != k2 and i1 == i2:
        return Certificate(False, "none", f"a{i1} and b{i1} cross once; their neighbourhood is a one-holed torus")
    if genus < 3:
        return Certificate(False, "hyperelliptic",
                           "genus 2: the hyperelliptic involution image is a possible length twin")
    return Certificate(True, "pants-pair", f"x^{j} y^{l} on disjoint standard generators, genus {genus} >= 3")


def cyclic_words(length: int, alphabet_rank: int = 2) -> Iterable[tuple[int, ...]]:
    """Canonical cyclically reduced words of exactly this length (one per conjugacy class)."""
    letters = [s * (g + 1) for g in range(alphabet_rank) for s in (1, -1)]
    seen = set()
    for seq in itertools.product(letters, repeat=length):
        if any(seq[i] == -seq[i + 1] for i in range(length - 1)) or (length > 1 and seq[0] == -seq[-1]):
            continue
        k = least_rotation([letter_key(x) for x in seq])
        rot = seq[k:] + seq[:k]
        if rot not in seen:
            seen.add(rot)
            yield rot


__all__ = [
    "TracePoly", "X", "Y", "Z", "chebyshev", "power_trace", "trace_polynomial", "trace_commensurable",
    "powers_conjugate", "is_trace_twin_pair", "CommensurabilityWitness", "Certificate",
    "no_length_twins_certificate", "cyclic_words", "TWO_LETTERS",
]
