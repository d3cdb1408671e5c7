"""Tabulated finite groups, subgroups, conjugacy classes and coset actions.

Every group is stored as a full multiplication table over element indices
``0 .. order-1`` with the identity at index 0.  Elements are plain ints;
``FiniteGroup.labels`` keeps the human-readable objects (tuples, matrices,
permutations) used to build the table.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Sequence

import numpy as np

MAX_ORDER = 5040


class GroupError(ValueError):
    pass


class SizeGuardError(GroupError):
    pass


class FiniteGroup:
    """A finite group given by its multiplication table.

    Parameters
    ----------
    mul : array_like
        ``mul[g, h]`` is the index of ``g * h``.  The identity must be index 0.
    labels : sequence, optional
        One object per element, used for printing and parsing.
    name : str
    generators : dict, optional
        Named distinguished elements, e.g. ``{"a1": 3}``.
    """

    def __init__(self, mul, labels=None, name="G", generators=None, kind="table"):
        mul = np.asarray(mul)
        n = mul.shape[0]
        if mul.shape != (n, n):
            raise GroupError("multiplication table must be square")
        if n > MAX_ORDER:
            raise SizeGuardError(f"group order {n} exceeds tabulation guard {MAX_ORDER}")
        dtype = np.int16 if n < 2**15 else np.int32
        self.mul = mul.astype(dtype)
        self.mul.setflags(write=False)
        self.order = n
        self.identity = 0
        if not (np.array_equal(self.mul[0], np.arange(n)) and np.array_equal(self.mul[:, 0], np.arange(n))):
            raise GroupError("index 0 is not a two-sided identity")
        inv = np.full(n, -1, dtype=np.int64)
        rows, cols = np.nonzero(self.mul == 0)
        inv[rows] = cols
        if (inv < 0).any():
            raise GroupError("some element has no inverse")
        self.inv = inv.astype(dtype)
        self.inv.setflags(write=False)
        self.labels = list(labels) if labels is not None else list(range(n))
        self.index = {lab: i for i, lab in enumerate(self.labels)}
        self.name = name
        self.kind = kind
        self.generators = dict(generators or {})
        self._classes = None
        self._class_of = None

    def __repr__(self):
        return f"FiniteGroup({self.name!r}, order={self.order})"

    def __len__(self):
        return self.order

    def element(self, label) -> int:
        """Index of the element with the given label."""
        try:
            return self.index[label]
        except KeyError:
            raise GroupError(f"{label!r} is not an element of {self.name}") from None

    def multiply(self, *elements: int) -> int:
        out = 0
        for g in elements:
            out = int(self.mul[out, g])
        return out

    def power(self, g: int, n: int) -> int:
        if n < 0:
            g, n = int(self.inv[g]), -n
        out, base = 0, g
        while n:
            if n & 1:
                out = int(self.mul[out, base])
            base = int(self.mul[base, base])
            n >>= 1
        return out

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != 0:
            x = int(self.mul[x, g])
            k += 1
        return k

    def commutator(self, g: int, h: int) -> int:
        """``g h g^-1 h^-1``."""
        return self.multiply(g, h, int(self.inv[g]), int(self.inv[h]))

    def conjugate(self, x: int, g: int) -> int:
        """``g x g^-1``."""
        return self.multiply(g, x, int(self.inv[g]))

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.mul, self.mul.T))

    def check_axioms(self) -> bool:
        """Exhaustive associativity check (identity and inverses are checked on construction)."""
        m = self.mul.astype(np.int64)
        for g in range(self.order):
            # (g h) k == g (h k) for all h, k
            left = m[m[g]]           # left[h, k] = (g h) k
            right = m[g][m]          # right[h, k] = g (h k)
            if not np.array_equal(left, right):
                return False
        return True

    # conjugacy -------------------------------------------------------------

    def conjugation_orbit(self, x: int) -> np.ndarray:
        return np.unique(self.mul[self.mul[:, x], self.inv])

    def conjugacy_classes(self) -> list["ConjugacyClass"]:
        if self._classes is None:
            class_of = np.full(self.order, -1, dtype=np.int64)
            classes = []
            for x in range(self.order):
                if class_of[x] >= 0:
                    continue
                orbit = self.conjugation_orbit(x)
                class_of[orbit] = len(classes)
                classes.append(ConjugacyClass(self, x, frozenset(int(y) for y in orbit)))
            self._classes = classes
            self._class_of = class_of
        return self._classes

    @property
    def class_of(self) -> np.ndarray:
        self.conjugacy_classes()
        return self._class_of

    def conjugator(self, x: int, y: int) -> int | None:
        """Some ``g`` with ``g x g^-1 = y``, or None."""
        hits = np.nonzero(self.mul[self.mul[:, x], self.inv] == y)[0]
        return int(hits[0]) if len(hits) else None


@dataclass(frozen=True)
class ConjugacyClass:
    group: FiniteGroup = field(repr=False)
    representative: int
    members: frozenset

    def __len__(self):
        return len(self.members)

    def __contains__(self, g):
        return g in self.members


class Subgroup:
    def __init__(self, parent: FiniteGroup, members: Iterable[int], name="H", check=True):
        self.parent = parent
        self.members = tuple(sorted({int(m) for m in members}))
        self.name = name
        self._set = frozenset(self.members)
        if check:
            self._check()

    def _check(self):
        G = self.parent
        if 0 not in self._set:
            raise GroupError(f"{self.name} does not contain the identity")
        arr = np.array(self.members)
        prods = G.mul[np.ix_(arr, arr)]
        if not set(np.unique(prods).tolist()) <= self._set:
            raise GroupError(f"{self.name} is not closed under multiplication")

    @property
    def order(self) -> int:
        return len(self.members)

    def __len__(self):
        return len(self.members)

    def __contains__(self, g):
        return g in self._set

    def __iter__(self):
        return iter(self.members)

    def __eq__(self, other):
        return isinstance(other, Subgroup) and other.parent is self.parent and other._set == self._set

    def __hash__(self):
        return hash(self._set)

    def __repr__(self):
        return f"Subgroup({self.name!r}, order={self.order}, index={self.index})"

    @property
    def index(self) -> int:
        return self.parent.order // self.order

    @property
    def array(self) -> np.ndarray:
        return np.array(self.members, dtype=np.int64)

    def conjugate_by(self, g: int) -> "Subgroup":
        """``g H g^-1``."""
        G = self.parent
        conj = G.mul[G.mul[g, self.array], G.inv[g]]
        return Subgroup(G, conj.tolist(), name=f"{self.name}^g", check=False)

    def is_normal(self) -> bool:
        G = self.parent
        arr = self.array
        conj = G.mul[G.mul[:, arr], G.inv[:, None]]
        return set(np.unique(conj).tolist()) <= self._set

    def class_counts(self) -> tuple[int, ...]:
        """Number of members in each conjugacy class of the parent."""
        G = self.parent
        counts = np.bincount(G.class_of[self.array], minlength=len(G.conjugacy_classes()))
        return tuple(int(c) for c in counts)


# ---------------------------------------------------------------------------
# builders


def group_from_elements(elements: Sequence[Hashable], op: Callable, identity, name="G", kind="table",
                        generators=None) -> FiniteGroup:
    """Tabulate a group from an element list and a binary operation."""
    elements = list(elements)
    if len(elements) > MAX_ORDER:
        raise SizeGuardError(f"group order {len(elements)} exceeds tabulation guard {MAX_ORDER}")
    elements.remove(identity)
    elements.insert(0, identity)
    index = {e: i for i, e in enumerate(elements)}
    n = len(elements)
    mul = np.empty((n, n), dtype=np.int32)
    for i, x in enumerate(elements):
        for j, y in enumerate(elements):
            mul[i, j] = index[op(x, y)]
    return FiniteGroup(mul, labels=elements, name=name, kind=kind, generators=generators)


def build_semidirect_z8() -> FiniteGroup:
    """``(Z/8)^x ⋉ Z/8`` with ``(a, b)(c, d) = (ac, b + ad)``."""
    elements = [(a, b) for a in (1, 3, 5, 7) for b in range(8)]

    def op(x, y):
        return ((x[0] * y[0]) % 8, (x[1] + x[0] * y[1]) % 8)

    G = group_from_elements(elements, op, (1, 0), name="(Z/8)^x ⋉ Z/8", kind="semidirect_z8")
    G.generators = {"a1": G.element((5, 0)), "a2": G.element((3, 0)), "a3": G.element((1, 1))}
    return G


def build_symmetric(n: int) -> FiniteGroup:
    """Symmetric group on ``{1..n}``; labels are one-line images ``(σ(1), ..., σ(n))``.

    Products compose right to left: ``(σ τ)(i) = σ(τ(i))``.
    """
    order = math.factorial(n)
    if order > MAX_ORDER:
        raise SizeGuardError(f"S_{n} has order {order} > {MAX_ORDER}")
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64)  # identity first
    codes = perms @ (n ** np.arange(n - 1, -1, -1))
    order_idx = np.argsort(codes)
    # composition table: comp[s, t, i] = perm_s[perm_t[i]]
    comp = perms[np.arange(order)[:, None, None], perms[None, :, :]]
    comp_codes = comp @ (n ** np.arange(n - 1, -1, -1))
    mul = order_idx[np.searchsorted(codes[order_idx], comp_codes)]
    labels = [tuple(int(v) + 1 for v in p) for p in perms]
    G = FiniteGroup(mul, labels=labels, name=f"S{n}", kind="symmetric")
    G.degree = n
    return G


def parse_cycles(text: str, n: int) -> tuple[int, ...]:
    """Parse cycle notation like ``"(1,5,3,6)(2,4)"`` into a one-line image tuple."""
    img = list(range(1, n + 1))
    text = text.replace(" ", "")
    if text in ("", "()", "id", "1"):
        return tuple(img)
    if not (text.startswith("(") and text.endswith(")")):
        raise GroupError(f"bad cycle notation {text!r}")
    # product of cycles, rightmost applied first
    perm = list(range(1, n + 1))
    for chunk in reversed(text[1:-1].split(")(")):
        pts = [int(t) for t in chunk.split(",")] if chunk else []
        if any(p < 1 or p > n for p in pts) or len(set(pts)) != len(pts):
            raise GroupError(f"bad cycle {chunk!r} for degree {n}")
        cyc = list(range(1, n + 1))
        for a, b in zip(pts, pts[1:] + pts[:1]):
            cyc[a - 1] = b
        perm = [cyc[perm[i] - 1] for i in range(n)]
    return tuple(perm)


def format_cycles(image: Sequence[int]) -> str:
    n = len(image)
    seen, out = set(), []
    for start in range(1, n + 1):
        if start in seen or image[start - 1] == start:
            continue
        cyc, x = [], start
        while x not in seen:
            seen.add(x)
            cyc.append(x)
            x = image[x - 1]
        out.append("(" + ",".join(map(str, cyc)) + ")")
    return "".join(out) or "id"


def cycle_type_of_permutation(image: Sequence[int]) -> tuple[int, ...]:
    n, seen, lengths = len(image), set(), []
    for start in range(1, n + 1):
        if start in seen:
            continue
        k, x = 0, start
        while x not in seen:
            seen.add(x)
            x = image[x - 1]
            k += 1
        lengths.append(k)
    return tuple(sorted(lengths))


class _GF:
    """Arithmetic in GF(p^k), elements encoded as ints in base p."""

    def __init__(self, q: int):
        p, k = _prime_power(q)
        self.p, self.k, self.q = p, k, q
        if k == 1:
            self.add = lambda x, y: (x + y) % p
            self.mul = lambda x, y: (x * y) % p
            return
        modulus = _irreducible(p, k)
        add = [[0] * q for _ in range(q)]
        mul = [[0] * q for _ in range(q)]
        for x in range(q):
            for y in range(q):
                dx, dy = _digits(x, p, k), _digits(y, p, k)
                add[x][y] = _undigits([(a + b) % p for a, b in zip(dx, dy)], p)
                prod = [0] * (2 * k - 1)
                for i, a in enumerate(dx):
                    for j, b in enumerate(dy):
                        prod[i + j] = (prod[i + j] + a * b) % p
                for d in range(2 * k - 2, k - 1, -1):
                    c = prod[d]
                    if c:
                        for i in range(k + 1):
                            prod[d - k + i] = (prod[d - k + i] - c * modulus[i]) % p
                mul[x][y] = _undigits(prod[:k], p)
        self.add = lambda x, y: add[x][y]
        self.mul = lambda x, y: mul[x][y]


def _prime_power(q):
    for p in range(2, q + 1):
        if q % p == 0:
            k, r = 0, q
            while r % p == 0:
                r //= p
                k += 1
            if r != 1:
                raise GroupError(f"{q} is not a prime power")
            return p, k
    raise GroupError(f"{q} is not a prime power")


def _digits(x, p, k):
    return [(x // p**i) % p for i in range(k)]


def _undigits(ds, p):
    return sum(d * p**i for i, d in enumerate(ds))


def _irreducible(p, k):
    # monic, coefficients low to high; brute-force root/factor free search
    for tail in itertools.product(range(p), repeat=k):
        poly = list(tail) + [1]
        if poly[0] == 0:
            continue
        if all(_poly_mod(poly, list(f) + [1], p) for d in range(1, k // 2 + 1)
               for f in itertools.product(range(p), repeat=d)):
            return poly
    raise GroupError("no irreducible polynomial found")  # pragma: no cover


def _poly_mod(num, den, p):
    """True iff ``den`` does not divide ``num`` over GF(p)."""
    num = num[:]
    dd = len(den) - 1
    for d in range(len(num) - 1, dd - 1, -1):
        c = num[d]
        if c:
            for i in range(dd + 1):
                num[d - dd + i] = (num[d - dd + i] - c * den[i]) % p
    return any(num[:dd])


def build_sl(n: int, q: int) -> FiniteGroup:
    """``SL_n(F_q)``; labels are matrices as tuples of row tuples."""
    F = _GF(q)
    # |SL_n(q)| = |GL_n(q)| / (q - 1)
    gl = 1
    for i in range(n):
        gl *= q**n - q**i
    if gl // (q - 1) > MAX_ORDER:
        raise SizeGuardError(f"SL_{n}(F_{q}) has order {gl // (q - 1)} > {MAX_ORDER}")

    def matmul(x, y):
        return tuple(tuple(_fsum(F, (F.mul(x[i][t], y[t][j]) for t in range(n))) for j in range(n))
                     for i in range(n))

    def det(m):
        if len(m) == 1:
            return m[0][0]
        out = 0
        for j in range(len(m)):
            minor = tuple(tuple(r[:j] + r[j + 1:]) for r in m[1:])
            term = F.mul(m[0][j], det(minor))
            if j % 2:
                term = F.mul(term, _neg_one(F))
            out = F.add(out, term)
        return out

    rows = list(itertools.product(range(q), repeat=n))
    elements = [m for m in itertools.product(rows, repeat=n) if det(m) == 1]
    ident = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
    return group_from_elements(elements, matmul, ident, name=f"SL{n}(F{q})", kind="sl")


def _fsum(F, it):
    out = 0
    for v in it:
        out = F.add(out, v)
    return out


def _neg_one(F):
    return next(x for x in range(F.q) if F.add(x, 1) == 0)


def build_from_table(mul) -> FiniteGroup:
    """Group from a raw multiplication table; relabels so the identity is index 0."""
    mul = np.asarray(mul, dtype=np.int64)
    n = mul.shape[0]
    e = next((i for i in range(n) if np.array_equal(mul[i], np.arange(n))), None)
    if e is None:
        raise GroupError("table has no left identity")
    perm = [e] + [i for i in range(n) if i != e]
    pos = np.empty(n, dtype=np.int64)
    pos[perm] = np.arange(n)
    relabeled = pos[mul[np.ix_(perm, perm)]]
    G = FiniteGroup(relabeled, labels=perm, name="table", kind="table")
    if not G.check_axioms():
        raise GroupError("table is not associative")
    return G


# ---------------------------------------------------------------------------
# subgroups


def subgroup_from_generators(G: FiniteGroup, gens: Iterable[int], name="H") -> Subgroup:
    members = {0}
    frontier = [0]
    gens = [int(g) for g in gens]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = int(G.mul[x, g])
                if y not in members:
                    members.add(y)
                    nxt.append(y)
        frontier = nxt
    return Subgroup(G, members, name=name, check=False)


def subgroup_from_predicate(G: FiniteGroup, pred: Callable, name="H") -> Subgroup:
    return Subgroup(G, [i for i, lab in enumerate(G.labels) if pred(lab)], name=name)


def conjugacy_classes(G: FiniteGroup) -> list[ConjugacyClass]:
    return G.conjugacy_classes()


def is_almost_conjugate(G: FiniteGroup, A: Subgroup, B: Subgroup) -> bool:
    """True iff ``A`` and ``B`` meet every conjugacy class of ``G`` in equally many elements."""
    return A.class_counts() == B.class_counts()


def conjugating_element(G: FiniteGroup, A: Subgroup, B: Subgroup) -> int | None:
    """Some ``g`` with ``g A g^-1 = B`` (exhaustive search), or None."""
    if A.order != B.order:
        return None
    target = B.array
    arr = A.array
    conj = np.sort(G.mul[G.mul[:, arr], G.inv[:, None]], axis=1)
    hits = np.nonzero((conj == target).all(axis=1))[0]
    return int(hits[0]) if len(hits) else None


# ---------------------------------------------------------------------------
# cosets


class CosetSpace:
    """Right cosets ``H g`` with the right-multiplication action of ``G``.

    Cosets are numbered by their smallest element index, so the coset ``H``
    itself is number 0.  ``action[g, c]`` is the coset ``c · g``.
    """

    def __init__(self, G: FiniteGroup, H: Subgroup):
        if H.parent is not G:
            raise GroupError("subgroup belongs to a different group")
        self.group = G
        self.subgroup = H
        coset_of = np.full(G.order, -1, dtype=np.int64)
        reps, cosets = [], []
        harr = H.array
        for g in range(G.order):
            if coset_of[g] >= 0:
                continue
            members = G.mul[harr, g]
            coset_of[members] = len(reps)
            reps.append(g)
            cosets.append(tuple(sorted(int(m) for m in members)))
        self.coset_of = coset_of
        self.reps = reps
        self.cosets = cosets
        self.index = len(reps)
        rep_arr = np.array(reps, dtype=np.int64)
        self.action = coset_of[G.mul[rep_arr][:, :].T]   # action[g, c] = coset(rep_c * g)
        self.action.setflags(write=False)

    def __len__(self):
        return self.index

    def __repr__(self):
        return f"CosetSpace({self.subgroup.name}\\{self.group.name}, index={self.index})"

    def coset(self, g: int) -> int:
        """Index of the coset ``H g``."""
        return int(self.coset_of[g])

    def act(self, c: int, g: int) -> int:
        return int(self.action[g, c])

    def cycles(self, g: int) -> list[list[int]]:
        perm = self.action[g]
        seen = np.zeros(self.index, dtype=bool)
        out = []
        for start in range(self.index):
            if seen[start]:
                continue
            cyc, c = [], start
            while not seen[c]:
                seen[c] = True
                cyc.append(c)
                c = int(perm[c])
            out.append(cyc)
        return out

    def cycle_type(self, g: int) -> tuple[int, ...]:
        return tuple(sorted(len(c) for c in self.cycles(g)))

    def fixed_points(self, g: int) -> int:
        return int((self.action[g] == np.arange(self.index)).sum())


def coset_space(G: FiniteGroup, H: Subgroup) -> CosetSpace:
    return CosetSpace(G, H)


def cycle_type(space: CosetSpace, g: int) -> tuple[int, ...]:
    return space.cycle_type(g)


# ---------------------------------------------------------------------------
# Gassmann search


def _canonical(G: FiniteGroup, H: Subgroup) -> tuple[int, ...]:
    arr = H.array
    conj = np.sort(G.mul[G.mul[:, arr], G.inv[:, None]], axis=1)
    return tuple(int(v) for v in min(map(tuple, conj)))


def subgroup_classes(G: FiniteGroup, max_order: int) -> list[Subgroup]:
    """Representatives of conjugacy classes of subgroups of order at most ``max_order``.

    Built by repeatedly joining class representatives with cyclic subgroups;
    each representative is the lexicographically least member set of its class.
    """
    if G.order > MAX_ORDER:
        raise SizeGuardError("group too large for subgroup enumeration")
    seen: dict[tuple, Subgroup] = {}
    trivial = Subgroup(G, [0], check=False)
    queue = [trivial]
    seen[(0,)] = trivial
    while queue:
        H = queue.pop()
        for x in range(G.order):
            if x in H:
                continue
            J = _bounded_closure(G, H.members, x, max_order)
            if J is None:
                continue
            key = _canonical(G, J)
            if key not in seen:
                rep = Subgroup(G, key, check=False)
                seen[key] = rep
                queue.append(rep)
    return sorted(seen.values(), key=lambda S: (S.order, S.members))


def _bounded_closure(G, members, x, bound):
    elems = set(members)
    gens = list(members) + [x]
    frontier = list(elems)
    # closure under right multiplication by the generators
    if x not in elems:
        elems.add(x)
        frontier.append(x)
    while frontier:
        nxt = []
        for y in frontier:
            for g in gens:
                z = int(G.mul[y, g])
                if z not in elems:
                    elems.add(z)
                    if len(elems) > bound:
                        return None
                    nxt.append(z)
        frontier = nxt
    return Subgroup(G, elems, check=False)


def gassmann_search(G: FiniteGroup, max_subgroup_order: int) -> list[tuple[Subgroup, Subgroup]]:
    """Pairs of almost conjugate but non-conjugate subgroups, one pair per pair of classes."""
    reps = subgroup_classes(G, max_subgroup_order)
    by_counts: dict[tuple, list[Subgroup]] = {}
    for H in reps:
        by_counts.setdefault(H.class_counts(), []).append(H)
    pairs = []
    for group in by_counts.values():
        for A, B in itertools.combinations(group, 2):
            pairs.append((A, B))
    return pairs
