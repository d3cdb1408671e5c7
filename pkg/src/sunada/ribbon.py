"""Ribbon graphs, closed edge paths and their minimal self-intersection numbers.

A ribbon graph is a graph with a cyclic order of edge-ends (darts) at each
vertex; thickening it gives a surface with boundary whose fundamental group
is free.  A closed reduced edge path is the combinatorial geodesic in its free
homotopy class, and its self-intersection number is computed by counting
linked pairs of lifts to the universal cover tree.

Darts of a generator-labelled graph are described by ``(generator, sign)``:
sign ``+1`` is the outgoing end of an edge ``v -> v·x`` and ``-1`` the
incoming end.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .words import primitive_period


class RibbonError(ValueError):
    pass


class NonPrimitivePath(RibbonError):
    pass


class UnreducedPath(RibbonError):
    pass


# ---------------------------------------------------------------------------
# vertex orders

OUT, IN = 1, -1


def figure_order(genus: int) -> list[tuple[int, int]]:
    """Cyclic dart order at the base vertex of the standard generators.

    The layout follows the usual picture of a genus ``g`` surface with a
    basepoint just right of the first handle: ``a1`` is a counter-clockwise
    loop around the first hole, ``a2 .. ag`` clockwise loops around the holes
    to the right, and each ``bi`` crosses ``ai`` once at the basepoint.
    Generator indices are ``ai -> i-1`` and ``bi -> g+i-1``.

    Two ``a`` loops bound a pair of pants.  With ``a1`` its third boundary is
    ``a1 ai^-1``; among ``a2 .. ag`` it is ``ai aj``.
    """
    g = genus
    order = []
    for i in range(2, g + 1):
        a, b = i - 1, g + i - 1
        order += [(b, IN), (a, IN), (b, OUT), (a, OUT)]
    order += [(0, OUT), (g, OUT), (0, IN), (g, IN)]
    return order


def pants_order(rank: int) -> list[tuple[int, int]]:
    """Order ``(x1-out, x1-in, x2-out, x2-in, ...)``: all loops pairwise bound pants with ``xi xj``."""
    order = []
    for i in range(rank):
        order += [(i, OUT), (i, IN)]
    return order


def torus_order() -> list[tuple[int, int]]:
    """One-vertex ribbon structure of the once-punctured torus on ``a, b``."""
    return [(0, OUT), (1, OUT), (0, IN), (1, IN)]


TWO_LETTER_ORDERS = {
    # restriction of figure_order to (a1, a2)
    "figure": [(0, OUT), (0, IN), (1, IN), (1, OUT)],
    "pants": pants_order(2),
    "torus": torus_order(),
}


def restrict_order(order: Sequence[tuple[int, int]], gens: Sequence[int]) -> list[tuple[int, int]]:
    """Restrict a vertex order to the given generators, renumbered ``0..len(gens)-1``."""
    pos = {g: k for k, g in enumerate(gens)}
    return [(pos[g], s) for g, s in order if g in pos]


# ---------------------------------------------------------------------------
# ribbon graphs


class RibbonGraph:
    """Darts ``0..n-1`` with a vertex map, an edge involution and a rotation.

    Parameters
    ----------
    rotations : list of list of int
        ``rotations[v]`` lists the darts at vertex ``v`` in cyclic order.
    partner : sequence of int
        Fixed-point-free involution pairing the two ends of each edge.
    """

    def __init__(self, rotations: Sequence[Sequence[int]], partner: Sequence[int]):
        n = len(partner)
        self.n_darts = n
        self.partner = np.asarray(partner, dtype=np.int64)
        self.vertex_of = np.full(n, -1, dtype=np.int64)
        self.rot_pos = np.full(n, -1, dtype=np.int64)
        self.next_dart = np.full(n, -1, dtype=np.int64)
        self.degree = np.array([len(r) for r in rotations], dtype=np.int64)
        for v, rot in enumerate(rotations):
            for k, d in enumerate(rot):
                if self.vertex_of[d] >= 0:
                    raise RibbonError(f"dart {d} appears twice in the rotation system")
                self.vertex_of[d] = v
                self.rot_pos[d] = k
                self.next_dart[d] = rot[(k + 1) % len(rot)]
        if (self.vertex_of < 0).any():
            raise RibbonError("some dart is not placed at a vertex")
        if not np.array_equal(self.partner[self.partner], np.arange(n)) or (self.partner == np.arange(n)).any():
            raise RibbonError("partner must be a fixed-point-free involution")
        self.rotations = [tuple(r) for r in rotations]

    @property
    def n_vertices(self) -> int:
        return len(self.rotations)

    @property
    def n_edges(self) -> int:
        return self.n_darts // 2

    def euler_characteristic(self) -> int:
        return self.n_vertices - self.n_edges

    def face_permutation(self) -> np.ndarray:
        """Leave along ``d``, arrive at the partner end, turn to the next dart."""
        return self.next_dart[self.partner]

    def faces(self) -> list[list[int]]:
        """Boundary walks, each as the list of darts it leaves along."""
        f = self.face_permutation()
        seen = np.zeros(self.n_darts, dtype=bool)
        out = []
        for d in range(self.n_darts):
            if seen[d]:
                continue
            walk, x = [], d
            while not seen[x]:
                seen[x] = True
                walk.append(x)
                x = int(f[x])
            out.append(walk)
        return out

    def genus(self) -> int:
        """Genus of the thickened (connected) surface."""
        chi, b = self.euler_characteristic(), len(self.faces())
        return (2 - chi - b) // 2

    @classmethod
    def from_generator_action(cls, perms: Sequence[Sequence[int]], order: Sequence[tuple[int, int]]):
        """Schreier-type graph: vertex ``v`` has an ``x_t`` edge to ``perms[t][v]``.

        Dart ``(v, t, s)`` is numbered ``2 (v k + t) + (s == IN)``.  Every
        vertex gets the same cyclic ``order`` of ``(t, sign)`` pairs.
        """
        k = len(perms)
        nv = len(perms[0]) if k else 1
        partner = np.empty(2 * nv * k, dtype=np.int64)
        for t, perm in enumerate(perms):
            perm = np.asarray(perm, dtype=np.int64)
            v = np.arange(nv)
            out = 2 * (v * k + t)
            inn = 2 * (perm * k + t) + 1
            partner[out] = inn
            partner[inn] = out
        rotations = [[2 * (v * k + t) + (s == IN) for t, s in order] for v in range(nv)]
        g = cls(rotations, partner)
        g.rank = k
        return g

    @classmethod
    def rose(cls, order: Sequence[tuple[int, int]]):
        rank = max(t for t, _ in order) + 1
        return cls.from_generator_action([[0]] * rank, order)

    def dart(self, v: int, t: int, sign: int) -> int:
        return 2 * (v * self.rank + t) + (sign == IN)

    def path_from_letters(self, start: int, letters: Sequence[int]) -> "CyclicEdgePath":
        """Read letters ``±(t+1)`` from vertex ``start``; the walk must close up."""
        darts, v = [], start
        for x in letters:
            t = abs(x) - 1
            d = self.dart(v, t, OUT if x > 0 else IN)
            darts.append(d)
            v = int(self.vertex_of[self.partner[d]])
        if v != start:
            raise RibbonError("letters do not describe a closed walk")
        return CyclicEdgePath(tuple(darts))


@dataclass(frozen=True)
class CyclicEdgePath:
    """A closed walk, stored as the darts it leaves along."""

    darts: tuple[int, ...]

    def __len__(self):
        return len(self.darts)

    def rotate(self, k: int) -> "CyclicEdgePath":
        k %= len(self.darts)
        return CyclicEdgePath(self.darts[k:] + self.darts[:k])

    def reversed(self, graph: RibbonGraph) -> "CyclicEdgePath":
        return CyclicEdgePath(tuple(int(graph.partner[d]) for d in reversed(self.darts)))

    def is_primitive(self) -> bool:
        return primitive_period(self.darts) == len(self.darts)

    def vertices(self, graph: RibbonGraph) -> list[int]:
        return [int(graph.vertex_of[d]) for d in self.darts]


@dataclass
class SelfIntersectionResult:
    count: int
    crossing_witnesses: list = field(default_factory=list)

    @property
    def simple(self) -> bool:
        return self.count == 0


def check_path(graph: RibbonGraph, path: CyclicEdgePath) -> None:
    P = path.darts
    n = len(P)
    if n == 0:
        raise UnreducedPath("empty path")
    for k in range(n):
        arrive = int(graph.partner[P[k - 1]])
        if graph.vertex_of[arrive] != graph.vertex_of[P[k]]:
            raise RibbonError(f"path is not a walk at position {k}")
        if arrive == P[k]:
            raise UnreducedPath(f"path backtracks at position {k}")


def _between(graph, d, lo, hi) -> bool:
    """Is dart ``d`` strictly inside the counter-clockwise arc from ``lo`` to ``hi``?"""
    deg = graph.degree[graph.vertex_of[lo]]
    a = (graph.rot_pos[d] - graph.rot_pos[lo]) % deg
    b = (graph.rot_pos[hi] - graph.rot_pos[lo]) % deg
    return 0 < a < b


def _before(graph, ref, d1, d2) -> bool:
    """Does ``d1`` come before ``d2`` going counter-clockwise from ``ref``?"""
    deg = graph.degree[graph.vertex_of[ref]]
    return (graph.rot_pos[d1] - graph.rot_pos[ref]) % deg < (graph.rot_pos[d2] - graph.rot_pos[ref]) % deg


def self_intersection(graph: RibbonGraph, path: CyclicEdgePath) -> SelfIntersectionResult:
    """Minimal self-intersection number of the free homotopy class of ``path``.

    Pairs of lifts of the path to the universal cover tree are enumerated by
    the first vertex of their common stretch.  A pair crosses iff its four
    divergence darts are linked: at a single shared vertex the two pairs of
    darts interleave, along a shared stretch the strands enter and leave on
    opposite sides.  Every crossing is met twice (once from each strand).
    """
    check_path(graph, path)
    P = path.darts
    n = len(P)
    if not path.is_primitive():
        raise NonPrimitivePath("proper powers are not supported")
    partner = graph.partner
    Q = tuple(int(partner[P[n - 1 - j]]) for j in range(n))
    by_vertex: dict[int, list[int]] = {}
    for i, d in enumerate(P):
        by_vertex.setdefault(int(graph.vertex_of[d]), []).append(i)
    total = 0
    witnesses = set()
    for same, Y in ((True, P), (False, Q)):
        qpos: dict[int, list[int]] = {}
        for j, d in enumerate(Y):
            qpos.setdefault(int(graph.vertex_of[d]), []).append(j)
        for v, iis in by_vertex.items():
            for i in iis:
                eX = int(partner[P[i - 1]])
                for j in qpos.get(v, ()):
                    if same and i == j:
                        continue
                    eY = int(partner[Y[j - 1]])
                    if eX == eY:
                        continue
                    length = 0
                    while P[(i + length) % n] == Y[(j + length) % n]:
                        length += 1
                        if length >= n:
                            raise NonPrimitivePath("path overlaps itself or its reverse completely")
                    fX, fY = P[(i + length) % n], Y[(j + length) % n]
                    if length == 0:
                        if not same or len({eX, fX, eY, fY}) < 4:
                            continue
                        linked = _between(graph, eY, eX, fX) != _between(graph, fY, eX, fX)
                    else:
                        s = P[i]
                        t = int(partner[P[(i + length - 1) % n]])
                        linked = _before(graph, s, eX, eY) == _before(graph, t, fX, fY)
                    if linked:
                        total += 1
                        if same:
                            witnesses.add((min(i, j), max(i, j), "same"))
                        else:
                            twin = ((n - j - length) % n, (n - i - length) % n)
                            witnesses.add(min((i, j), twin) + ("opposite",))
    if total % 2:
        raise RibbonError("odd linked-pair total; inconsistent rotation data")  # pragma: no cover
    result = SelfIntersectionResult(total // 2, sorted(witnesses))
    if len(result.crossing_witnesses) != result.count:
        raise RibbonError("witness bookkeeping mismatch")  # pragma: no cover
    return result


def faces(graph: RibbonGraph) -> list[list[int]]:
    return graph.faces()
