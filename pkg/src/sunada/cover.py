"""Finite covers of a surface as generator-labelled Schreier graphs.

Given a quotient ``phi: pi_1(S) -> G`` and ``H <= G``, the cover
corresponding to ``phi^-1(H)`` has one point over the basepoint per right
coset ``H g``, and the lift of generator ``x`` starting at ``H g`` ends at
``H g phi(x)``.  The cyclic order of edge-ends at the basepoint lifts to every
coset vertex, which turns each generator subgraph into a ribbon graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .groups import CosetSpace, FiniteGroup, GroupError, Subgroup, format_cycles
from .ribbon import (
    TWO_LETTER_ORDERS,
    CyclicEdgePath,
    RibbonGraph,
    figure_order,
    pants_order,
    restrict_order,
)
from .words import CyclicWord, FiniteQuotient, SurfacePresentation

CONVENTIONS = ("figure", "pants")


class CoverError(ValueError):
    pass


def base_order(quotient: FiniteQuotient, convention: str = "figure") -> list[tuple[int, int]]:
    """Cyclic dart order at the base vertex for the quotient's alphabet."""
    if convention not in CONVENTIONS and convention != "torus":
        raise CoverError(f"unknown ribbon convention {convention!r}")
    src = quotient.source
    if isinstance(src, SurfacePresentation):
        if convention == "torus":
            raise CoverError("the torus convention is a two-letter convention")
        return figure_order(src.genus) if convention == "figure" else pants_order(2 * src.genus)
    rank = quotient.alphabet.rank
    if rank == 2:
        return TWO_LETTER_ORDERS[convention]
    if convention != "pants":
        raise CoverError(f"convention {convention!r} needs a surface or two-letter alphabet")
    return pants_order(rank)


@dataclass(frozen=True)
class Elevation:
    word: CyclicWord
    start_coset: int
    degree: int
    fiber_cycle: tuple[int, ...]

    def to_dict(self, simple=None) -> dict:
        return {"start_coset": self.start_coset, "degree": self.degree, "simple": simple}


class SchreierCover:
    """The cover of ``quotient`` corresponding to ``subgroup``."""

    def __init__(self, quotient: FiniteQuotient, subgroup: Subgroup, convention: str = "figure", name=None):
        if subgroup.parent is not quotient.target:
            raise GroupError("subgroup is not a subgroup of the quotient's target group")
        self.quotient = quotient
        self.subgroup = subgroup
        self.group: FiniteGroup = quotient.target
        self.cosets = CosetSpace(self.group, subgroup)
        self.convention = convention
        self.order = base_order(quotient, convention)
        self.name = name or subgroup.name
        self._graphs: dict[tuple[int, ...], RibbonGraph] = {}

    def __repr__(self):
        return f"SchreierCover({self.name}, vertices={self.n_vertices})"

    @property
    def n_vertices(self) -> int:
        return self.cosets.index

    @property
    def alphabet(self):
        return self.quotient.alphabet

    def generator_perm(self, gen: int) -> np.ndarray:
        """``perm[c]`` is the endpoint of the lift of generator ``gen`` at coset ``c``."""
        return self.cosets.action[self.quotient.images[gen]]

    def edges(self, gens: Sequence[int] | None = None) -> list[tuple[int, int, int]]:
        """``(source, generator, target)`` triples ordered by source, then generator."""
        gens = range(self.alphabet.rank) if gens is None else sorted(gens)
        perms = {g: self.generator_perm(g) for g in gens}
        return [(c, g, int(perms[g][c])) for c in range(self.n_vertices) for g in gens]

    def ribbon_graph(self, gens: Sequence[int]) -> RibbonGraph:
        """Subgraph on the given generators with the restricted vertex order."""
        key = tuple(sorted(set(gens)))
        if key not in self._graphs:
            perms = [self.generator_perm(g) for g in key]
            self._graphs[key] = RibbonGraph.from_generator_action(perms, restrict_order(self.order, key))
        return self._graphs[key]

    def is_connected(self) -> bool:
        seen = np.zeros(self.n_vertices, dtype=bool)
        seen[0] = True
        frontier = [0]
        perms = [self.generator_perm(g) for g in self.quotient.support()]
        while frontier:
            nxt = []
            for p in perms:
                for c in (int(p[v]) for v in frontier):
                    if not seen[c]:
                        seen[c] = True
                        nxt.append(c)
            frontier = nxt
        return bool(seen.all())

    def coset_label(self, c: int) -> str:
        lab = self.group.labels[self.cosets.reps[c]]
        if self.group.kind == "symmetric":
            lab = format_cycles(lab)
        return f"{self.name} {lab}"


def build_cover(q: FiniteQuotient, H: Subgroup, ribbon_convention: str = "figure", name=None) -> SchreierCover:
    return SchreierCover(q, H, ribbon_convention, name)


def _as_cyclic(w) -> CyclicWord:
    cw = w if isinstance(w, CyclicWord) else CyclicWord(w)
    if not cw.letters:
        raise CoverError("elevations of the trivial word are undefined")
    return cw


def elevations_of(cover: SchreierCover, w) -> list[Elevation]:
    """One elevation per cycle of ``phi(w)`` on the cosets, ordered by start coset."""
    cw = _as_cyclic(w)
    g = cover.quotient.evaluate(cw.word)
    out = []
    for cyc in cover.cosets.cycles(g):
        out.append(Elevation(cw, cyc[0], len(cyc), tuple(cyc)))
    return out


def elevation_at(cover: SchreierCover, w, coset: int) -> Elevation:
    for e in elevations_of(cover, w):
        if coset in e.fiber_cycle:
            return e
    raise CoverError(f"no coset {coset}")  # pragma: no cover


def word_generators(w) -> list[int]:
    return sorted({abs(x) - 1 for x in w.letters})


def elevation_path(cover: SchreierCover, e: Elevation, gens: Sequence[int] | None = None):
    """The closed walk reading ``w^d`` from the start coset in a generator subgraph.

    Returns ``(graph, path)``; by default the subgraph is spanned by the
    generators occurring in the word.
    """
    gens = word_generators(e.word) if gens is None else sorted(gens)
    graph = cover.ribbon_graph(gens)
    pos = {g: k for k, g in enumerate(gens)}
    letters = [(pos[abs(x) - 1] + 1) * (1 if x > 0 else -1) for x in e.word.letters] * e.degree
    return graph, graph.path_from_letters(e.start_coset, letters)


def path_cosets(graph: RibbonGraph, path: CyclicEdgePath) -> list[int]:
    return path.vertices(graph)


def min_elevation_degree(cover: SchreierCover, w) -> int:
    return min(e.degree for e in elevations_of(cover, w))


def is_regular(cover: SchreierCover) -> bool:
    return cover.subgroup.is_normal()


def deck_group(cover: SchreierCover) -> FiniteGroup:
    """``G/H`` as a tabulated group on coset indices."""
    if not is_regular(cover):
        raise CoverError("deck group requested for an irregular cover")
    cs, G = cover.cosets, cover.group
    reps = np.array(cs.reps, dtype=np.int64)
    mul = cs.coset_of[G.mul[reps[:, None], reps[None, :]]]
    labels = [cover.coset_label(c) for c in range(cs.index)]
    return FiniteGroup(mul, labels=labels, name=f"{G.name}/{cover.subgroup.name}", kind="quotient")


def cover_genus(cover: SchreierCover, base_genus: int | None = None) -> int:
    if base_genus is None:
        src = cover.quotient.source
        if not isinstance(src, SurfacePresentation):
            raise CoverError("base genus required for a free alphabet")
        base_genus = src.genus
    if not cover.is_connected():
        raise CoverError("cover is disconnected")
    return 1 + cover.cosets.index * (base_genus - 1)


@dataclass
class IsospectralityReport:
    passed: bool
    violations: list[int]
    cycle_types: dict[int, tuple[tuple[int, ...], tuple[int, ...]]]

    def to_dict(self, group: FiniteGroup | None = None) -> dict:
        label = (lambda g: str(group.labels[g])) if group is not None else str
        return {
            "pass": self.passed,
            "elements_checked": len(self.cycle_types),
            "violations": [label(g) for g in self.violations],
        }


def combinatorial_isospectrality(cover_a: SchreierCover, cover_b: SchreierCover) -> IsospectralityReport:
    """Compare cycle types of every ``g in G`` on the two coset spaces."""
    qa, qb = cover_a.quotient, cover_b.quotient
    if qa is not qb and (qa.target is not qb.target or qa.images != qb.images):
        raise CoverError("covers are over different quotients")
    types, bad = {}, []
    for g in range(cover_a.group.order):
        ta, tb = cover_a.cosets.cycle_type(g), cover_b.cosets.cycle_type(g)
        types[g] = (ta, tb)
        if ta != tb:
            bad.append(g)
    return IsospectralityReport(not bad, bad, types)


# ---------------------------------------------------------------------------
# DOT export

DEFAULT_STYLES = ("dotted", "dashed", "solid", "bold")


def power_labels(cover: SchreierCover, g: int, symbol: str) -> dict[int, str]:
    """Label cosets as ``H g^k`` when powers of ``g`` reach them from ``H``."""
    labels, c, k = {}, 0, 0
    while c not in labels:
        labels[c] = cover.name if k == 0 else (f"{cover.name} {symbol}" if k == 1 else f"{cover.name} {symbol}^{k}")
        c = cover.cosets.act(c, g)
        k += 1
    return labels


def export_dot(
    cover: SchreierCover,
    gens: Sequence[int] | None = None,
    styles: Sequence[str] = DEFAULT_STYLES,
    suppress_loops: bool = True,
    merge_pairs: bool = True,
    labels: dict[int, str] | Callable[[int], str] | None = None,
    highlight: Sequence[int] = (),
) -> str:
    """Graphviz text; edges styled per generator, opposite pairs optionally merged."""
    gens = cover.quotient.support() if gens is None else sorted(gens)
    if callable(labels):
        name = labels
    elif labels is not None:
        name = lambda c: labels.get(c, cover.coset_label(c))  # noqa: E731
    else:
        name = cover.coset_label
    names = cover.alphabet.names
    lines = [f'digraph "{cover.name}" {{', "  node [shape=circle];"]
    hl = set(highlight)
    for c in range(cover.n_vertices):
        extra = ", color=red" if c in hl else ""
        lines.append(f'  {c} [label="{name(c)}"{extra}];')
    for k, g in enumerate(gens):
        style = styles[k % len(styles)]
        perm = cover.generator_perm(g)
        for c in range(cover.n_vertices):
            t = int(perm[c])
            if t == c and suppress_loops:
                continue
            if merge_pairs and int(perm[t]) == c and t != c:
                if c < t:
                    lines.append(f'  {c} -> {t} [label="{names[g]}", style={style}, dir=none];')
                continue
            lines.append(f'  {c} -> {t} [label="{names[g]}", style={style}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def describe_generator(cover: SchreierCover, gen: int) -> str:
    """Cycle notation of a generator's action on cosets (1-based)."""
    perm = cover.generator_perm(gen)
    return format_cycles([int(p) + 1 for p in perm])
