"""Simplicity and self-intersection of elevations on Schreier covers.

An elevation of a word supported on two standard generators is studied inside
the induced cover of the two-generator subsurface (the thickened generator
subgraph).  That subsurface has essential boundary, so its inclusion is
pi_1-injective and self-intersection numbers computed there are the ones on
the closed cover.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .cover import Elevation, SchreierCover, elevation_path, elevations_of, word_generators
from .ribbon import SelfIntersectionResult, self_intersection
from .words import CyclicWord


class SubalphabetError(ValueError):
    pass


REDUCTION_NOTE = "computed on the induced cover of the subsurface spanned by the word's generators"


def _check_support(e: Elevation):
    if len(word_generators(e.word)) > 2:
        raise SubalphabetError(f"word {e.word} is not supported on two generators")


def elevation_self_intersection(cover: SchreierCover, e: Elevation) -> SelfIntersectionResult:
    _check_support(e)
    graph, path = elevation_path(cover, e)
    return self_intersection(graph, path)


def is_simple_elevation(cover: SchreierCover, e: Elevation) -> bool:
    return elevation_self_intersection(cover, e).count == 0


def count_simple_elevations(cover: SchreierCover, w, m: int) -> int:
    return sum(1 for e in elevations_of(cover, w) if e.degree == m and is_simple_elevation(cover, e))


@dataclass
class SpectrumRow:
    word: CyclicWord
    start_coset: int
    degree: int
    self_intersection: int


def self_intersection_spectrum(cover: SchreierCover, words: Iterable, degree: int = 1) -> list[SpectrumRow]:
    """Self-intersection of every elevation of the given degree, per word."""
    rows = []
    for w in words:
        for e in elevations_of(cover, w):
            if e.degree == degree:
                rows.append(SpectrumRow(e.word, e.start_coset, e.degree, elevation_self_intersection(cover, e).count))
    return rows


def elevation_records(cover: SchreierCover, w, with_simplicity: bool = True) -> list[dict]:
    out = []
    for e in elevations_of(cover, w):
        simple = None
        if with_simplicity and len(word_generators(e.word)) <= 2:
            r = elevation_self_intersection(cover, e)
            simple = r.count == 0
        rec = e.to_dict(simple)
        rec["coset"] = cover.coset_label(e.start_coset)
        out.append(rec)
    return out
