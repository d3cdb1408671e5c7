"""Self-intersection two ways: ribbon-graph combinatorics and crossing axes in the hyperbolic plane."""

from sunada.hyperbolic import rep_for_rose, self_intersection_oracle
from sunada.ribbon import TWO_LETTER_ORDERS, RibbonGraph, self_intersection
from sunada.traces import cyclic_words, trace_polynomial
from sunada.words import Word, format_word, primitive_period

for name in ("pants", "torus"):
    order = TWO_LETTER_ORDERS[name]
    rose, rep = RibbonGraph.rose(order), rep_for_rose(order)
    print(f"{name}: {len(rose.faces())} boundary components, traces (tr a, tr b, tr ab) = {rep.traces}")
    for w in cyclic_words(5):
        if primitive_period(w) != 5:
            continue
        comb = self_intersection(rose, rose.path_from_letters(0, w)).count
        geo = self_intersection_oracle(rep, w, radius=8)
        poly = trace_polynomial(Word(w))
        print(f"  {format_word(Word(w)):14s} ribbon {comb}  hyperbolic {geo}  tr = {poly}")
