"""
The census of polyhedra with complexity at most 1/2
====================================================

Enumerate reduced encoding graphs with up to 8 vertices and print the ones
whose 1/2-weighted complexity is at most 1/2, with their verdicts.
"""

from fractions import Fraction

from shadowcalc.analysis import census_label, overall_status
from shadowcalc.enumeration import EnumerationBounds, enumerate

half = Fraction(1, 2)
entries = enumerate(EnumerationBounds(8, half, half))
print(len(entries), "entries")

# closed surfaces of positive genus carry no complexity at all
for e in entries:
    if e.no_cr:
        continue
    label = census_label(e.canonical) or "?"
    h = ", ".join(str(x) for x in e.homology)
    print(f"{label:8} c = {e.value(half)!s:4} H = ({h:18}) {overall_status(e.verdicts)}")

# graph classes forget the cocycle, so a15 and a17 each split in two
at_half = [e for e in entries if e.value(half) == half]
print(len(at_half), "polyhedra in", len({e.graph_class for e in at_half}), "graph classes")
