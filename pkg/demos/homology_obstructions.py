"""
Homology and the torsion obstruction
=====================================

A polyhedron with H2 = 0 and torsion in H1 is not the shadow of a closed
4-manifold. Compute the homology of a few labelled polyhedra and apply the rule.
"""

from shadowcalc.analysis import CENSUS_LABELS, costantino_check
from shadowcalc.cw import chain_complex, homology, pi1_presentation
from shadowcalc.graph import parse_graph

for label in ("a6", "a8", "m3", "m4", "a9", "X2"):
    g = parse_graph(CENSUS_LABELS[label])
    h0, h1, h2 = homology(g)
    v = costantino_check(h1, h2)
    print(f"{label:4} H1 = {h1!s:8} H2 = {h2!s:8} {v.status}")

# the cellular chain complex behind those numbers
c = chain_complex(parse_graph(CENSUS_LABELS["a8"]))
print(c.d1.shape, c.d2.shape, int(abs(c.d1.dot(c.d2)).sum()))

# a presentation of pi1, read off the 2-skeleton
print(pi1_presentation(parse_graph(CENSUS_LABELS["a9"])))
