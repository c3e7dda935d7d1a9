"""
Fox derivatives and an Alexander matrix
========================================

The boundary group from the a17 analysis, for m = 1 and n = -4.
"""

from shadowcalc.algebra import (alexander_matrix, elementary_ideal_check,
                                h1_from_presentation, parse_presentation)

m, n = 1, -4
p = parse_presentation(f"<x,y,z | [x,z], [z,y^-1xy], x^{n}zyzy^-1, z^-1(xy^-1xy)^{m}>")

# 4m + n = 0, so H1 is free of rank two
print(h1_from_presentation(p))

A = alexander_matrix(p, {"x": (0, 1), "y": (1, 0), "z": (0, 2 * m)})
for i in range(A.shape[0]):
    print(" | ".join(str(A[i, j]) for j in range(A.shape[1])))

# the 2x2 minor in rows 0, 1 and columns 1, 2
print(A.submatrix((0, 1), (1, 2)).det())
print("E_1 vanishes:", elementary_ideal_check(A, 1))
