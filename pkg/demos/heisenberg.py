"""Differentiate the nerve of the Heisenberg group.

The group law comes from second-order BCH, which is exact here.  We print
the CE differential, the bracket read back from it, and the same bracket
computed from 3x3 matrices.
"""

from simpdiff import ce_algebra, check_d_squared, lie_bracket_constants
from simpdiff.corpus import heisenberg_constants
from simpdiff.linalg import Matrix
from simpdiff.oracles import bch_order2, commutator_constants, nerve_from_group_law

P = nerve_from_group_law(bch_order2(heisenberg_constants(), ["a", "b", "c"]), 3, 3)
C = ce_algebra(P, 2)

print("CE differential:")
for g in C.generators:
    print(f"  d {C.name(g)} = {C.render(C.differential[g]) or '0'}")

rep = check_d_squared(C, 3)
print(f"d^2 = 0 certified through degree {rep.certified_degree}: {rep.ok}")

names = "abc"
got = lie_bracket_constants(C)
print("brackets from the nerve:")
for i in range(3):
    for j in range(i + 1, 3):
        terms = [f"{v}*{names[k]}" for k, v in enumerate(got[i][j]) if v]
        print(f"  [{names[i]}, {names[j]}] = {' + '.join(terms) or '0'}")

unit = lambda i, j: Matrix.from_dense([[int((r, s) == (i, j)) for s in range(3)] for r in range(3)])
ref = commutator_constants([unit(0, 1), unit(1, 2), unit(0, 2)])
print("matches the matrix commutators:", ref == got)
