"""The odd line as a cosimplicial algebra.

Its nerve is already infinitesimal, so abstract differentiation has nothing
to quotient: the result is two-dimensional in every degree.  Ordinary
polynomial cochains on R behave differently, and the witness shows a
product of overlapping tensors that survives.
"""

from simpdiff.cosimplicial import abstract_diff, cochain_algebra, is_infinitesimal, odd_line_identities, odd_line_model
from simpdiff.oracles import abelian_law, nerve_from_group_law

X = odd_line_model(4)
print("odd line dims:", X.dims)
print("identities hold:", odd_line_identities(X) == [])
print("infinitesimal:", is_infinitesimal(X).infinitesimal)
res = abstract_diff(X)
print("N' dims:", res.dga.dims, "ideal dims:", res.ideal_dims)

Y = cochain_algebra(nerve_from_group_law(abelian_law(1), 3, 3), 3)
inf = is_infinitesimal(Y)
print("cochains on R infinitesimal:", inf.infinitesimal, "witness:", inf.witness)
res = abstract_diff(Y)
print("N' dims:", res.dga.dims, "ideal dims:", res.ideal_dims)
