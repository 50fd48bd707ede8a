# Separating A4 components with a central extension.
#
# With two 3-cycles from each class, the generating projective tuples of A4
# split into two braid orbits that share group and class multiplicities.
# Lifting each entry to the order-24 cover and multiplying gives a central
# element, and it takes a different value on each orbit.

from nbl import EnumerationSpec, binary_tetrahedral, cpfv_probe, decompose_components, lifting_invariant

E = binary_tetrahedral()
A4 = E.base
spec = EnumerationSpec(cover="galois", classes=frozenset(E.classes))

for comp in decompose_components(A4, 4, spec):
    value = lifting_invariant(comp.rep, E)
    print(comp.rep.cycle_strings(), "size", comp.orbit_size, "lift", value.cycle_string())

report = cpfv_probe(A4, E, EnumerationSpec(cover="galois"), range(4, 7))
print("collisions per r:", report.collisions, "separated:", report.separated)
