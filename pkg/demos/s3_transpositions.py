# Branch cycle tuples of transpositions in S3 and how braids connect them.
#
# Four transpositions multiplying to 1 and generating S3 describe degree-3
# covers of the line with four simple branch points.  There are 24 such
# tuples and braid moves link all of them, so they form one component.
# At odd length no tuple multiplies to 1.

from nbl import EnumerationSpec, count_series, decompose_components, nielsen_tuple, parse_group_spec
from nbl.braids import apply_braid

S3 = parse_group_spec("S3")
trans = S3.class_table.find("(1 2)")
spec = EnumerationSpec(cover="galois", classes=[trans])

t = nielsen_tuple(S3, ["(1 2)", "(1 2)", "(1 3)", "(1 3)"])
print("tuple          ", t.cycle_strings())
print("after Q_2      ", apply_braid(t, 2).cycle_strings())

for comp in decompose_components(S3, 4, spec):
    print("component rep  ", comp.rep.cycle_strings(), "orbit size", comp.orbit_size)

series = count_series(S3, spec, range(2, 11))
print("counts by r    ", series.points)
print("period         ", series.period_label)
