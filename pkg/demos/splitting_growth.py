# Growth of component counts for covers with group A3 inside S3.
#
# The 3-cycles of S3 fall into two classes once restricted to A3, so the
# splitting number is 1 and the number of components grows linearly in r.
# For C2 the transposition class does not split and the count stays flat.

from nbl import hf_count, parse_group_spec, splitting_number, subgroup_generated

S3 = parse_group_spec("S3")
A3 = subgroup_generated(S3, ["(1 2 3)"])
C2 = subgroup_generated(S3, ["(1 2)"])
three = S3.class_table.find("(1 2 3)")
two = S3.class_table.find("(1 2)")

print("omega(A3) =", splitting_number(S3, A3, [three]).omega)
print("omega(C2) =", splitting_number(S3, C2, [two]).omega)
for r in range(2, 13):
    print(f"r={r:2d}  A3: {hf_count(S3, A3, [three], 1, r)}  C2: {hf_count(S3, C2, [two], 2, r)}")
