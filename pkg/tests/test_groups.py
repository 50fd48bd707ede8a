import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nbl import (
    CapExceeded,
    ForeignElementError,
    GroupSpecError,
    class_power,
    parse_group_spec,
    subgroup_generated,
    subgroup_lattice,
    subgroups_up_to_conjugacy,
)
from nbl.groups import subgroup_class_id, units_mod


def brute_classes(G):
    seen = set()
    out = []
    for x in range(G.order):
        if x in seen:
            continue
        cls = {G.index[g * G.elements[x] * g.inverse()] for g in G.elements}
        seen |= cls
        out.append(sorted(cls))
    return out


@pytest.mark.parametrize(
    "spec, order, degree",
    [
        ("S3", 6, 3),
        ("S4", 24, 4),
        ("A4", 12, 4),
        ("A5", 60, 5),
        ("C4", 4, 4),
        ("C1", 1, 1),
        ("D5", 10, 5),
        ("D4", 8, 4),
        ("GDih(3,3)", 18, 9),
        ("GDih(4)", 8, 4),
        ("perm(4; (1 2 3), (1 2)(3 4))", 12, 4),
        ("perm(3; ())", 1, 3),
        ("perm(4; (1,2), (2,3,4))", 24, 4),
    ],
)
def test_group_dsl(spec, order, degree):
    G = parse_group_spec(spec)
    assert (G.order, G.degree) == (order, degree)
    assert G.elements[0].is_identity()
    assert list(G.elements) == sorted(G.elements)


@pytest.mark.parametrize("spec", ["Q8", "D2", "S0", "perm(3; (1 4))", "perm(3; (1 2)", "GDih()", ""])
def test_bad_specs(spec):
    with pytest.raises(GroupSpecError):
        parse_group_spec(spec)


def test_order_cap():
    with pytest.raises(CapExceeded):
        parse_group_spec("S8", cap=1000)


def test_s3_classes(S3):
    T = S3.class_table
    assert [T.size(c) for c in range(len(T))] == [1, 3, 2]
    assert [T.rep_string(c) for c in range(len(T))] == ["()", "(2 3)", "(1 2 3)"]
    assert T.find("(1 2)") == 1


def test_a4_and_d5_classes(A4, D5):
    T = A4.class_table
    assert [T.size(c) for c in range(len(T))] == [1, 4, 4, 3]
    assert [T.rep_string(c) for c in range(len(T))] == ["()", "(2 3 4)", "(2 4 3)", "(1 2)(3 4)"]
    T = D5.class_table
    assert sorted(T.size(c) for c in range(len(T))) == [1, 2, 2, 5]
    assert T.rep_string(T.find("(1 2)(3 5)")) == "(2 5)(3 4)"


def test_abelian_classes_are_singletons(C4):
    assert all(C4.class_table.size(c) == 1 for c in range(4))


@pytest.mark.parametrize("spec", ["S3", "S4", "A4", "D5", "D4", "C6", "GDih(3,3)", "A5"])
def test_classes_match_brute_force(spec):
    G = parse_group_spec(spec)
    assert [list(m) for m in G.class_table.members] == brute_classes(G)


@pytest.mark.parametrize(
    "spec, orders",
    [
        ("S3", [1, 2, 3, 6]),
        ("C4", [1, 2, 4]),
        ("A4", [1, 2, 3, 4, 12]),
        ("D4", [1, 2, 2, 2, 4, 4, 4, 8]),
    ],
)
def test_subgroup_classes(spec, orders):
    G = parse_group_spec(spec)
    subs = subgroups_up_to_conjugacy(G)
    assert [H.order for H in subs] == orders
    assert [H.class_id for H in subs] == list(range(len(orders)))


def test_s4_s5_subgroup_counts():
    assert len(subgroup_lattice(parse_group_spec("S4"))) == 11
    assert len(subgroup_lattice(parse_group_spec("S5"))) == 19


def test_subgroup_class_id_is_conjugation_invariant(S3):
    ids = [subgroup_class_id(S3, subgroup_generated(S3, [t]).parent_ids) for t in ("(1 2)", "(1 3)", "(2 3)")]
    assert ids == [1, 1, 1]


def test_foreign_element(S3):
    with pytest.raises(ForeignElementError):
        parse_group_spec("A4").lookup("(1 2)")
    with pytest.raises(ForeignElementError):
        subgroup_generated(S3, [99])


def test_class_power(S3):
    T = S3.class_table
    three = T.find("(1 2 3)")
    assert class_power(T, three, 2) == three
    C3 = parse_group_spec("C3")
    TC = C3.class_table
    s = TC.find("(1 2 3)")
    assert class_power(TC, s, 2) == TC.find("(1 3 2)")


def test_units_mod():
    assert units_mod(6) == [1, 5]
    assert units_mod(1) == [1]


def test_multiplication_table_matches_perms(A4):
    tab = A4.table
    for a in range(A4.order):
        for b in range(A4.order):
            assert tab[a, b] == A4.index[A4.elements[a] * A4.elements[b]]


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(["S3", "A4", "D5", "S4", "GDih(2,4)"]), st.data())
def test_class_sizes_divide_order(spec, data):
    G = parse_group_spec(spec)
    T = G.class_table
    assert sum(T.size(c) for c in range(len(T))) == G.order
    c = data.draw(st.integers(0, len(T) - 1))
    assert G.order % T.size(c) == 0
    x = data.draw(st.integers(0, G.order - 1))
    g = data.draw(st.integers(0, G.order - 1))
    assert T.class_of[G.conj(x, g)] == T.class_of[x]
