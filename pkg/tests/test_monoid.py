import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nbl import (
    ComponentMonoid,
    EnumerationSpec,
    ForeignElementError,
    PreconditionError,
    commutation_check,
    concat,
    conjugate_component,
    decompose_components,
    hf_count,
    hm_twist_set,
    is_nonsplitting,
    parse_group_spec,
    splitting_number,
    subgroup_generated,
)
from nbl.monoid import hf_components
from nbl.serialize import component_id
from nbl.verify import a3_closed_form


@pytest.fixture
def affine(S3):
    return ComponentMonoid(S3, "affine", "marked")


@pytest.fixture
def projective(S3):
    return ComponentMonoid(S3, "projective", "marked")


def test_concat_pairs(projective):
    M = projective
    x = M.component(["(1 2)", "(1 2)"])
    y = M.component(["(1 3)", "(1 3)"])
    xy = M.concat(x, y, samples=5)
    assert xy == M.component(["(1 2)", "(1 2)", "(1 3)", "(1 3)"])
    assert xy.r == 4


def test_unit_laws(projective):
    M = projective
    x = M.component(["(1 2 3)", "(1 3 2)"])
    u = M.unit()
    assert u.r == 0 and u.orbit_size == 1
    assert M.concat(u, x) == x == M.concat(x, u)


def test_affine_single_move(affine):
    M = affine
    lhs = M.concat(M.component(["(1 2)"]), M.component(["(1 3)"]))
    assert lhs == M.component(["(2 3)", "(1 2)"])
    rep = commutation_check(M.component(["(1 2)"]), M.component(["(1 3)"]), M)
    assert rep.holds and rep.lhs == rep.rhs


def test_conjugate_component(S3, projective):
    M = projective
    x = M.component(["(1 2)", "(1 2)", "(1 3)", "(1 3)"])
    assert x.group_order == 6
    for g in range(S3.order):
        assert M.conjugate(x, g) == x
    assert conjugate_component(x, "()", M) == x
    y = M.component(["(1 2)", "(1 2)"])
    z = M.conjugate(y, "(1 3)")
    assert z.orbit_size == y.orbit_size and z.ici == y.ici
    assert z.rep.cycle_strings() == ["(2 3)", "(2 3)"]
    with pytest.raises(ForeignElementError):
        M.conjugate(y, 17)


def test_unmarked_conjugation_is_trivial(S3):
    M = ComponentMonoid(S3, "projective", "unmarked")
    y = M.component(["(1 2)", "(1 2)"])
    for g in range(S3.order):
        assert M.conjugate(y, g) == y


def test_unmarked_requires_full_group(S3):
    M = ComponentMonoid(S3, "projective", "unmarked")
    small = M.component(["(1 2)", "(1 2)"])
    full = M.component(["(1 2)", "(1 2)", "(1 3)", "(1 3)"])
    assert M.concat(full, full).r == 8
    assert M.concat(M.unit(), full) == full
    with pytest.raises(PreconditionError):
        M.concat(small, full)


def test_mixed_modes_rejected(S3, affine, projective):
    x = projective.component(["(1 2)", "(1 2)"])
    with pytest.raises(PreconditionError):
        affine.concat(x, affine.unit())
    (c,) = decompose_components(S3, 2, EnumerationSpec(equivalence="unmarked", cover="any",
                                                       classes=[S3.class_table.find("(1 2)")]))
    with pytest.raises(PreconditionError):
        projective.adopt(c)


def test_adopt_restricted_component(S3, projective):
    spec = EnumerationSpec(cover="galois", classes=[S3.class_table.find("(1 2)")])
    (c,) = decompose_components(S3, 4, spec)
    a = concat(c, c)
    assert a == projective.concat(projective.adopt(c), projective.adopt(c))
    assert a.r == 8


def test_tuple_must_be_nielsen(projective):
    with pytest.raises(PreconditionError):
        projective.component(["(1 2)"])


def test_projective_commutativity_r2(projective):
    M = projective
    comps = [M.index.component(c.rep.entries) for c in decompose_components(M.group, 2, M.spec)]
    for x, y in itertools.product(comps, repeat=2):
        assert M.concat(x, y) == M.concat(y, x)
        assert M.commutation_check(x, y).holds


def test_concat_invariants(S3, affine):
    M = affine
    comps = []
    for r in (1, 2):
        comps += [M.index.component(c.rep.entries) for c in decompose_components(S3, r, M.spec)]
    for x, y in itertools.product(comps, repeat=2):
        xy = M.concat(x, y)
        assert xy.r == x.r + y.r
        assert xy.ici.as_dict() == (x.ici + y.ici).as_dict()
        assert xy.group_ids == S3.closure(x.group_ids | y.group_ids)


def test_twist_a3_c2(S3):
    M = ComponentMonoid(S3)
    x = M.component(["(1 2 3)", "(1 3 2)"])
    y = M.component(["(1 2)", "(1 2)"])
    rep = hm_twist_set(x, y, M)
    assert rep.hk_holds and rep.singleton and rep.size == 1
    assert rep.components == [rep.product_id]


def test_twist_full_and_unit(S3):
    M = ComponentMonoid(S3)
    x = M.component(["(1 2)", "(1 2)", "(1 3)", "(1 3)"])
    assert hm_twist_set(x, x, M).singleton
    rep = hm_twist_set(M.unit(), x, M)
    assert rep.components == [component_id(x)]
    with pytest.raises(PreconditionError):
        ComponentMonoid(S3, equivalence="unmarked").twist_set(x, x)


def test_twist_without_hk(S3):
    M = ComponentMonoid(S3)
    x = M.component(["(1 2)", "(1 2)"])
    y = M.component(["(1 3)", "(1 3)"])
    rep = hm_twist_set(x, y, M)
    assert not rep.hk_holds
    assert rep.pairs_checked > 0 and rep.size >= 1


@pytest.mark.parametrize(
    "gens, cls, omega",
    [(["(1 2)"], "(1 2)", 0), (["(1 2 3)"], "(1 2 3)", 1), (["(1 2)", "(1 2 3)"], "(1 2)", 0),
     (["(1 2)", "(1 2 3)"], "(1 2 3)", 0)],
)
def test_splitting_number(S3, gens, cls, omega):
    H = subgroup_generated(S3, gens)
    d = splitting_number(S3, H, [S3.class_table.find(cls)])
    assert d.omega == omega
    js = d.to_json(S3)
    assert js["omega"] == omega and js["classes"] == [S3.class_table.rep_string(S3.class_table.find(cls))]


def test_splitting_empty_intersection(S3):
    H = subgroup_generated(S3, ["(1 2 3)"])
    d = splitting_number(S3, H, [S3.class_table.find("(1 2)")])
    assert d.omega == 0 and d.breakdown == {}


def test_splitting_rejects_non_subgroup(S3):
    with pytest.raises(PreconditionError):
        splitting_number(S3, {0, S3.lookup("(1 2)"), S3.lookup("(1 3)")}, [1])


def test_nonsplitting(S3, D5):
    assert is_nonsplitting(S3, S3.class_table.find("(1 2)")).holds
    rep = is_nonsplitting(S3, S3.class_table.find("(1 2 3)"))
    assert not rep.holds and rep.witness.order == 3
    assert rep.datum.omega == 1
    assert is_nonsplitting(D5, D5.class_table.find("(2 5)(3 4)")).holds


@pytest.mark.parametrize("r, expected", [(6, 3), (9, 4)])
def test_hf_examples(S3, r, expected):
    A3 = subgroup_generated(S3, ["(1 2 3)"])
    assert hf_count(S3, A3, [S3.class_table.find("(1 2 3)")], 1, r) == expected


@pytest.mark.parametrize("r", range(2, 9))
def test_hf_matches_closed_form(S3, r):
    A3 = subgroup_generated(S3, ["(1 2 3)"])
    assert hf_count(S3, A3, [S3.class_table.find("(1 2 3)")], 1, r) == a3_closed_form(r)


@pytest.mark.parametrize("r", [2, 4, 6, 8])
def test_hf_constant_when_unsplit(S3, r):
    C2 = subgroup_generated(S3, ["(1 2)"])
    (comp,) = hf_components(S3, C2, [S3.class_table.find("(1 2)")], 1, r)
    assert comp.rep.cycle_strings() == ["(1 2)"] * r


def test_hf_strict_reading_is_bounded(S3):
    A3 = subgroup_generated(S3, ["(1 2 3)"])
    c = [S3.class_table.find("(1 2 3)")]
    assert [hf_count(S3, A3, c, 1, r, strict_per_class=True) for r in range(1, 7)] == [1] * 6


def test_hf_rejects_bad_xi(S3):
    A3 = subgroup_generated(S3, ["(1 2 3)"])
    c = [S3.class_table.find("(1 2 3)")]
    for bad in (0, -1, {c[0]: 0}, {}):
        with pytest.raises(PreconditionError):
            hf_count(S3, A3, c, bad, 3)


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_associativity_sampled(data):
    G = parse_group_spec("A4")
    M = ComponentMonoid(G, "affine", "marked")
    pick = lambda: M.component([data.draw(st.integers(1, 11)) for _ in range(data.draw(st.integers(0, 2)))])
    x, y, z = pick(), pick(), pick()
    assert M.concat(M.concat(x, y), z) == M.concat(x, M.concat(y, z))
    assert M.commutation_check(x, y).holds
