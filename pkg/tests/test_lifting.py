import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nbl import (
    EnumerationSpec,
    ExtensionError,
    NielsenTuple,
    PreconditionError,
    apply_braid,
    binary_tetrahedral,
    cpfv_probe,
    decompose_components,
    enumerate_nielsen,
    ici,
    identity_extension,
    is_globally_rational,
    lifting_invariant,
    load_central_extension,
    parse_group_spec,
)
from nbl.braids import FORWARD, INVERSE
from nbl.lifting import extension_from_json, load_extension_file
from nbl.verify import _other_lift, quaternion_over_klein

SIGN = "(1 5)(2 6)(3 7)(4 8)"


@pytest.fixture(scope="module")
def BT():
    return binary_tetrahedral()


def test_builtin_extension_shape(BT):
    assert BT.cover.order == 24 and BT.base.order == 12
    assert len(BT.kernel) == 2
    assert BT.cover.cycle_string(max(BT.kernel)) == SIGN
    for g, lift in BT.lifts.items():
        assert BT.projection[lift] == g


def test_identity_extension(S3):
    E = identity_extension(S3)
    for g, lift in E.lifts.items():
        assert S3.elements[g] == E.cover.elements[lift]
    for t in enumerate_nielsen(S3, 4, EnumerationSpec()):
        assert lifting_invariant(t, E).element == 0


def test_quaternion_lifts_rejected():
    V4, kw = quaternion_over_klein()
    with pytest.raises(ExtensionError) as info:
        load_central_extension(V4, **kw)
    assert info.value.invariant == "not-c-admissible"
    assert info.value.witness


@pytest.mark.parametrize(
    "base, cover, projection, classes, invariant",
    [
        ("S3", "C3", [("(1 2 3)", "(1 2 3)")], ["(1 2 3)"], "not-surjective"),
        ("C2", "S3", [("(1 2)", "(1 2)"), ("(1 2 3)", "()")], ["(1 2)"], "kernel-not-central"),
        ("C3", "C4", [("(1 2 3 4)", "(1 2 3)")], ["(1 2 3)"], "not-homomorphism"),
    ],
)
def test_rejections(base, cover, projection, classes, invariant):
    with pytest.raises(ExtensionError) as info:
        load_central_extension(parse_group_spec(base), cover, projection, classes)
    assert info.value.invariant == invariant


def test_lift_outside_scope(BT):
    A4 = BT.base
    t = NielsenTuple(A4, (A4.lookup("(1 2)(3 4)"),) * 2)
    with pytest.raises(PreconditionError):
        lifting_invariant(t, BT)
    with pytest.raises(PreconditionError):
        lifting_invariant(NielsenTuple(parse_group_spec("S3"), ()), BT)


def test_json_roundtrip(tmp_path, BT):
    data = {
        "cover": "perm(8; (1 6 5 2)(3 4 7 8), (1 3 4)(5 7 8))",
        "projection": [["(1 6 5 2)(3 4 7 8)", "(1 2)(3 4)"], ["(1 3 4)(5 7 8)", "(1 3 4)"]],
        "classes": ["(2 3 4)"],
    }
    path = tmp_path / "ext.json"
    path.write_text(json.dumps(data))
    E = load_extension_file(BT.base, path)
    assert E.classes == (BT.classes[0],)
    with pytest.raises(PreconditionError):
        extension_from_json(parse_group_spec("S4"), dict(data, base="A4"))


def test_components_separated_by_sign(BT):
    A4 = BT.base
    spec = EnumerationSpec(cover="galois", classes=frozenset(BT.classes))
    comps = decompose_components(A4, 4, spec)
    assert [c.orbit_size for c in comps] == [144, 216]
    assert comps[0].ici == comps[1].ici
    values = [lifting_invariant(c.rep, BT).cycle_string() for c in comps]
    assert values == [SIGN, "()"]


def test_cpfv_identity_extension(S3):
    E = identity_extension(S3, ["(1 2)"])
    rep = cpfv_probe(S3, E, EnumerationSpec(cover="galois"), range(4, 9))
    assert rep.separated and rep.threshold == 1
    assert set(rep.collisions.values()) == {0}


def test_cpfv_binary_tetrahedral(A4):
    E = binary_tetrahedral(A4)
    rep = cpfv_probe(A4, E, EnumerationSpec(cover="galois"), range(4, 7))
    assert rep.separated
    assert rep.collisions == {4: 0, 5: 0, 6: 0}
    assert json.loads(json.dumps(rep.to_json())) == rep.to_json()


def test_lift_choice_scales_by_central_constant(BT):
    A4, cov = BT.base, BT.cover
    alt = binary_tetrahedral(
        A4, lifts=[[A4.class_table.rep_string(c), cov.cycle_string(_other_lift(BT, c))] for c in BT.classes]
    )
    spec = EnumerationSpec(classes=frozenset(BT.classes))
    by_profile = {}
    for t in enumerate_nielsen(A4, 4, spec):
        ratio = cov.mul(lifting_invariant(t, alt).element, cov.inv[lifting_invariant(t, BT).element])
        by_profile.setdefault(ici(t).counts, set()).add(ratio)
    assert all(len(v) == 1 for v in by_profile.values())


@settings(max_examples=100, deadline=None)
@given(st.lists(st.sampled_from(range(8)), min_size=2, max_size=7), st.data())
def test_braid_invariance(BT, picks, data):
    A4 = BT.base
    pool = sorted(BT.lifts)
    t = NielsenTuple(A4, tuple(pool[p] for p in picks))
    i = data.draw(st.integers(1, len(picks) - 1))
    d = data.draw(st.sampled_from([FORWARD, INVERSE]))
    assert lifting_invariant(apply_braid(t, i, d), BT) == lifting_invariant(t, BT)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.sampled_from(range(8)), max_size=5), st.lists(st.sampled_from(range(8)), max_size=5))
def test_multiplicative(BT, a, b):
    A4, cov = BT.base, BT.cover
    pool = sorted(BT.lifts)
    x = NielsenTuple(A4, tuple(pool[p] for p in a))
    y = NielsenTuple(A4, tuple(pool[p] for p in b))
    whole = lifting_invariant(x.concat(y), BT).element
    assert whole == cov.mul(lifting_invariant(x, BT).element, lifting_invariant(y, BT).element)


def test_projective_values_are_central(BT):
    spec = EnumerationSpec(classes=frozenset(BT.classes))
    for t in enumerate_nielsen(BT.base, 3, spec):
        v = lifting_invariant(t, BT)
        assert v.is_central and BT.projection[v.element] == 0


def test_rationality_examples(S3):
    C3 = parse_group_spec("C3")
    assert is_globally_rational(S3, {S3.class_table.find("(1 2 3)"): 2}).holds
    rep = is_globally_rational(C3, {C3.class_table.find("(1 2 3)"): 2})
    assert not rep.holds and rep.m == 2
    assert is_globally_rational(S3, {}).holds


def test_rationality_balanced_profile():
    C3 = parse_group_spec("C3")
    T = C3.class_table
    assert is_globally_rational(C3, {T.find("(1 2 3)"): 1, T.find("(1 3 2)"): 1}).holds


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(["S3", "C5", "A4", "D5", "C6"]), st.data())
def test_rationality_closed_under_sum(name, data):
    G = parse_group_spec(name)
    n = len(G.class_table)
    prof = lambda: {c: data.draw(st.integers(1, 3)) for c in data.draw(st.sets(st.integers(1, n - 1)))}
    a, b = prof(), prof()
    if is_globally_rational(G, a).holds and is_globally_rational(G, b).holds:
        total = {c: a.get(c, 0) + b.get(c, 0) for c in set(a) | set(b)}
        assert is_globally_rational(G, total).holds
