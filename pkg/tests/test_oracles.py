from fractions import Fraction

import pytest

from nbl import EnumerationSpec, decompose_components, parse_group_spec
from nbl.oracles import (
    UnionFind,
    labelprop_component_count,
    naive_component_count,
    naive_partition,
    naive_tuples,
)

# character values of S3 on (identity, transpositions, 3-cycles)
S3_CHARS = [(1, 1, 1), (1, -1, 1), (2, 0, -1)]


def frobenius_count(sizes, chars, order, picks):
    """Number of tuples from the given classes with product 1 (character formula)."""
    total = Fraction(0)
    for chi in chars:
        term = Fraction(1)
        for k in picks:
            term *= Fraction(sizes[k] * chi[k], chi[0])
        total += chi[0] ** 2 * term
    return total / order


@pytest.mark.parametrize("r", range(1, 8))
def test_naive_counts_match_character_formula(S3, r):
    spec = EnumerationSpec(classes=[S3.class_table.find("(1 2)")])
    got = len(list(naive_tuples(S3, r, spec)))
    assert got == frobenius_count((1, 3, 2), S3_CHARS, 6, [1] * r)


@pytest.mark.parametrize("r", range(2, 8))
def test_naive_generating_counts(S3, r):
    spec = EnumerationSpec(cover="galois", classes=[S3.class_table.find("(1 2)")])
    total = frobenius_count((1, 3, 2), S3_CHARS, 6, [1] * r)
    constant = 3 if r % 2 == 0 else 0
    assert len(list(naive_tuples(S3, r, spec))) == total - constant


def test_union_find():
    uf = UnionFind(range(1, 6))
    for a, b in [(1, 2), (3, 4), (2, 4), (5, 5)]:
        uf.union(a, b)
    assert uf.find(1) == uf.find(3)
    assert uf.find(5) != uf.find(1)
    assert sorted(map(sorted, uf.groups())) == [[1, 2, 3, 4], [5]]


@pytest.mark.parametrize("equiv", ["marked", "unmarked"])
def test_partition_sizes(S3, equiv):
    spec = EnumerationSpec(equivalence=equiv)
    parts = naive_partition(S3, 3, spec)
    comps = decompose_components(S3, 3, spec)
    assert sorted(len(p) for p in parts) == sorted(c.orbit_size for c in comps)
    assert naive_component_count(S3, 3, spec) == len(comps)


@pytest.mark.parametrize("name, r", [("S3", 6), ("D5", 6), ("A4", 5)])
def test_label_propagation(name, r):
    G = parse_group_spec(name)
    spec = EnumerationSpec(cover="galois")
    assert labelprop_component_count(G, r, spec) == naive_component_count(G, r, spec)


def test_label_propagation_small_chunks(S3):
    spec = EnumerationSpec(classes=[S3.class_table.find("(1 2)")])
    assert labelprop_component_count(S3, 6, spec, chunk=7) == naive_component_count(S3, 6, spec)
