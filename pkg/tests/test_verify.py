import json

import pytest

from nbl.verify import SUITES, default_oracle_matrix, run_suite

QUICK = {
    "braid-relations": dict(groups=("S3",), r=4, samples=200),
    "orbit-oracle": dict(configs=default_oracle_matrix(("S3", "C4"), r_max=3)),
    "clebsch": dict(cases=((3, 4), (4, 6))),
    "first-entry": dict(r=5),
    "stabilization": dict(cases=(("S3", "trans"),), r_range=range(4, 9)),
    "inner-braids": dict(cases=(("S3", 4),)),
    "monoid": dict(affine_max=1, projective_max=2, assoc_max=1),
    "twist": dict(r_max=2),
    "hf": dict(r_range=range(2, 7)),
    "lifting": dict(r_range=range(4, 5)),
    "rationality": dict(samples=20),
}


def test_every_suite_has_a_quick_run():
    assert set(QUICK) == set(SUITES)


@pytest.mark.parametrize("name", sorted(QUICK))
def test_suite_passes(name):
    res = run_suite(name, **QUICK[name])
    assert res.passed, res.failures[:5]
    assert res.checks > 0
    json.dumps(res.to_json())


def test_clebsch_below_genus_bound_is_empty():
    res = run_suite("clebsch", cases=((5, 6),))
    assert not res.passed
    assert set(res.details.values()) == {0}


def test_clebsch_s5_at_eight():
    res = run_suite("clebsch", cases=((5, 8),))
    assert res.passed and set(res.details.values()) == {1}


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("nope")
