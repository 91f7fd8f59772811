import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from asw.catalog import TABLE_P3, TABLE_P4, find_row
from asw.groups import (
    SearchBudgetExceeded,
    abelian_type,
    are_isomorphic,
    catalog_group,
    classify_group,
    presentation,
)
from asw.params import GroupParams

from .oracles import cyclic, direct_product, heisenberg, metacyclic

P4_KEYS_AT_3 = [r.key for r in TABLE_P4 if r.applies_to(3)]


def pres(key, p=3):
    return catalog_group(find_row(key, p), p)


@pytest.mark.parametrize("row", TABLE_P4 + TABLE_P3, ids=lambda r: r.key)
@pytest.mark.parametrize("p", [3, 5])
def test_presentations_are_consistent(row, p):
    G = catalog_group(row, p)
    assert G.consistency_failures() == []
    assert G.relation_failures() == []
    assert len(G) == (p**3 if row.kind == "p3" else p**4)


@given(st.sampled_from(P4_KEYS_AT_3), st.data())
def test_collection_is_associative(key, data):
    G = pres(key)
    el = st.tuples(*[st.integers(0, 2)] * G.n)
    x, y, z = data.draw(el), data.draw(el), data.draw(el)
    assert G.multiply(G.multiply(x, y), z) == G.multiply(x, G.multiply(y, z))
    assert G.multiply(x, G.inverse(x)) == G.identity


@pytest.mark.parametrize("p", [3, 5])
def test_heisenberg_oracle(p):
    H = heisenberg(p)
    assert are_isomorphic(pres("H(p^3)", p), H)
    assert not are_isomorphic(pres("M(p^3)", p), H)


@pytest.mark.parametrize("p", [3, 5])
def test_metacyclic_oracles(p):
    assert are_isomorphic(pres("M(p^3)", p), metacyclic(p, 2, 1, 1 + p))
    # H: sigma_1 of order p^3, sigma_2 sigma_1 sigma_2^-1 = sigma_1^(1+p^2)
    assert are_isomorphic(pres("H", p), metacyclic(p, 3, 1, 1 + p * p))


def test_direct_product_oracles():
    p = 3
    assert are_isomorphic(pres("(xiv)"), direct_product(heisenberg(p), cyclic(p)))
    hits = [k for k in P4_KEYS_AT_3 if are_isomorphic(pres(k), direct_product(metacyclic(p, 2, 1, 1 + p), cyclic(p)))]
    assert len(hits) == 1


def test_abelian_p3_rows():
    p = 3
    assert abelian_type(pres("C_p^3").to_finite(), p) == [1, 1, 1]
    assert abelian_type(pres("C_p^2xC_p").to_finite(), p) == [2, 1]
    assert are_isomorphic(pres("C_p^2xC_p"), direct_product(cyclic(9), cyclic(3)))


def test_element_orders():
    G = pres("H").to_finite()
    assert max(G.orders) == 27
    M = pres("M(p^3)")
    assert M.order_of(M.gen(0)) == 9


def test_catalog_rows_pairwise_distinct_at_3():
    groups = {k: pres(k) for k in P4_KEYS_AT_3}
    for a, b in itertools.combinations(groups, 2):
        assert not are_isomorphic(groups[a], groups[b]), (a, b)


def test_fingerprint_ties_resolved_by_search():
    tied = ["(ix)", "(vii)", "(x)"]
    fps = {k: pres(k).to_finite().fingerprint() for k in tied}
    assert len({str(v) for v in fps.values()}) == 1
    for a, b in itertools.combinations(tied, 2):
        res = are_isomorphic(pres(a), pres(b), use_fingerprint=False)
        assert not res and res.decided_by == "search"


def test_isomorphism_witness_is_a_homomorphism():
    G = pres("(xii)").to_finite()
    res = are_isomorphic(G, G, use_fingerprint=False)
    assert res.isomorphic and res.witness is not None


def test_budget_guard():
    with pytest.raises(SearchBudgetExceeded):
        are_isomorphic(pres("(xii)"), pres("(xiii)"), node_budget=5, use_fingerprint=False)


def test_classify():
    p = 3
    row, _ = classify_group(pres("H(p^3)").to_finite(), p)
    assert row.key == "H(p^3)"
    row, _ = classify_group(direct_product(heisenberg(p), cyclic(p)), p)
    assert row.key == "(xiv)"


def test_classify_abelian_outside_catalog():
    with pytest.warns(UserWarning):
        params = GroupParams.degree_p4(3, (0, 0), (0, 0, 0, 0), strict=False)
    row, text = classify_group(presentation(params).to_finite(), 3)
    assert row is None and text == "abelian: C_p^4, outside catalog"
