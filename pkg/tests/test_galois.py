import itertools
import random
import warnings

import pytest
from hypothesis import given
from hypothesis import strategies as st

from asw.catalog import TABLE_P3, TABLE_P4
from asw.galois import (
    FAULTS,
    endo_group,
    ClosureOverflow,
    _random_elem,
    build_equations,
    build_sigmas,
    close_group,
    realize,
    reconstruct_sigmas,
    solve_wp,
    verify,
)
from asw.groups import are_isomorphic, presentation
from asw.params import GroupParams, InvalidParams
from asw.polyring import ModPoly, parse_poly
from asw.tower import wp
from asw.wittpoly import witt_set


def rhs(spec, var):
    return dict(spec.relations)[var]


def poly(text, p):
    return parse_poly(text, p)


# -- equations -----------------------------------------------------------------


def test_equations_degree_p3():
    spec = build_equations(GroupParams.degree_p3(3, 1, 0))
    assert str(rhs(spec, "x3")) == "b2*x1 + b3"
    assert [v for v, _ in spec.relations] == ["x1", "x2", "x3"]


def test_equations_xiv():
    spec = build_equations(GroupParams.from_row("(xiv)", 3))
    assert str(rhs(spec, "x4")) == "b2*x1 + b4"


@pytest.mark.parametrize("p", [3, 5])
def test_equations_vii(p):
    spec = build_equations(GroupParams.from_row("(vii)", p))
    d1_x2 = witt_set(p).d1.substitute({"x1": ModPoly.var("x2", p), "b1": ModPoly.var("b2", p)})
    expected = d1_x2 + poly("b3*x1 + b4", p)
    assert spec.elem(rhs(spec, "x4")) == spec.elem(expected)


@pytest.mark.parametrize("p", [3, 5])
def test_equations_h_contain_d2(p):
    spec = build_equations(GroupParams.group_h(p))
    expected = spec.elem(witt_set(p).d2 + poly("b2*x1 + b4", p))
    assert spec.elem(rhs(spec, "x4")) == expected
    assert rhs(spec, "x4").degree("x1") < p


def test_binomial_term_uses_inverse_of_two():
    p = 5
    spec = build_equations(GroupParams.from_row("(xi)", p))
    # b3 = 1, a0 = 1: b2*x1*(x1-1)/2 contributes 3*b2*x1^2 + 2*b2*x1 at p = 5
    w = rhs(spec, "x4")
    assert w.coeff({"b2": 1, "x1": 2}) == 3
    assert w.coeff({"b2": 1, "x1": 1}) == 2


def test_invalid_params():
    with pytest.raises(InvalidParams, match="a1\\*b3"):
        GroupParams.degree_p4(3, (0, 1), (0, 0, 0, 1))
    with pytest.raises(InvalidParams, match="b2"):
        GroupParams.degree_p4(5, (0, 0), (0, 0, 3, 0))
    with pytest.raises(InvalidParams, match="catalog"):
        GroupParams.degree_p4(3, (0, 0), (0, 0, 0, 0))


# -- sigmas and closure ----------------------------------------------------------


@pytest.mark.parametrize("key", ["(xii)", "(viii)", "(ix)"])
def test_sigma1_power_actions(key):
    params = GroupParams.from_row(key, 3)
    spec = build_equations(params)
    s1 = build_sigmas(params, spec)[0]
    x3, x4 = spec.gen("x3"), spec.gen("x4")
    assert (s1**3)(x4) == x4 + params.b[1]
    assert (s1**3)(x3) == x3 + params.a[1]


@pytest.mark.parametrize("p", [3, 5])
def test_h_sigma3_action(p):
    params = GroupParams.group_h(p)
    spec = build_equations(params)
    s3 = build_sigmas(params, spec)[2]
    c1_x3 = spec.elem(witt_set(p).c1.substitute({"x1": ModPoly.var("x3", p)}))
    assert s3(spec.gen("x4")) - spec.gen("x4") == c1_x3


def test_closure_sizes():
    params = GroupParams.degree_p3(3, 0, 0)
    spec = build_equations(params)
    assert len(close_group(build_sigmas(params, spec))) == 27
    params = GroupParams.group_h(3)
    spec = build_equations(params)
    sig = build_sigmas(params, spec)
    assert len(close_group(sig)) == 81
    assert sig[0].order(27) == 27


def test_closure_overflow():
    params = GroupParams.from_row("(xii)", 3)
    spec = build_equations(params)
    with pytest.raises(ClosureOverflow):
        close_group(build_sigmas(params, spec), cap=50)


def test_realize_bundle():
    rg = realize(GroupParams.from_row("(x)", 3))
    assert len(rg.closure) == 81 and rg.report.passed and len(rg.sigmas) == 4


def test_m_p3_sigma1_order():
    params = GroupParams.degree_p3(3, 1, 1)
    spec = build_equations(params)
    assert build_sigmas(params, spec)[0].order(27) == 9


# -- verification ------------------------------------------------------------------


@pytest.mark.parametrize("row", TABLE_P4 + TABLE_P3, ids=lambda r: r.key)
def test_every_row_verifies_at_3(row):
    rep = verify(GroupParams.from_row(row, 3), deep=True)
    assert rep.passed, rep.to_text()
    assert rep.closure_order == (27 if row.kind == "p3" else 81)


@pytest.mark.parametrize("row", TABLE_P3, ids=lambda r: r.key)
@pytest.mark.parametrize("p", [5, 7])
def test_degree_p3_rows_at_larger_p(row, p):
    rep = verify(GroupParams.from_row(row, p))
    assert rep.passed and rep.closure_order == p**3


@given(st.integers(0, 4), st.integers(0, 4))
def test_any_degree_p3_parameters(a0, a1):
    rep = verify(GroupParams.degree_p3(5, a0, a1), converse=False)
    assert rep.passed and rep.closure_order == 125


def test_all_admissible_degree_p4_parameters_at_3():
    for a in itertools.product((0, 1), repeat=2):
        for b in itertools.product((0, 1), (0, 1), (0, 1, 2), (0, 1)):
            if a[1] * b[3]:
                continue
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                params = GroupParams.degree_p4(3, a, b, strict=False)
            rep = verify(params, converse=False)
            assert rep.passed and rep.closure_order == 81, (a, b)


def test_drop_b3_breaks_the_commutator_relation():
    rep = verify(GroupParams.from_row("(vii)", 3), fault="drop-b3")
    failed = {c.name for c in rep.failed()}
    assert "rel_s3s1" in failed and "well_defined_s1" in failed


@pytest.mark.parametrize("fault", sorted(FAULTS))
def test_every_fault_is_caught_somewhere(fault):
    rows = ["(xii)", "(vi)", "(vii)", "(viii)"]
    caught = [k for k in rows if not verify(GroupParams.from_row(k, 3), fault=fault, converse=False).passed]
    assert caught


def test_inert_fault_is_noted():
    rep = verify(GroupParams.from_row("(xii)", 3), fault="drop-c2")
    assert rep.passed and any("does not change" in n for n in rep.notes)


def test_report_json_shape():
    rep = verify(GroupParams.from_row("(viii)", 3))
    out = rep.to_json()
    assert set(out) >= {"params", "p", "tower", "checks", "closure_order", "elapsed_ms"}
    assert all(set(c) >= {"name", "paper_ref", "pass"} for c in out["checks"])
    assert "elapsed_ms" not in rep.to_json(timing=False)


# -- converse -------------------------------------------------------------------


@pytest.mark.parametrize("key", ["(xii)", "(vi)", "M(p^3)"])
def test_reconstruction_matches_direct(key):
    params = GroupParams.from_row(key, 3)
    spec = build_equations(params)
    assert reconstruct_sigmas(spec) == build_sigmas(params, spec)


@pytest.mark.parametrize("seed", range(5))
def test_solve_wp_recovers_root(seed):
    spec = build_equations(GroupParams.from_row("(xiii)", 3))
    delta = _random_elem(spec, random.Random(seed))
    delta = spec.elem(delta.value.substitute({"x4": 0}))
    delta = delta - delta.value.constant()
    found, unique = solve_wp(spec, wp(delta), ["x1", "x2", "x3"])
    assert unique and found == delta


def test_solve_wp_reports_unsolvable():
    spec = build_equations(GroupParams.from_row("(xiv)", 3))
    # no root of wp(y) = x1 among polynomials in x1 with b-degree <= 1
    found, _ = solve_wp(spec, spec.gen("x1"), ["x1"], max_beta_degree=1)
    assert found is None


def test_endo_group_matches_presentation():

    params = GroupParams.group_h(3)
    G = endo_group(build_sigmas(params, build_equations(params)))
    assert len(G) == 81 and are_isomorphic(G, presentation(params))
