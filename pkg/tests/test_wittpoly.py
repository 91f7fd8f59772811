import pytest
import sympy

from asw.polyring import IntPoly, NonDivisible, exact_div_by, monomial, reduce_mod
from asw.wittpoly import c1_lift, c2_lift, d1_generic_lift, d1_lift, d2_lift, witt_set

from .conftest import SYMBOLS, sympy_mod, to_sympy

x1, x3, b1, b3 = (SYMBOLS[v] for v in ("x1", "x3", "b1", "b3"))


def oracle_c1(p):
    return sympy.expand((x1**p + 1 - (x1 + 1) ** p) / p)


def oracle_d1(p):
    return sympy.expand((x1**p + b1**p - (x1 + b1) ** p) / p)


def oracle_c2(p):
    c1 = oracle_c1(p)
    return sympy.expand((x1 ** (p * p) + 1 - (x1 + 1) ** (p * p) + p * (x3**p - (x3 + c1) ** p)) / p**2)


def oracle_d2(p):
    d1 = oracle_d1(p)
    num = x1 ** (p * p) + b1 ** (p * p) - (x1 + b1) ** (p * p) + p * (x3**p + b3**p - (x3 + d1 + b3) ** p)
    return sympy.expand(num / p**2)


def same_mod(ours, expr, p):
    gens = [x1, x3, b1, b3]
    return sympy_mod(to_sympy(ours) - expr, p, gens).is_zero


@pytest.mark.parametrize("p", [3, 5, 7])
def test_c1_d1_match_oracle(p):
    w = witt_set(p)
    assert same_mod(w.c1, oracle_c1(p), p)
    assert same_mod(w.d1, oracle_d1(p), p)
    # exact integer lifts agree too, not just their reductions
    assert sympy.expand(to_sympy(c1_lift(p)) - oracle_c1(p)) == 0
    assert sympy.expand(to_sympy(d1_lift(p)) - oracle_d1(p)) == 0


@pytest.mark.parametrize("p", [3, 5])
def test_c2_d2_match_oracle(p):
    w = witt_set(p)
    assert same_mod(w.c2, oracle_c2(p), p)
    assert same_mod(w.d2, oracle_d2(p), p)


def test_frozen_values_p3():
    w = witt_set(3)
    assert str(w.c1) == "2*x1^2 + 2*x1"
    assert str(w.d1) == "2*b1*x1^2 + 2*b1^2*x1"
    assert str(w.c2) == "x1^2*x3^2 + x1*x3^2 + 2*x1^4*x3 + x1^3*x3 + 2*x1^2*x3 + 2*x1^8 + 2*x1^7 + 2*x1^5 + 2*x1^4 + 2*x1^2 + 2*x1"
    assert len(w.c2) == 11 and len(w.d2) == 20


def test_frozen_values_p5():
    w = witt_set(5)
    assert str(w.c1) == "4*x1^4 + 3*x1^3 + 3*x1^2 + 4*x1"
    assert w.d1.coeff(monomial(x1=1, b1=4)) == 4
    assert w.d1.coeff(monomial(x1=4, b1=1)) == 4


@pytest.mark.parametrize("p", [3, 5, 7])
def test_c1_is_d1_at_b1_equal_one(p):
    w = witt_set(p)
    assert w.d1.substitute({"b1": 1}) == w.c1


@pytest.mark.parametrize("p", [3, 5, 7])
def test_d1_generic_form(p):
    """Substituting b1 = x1^p - x1 commutes with the exact division."""
    x = IntPoly.var("x1")
    assert d1_lift(p).substitute({"b1": x**p - x}) == d1_generic_lift(p)


@pytest.mark.parametrize("p", [3, 5])
def test_c2_independent_of_c1_lift(p):
    """Shifting the integer lift of C1 by p*h leaves C2 mod p unchanged."""
    x = IntPoly.var("x1")
    shifted = c1_lift(p) + (x**3 + 2 * x + 1) * p
    assert reduce_mod(c2_lift(p, shifted), p) == witt_set(p).c2
    b = IntPoly.var("b1")
    shifted_d1 = d1_lift(p) + (x * b + 5) * p
    assert reduce_mod(d2_lift(p, shifted_d1), p) == witt_set(p).d2


def test_non_divisible_is_an_error():
    x = IntPoly.var("x1")
    with pytest.raises(NonDivisible):
        exact_div_by(x**9 + 1 - (x + 1) ** 9, 9)


@pytest.mark.parametrize("p", [3, 5])
def test_degrees(p):
    w = witt_set(p)
    assert w.c1.degree("x1") == p - 1
    assert w.c2.degree("x3") == p - 1
    assert w.c2.degree("x1") == p * p - 1
