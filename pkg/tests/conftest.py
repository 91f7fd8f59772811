import sympy
from hypothesis import settings

from asw.polyring import VARIABLES, IntPoly, ModPoly

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

SYMBOLS = {v: sympy.Symbol(v) for v in VARIABLES}


def to_sympy(f: IntPoly | ModPoly) -> sympy.Expr:
    """Our polynomial as a sympy expression with integer coefficients."""
    expr = sympy.Integer(0)
    for m, c in f.terms.items():
        term = sympy.Integer(c)
        for v in VARIABLES:
            e = (m >> (16 * VARIABLES.index(v))) & 0xFFFF
            if e:
                term *= SYMBOLS[v] ** e
        expr += term
    return expr


def sympy_mod(expr: sympy.Expr, p: int, gens=None) -> sympy.Poly:
    gens = gens or sorted(expr.free_symbols, key=str) or [SYMBOLS["x1"]]
    return sympy.Poly(sympy.expand(expr), *gens, modulus=p)
