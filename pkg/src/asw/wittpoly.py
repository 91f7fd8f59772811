"""The divided-binomial correction polynomials C1, D1, C2, D2.

Each one is assembled as an exact numerator in Z[x1, x3, b1, b3], divided
exactly by p or p**2, and only then reduced mod p.  A failed division is a
hard error: the numerators are integral as a whole even when individual
binomial coefficients are not.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .polyring import IntPoly, ModPoly, Prime, exact_div_by, reduce_mod

__all__ = [
    "WittSet",
    "c1_lift",
    "d1_lift",
    "c2_lift",
    "d2_lift",
    "d1_generic_lift",
    "build_c1",
    "build_d1",
    "build_c2",
    "build_d2",
    "witt_set",
]

X1 = IntPoly.var("x1")
X3 = IntPoly.var("x3")
B1 = IntPoly.var("b1")
B3 = IntPoly.var("b3")


def c1_lift(p: int) -> IntPoly:
    """(x1^p + 1 - (x1+1)^p) / p in Z[x1]."""
    p = Prime(p)
    return exact_div_by(X1**p + 1 - (X1 + 1) ** p, p)


def d1_lift(p: int) -> IntPoly:
    """(x1^p + b1^p - (x1+b1)^p) / p in Z[x1, b1]."""
    p = Prime(p)
    return exact_div_by(X1**p + B1**p - (X1 + B1) ** p, p)


def d1_generic_lift(p: int) -> IntPoly:
    """D1 written purely in x1, with b1 replaced by x1^p - x1 before dividing."""
    p = Prime(p)
    beta = X1**p - X1
    return exact_div_by(X1**p + beta**p - (X1 + beta) ** p, p)


def c2_lift(p: int, c1: IntPoly | None = None) -> IntPoly:
    """Numerator x1^(p^2) + 1 - (x1+1)^(p^2) + p(x3^p - (x3 + C1)^p), over p^2.

    ``c1`` overrides the integer lift of C1; any lift congruent mod p gives
    the same result mod p.
    """
    p = Prime(p)
    q = p * p
    if c1 is None:
        c1 = c1_lift(p)
    num = X1**q + 1 - (X1 + 1) ** q + (X3**p - (X3 + c1) ** p) * p
    return exact_div_by(num, q)


def d2_lift(p: int, d1: IntPoly | None = None) -> IntPoly:
    """Numerator x1^(p^2) + b1^(p^2) - (x1+b1)^(p^2) + p(x3^p + b3^p - (x3 + D1 + b3)^p), over p^2."""
    p = Prime(p)
    q = p * p
    if d1 is None:
        d1 = d1_lift(p)
    num = X1**q + B1**q - (X1 + B1) ** q + (X3**p + B3**p - (X3 + d1 + B3) ** p) * p
    return exact_div_by(num, q)


def build_c1(p: int) -> ModPoly:
    return witt_set(p).c1


def build_d1(p: int) -> ModPoly:
    return witt_set(p).d1


def build_c2(p: int) -> ModPoly:
    return witt_set(p).c2


def build_d2(p: int) -> ModPoly:
    return witt_set(p).d2


@dataclass(frozen=True)
class WittSet:
    p: int
    c1: ModPoly
    d1: ModPoly
    c2: ModPoly
    d2: ModPoly
    c1_int: IntPoly
    d1_int: IntPoly
    c2_int: IntPoly
    d2_int: IntPoly

    def as_dict(self) -> dict[str, ModPoly]:
        return {"C1": self.c1, "D1": self.d1, "C2": self.c2, "D2": self.d2}


@lru_cache(maxsize=None)
def witt_set(p: int) -> WittSet:
    p = Prime(p)
    c1, d1 = c1_lift(p), d1_lift(p)
    c2, d2 = c2_lift(p, c1), d2_lift(p, d1)
    return WittSet(
        p=int(p),
        c1=reduce_mod(c1, p),
        d1=reduce_mod(d1, p),
        c2=reduce_mod(c2, p),
        d2=reduce_mod(d2, p),
        c1_int=c1,
        d1_int=d1,
        c2_int=c2,
        d2_int=d2,
    )
