"""Sparse multivariate polynomials over Z and F_p in the closed variable set
x1..x4, b1..b4 (the b's stand for the base-field parameters beta_i).

A monomial is packed into one Python int: each variable owns a 16-bit field,
with x4 in the most significant field and b1 in the least.  Multiplying
monomials is then integer addition, and integer comparison is the fixed
lexicographic order x4 > x3 > x2 > x1 > b4 > b3 > b2 > b1.
"""

from __future__ import annotations

from math import comb
from typing import Callable, Iterable, Mapping

__all__ = [
    "VARIABLES",
    "X_VARS",
    "B_VARS",
    "FIELD_BITS",
    "MAX_EXPONENT",
    "NonDivisible",
    "ModulusMismatch",
    "Prime",
    "IntPoly",
    "ModPoly",
    "monomial",
    "exponent",
    "exponents",
    "var_shift",
    "monomial_str",
    "exact_div_by",
    "reduce_mod",
    "quadratic_nonresidue",
    "binomial",
    "parse_poly",
]

# ascending significance; the position fixes the bit field
VARIABLES = ("b1", "b2", "b3", "b4", "x1", "x2", "x3", "x4")
X_VARS = ("x1", "x2", "x3", "x4")
B_VARS = ("b1", "b2", "b3", "b4")
FIELD_BITS = 16
MAX_EXPONENT = (1 << FIELD_BITS) - 1
_MASK = MAX_EXPONENT
_SHIFT = {v: FIELD_BITS * i for i, v in enumerate(VARIABLES)}


class NonDivisible(ArithmeticError):
    """A coefficient is not an exact multiple of the requested divisor."""

    def __init__(self, coefficient: int, divisor: int):
        super().__init__(f"coefficient {coefficient} is not divisible by {divisor}")
        self.coefficient = coefficient
        self.divisor = divisor


class ModulusMismatch(ValueError):
    pass


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class Prime(int):
    """An odd prime.  ``Prime(4)`` and ``Prime(2)`` raise ``ValueError``."""

    def __new__(cls, value: int) -> "Prime":
        if isinstance(value, Prime):
            return value
        n = int(value)
        if n != value or n == 2 or not _is_prime(n):
            raise ValueError("p must be an odd prime")
        return super().__new__(cls, n)


def var_shift(var: str) -> int:
    try:
        return _SHIFT[var]
    except KeyError:
        raise ValueError(f"unknown variable {var!r}") from None


def monomial(exps: Mapping[str, int] | None = None, **kw: int) -> int:
    """Pack ``{"x1": 2, "b1": 1}`` (or keywords) into a monomial key."""
    m = 0
    items = dict(exps or {}, **kw)
    for v, e in items.items():
        if e < 0 or e > MAX_EXPONENT:
            raise ValueError(f"exponent {e} of {v} out of range")
        m += e << var_shift(v)
    return m


def exponent(m: int, var: str) -> int:
    return (m >> _SHIFT[var]) & _MASK


def exponents(m: int) -> dict[str, int]:
    """Non-zero exponents of a packed monomial."""
    out = {}
    for v in VARIABLES:
        e = (m >> _SHIFT[v]) & _MASK
        if e:
            out[v] = e
    return out


def _max_field(m: int) -> int:
    top = 0
    while m:
        top = max(top, m & _MASK)
        m >>= FIELD_BITS
    return top


def monomial_str(m: int, latex: bool = False) -> str:
    parts = []
    for v in VARIABLES:
        e = (m >> _SHIFT[v]) & _MASK
        if not e:
            continue
        if latex:
            name = ("\\beta_" if v[0] == "b" else "x_") + v[1]
            parts.append(name if e == 1 else f"{name}^{{{e}}}")
        else:
            parts.append(v if e == 1 else f"{v}^{e}")
    return (" " if latex else "*").join(parts)


def binomial(n: int, k: int) -> int:
    return comb(n, k)


class _Poly:
    """Shared machinery; concrete kinds are IntPoly and ModPoly."""

    __slots__ = ("terms", "_hash")

    modulus: int | None = None

    # -- construction -----------------------------------------------------
    def _make(self, terms: dict[int, int]):
        raise NotImplementedError

    def _coerce(self, other):
        raise NotImplementedError

    @classmethod
    def _from_clean(cls, terms, modulus=None):
        obj = object.__new__(cls)
        obj.terms = terms
        obj._hash = None
        if modulus is not None:
            obj.p = modulus
        return obj

    # -- queries ----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def coeff(self, m: int | Mapping[str, int]) -> int:
        if not isinstance(m, int):
            m = monomial(m)
        return self.terms.get(m, 0)

    def constant(self) -> int:
        return self.terms.get(0, 0)

    def degree(self, var: str) -> int:
        s = var_shift(var)
        return max(((m >> s) & _MASK for m in self.terms), default=0)

    def total_degree(self, variables: Iterable[str] = VARIABLES) -> int:
        shifts = [var_shift(v) for v in variables]
        return max((sum((m >> s) & _MASK for s in shifts) for m in self.terms), default=0)

    def variables(self) -> set[str]:
        acc = 0
        for m in self.terms:
            acc |= m
        return {v for v in VARIABLES if (acc >> _SHIFT[v]) & _MASK}

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = self._coerce(other)
        if not isinstance(other, _Poly) or type(other) is not type(self):
            return NotImplemented
        return self.modulus == other.modulus and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.modulus, frozenset(self.terms.items())))
        return self._hash

    # -- ring operations --------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return self._make(out)

    __radd__ = __add__

    def __neg__(self):
        return self._make({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scalar_mul(self, k: int):
        return self._make({m: k * c for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scalar_mul(other)
        other = self._coerce(other)
        if not self.terms or not other.terms:
            return self._make({})
        if _max_degree(self) + _max_degree(other) > MAX_EXPONENT:
            raise OverflowError("monomial exponent exceeds the packed field width")
        out: dict[int, int] = {}
        get = out.get
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                k = m1 + m2
                out[k] = get(k, 0) + c1 * c2
        return self._make(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = self._coerce(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def map_coefficients(self, fn: Callable[[int], int]):
        return self._make({m: fn(c) for m, c in self.terms.items()})

    def substitute(self, assignment: Mapping[str, "_Poly | int"]):
        """Ring homomorphism sending each variable to its assigned value.

        Variables absent from ``assignment`` are left unchanged.
        """
        images = {v: self._coerce(f) for v, f in assignment.items()}
        for v in images:
            var_shift(v)
        powers: dict[tuple[str, int], _Poly] = {}

        def power(v: str, e: int):
            key = (v, e)
            if key not in powers:
                powers[key] = images[v] ** e
            return powers[key]

        result = self._make({})
        for m, c in self.terms.items():
            fixed = m
            term = self._coerce(c)
            for v in images:
                e = (m >> _SHIFT[v]) & _MASK
                if e:
                    fixed -= e << _SHIFT[v]
                    term = term * power(v, e)
            result = result + term * self._make({fixed: 1})
        return result

    # -- text -------------------------------------------------------------
    def sorted_terms(self) -> list[tuple[int, int]]:
        return sorted(self.terms.items(), reverse=True)

    def to_str(self, latex: bool = False) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for m, c in self.sorted_terms():
            body = monomial_str(m, latex)
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not body:
                text = str(a)
            elif a == 1:
                text = body
            else:
                text = f"{a}{' ' if latex else '*'}{body}"
            pieces.append((sign, text))
        first_sign, first = pieces[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, text in pieces[1:]:
            out += f" {sign} {text}"
        return out

    def __str__(self) -> str:
        return self.to_str()


def _max_degree(f: _Poly) -> int:
    return max((_max_field(m) for m in f.terms), default=0)


class IntPoly(_Poly):
    """Polynomial with exact integer coefficients."""

    __slots__ = ()

    def __init__(self, terms: Mapping[int, int] | None = None):
        self.terms = {m: c for m, c in (terms or {}).items() if c}
        self._hash = None

    @classmethod
    def var(cls, name: str) -> "IntPoly":
        return cls({monomial({name: 1}): 1})

    @classmethod
    def const(cls, c: int) -> "IntPoly":
        return cls({0: c})

    def _make(self, terms):
        return IntPoly._from_clean({m: c for m, c in terms.items() if c})

    def _coerce(self, other):
        if isinstance(other, IntPoly):
            return other
        if isinstance(other, int):
            return IntPoly._from_clean({0: other} if other else {})
        raise TypeError(f"cannot combine IntPoly with {type(other).__name__}")

    def __repr__(self) -> str:
        return f"IntPoly({self})"


class ModPoly(_Poly):
    """Polynomial over F_p; coefficients stored as least residues in [1, p-1]."""

    __slots__ = ("p",)

    def __init__(self, terms: Mapping[int, int] | None = None, p: int = 3):
        self.p = int(Prime(p))
        self.terms = {}
        for m, c in (terms or {}).items():
            c %= self.p
            if c:
                self.terms[m] = c
        self._hash = None

    @property
    def modulus(self) -> int:  # type: ignore[override]
        return self.p

    @classmethod
    def var(cls, name: str, p: int) -> "ModPoly":
        return cls({monomial({name: 1}): 1}, p)

    @classmethod
    def const(cls, c: int, p: int) -> "ModPoly":
        return cls({0: c}, p)

    def _make(self, terms):
        p = self.p
        out = {}
        for m, c in terms.items():
            c %= p
            if c:
                out[m] = c
        return ModPoly._from_clean(out, p)

    def _coerce(self, other):
        if isinstance(other, ModPoly):
            if other.p != self.p:
                raise ModulusMismatch(f"moduli {self.p} and {other.p} differ")
            return other
        if isinstance(other, int):
            c = other % self.p
            return ModPoly._from_clean({0: c} if c else {}, self.p)
        raise TypeError(f"cannot combine ModPoly with {type(other).__name__}")

    def frobenius(self) -> "ModPoly":
        """f**p, computed as sum(c * m**p) since c**p == c in F_p."""
        if _max_degree(self) * self.p > MAX_EXPONENT:
            raise OverflowError("monomial exponent exceeds the packed field width")
        p = self.p
        return ModPoly._from_clean({m * p: c for m, c in self.terms.items()}, p)

    def lift(self) -> IntPoly:
        """Integer polynomial with the least non-negative residues."""
        return IntPoly._from_clean(dict(self.terms))

    def __repr__(self) -> str:
        return f"ModPoly({self}, p={self.p})"


def exact_div_by(f: IntPoly, d: int) -> IntPoly:
    if d == 0:
        raise ZeroDivisionError("division by zero")
    out = {}
    for m, c in f.terms.items():
        q, r = divmod(c, d)
        if r:
            raise NonDivisible(c, d)
        out[m] = q
    return IntPoly._from_clean(out)


def reduce_mod(f: IntPoly, p: int) -> ModPoly:
    return ModPoly(f.terms, p)


def quadratic_nonresidue(p: int) -> int:
    """Smallest alpha >= 2 with alpha^((p-1)/2) == -1 (mod p)."""
    p = Prime(p)
    for a in range(2, p):
        if pow(a, (p - 1) // 2, p) == p - 1:
            return a
    raise AssertionError("unreachable for odd primes")


def parse_poly(text: str, p: int | None = None) -> IntPoly | ModPoly:
    """Inverse of the canonical text form; ``p=None`` parses over Z."""
    s = text.strip()
    if not s:
        raise ValueError("empty polynomial text")
    s = s.replace(" ", "")
    # split into signed terms
    terms: list[tuple[int, str]] = []
    sign, start = 1, 0
    i = 0
    if s[0] in "+-":
        sign = -1 if s[0] == "-" else 1
        start = i = 1
    while i <= len(s):
        if i == len(s) or (s[i] in "+-" and i > start):
            chunk = s[start:i]
            if not chunk:
                raise ValueError(f"malformed polynomial {text!r}")
            terms.append((sign, chunk))
            if i < len(s):
                sign = -1 if s[i] == "-" else 1
            start = i + 1
        i += 1
    acc: dict[int, int] = {}
    for sgn, chunk in terms:
        coeff, m = sgn, 0
        for factor in chunk.split("*"):
            if not factor:
                raise ValueError(f"malformed term {chunk!r}")
            if factor.isdigit():
                coeff *= int(factor)
                continue
            name, _, e = factor.partition("^")
            if not e:
                e = "1"
            if not e.isdigit():
                raise ValueError(f"bad exponent in {factor!r}")
            m += int(e) << var_shift(name)
        acc[m] = acc.get(m, 0) + coeff
    if p is None:
        return IntPoly(acc)
    return ModPoly(acc, p)
