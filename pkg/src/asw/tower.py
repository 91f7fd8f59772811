"""Triangular Artin-Schreier quotient rings and their endomorphisms.

A tower over the generic base F_p[b1..b4] is the ring

    F_p[b][x_i1, ..., x_in] / (x_ij^p - x_ij - W_j)

where each right-hand side W_j only mentions earlier tower variables.  Normal
forms have every x-degree below p; they are reached by rewriting
x^e -> x^(e-p) * (x + W), top variable first.  The b's are free.

Internally everything works on ``dict[int, int]`` term maps keyed by packed
monomials; TowerElem wraps a normalized ModPoly for the public surface.
"""

from __future__ import annotations

import json
from typing import Iterable, Sequence

from .polyring import (
    MAX_EXPONENT,
    X_VARS,
    ModPoly,
    _max_field,
    Prime,
    parse_poly,
    var_shift,
)

__all__ = [
    "TowerError",
    "TowerMismatch",
    "CertificateError",
    "OrderError",
    "TowerSpec",
    "TowerElem",
    "Endo",
    "normalize",
    "wp",
    "apply",
    "compose",
    "trace",
    "minus_one_power",
]

_MASK = MAX_EXPONENT
_X_MASK = sum(_MASK << var_shift(v) for v in X_VARS)


class TowerError(ValueError):
    pass


class TowerMismatch(TowerError):
    pass


class CertificateError(TowerError):
    """An Endo image violates wp(u_i) = W_i(u)."""


class OrderError(TowerError):
    pass


class TowerSpec:
    """Ordered relations wp(x_i) = W_i over a prime p.

    Right-hand sides are normalized against the preceding relations on
    construction, so ``rhs`` is always in normal form.
    """

    def __init__(self, p: int, relations: Sequence[tuple[str, ModPoly]]):
        self.p = int(Prime(p))
        self.vars: tuple[str, ...] = tuple(v for v, _ in relations)
        if len(set(self.vars)) != len(self.vars):
            raise TowerError("tower variables must be distinct")
        for v in self.vars:
            if v not in X_VARS:
                raise TowerError(f"{v!r} is not an x-variable")
        self.shifts = tuple(var_shift(v) for v in self.vars)
        self._allowed = 0
        self._pow_cache: dict[tuple[int, int], dict[int, int]] = {}
        self._rhs: list[dict[int, int]] = []
        rhs_polys = []
        for level, (v, w) in enumerate(relations):
            if not isinstance(w, ModPoly):
                w = ModPoly.const(int(w), self.p)
            if w.p != self.p:
                raise TowerError(f"relation for {v} is over F_{w.p}, tower is over F_{self.p}")
            for u in w.variables():
                if u in X_VARS and u not in self.vars[:level]:
                    raise TowerError(f"W for {v} mentions {u}, which is not an earlier tower variable")
            terms = self._reduce(dict(w.terms))
            self._rhs.append(terms)
            rhs_polys.append(ModPoly._from_clean(terms, self.p))
            self._allowed |= _MASK << self.shifts[level]
        self.rhs: tuple[ModPoly, ...] = tuple(rhs_polys)
        self._key = (int(self.p), tuple((v, frozenset(t.items())) for v, t in zip(self.vars, self._rhs)))

    # -- identity ---------------------------------------------------------
    def __eq__(self, other) -> bool:
        return isinstance(other, TowerSpec) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return f"TowerSpec(p={self.p}, vars={self.vars})"

    @property
    def relations(self) -> list[tuple[str, ModPoly]]:
        return list(zip(self.vars, self.rhs))

    def prefix(self, n: int) -> "TowerSpec":
        return TowerSpec(self.p, self.relations[:n])

    def restrict(self, variables: Iterable[str]) -> "TowerSpec":
        keep = set(variables)
        return TowerSpec(self.p, [(v, w) for v, w in self.relations if v in keep])

    # -- normal forms -----------------------------------------------------
    def _xpow(self, level: int, e: int) -> dict[int, int]:
        """Normal form of x_level^e for e >= p."""
        key = (level, e)
        hit = self._pow_cache.get(key)
        if hit is not None:
            return hit
        s = self.shifts[level]
        base = (e - self.p) << s
        terms = {base + (1 << s): 1}
        for m, c in self._rhs[level].items():
            k = base + m
            terms[k] = terms.get(k, 0) + c
        out = self._reduce(terms)
        self._pow_cache[key] = out
        return out

    def _reduce(self, terms: dict[int, int]) -> dict[int, int]:
        p = self.p
        for level in range(len(self._rhs) - 1, -1, -1):
            s = self.shifts[level]
            if all(((m >> s) & _MASK) < p for m in terms):
                continue
            out: dict[int, int] = {}
            get = out.get
            for m, c in terms.items():
                e = (m >> s) & _MASK
                if e < p:
                    out[m] = get(m, 0) + c
                    continue
                rest = m - (e << s)
                for m2, c2 in self._xpow(level, e).items():
                    k = rest + m2
                    out[k] = get(k, 0) + c * c2
            terms = out
        return {m: c % p for m, c in terms.items() if c % p}

    def _mul(self, a: dict[int, int], b: dict[int, int]) -> dict[int, int]:
        if len(a) < len(b):
            a, b = b, a
        out: dict[int, int] = {}
        get = out.get
        for m2, c2 in b.items():
            for m1, c1 in a.items():
                k = m1 + m2
                out[k] = get(k, 0) + c1 * c2
        return self._reduce(out)

    def check_variables(self, f: ModPoly) -> None:
        acc = 0
        for m in f.terms:
            acc |= m
        stray = acc & _X_MASK & ~self._allowed
        if stray:
            names = [v for v in X_VARS if (stray >> var_shift(v)) & _MASK]
            raise TowerError(f"variables {names} are not in the tower")

    def elem(self, f: ModPoly | int | str) -> "TowerElem":
        if isinstance(f, str):
            f = parse_poly(f, self.p)
        if isinstance(f, int):
            f = ModPoly.const(f, self.p)
        if f.p != self.p:
            raise TowerMismatch(f"polynomial over F_{f.p} in a tower over F_{self.p}")
        self.check_variables(f)
        return TowerElem(self, self._reduce(dict(f.terms)))

    def gen(self, var: str) -> "TowerElem":
        if var not in self.vars:
            raise TowerError(f"{var!r} is not a tower variable")
        return TowerElem(self, {1 << var_shift(var): 1})

    def zero(self) -> "TowerElem":
        return TowerElem(self, {})

    def one(self) -> "TowerElem":
        return TowerElem(self, {0: 1})

    def identity(self) -> "Endo":
        return Endo(self, [self.gen(v) for v in self.vars], check=False)

    # -- serialization ----------------------------------------------------
    def to_json(self) -> dict:
        return {
            "p": int(self.p),
            "relations": [{"var": v, "rhs": str(w)} for v, w in self.relations],
        }

    @classmethod
    def from_json(cls, data: dict | str) -> "TowerSpec":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            p = Prime(data["p"])
            rels = [(r["var"], parse_poly(r["rhs"], p)) for r in data["relations"]]
        except (KeyError, TypeError) as exc:
            raise TowerError(f"malformed tower description: {exc}") from exc
        return cls(p, rels)

    def to_text(self) -> str:
        lines = [f"p = {self.p}"]
        lines += [f"wp({v}) = {w}" for v, w in self.relations]
        return "\n".join(lines)


class TowerElem:
    """An element of a tower ring, always held in normal form."""

    __slots__ = ("tower", "terms", "_hash")

    def __init__(self, tower: TowerSpec, terms: dict[int, int]):
        self.tower = tower
        self.terms = terms
        self._hash = None

    @property
    def value(self) -> ModPoly:
        return ModPoly._from_clean(self.terms, self.tower.p)

    def _other(self, other) -> dict[int, int]:
        if isinstance(other, TowerElem):
            if other.tower is not self.tower and other.tower != self.tower:
                raise TowerMismatch("elements of different towers")
            return other.terms
        if isinstance(other, int):
            c = other % self.tower.p
            return {0: c} if c else {}
        if isinstance(other, ModPoly):
            return self.tower.elem(other).terms
        raise TypeError(f"cannot combine TowerElem with {type(other).__name__}")

    def __add__(self, other) -> "TowerElem":
        p = self.tower.p
        out = dict(self.terms)
        for m, c in self._other(other).items():
            c = (out.get(m, 0) + c) % p
            if c:
                out[m] = c
            else:
                out.pop(m, None)
        return TowerElem(self.tower, out)

    __radd__ = __add__

    def __neg__(self) -> "TowerElem":
        p = self.tower.p
        return TowerElem(self.tower, {m: p - c for m, c in self.terms.items()})

    def __sub__(self, other) -> "TowerElem":
        if isinstance(other, int):
            return self + (-other)
        return self + (-TowerElem(self.tower, self._other(other)))

    def __rsub__(self, other) -> "TowerElem":
        return (-self) + other

    def __mul__(self, other) -> "TowerElem":
        if isinstance(other, int):
            c = other % self.tower.p
            if not c:
                return self.tower.zero()
            return TowerElem(self.tower, {m: v * c % self.tower.p for m, v in self.terms.items()})
        return TowerElem(self.tower, self.tower._mul(self.terms, self._other(other)))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "TowerElem":
        if n < 0:
            raise ValueError("negative power")
        result = self.tower.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, ModPoly)):
            other = self.tower.elem(other)
        if not isinstance(other, TowerElem):
            return NotImplemented
        return self.tower == other.tower and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def is_zero(self) -> bool:
        return not self.terms

    def mentions_only(self, variables: Iterable[str]) -> bool:
        """True when the element lies in the subring generated by ``variables`` (and the b's)."""
        allowed = 0
        for v in variables:
            allowed |= _MASK << var_shift(v)
        acc = 0
        for m in self.terms:
            acc |= m
        return not (acc & _X_MASK & ~allowed)

    def __str__(self) -> str:
        return str(self.value)

    def __repr__(self) -> str:
        return f"TowerElem({self.value})"


def normalize(f: ModPoly, spec: TowerSpec) -> TowerElem:
    return spec.elem(f)


def wp(f: TowerElem) -> TowerElem:
    """f^p - f, with f^p taken through Frobenius on monomials."""
    t = f.tower
    p = t.p
    if max((_max_field(m) for m in f.terms), default=0) * p > _MASK:
        raise OverflowError("exponent too large for Frobenius")
    frob = t._reduce({m * p: c for m, c in f.terms.items()})
    return TowerElem(t, frob) - f


class Endo:
    """Ring endomorphism of a tower fixing the b's, given by generator images.

    With ``check=True`` (the default) construction verifies
    wp(u_i) == W_i(u_1, ..., u_{i-1}) for every tower variable and raises
    CertificateError otherwise.
    """

    __slots__ = ("tower", "images", "_mono_cache", "_pow_cache", "_key", "_hash")

    def __init__(self, tower: TowerSpec, images: Sequence[TowerElem], check: bool = True):
        if len(images) != len(tower.vars):
            raise TowerError(f"expected {len(tower.vars)} images, got {len(images)}")
        imgs = []
        for u in images:
            if isinstance(u, TowerElem):
                if u.tower is not tower and u.tower != tower:
                    raise TowerMismatch("image lives in a different tower")
                imgs.append(u if u.tower is tower else TowerElem(tower, u.terms))
            else:
                imgs.append(tower.elem(u))
        self.tower = tower
        self.images: tuple[TowerElem, ...] = tuple(imgs)
        self._mono_cache: dict[int, dict[int, int]] = {}
        self._pow_cache: dict[tuple[int, int], dict[int, int]] = {}
        self._key = None
        self._hash = None
        if check:
            bad = self.certificate_failures()
            if bad:
                raise CertificateError(f"image of {', '.join(bad)} does not satisfy its Artin-Schreier relation")

    @classmethod
    def from_map(cls, tower: TowerSpec, images: dict[str, TowerElem | ModPoly | str | int], check: bool = True) -> "Endo":
        """Images for the listed variables; unlisted tower variables are fixed."""
        out = []
        for v in tower.vars:
            u = images.get(v)
            out.append(tower.gen(v) if u is None else (u if isinstance(u, TowerElem) else tower.elem(u)))
        return cls(tower, out, check=check)

    # -- certificate ------------------------------------------------------
    def certificate_failures(self) -> list[str]:
        t = self.tower
        bad = []
        for level, v in enumerate(t.vars):
            lhs = wp(self.images[level])
            rhs = self.apply(TowerElem(t, t._rhs[level]))
            if lhs.terms != rhs.terms:
                bad.append(v)
        return bad

    def is_well_defined(self) -> bool:
        return not self.certificate_failures()

    # -- application ------------------------------------------------------
    def _image_power(self, level: int, e: int) -> dict[int, int]:
        key = (level, e)
        hit = self._pow_cache.get(key)
        if hit is None:
            u = self.images[level].terms
            hit = u if e == 1 else self.tower._mul(self._image_power(level, e - 1), u)
            self._pow_cache[key] = hit
        return hit

    def _image_monomial(self, m: int) -> dict[int, int]:
        hit = self._mono_cache.get(m)
        if hit is not None:
            return hit
        t = self.tower
        for level in range(len(t.shifts) - 1, -1, -1):
            s = t.shifts[level]
            e = (m >> s) & _MASK
            if e:
                rest = m - (e << s)
                if rest & _X_MASK:
                    hit = t._mul(self._image_monomial(rest), self._image_power(level, e))
                elif rest:
                    hit = {k + rest: c for k, c in self._image_power(level, e).items()}
                else:
                    hit = self._image_power(level, e)
                break
        else:
            hit = {m: 1}
        self._mono_cache[m] = hit
        return hit

    def _apply_terms(self, terms: dict[int, int]) -> dict[int, int]:
        out: dict[int, int] = {}
        get = out.get
        for m, c in terms.items():
            for k, v in self._image_monomial(m).items():
                out[k] = get(k, 0) + c * v
        p = self.tower.p
        return {k: v % p for k, v in out.items() if v % p}

    def apply(self, f: TowerElem) -> TowerElem:
        if not isinstance(f, TowerElem):
            f = self.tower.elem(f)
        elif f.tower is not self.tower and f.tower != self.tower:
            raise TowerMismatch("element and endomorphism belong to different towers")
        return TowerElem(self.tower, self._apply_terms(f.terms))

    __call__ = apply

    def compose(self, other: "Endo") -> "Endo":
        """self o other: x_i -> self(other(x_i))."""
        if other.tower is not self.tower and other.tower != self.tower:
            raise TowerMismatch("endomorphisms of different towers")
        return Endo(self.tower, [self.apply(u) for u in other.images], check=False)

    def __mul__(self, other: "Endo") -> "Endo":
        return self.compose(other)

    def __pow__(self, n: int) -> "Endo":
        if n < 0:
            raise ValueError("negative power")
        result = self.tower.identity()
        for _ in range(n):
            result = self.compose(result)
        return result

    def is_identity(self) -> bool:
        return all(u.terms == {1 << s: 1} for u, s in zip(self.images, self.tower.shifts))

    def order(self, limit: int) -> int:
        g = self
        for k in range(1, limit + 1):
            if g.is_identity():
                return k
            g = self.compose(g)
        raise OrderError(f"order exceeds {limit}")

    # -- identity ---------------------------------------------------------
    @property
    def key(self):
        if self._key is None:
            self._key = tuple(frozenset(u.terms.items()) for u in self.images)
        return self._key

    def __eq__(self, other) -> bool:
        if not isinstance(other, Endo):
            return NotImplemented
        return self.tower == other.tower and self.key == other.key

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.key)
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join(f"{v} -> {u}" for v, u in zip(self.tower.vars, self.images))
        return f"Endo({body})"

    def to_json(self) -> dict:
        return {v: str(u) for v, u in zip(self.tower.vars, self.images)}


def apply(e: Endo, f: TowerElem) -> TowerElem:
    return e.apply(f)


def compose(*endos: Endo) -> Endo:
    """Left-to-right product: compose(a, b, c) = a o b o c."""
    if not endos:
        raise ValueError("nothing to compose")
    result = endos[-1]
    for e in reversed(endos[:-1]):
        result = e.compose(result)
    return result


def trace(e: Endo, n: int, f: TowerElem) -> TowerElem:
    """Sum of e^k(f) for k < n, after checking e^n is the identity."""
    g = e
    for _ in range(n - 1):
        g = e.compose(g)
    if not g.is_identity():
        raise OrderError(f"endomorphism does not have order dividing {n}")
    total = f
    cur = f
    for _ in range(n - 1):
        cur = e.apply(cur)
        total = total + cur
    return total


def minus_one_power(e: Endo, k: int, f: TowerElem) -> TowerElem:
    """(e - 1)^k f by repeated apply-and-subtract."""
    for _ in range(k):
        f = e.apply(f) - f
    return f
