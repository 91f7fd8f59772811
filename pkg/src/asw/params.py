"""Group parameters (p, a, b) or the H flag."""

from __future__ import annotations

import warnings
from dataclasses import dataclass

from .catalog import TABLE_P4, CatalogRow, find_row
from .polyring import Prime, quadratic_nonresidue

__all__ = ["GroupParams", "InvalidParams"]


class InvalidParams(ValueError):
    pass


@dataclass(frozen=True)
class GroupParams:
    """``kind`` is "p3" (a only), "p4" (a and b) or "H".

    Degree-p^3 parameters may be arbitrary residues.  Degree-p^4 parameters
    must have a_i, b0, b1, b3 in {0, 1}, b2 in {0, 1, alpha} and a1*b3 = 0.
    In strict mode the (a, b) pair must also be one of the catalog rows.
    """

    p: int
    kind: str
    a: tuple[int, int] = (0, 0)
    b: tuple[int, int, int, int] = (0, 0, 0, 0)
    label: str | None = None

    @classmethod
    def degree_p3(cls, p: int, a0: int, a1: int, label: str | None = None) -> "GroupParams":
        p = Prime(p)
        return cls(int(p), "p3", (a0 % p, a1 % p), (0, 0, 0, 0), label)

    @classmethod
    def degree_p4(cls, p: int, a, b, strict: bool = True, label: str | None = None) -> "GroupParams":
        p = Prime(p)
        alpha = quadratic_nonresidue(p)
        a = tuple(int(v) for v in a)
        b = tuple(alpha if v in ("alpha", "a") else int(v) for v in b)
        if len(a) != 2 or len(b) != 4:
            raise InvalidParams("a needs 2 entries and b needs 4")
        if any(v not in (0, 1) for v in a):
            raise InvalidParams("a0, a1 must be 0 or 1")
        if any(b[j] not in (0, 1) for j in (0, 1, 3)):
            raise InvalidParams("b0, b1, b3 must be 0 or 1")
        if b[2] not in (0, 1, alpha):
            raise InvalidParams(f"b2 must be 0, 1 or the non-residue {alpha}")
        if a[1] * b[3] != 0:
            raise InvalidParams("a1*b3 must be 0")
        known = {(r.a, r.resolved_b(p)) for r in TABLE_P4 if r.kind == "p4"}
        if (a, b) not in known:
            if strict:
                raise InvalidParams(f"a={a}, b={b} is not a catalog row")
            warnings.warn(f"a={a}, b={b} is outside the catalog", stacklevel=2)
        return cls(int(p), "p4", a, b, label)

    @classmethod
    def group_h(cls, p: int) -> "GroupParams":
        return cls(int(Prime(p)), "H", (0, 1), (0, 0, 0, 0), "(vi)")

    @classmethod
    def from_row(cls, row: CatalogRow | str, p: int) -> "GroupParams":
        if isinstance(row, str):
            row = find_row(row, p)
        if row.kind == "H":
            return cls.group_h(p)
        if row.kind == "p3":
            return cls.degree_p3(p, *row.a, label=row.key)
        return cls.degree_p4(p, row.a, row.resolved_b(p), label=row.key)

    @property
    def order(self) -> int:
        return self.p**3 if self.kind == "p3" else self.p**4

    @property
    def n_gens(self) -> int:
        return 3 if self.kind == "p3" else 4

    def to_json(self) -> dict:
        out = {"p": self.p, "kind": self.kind, "label": self.label}
        if self.kind != "H":
            out["a"] = list(self.a)
        if self.kind == "p4":
            out["b"] = list(self.b)
        return out

    def __str__(self) -> str:
        if self.kind == "H":
            return f"H, p={self.p}"
        if self.kind == "p3":
            return f"a={self.a}, p={self.p}"
        return f"a={self.a}, b={self.b}, p={self.p}"
