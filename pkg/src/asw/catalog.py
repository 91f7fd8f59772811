"""Catalog of the non-cyclic groups of order p^3 and the non-Abelian groups
of order p^4 handled here, with Burnside and James labels.

``b2`` may be the string ``"alpha"``; it resolves to the least quadratic
non-residue mod p.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .polyring import Prime, quadratic_nonresidue

__all__ = ["CatalogRow", "TABLE_P4", "TABLE_P3", "ALL_ROWS", "ALPHA", "UnknownLabel", "rows_for", "find_row"]

ALPHA = "alpha"


class UnknownLabel(KeyError):
    pass


@dataclass(frozen=True)
class CatalogRow:
    key: str
    kind: str  # "p3", "p4" or "H"
    name: str
    a: tuple[int, int] | None = None
    b: tuple | None = None
    burnside: str | None = None
    james: tuple[str, str] | None = None  # (label for p = 3, label for p > 3)
    translation: tuple[str, ...] = ()  # images of sigma_1..sigma_4 in Burnside's P, Q, R, S
    applies: str = "all"  # "all", "p=3" or "p>3"
    aliases: tuple[str, ...] = field(default=())

    def applies_to(self, p: int) -> bool:
        if self.applies == "p=3":
            return p == 3
        if self.applies == "p>3":
            return p > 3
        return True

    def resolved_b(self, p: int) -> tuple[int, int, int, int] | None:
        if self.b is None:
            return None
        alpha = quadratic_nonresidue(p)
        return tuple(alpha if v == ALPHA else v for v in self.b)

    def james_label(self, p: int) -> str | None:
        if self.james is None:
            return None
        return self.james[0] if p == 3 else self.james[1]

    def to_json(self, p: int | None = None) -> dict:
        out = {
            "key": self.key,
            "kind": self.kind,
            "name": self.name,
            "burnside": self.burnside,
            "james": {"p=3": self.james[0], "p>3": self.james[1]} if self.james else None,
            "translation": list(self.translation),
            "applies": self.applies,
            "a": list(self.a) if self.a is not None else None,
            "b": list(self.b) if self.b is not None else None,
        }
        if p is not None:
            p = Prime(p)
            out["p"] = int(p)
            out["b_resolved"] = list(self.resolved_b(p)) if self.b is not None else None
            out["james_for_p"] = self.james_label(p)
            out["applies_to_p"] = self.applies_to(p)
        return out


def _p4(key, james, translation, a, b, applies="all", aliases=()):
    burnside = key.split(",")[0]
    return CatalogRow(
        key=key,
        kind="p4",
        name=burnside,
        a=a,
        b=b,
        burnside=burnside,
        james=james if isinstance(james, tuple) else (james, james),
        translation=translation,
        applies=applies,
        aliases=aliases,
    )


# Burnside's generator translation: sigma_1, sigma_2, sigma_3, sigma_4
TABLE_P4: tuple[CatalogRow, ...] = (
    _p4("(xiv)", "phi_2(1^4)", ("S", "R", "Q", "P"), (0, 0), (1, 0, 0, 0)),
    _p4("(ix)", "phi_2(211)a", ("P", "R^-1", "Q", "P^p"), (0, 0), (1, 1, 0, 0)),
    _p4("(vii)", "phi_2(211)b", ("R", "P", "Q", "P^p"), (0, 0), (0, 0, 1, 1)),
    _p4("(xv),p=3", "phi_3(1^4)", ("R", "P^-1", "Q^-1", "P^p"), (1, 0), (0, 0, ALPHA, 1), applies="p=3"),
    _p4("(xv),p>3", "phi_3(1^4)", ("S", "R", "Q", "P"), (1, 0), (0, 0, 0, 1), applies="p>3"),
    _p4("(x)", "phi_2(211)", ("P", "R", "Q^-1", "P^p"), (1, 0), (0, 1, 0, 0)),
    _p4("(xi)", ("phi_3(211)b_1", "phi_3(211)a"), ("P", "R", "Q^-1", "P^p"), (1, 0), (0, 1, 0, 1)),
    _p4("(xii)", ("phi_3(211)b_nu", "phi_3(211)b_1"), ("P", "R", "Q^-1", "P^p"), (1, 0), (0, 1, 1, 1)),
    _p4("(xiii)", ("phi_3(211)a", "phi_3(211)b_nu"), ("P", "R", "Q^-1", "P^p"), (1, 0), (0, 1, ALPHA, 1)),
    _p4("(viii)", "phi_2(22)", ("P", "Q^-1", "P^p", "Q^-p"), (1, 1), (0, 0, 1, 0)),
    CatalogRow(
        key="(vi)",
        kind="H",
        name="(vi)",
        burnside="(vi)",
        james=("phi_2(31)", "phi_2(31)"),
        translation=("P", "Q^-1", "P^p", "P^(p^2)"),
        aliases=("H",),
    ),
)

TABLE_P3: tuple[CatalogRow, ...] = (
    CatalogRow(key="C_p^3", kind="p3", name="C_p^3", a=(0, 0)),
    CatalogRow(key="C_p^2xC_p", kind="p3", name="C_{p^2} x C_p", a=(0, 1), aliases=("C_{p^2}xC_p",)),
    CatalogRow(key="H(p^3)", kind="p3", name="H(p^3)", a=(1, 0)),
    CatalogRow(key="M(p^3)", kind="p3", name="M(p^3)", a=(1, 1)),
)

ALL_ROWS = TABLE_P4 + TABLE_P3


def _norm(label: str) -> str:
    return label.replace(" ", "").lower()


def rows_for(p: int, kind: str | None = None) -> list[CatalogRow]:
    """Rows applicable at p, in catalog order."""
    return [r for r in ALL_ROWS if r.applies_to(p) and (kind is None or r.kind == kind or (kind == "p4" and r.kind == "H"))]


def find_row(label: str, p: int | None = None) -> CatalogRow:
    """Look a row up by key or alias.  A bare ``(xv)`` picks the variant for p."""
    want = _norm(label)
    if want == "(xv)":
        if p is None:
            raise UnknownLabel("(xv) needs p to pick its variant")
        want = "(xv),p=3" if p == 3 else "(xv),p>3"
    for r in ALL_ROWS:
        if _norm(r.key) == want or want in (_norm(a) for a in r.aliases):
            return r
    raise UnknownLabel(f"unknown catalog label {label!r}")
