"""Abstract p-groups: polycyclic presentations, invariants and isomorphism search.

PresGroup multiplies exponent vectors by collection.  FiniteGroup is the
common currency for invariants and isomorphism testing: elements are
indices 0..n-1 with a full multiplication table, built either from a
PresGroup or from any right action of generators (e.g. a realized Galois
group of tower automorphisms).
"""

from __future__ import annotations

import itertools
from collections import Counter, deque
from dataclasses import dataclass
from typing import Hashable, Sequence

from .catalog import ALL_ROWS, CatalogRow, find_row, rows_for
from .params import GroupParams
from .polyring import Prime

__all__ = [
    "PresGroup",
    "FiniteGroup",
    "SearchBudgetExceeded",
    "IsoResult",
    "presentation",
    "invariants",
    "are_isomorphic",
    "catalog_lookup",
    "catalog_group",
    "classify_group",
    "abelian_type",
    "describe_abelian",
]

Elem = tuple[int, ...]


class SearchBudgetExceeded(RuntimeError):
    pass


class PresGroup:
    """Polycyclic presentation with generators g_1..g_n of relative order p.

    ``powers[i]`` is the exponent vector of g_i^p and ``conjugates[(j, i)]``
    (j > i) is the tail t in g_j g_i = g_i g_j t; both may only involve
    generators after g_j (resp. g_i).  Elements are exponent vectors
    (e_1, ..., e_n), read as g_1^e_1 ... g_n^e_n.
    """

    def __init__(
        self,
        p: int,
        n: int,
        powers: dict[int, Elem] | None = None,
        conjugates: dict[tuple[int, int], Elem] | None = None,
        name: str = "",
        relations: Sequence[tuple[str, list[int], list[int]]] = (),
    ):
        self.p = int(Prime(p))
        self.n = n
        zero = (0,) * n
        self.powers = {i: tuple((powers or {}).get(i, zero)) for i in range(n)}
        self.conjugates = {k: tuple(v) for k, v in (conjugates or {}).items()}
        for i, w in self.powers.items():
            if any(w[: i + 1]):
                raise ValueError(f"power relation of g{i + 1} must involve later generators only")
        for (j, i), t in self.conjugates.items():
            if not j > i or any(t[: j + 1]):
                raise ValueError(f"conjugate relation ({j + 1},{i + 1}) is not polycyclic")
        self._power_words = {i: self._letters(w) for i, w in self.powers.items()}
        self._tail_words = {k: self._letters(t) for k, t in self.conjugates.items()}
        self.name = name
        self.relations = list(relations)
        self._finite: FiniteGroup | None = None

    # -- words ------------------------------------------------------------
    def _letters(self, e: Sequence[int]) -> list[int]:
        return [k for k in range(self.n) for _ in range(e[k])]

    def _collect(self, state: list[int], word: Sequence[int]) -> None:
        p, n = self.p, self.n
        stack = list(reversed(word))
        while stack:
            j = stack.pop()
            suffix = [(k, state[k]) for k in range(j + 1, n) if state[k]]
            for k, _ in suffix:
                state[k] = 0
            state[j] += 1
            pending: list[int] = []
            if state[j] == p:
                state[j] = 0
                pending.extend(self._power_words[j])
            for k, e in suffix:
                tail = self._tail_words.get((k, j), [])
                for _ in range(e):
                    pending.append(k)
                    pending.extend(tail)
            stack.extend(reversed(pending))

    def word(self, letters: Sequence[int]) -> Elem:
        state = [0] * self.n
        self._collect(state, letters)
        return tuple(state)

    # -- group operations -------------------------------------------------
    @property
    def identity(self) -> Elem:
        return (0,) * self.n

    def gen(self, i: int) -> Elem:
        return tuple(1 if k == i else 0 for k in range(self.n))

    @property
    def gens(self) -> list[Elem]:
        return [self.gen(i) for i in range(self.n)]

    def multiply(self, x: Elem, y: Elem) -> Elem:
        state = list(x)
        self._collect(state, self._letters(y))
        return tuple(state)

    def power(self, x: Elem, k: int) -> Elem:
        r = self.identity
        for _ in range(k):
            r = self.multiply(r, x)
        return r

    def order_of(self, x: Elem) -> int:
        k, y = 1, x
        while y != self.identity:
            y = self.multiply(y, x)
            k += 1
        return k

    def inverse(self, x: Elem) -> Elem:
        return self.power(x, self.order_of(x) - 1)

    def elements(self) -> list[Elem]:
        return list(itertools.product(range(self.p), repeat=self.n))

    def __len__(self) -> int:
        return self.p**self.n

    def relation_failures(self) -> list[str]:
        return [name for name, lhs, rhs in self.relations if self.word(lhs) != self.word(rhs)]

    def h_form(self, x: Elem) -> tuple[int, int]:
        """(e1, e2) with e1 in [0, p^3) for the 4-generator form of H."""
        p = self.p
        return (x[0] + p * x[2] + p * p * x[3], x[1])

    def consistency_failures(self) -> list[tuple]:
        """Associativity on the standard test words of a pc presentation."""
        p, n = self.p, self.n
        bad = []

        def check(u, v, w, tag):
            if self.multiply(self.multiply(u, v), w) != self.multiply(u, self.multiply(v, w)):
                bad.append(tag)

        g = self.gens
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    check(g[k], g[j], g[i], ("kji", k, j, i))
                gjp = self.power(g[j], p - 1)
                check(gjp, g[j], g[i], ("jpi", j, i))
                gip = self.power(g[i], p - 1)
                check(g[j], g[i], gip, ("jip", j, i))
            gip = self.power(g[i], p - 1)
            check(g[i], gip, g[i], ("ipi", i))
        return bad

    def to_finite(self) -> "FiniteGroup":
        if self._finite is None:
            elems = self.elements()
            index = {x: k for k, x in enumerate(elems)}
            right = [[index[self.multiply(x, g)] for x in elems] for g in self.gens]
            self._finite = FiniteGroup.from_right_action(right, index[self.identity], labels=elems, name=self.name)
        return self._finite


def presentation(params: GroupParams) -> PresGroup:
    """The presentation belonging to ``params`` in polycyclic form."""
    p = params.p
    if params.kind == "p3":
        a0, a1 = params.a
        return PresGroup(
            p,
            3,
            powers={0: (0, 0, a1)},
            conjugates={(1, 0): (0, 0, a0)},
            name=params.label or str(params),
            relations=[
                ("s1^p = s3^a1", [0] * p, [2] * a1),
                ("s2^p = 1", [1] * p, []),
                ("s3^p = 1", [2] * p, []),
                ("s3 s1 = s1 s3", [2, 0], [0, 2]),
                ("s3 s2 = s2 s3", [2, 1], [1, 2]),
                ("s2 s1 = s1 s2 s3^a0", [1, 0], [0, 1] + [2] * a0),
            ],
        )
    if params.kind == "p4":
        a0, a1 = params.a
        b0, b1, b2, b3 = params.b
        return PresGroup(
            p,
            4,
            powers={0: (0, 0, a1, b1), 1: (0, 0, 0, b2)},
            conjugates={(1, 0): (0, 0, a0, b0), (2, 0): (0, 0, 0, b3)},
            name=params.label or str(params),
            relations=[
                ("s1^p = s3^a1 s4^b1", [0] * p, [2] * a1 + [3] * b1),
                ("s2^p = s4^b2", [1] * p, [3] * b2),
                ("s3^p = 1", [2] * p, []),
                ("s4^p = 1", [3] * p, []),
                ("s4 s1 = s1 s4", [3, 0], [0, 3]),
                ("s4 s2 = s2 s4", [3, 1], [1, 3]),
                ("s4 s3 = s3 s4", [3, 2], [2, 3]),
                ("s3 s2 = s2 s3", [2, 1], [1, 2]),
                ("s3 s1 = s1 s3 s4^b3", [2, 0], [0, 2] + [3] * b3),
                ("s2 s1 = s1 s2 s3^a0 s4^b0", [1, 0], [0, 1] + [2] * a0 + [3] * b0),
            ],
        )
    # H with s3 = s1^p, s4 = s1^(p^2)
    return PresGroup(
        p,
        4,
        powers={0: (0, 0, 1, 0), 2: (0, 0, 0, 1)},
        conjugates={(1, 0): (0, 0, 0, 1)},
        name=params.label or "H",
        relations=[
            ("s1^(p^3) = 1", [0] * p**3, []),
            ("s2^p = 1", [1] * p, []),
            ("s2 s1 = s1^(1+p^2) s2", [1, 0], [0] * (1 + p * p) + [1]),
            ("s3 = s1^p", [2], [0] * p),
            ("s4 = s1^(p^2)", [3], [0] * (p * p)),
        ],
    )


class FiniteGroup:
    """A group on 0..n-1 given by its multiplication table and generators."""

    def __init__(self, table: list[list[int]], gens: Sequence[int], identity: int, labels: Sequence[Hashable] | None = None, name: str = ""):
        self.table = table
        self.gens = list(gens)
        self.identity = identity
        self.labels = list(labels) if labels is not None else list(range(len(table)))
        self.name = name
        n = len(table)
        self.n = n
        self._inv = [0] * n
        for x in range(n):
            row = table[x]
            for y in range(n):
                if row[y] == identity:
                    self._inv[x] = y
                    break
        self._orders: list[int] | None = None
        self._class_of: list[int] | None = None
        self._fingerprint: dict | None = None

    @classmethod
    def from_right_action(cls, right: Sequence[Sequence[int]], identity: int, labels=None, name: str = "") -> "FiniteGroup":
        """Build the table from the maps x -> x*g_j.

        Every element is reached from the identity by a word in the
        generators; x*y follows that word for y starting at x.
        """
        n = len(right[0])
        parent = [-1] * n
        via = [-1] * n
        order = [identity]
        seen = [False] * n
        seen[identity] = True
        q = deque([identity])
        while q:
            y = q.popleft()
            for j, r in enumerate(right):
                z = r[y]
                if not seen[z]:
                    seen[z] = True
                    parent[z], via[z] = y, j
                    order.append(z)
                    q.append(z)
        if len(order) != n:
            raise ValueError("generators do not reach every element")
        table = [[0] * n for _ in range(n)]
        for x in range(n):
            row = table[x]
            row[identity] = x
            for y in order[1:]:
                row[y] = right[via[y]][row[parent[y]]]
        gens = [right[j][identity] for j in range(len(right))]
        return cls(table, gens, identity, labels, name)

    def __len__(self) -> int:
        return self.n

    def mul(self, x: int, y: int) -> int:
        return self.table[x][y]

    def inv(self, x: int) -> int:
        return self._inv[x]

    def conj(self, x: int, g: int) -> int:
        """g^-1 x g."""
        t = self.table
        return t[t[self._inv[g]][x]][g]

    def commutator(self, x: int, y: int) -> int:
        t = self.table
        return t[t[self._inv[x]][self._inv[y]]][t[x][y]]

    @property
    def orders(self) -> list[int]:
        if self._orders is None:
            out = []
            for x in range(self.n):
                k, y = 1, x
                while y != self.identity:
                    y = self.table[y][x]
                    k += 1
                out.append(k)
            self._orders = out
        return self._orders

    def subgroup(self, gens: Sequence[int]) -> set[int]:
        seen = {self.identity}
        q = deque([self.identity])
        while q:
            x = q.popleft()
            for g in gens:
                y = self.table[x][g]
                if y not in seen:
                    seen.add(y)
                    q.append(y)
        return seen

    def center(self) -> list[int]:
        t = self.table
        return [x for x in range(self.n) if all(t[x][g] == t[g][x] for g in self.gens)]

    def is_abelian(self) -> bool:
        t = self.table
        return all(t[a][b] == t[b][a] for a in self.gens for b in self.gens)

    def derived_subgroup(self) -> set[int]:
        comms = {self.commutator(x, y) for x in range(self.n) for y in range(self.n)}
        return self.subgroup(sorted(comms))

    @property
    def class_of(self) -> list[int]:
        """Conjugacy class representative (smallest index) of each element."""
        if self._class_of is None:
            rep = [-1] * self.n
            for x in range(self.n):
                if rep[x] >= 0:
                    continue
                orbit = [x]
                rep[x] = x
                i = 0
                while i < len(orbit):
                    y = orbit[i]
                    i += 1
                    for g in self.gens:
                        z = self.conj(y, g)
                        if rep[z] < 0:
                            rep[z] = x
                            orbit.append(z)
            self._class_of = rep
        return self._class_of

    def class_sizes(self) -> list[int]:
        return sorted(Counter(self.class_of).values())

    def class_size(self, x: int) -> int:
        return Counter(self.class_of)[self.class_of[x]]

    def fingerprint(self) -> dict:
        if self._fingerprint is None:
            orders = self.orders
            self._fingerprint = {
                "order": self.n,
                "abelian": self.is_abelian(),
                "center_order": len(self.center()),
                "derived_order": len(self.derived_subgroup()),
                "exponent": max(orders),
                "order_histogram": sorted(Counter(orders).items()),
                "class_sizes": sorted(Counter(self.class_sizes()).items()),
            }
        return self._fingerprint


def invariants(G: PresGroup | FiniteGroup) -> dict:
    if isinstance(G, PresGroup):
        G = G.to_finite()
    return G.fingerprint()


@dataclass
class IsoResult:
    isomorphic: bool
    witness: dict[int, int] | None = None  # generator index of G -> element of H
    nodes: int = 0
    decided_by: str = "search"

    def __bool__(self) -> bool:
        return self.isomorphic


def _extend(G: FiniteGroup, H: FiniteGroup, gens: Sequence[int], images: Sequence[int]) -> dict[int, int] | None:
    """The homomorphism <gens> -> H sending gens to images, if it exists and is injective."""
    phi = {G.identity: H.identity}
    used = {H.identity}
    q = deque([G.identity])
    gt, ht = G.table, H.table
    while q:
        x = q.popleft()
        fx = phi[x]
        for g, h in zip(gens, images):
            y = gt[x][g]
            fy = ht[fx][h]
            known = phi.get(y)
            if known is None:
                if fy in used:
                    return None
                phi[y] = fy
                used.add(fy)
                q.append(y)
            elif known != fy:
                return None
    return phi


def are_isomorphic(
    G: PresGroup | FiniteGroup,
    H: PresGroup | FiniteGroup,
    node_budget: int = 2_000_000,
    use_fingerprint: bool = True,
) -> IsoResult:
    """Decide G ~ H by searching images of G's generators in H.

    Generators are assigned last-first, so each partial assignment covers
    the subgroup generated by a tail of the generator list, and is pruned
    unless it extends to an injective homomorphism on that subgroup.
    Candidate images must match the element order and conjugacy-class size
    of the generator they replace.
    """
    if isinstance(G, PresGroup):
        G = G.to_finite()
    if isinstance(H, PresGroup):
        H = H.to_finite()
    if len(G) != len(H):
        return IsoResult(False, decided_by="order")
    if use_fingerprint and G.fingerprint() != H.fingerprint():
        return IsoResult(False, decided_by="fingerprint")

    gens = G.gens
    k = len(gens)
    hcls = Counter(H.class_of)
    gcls = Counter(G.class_of)
    cands = []
    for g in gens:
        want = (G.orders[g], gcls[G.class_of[g]])
        cands.append([h for h in range(H.n) if (H.orders[h], hcls[H.class_of[h]]) == want])

    nodes = 0
    images = [0] * k

    def search(m: int) -> dict[int, int] | None:
        nonlocal nodes
        for h in cands[m]:
            nodes += 1
            if nodes > node_budget:
                raise SearchBudgetExceeded(f"isomorphism search exceeded {node_budget} nodes")
            images[m] = h
            phi = _extend(G, H, gens[m:], images[m:])
            if phi is None:
                continue
            if m == 0:
                return phi
            found = search(m - 1)
            if found is not None:
                return found
        return None

    phi = search(k - 1)
    if phi is None or len(phi) != len(G):
        return IsoResult(False, nodes=nodes)
    return IsoResult(True, {i: images[i] for i in range(k)}, nodes=nodes)


def catalog_lookup(key: str | GroupParams, p: int | None = None) -> CatalogRow:
    """Catalog row by label, or the row whose parameters equal ``key``."""
    if isinstance(key, GroupParams):
        for row in ALL_ROWS:
            if row.kind != key.kind or not row.applies_to(key.p):
                continue
            if row.kind == "H":
                return row
            if row.a == key.a and (row.kind == "p3" or row.resolved_b(key.p) == key.b):
                return row
        raise KeyError(f"no catalog row has parameters {key}")
    return find_row(key, p)


def catalog_group(row: CatalogRow | str, p: int) -> PresGroup:
    return presentation(GroupParams.from_row(row, p))


def abelian_type(G: FiniteGroup, p: int) -> list[int]:
    """Exponents k of the cyclic factors C_{p^k}, largest first (G abelian)."""
    orders = Counter(G.orders)
    # number of elements of order dividing p^k, as exponents of p
    counts = []
    k, total = 0, 0
    while total < G.n:
        total = sum(c for o, c in orders.items() if (p**k) % o == 0)
        counts.append(_log(total, p))
        k += 1
    # counts[k] = sum_i min(e_i, k); differences give the number of factors with e_i >= k
    ge = [counts[k] - counts[k - 1] for k in range(1, len(counts))]
    out = []
    for k in range(len(ge)):
        nxt = ge[k + 1] if k + 1 < len(ge) else 0
        out += [k + 1] * (ge[k] - nxt)
    return sorted(out, reverse=True)


def _log(n: int, p: int) -> int:
    k = 0
    while n > 1:
        n //= p
        k += 1
    return k


def describe_abelian(exps: list[int]) -> str:
    parts = []
    for e, c in sorted(Counter(exps).items(), reverse=True):
        base = "C_p" if e == 1 else f"C_{{p^{e}}}"
        parts.append(base if c == 1 else f"{base}^{c}")
    return " x ".join(parts)


def classify_group(G: FiniteGroup, p: int, node_budget: int = 2_000_000) -> tuple[CatalogRow | None, str]:
    """Best catalog match for G among rows applicable at p, with a description."""
    for row in rows_for(p):
        cand = catalog_group(row, p).to_finite()
        if len(cand) != len(G):
            continue
        if are_isomorphic(G, cand, node_budget=node_budget):
            return row, row.name
    if G.is_abelian():
        return None, f"abelian: {describe_abelian(abelian_type(G, p))}, outside catalog"
    return None, "no match"
