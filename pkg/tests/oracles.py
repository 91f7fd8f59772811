"""Independent constructions of small p-groups, used as test oracles."""

import itertools

from asw.groups import FiniteGroup


def group_from(elements, mul, gens, identity) -> FiniteGroup:
    elements = list(elements)
    index = {e: k for k, e in enumerate(elements)}
    table = [[index[mul(x, y)] for y in elements] for x in elements]
    return FiniteGroup(table, [index[g] for g in gens], index[identity], labels=elements)


def heisenberg(p: int) -> FiniteGroup:
    """Upper unitriangular 3x3 matrices over F_p, stored as (a, b, c)."""

    def mul(x, y):
        return ((x[0] + y[0]) % p, (x[1] + y[1]) % p, (x[2] + y[2] + x[0] * y[1]) % p)

    elems = itertools.product(range(p), repeat=3)
    return group_from(elems, mul, [(1, 0, 0), (0, 1, 0)], (0, 0, 0))


def metacyclic(p: int, n: int, m: int, r: int) -> FiniteGroup:
    """C_{p^n} x| C_{p^m} with the generator of the top acting by i -> r*i."""
    N, M = p**n, p**m

    def mul(x, y):
        return ((x[0] + pow(r, x[1], N) * y[0]) % N, (x[1] + y[1]) % M)

    elems = itertools.product(range(N), range(M))
    return group_from(elems, mul, [(1, 0), (0, 1)], (0, 0))


def cyclic(n: int) -> FiniteGroup:
    return group_from(range(n), lambda x, y: (x + y) % n, [1], 0)


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    elems = list(itertools.product(range(G.n), range(H.n)))

    def mul(x, y):
        return (G.table[x[0]][y[0]], H.table[x[1]][y[1]])

    gens = [(g, H.identity) for g in G.gens] + [(G.identity, h) for h in H.gens]
    return group_from(elems, mul, gens, (G.identity, H.identity))
