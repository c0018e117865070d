"""Finite groups as multiplication tables.

Groups enter the library only through their function coalgebras, but the
correspondence tests need the group-theoretic side computed on its own:
element orders, centers, quotients, and above all the maximal quotient
l-group, obtained here from the exponent-l central series (iterated
commutators with the whole group together with l-th powers).  A bundled
catalog covers every group of order at most 16, the five groups of order
27, and S4.
"""

from dataclasses import dataclass
from math import gcd


@dataclass(frozen=True)
class GroupTable:
    """Multiplication table on indices 0..order-1; table[a][b] = a*b.

    Construction validates the full group axioms: a latin square with an
    identity is associative only if it is an honest group.
    """

    order: int
    table: tuple
    identity: int

    def __post_init__(self):
        n = self.order
        if len(self.table) != n or any(len(r) != n for r in self.table):
            raise ValueError("multiplication table must be square")
        if any(x < 0 or x >= n for r in self.table for x in r):
            raise ValueError("table entries out of range")
        e = self.identity
        if not (0 <= e < n):
            raise ValueError("identity index out of range")
        for a in range(n):
            if self.table[e][a] != a or self.table[a][e] != a:
                raise ValueError("identity row/column is not the identity")
        for r in self.table:
            if len(set(r)) != n:
                raise ValueError("a row is not a permutation")
        for c in range(n):
            if len({r[c] for r in self.table}) != n:
                raise ValueError("a column is not a permutation")
        t = self.table
        for a in range(n):
            ta = t[a]
            for b in range(n):
                tab = t[ta[b]]
                tb = t[b]
                for c in range(n):
                    if tab[c] != ta[tb[c]]:
                        raise ValueError(f"not associative at {(a, b, c)}")

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.table[a].index(self.identity)

    def power(self, a: int, k: int) -> int:
        if k < 0:
            return self.power(self.inv(a), -k)
        out = self.identity
        for _ in range(k):
            out = self.table[out][a]
        return out

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.table[x][a]
            k += 1
        return k

    def is_abelian(self) -> bool:
        return all(
            self.table[a][b] == self.table[b][a]
            for a in range(self.order)
            for b in range(a)
        )

    def center(self) -> frozenset:
        return frozenset(
            z
            for z in range(self.order)
            if all(self.table[z][b] == self.table[b][z] for b in range(self.order))
        )

    def conjugacy_classes(self) -> list:
        seen = set()
        classes = []
        for a in range(self.order):
            if a in seen:
                continue
            orbit = {
                self.table[self.table[g][a]][self.inv(g)] for g in range(self.order)
            }
            seen |= orbit
            classes.append(frozenset(orbit))
        return classes

    def subgroup(self, seed) -> frozenset:
        """Closure of ``seed`` under multiplication (hence a subgroup)."""
        found = {self.identity} | set(seed)
        frontier = list(found)
        while frontier:
            fresh = []
            for a in frontier:
                for b in list(found):
                    for c in (self.table[a][b], self.table[b][a]):
                        if c not in found:
                            found.add(c)
                            fresh.append(c)
            frontier = fresh
        return frozenset(found)


# ---------------------------------------------------------------------------
# constructors


def cyclic(n: int) -> GroupTable:
    rows = tuple(tuple((a + b) % n for b in range(n)) for a in range(n))
    return GroupTable(n, rows, 0)


def direct_product(g: GroupTable, h: GroupTable) -> GroupTable:
    n = g.order * h.order
    idx = lambda a, b: a * h.order + b
    rows = [[0] * n for _ in range(n)]
    for a1 in range(g.order):
        for b1 in range(h.order):
            for a2 in range(g.order):
                for b2 in range(h.order):
                    rows[idx(a1, b1)][idx(a2, b2)] = idx(
                        g.table[a1][a2], h.table[b1][b2]
                    )
    return GroupTable(n, tuple(map(tuple, rows)), idx(g.identity, h.identity))


def metacyclic(m: int, n: int, k: int) -> GroupTable:
    """x^m = y^n = 1 with y x y^{-1} = x^k; elements x^i y^j."""
    if gcd(k, m) != 1 or pow(k, n, m) != 1 % m:
        raise ValueError("k must be a unit of order dividing n mod m")
    kpow = [pow(k, j, m) for j in range(n)]
    order = m * n
    rows = [[0] * order for _ in range(order)]
    for i1 in range(m):
        for j1 in range(n):
            for i2 in range(m):
                for j2 in range(n):
                    i = (i1 + i2 * kpow[j1]) % m
                    j = (j1 + j2) % n
                    rows[i1 * n + j1][i2 * n + j2] = i * n + j
    return GroupTable(order, tuple(map(tuple, rows)), 0)


def dihedral(n: int) -> GroupTable:
    """Symmetries of the n-gon, order 2n."""
    return metacyclic(n, 2, n - 1)


def dicyclic(n: int) -> GroupTable:
    """a^{2n} = 1, b^2 = a^n, b a b^{-1} = a^{-1}; order 4n.

    n = 2 is the quaternion group, n a power of 2 the generalized
    quaternion groups.
    """
    if n < 2:
        raise ValueError("dicyclic groups need n >= 2")
    order = 4 * n
    rows = [[0] * order for _ in range(order)]
    for i1 in range(2 * n):
        for j1 in range(2):
            for i2 in range(2 * n):
                for j2 in range(2):
                    i = (i1 + i2) % (2 * n) if j1 == 0 else (i1 - i2) % (2 * n)
                    if j1 and j2:
                        i = (i + n) % (2 * n)
                    j = (j1 + j2) % 2
                    rows[i1 * 2 + j1][i2 * 2 + j2] = i * 2 + j
    return GroupTable(order, tuple(map(tuple, rows)), 0)


def heisenberg(p: int) -> GroupTable:
    """Unitriangular 3x3 matrices over F_p, order p^3."""
    order = p**3
    idx = lambda a, b, c: (a * p + b) * p + c
    rows = [[0] * order for _ in range(order)]
    for a1 in range(p):
        for b1 in range(p):
            for c1 in range(p):
                for a2 in range(p):
                    for b2 in range(p):
                        for c2 in range(p):
                            rows[idx(a1, b1, c1)][idx(a2, b2, c2)] = idx(
                                (a1 + a2) % p, (b1 + b2) % p, (c1 + c2 + a1 * b2) % p
                            )
    return GroupTable(order, tuple(map(tuple, rows)), 0)


def central_product_16() -> GroupTable:
    """The order-16 group of signed Pauli operators i^p X^a Z^b."""
    idx = lambda p, a, b: p * 4 + a * 2 + b
    rows = [[0] * 16 for _ in range(16)]
    for p1 in range(4):
        for a1 in range(2):
            for b1 in range(2):
                for p2 in range(4):
                    for a2 in range(2):
                        for b2 in range(2):
                            rows[idx(p1, a1, b1)][idx(p2, a2, b2)] = idx(
                                (p1 + p2 + 2 * b1 * a2) % 4, a1 ^ a2, b1 ^ b2
                            )
    return GroupTable(16, tuple(map(tuple, rows)), 0)


def klein_by_c4() -> GroupTable:
    """(C2 x C2) : C4 with the generator swapping the two coordinates."""
    swap = lambda v, c: ((v >> 1) | ((v & 1) << 1)) if c % 2 else v
    idx = lambda v, c: v * 4 + c
    rows = [[0] * 16 for _ in range(16)]
    for v1 in range(4):
        for c1 in range(4):
            for v2 in range(4):
                for c2 in range(4):
                    rows[idx(v1, c1)][idx(v2, c2)] = idx(
                        v1 ^ swap(v2, c1), (c1 + c2) % 4
                    )
    return GroupTable(16, tuple(map(tuple, rows)), 0)


def from_permutations(gens) -> GroupTable:
    """Closure of permutation generators (tuples over a common range)."""
    if not gens:
        raise ValueError("at least one generator is required")
    degree = len(gens[0])
    if any(len(g) != degree or sorted(g) != list(range(degree)) for g in gens):
        raise ValueError("generators must be permutations of one range")
    ident = tuple(range(degree))
    elems = [ident]
    index = {ident: 0}
    frontier = [ident]
    while frontier:
        fresh = []
        for a in frontier:
            for g in gens:
                c = tuple(a[g[i]] for i in range(degree))
                if c not in index:
                    index[c] = len(elems)
                    elems.append(c)
                    fresh.append(c)
        frontier = fresh
    n = len(elems)
    rows = [
        [index[tuple(a[b[i]] for i in range(degree))] for b in elems] for a in elems
    ]
    return GroupTable(n, tuple(map(tuple, rows)), 0)


def from_rows(rows) -> GroupTable:
    """Table rows with the identity located automatically."""
    n = len(rows)
    ident = [i for i, r in enumerate(rows) if list(r) == list(range(n))]
    if len(ident) != 1:
        raise ValueError("no unique identity row")
    return GroupTable(n, tuple(tuple(r) for r in rows), ident[0])


# ---------------------------------------------------------------------------
# quotients


def quotient_table(g: GroupTable, normal: frozenset):
    """Quotient group on cosets; returns (table, coset index per element)."""
    if g.identity not in normal or g.subgroup(normal) != frozenset(normal):
        raise ValueError("not a subgroup")
    for a in range(g.order):
        ai = g.inv(a)
        for x in normal:
            if g.mul(g.mul(a, x), ai) not in normal:
                raise ValueError("subgroup is not normal")
    coset_of = [-1] * g.order
    reps = []
    for a in range(g.order):
        if coset_of[a] >= 0:
            continue
        for x in normal:
            coset_of[g.mul(a, x)] = len(reps)
        reps.append(a)
    k = len(reps)
    rows = [[coset_of[g.mul(reps[i], reps[j])] for j in range(k)] for i in range(k)]
    return GroupTable(k, tuple(map(tuple, rows)), coset_of[g.identity]), tuple(coset_of)


def maximal_l_quotient(g: GroupTable, l: int):
    """Largest quotient that is an l-group, with its kernel.

    The kernel is the stable term of the series G, <[G_i, G], G_i^l>, ...;
    each successive quotient is central elementary abelian, so the series
    bottoms out exactly at the smallest normal subgroup with l-power index.
    """
    cur = frozenset(range(g.order))
    while True:
        gens = set()
        for a in cur:
            gens.add(g.power(a, l))
            ai = g.inv(a)
            for b in range(g.order):
                gens.add(g.mul(g.mul(ai, g.inv(b)), g.mul(a, b)))
        nxt = g.subgroup(gens)
        if nxt == cur:
            break
        cur = nxt
    quot, coset_of = quotient_table(g, cur)
    return quot, cur, coset_of


def subgroups(g: GroupTable) -> list:
    """Every subgroup, as frozensets ordered by size."""
    found = {g.subgroup({x}) for x in range(g.order)}
    frontier = set(found)
    while frontier:
        fresh = set()
        for h in frontier:
            for c in list(found):
                j = g.subgroup(h | c)
                if j not in found:
                    found.add(j)
                    fresh.add(j)
        frontier = fresh
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def normal_subgroups(g: GroupTable) -> list:
    out = []
    for h in subgroups(g):
        if all(
            g.mul(g.mul(a, x), g.inv(a)) in h for a in range(g.order) for x in h
        ):
            out.append(h)
    return out


def signature(g: GroupTable) -> tuple:
    """Isomorphism-invariant fingerprint, strong enough to separate the
    bundled catalog: element orders, center orders, derived-subgroup size,
    class count, and the size of the image of squaring."""
    orders = tuple(sorted(g.element_order(a) for a in range(g.order)))
    zorders = tuple(sorted(g.element_order(z) for z in g.center()))
    derived = g.subgroup(
        {
            g.mul(g.mul(g.inv(a), g.inv(b)), g.mul(a, b))
            for a in range(g.order)
            for b in range(g.order)
        }
    )
    squares = len({g.mul(a, a) for a in range(g.order)})
    return (orders, zorders, len(derived), len(g.conjugacy_classes()), squares)


# ---------------------------------------------------------------------------
# catalog


def _abelian(*ns):
    out = cyclic(ns[0])
    for n in ns[1:]:
        out = direct_product(out, cyclic(n))
    return out


def catalog() -> dict:
    """All groups of order <= 16, the five groups of order 27, and S4."""
    groups = {
        "C1": cyclic(1),
        "C2": cyclic(2),
        "C3": cyclic(3),
        "C4": cyclic(4),
        "C2xC2": _abelian(2, 2),
        "C5": cyclic(5),
        "C6": cyclic(6),
        "S3": dihedral(3),
        "C7": cyclic(7),
        "C8": cyclic(8),
        "C4xC2": _abelian(4, 2),
        "C2xC2xC2": _abelian(2, 2, 2),
        "D4": dihedral(4),
        "Q8": dicyclic(2),
        "C9": cyclic(9),
        "C3xC3": _abelian(3, 3),
        "C10": cyclic(10),
        "D5": dihedral(5),
        "C11": cyclic(11),
        "C12": cyclic(12),
        "C6xC2": _abelian(6, 2),
        "D6": dihedral(6),
        "A4": from_permutations([(1, 2, 0, 3), (1, 0, 3, 2)]),
        "Dic3": dicyclic(3),
        "C13": cyclic(13),
        "C14": cyclic(14),
        "D7": dihedral(7),
        "C15": cyclic(15),
        "C16": cyclic(16),
        "C8xC2": _abelian(8, 2),
        "C4xC4": _abelian(4, 4),
        "C4xC2xC2": _abelian(4, 2, 2),
        "C2xC2xC2xC2": _abelian(2, 2, 2, 2),
        "D8": dihedral(8),
        "SD16": metacyclic(8, 2, 3),
        "Q16": dicyclic(4),
        "M16": metacyclic(8, 2, 5),
        "D4xC2": direct_product(dihedral(4), cyclic(2)),
        "Q8xC2": direct_product(dicyclic(2), cyclic(2)),
        "C4:C4": metacyclic(4, 4, 3),
        "C2^2:C4": klein_by_c4(),
        "Pauli16": central_product_16(),
        "C27": cyclic(27),
        "C9xC3": _abelian(9, 3),
        "C3xC3xC3": _abelian(3, 3, 3),
        "He3": heisenberg(3),
        "C9:C3": metacyclic(9, 3, 4),
        "S4": from_permutations([(1, 2, 3, 0), (1, 0, 2, 3)]),
    }
    return groups


def is_l_group(g: GroupTable, l: int) -> bool:
    n = g.order
    while n % l == 0:
        n //= l
    return n == 1
