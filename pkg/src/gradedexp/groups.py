"""Finite groups as dense Cayley tables.

Elements are integer indices 0..order-1 with the identity fixed at index 0.
Construction validates the table (Latin square, identity, inverses) and, for
orders up to MAX_CHECKED_ORDER, checks associativity exhaustively; larger
tables are rejected outright since nothing in this library needs them.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

MAX_CHECKED_ORDER = 64


class GroupError(ValueError):
    pass


class GroupTable:
    """A finite group given by its multiplication table.

    mul[g][h] is the index of g*h; identity is index 0; inv[g] is the index
    of the inverse of g.  Instances are immutable after construction and all
    operations on them are pure.
    """

    __slots__ = ("order", "mul", "inv", "name", "product_split")

    def __init__(self, mul: list[list[int]], name: str = "", product_split=None):
        order = len(mul)
        if order == 0:
            raise GroupError("empty table")
        if order > MAX_CHECKED_ORDER:
            raise GroupError(f"order {order} exceeds supported maximum {MAX_CHECKED_ORDER}")
        rng = range(order)
        for row in mul:
            if len(row) != order or any(not (0 <= x < order) for x in row):
                raise GroupError("table is not square or has out-of-range entries")
        for g in rng:
            if sorted(mul[g]) != list(rng):
                raise GroupError(f"row {g} is not a permutation (not a Latin square)")
            if sorted(mul[r][g] for r in rng) != list(rng):
                raise GroupError(f"column {g} is not a permutation (not a Latin square)")
        for g in rng:
            if mul[0][g] != g or mul[g][0] != g:
                raise GroupError("index 0 is not a two-sided identity")
        inv = [-1] * order
        for g in rng:
            for h in rng:
                if mul[g][h] == 0:
                    inv[g] = h
                    break
            if inv[g] < 0 or mul[inv[g]][g] != 0:
                raise GroupError(f"element {g} has no two-sided inverse")
        for a in rng:
            for b in rng:
                ab = mul[a][b]
                for c in rng:
                    if mul[ab][c] != mul[a][mul[b][c]]:
                        raise GroupError(f"associativity fails at ({a},{b},{c})")
        self.order = order
        self.mul = tuple(tuple(row) for row in mul)
        self.inv = tuple(inv)
        self.name = name or f"group{order}"
        # optional direct-product metadata: (factor names, factor tables, coords)
        self.product_split = product_split

    def m(self, a: int, b: int) -> int:
        return self.mul[a][b]

    def prod(self, elems) -> int:
        out = 0
        for e in elems:
            out = self.mul[out][e]
        return out

    def conj(self, x: int, h: int) -> int:
        """x^-1 * h * x."""
        return self.mul[self.mul[self.inv[x]][h]][x]

    def elements(self) -> range:
        return range(self.order)

    def __repr__(self):
        return f"GroupTable({self.name}, order={self.order})"

    def __eq__(self, other):
        return isinstance(other, GroupTable) and self.mul == other.mul

    def __hash__(self):
        return hash(self.mul)


@dataclass(frozen=True)
class Subgroup:
    """A subgroup of a GroupTable, stored as a sorted element tuple."""

    parent: GroupTable
    elements: tuple[int, ...]

    def __post_init__(self):
        g = self.parent
        elems = self.elements
        if tuple(sorted(set(elems))) != elems:
            raise GroupError("subgroup elements must be sorted and distinct")
        if 0 not in elems:
            raise GroupError("subgroup must contain the identity")
        eset = set(elems)
        for a in elems:
            if g.inv[a] not in eset:
                raise GroupError(f"subgroup not closed under inverse at {a}")
            for b in elems:
                if g.mul[a][b] not in eset:
                    raise GroupError(f"subgroup not closed under product at ({a},{b})")
        if g.order % len(elems):
            raise GroupError("subgroup size does not divide group order")

    @property
    def size(self) -> int:
        return len(self.elements)

    def index(self) -> int:
        return self.parent.order // self.size

    def contains(self, x: int) -> bool:
        return x in set(self.elements)

    def position(self, x: int) -> int:
        """Position of element x in the sorted element tuple."""
        return self.elements.index(x)

    def is_normal(self) -> bool:
        g = self.parent
        eset = set(self.elements)
        return all(g.conj(x, h) in eset for x in g.elements() for h in self.elements)

    def __repr__(self):
        return f"Subgroup({list(self.elements)} of {self.parent.name})"


@dataclass(frozen=True)
class DoubleCosetPartition:
    """H-K double cosets of a group: classes partition the elements and the
    representative of each class is its minimal element."""

    parent: GroupTable
    H: Subgroup
    K: Subgroup
    classes: tuple[frozenset[int], ...]
    representatives: tuple[int, ...]

    def class_of(self, x: int) -> int:
        for i, c in enumerate(self.classes):
            if x in c:
                return i
        raise GroupError(f"element {x} not in any class")


def subgroup_closure(g: GroupTable, generators) -> Subgroup:
    """Smallest subgroup containing the generators (iterated products)."""
    for x in generators:
        if not 0 <= x < g.order:
            raise GroupError(f"generator index {x} out of range")
    seen = {0} | set(generators)
    frontier = list(seen)
    while frontier:
        nxt = []
        for a in frontier:
            for b in list(seen):
                for c in (g.mul[a][b], g.mul[b][a]):
                    if c not in seen:
                        seen.add(c)
                        nxt.append(c)
            ia = g.inv[a]
            if ia not in seen:
                seen.add(ia)
                nxt.append(ia)
        frontier = nxt
    return Subgroup(g, tuple(sorted(seen)))


def trivial_subgroup(g: GroupTable) -> Subgroup:
    return Subgroup(g, (0,))


def full_subgroup(g: GroupTable) -> Subgroup:
    return Subgroup(g, tuple(range(g.order)))


def left_cosets(g: GroupTable, K: Subgroup) -> list[tuple[int, ...]]:
    """Partition of g into left cosets xK, sorted by minimal element."""
    if K.parent is not g and K.parent != g:
        raise GroupError("K is not a subgroup of this group")
    seen = set()
    cosets = []
    for x in g.elements():
        if x in seen:
            continue
        coset = tuple(sorted(g.mul[x][k] for k in K.elements))
        seen.update(coset)
        cosets.append(coset)
    cosets.sort(key=lambda c: c[0])
    return cosets


def coset_map(g: GroupTable, K: Subgroup) -> list[int]:
    """element -> index of its left coset in left_cosets(g, K)."""
    cosets = left_cosets(g, K)
    out = [-1] * g.order
    for i, c in enumerate(cosets):
        for x in c:
            out[x] = i
    return out


def double_cosets(g: GroupTable, H: Subgroup, K: Subgroup) -> DoubleCosetPartition:
    """Partition of g into double cosets HxK, classes sorted by minimal
    element, representatives minimal per class."""
    seen = set()
    classes = []
    for x in g.elements():
        if x in seen:
            continue
        cls = frozenset(g.prod((h, x, k)) for h in H.elements for k in K.elements)
        seen.update(cls)
        classes.append(cls)
    classes.sort(key=min)
    reps = tuple(min(c) for c in classes)
    return DoubleCosetPartition(g, H, K, tuple(classes), reps)


def conjugate_subgroup(g: GroupTable, x: int, H: Subgroup) -> Subgroup:
    """x^-1 H x."""
    return Subgroup(g, tuple(sorted(g.conj(x, h) for h in H.elements)))


def intersect(a: Subgroup, b: Subgroup) -> Subgroup:
    return Subgroup(a.parent, tuple(sorted(set(a.elements) & set(b.elements))))


def quotient_group(g: GroupTable, N: Subgroup) -> tuple[GroupTable, list[int]]:
    """Quotient by a normal subgroup; returns the coset group and the
    projection element -> coset index.  The identity coset has index 0."""
    if not N.is_normal():
        raise GroupError("subgroup is not normal")
    proj = coset_map(g, N)
    cosets = left_cosets(g, N)
    q = len(cosets)
    table = [[proj[g.mul[cosets[a][0]][cosets[b][0]]] for b in range(q)] for a in range(q)]
    return GroupTable(table, name=f"{g.name}/{N.size}"), proj


def all_subgroups(g: GroupTable) -> list[Subgroup]:
    """Every subgroup, found by growing known subgroups one generator at a
    time until a fixpoint; sorted by (size, elements)."""
    found = {(0,): trivial_subgroup(g)}
    frontier = [trivial_subgroup(g)]
    while frontier:
        nxt = []
        for sub in frontier:
            for x in g.elements():
                if x in set(sub.elements):
                    continue
                bigger = subgroup_closure(g, set(sub.elements) | {x})
                if bigger.elements not in found:
                    found[bigger.elements] = bigger
                    nxt.append(bigger)
        frontier = nxt
    return sorted(found.values(), key=lambda s: (s.size, s.elements))


# ---------------------------------------------------------------------------
# catalog
# ---------------------------------------------------------------------------

def cyclic_group(n: int) -> GroupTable:
    if n < 1:
        raise GroupError("cyclic group needs n >= 1")
    return GroupTable([[(i + j) % n for j in range(n)] for i in range(n)], name=f"Z{n}")


def dihedral_group(n: int) -> GroupTable:
    """Dihedral group of order 2n: element i + n*j is r^i s^j with
    s r s = r^-1."""
    if n < 2:
        raise GroupError("dihedral group needs n >= 2")

    def mul(a, b):
        i1, j1 = a % n, a // n
        i2, j2 = b % n, b // n
        i = (i1 + (i2 if j1 == 0 else -i2)) % n
        return i + n * ((j1 + j2) % 2)

    return GroupTable([[mul(a, b) for b in range(2 * n)] for a in range(2 * n)], name=f"D{n}")


def symmetric_group(n: int) -> GroupTable:
    """Symmetric group on n points, n <= 4.  Elements are permutations in
    lexicographic one-line order (identity first); p*q acts as x -> p(q(x))."""
    if not 1 <= n <= 4:
        raise GroupError("symmetric group supported for n <= 4 only")
    perms = sorted(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}

    def mul(a, b):
        p, q = perms[a], perms[b]
        return index[tuple(p[q[x]] for x in range(n))]

    order = len(perms)
    return GroupTable([[mul(a, b) for b in range(order)] for a in range(order)], name=f"S{n}")


def direct_product(*factors: GroupTable) -> GroupTable:
    """Direct product; the index of (a_1,...,a_k) is the mixed-radix value
    with the last factor varying fastest.  Keeps the factor decomposition so
    graded constructions can project onto a distinguished factor."""
    if not factors:
        raise GroupError("empty product")
    orders = [f.order for f in factors]
    total = 1
    for o in orders:
        total *= o
    coords = []
    for idx in range(total):
        rest, c = idx, []
        for o in reversed(orders):
            c.append(rest % o)
            rest //= o
        coords.append(tuple(reversed(c)))
    index = {c: i for i, c in enumerate(coords)}

    def mul(a, b):
        return index[tuple(f.mul[x][y] for f, x, y in zip(factors, coords[a], coords[b]))]

    name = "x".join(f.name for f in factors)
    split = (tuple(f.name for f in factors), tuple(factors), tuple(coords))
    return GroupTable([[mul(a, b) for b in range(total)] for a in range(total)],
                      name=name, product_split=split)


def catalog_group(name: str) -> GroupTable:
    """Build a named group: Zn, Dn (order 2n), Sn (n <= 4), or products
    joined with 'x' such as Z2xZ4."""
    name = name.strip()
    if "x" in name:
        return direct_product(*(catalog_group(p) for p in name.split("x")))
    kind, num = name[0], name[1:]
    if not num.isdigit():
        raise GroupError(f"unknown catalog group {name!r}")
    n = int(num)
    if kind == "Z":
        return cyclic_group(n)
    if kind == "D":
        return dihedral_group(n)
    if kind == "S":
        return symmetric_group(n)
    raise GroupError(f"unknown catalog group {name!r}")


def z2_projection(g: GroupTable) -> tuple[list[int], GroupTable, list[int]]:
    """For a product group whose first factor is Z2, return the parity of
    each element, the product of the remaining factors, and the projection
    of each element onto it."""
    if g.product_split is None:
        raise GroupError("group was not built as a direct product")
    names, factors, coords = g.product_split
    if factors[0].order != 2:
        raise GroupError("first product factor must have order 2")
    parity = [c[0] for c in coords]
    if len(factors) == 1:
        return parity, cyclic_group(1), [0] * g.order
    if len(factors) == 2:
        return parity, factors[1], [coords[x][1] for x in range(g.order)]
    rest = direct_product(*factors[1:])
    sub_index = {rest.product_split[2][i]: i for i in range(rest.order)}
    proj = [sub_index[tuple(coords[x][1:])] for x in range(g.order)]
    return parity, rest, proj
