"""Normalized 2-cocycles on subgroups, with values stored as exponents of a
fixed primitive n-th root of unity so all arithmetic stays in the integers
mod n."""

from __future__ import annotations

from dataclasses import dataclass

from .groups import GroupError, GroupTable, Subgroup


class CocycleError(ValueError):
    pass


@dataclass(frozen=True)
class TwoCocycle:
    """A normalized 2-cocycle on a subgroup H.

    table[a][b] (positions within H's sorted element tuple) is the exponent
    c(a,b) meaning f(a,b) = zeta^c(a,b) for a primitive modulus-th root of
    unity zeta.  Additively the cocycle identity reads
    c(a,b) + c(ab,c) = c(b,c) + c(a,bc)  (mod modulus).
    """

    H: Subgroup
    modulus: int
    table: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.modulus < 1:
            raise CocycleError("modulus must be positive")
        m = self.H.size
        if len(self.table) != m or any(len(r) != m for r in self.table):
            raise CocycleError("cocycle table dimensions do not match |H|")
        if any(not (0 <= v < self.modulus) for r in self.table for v in r):
            raise CocycleError("table entries must be residues mod modulus")
        bad = cocycle_violation(self.H, self.modulus, self.table)
        if bad is not None:
            raise CocycleError(f"not a normalized cocycle, witness {bad}")

    def value(self, h1: int, h2: int) -> int:
        """Exponent c(h1,h2), arguments as parent group element indices."""
        return self.table[self.H.position(h1)][self.H.position(h2)]

    def unit_inverse_exponent(self, h: int) -> int:
        """Exponent s with u_h^-1 = zeta^s u_{h^-1}."""
        g = self.H.parent
        return (-self.value(h, g.inv[h])) % self.modulus


def cocycle_violation(H: Subgroup, modulus: int, table):
    """None if the raw table is a normalized cocycle on H, else the first
    offending triple (a pair for a normalization failure) of group element
    indices.  Works on unvalidated tables so corrupted data can be
    diagnosed."""
    elems = H.elements
    if len(table) != H.size or any(len(r) != H.size for r in table):
        raise CocycleError("cocycle table dimensions do not match |H|")
    g = H.parent
    pos = {h: i for i, h in enumerate(elems)}
    for i, h in enumerate(elems):
        if table[pos[0]][i] % modulus or table[i][pos[0]] % modulus:
            return (0, h)
    for a in elems:
        for b in elems:
            ab = g.mul[a][b]
            for c in elems:
                bc = g.mul[b][c]
                lhs = table[pos[a]][pos[b]] + table[pos[ab]][pos[c]]
                rhs = table[pos[b]][pos[c]] + table[pos[a]][pos[bc]]
                if (lhs - rhs) % modulus:
                    return (a, b, c)
    return None


def verify_cocycle(f: TwoCocycle):
    """Raise with a witness triple if f is invalid (used on transported
    tables; constructor-validated tables pass trivially)."""
    bad = cocycle_violation(f.H, f.modulus, f.table)
    if bad is not None:
        raise CocycleError(f"cocycle identity fails at {bad}")


def trivial_cocycle(H: Subgroup, modulus: int = 2) -> TwoCocycle:
    m = H.size
    return TwoCocycle(H, modulus, tuple((0,) * m for _ in range(m)))


def coboundary_cocycle(H: Subgroup, modulus: int, lam: list[int]) -> TwoCocycle:
    """The coboundary of lam: H -> Z/n with lam(e) = 0:
    c(a,b) = lam(a) + lam(b) - lam(ab)."""
    if len(lam) != H.size:
        raise CocycleError("lambda must assign a residue to every element of H")
    if lam[H.position(0)] % modulus:
        raise CocycleError("lambda(e) must be 0")
    g = H.parent
    pos = {h: i for i, h in enumerate(H.elements)}
    table = tuple(
        tuple((lam[pos[a]] + lam[pos[b]] - lam[pos[g.mul[a][b]]]) % modulus for b in H.elements)
        for a in H.elements
    )
    return TwoCocycle(H, modulus, table)


def klein_cocycle(H: Subgroup, modulus: int = 2) -> TwoCocycle:
    """The standard cohomologically nontrivial cocycle on a Klein four
    subgroup: writing h = a^x b^y for fixed generators a,b, the value is
    (-1)^(y(h) * x(h')).  The resulting twisted algebra is noncommutative,
    so the class is not a coboundary."""
    if H.size != 4:
        raise CocycleError("need a subgroup of order 4")
    g = H.parent
    if any(g.mul[h][h] != 0 for h in H.elements):
        raise CocycleError("subgroup is not elementary abelian")
    if modulus % 2:
        raise CocycleError("modulus must be even to carry a sign")
    a, b = H.elements[1], H.elements[2]
    coords = {0: (0, 0), a: (1, 0), b: (0, 1), g.mul[a][b]: (1, 1)}
    half = modulus // 2
    table = tuple(
        tuple((coords[h][1] * coords[hp][0] * half) % modulus for hp in H.elements)
        for h in H.elements
    )
    return TwoCocycle(H, modulus, table)


def twisted_product(f: TwoCocycle, h1: int, h2: int) -> tuple[int, int]:
    """u_{h1} u_{h2} = zeta^c(h1,h2) u_{h1 h2}; returns (exponent, product
    element index)."""
    if not f.H.contains(h1) or not f.H.contains(h2):
        raise CocycleError("element not in the cocycle's subgroup")
    return f.value(h1, h2), f.H.parent.mul[h1][h2]


def conjugate_cocycle(f: TwoCocycle, x: int) -> TwoCocycle:
    """Transport f to the conjugate subgroup x^-1 H x:
    the new cocycle at (x^-1 h x, x^-1 h' x) equals f(h, h')."""
    g = f.H.parent
    new_elems = tuple(sorted(g.conj(x, h) for h in f.H.elements))
    newH = Subgroup(g, new_elems)
    back = {g.conj(x, h): h for h in f.H.elements}
    table = tuple(
        tuple(f.value(back[p], back[q]) for q in new_elems)
        for p in new_elems
    )
    out = TwoCocycle(newH, f.modulus, table)
    verify_cocycle(out)
    return out


def restrict_cocycle(f: TwoCocycle, Hsub: Subgroup) -> TwoCocycle:
    """Restriction of f to a subgroup of H (sub-table extraction)."""
    if not set(Hsub.elements) <= set(f.H.elements):
        raise CocycleError("restriction target is not contained in H")
    table = tuple(
        tuple(f.value(p, q) for q in Hsub.elements)
        for p in Hsub.elements
    )
    out = TwoCocycle(Hsub, f.modulus, table)
    verify_cocycle(out)
    return out
