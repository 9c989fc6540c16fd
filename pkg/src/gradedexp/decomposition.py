"""Block decomposition of the subgroup component of a graded-simple algebra.

For a canonical graded-simple algebra B with subgroup H, cocycle f and tuple
(g_1,...,g_r), and any subgroup K, the basis elements of K-degree are
governed by the H-K double cosets of the tuple entries: indices i,j carry a
K-degree basis element iff g_i and g_j lie in the same double coset, the
equivalence classes split B_K into a direct sum of K-graded simple blocks,
and each block is again in canonical form over the intersection subgroup
g^-1 H g  intersect  K with a conjugated, restricted cocycle and an explicit
K-grading tuple.  Everything here is verified by exact multiplication, not
assumed.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebras import AlgebraError, GradedSimple, build_graded_simple
from .cocycles import TwoCocycle, conjugate_cocycle, restrict_cocycle
from .groups import (DoubleCosetPartition, Subgroup, conjugate_subgroup,
                     double_cosets, intersect)


def subgroup_basis(B: GradedSimple, K: Subgroup) -> list[int]:
    """Basis indices of B whose degree lies in K; cross-checked against the
    membership condition g_i^-1 h g_j in K."""
    kset = set(K.elements)
    g = B.group
    out = []
    for n, (h, i, j) in enumerate(B.basis):
        member = g.prod((g.inv[B.tup[i]], h, B.tup[j])) in kset
        by_degree = B.degrees[n] in kset
        if member != by_degree:
            raise AlgebraError("degree map inconsistent with membership condition")
        if member:
            out.append(n)
    return out


def index_classes(B: GradedSimple, K: Subgroup) -> list[tuple[int, ...]]:
    """Partition of the tuple indices 0..r-1 by double-coset membership of
    the tuple entries, ordered by smallest member.  Cross-checked: an index
    pair (i,j) admits a K-degree basis element iff i ~ j."""
    dc = double_cosets(B.group, B.H, K)
    by_class: dict[int, list[int]] = {}
    for i, g in enumerate(B.tup):
        by_class.setdefault(dc.class_of(g), []).append(i)
    classes = sorted((tuple(v) for v in by_class.values()), key=lambda c: c[0])
    same = {}
    for c in classes:
        for i in c:
            same[i] = c[0]
    kset = set(K.elements)
    for i in range(B.r):
        for j in range(B.r):
            has = any(
                B.degrees[B.index[(h, i, j)]] in kset for h in B.H.elements
            )
            if has != (same[i] == same[j]):
                raise AlgebraError(f"class structure inconsistent at pair ({i},{j})")
    return classes


@dataclass
class ClassBlock:
    """One double coset's contribution to the K-component.

    pi = 0 blocks (double cosets missed by the grading tuple) are retained
    with dimension 0 so the closing inequality can sum over all of them.
    """

    coset_rep: int
    members: tuple[int, ...]
    pi: int
    intersection: Subgroup
    dim: int
    translators: tuple[int, ...] | None = None
    cocycle: TwoCocycle | None = None
    ktuple: tuple[int, ...] | None = None
    block: GradedSimple | None = None

    @property
    def rep_index(self):
        return self.members[0] if self.members else None


@dataclass
class KDecomposition:
    B: GradedSimple
    K: Subgroup
    cosets: DoubleCosetPartition
    blocks: list[ClassBlock]

    def nonzero_blocks(self) -> list[ClassBlock]:
        return [b for b in self.blocks if b.pi > 0]

    def block_of_index(self, i: int) -> ClassBlock:
        for b in self.blocks:
            if i in b.members:
                return b
        raise AlgebraError(f"index {i} not in any block")


def _translators(B: GradedSimple, members, kset) -> tuple[int, ...]:
    """For each t ~ rep, the first h in H (element order) with
    g_rep^-1 h g_t in K; existence is guaranteed by the double-coset
    relation, and the representative itself takes h = e."""
    g = B.group
    out = []
    for t in members:
        if t == members[0]:
            out.append(0)
            continue
        found = None
        for h in B.H.elements:
            if g.prod((g.inv[B.tup[members[0]]], h, B.tup[t])) in kset:
                found = h
                break
        if found is None:
            raise AlgebraError("no translator element; double-coset relation broken")
        out.append(found)
    return tuple(out)


def k_simple_blocks(B: GradedSimple, K: Subgroup) -> KDecomposition:
    """Full block data for the K-component of B, dimension-checked."""
    dc = double_cosets(B.group, B.H, K)
    classes = index_classes(B, K)
    g = B.group
    kset = set(K.elements)
    by_coset: dict[int, tuple[int, ...]] = {}
    for c in classes:
        by_coset[dc.class_of(B.tup[c[0]])] = c

    blocks = []
    for ci, coset in enumerate(dc.classes):
        members = by_coset.get(ci, ())
        if not members:
            rep_elt = dc.representatives[ci]
            inter = intersect(conjugate_subgroup(g, rep_elt, B.H), K)
            blocks.append(ClassBlock(rep_elt, (), 0, inter, 0))
            continue
        rep = members[0]
        grep = B.tup[rep]
        inter = intersect(conjugate_subgroup(g, grep, B.H), K)
        trans = _translators(B, members, kset)
        conj = conjugate_cocycle(B.cocycle, grep)
        coc = restrict_cocycle(conj, inter)
        ktuple = tuple(
            g.prod((g.inv[grep], h, B.tup[t])) for h, t in zip(trans, members)
        )
        if any(x not in kset for x in ktuple):
            raise AlgebraError("K-grading tuple escaped K")
        block = build_graded_simple(g, inter, coc, ktuple)
        pi = len(members)
        blocks.append(ClassBlock(B.tup[rep], members, pi, inter, inter.size * pi * pi,
                                 trans, coc, ktuple, block))

    if sum(b.pi for b in blocks) != B.r:
        raise AlgebraError("class sizes do not sum to r")
    if sum(b.dim for b in blocks) != len(subgroup_basis(B, K)):
        raise AlgebraError("block dimensions do not sum to the K-component dimension")
    return KDecomposition(B, K, dc, blocks)


@dataclass
class BlockIsomorphism:
    """Explicit basis map from the K-degree elements supported on one index
    class onto the abstract block, with its verification transcript."""

    block: ClassBlock
    mapping: dict[int, tuple[int, int]]   # B basis index -> (exponent, block basis index)
    bijective: bool
    multiplicative: bool
    degree_preserving: bool

    @property
    def ok(self) -> bool:
        return self.bijective and self.multiplicative and self.degree_preserving


def build_block_isomorphism(B: GradedSimple, K: Subgroup,
                            cls: ClassBlock) -> BlockIsomorphism:
    """Realize the canonical isomorphism of one K-simple block and verify it
    on every basis pair by exact multiplication on both sides."""
    if cls.pi == 0:
        raise AlgebraError("zero block has no isomorphism to build")
    g = B.group
    block = cls.block
    members = cls.members
    pos = {t: a for a, t in enumerate(members)}
    rep = members[0]
    grep = B.tup[rep]
    f = B.cocycle
    n = f.modulus
    kset = set(K.elements)

    mapping: dict[int, tuple[int, int]] = {}
    for idx in subgroup_basis(B, K):
        h, t, k = B.basis[idx]
        if t not in pos or k not in pos:
            continue
        ht, hk = cls.translators[pos[t]], cls.translators[pos[k]]
        hbar = g.prod((ht, h, g.inv[hk]))
        m = g.prod((g.inv[grep], hbar, grep))
        if not cls.intersection.contains(m):
            raise AlgebraError("factored element escaped the intersection subgroup")
        # u_{ht}^-1 u_{hbar} u_{hk} = zeta^lam u_h
        ht_inv = g.inv[ht]
        lam = (f.unit_inverse_exponent(ht)
               + f.value(ht_inv, hbar)
               + f.value(g.mul[ht_inv][hbar], hk)) % n
        target = block.index[(m, pos[t], pos[k])]
        mapping[idx] = ((-lam) % n, target)

    targets = [idx for (_, idx) in mapping.values()]
    bijective = len(mapping) == block.dim and len(set(targets)) == block.dim

    multiplicative = True
    items = sorted(mapping.items())
    for x, (ex, bx) in items:
        for y, (ey, by) in items:
            lhs = B.mul_basis(x, y)
            rhs = block.mul_basis(bx, by)
            if lhs is None:
                if rhs is not None:
                    multiplicative = False
                continue
            lexp, lidx = lhs
            if lidx not in mapping:
                # product of K-degree elements stays K-degree on the class
                raise AlgebraError("product left the block span")
            mexp, midx = mapping[lidx]
            if rhs is None or rhs[1] != midx or (lexp + mexp) % n != (ex + ey + rhs[0]) % n:
                multiplicative = False

    degree_preserving = all(
        B.degrees[x] == block.degrees[bx] for x, (_, bx) in mapping.items()
    )
    return BlockIsomorphism(cls, mapping, bijective, multiplicative, degree_preserving)


def cross_class_products_vanish(B: GradedSimple, K: Subgroup,
                                dec: KDecomposition) -> bool:
    """K-degree basis elements supported on different classes multiply to
    zero (the direct-sum property)."""
    kbasis = subgroup_basis(B, K)
    cls_of = {}
    for b in dec.nonzero_blocks():
        for t in b.members:
            cls_of[t] = b.rep_index
    for x in kbasis:
        for y in kbasis:
            _, _, kx = B.basis[x]
            _, ty, _ = B.basis[y]
            if cls_of[B.basis[x][1]] != cls_of[ty] and B.mul_basis(x, y) is not None:
                return False
    return True
