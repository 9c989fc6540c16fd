"""Finite-generator exterior algebra and the envelope construction.

The exterior algebra on m generators has basis e_S indexed by subsets
(bitmasks) of the generators, with e_S e_T = 0 when the subsets meet and
otherwise a sign from the inversion count of merging the sorted subsets.
For an algebra graded by a product group with a distinguished order-2
first factor, the envelope pairs basis elements with subsets of matching
parity; the result is graded by the remaining factor.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm

from .algebras import (AlgebraError, verify_associativity,
                       verify_multiplicative_grading)
from .groups import GroupTable, Subgroup, cyclic_group, z2_projection
from .scalars import rescale_exponent

MAX_GENERATORS = 12


def inversion_parity(S: int, T: int) -> int:
    """Parity of the number of pairs s in S, t in T with s > t."""
    count = 0
    t_seen = 0
    bit = 0
    mask = S | T
    while mask >> bit:
        if T >> bit & 1:
            t_seen += 1
        if S >> bit & 1:
            count += t_seen
        bit += 1
    return count & 1


class GrassmannAlgebra:
    """Exterior algebra on m generators, graded by parity over Z2.

    Scalars are powers of -1 (modulus 2 exponents)."""

    def __init__(self, m: int):
        if not 1 <= m <= MAX_GENERATORS:
            raise AlgebraError(f"generator count must be 1..{MAX_GENERATORS}")
        self.m = m
        self.dim = 1 << m
        self.group = cyclic_group(2)
        self.modulus = 2
        self.degrees = [bin(S).count("1") & 1 for S in range(self.dim)]

    def parity(self, S: int) -> int:
        return self.degrees[S]

    def mul_basis(self, S: int, T: int):
        if S & T:
            return None
        return inversion_parity(S, T), S | T

    def label(self, S: int) -> str:
        if S == 0:
            return "1"
        return "e" + "".join(str(i) for i in range(self.m) if S >> i & 1)

    def __repr__(self):
        return f"GrassmannAlgebra(m={self.m})"


def build_grassmann(m: int) -> GrassmannAlgebra:
    E = GrassmannAlgebra(m)
    # anticommutation and squares of the generators
    for i in range(m):
        gi = 1 << i
        if E.mul_basis(gi, gi) is not None:
            raise AlgebraError("generator square is nonzero")
        for j in range(i + 1, m):
            gj = 1 << j
            sij = E.mul_basis(gi, gj)
            sji = E.mul_basis(gj, gi)
            if sij[1] != sji[1] or (sij[0] + sji[0]) % 2 != 1:
                raise AlgebraError("generators fail to anticommute")
    return E


class StructureAlgebra:
    """A plain structure-constant algebra over an explicit basis; products
    are computed by a supplied rule returning (exponent, index) or None."""

    def __init__(self, group: GroupTable, degrees, modulus: int, rule, labels=None,
                 check: bool = True):
        self.group = group
        self.degrees = list(degrees)
        self.modulus = modulus
        self.dim = len(self.degrees)
        self._rule = rule
        self._labels = labels
        if check:
            verify_multiplicative_grading(self)
            verify_associativity(self)

    def mul_basis(self, x: int, y: int):
        return self._rule(x, y)

    def label(self, n: int) -> str:
        return self._labels[n] if self._labels else f"b{n}"


@dataclass
class Envelope:
    """The envelope algebra together with its basis bookkeeping: pair n
    corresponds to (source basis index, generator subset)."""

    source: object
    grassmann: GrassmannAlgebra
    algebra: StructureAlgebra
    pairs: list[tuple[int, int]]
    pair_index: dict[tuple[int, int], int]


def envelope(A, m: int, cap: int = 20000) -> Envelope:
    """Envelope of an algebra graded by Z2 x G' with respect to the
    distinguished order-2 factor: span of (a, e_S) with the parity of a's
    first-factor degree equal to |S| mod 2, graded by G'."""
    parity, gprime, proj = z2_projection(A.group)
    E = build_grassmann(m)
    pairs = [(a, S) for a in range(A.dim) for S in range(E.dim)
             if parity[A.degrees[a]] == E.parity(S)]
    if not pairs:
        raise AlgebraError("empty envelope")
    if len(pairs) > cap:
        raise AlgebraError(f"envelope basis {len(pairs)} exceeds cap {cap}")
    pair_index = {p: n for n, p in enumerate(pairs)}
    modulus = lcm(2, A.modulus)
    half = modulus // 2
    scale = modulus // A.modulus
    degrees = [proj[A.degrees[a]] for a, _ in pairs]

    def rule(x: int, y: int):
        a, S = pairs[x]
        b, T = pairs[y]
        pa = A.mul_basis(a, b)
        if pa is None or (S & T):
            return None
        sign = inversion_parity(S, T)
        exp = (pa[0] * scale + sign * half) % modulus
        return exp, pair_index[(pa[1], S | T)]

    labels = [f"{A.label(a)}(x){E.label(S)}" for a, S in pairs]
    alg = StructureAlgebra(gprime, degrees, modulus, rule, labels)
    return Envelope(A, E, alg, pairs, pair_index)


@dataclass
class EnvelopeComponentReport:
    """Comparison of the envelope of the first-factor-trivial part against
    the identity component of the full envelope, both built independently."""

    basis_match: bool
    constants_match: bool
    lhs_dim: int
    rhs_dim: int

    @property
    def ok(self) -> bool:
        return self.basis_match and self.constants_match


def check_envelope_e_component(A, m: int) -> EnvelopeComponentReport:
    parity, gprime, proj = z2_projection(A.group)
    sub_elems = tuple(sorted(x for x in A.group.elements() if proj[x] == 0))
    Ksub = Subgroup(A.group, sub_elems)
    from .algebras import subgroup_component
    sub = subgroup_component(A, Ksub)

    left = envelope(sub, m)
    full = envelope(A, m)

    lhs_pairs = {(sub.embed[a], S) for a, S in left.pairs}
    e_indices = [n for n, d in enumerate(full.algebra.degrees) if d == 0]
    rhs_pairs = {full.pairs[n] for n in e_indices}
    basis_match = lhs_pairs == rhs_pairs

    constants_match = True
    if basis_match:
        for x in range(left.algebra.dim):
            ax, Sx = left.pairs[x]
            fx = full.pair_index[(sub.embed[ax], Sx)]
            for y in range(left.algebra.dim):
                ay, Sy = left.pairs[y]
                fy = full.pair_index[(sub.embed[ay], Sy)]
                l = left.algebra.mul_basis(x, y)
                r = full.algebra.mul_basis(fx, fy)
                if l is None or r is None:
                    if (l is None) != (r is None):
                        constants_match = False
                    continue
                la, lS = left.pairs[l[1]]
                if r[0] != l[0] or full.pairs[r[1]] != (sub.embed[la], lS):
                    constants_match = False
    return EnvelopeComponentReport(basis_match, constants_match,
                                   len(lhs_pairs), len(rhs_pairs))
