"""Graded algebras with exact structure constants.

Two concrete families live here:

* GradedSimple -- the canonical form of a graded-simple algebra: a twisted
  group algebra of a subgroup H tensored with full r x r matrices, graded by
  deg(u_h (x) e_ij) = g_i^-1 h g_j for a tuple (g_1,...,g_r) of group
  elements.
* GluedAlgebra -- a semisimple diagonal of GradedSimple blocks plus a
  radical built from quiver paths: directed edges between blocks, paths of
  length >= truncation are zero.  Products of basis elements are always a
  root of unity times a basis element or zero, so nonzeroness tests are
  combinatorial and exact.

A product of two basis elements is represented as None (zero) or a pair
(exponent, basis index) meaning zeta^exponent times the basis element.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm

from .cocycles import TwoCocycle
from .groups import GroupError, GroupTable, Subgroup, quotient_group
from .linalg import SpanBuilder
from .scalars import CycScalar, cyclotomic, rescale_exponent

DEFAULT_BASIS_CAP = 20000
EXHAUSTIVE_DIM = 64
SAMPLED_CHECKS = 10000


class AlgebraError(ValueError):
    pass


def _compose(alg, x, y):
    """Product of scaled basis elements: (exp, idx) * (exp, idx)."""
    if x is None or y is None:
        return None
    ex, bx = x
    prod = alg.mul_basis(bx, y[1])
    if prod is None:
        return None
    return ((ex + y[0] + prod[0]) % alg.modulus, prod[1])


def product_of_basis(alg, indices):
    """Fold a sequence of basis indices; None if the product vanishes."""
    out = (0, indices[0])
    for i in indices[1:]:
        out = _compose(alg, out, (0, i))
        if out is None:
            return None
    return out


class GradedSimple:
    """Graded-simple algebra in canonical form.

    Basis elements are triples (h, i, j) with h in H and 0 <= i,j < r,
    standing for u_h (x) e_ij.  Multiplication:
    (h,i,j)(h',k,l) = 0 if j != k, else zeta^c(h,h') (hh', i, l).
    """

    def __init__(self, group: GroupTable, H: Subgroup, cocycle: TwoCocycle,
                 tup: tuple[int, ...]):
        if H.parent != group:
            raise AlgebraError("H is not a subgroup of the given group")
        if cocycle.H != H:
            raise AlgebraError("cocycle is not defined on H")
        if len(tup) < 1:
            raise AlgebraError("grading tuple must be nonempty")
        if any(not 0 <= g < group.order for g in tup):
            raise AlgebraError("grading tuple entry out of range")
        self.group = group
        self.H = H
        self.cocycle = cocycle
        self.tup = tuple(tup)
        self.r = len(tup)
        self.modulus = cocycle.modulus
        self.basis: list[tuple[int, int, int]] = [
            (h, i, j) for h in H.elements for i in range(self.r) for j in range(self.r)
        ]
        self.index = {b: n for n, b in enumerate(self.basis)}
        inv = group.inv
        self.degrees = [
            group.prod((inv[self.tup[i]], h, self.tup[j])) for (h, i, j) in self.basis
        ]
        self.dim = len(self.basis)
        assert self.dim == H.size * self.r * self.r

    def mul_basis(self, x: int, y: int):
        h1, i1, j1 = self.basis[x]
        h2, i2, j2 = self.basis[y]
        if j1 != i2:
            return None
        exp, h = twisted_value(self.cocycle, h1, h2)
        return exp, self.index[(h, i1, j2)]

    def idempotent(self, i: int) -> int:
        """Basis index of 1 (x) e_ii."""
        return self.index[(0, i, i)]

    def identity_indices(self) -> list[int]:
        return [self.idempotent(i) for i in range(self.r)]

    def label(self, n: int) -> str:
        h, i, j = self.basis[n]
        return f"u{h}.e{i}{j}"

    def __repr__(self):
        return (f"GradedSimple(|H|={self.H.size}, r={self.r}, "
                f"dim={self.dim} over {self.group.name})")


def twisted_value(cocycle: TwoCocycle, h1: int, h2: int) -> tuple[int, int]:
    return cocycle.value(h1, h2), cocycle.H.parent.mul[h1][h2]


class RegradedComponent:
    """A component with its degrees pushed through a group homomorphism;
    multiplication is unchanged.  Carries no canonical-form datum."""

    def __init__(self, base, group: GroupTable, degrees: list[int]):
        self.base = base
        self.group = group
        self.degrees = list(degrees)
        self.basis = base.basis
        self.index = base.index
        self.dim = base.dim
        self.modulus = base.modulus
        self.mul_basis = base.mul_basis
        self.idempotent = base.idempotent
        self.identity_indices = base.identity_indices

    def label(self, n: int) -> str:
        return self.base.label(n)

    def __repr__(self):
        return f"Regraded({self.base!r} over {self.group.name})"


def build_graded_simple(group: GroupTable, H: Subgroup, cocycle: TwoCocycle,
                        tup) -> GradedSimple:
    """Construct and structurally verify a canonical graded-simple algebra."""
    alg = GradedSimple(group, H, cocycle, tuple(tup))
    verify_multiplicative_grading(alg)
    return alg


@dataclass(frozen=True)
class Edge:
    src: int
    dst: int
    degree: int


class GluedAlgebra:
    """Block-diagonal semisimple part plus truncated quiver-path radical.

    Basis elements are paths: an alternating tuple of component basis picks
    and edge ids, (s_0, e_1, s_1, ..., e_k, s_k) with k < truncation; k = 0
    gives the semisimple part.  Products concatenate at the junction by
    multiplying the adjoining semisimple factors, and vanish when the
    junction product does or the combined length reaches the truncation.
    """

    def __init__(self, group: GroupTable, components, edges, truncation: int,
                 cap: int = DEFAULT_BASIS_CAP):
        if truncation < 1:
            raise AlgebraError("truncation must be >= 1")
        for e in edges:
            if not (0 <= e.src < len(components) and 0 <= e.dst < len(components)):
                raise AlgebraError(f"edge {e} references a missing component")
            if not 0 <= e.degree < group.order:
                raise AlgebraError(f"edge {e} has an out-of-range degree")
        if not components:
            raise AlgebraError("need at least one component")
        for c in components:
            if c.group != group:
                raise AlgebraError("component grading group mismatch")
        self.group = group
        self.components = list(components)
        self.edges = list(edges)
        self.truncation = truncation
        self.modulus = lcm(*(c.modulus for c in self.components)) if self.components else 1

        edge_seqs = self._edge_sequences()
        count = sum(c.dim for c in self.components)
        for seq in edge_seqs:
            n = 1
            for comp in self._seq_components(seq):
                n *= self.components[comp].dim
            count += n
        if count > cap:
            raise AlgebraError(f"basis size {count} exceeds cap {cap}")

        self.basis: list[tuple[tuple[tuple[int, int], ...], tuple[int, ...]]] = []
        for t, c in enumerate(self.components):
            for l in range(c.dim):
                self.basis.append((((t, l),), ()))
        for seq in edge_seqs:
            comps = self._seq_components(seq)
            self._append_paths(seq, comps)
        self.index = {b: n for n, b in enumerate(self.basis)}
        self.degrees = [self._path_degree(b) for b in self.basis]
        self.dim = len(self.basis)

    # -- construction helpers ------------------------------------------------

    def _edge_sequences(self):
        """All composable edge-id sequences of length 1..truncation-1, in
        lexicographic order."""
        seqs = []
        frontier = [(i,) for i in range(len(self.edges))]
        for _ in range(self.truncation - 1):
            if not frontier:
                break
            seqs.extend(frontier)
            nxt = []
            for s in frontier:
                last = self.edges[s[-1]]
                for i, e in enumerate(self.edges):
                    if e.src == last.dst:
                        nxt.append(s + (i,))
            frontier = nxt
        seqs.sort()
        return seqs

    def _seq_components(self, seq) -> list[int]:
        comps = [self.edges[seq[0]].src]
        for i in seq:
            comps.append(self.edges[i].dst)
        return comps

    def _append_paths(self, seq, comps):
        dims = [self.components[t].dim for t in comps]
        picks = [0] * len(comps)
        while True:
            semis = tuple((t, l) for t, l in zip(comps, picks))
            self.basis.append((semis, seq))
            k = len(comps) - 1
            while k >= 0:
                picks[k] += 1
                if picks[k] < dims[k]:
                    break
                picks[k] = 0
                k -= 1
            if k < 0:
                return

    def _path_degree(self, b) -> int:
        semis, edge_ids = b
        g = self.group
        deg = 0
        for n, (t, l) in enumerate(semis):
            deg = g.mul[deg][self.components[t].degrees[l]]
            if n < len(edge_ids):
                deg = g.mul[deg][self.edges[edge_ids[n]].degree]
        return deg

    # -- structure -----------------------------------------------------------

    def path_length(self, n: int) -> int:
        return len(self.basis[n][1])

    def is_radical(self, n: int) -> bool:
        return self.path_length(n) > 0

    def source_component(self, n: int) -> int:
        return self.basis[n][0][0][0]

    def target_component(self, n: int) -> int:
        return self.basis[n][0][-1][0]

    def head_row(self, n: int) -> int:
        t, l = self.basis[n][0][0]
        return self.components[t].basis[l][1]

    def tail_col(self, n: int) -> int:
        t, l = self.basis[n][0][-1]
        return self.components[t].basis[l][2]

    def semisimple_index(self, comp: int, local: int) -> int:
        return self.index[(((comp, local),), ())]

    def semisimple_indices(self, comp: int | None = None) -> list[int]:
        out = []
        for n in range(self.dim):
            if self.path_length(n) == 0 and (comp is None or self.source_component(n) == comp):
                out.append(n)
        return out

    def radical_indices(self) -> list[int]:
        return [n for n in range(self.dim) if self.path_length(n) > 0]

    def component_scale(self, t: int) -> int:
        return self.modulus // self.components[t].modulus

    def mul_basis(self, x: int, y: int):
        sx, ex = self.basis[x]
        sy, ey = self.basis[y]
        if len(ex) + len(ey) >= self.truncation:
            return None
        t1, l1 = sx[-1]
        t2, l2 = sy[0]
        if t1 != t2:
            return None
        junction = self.components[t1].mul_basis(l1, l2)
        if junction is None:
            return None
        jexp, jloc = junction
        semis = sx[:-1] + ((t1, jloc),) + sy[1:]
        idx = self.index[(semis, ex + ey)]
        return (jexp * self.component_scale(t1)) % self.modulus, idx

    def label(self, n: int) -> str:
        semis, edge_ids = self.basis[n]
        parts = []
        for k, (t, l) in enumerate(semis):
            parts.append(f"[{t}]{self.components[t].label(l)}")
            if k < len(edge_ids):
                parts.append(f"-{edge_ids[k]}-")
        return "".join(parts)

    def __repr__(self):
        return (f"GluedAlgebra(q={len(self.components)}, edges={len(self.edges)}, "
                f"N={self.truncation}, dim={self.dim})")


def build_glued(group: GroupTable, components, edges, truncation: int,
                cap: int = DEFAULT_BASIS_CAP) -> GluedAlgebra:
    """Construct a glued algebra and verify its structural invariants."""
    alg = GluedAlgebra(group, components, edges, truncation, cap)
    verify_multiplicative_grading(alg)
    verify_associativity(alg)
    verify_radical_nilpotency(alg)
    return alg


# ---------------------------------------------------------------------------
# structural checks
# ---------------------------------------------------------------------------

def _check_rng(seed=0xD1CE):
    from .rng import Xorshift
    return Xorshift(seed)


def verify_multiplicative_grading(alg):
    """deg(xy) = deg(x) deg(y) whenever x y != 0; exhaustive at small
    dimension, sampled above."""
    g = alg.group
    d = alg.dim
    if d <= EXHAUSTIVE_DIM:
        pairs = ((x, y) for x in range(d) for y in range(d))
    else:
        rng = _check_rng()
        pairs = ((rng.below(d), rng.below(d)) for _ in range(SAMPLED_CHECKS))
    for x, y in pairs:
        p = alg.mul_basis(x, y)
        if p is not None:
            want = g.mul[alg.degrees[x]][alg.degrees[y]]
            if alg.degrees[p[1]] != want:
                raise AlgebraError(f"grading broken at {x},{y}")


def verify_associativity(alg):
    d = alg.dim
    if d <= EXHAUSTIVE_DIM:
        triples = ((x, y, z) for x in range(d) for y in range(d) for z in range(d))
    else:
        rng = _check_rng(0xA550C)
        triples = ((rng.below(d), rng.below(d), rng.below(d)) for _ in range(SAMPLED_CHECKS))
    for x, y, z in triples:
        left = alg.mul_basis(x, y)
        a = _compose(alg, left, (0, z)) if left is not None else None
        right = alg.mul_basis(y, z)
        b = _compose(alg, (0, x), right) if right is not None else None
        if a != b:
            raise AlgebraError(f"associativity broken at {x},{y},{z}")


def verify_radical_nilpotency(alg: GluedAlgebra):
    """J^truncation = 0: any product of truncation-many radical elements
    vanishes (sampled; it is structural in the path model)."""
    rad = alg.radical_indices()
    if not rad:
        return
    rng = _check_rng(0x3AD)
    for _ in range(200):
        seq = [rad[rng.below(len(rad))] for _ in range(alg.truncation)]
        if product_of_basis(alg, seq) is not None:
            raise AlgebraError("radical is not nilpotent at the truncation order")


# ---------------------------------------------------------------------------
# elements
# ---------------------------------------------------------------------------

class AlgebraElement:
    """Sparse element: basis index -> nonzero CycScalar coefficient."""

    __slots__ = ("alg", "coeffs")

    def __init__(self, alg, coeffs=None):
        self.alg = alg
        self.coeffs: dict[int, CycScalar] = {}
        if coeffs:
            for k, v in coeffs.items():
                if not v.is_zero():
                    self.coeffs[k] = v

    @classmethod
    def basis(cls, alg, idx: int, exponent: int = 0):
        ring = cyclotomic(alg.modulus)
        return cls(alg, {idx: ring.zeta_power(exponent)})

    @classmethod
    def zero(cls, alg):
        return cls(alg)

    def is_zero(self) -> bool:
        return not self.coeffs

    def _check(self, other):
        if self.alg is not other.alg:
            raise AlgebraError("elements of different algebras")

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            s = out.get(k)
            w = v if s is None else s + v
            if w.is_zero():
                out.pop(k, None)
            else:
                out[k] = w
        return AlgebraElement(self.alg, out)

    def __sub__(self, other):
        return self + (other * -1)

    def __mul__(self, other):
        if isinstance(other, int):
            ring = cyclotomic(self.alg.modulus)
            return self.scaled(ring.from_fraction(other))
        if isinstance(other, CycScalar):
            return self.scaled(other)
        self._check(other)
        ring = cyclotomic(self.alg.modulus)
        out: dict[int, CycScalar] = {}
        for i, a in self.coeffs.items():
            for j, b in other.coeffs.items():
                p = self.alg.mul_basis(i, j)
                if p is None:
                    continue
                c = a * b * ring.zeta_power(p[0])
                s = out.get(p[1])
                w = c if s is None else s + c
                if w.is_zero():
                    out.pop(p[1], None)
                else:
                    out[p[1]] = w
        return AlgebraElement(self.alg, out)

    __rmul__ = __mul__

    def scaled(self, scalar: CycScalar):
        return AlgebraElement(self.alg, {k: v * scalar for k, v in self.coeffs.items()})

    def __eq__(self, other):
        return isinstance(other, AlgebraElement) and self.alg is other.alg \
            and self.coeffs == other.coeffs

    def dense(self) -> list[CycScalar]:
        ring = cyclotomic(self.alg.modulus)
        out = [ring.zero()] * self.alg.dim
        for k, v in self.coeffs.items():
            out[k] = v
        return out

    def __repr__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"({v})*{self.alg.label(k)}" for k, v in sorted(self.coeffs.items()))


def multiply(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    return x * y


def identity_element(alg: GluedAlgebra) -> AlgebraElement:
    out = AlgebraElement.zero(alg)
    for t, c in enumerate(alg.components):
        for i in c.identity_indices():
            out = out + AlgebraElement.basis(alg, alg.semisimple_index(t, i))
    return out


# ---------------------------------------------------------------------------
# graded structure operations
# ---------------------------------------------------------------------------

def homogeneous_component(alg, g: int) -> list[int]:
    """Basis indices of degree g."""
    if not 0 <= g < alg.group.order:
        raise AlgebraError("degree out of range")
    return [n for n, d in enumerate(alg.degrees) if d == g]


class SubgroupComponentView:
    """The span of basis elements whose degree lies in K: a structure-
    constant algebra in its own right (closed under multiplication since the
    grading is multiplicative), with the embedding kept explicit."""

    def __init__(self, parent, K: Subgroup):
        kset = set(K.elements)
        self.parent = parent
        self.K = K
        self.embed = [n for n, d in enumerate(parent.degrees) if d in kset]
        self._local = {n: i for i, n in enumerate(self.embed)}
        self.group = parent.group
        self.modulus = parent.modulus
        self.degrees = [parent.degrees[n] for n in self.embed]
        self.dim = len(self.embed)

    def mul_basis(self, x: int, y: int):
        p = self.parent.mul_basis(self.embed[x], self.embed[y])
        if p is None:
            return None
        local = self._local.get(p[1])
        if local is None:
            raise AlgebraError("subgroup component is not closed (grading bug)")
        return p[0], local

    def label(self, n: int) -> str:
        return self.parent.label(self.embed[n])

    def semisimple_embed(self) -> list[int]:
        return [n for n in self.embed if not self.parent.is_radical(n)]

    def radical_embed(self) -> list[int]:
        return [n for n in self.embed if self.parent.is_radical(n)]


def subgroup_component(alg, K: Subgroup) -> SubgroupComponentView:
    view = SubgroupComponentView(alg, K)
    # closure sanity: every product of K-degree elements stays K-degree
    if view.dim <= EXHAUSTIVE_DIM:
        pairs = ((x, y) for x in range(view.dim) for y in range(view.dim))
    else:
        rng = _check_rng(0x5AB)
        pairs = ((rng.below(view.dim), rng.below(view.dim)) for _ in range(SAMPLED_CHECKS))
    for x, y in pairs:
        view.mul_basis(x, y)
    return view


def regrade_quotient(alg: GluedAlgebra, N: Subgroup) -> GluedAlgebra:
    """The same algebra graded by the quotient group: degrees are pushed
    through the projection and every structural invariant is re-verified."""
    q, proj = quotient_group(alg.group, N)
    comps = [
        RegradedComponent(c, q, [proj[d] for d in c.degrees])
        for c in alg.components
    ]
    edges = [Edge(e.src, e.dst, proj[e.degree]) for e in alg.edges]
    return build_glued(q, comps, edges, alg.truncation)


def graded_ideal_is_full(alg, element: AlgebraElement) -> bool:
    """Whether the two-sided ideal generated by the element is the whole
    algebra (graded-simplicity spot check).  Exact span growth until a
    fixpoint."""
    if element.is_zero():
        return False
    ring = cyclotomic(alg.modulus)
    span = SpanBuilder(ring, alg.dim)
    span.add(element.dense())
    frontier = [element]
    while frontier:
        nxt = []
        for v in frontier:
            for b in range(alg.dim):
                for w in (AlgebraElement.basis(alg, b) * v, v * AlgebraElement.basis(alg, b)):
                    if not w.is_zero() and span.add(w.dense()):
                        nxt.append(w)
        frontier = nxt
    return span.dim == alg.dim
