"""The structural graded exponent of a glued algebra.

The quantity computed here is the maximum, over nonzero products that
alternate semisimple components with radical elements, of the total
dimension of the distinct simple components appearing.  In the quiver-path
model a product of basis elements is nonzero exactly when all junctions
compose, so the search reduces to walks on the component digraph (or, for a
subgroup K, on the digraph of K-simple blocks connected by K-degree radical
paths).  An independent brute-force oracle re-derives the same value by
multiplying actual basis elements.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .algebras import (AlgebraError, GluedAlgebra, _compose, product_of_basis,
                       regrade_quotient, subgroup_component)
from .decomposition import k_simple_blocks
from .groups import Subgroup

SEARCH_CAP = 1_000_000
ORACLE_DIM_CAP = 200
ORACLE_WORK_CAP = 20_000_000


class SearchCapExceeded(AlgebraError):
    pass


@dataclass
class ExpConjResult:
    """Maximum dimension-sum with a concrete nonzero-product certificate.

    components lists the distinct vertices in first-visit order (component
    ids, or (component, class-representative) pairs for a subgroup run);
    witness is the factor sequence of basis indices whose product is nonzero
    and realizes the value.
    """

    value: int
    components: tuple
    vertex_walk: tuple
    hop_lengths: tuple[int, ...]
    witness: tuple[int, ...]
    hops: tuple[int, ...] = ()   # for subgroup runs: radical basis index per hop


def _best_walk(vertices, dims, arcs, budget, cap=SEARCH_CAP):
    """Exhaustive bounded search over walks.

    arcs: vertex -> sorted list of (target, cost, tag).  Returns the best
    (value, distinct_seq, vertex_seq, tags) with ties broken toward the
    lexicographically smallest distinct component sequence, then the
    shortest and lexicographically smallest walk.
    """
    best = None
    count = 0

    def key(distinct, vseq, tags):
        return (-sum(dims[v] for v in distinct), tuple(distinct), len(vseq), tuple(vseq))

    def visit(v, vseq, distinct, left, tags):
        nonlocal best, count
        count += 1
        if count > cap:
            raise SearchCapExceeded(f"walk search exceeded {cap} expansions")
        cand = (key(distinct, vseq, tags), tuple(vseq), tuple(distinct), tuple(tags))
        if best is None or cand[0] < best[0]:
            best = cand
        for (u, cost, tag) in arcs.get(v, ()):
            if cost <= left:
                new_distinct = distinct if u in distinct else distinct + [u]
                visit(u, vseq + [u], new_distinct, left - cost, tags + [tag])

    for v in sorted(vertices):
        visit(v, [v], [v], budget, [])
    if best is None:
        raise AlgebraError("no components to walk")
    _, vseq, distinct, tags = best
    return distinct, vseq, tags


def _unit_local(comp) -> int:
    """Local index of u_e (x) e_00."""
    return comp.index[(0, 0, 0)]


def exp_conj(A: GluedAlgebra, cap: int = SEARCH_CAP) -> ExpConjResult:
    """Depth-first walk search over the quiver, tracking the visited set."""
    q = len(A.components)
    dims = {t: A.components[t].dim for t in range(q)}
    arcs: dict[int, list] = {}
    for i, e in enumerate(A.edges):
        arcs.setdefault(e.src, []).append((e.dst, 1, i))
    for v in arcs:
        arcs[v].sort()
    distinct, vseq, tags = _best_walk(range(q), dims, arcs, A.truncation - 1, cap)

    witness = [A.semisimple_index(vseq[0], _unit_local(A.components[vseq[0]]))]
    for edge_id, v in zip(tags, vseq[1:]):
        e = A.edges[edge_id]
        head = (e.src, _unit_local(A.components[e.src]))
        tail = (e.dst, _unit_local(A.components[e.dst]))
        witness.append(A.index[((head, tail), (edge_id,))])
        witness.append(A.semisimple_index(v, _unit_local(A.components[v])))
    if product_of_basis(A, witness) is None:
        raise AlgebraError("witness certificate failed re-verification")
    value = sum(dims[t] for t in distinct)
    return ExpConjResult(value, tuple(distinct), tuple(vseq),
                         tuple(1 for _ in tags), tuple(witness), tuple(tags))


def exp_conj_oracle(A: GluedAlgebra, dim_cap: int = ORACLE_DIM_CAP,
                    work_cap: int = ORACLE_WORK_CAP) -> int:
    """Ground-truth value by brute force: enumerate ordered sequences of
    distinct components and decide nonzeroness by multiplying basis
    elements with radical basis elements interposed."""
    if A.dim > dim_cap:
        raise AlgebraError(f"oracle limited to dim <= {dim_cap}")
    q = len(A.components)
    semis = [A.semisimple_indices(t) for t in range(q)]
    rad = A.radical_indices()
    work = 0

    def seq_nonzero(seq) -> bool:
        nonlocal work

        def extend(cur, pos) -> bool:
            nonlocal work
            if pos == len(seq) - 1:
                return True
            for v in rad:
                work += 1
                if work > work_cap:
                    raise SearchCapExceeded("oracle work cap exceeded")
                p1 = _compose(A, cur, (0, v))
                if p1 is None:
                    continue
                for z in semis[seq[pos + 1]]:
                    work += 1
                    p2 = _compose(A, p1, (0, z))
                    if p2 is not None and extend(p2, pos + 1):
                        return True
            return False

        return any(extend((0, z), 0) for z in semis[seq[0]])

    best = 0
    for k in range(1, q + 1):
        for seq in itertools.permutations(range(q), k):
            value = sum(A.components[t].dim for t in seq)
            if value > best and seq_nonzero(seq):
                best = value
    return best


def _block_vertices(A: GluedAlgebra, K: Subgroup):
    """K-simple block vertices of every component: (component, class
    representative index) with the block dimension, plus the class
    membership of each matrix index."""
    dims = {}
    class_of: dict[tuple[int, int], int] = {}
    decs = {}
    for t, comp in enumerate(A.components):
        dec = k_simple_blocks(comp, K)
        decs[t] = dec
        for b in dec.nonzero_blocks():
            key = (t, b.rep_index)
            dims[key] = b.dim
            for i in b.members:
                class_of[(t, i)] = b.rep_index
    return dims, class_of, decs


def exp_conj_sub(A: GluedAlgebra, K: Subgroup,
                 cap: int = SEARCH_CAP) -> ExpConjResult:
    """Same search on the K-component: vertices are the K-simple blocks of
    the diagonal components; hops are radical basis paths of K-degree,
    connecting blocks through their endpoint rows and columns."""
    view = subgroup_component(A, K)
    dims, class_of, _ = _block_vertices(A, K)

    arc_best: dict[tuple, tuple[int, int]] = {}
    for n in view.radical_embed():
        src = (A.source_component(n), class_of[(A.source_component(n), A.head_row(n))])
        dst = (A.target_component(n), class_of[(A.target_component(n), A.tail_col(n))])
        cost = A.path_length(n)
        cur = arc_best.get((src, dst))
        if cur is None or (cost, n) < cur:
            arc_best[(src, dst)] = (cost, n)

    arcs: dict[tuple, list] = {}
    for (src, dst), (cost, n) in arc_best.items():
        arcs.setdefault(src, []).append((dst, cost, n))
    for v in arcs:
        arcs[v].sort()

    distinct, vseq, tags = _best_walk(dims.keys(), dims, arcs, A.truncation - 1, cap)

    witness = _block_witness(A, K, vseq, tags, class_of)
    if product_of_basis(A, witness) is None:
        raise AlgebraError("subgroup witness certificate failed re-verification")
    kset = set(K.elements)
    for n in witness:
        if A.degrees[n] not in kset:
            raise AlgebraError("subgroup witness used a factor outside the K-component")
    value = sum(dims[v] for v in distinct)
    return ExpConjResult(value, tuple(distinct), tuple(vseq),
                         tuple(A.path_length(n) for n in tags),
                         tuple(witness), tuple(tags))


def _block_witness(A: GluedAlgebra, K: Subgroup, vseq, hops, class_of):
    """Concrete factor list z_0 p_1 z_1 ... p_l z_l for a block walk: each z
    is a K-degree basis element of its block with rows and columns matched
    to the adjoining radical paths."""
    g = A.group
    kset = set(K.elements)

    def block_element(t, cls_rep, row, col):
        comp = A.components[t]
        for h in comp.H.elements:
            if g.prod((g.inv[comp.tup[row]], h, comp.tup[col])) in kset:
                return A.semisimple_index(t, comp.index[(h, row, col)])
        raise AlgebraError("no K-degree element with the required position")

    def members(t, rep):
        comp = A.components[t]
        return [i for i in range(comp.r) if class_of[(t, i)] == rep]

    out = []
    for pos, (t, rep) in enumerate(vseq):
        row = A.tail_col(hops[pos - 1]) if pos > 0 else min(members(t, rep))
        col = A.head_row(hops[pos]) if pos < len(hops) else min(members(t, rep))
        out.append(block_element(t, rep, row, col))
        if pos < len(hops):
            out.append(hops[pos])
    return out


@dataclass
class InequalityReport:
    lhs: int
    rhs: int
    index: int
    holds: bool
    full: ExpConjResult
    sub: ExpConjResult

    def line(self) -> str:
        return (f"lhs={self.lhs} rhs={self.rhs} index={self.index} "
                f"holds={'true' if self.holds else 'false'}")


def check_main_inequality(A: GluedAlgebra, K: Subgroup) -> InequalityReport:
    """Full-group value against index^2 times the subgroup value.  A
    violation would falsify the implementation, not the statement; callers
    treat holds=False as a hard failure."""
    full = exp_conj(A)
    sub = exp_conj_sub(A, K)
    index = K.index()
    lhs = full.value
    rhs = index * index * sub.value
    return InequalityReport(lhs, rhs, index, lhs <= rhs, full, sub)


@dataclass
class MonotonicityReport:
    lhs: int
    rhs: int
    holds: bool

    def line(self) -> str:
        return f"lhs={self.lhs} rhs={self.rhs} holds={'true' if self.holds else 'false'}"


def check_monotonicity(A: GluedAlgebra, N: Subgroup) -> MonotonicityReport:
    """Value over the full grading against the value after pushing the
    grading to the quotient by a normal subgroup.

    The quotient-graded algebra is re-checked from scratch with its given
    block structure; the blocks are not re-split into quotient-simple
    summands (splitting them could only lower the right-hand side, so the
    comparison as computed is the conservative one)."""
    lhs = exp_conj(A).value
    rhs = exp_conj(regrade_quotient(A, N)).value
    return MonotonicityReport(lhs, rhs, lhs >= rhs)
