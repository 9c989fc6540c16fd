"""Mechanized monomial machinery behind the subgroup inequality.

From a witness of the structural exponent we build an enriched monomial:
each semisimple stop is expanded into a circuit through all r^2 matrix
positions of its component, every diagonal position is further expanded so
the running products sweep the whole subgroup H, and the radical elements
absorb the in-between semisimple junk.  The prefix degrees of the enriched
monomial then yield, per left-K-coset representative of minimal length, a
unique parse into a leading block, K-degree blocks, and a tail; the
idempotent "stops" at block ends pin down K-simple blocks, and their visit
counts are verified against the exact double-coset formula together with
the membership lemmas and the closing inequality chain.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebras import AlgebraError, GluedAlgebra, GradedSimple, product_of_basis
from .decomposition import index_classes, k_simple_blocks
from .expconj import ExpConjResult
from .groups import Subgroup, coset_map, conjugate_subgroup, double_cosets, intersect


def elementary_matrix_circuit(r: int, start: int = 0) -> list[tuple[int, int]]:
    """A sequence of all r^2 matrix cells (row, col), consecutively
    composable, beginning with the diagonal cell (start, start) and ending
    in column start, so the product of the elementary matrices is the
    idempotent at (start, start).  Realized as an Eulerian circuit on the
    complete digraph-with-loops on r vertices (in-degree = out-degree = r
    everywhere, so a circuit through all r^2 edges exists)."""
    if not 0 <= start < r:
        raise ValueError("start index out of range")
    targets = [list(range(r - 1, -1, -1)) for _ in range(r)]
    stack = [start]
    tour = []
    while stack:
        v = stack[-1]
        if targets[v]:
            stack.append(targets[v].pop())
        else:
            tour.append(stack.pop())
    tour.reverse()
    cells = list(zip(tour, tour[1:]))
    if len(cells) != r * r or len(set(cells)) != r * r:
        raise AlgebraError("circuit failed to cover all cells")
    k = cells.index((start, start))
    cells = cells[k:] + cells[:k]
    return cells


@dataclass
class TraceMonomial:
    """The enriched monomial as a factor list of basis indices of the glued
    algebra, with prefix-degree bookkeeping.

    prefix_degrees[l] is the degree of the product of the first l+1
    factors; the full product is certified nonzero at construction."""

    algebra: GluedAlgebra
    factors: tuple[int, ...]
    prefix_degrees: tuple[int, ...]
    components: tuple[int, ...]      # distinct components, first-visit order

    def __len__(self):
        return len(self.factors)

    def is_radical_factor(self, pos: int) -> bool:
        """pos is 1-based."""
        return self.algebra.is_radical(self.factors[pos - 1])

    def stop_idempotent(self, pos: int) -> tuple[int, int]:
        """(component, diagonal index) of the unique primitive idempotent
        that right-multiplies the prefix ending at 1-based position pos
        without killing it: the target column of the factor there."""
        n = self.factors[pos - 1]
        return self.algebra.target_component(n), self.algebra.tail_col(n)


def _unit(comp) -> int:
    return comp.index[(0, 0, 0)]


def _step_chain(H_elements) -> list[int]:
    """h_1, h_2, ... with partial products h_1 h_2 ... h_m sweeping the
    subgroup in sorted element order (h_1 = identity)."""
    return list(H_elements)


def _expanded_block(A: GluedAlgebra, t: int, start: int) -> list[int]:
    """Factor list for one component: the matrix-cell circuit with every
    diagonal cell expanded into the subgroup sweep."""
    comp = A.components[t]
    if not isinstance(comp, GradedSimple):
        raise AlgebraError("trace construction needs canonical-form components")
    g = A.group
    out = []
    eta = list(comp.H.elements)
    for (row, col) in elementary_matrix_circuit(comp.r, start):
        if row != col:
            out.append(A.semisimple_index(t, comp.index[(0, row, col)]))
            continue
        prev = 0
        for m in eta:
            h = g.mul[g.inv[prev]][m]
            out.append(A.semisimple_index(t, comp.index[(h, row, row)]))
            out.append(A.semisimple_index(t, comp.index[(0, row, row)]))
            prev = m
    return out


def build_trace_monomial(A: GluedAlgebra, witness: ExpConjResult) -> TraceMonomial:
    """Enrich an exponent witness into the full trace monomial.

    Consecutive repeats of already-visited components in the witness walk
    are swallowed into the connecting radical elements, each expanded
    component contributes its circuit-with-sweeps block, and the whole
    product is re-verified nonzero and re-checked to realize the witness
    value."""
    vseq = list(witness.vertex_walk)
    if not vseq:
        raise AlgebraError("empty witness")
    edge_ids = list(witness.hops) if witness.hops else []
    if len(edge_ids) != len(vseq) - 1:
        # the full-group search stores edges implicitly of length 1 each
        raise AlgebraError("witness walk and hops are inconsistent")

    first_pos: dict[int, int] = {}
    order: list[int] = []
    for pos, v in enumerate(vseq):
        if v not in first_pos:
            first_pos[v] = pos
            order.append(v)
    segments = []
    for a, b in zip(order, order[1:]):
        segments.append((first_pos[a], first_pos[b]))

    factors: list[int] = []
    for n, t in enumerate(order):
        factors.extend(_expanded_block(A, t, 0))
        if n < len(segments):
            lo, hi = segments[n]
            seq = tuple(edge_ids[lo:hi])
            stops = [vseq[p] for p in range(lo, hi + 1)]
            semis = tuple((s, _unit(A.components[s])) for s in stops)
            factors.append(A.index[(semis, seq)])

    prod = product_of_basis(A, factors)
    if prod is None:
        raise AlgebraError("enriched monomial vanished")
    value = sum(A.components[t].dim for t in order)
    if value != witness.value:
        raise AlgebraError("enriched monomial does not realize the witness value")

    g = A.group
    degs = []
    d = 0
    for f in factors:
        d = g.mul[d][A.degrees[f]]
        degs.append(d)
    return TraceMonomial(A, tuple(factors), tuple(degs), tuple(order))


def trace_from_exp_conj(A: GluedAlgebra) -> TraceMonomial:
    from .expconj import exp_conj
    res = exp_conj(A)
    hops = res.hops
    if not hops and len(res.vertex_walk) > 1:
        raise AlgebraError("witness carries no hop data")
    return build_trace_monomial(A, res)


# ---------------------------------------------------------------------------
# prefix-degree sets and parses
# ---------------------------------------------------------------------------

@dataclass
class PrefixData:
    """Prefix degrees of the trace classified by left K-coset.

    lengths[g] is the minimal 1-based prefix length whose degree is g;
    reps maps each represented coset (by its coset index) to the unique
    minimal-length degree representing it."""

    degrees: frozenset[int]
    lengths: dict[int, int]
    cosets: tuple[int, ...]
    reps: dict[int, int]

    def representatives(self) -> list[int]:
        return sorted(self.reps.values(), key=lambda g: self.lengths[g])


def prefix_degree_data(L: TraceMonomial, K: Subgroup) -> PrefixData:
    cm = coset_map(L.algebra.group, K)
    lengths: dict[int, int] = {}
    for pos, d in enumerate(L.prefix_degrees, start=1):
        if d not in lengths:
            lengths[d] = pos
    degrees = frozenset(lengths)
    by_coset: dict[int, int] = {}
    for d in sorted(degrees, key=lambda x: lengths[x]):
        by_coset.setdefault(cm[d], d)
    data = PrefixData(degrees, lengths, tuple(sorted(by_coset)), by_coset)
    if len(data.reps) > K.index():
        raise AlgebraError("more coset representatives than cosets")
    return data


@dataclass
class Stop:
    position: int        # 1-based factor position ending the block
    component: int
    diagonal: int        # matrix index i of the idempotent e_ii
    k1: int              # degree of the K-blocks before this stop


@dataclass
class TraceParse:
    """The unique parse determined by one minimal coset representative:
    a leading g-degree block with no shorter g-degree prefix, then maximal
    runs of shortest K-degree blocks, then a tail with no K-degree prefix."""

    g: int
    lead_end: int                  # 1-based end of the leading block
    block_ends: tuple[int, ...]    # 1-based ends of the K-degree blocks
    tail_start: int                # 1-based start of the tail (len+1 if empty)
    stops: tuple[Stop, ...]


def block_parse(L: TraceMonomial, K: Subgroup, g: int) -> TraceParse:
    A = L.algebra
    cm = coset_map(A.group, K)
    data = prefix_degree_data(L, K)
    if g not in data.reps.values():
        raise AlgebraError(f"degree {g} is not a minimal coset representative")
    mu = data.lengths[g]
    target = cm[g]
    d = len(L)
    pd = L.prefix_degrees

    ends = [pos for pos in range(mu, d + 1) if cm[pd[pos - 1]] == target]
    assert ends and ends[0] == mu

    # condition checks: minimality of the leading block, shortest-block
    # property of each K-degree run, and no K-degree prefix in the tail
    for pos in range(1, mu):
        if pd[pos - 1] == g:
            raise AlgebraError("leading block has a shorter same-degree prefix")
    for a, b in zip(ends, ends[1:]):
        for pos in range(a + 1, b):
            if cm[pd[pos - 1]] == target:
                raise AlgebraError("K-degree block is not shortest")
    for pos in range(ends[-1] + 1, d + 1):
        if cm[pd[pos - 1]] == target:
            raise AlgebraError("tail contains a K-degree prefix")

    ginv = A.group.inv[g]
    stops = []
    for pos in ends:
        comp, diag = L.stop_idempotent(pos)
        k1 = A.group.mul[ginv][pd[pos - 1]]
        if not K.contains(k1):
            raise AlgebraError("stop degree left the coset")
        stops.append(Stop(pos, comp, diag, k1))
    return TraceParse(g, mu, tuple(ends[1:]), ends[-1] + 1, tuple(stops))


def parse_is_unique(L: TraceMonomial, K: Subgroup, g: int) -> bool:
    """Exhaustive alternative-parse search: every candidate leading-block
    length other than the minimal one violates the no-shorter-prefix
    condition, so exactly one parse satisfies the three conditions."""
    pd = L.prefix_degrees
    candidates = [pos for pos in range(1, len(L) + 1) if pd[pos - 1] == g]
    valid = [pos for pos in candidates
             if not any(pd[q - 1] == g for q in range(1, pos))]
    return len(valid) == 1


def stop_positions_closed_form(L: TraceMonomial, K: Subgroup, g: int) -> list[int]:
    """Stops are exactly the positions at or past the leading block whose
    prefix degree falls in gK (cross-check for the greedy parse)."""
    cm = coset_map(L.algebra.group, K)
    data = prefix_degree_data(L, K)
    mu = data.lengths[g]
    return [pos for pos in range(mu, len(L) + 1)
            if cm[L.prefix_degrees[pos - 1]] == cm[g]]


# ---------------------------------------------------------------------------
# visit counting
# ---------------------------------------------------------------------------

@dataclass
class VisitReport:
    trace: TraceMonomial
    K: Subgroup
    omega0: dict[int, int]                     # coset index -> representative degree
    determined: dict[int, dict[int, int]]      # rep degree -> {component -> class rep}
    counts: dict[tuple[int, int], int]         # (component, class rep) -> visits
    formula: dict[tuple[int, int], int]        # the exact double-coset prediction
    component_sums: dict[int, tuple[int, int]] # component -> (lhs, rhs) aggregate
    problems: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.problems

    def check(self):
        if self.problems:
            raise AlgebraError("; ".join(self.problems))


def visit_counts(L: TraceMonomial, K: Subgroup) -> VisitReport:
    """Per-trace verification of the visit-count formula and the membership
    lemmas.  Any mismatch is reported as a problem (an implementation bug,
    never tolerated by callers)."""
    A = L.algebra
    g = A.group
    data = prefix_degree_data(L, K)
    kset = set(K.elements)
    index = K.index()

    class_of: dict[tuple[int, int], int] = {}
    class_members: dict[tuple[int, int], tuple[int, ...]] = {}
    for t in L.components:
        comp = A.components[t]
        for cls in index_classes(comp, K):
            for i in cls:
                class_of[(t, i)] = cls[0]
            class_members[(t, cls[0])] = cls

    problems: list[str] = []
    parses: dict[int, TraceParse] = {}
    determined: dict[int, dict[int, int]] = {}
    stop_data: dict[int, dict[int, Stop]] = {}
    for rep in data.reps.values():
        parse = block_parse(L, K, rep)
        parses[rep] = parse
        comp_class: dict[int, int] = {}
        comp_stop: dict[int, Stop] = {}
        for stop in parse.stops:
            cls = class_of[(stop.component, stop.diagonal)]
            if stop.component in comp_class and comp_class[stop.component] != cls:
                problems.append(
                    f"two stops of {rep} in component {stop.component} "
                    f"hit classes {comp_class[stop.component]} and {cls}")
            comp_class.setdefault(stop.component, cls)
            comp_stop.setdefault(stop.component, stop)
        determined[rep] = comp_class
        stop_data[rep] = comp_stop

    counts: dict[tuple[int, int], int] = {}
    formula: dict[tuple[int, int], int] = {}
    for t in L.components:
        comp = A.components[t]
        dc = double_cosets(g, comp.H, K)
        for cls in index_classes(comp, K):
            key = (t, cls[0])
            counts[key] = sum(1 for rep in determined if determined[rep].get(t) == cls[0])
            coset = dc.classes[dc.class_of(comp.tup[cls[0]])]
            formula[key] = len(coset) // K.size
            if counts[key] != formula[key]:
                problems.append(f"visit count {counts[key]} != {formula[key]} at {key}")
            if counts[key] == 0:
                problems.append(f"class {key} never visited")

    if len(data.reps) > index:
        problems.append("more minimal representatives than cosets")

    # membership lemmas, per stop of each representative
    for rep, comp_stop in stop_data.items():
        for t, stop in comp_stop.items():
            comp = A.components[t]
            gi = comp.tup[stop.diagonal]
            conj = conjugate_subgroup(g, gi, comp.H)
            base = g.mul[rep][stop.k1]
            tset = {g.prod((base, x, k)) for x in conj.elements for k in kset}
            cls = class_of[(t, stop.diagonal)]
            for other in determined:
                visits_t = determined[other].get(t)
                if other in tset and visits_t is not None and visits_t != cls:
                    problems.append(
                        f"element {other} in the translate of {rep} determines "
                        f"class {visits_t} != {cls} in component {t}")
                if visits_t == cls and other not in tset:
                    problems.append(
                        f"element {other} determines class {cls} in component {t} "
                        f"but lies outside the translate of {rep}")
            cm = coset_map(g, K)
            for coset_idx in {cm[x] for x in tset}:
                if coset_idx not in data.reps:
                    problems.append(
                        f"coset {coset_idx} inside the translate of {rep} "
                        f"is unrepresented")

    component_sums: dict[int, tuple[int, int]] = {}
    for t in L.components:
        comp = A.components[t]
        dec = k_simple_blocks(comp, K)
        dim_of_class = {b.rep_index: b.dim for b in dec.nonzero_blocks()}
        lhs = len(determined) * comp.dim
        rhs = index * index * sum(
            dim_of_class[determined[rep][t]] for rep in determined
            if t in determined[rep])
        component_sums[t] = (lhs, rhs)
        if lhs > rhs:
            problems.append(f"per-component aggregate fails at {t}: {lhs} > {rhs}")

    omega0 = {ci: data.reps[ci] for ci in data.reps}
    return VisitReport(L, K, omega0, determined, counts, formula,
                       component_sums, problems)


# ---------------------------------------------------------------------------
# the closing inequality chain
# ---------------------------------------------------------------------------

@dataclass
class InequalityChain:
    pis: tuple[int, ...]
    m: int
    index: int
    weighted: bool      # |H|(sum pi)^2 <= [G:K] * sum (|HgK|/|K|)|gHg^-1 cap K| pi^2
    reduced: bool       # (sum pi)^2 <= [G:K] sum pi^2
    cauchy: bool        # (sum pi)^2 <= m sum pi^2
    cauchy_tight: bool  # equality iff all pi equal
    identity_ok: bool   # the per-class group identity used to reduce

    @property
    def ok(self):
        return self.weighted and self.reduced and self.cauchy and self.identity_ok


def final_inequality_report(B: GradedSimple, K: Subgroup) -> InequalityChain:
    """Evaluate the three-step closing chain on one canonical component,
    with the class sizes of the grading tuple over all double cosets
    (zeros included)."""
    g = B.group
    dc = double_cosets(g, B.H, K)
    m = len(dc.classes)
    pis = []
    for cls in dc.classes:
        pis.append(sum(1 for x in B.tup if x in cls))
    total = sum(pis)
    assert total == B.r
    index = K.index()

    identity_ok = True
    weighted_rhs = 0
    for cls, rep, pi in zip(dc.classes, dc.representatives, pis):
        inter = intersect(conjugate_subgroup(g, rep, B.H), K)
        coef = (len(cls) // K.size) * inter.size
        if coef != B.H.size:
            identity_ok = False
        weighted_rhs += coef * pi * pi
    weighted = B.H.size * total * total <= index * weighted_rhs
    sq = sum(p * p for p in pis)
    reduced = total * total <= index * sq
    cauchy = total * total <= m * sq
    all_equal = len(set(pis)) <= 1
    cauchy_tight = (total * total == m * sq) == all_equal
    return InequalityChain(tuple(pis), m, index, weighted, reduced,
                           cauchy, cauchy_tight, identity_ok)
