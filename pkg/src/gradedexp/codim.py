"""Brute-force multilinear codimension of small structure-constant algebras.

c_n is the rank of the evaluation matrix whose rows are the n! multilinear
monomials and whose columns are indexed by basis substitutions and output
coordinates; the graded variant restricts each variable to a homogeneous
component and sums the block ranks over all degree assignments.  Ranks are
exact (fraction-free elimination over the cyclotomic rationals); no growth
conclusion is ever drawn from them.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import factorial

from .algebras import AlgebraError, _compose
from .linalg import SpanBuilder
from .rng import Xorshift
from .scalars import cyclotomic

DEFAULT_WORK_CAP = 5_000_000


def _columns_for_substitution(alg, perms, sub, ring):
    """Vectors over the monomial rows contributed by one substitution,
    bucketed by output coordinate."""
    buckets: dict[int, list] = {}
    for row, perm in enumerate(perms):
        out = (0, sub[perm[0]])
        for p in perm[1:]:
            out = _compose(alg, out, (0, sub[p]))
            if out is None:
                break
        if out is None:
            continue
        exp, coord = out
        buckets.setdefault(coord, []).append((row, exp))
    cols = []
    nrows = len(perms)
    for coord in sorted(buckets):
        vec = [ring.zero()] * nrows
        for row, exp in buckets[coord]:
            vec[row] = ring.zeta_power(exp)
        cols.append(vec)
    return cols


def codimension(alg, n: int, order_seed: int | None = None,
                max_substitutions: int | None = None,
                work_cap: int = DEFAULT_WORK_CAP) -> int:
    """Exact c_n by evaluation rank.  order_seed shuffles the enumeration
    (the rank must not change); max_substitutions truncates the column set
    and then the result is only a lower bound."""
    if n < 1:
        raise AlgebraError("n must be positive")
    work = alg.dim ** n * factorial(n)
    if max_substitutions is None and work > work_cap:
        raise AlgebraError(f"codimension work {work} exceeds cap {work_cap}")
    ring = cyclotomic(alg.modulus)
    perms = list(itertools.permutations(range(n)))
    subs = list(itertools.product(range(alg.dim), repeat=n))
    if order_seed is not None:
        rng = Xorshift(order_seed)
        perms = rng.sample(perms, len(perms))
        subs = rng.sample(subs, len(subs))
    if max_substitutions is not None:
        subs = subs[:max_substitutions]
    span = SpanBuilder(ring, len(perms))
    for sub in subs:
        for col in _columns_for_substitution(alg, perms, sub, ring):
            span.add(col)
        if span.dim == len(perms):
            break
    return span.dim


def graded_codimension(alg, n: int, order_seed: int | None = None,
                       work_cap: int = DEFAULT_WORK_CAP) -> int:
    """Exact graded c_n: variables carry degree assignments and substitute
    only basis elements of matching degree; the evaluation matrix is block
    diagonal over assignments, so the rank is the sum of block ranks."""
    if n < 1:
        raise AlgebraError("n must be positive")
    order = alg.group.order
    work = (alg.dim ** n) * factorial(n) * 2
    if order ** n * factorial(n) > work_cap or work > work_cap:
        raise AlgebraError("graded codimension work exceeds cap")
    ring = cyclotomic(alg.modulus)
    perms = list(itertools.permutations(range(n)))
    buckets: dict[int, list[int]] = {}
    for i, d in enumerate(alg.degrees):
        buckets.setdefault(d, []).append(i)
    assignments = list(itertools.product(range(order), repeat=n))
    if order_seed is not None:
        rng = Xorshift(order_seed)
        perms = rng.sample(perms, len(perms))
        assignments = rng.sample(assignments, len(assignments))
    total = 0
    for assign in assignments:
        pools = [buckets.get(g, []) for g in assign]
        if any(not p for p in pools):
            continue
        span = SpanBuilder(ring, len(perms))
        for sub in itertools.product(*pools):
            for col in _columns_for_substitution(alg, perms, sub, ring):
                span.add(col)
            if span.dim == len(perms):
                break
        total += span.dim
    return total


@dataclass
class CodimReport:
    """Codimension table with display-only root trends; never a growth
    conclusion."""

    name: str
    rows: list[tuple[int, int, str]] = field(default_factory=list)
    graded_rows: list[tuple[int, int, str]] = field(default_factory=list)
    subgroup_rows: list[tuple[int, int, str]] = field(default_factory=list)
    exp_conj_value: int | None = None
    notes: list[str] = field(default_factory=list)

    def lines(self) -> list[str]:
        out = [f"codimension report for {self.name} (trend only, not a limit)"]
        for n, c, root in self.rows:
            out.append(f"  c_{n} = {c}   c^(1/n) ~ {root}")
        for n, c, root in self.graded_rows:
            out.append(f"  graded c_{n} = {c}   c^(1/n) ~ {root}")
        for n, c, root in self.subgroup_rows:
            out.append(f"  subgroup-component c_{n} = {c}   c^(1/n) ~ {root}")
        if self.exp_conj_value is not None:
            out.append(f"  structural exponent value = {self.exp_conj_value}")
        out.extend("  " + s for s in self.notes)
        return out


def _root_display(c: int, n: int) -> str:
    if c == 0:
        return "0"
    return f"{c ** (1.0 / n):.4f}"


def growth_report(alg, n_max: int, K=None, graded: bool = False,
                  exp_conj_value: int | None = None,
                  name: str = "algebra") -> CodimReport:
    report = CodimReport(name, exp_conj_value=exp_conj_value)
    report.notes.append("finite-n table; roots are displayed rounded, values exact")
    for n in range(1, n_max + 1):
        c = codimension(alg, n)
        report.rows.append((n, c, _root_display(c, n)))
    if graded:
        for n in range(1, n_max + 1):
            c = graded_codimension(alg, n)
            report.graded_rows.append((n, c, _root_display(c, n)))
    if K is not None:
        from .algebras import subgroup_component
        view = subgroup_component(alg, K)
        for n in range(1, n_max + 1):
            c = codimension(view, n)
            report.subgroup_rows.append((n, c, _root_display(c, n)))
    return report


# ---------------------------------------------------------------------------
# small ad-hoc algebras for oracles and tests
# ---------------------------------------------------------------------------

def table_algebra(group, degrees, modulus, table, name="table"):
    """Structure-constant algebra from an explicit dict
    (i, j) -> (exponent, index) | None."""
    from .grassmann import StructureAlgebra

    def rule(x, y):
        return table.get((x, y))

    return StructureAlgebra(group, degrees, modulus, rule,
                            labels=[f"{name}{i}" for i in range(len(degrees))])


def ground_field_algebra(group=None):
    """The one-dimensional unital algebra."""
    from .groups import cyclic_group
    g = group or cyclic_group(1)
    return table_algebra(g, [0], 1, {(0, 0): (0, 0)}, name="F")


def square_zero_algebra(dim: int, group=None):
    """All products vanish."""
    from .groups import cyclic_group
    g = group or cyclic_group(1)
    return table_algebra(g, [0] * dim, 1, {}, name="nil")


def permuted_algebra(alg, perm):
    """Transport the structure constants along a basis permutation; any
    isomorphism invariant must be unchanged."""
    from .grassmann import StructureAlgebra
    inv = [0] * len(perm)
    for i, p in enumerate(perm):
        inv[p] = i

    def rule(x, y):
        out = alg.mul_basis(inv[x], inv[y])
        if out is None:
            return None
        return out[0], perm[out[1]]

    degrees = [alg.degrees[inv[i]] for i in range(alg.dim)]
    return StructureAlgebra(alg.group, degrees, alg.modulus, rule)
