"""Fraction-free exact linear algebra over the cyclotomic rationals.

Row reduction uses cross-multiplication only (v <- p[r]*v - v[r]*p), so no
inverses are ever taken and every entry stays exactly representable.
"""

from __future__ import annotations

from .scalars import CycRing, CycScalar


class SpanBuilder:
    """Incrementally maintained echelon basis of a subspace of ring^n."""

    def __init__(self, ring: CycRing, length: int):
        self.ring = ring
        self.length = length
        self.pivots: list[tuple[int, list[CycScalar]]] = []

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def _reduce(self, vec: list[CycScalar]) -> list[CycScalar]:
        for r, p in self.pivots:
            if not vec[r].is_zero():
                a, b = p[r], vec[r]
                vec = [a * v - b * q for v, q in zip(vec, p)]
        return vec

    def residue(self, vec: list[CycScalar]) -> list[CycScalar]:
        return self._reduce(list(vec))

    def contains(self, vec) -> bool:
        return all(c.is_zero() for c in self._reduce(list(vec)))

    def add(self, vec) -> bool:
        """Add a vector; True if it enlarged the span."""
        red = self._reduce(list(vec))
        for r, c in enumerate(red):
            if not c.is_zero():
                self.pivots.append((r, red))
                return True
        return False


def rank_of_columns(ring: CycRing, length: int, columns) -> int:
    """Rank of the matrix whose columns are the given length-`length`
    vectors, by fraction-free elimination; stops early at full rank."""
    span = SpanBuilder(ring, length)
    for col in columns:
        span.add(col)
        if span.dim == length:
            break
    return span.dim


def rank_of_rows(ring: CycRing, rows: list[list[CycScalar]]) -> int:
    if not rows:
        return 0
    span = SpanBuilder(ring, len(rows[0]))
    for row in rows:
        span.add(row)
    return span.dim
