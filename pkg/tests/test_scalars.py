from fractions import Fraction

import pytest

from gradedexp.linalg import SpanBuilder, rank_of_rows
from gradedexp.rng import Xorshift
from gradedexp.scalars import (CycScalar, cyclotomic, cyclotomic_poly,
                               euler_phi, rescale_exponent)


def test_cyclotomic_polynomials():
    as_ints = lambda t: [int(c) for c in t]
    assert as_ints(cyclotomic_poly(1)) == [-1, 1]
    assert as_ints(cyclotomic_poly(2)) == [1, 1]
    assert as_ints(cyclotomic_poly(3)) == [1, 1, 1]
    assert as_ints(cyclotomic_poly(4)) == [1, 0, 1]
    assert as_ints(cyclotomic_poly(6)) == [1, -1, 1]
    assert as_ints(cyclotomic_poly(12)) == [1, 0, -1, 0, 1]


def test_zeta_order():
    for n in (1, 2, 3, 4, 6, 8, 12):
        R = cyclotomic(n)
        z = R.zeta_power(1)
        p = R.one()
        for k in range(1, n):
            p = p * z
            if n > 1:
                assert p != R.one(), (n, k)   # primitive
        assert p * z == R.one()


def _random_scalar(R, rng):
    coeffs = tuple(Fraction(rng.randint(-3, 3), rng.randint(1, 4))
                   for _ in range(R.degree))
    return CycScalar(R, coeffs)


def test_field_axioms_random():
    rng = Xorshift(11)
    for n in (3, 4, 5, 8):
        R = cyclotomic(n)
        for _ in range(25):
            a, b, c = (_random_scalar(R, rng) for _ in range(3))
            assert (a + b) + c == a + (b + c)
            assert a + b == b + a
            assert (a * b) * c == a * (b * c)
            assert a * b == b * a
            assert a * (b + c) == a * b + a * c
            if not a.is_zero():
                assert a * a.inv() == R.one()


def test_inverse_of_zero():
    R = cyclotomic(4)
    with pytest.raises(ZeroDivisionError):
        R.zero().inv()


def test_rescale_exponent():
    R = cyclotomic(12)
    assert R.zeta_power(rescale_exponent(1, 2, 12)) == R.zeta_power(6)
    assert R.zeta_power(rescale_exponent(1, 3, 12)) == R.zeta_power(4)
    with pytest.raises(ValueError):
        rescale_exponent(1, 5, 12)


def test_euler_phi():
    assert [euler_phi(n) for n in range(1, 13)] == [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]


def _rational_rank_oracle(rows):
    """Plain Gaussian elimination over Fraction for cross-checking."""
    m = [list(r) for r in rows]
    rank = 0
    cols = len(m[0]) if m else 0
    for c in range(cols):
        piv = None
        for r in range(rank, len(m)):
            if m[r][c] != 0:
                piv = r
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][c] != 0:
                f = Fraction(m[r][c], m[rank][c])
                m[r] = [x - f * y for x, y in zip(m[r], m[rank])]
        rank += 1
    return rank


def test_span_rank_against_rational_oracle():
    rng = Xorshift(5)
    R = cyclotomic(1)   # plain rationals
    for _ in range(20):
        rows = [[Fraction(rng.randint(-2, 2)) for _ in range(5)] for _ in range(4)]
        want = _rational_rank_oracle(rows)
        got = rank_of_rows(R, [[R.from_fraction(x) for x in row] for row in rows])
        assert got == want


def test_span_membership():
    R = cyclotomic(4)
    span = SpanBuilder(R, 3)
    v1 = [R.one(), R.zeta_power(1), R.zero()]
    v2 = [R.zero(), R.one(), R.one()]
    assert span.add(v1) and span.add(v2)
    combo = [a + b for a, b in zip(v1, v2)]
    assert span.contains(combo)
    assert not span.contains([R.zero(), R.zero(), R.one()])
