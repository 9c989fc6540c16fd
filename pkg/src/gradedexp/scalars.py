"""Exact scalars in the rationals extended by a primitive n-th root of unity.

Elements are polynomials in zeta with Fraction coefficients, reduced modulo
the n-th cyclotomic polynomial, so equality and zero tests are exact.  No
floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

MAX_MODULUS = 64


def euler_phi(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


def _poly_divmod(num: list[Fraction], den: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    num = list(num)
    quot = [Fraction(0)] * max(1, len(num) - len(den) + 1)
    lead = den[-1]
    for i in range(len(num) - len(den), -1, -1):
        c = num[i + len(den) - 1] / lead
        quot[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return quot, num


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[Fraction, ...]:
    """Coefficients of the n-th cyclotomic polynomial, low degree first."""
    if n == 1:
        return (Fraction(-1), Fraction(1))
    num = [Fraction(0)] * (n + 1)
    num[0], num[n] = Fraction(-1), Fraction(1)
    den = [Fraction(1)]
    for d in range(1, n):
        if n % d == 0:
            den = _poly_mul(den, list(cyclotomic_poly(d)))
    quot, rem = _poly_divmod(num, den)
    assert all(c == 0 for c in rem)
    while len(quot) > 1 and quot[-1] == 0:
        quot.pop()
    return tuple(quot)


def _poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


class CycRing:
    """The ring Q(zeta_n), with zeta a fixed primitive n-th root of unity.

    Precomputes the reductions of zeta^k modulo the cyclotomic polynomial so
    that products reduce by table lookup.
    """

    def __init__(self, modulus: int):
        if not 1 <= modulus <= MAX_MODULUS:
            raise ValueError(f"modulus {modulus} out of range 1..{MAX_MODULUS}")
        self.modulus = modulus
        self.degree = euler_phi(modulus)
        self.poly = cyclotomic_poly(modulus)
        # zeta^k as a reduced coefficient vector, for k up to the larger of
        # the modulus and the largest power a product of reduced elements
        # can produce.
        self._powers: list[tuple[Fraction, ...]] = []
        cur = [Fraction(0)] * self.degree
        cur[0] = Fraction(1)
        for _ in range(max(self.modulus, 2 * self.degree - 1)):
            self._powers.append(tuple(cur))
            cur = self._shift(cur)

    def _shift(self, coeffs: list[Fraction]) -> list[Fraction]:
        # multiply by zeta and reduce: zeta^deg = -(poly[0] + ... )/lead
        out = [Fraction(0)] + coeffs[:-1]
        top = coeffs[-1]
        if top:
            lead = self.poly[-1]
            for i in range(self.degree):
                out[i] -= top * self.poly[i] / lead
        return out

    def zero(self) -> CycScalar:
        return CycScalar(self, (Fraction(0),) * self.degree)

    def one(self) -> CycScalar:
        return self.zeta_power(0)

    def zeta_power(self, k: int) -> CycScalar:
        return CycScalar(self, self._powers[k % self.modulus])

    def from_fraction(self, q) -> CycScalar:
        q = Fraction(q)
        coeffs = (q,) + (Fraction(0),) * (self.degree - 1)
        return CycScalar(self, coeffs)

    def reduce(self, coeffs: list[Fraction]) -> tuple[Fraction, ...]:
        out = [Fraction(0)] * self.degree
        for k, c in enumerate(coeffs):
            if c:
                pw = self._powers[k]
                for i in range(self.degree):
                    out[i] += c * pw[i]
        return tuple(out)

    def __repr__(self):
        return f"CycRing(zeta_{self.modulus})"


@lru_cache(maxsize=None)
def cyclotomic(modulus: int) -> CycRing:
    return CycRing(modulus)


class CycScalar:
    """Immutable element of Q(zeta_n) in canonical reduced form."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: CycRing, coeffs: tuple[Fraction, ...]):
        self.ring = ring
        self.coeffs = coeffs

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def _same_ring(self, other: CycScalar):
        if self.ring is not other.ring:
            raise ValueError("scalars from different rings")

    def __add__(self, other: CycScalar) -> CycScalar:
        self._same_ring(other)
        return CycScalar(self.ring, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: CycScalar) -> CycScalar:
        self._same_ring(other)
        return CycScalar(self.ring, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> CycScalar:
        return CycScalar(self.ring, tuple(-a for a in self.coeffs))

    def __mul__(self, other) -> CycScalar:
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return CycScalar(self.ring, tuple(a * q for a in self.coeffs))
        self._same_ring(other)
        prod = _poly_mul(list(self.coeffs), list(other.coeffs))
        return CycScalar(self.ring, self.ring.reduce(prod))

    __rmul__ = __mul__

    def inv(self) -> CycScalar:
        """Multiplicative inverse via the extended Euclidean algorithm
        against the cyclotomic polynomial (irreducible over Q)."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        r0 = list(self.coeffs)
        while len(r0) > 1 and r0[-1] == 0:
            r0.pop()
        r1 = list(self.ring.poly)
        s0: list[Fraction] = [Fraction(1)]
        s1: list[Fraction] = [Fraction(0)]
        while not (len(r1) == 1 and r1[0] == 0):
            q, rem = _poly_divmod(r0, r1)
            r0, r1 = r1, rem
            qs1 = _poly_mul(q, s1)
            news = [Fraction(0)] * max(len(s0), len(qs1))
            for i, c in enumerate(s0):
                news[i] += c
            for i, c in enumerate(qs1):
                news[i] -= c
            while len(news) > 1 and news[-1] == 0:
                news.pop()
            s0, s1 = s1, news
        # r0 is a nonzero constant: s0*self + t*poly = r0
        g = r0[0]
        inv_coeffs = [c / g for c in s0]
        return CycScalar(self.ring, self.ring.reduce(inv_coeffs))

    def __truediv__(self, other: CycScalar) -> CycScalar:
        return self * other.inv()

    def __eq__(self, other) -> bool:
        if not isinstance(other, CycScalar):
            return NotImplemented
        return self.ring is other.ring and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((id(self.ring), self.coeffs))

    def __repr__(self):
        if self.is_zero():
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                terms.append(str(c))
            elif k == 1:
                terms.append(f"{c}*z" if c != 1 else "z")
            else:
                terms.append(f"{c}*z^{k}" if c != 1 else f"z^{k}")
        return " + ".join(terms)


def rescale_exponent(exp: int, from_modulus: int, to_modulus: int) -> int:
    """Map a power of zeta_{from} to the equivalent power of zeta_{to}
    (from must divide to)."""
    if to_modulus % from_modulus:
        raise ValueError("incompatible moduli")
    return (exp * (to_modulus // from_modulus)) % to_modulus
