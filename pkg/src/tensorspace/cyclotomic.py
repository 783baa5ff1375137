"""Exact arithmetic in the cyclotomic fields Q(zeta_m).

An element is stored as the coefficient vector of a polynomial in ``zeta_m``
of degree below ``phi(m)``, reduced modulo the m-th cyclotomic polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from numbers import Rational

Coeffs = tuple[Fraction, ...]


def _divisors(m: int) -> list[int]:
    return [d for d in range(1, m + 1) if m % d == 0]


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    """Exact division of integer polynomials (low degree first, ``den`` monic)."""
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1]
        out[i] = c
        if c:
            for j, dj in enumerate(den):
                num[i + j] -= c * dj
    assert not any(num), "inexact polynomial division"
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_m, lowest degree first."""
    if m < 1:
        raise ValueError("m must be positive")
    poly = [-1] + [0] * (m - 1) + [1]  # x^m - 1
    for d in _divisors(m)[:-1]:
        poly = _poly_divexact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


def phi(m: int) -> int:
    return len(cyclotomic_polynomial(m)) - 1


def _reduce(m: int, coeffs) -> Coeffs:
    cp = cyclotomic_polynomial(m)
    deg = len(cp) - 1
    c = [Fraction(x) for x in coeffs]
    for i in range(len(c) - 1, deg - 1, -1):
        lead = c[i]
        if lead:
            for j in range(deg):
                c[i - deg + j] -= lead * cp[j]
            c[i] = Fraction(0)
    c = c[:deg] + [Fraction(0)] * (deg - len(c))
    return tuple(c)


def _poly_mul(a, b) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


@dataclass(frozen=True)
class CyclotomicScalar:
    m: int
    coeffs: Coeffs

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("root order must be positive")
        if len(self.coeffs) != phi(self.m):
            object.__setattr__(self, "coeffs", _reduce(self.m, self.coeffs))
        else:
            object.__setattr__(self, "coeffs", tuple(Fraction(x) for x in self.coeffs))

    # constructors -----------------------------------------------------
    @classmethod
    def from_poly(cls, m: int, coeffs) -> CyclotomicScalar:
        """Element sum_j coeffs[j] * zeta_m**j (any length; reduced)."""
        return cls(m, _reduce(m, coeffs))

    @classmethod
    def rational(cls, x, m: int = 1) -> CyclotomicScalar:
        return cls(m, (Fraction(x),) + (Fraction(0),) * (phi(m) - 1))

    @classmethod
    def root(cls, m: int, k: int = 1) -> CyclotomicScalar:
        """zeta_m ** k."""
        k %= m
        return cls(m, _reduce(m, [0] * k + [1]))

    @classmethod
    def zero(cls, m: int = 1) -> CyclotomicScalar:
        return cls.rational(0, m)

    @classmethod
    def one(cls, m: int = 1) -> CyclotomicScalar:
        return cls.rational(1, m)

    # queries ---------------------------------------------------------
    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def lift(self, big: int) -> CyclotomicScalar:
        """The same number as an element of Q(zeta_big); ``m`` must divide ``big``."""
        if big % self.m:
            raise ValueError(f"cannot lift from order {self.m} to {big}")
        if big == self.m:
            return self
        step = big // self.m
        raw = [Fraction(0)] * (step * (len(self.coeffs) - 1) + 1)
        for j, c in enumerate(self.coeffs):
            raw[j * step] = c
        return CyclotomicScalar.from_poly(big, raw)

    def conjugate(self) -> CyclotomicScalar:
        raw = [Fraction(0)] * self.m
        for j, c in enumerate(self.coeffs):
            raw[(-j) % self.m] += c
        return CyclotomicScalar.from_poly(self.m, raw)

    def to_complex(self) -> complex:
        import cmath

        z = cmath.exp(2j * cmath.pi / self.m)
        return sum(float(c) * z**j for j, c in enumerate(self.coeffs))

    # arithmetic ------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, CyclotomicScalar):
            if other.m == self.m:
                return self, other
            big = self.m * other.m // gcd(self.m, other.m)
            return self.lift(big), other.lift(big)
        if isinstance(other, (int, Rational)):
            return self, CyclotomicScalar.rational(other, self.m)
        return None

    def __add__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return CyclotomicScalar(a.m, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicScalar(self.m, tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return CyclotomicScalar(a.m, tuple(x - y for x, y in zip(a.coeffs, b.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            x = Fraction(other)
            return CyclotomicScalar(self.m, tuple(c * x for c in self.coeffs))
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return CyclotomicScalar.from_poly(a.m, _poly_mul(a.coeffs, b.coeffs))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = CyclotomicScalar.one(self.m)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def inverse(self) -> CyclotomicScalar:
        """Multiplicative inverse via the extended Euclidean algorithm over Q[x]."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if self.is_rational():
            return CyclotomicScalar.rational(1 / self.coeffs[0], self.m)
        mod = [Fraction(c) for c in cyclotomic_polynomial(self.m)]
        r0, r1 = mod, _trim(list(self.coeffs))
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while len(r1) > 1 or r1[0] == 0:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _trim(_poly_sub(s0, _poly_mul(q, s1)))
        # r1 is a nonzero constant
        inv = [c / r1[0] for c in s1]
        return CyclotomicScalar.from_poly(self.m, inv)

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            x = Fraction(other)
            return CyclotomicScalar(self.m, tuple(c / x for c in self.coeffs))
        if isinstance(other, CyclotomicScalar):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        return self.inverse() * other

    # comparison ------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Rational)):
            return self.is_rational() and self.coeffs[0] == other
        if isinstance(other, CyclotomicScalar):
            if other.m == self.m:
                return self.coeffs == other.coeffs
            if self.is_rational() and other.is_rational():
                return self.coeffs[0] == other.coeffs[0]
            a, b = self._coerce(other)
            return a.coeffs == b.coeffs
        return NotImplemented

    def __hash__(self):
        # rational values hash like Fractions; others only meet equals of the same order
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.m, self.coeffs))

    def __repr__(self):
        return f"CyclotomicScalar({self.m}, {self})"

    def __str__(self):
        terms = []
        for j, c in enumerate(self.coeffs):
            if not c:
                continue
            if j == 0:
                terms.append(str(c))
            else:
                z = f"z{self.m}" + (f"^{j}" if j > 1 else "")
                terms.append(z if c == 1 else f"{c}*{z}")
        return " + ".join(terms) if terms else "0"


def _trim(p: list) -> list:
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _poly_sub(a, b):
    size = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (size - len(a))
    b = list(b) + [Fraction(0)] * (size - len(b))
    return [x - y for x, y in zip(a, b)]


def _poly_divmod(a, b):
    a = _trim([Fraction(x) for x in a])
    b = _trim([Fraction(x) for x in b])
    if len(a) < len(b):
        return [Fraction(0)], a
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    r = list(a)
    for i in range(len(q) - 1, -1, -1):
        c = r[i + len(b) - 1] / b[-1]
        q[i] = c
        if c:
            for j, bj in enumerate(b):
                r[i + j] -= c * bj
    return q, _trim(r[: len(b) - 1] or [Fraction(0)])


def as_scalar(x, m: int) -> CyclotomicScalar:
    """Coerce a rational or cyclotomic value into Q(zeta_m) (lifting if needed)."""
    if isinstance(x, CyclotomicScalar):
        return x.lift(m) if x.m != m else x
    return CyclotomicScalar.rational(x, m)


def collapse(x):
    """Rational cyclotomic values become Fractions; everything else is kept."""
    if isinstance(x, CyclotomicScalar) and x.is_rational():
        return x.coeffs[0]
    if isinstance(x, (int, Rational)) and not isinstance(x, Fraction):
        return Fraction(x)
    return x
