"""Rational polynomials in x0..x_{n-1}, the function view of symmetric forms."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

Exps = tuple[int, ...]


@dataclass(frozen=True)
class Polynomial:
    n: int
    terms: Mapping[Exps, Fraction]

    def __post_init__(self):
        clean = {}
        for e, c in self.terms.items():
            e = tuple(int(a) for a in e)
            if len(e) != self.n or any(a < 0 for a in e):
                raise ValueError(f"bad exponent vector {e} for {self.n} variables")
            c = Fraction(c)
            if c:
                clean[e] = clean.get(e, Fraction(0)) + c
        object.__setattr__(self, "terms", {e: c for e, c in clean.items() if c})

    @classmethod
    def zero(cls, n: int) -> Polynomial:
        return cls(n, {})

    @classmethod
    def linear(cls, coeffs: Sequence) -> Polynomial:
        n = len(coeffs)
        return cls(n, {tuple(int(i == j) for j in range(n)): c for i, c in enumerate(coeffs)})

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set[int]:
        return {sum(e) for e in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def degree(self) -> int | None:
        """Common degree of a nonzero homogeneous polynomial, else ``None``."""
        ds = self.degrees()
        return ds.pop() if len(ds) == 1 else None

    def coefficient(self, e: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(e), Fraction(0))

    def __add__(self, other: Polynomial) -> Polynomial:
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return Polynomial(self.n, out)

    def __neg__(self):
        return Polynomial(self.n, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: Polynomial) -> Polynomial:
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            out: dict[Exps, Fraction] = {}
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    e = tuple(a + b for a, b in zip(e1, e2))
                    out[e] = out.get(e, Fraction(0)) + c1 * c2
            return Polynomial(self.n, out)
        c = Fraction(other)
        return Polynomial(self.n, {e: v * c for e, v in self.terms.items()})

    __rmul__ = __mul__

    def __pow__(self, e: int) -> Polynomial:
        out = Polynomial(self.n, {(0,) * self.n: 1})
        for _ in range(e):
            out = out * self
        return out

    def __call__(self, point: Sequence) -> Fraction:
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for x, a in zip(point, e):
                if a:
                    term *= Fraction(x) ** a
            total += term
        return total

    def partial(self, i: int) -> Polynomial:
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                out[tuple(f)] = c * e[i]
        return Polynomial(self.n, out)

    # text format ---------------------------------------------------------
    def to_text(self) -> str:
        """``c*x0^a0*x1^a1 + ...`` (unit coefficients omitted), leading (lexicographically largest) term first."""
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(f"x{i}" + (f"^{a}" if a > 1 else "") for i, a in enumerate(e) if a)
            mag = abs(c)
            if not mono:
                body = f"{mag}"
            else:
                body = mono if mag == 1 else f"{mag}*{mono}"
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts)

    __str__ = to_text

    @classmethod
    def from_text(cls, text: str, n: int) -> Polynomial:
        text = text.strip()
        if text == "0":
            return cls.zero(n)
        tokens = re.split(r"\s+([+-])\s+", text)
        signs = ["+"] + tokens[1::2]
        bodies = tokens[0::2]
        terms: dict[Exps, Fraction] = {}
        for sign, body in zip(signs, bodies):
            neg = sign == "-"
            if body.startswith("-"):
                neg, body = not neg, body[1:]
            factors = body.split("*")
            if factors[0].startswith("x"):
                factors.insert(0, "1")
            coef = Fraction(factors[0])
            e = [0] * n
            for f in factors[1:]:
                m = re.fullmatch(r"x(\d+)(?:\^(\d+))?", f)
                if not m:
                    raise ValueError(f"bad monomial factor {f!r}")
                e[int(m.group(1))] += int(m.group(2) or 1)
            key = tuple(e)
            terms[key] = terms.get(key, Fraction(0)) + (-coef if neg else coef)
        return cls(n, terms)


def directional_derivative(p: Polynomial, v: Sequence) -> Polynomial:
    """sum_i v_i * dp/dx_i for a homogeneous ``p``."""
    if not p.is_homogeneous():
        raise ValueError("directional derivative needs a homogeneous polynomial")
    if len(v) != p.n:
        raise ValueError(f"direction has {len(v)} coordinates, polynomial has {p.n} variables")
    out = Polynomial.zero(p.n)
    for i, vi in enumerate(v):
        if vi:
            out = out + p.partial(i) * Fraction(vi)
    return out


@dataclass(frozen=True)
class LinearPower:
    """``p == scale * linear**degree``, with ``linear`` normalised to 1 at its pivot.

    ``rational_root`` says whether ``scale`` is itself a ``degree``-th power in Q,
    i.e. whether ``p`` is the power of a linear form with rational coefficients
    without a separate scalar.  ``zero`` flags the zero polynomial, which counts
    as a power by convention.
    """

    scale: Fraction
    linear: tuple[Fraction, ...]
    degree: int
    zero: bool = False
    rational_root: bool = True


def _iroot(x: int, e: int) -> int:
    """Largest r >= 0 with r**e <= x."""
    lo, hi = 0, 1
    while hi**e <= x:
        hi *= 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if mid**e <= x:
            lo = mid
        else:
            hi = mid
    return lo


def _is_rational_power(x: Fraction, e: int) -> bool:
    if x < 0 and e % 2 == 0:
        return False
    return all(_iroot(part, e) ** e == part for part in (abs(x.numerator), x.denominator))


def linear_power_decomposition(p: Polynomial) -> LinearPower | None:
    """Write ``p`` as ``c * l**e`` with ``l`` linear, or return ``None``.

    Pick a variable whose pure power x_j^e has a nonzero coefficient ``a``
    (one exists for any nonzero power), normalise ``l_j = 1`` so ``c = a``,
    read ``l_i`` off the coefficient of x_j^(e-1) x_i, then check
    ``a * l**e == p`` exactly.
    """
    if not p.is_homogeneous():
        raise ValueError("power-of-linear-form test needs a homogeneous polynomial")
    n = p.n
    if p.is_zero():
        return LinearPower(Fraction(0), (Fraction(0),) * n, 0, zero=True)
    e = p.degree()
    if e == 0:
        c = p.coefficient((0,) * n)
        return LinearPower(c, (Fraction(0),) * n, 0)
    for j in range(n):
        pure = tuple(e if i == j else 0 for i in range(n))
        a = p.coefficient(pure)
        if a:
            break
    else:
        return None
    lin = []
    for i in range(n):
        if i == j:
            lin.append(Fraction(1))
            continue
        mixed = [0] * n
        mixed[j] = e - 1
        mixed[i] += 1
        lin.append(p.coefficient(mixed) / (a * e))
    if Polynomial.linear(lin) ** e * a != p:
        return None
    return LinearPower(a, tuple(lin), e, rational_root=_is_rational_power(a, e))


def is_power_of_linear_form(p: Polynomial) -> bool:
    return linear_power_decomposition(p) is not None
