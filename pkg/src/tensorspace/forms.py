"""Sparse multilinear forms on the vector space with basis ``e_0..e_{n-1}``.

A form of arity ``d`` is stored by its values on basis tuples:
``terms[(i_1, ..., i_d)] = f(e_{i_1}, ..., e_{i_d})``.  Coefficients are
Fractions, or :class:`CyclotomicScalar` when a pullback leaves them
irrational.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Mapping, Sequence

from .cyclotomic import CyclotomicScalar, as_scalar, collapse
from .monomial import MonomialMap
from .polynomial import Polynomial
from .relstruct import RelationalStructure

Index = tuple[int, ...]


@dataclass(frozen=True, eq=False)
class SparseForm:
    n: int
    d: int
    terms: Mapping[Index, object]

    def __post_init__(self):
        clean = {}
        for idx, c in self.terms.items():
            idx = tuple(int(i) for i in idx)
            if len(idx) != self.d:
                raise ValueError(f"index {idx} does not have arity {self.d}")
            if any(i < 0 or i >= self.n for i in idx):
                raise ValueError(f"index {idx} out of range for dimension {self.n}")
            c = collapse(c)
            if c != 0:
                clean[idx] = c
        object.__setattr__(self, "terms", dict(sorted(clean.items())))

    def __eq__(self, other):
        if not isinstance(other, SparseForm):
            return NotImplemented
        return self.n == other.n and self.d == other.d and self.terms == other.terms

    def coefficient(self, idx: Sequence[int]):
        return self.terms.get(tuple(idx), Fraction(0))

    def support(self) -> frozenset[Index]:
        return frozenset(self.terms)

    def is_rational(self) -> bool:
        return all(isinstance(c, Fraction) for c in self.terms.values())

    def is_symmetric(self) -> bool:
        return symmetrize(self) == self

    # JSON ----------------------------------------------------------------
    def to_dict(self) -> dict:
        if not self.is_rational():
            raise ValueError("only rational forms have a JSON encoding")
        return {
            "n": self.n,
            "d": self.d,
            "terms": [
                {"idx": list(idx), "coef": f"{c.numerator}/{c.denominator}"}
                for idx, c in self.terms.items()
            ],
        }

    @classmethod
    def from_dict(cls, obj: dict) -> SparseForm:
        terms = {}
        for t in obj["terms"]:
            idx = tuple(int(i) for i in t["idx"])
            if idx in terms:
                raise ValueError(f"duplicate index {idx} in form JSON")
            terms[idx] = Fraction(t["coef"])
        return cls(int(obj["n"]), int(obj["d"]), terms)

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> SparseForm:
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class Vector:
    """Vector with entries in Q(zeta_m); absent indices are zero."""

    n: int
    m: int
    entries: Mapping[int, CyclotomicScalar]

    def __post_init__(self):
        clean = {}
        for i, x in self.entries.items():
            if not 0 <= i < self.n:
                raise ValueError(f"index {i} out of range for dimension {self.n}")
            if isinstance(x, CyclotomicScalar) and x.m != self.m:
                raise ValueError(f"entry of root order {x.m} in a vector of root order {self.m}")
            x = as_scalar(x, self.m)
            if not x.is_zero():
                clean[int(i)] = x
        object.__setattr__(self, "entries", clean)

    @classmethod
    def basis(cls, n: int, i: int, m: int = 1, scale=1) -> Vector:
        return cls(n, m, {i: as_scalar(scale, m) if not isinstance(scale, CyclotomicScalar) else scale})

    @classmethod
    def from_values(cls, values: Sequence, m: int = 1) -> Vector:
        return cls(len(values), m, {i: v for i, v in enumerate(values)})

    def get(self, i: int) -> CyclotomicScalar | None:
        return self.entries.get(i)

    def __add__(self, other: Vector) -> Vector:
        self._compatible(other)
        out = dict(self.entries)
        for i, x in other.entries.items():
            out[i] = out[i] + x if i in out else x
        return Vector(self.n, self.m, out)

    def __mul__(self, c) -> Vector:
        return Vector(self.n, self.m, {i: x * c for i, x in self.entries.items()})

    __rmul__ = __mul__

    def _compatible(self, other: Vector):
        if self.n != other.n or self.m != other.m:
            raise ValueError("vectors differ in dimension or root order")

    def apply(self, g: MonomialMap) -> Vector:
        """``g v`` for a monomial map whose root order divides ``m``."""
        if g.n != self.n:
            raise ValueError("dimension mismatch")
        if self.m % g.m:
            raise ValueError(f"map root order {g.m} does not divide vector root order {self.m}")
        step = self.m // g.m
        return Vector(self.n, self.m, {
            g.perm[i]: x * CyclotomicScalar.root(self.m, g.exps[i] * step) for i, x in self.entries.items()
        })


# ---------------------------------------------------------------------------
# constructions


def diagonal_form(n: int, d: int) -> SparseForm:
    """1 on constant basis tuples (e_i, ..., e_i), 0 elsewhere: sum_i x_i^d."""
    if d < 1:
        raise ValueError("arity must be positive")
    return SparseForm(n, d, {(i,) * d: Fraction(1) for i in range(n)})


def relation_form(s: RelationalStructure, i: int) -> SparseForm:
    if not 0 <= i < len(s.arities):
        raise IndexError(f"relation index {i} out of range (structure has {len(s.arities)})")
    return SparseForm(s.n, s.arities[i], {t: Fraction(1) for t in s.relations[i]})


def blowup_index(t: Sequence[int], m: int) -> Index:
    """Block-major expansion: each entry of ``t`` repeated ``m`` times."""
    return tuple(x for x in t for _ in range(m))


def blowup_form(s: RelationalStructure, i: int, m: int) -> SparseForm:
    """Arity m*d_i form, 1 exactly on tuples made of d_i constant blocks of
    length m whose block values lie in relation i."""
    if not 0 <= i < len(s.arities):
        raise IndexError(f"relation index {i} out of range (structure has {len(s.arities)})")
    if m < 1:
        raise ValueError("block size must be positive")
    return SparseForm(s.n, m * s.arities[i], {blowup_index(t, m): Fraction(1) for t in s.relations[i]})


# ---------------------------------------------------------------------------
# evaluation and transport


def evaluate(f: SparseForm, args: Sequence[Vector]) -> CyclotomicScalar:
    if len(args) != f.d:
        raise ValueError(f"form of arity {f.d} given {len(args)} arguments")
    if not args:
        raise ValueError("need at least one argument")
    m = args[0].m
    for v in args:
        if v.n != f.n:
            raise ValueError(f"argument of dimension {v.n} for form of dimension {f.n}")
        if v.m != m:
            raise ValueError("arguments differ in root order")
    total = CyclotomicScalar.zero(m)
    for idx, c in f.terms.items():
        term = None
        for v, i in zip(args, idx):
            x = v.entries.get(i)
            if x is None:
                break
            term = x if term is None else term * x
        else:
            total = total + term * c
    return total


def pullback(f: SparseForm, g: MonomialMap) -> SparseForm:
    """The form ``(v_1, ..., v_d) -> f(g v_1, ..., g v_d)``.

    Coefficient at ``s`` is ``zeta^(sum of exps over s) * f(e_{g(s)})``.
    """
    if g.n != f.n:
        raise ValueError(f"map of dimension {g.n} on form of dimension {f.n}")
    inv = [0] * f.n
    for i, j in enumerate(g.perm):
        inv[j] = i
    out = {}
    for t, c in f.terms.items():
        s = tuple(inv[j] for j in t)
        a = sum(g.exps[i] for i in s) % g.m
        out[s] = c if a == 0 else CyclotomicScalar.root(g.m, a) * c
    return SparseForm(f.n, f.d, out)


def preserves(f: SparseForm, g: MonomialMap) -> bool:
    return pullback(f, g) == f


# ---------------------------------------------------------------------------
# symmetric forms and polynomials


def distinct_permutations(t: Sequence[int]):
    """Distinct rearrangements of ``t`` in lexicographic order."""
    items = sorted(t)
    n = len(items)
    while True:
        yield tuple(items)
        i = n - 2
        while i >= 0 and items[i] >= items[i + 1]:
            i -= 1
        if i < 0:
            return
        j = n - 1
        while items[j] <= items[i]:
            j -= 1
        items[i], items[j] = items[j], items[i]
        items[i + 1:] = reversed(items[i + 1:])


def _multinomial(t: Sequence[int]) -> int:
    out = factorial(len(t))
    for x in set(t):
        out //= factorial(t.count(x))
    return out


def symmetrize(f: SparseForm) -> SparseForm:
    """Average of f over all d! argument orders."""
    out: dict[Index, object] = {}
    for t, c in f.terms.items():
        share = c / _multinomial(list(t))
        for s in distinct_permutations(t):
            out[s] = out[s] + share if s in out else share
    return SparseForm(f.n, f.d, out)


def as_polynomial(f: SparseForm) -> Polynomial:
    """Restriction to the diagonal: ``x -> f(x, ..., x)``."""
    out: dict[tuple[int, ...], Fraction] = {}
    for t, c in f.terms.items():
        if not isinstance(c, Fraction):
            raise ValueError("polynomial view needs rational coefficients")
        e = [0] * f.n
        for i in t:
            e[i] += 1
        key = tuple(e)
        out[key] = out.get(key, Fraction(0)) + c
    return Polynomial(f.n, out)


def forms_to_dict(forms: Sequence[SparseForm], names: Sequence[str] | None = None) -> list[dict]:
    out = []
    for k, f in enumerate(forms):
        d = f.to_dict()
        if names is not None:
            d = {"name": names[k], **d}
        out.append(d)
    return out
