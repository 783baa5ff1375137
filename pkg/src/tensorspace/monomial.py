"""Monomial linear maps: elements of the wreath product mu_m wr S_n."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product
from math import gcd
from typing import Iterator, Sequence

from .relstruct import Perm, identity, is_permutation


@dataclass(frozen=True, order=True)
class MonomialMap:
    """``e_i -> zeta_m**exps[i] * e_{perm[i]}``."""

    perm: Perm
    exps: tuple[int, ...]
    m: int

    def __post_init__(self):
        perm = tuple(int(x) for x in self.perm)
        if not is_permutation(perm):
            raise ValueError(f"{perm} is not a permutation")
        if len(self.exps) != len(perm):
            raise ValueError("exponent vector and permutation differ in length")
        if self.m < 1:
            raise ValueError("root order must be positive")
        object.__setattr__(self, "perm", perm)
        object.__setattr__(self, "exps", tuple(int(a) % self.m for a in self.exps))

    @property
    def n(self) -> int:
        return len(self.perm)

    @classmethod
    def identity(cls, n: int, m: int = 1) -> MonomialMap:
        return cls(identity(n), (0,) * n, m)

    @classmethod
    def permutation(cls, perm: Sequence[int], m: int = 1) -> MonomialMap:
        return cls(tuple(perm), (0,) * len(perm), m)

    @classmethod
    def twist(cls, n: int, i: int, m: int, k: int = 1) -> MonomialMap:
        """Multiply ``e_i`` by ``zeta_m**k``, fix everything else."""
        exps = [0] * n
        exps[i] = k
        return cls(identity(n), tuple(exps), m)

    def lift(self, big: int) -> MonomialMap:
        if big % self.m:
            raise ValueError(f"cannot lift root order {self.m} to {big}")
        step = big // self.m
        return MonomialMap(self.perm, tuple(a * step for a in self.exps), big)

    def __matmul__(self, other: MonomialMap) -> MonomialMap:
        """``self @ other`` applies ``other`` first."""
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        a, b = self, other
        if a.m != b.m:
            big = a.m * b.m // gcd(a.m, b.m)
            a, b = a.lift(big), b.lift(big)
        perm = tuple(a.perm[j] for j in b.perm)
        exps = tuple(b.exps[i] + a.exps[b.perm[i]] for i in range(a.n))
        return MonomialMap(perm, exps, a.m)

    def inverse(self) -> MonomialMap:
        perm = [0] * self.n
        exps = [0] * self.n
        for i, j in enumerate(self.perm):
            perm[j] = i
            exps[j] = -self.exps[i]
        return MonomialMap(tuple(perm), tuple(exps), self.m)

    def to_dict(self) -> dict:
        return {"perm": list(self.perm), "exps": list(self.exps), "m": self.m}

    @classmethod
    def from_dict(cls, obj: dict) -> MonomialMap:
        return cls(tuple(obj["perm"]), tuple(obj["exps"]), int(obj["m"]))


def all_monomial_maps(n: int, m: int) -> Iterator[MonomialMap]:
    """Every element of mu_m wr S_n (m^n * n! of them), lexicographically."""
    for perm in permutations(range(n)):
        for exps in product(range(m), repeat=n):
            yield MonomialMap(perm, exps, m)
