"""Orbit summands of tensor powers under mu_m wr Gamma and length evidence.

The k-th tensor power of the permutation module splits as the direct sum of
the spans of the Gamma-orbits on k-tuples; the diagonal subgroup mu_m^X acts
on each basis tensor through the multiplicities of the tuple's entries mod m.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable, Sequence

from .caps import Caps, resolve
from .cyclotomic import CyclotomicScalar
from .relstruct import (
    OrbitPartition,
    PermGroup,
    RelationalStructure,
    automorphism_search,
    orbit_partition,
)

Character = tuple[tuple[int, int], ...]


def tuple_character(t: Sequence[int], m: int) -> Character:
    """Multiplicity of each entry of ``t`` mod m, as sorted ``(index, mult)`` pairs, zeros dropped."""
    if m < 1:
        raise ValueError("root order must be positive")
    counts = Counter(t)
    return tuple((x, c % m) for x, c in sorted(counts.items()) if c % m)


def character_value(chi: Character, exps: Sequence[int], m: int) -> CyclotomicScalar:
    """alpha(g) for the diagonal element g = (zeta^exps[x])_x."""
    return CyclotomicScalar.root(m, sum(c * exps[x] for x, c in chi))


@dataclass(frozen=True)
class Summand:
    representative: tuple[int, ...]
    dimension: int
    characters: Counter = field(compare=False)


@dataclass(frozen=True)
class SummandDecomposition:
    k: int
    m: int
    orbits: OrbitPartition
    summands: tuple[Summand, ...]
    cross_orbit_collisions: int

    @property
    def total_dimension(self) -> int:
        return sum(s.dimension for s in self.summands)

    @property
    def characters_separate_orbits(self) -> bool:
        """No character occurs in two different summands."""
        return self.cross_orbit_collisions == 0


def summand_decomposition(g: PermGroup, k: int, m: int, caps: Caps | None = None) -> SummandDecomposition:
    """Orbit summands W_j of the k-th tensor power, with their character multisets.

    ``cross_orbit_collisions`` counts unordered pairs of tuples lying in
    different orbits but sharing a character.  Coordinate permutations of one
    tuple always share a character, so this is typically nonzero.
    """
    part = orbit_partition(g, k, caps)
    per_orbit: list[Counter] = [Counter() for _ in range(part.count)]
    by_char: dict[Character, Counter] = {}
    for code in range(part.n**k):
        t = part.decode(code)
        j = int(part.labels[code])
        chi = tuple_character(t, m)
        per_orbit[j][chi] += 1
        by_char.setdefault(chi, Counter())[j] += 1
    collisions = 0
    for counts in by_char.values():
        total = sum(counts.values())
        same = sum(c * (c - 1) // 2 for c in counts.values())
        collisions += total * (total - 1) // 2 - same
    summands = tuple(
        Summand(rep, part.sizes[j], per_orbit[j]) for j, rep in enumerate(part.representatives)
    )
    return SummandDecomposition(k, m, part, summands, collisions)


def irreducibility_check(g: PermGroup, orbit: Sequence[Sequence[int]], m: int, caps: Caps | None = None) -> Fraction:
    """<chi, chi> for the span of ``orbit`` under G = mu_m wr g, exactly.

    ``chi(w)`` for w = (sigma, a) is the sum over tuples t of the orbit fixed by
    sigma of zeta^(sum_j a[t_j]).  The sum of |chi(w)|^2 over G is accumulated
    in Z[zeta]/(zeta^m - 1) and converted once to Q(zeta_m), where it must be
    rational.  A value of 1 certifies irreducibility.
    """
    caps = resolve(caps)
    if g.elements is None:
        raise ValueError("irreducibility check needs a fully enumerated group")
    n = g.n
    caps.check("characters", m**n * len(g.elements), "m^n * |group|")
    orbit = [tuple(t) for t in orbit]
    if not orbit:
        raise ValueError("empty orbit")
    chars = [tuple_character(t, m) for t in orbit]
    acc = [0] * m  # acc[r] = total weight of zeta^r in sum |chi|^2
    exps_all = list(product(range(m), repeat=n))
    for sigma in g.elements:
        fixed = [chars[i] for i, t in enumerate(orbit) if tuple(sigma[x] for x in t) == t]
        if not fixed:
            continue
        for a in exps_all:
            cnt = [0] * m
            for chi in fixed:
                cnt[sum(c * a[x] for x, c in chi) % m] += 1
            for r1, c1 in enumerate(cnt):
                if c1:
                    for r2, c2 in enumerate(cnt):
                        if c2:
                            acc[(r1 - r2) % m] += c1 * c2
    total = CyclotomicScalar.from_poly(m, acc)
    order = m**n * len(g.elements)
    value = total / order
    if not value.is_rational():
        raise ArithmeticError(f"character inner product {value} is not rational")
    return value.to_fraction()


# ---------------------------------------------------------------------------
# length evidence


@dataclass(frozen=True)
class TruncationFamily:
    """Finite truncations of an infinite structure, indexed by a size parameter.

    ``generators`` optionally supplies a known generating set for the group
    to use at a given size instead of searching for Aut.
    """

    name: str
    build: Callable[[int], RelationalStructure]
    generators: Callable[[int], Sequence[tuple[int, ...]]] | None = None
    description: str = ""


@dataclass(frozen=True)
class LengthReport:
    k: int
    m: int
    sizes: tuple[int, ...]
    orbit_counts: tuple[int, ...]
    verdict: str
    finite_length: int | None = None
    group_source: str = "automorphism search"
    family: str = ""

    @property
    def note(self) -> str:
        if self.verdict == "infinite-evidence":
            return ("heuristic: orbit counts grow along finite truncations; "
                    "no statement about the infinite structure is proved")
        if self.verdict == "finite":
            return f"orbit count constant at {self.finite_length} with k < m: each orbit summand is irreducible"
        return "neither constant with k < m nor strictly increasing over >= 3 truncations"

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "m": self.m,
            "sizes": list(self.sizes),
            "orbit_counts": list(self.orbit_counts),
            "verdict": self.verdict,
            "family": self.family,
            "group_source": self.group_source,
            "note": self.note,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, obj: dict) -> LengthReport:
        counts = tuple(obj["orbit_counts"])
        finite = counts[0] if obj["verdict"] == "finite" else None
        return cls(int(obj["k"]), int(obj["m"]), tuple(obj["sizes"]), counts, obj["verdict"], finite,
                   obj.get("group_source", "automorphism search"), obj.get("family", ""))


def length_verdict(counts: Sequence[int], k: int, m: int) -> str:
    if counts and len(set(counts)) == 1 and k < m:
        return "finite"
    if len(counts) >= 3 and all(a < b for a, b in zip(counts, counts[1:])):
        return "infinite-evidence"
    return "inconclusive"


def length_report(family: TruncationFamily, k: int, m: int, sizes: Sequence[int],
                  caps: Caps | None = None, use_generators: bool = True) -> LengthReport:
    caps = resolve(caps)
    sizes = tuple(int(x) for x in sizes)
    if any(a >= b for a, b in zip(sizes, sizes[1:])):
        raise ValueError(f"sizes must be strictly increasing: {sizes}")
    counts = []
    preset = use_generators and family.generators is not None
    for size in sizes:
        s = family.build(size)
        caps.check("tuples", s.n**k, f"n^k = {s.n}^{k}")
        if preset:
            g = PermGroup(s.n, tuple(family.generators(size)))
        else:
            g = automorphism_search(s, caps)
        counts.append(orbit_partition(g, k, caps).count)
    verdict = length_verdict(counts, k, m)
    return LengthReport(
        k, m, sizes, tuple(counts), verdict,
        finite_length=counts[0] if verdict == "finite" else None,
        group_source="preset generators" if preset else "automorphism search",
        family=family.name,
    )
