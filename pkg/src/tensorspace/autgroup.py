"""Monomial automorphism groups of systems of forms.

The search is restricted to monomial maps.  That is a reduction, not an
approximation, whenever the system contains a diagonal form of arity at least
3: such a form is preserved only by monomial maps, so nothing is lost.
"""

from __future__ import annotations

import json
import random
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, gcd
from typing import Sequence

from .caps import CapExceeded, Caps, resolve
from .cyclotomic import CyclotomicScalar
from .forms import (
    SparseForm,
    as_polynomial,
    blowup_form,
    diagonal_form,
    preserves,
    relation_form,
)
from .monomial import MonomialMap, all_monomial_maps
from .polynomial import Polynomial, directional_derivative, linear_power_decomposition
from .relstruct import (
    PermGroup,
    RelationalStructure,
    automorphism_search,
)
from .zmod import solve_congruences

MONOMIAL_REDUCTION_NOTE = (
    "search restricted to monomial maps; a diagonal form of arity >= 3 in the "
    "system is preserved only by monomial maps, so the restriction is exact"
)


@dataclass(frozen=True)
class MonomialGroup:
    n: int
    m: int
    elements: tuple[MonomialMap, ...]
    _index: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(sorted(self.elements)))
        object.__setattr__(self, "_index", frozenset(self.elements))

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, g: MonomialMap) -> bool:
        if g.m != self.m:
            if self.m % g.m:
                return False
            g = g.lift(self.m)
        return g in self._index

    def permutation_parts(self) -> set:
        return {g.perm for g in self.elements}

    def diagonal_parts_trivial(self) -> bool:
        return all(not any(g.exps) for g in self.elements)

    def generators(self) -> tuple[MonomialMap, ...]:
        """Greedy generating set, scanning elements in sorted order."""
        e = MonomialMap.identity(self.n, self.m)
        span = {e}
        gens: list[MonomialMap] = []
        for x in self.elements:
            if x in span:
                continue
            gens.append(x)
            queue = deque(span)
            while queue:
                y = queue.popleft()
                for s in gens:
                    z = s @ y
                    if z not in span:
                        span.add(z)
                        queue.append(z)
        return tuple(gens)

    def is_closed(self, exhaustive: bool | None = None) -> bool:
        """Closure under composition and inverse, identity included.

        ``exhaustive`` multiplies every pair (default for groups up to 2000
        elements); otherwise the set must equal the closure of its own
        greedy generators.
        """
        if MonomialMap.identity(self.n, self.m) not in self._index:
            return False
        if any(g.inverse() not in self._index for g in self.elements):
            return False
        if exhaustive is None:
            exhaustive = self.order <= 2000
        if exhaustive:
            return all(a @ b in self._index for a in self.elements for b in self.elements)
        gens = self.generators()
        return all(s @ x in self._index for x in self.elements for s in gens)


# ---------------------------------------------------------------------------
# search


def _coefficient_class(c, m: int):
    """Canonical key for ``c`` up to multiplication by m-th roots of unity."""
    if isinstance(c, Fraction) and m % 2:
        return ("q", c)
    if isinstance(c, Fraction):
        return ("q", abs(c))
    big = c.m * m // gcd(c.m, m)
    base = c.lift(big)
    step = big // m
    return ("z", big, min(tuple((base * CyclotomicScalar.root(big, j * step)).coeffs) for j in range(m)))


def _root_exponent(target, source, m: int) -> int | None:
    """j with source * zeta_m**j == target, if any."""
    if isinstance(target, Fraction) and isinstance(source, Fraction):
        if target == source:
            return 0
        if target == -source and m % 2 == 0:
            return m // 2
        return None
    for j in range(m):
        if source * CyclotomicScalar.root(m, j) == target:
            return j
    return None


def support_structure(forms: Sequence[SparseForm], m: int) -> RelationalStructure:
    """Relational structure whose automorphisms are exactly the permutations
    mapping every form's support onto itself, class by class of coefficients
    up to m-th roots of unity."""
    n = forms[0].n
    arities = []
    relations = []
    for f in forms:
        classes: dict = {}
        for t, c in f.terms.items():
            classes.setdefault(_coefficient_class(c, m), []).append(t)
        for key in sorted(classes, key=repr):
            arities.append(f.d)
            relations.append(classes[key])
    if not arities:
        arities, relations = [1], [[]]
    return RelationalStructure.build(n, arities, relations)


def exponent_equations(forms: Sequence[SparseForm], perm: Sequence[int], m: int):
    """Congruences on the exponent vector for a fixed permutation.

    For each stored tuple ``s`` with coefficient ``c``, preservation needs
    ``zeta^(sum_{i in s} a_i) * c[perm(s)] == c[s]``.  Returns ``(rows, rhs)``,
    or ``None`` when some coefficient ratio is not an m-th root of unity.
    """
    n = len(perm)
    rows, rhs = [], []
    for f in forms:
        for s, c in f.terms.items():
            image = tuple(perm[i] for i in s)
            c_img = f.terms.get(image)
            if c_img is None:
                return None
            j = _root_exponent(c, c_img, m)
            if j is None:
                return None
            row = [0] * n
            for i in s:
                row[i] += 1
            rows.append(row)
            rhs.append(j)
    return rows, rhs


def monomial_automorphism_search(forms: Sequence[SparseForm], m: int, caps: Caps | None = None) -> MonomialGroup:
    """All monomial maps over mu_m preserving every form.

    Permutations come from :func:`automorphism_search` on the support
    structure; for each, the exponent vectors form the solution set of a
    congruence system mod m.
    """
    caps = resolve(caps)
    if not forms:
        raise ValueError("need at least one form")
    n = forms[0].n
    if any(f.n != n for f in forms):
        raise ValueError("forms differ in dimension")
    perms = automorphism_search(support_structure(forms, m), caps).elements
    solved = []
    for p in perms:
        eq = exponent_equations(forms, p, m)
        if eq is None:
            continue
        sol = solve_congruences(eq[0], eq[1], n, m)
        if sol is not None:
            solved.append((p, sol))
    total = sum(sol.count for _, sol in solved)
    caps.check("monomial", len(perms) + total, "pruned monomial search space (permutations + exponent solutions)")
    if total > caps.group:
        raise CapExceeded(f"monomial group of order {total} exceeds cap group={caps.group}")
    elements = [MonomialMap(p, exps, m) for p, sol in solved for exps in sol]
    return MonomialGroup(n, m, tuple(elements))


def brute_force_monomial_group(forms: Sequence[SparseForm], m: int) -> MonomialGroup:
    """Oracle: test every one of the m^n * n! monomial maps."""
    n = forms[0].n
    keep = [g for g in all_monomial_maps(n, m) if all(preserves(f, g) for f in forms)]
    return MonomialGroup(n, m, tuple(keep))


# ---------------------------------------------------------------------------
# certificates


def verify_wreath_containment(forms: Sequence[SparseForm], gamma: PermGroup, m: int) -> bool:
    """Whether mu_m wr gamma preserves every form.

    Preservation by a monomial map is a congruence condition on its exponent
    vector, and the maps preserving all forms form a group, so checking the
    generators of gamma plus the n single-coordinate twists is enough.
    """
    for f in forms:
        if f.n != gamma.n:
            raise ValueError(f"form of dimension {f.n} against group of degree {gamma.n}")
    tests = [MonomialMap.permutation(p, m) for p in gamma.generators]
    tests += [MonomialMap.twist(gamma.n, i, m) for i in range(gamma.n)]
    return all(preserves(f, g) for f in forms for g in tests)


@dataclass(frozen=True)
class RigiditySample:
    vector: tuple[Fraction, ...]
    support: int
    derivative: Polynomial
    criterion: bool
    agrees: bool


@dataclass(frozen=True)
class RigidityReport:
    n: int
    d: int
    samples: tuple[RigiditySample, ...]

    @property
    def passed(self) -> bool:
        return all(s.agrees for s in self.samples)

    @property
    def failures(self) -> list[RigiditySample]:
        return [s for s in self.samples if not s.agrees]


def rigidity_certificate(f: SparseForm, samples: Sequence[Sequence]) -> RigidityReport:
    """Check, per sample v, that the derivative of f along v is a power of a
    linear form exactly when v is supported on at most one coordinate."""
    if f.d < 3:
        raise ValueError("rigidity criterion needs arity >= 3 (derivative of degree >= 2)")
    if f != diagonal_form(f.n, f.d):
        raise ValueError("rigidity certificate applies to the diagonal form only")
    p = as_polynomial(f)
    rows = []
    for v in samples:
        v = tuple(Fraction(x) for x in v)
        der = directional_derivative(p, v)
        crit = linear_power_decomposition(der) is not None
        support = sum(1 for x in v if x)
        rows.append(RigiditySample(v, support, der, crit, crit == (support <= 1)))
    return RigidityReport(f.n, f.d, tuple(rows))


def random_rational_vectors(n: int, count: int, seed: int) -> list[tuple[Fraction, ...]]:
    """Seeded sample with support sizes spread over 0..n."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        k = rng.randint(0, n)
        idx = set(rng.sample(range(n), k))
        v = []
        for i in range(n):
            if i in idx:
                num = rng.choice([x for x in range(-9, 10) if x])
                v.append(Fraction(num, rng.randint(1, 7)))
            else:
                v.append(Fraction(0))
        out.append(tuple(v))
    return out


# ---------------------------------------------------------------------------
# constructions


def _lcm(*xs: int) -> int:
    out = 1
    for x in xs:
        out = out * x // gcd(out, x)
    return out


@dataclass(frozen=True)
class FormSystem:
    mode: str
    block: int | None
    forms: tuple[SparseForm, ...]
    names: tuple[str, ...]
    root_order: int


def construction_forms(s: RelationalStructure, mode: str, m: int | None = None) -> FormSystem:
    """Form system of a structure.

    ``standard``: f_1..f_r, g_2, g_3 over mu_6.  ``blowup``: block-m forms
    f'_1..f'_r and g_m over mu_m (m >= 3).  ``blowup2``: block-2 forms with
    g_2, g_4 over mu_4.
    """
    r = len(s.arities)
    if mode == "standard":
        forms = [relation_form(s, i) for i in range(r)] + [diagonal_form(s.n, 2), diagonal_form(s.n, 3)]
        names = [f"f{i + 1}" for i in range(r)] + ["g2", "g3"]
        return FormSystem(mode, None, tuple(forms), tuple(names), _lcm(2, 3))
    if mode == "blowup":
        if m is None or m < 3:
            raise ValueError("blowup mode needs block size m >= 3 (use blowup2 for m = 2)")
        forms = [blowup_form(s, i, m) for i in range(r)] + [diagonal_form(s.n, m)]
        names = [f"f'{i + 1}" for i in range(r)] + [f"g{m}"]
        return FormSystem(mode, m, tuple(forms), tuple(names), _lcm(m, m))
    if mode == "blowup2":
        forms = [blowup_form(s, i, 2) for i in range(r)] + [diagonal_form(s.n, 2), diagonal_form(s.n, 4)]
        names = [f"f'{i + 1}" for i in range(r)] + ["g2", "g4"]
        return FormSystem(mode, 2, tuple(forms), tuple(names), _lcm(2, 4))
    raise ValueError(f"unknown construction mode {mode!r}")


@dataclass(frozen=True)
class ConstructionReport:
    mode: str
    group_order: int
    expected_order: int | None
    match: bool
    generators: tuple[MonomialMap, ...]
    structure_aut_order: int
    root_order: int
    note: str = MONOMIAL_REDUCTION_NOTE
    group: MonomialGroup | None = field(default=None, repr=False, compare=False)

    def to_dict(self) -> dict:
        return {
            "mode": self.mode,
            "group_order": self.group_order,
            "expected_order": self.expected_order,
            "match": self.match,
            "generators": [g.to_dict() for g in self.generators],
            "structure_aut_order": self.structure_aut_order,
            "root_order": self.root_order,
            "note": self.note,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _expected_generators(gamma: PermGroup, mode: str, m: int) -> list[MonomialMap]:
    gens = [MonomialMap.permutation(p, m) for p in gamma.generators]
    n = gamma.n
    if mode == "blowup":
        gens += [MonomialMap.twist(n, i, m) for i in range(n)]
    elif mode == "blowup2":
        gens += [MonomialMap.twist(n, i, m, m // 2) for i in range(n)]
    return gens


def verify_construction(s: RelationalStructure, mode: str, m: int | None = None, caps: Caps | None = None) -> ConstructionReport:
    """Search the monomial symmetry group of the construction and compare it
    with the group predicted from Aut(s), by order plus containment of the
    predicted generators."""
    caps = resolve(caps)
    system = construction_forms(s, mode, m)
    group = monomial_automorphism_search(system.forms, system.root_order, caps)
    gamma = automorphism_search(s, caps)
    n = s.n
    if mode == "standard":
        expected = gamma.order
    elif mode == "blowup":
        expected = system.block**n * gamma.order
    else:
        expected = 2**n * gamma.order
    match = group.order == expected and all(g in group for g in _expected_generators(gamma, mode, system.root_order))
    return ConstructionReport(
        mode=mode if mode != "blowup" else f"blowup({system.block})",
        group_order=group.order,
        expected_order=expected,
        match=match,
        generators=group.generators(),
        structure_aut_order=gamma.order,
        root_order=system.root_order,
        group=group,
    )


@dataclass(frozen=True)
class DiagonalReport:
    n: int
    d: int
    group_order: int
    expected_order: int
    match: bool
    generators: tuple[MonomialMap, ...]

    def to_dict(self) -> dict:
        return {
            "mode": f"prop-diag(n={self.n},d={self.d})",
            "group_order": self.group_order,
            "expected_order": self.expected_order,
            "match": self.match,
            "generators": [g.to_dict() for g in self.generators],
        }


def verify_diagonal(n: int, d: int, caps: Caps | None = None) -> DiagonalReport:
    """Monomial symmetry group of sum x_i^d against mu_d wr S_n."""
    group = monomial_automorphism_search([diagonal_form(n, d)], d, caps)
    expected = d**n * factorial(n)
    gens = [MonomialMap.twist(n, i, d) for i in range(n)]
    gens += [MonomialMap.permutation(tuple(range(1, n)) + (0,), d)] if n > 1 else []
    gens += [MonomialMap.permutation((1, 0) + tuple(range(2, n)), d)] if n > 1 else []
    match = group.order == expected and all(g in group for g in gens)
    return DiagonalReport(n, d, group.order, expected, match, group.generators())
