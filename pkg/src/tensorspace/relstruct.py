"""Finite relational structures, their automorphism groups and tuple orbits.

Elements of a structure are always ``0..n-1``.  Permutations are plain tuples
of images (``p[i]`` is the image of ``i``) and compose right-to-left:
``compose(p, q)[i] == p[q[i]]``.
"""

from __future__ import annotations

import json
from collections import Counter, deque
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .caps import CapExceeded, Caps, resolve

Perm = tuple[int, ...]


class InvalidStructure(ValueError):
    def __init__(self, errors: list[str]):
        super().__init__("; ".join(errors))
        self.errors = errors


# ---------------------------------------------------------------------------
# permutations


def identity(n: int) -> Perm:
    return tuple(range(n))


def compose(p: Perm, q: Perm) -> Perm:
    """``p`` after ``q``."""
    return tuple(p[i] for i in q)


def inverse(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def is_permutation(p: Sequence[int], n: int | None = None) -> bool:
    if n is not None and len(p) != n:
        return False
    return sorted(p) == list(range(len(p)))


def cycle(n: int, *cycles: Sequence[int]) -> Perm:
    """Permutation of degree ``n`` from disjoint cycles, e.g. ``cycle(5, (0, 1))``."""
    img = list(range(n))
    for c in cycles:
        for a, b in zip(c, list(c[1:]) + [c[0]]):
            img[a] = b
    if not is_permutation(img):
        raise ValueError(f"cycles {cycles} are not disjoint")
    return tuple(img)


# ---------------------------------------------------------------------------
# structures


@dataclass(frozen=True)
class Signature:
    arities: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "arities", tuple(int(a) for a in self.arities))
        if not self.arities:
            raise ValueError("signature needs at least one relation")
        if any(a < 1 for a in self.arities):
            raise ValueError(f"arities must be positive: {self.arities}")

    @property
    def r(self) -> int:
        return len(self.arities)


@dataclass(frozen=True)
class RelationalStructure:
    """A finite structure on ``range(n)``.

    ``relations[i]`` is the tuple list of the i-th relation exactly as given;
    the constructor does not reject malformed input so that
    :func:`validate_structure` can report it.  Use :meth:`check` (or any of
    the searches, which call it) to insist on well-formedness.
    """

    n: int
    signature: Signature
    relations: tuple[tuple[tuple[int, ...], ...], ...]
    _sets: tuple[frozenset, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.signature, Signature):
            object.__setattr__(self, "signature", Signature(self.signature))
        rels = tuple(tuple(tuple(int(x) for x in t) for t in rel) for rel in self.relations)
        object.__setattr__(self, "relations", rels)
        object.__setattr__(self, "_sets", tuple(frozenset(rel) for rel in rels))

    @classmethod
    def build(cls, n: int, arities: Sequence[int], relations: Iterable[Iterable]) -> RelationalStructure:
        """Construct with tuples sorted and duplicates dropped, then validate."""
        rels = tuple(tuple(sorted(set(tuple(t) for t in rel))) for rel in relations)
        s = cls(n, Signature(tuple(arities)), rels)
        s.check()
        return s

    @property
    def arities(self) -> tuple[int, ...]:
        return self.signature.arities

    def holds(self, i: int, t: Sequence[int]) -> bool:
        return tuple(t) in self._sets[i]

    def relation_set(self, i: int) -> frozenset:
        return self._sets[i]

    def check(self) -> None:
        errors = validate_structure(self)
        if errors:
            raise InvalidStructure(errors)

    def induced(self, subset: Sequence[int]) -> RelationalStructure:
        """Induced substructure on ``subset``, relabelled in the given order."""
        pos = {x: i for i, x in enumerate(subset)}
        rels = []
        for rel in self.relations:
            rels.append([tuple(pos[x] for x in t) for t in rel if all(x in pos for x in t)])
        return RelationalStructure.build(len(subset), self.arities, rels)

    def to_json(self) -> str:
        return json.dumps(structure_to_dict(self))

    @classmethod
    def from_json(cls, text: str) -> RelationalStructure:
        return structure_from_dict(json.loads(text))


def structure_to_dict(s: RelationalStructure) -> dict:
    return {
        "n": s.n,
        "arities": list(s.arities),
        "relations": [[list(t) for t in sorted(rel)] for rel in s.relations],
    }


def structure_from_dict(obj: dict) -> RelationalStructure:
    try:
        n = int(obj["n"])
        arities = tuple(int(a) for a in obj["arities"])
        rels = tuple(tuple(tuple(int(x) for x in t) for t in rel) for rel in obj["relations"])
    except (KeyError, TypeError) as exc:
        raise InvalidStructure([f"malformed structure JSON: {exc}"]) from exc
    s = RelationalStructure(n, Signature(arities), rels)
    s.check()
    return s


def validate_structure(s: RelationalStructure) -> list[str]:
    """All invariant violations of ``s``; an empty list means well-formed."""
    errors = []
    if s.n < 0:
        errors.append(f"negative universe size {s.n}")
    if len(s.relations) != len(s.arities):
        errors.append(f"signature has {len(s.arities)} relations but {len(s.relations)} were given")
    for i, (rel, d) in enumerate(zip(s.relations, s.arities)):
        seen = set()
        for t in rel:
            if len(t) != d:
                errors.append(f"relation {i}: bad arity {len(t)} (expected {d}) in tuple {t}")
            if any(x < 0 or x >= s.n for x in t):
                errors.append(f"relation {i}: entry out of range in tuple {t}")
            if t in seen:
                errors.append(f"relation {i}: duplicate tuple {t}")
            seen.add(t)
    return errors


def is_automorphism(s: RelationalStructure, p: Sequence[int]) -> bool:
    if len(p) != s.n:
        raise ValueError(f"degree mismatch: permutation of degree {len(p)} on structure of size {s.n}")
    if not is_permutation(p):
        raise ValueError(f"{tuple(p)} is not a permutation")
    # p is a bijection, so mapping each finite relation into itself is enough
    for rel in s._sets:
        for t in rel:
            if tuple(p[x] for x in t) not in rel:
                return False
    return True


# ---------------------------------------------------------------------------
# permutation groups


@dataclass(frozen=True)
class PermGroup:
    n: int
    generators: tuple[Perm, ...]
    elements: tuple[Perm, ...] | None = None

    def __post_init__(self):
        gens = tuple(tuple(g) for g in self.generators)
        for g in gens:
            if not is_permutation(g, self.n):
                raise ValueError(f"generator {g} is not a permutation of degree {self.n}")
        object.__setattr__(self, "generators", gens)

    @property
    def order(self) -> int:
        if self.elements is None:
            raise ValueError("group is not enumerated; call group_closure first")
        return len(self.elements)

    def __contains__(self, p) -> bool:
        if self.elements is None:
            raise ValueError("group is not enumerated")
        return tuple(p) in self._element_set

    @property
    def _element_set(self) -> frozenset:
        cached = self.__dict__.get("_eset")
        if cached is None:
            cached = frozenset(self.elements)
            object.__setattr__(self, "_eset", cached)
        return cached

    def is_transitive(self) -> bool:
        return self.n == 0 or orbit_partition(self, 1).count == 1


def trivial_group(n: int) -> PermGroup:
    return PermGroup(n, (), (identity(n),))


def group_closure(g: PermGroup, caps: Caps | None = None) -> PermGroup:
    """Enumerate the group generated by ``g.generators``.

    Elements come back sorted lexicographically by image tuple.
    """
    caps = resolve(caps)
    e = identity(g.n)
    seen = {e}
    queue = deque([e])
    while queue:
        x = queue.popleft()
        for s in g.generators:
            y = compose(s, x)
            if y not in seen:
                seen.add(y)
                if len(seen) > caps.group:
                    raise CapExceeded(f"group closure exceeds cap group={caps.group}")
                queue.append(y)
    return PermGroup(g.n, g.generators, tuple(sorted(seen)))


def small_generating_set(n: int, elements: Sequence[Perm]) -> tuple[Perm, ...]:
    """Greedy generators: scan ``elements`` in order, keep those not yet generated."""
    e = identity(n)
    span = {e}
    gens: list[Perm] = []
    for x in elements:
        if x in span:
            continue
        gens.append(x)
        # span <- closure of span under the new generator set
        queue = deque(span)
        while queue:
            y = queue.popleft()
            for s in gens:
                z = compose(s, y)
                if z not in span:
                    span.add(z)
                    queue.append(z)
    return tuple(gens)


def is_group(n: int, elements: Sequence[Perm]) -> bool:
    """Closure under composition and inverse, identity present (explicit check)."""
    es = set(elements)
    if identity(n) not in es:
        return False
    if any(inverse(a) not in es for a in es):
        return False
    return all(compose(a, b) in es for a in es for b in es)


# ---------------------------------------------------------------------------
# automorphism search


def _incidences(s: RelationalStructure) -> list[list[tuple[int, int, tuple[int, ...]]]]:
    inc: list[list] = [[] for _ in range(s.n)]
    for i, rel in enumerate(s.relations):
        for t in rel:
            for pos, x in enumerate(t):
                inc[x].append((i, pos, t))
    return inc


def _signature(inc_x, colors) -> tuple:
    return tuple(sorted((i, pos, tuple(colors[y] for y in t)) for i, pos, t in inc_x))


def refine_pair(inc, ca: list[int], cb: list[int]):
    """Jointly refine two colourings of the same structure.

    Colours on both sides are renamed through one shared sorted table, so a
    colour means the same thing on either side.  Returns ``None`` as soon as
    the two sides disagree on some colour class size; that is the pruning
    test, sound because any automorphism carrying the individualised vertices
    of ``ca`` to those of ``cb`` also carries every refined class onto its
    namesake.
    """
    n_classes = len(set(ca))
    while True:
        sa = [(ca[x], _signature(inc[x], ca)) for x in range(len(ca))]
        sb = [(cb[x], _signature(inc[x], cb)) for x in range(len(cb))]
        if Counter(sa) != Counter(sb):
            return None
        table = {sig: k for k, sig in enumerate(sorted(set(sa)))}
        ca = [table[sig] for sig in sa]
        cb = [table[sig] for sig in sb]
        if len(table) == n_classes:
            return ca, cb
        n_classes = len(table)


def vertex_profile(s: RelationalStructure) -> list[int]:
    """Equitable colouring of the elements by iterated degree profiles."""
    inc = _incidences(s)
    c0 = [0] * s.n
    ca, _ = refine_pair(inc, c0, list(c0))
    return ca


def automorphism_search(s: RelationalStructure, caps: Caps | None = None) -> PermGroup:
    """All automorphisms of ``s``, by individualisation and refinement.

    The search tree branches on the images of one vertex at a time and prunes
    with :func:`refine_pair`; leaves (discrete colourings) are still checked
    with :func:`is_automorphism`.  The result is fully enumerated.
    """
    caps = resolve(caps)
    s.check()
    n = s.n
    caps.check("perms", n, "automorphism search universe size")
    if n == 0:
        return PermGroup(0, (), ((),))
    inc = _incidences(s)
    root = refine_pair(inc, [0] * n, [0] * n)
    assert root is not None
    found: list[Perm] = []

    def search(ca, cb):
        classes: dict[int, list[int]] = {}
        for x, c in enumerate(ca):
            classes.setdefault(c, []).append(x)
        open_cells = [c for c, xs in classes.items() if len(xs) > 1]
        if not open_cells:
            where = {c: x for x, c in enumerate(cb)}
            p = tuple(where[ca[x]] for x in range(n))
            if is_automorphism(s, p):
                found.append(p)
                if len(found) > caps.group:
                    raise CapExceeded(f"automorphism group exceeds cap group={caps.group}")
            return
        cell = min(open_cells, key=lambda c: (len(classes[c]), c))
        v = classes[cell][0]
        fresh = max(ca) + 1
        targets = [w for w in range(n) if cb[w] == cell]
        for w in targets:
            na = list(ca)
            nb = list(cb)
            na[v] = fresh
            nb[w] = fresh
            refined = refine_pair(inc, na, nb)
            if refined is not None:
                search(*refined)

    search(*root)
    elements = tuple(sorted(found))
    return PermGroup(n, small_generating_set(n, elements), elements)


# ---------------------------------------------------------------------------
# orbits on tuples


@dataclass(frozen=True)
class OrbitPartition:
    """Orbits of a permutation group on ``k``-tuples over ``range(n)``.

    Tuples are encoded as base-``n`` integers, which preserves lexicographic
    order; ``labels[code]`` is the orbit index, and orbits are numbered by
    their lexicographically least tuple.
    """

    n: int
    k: int
    labels: np.ndarray = field(repr=False)
    rep_codes: tuple[int, ...]
    sizes: tuple[int, ...]

    @property
    def count(self) -> int:
        return len(self.rep_codes)

    def decode(self, code: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.k):
            code, r = divmod(code, self.n)
            out.append(r)
        return tuple(reversed(out))

    def encode(self, t: Sequence[int]) -> int:
        code = 0
        for x in t:
            code = code * self.n + x
        return code

    @property
    def representatives(self) -> list[tuple[int, ...]]:
        return [self.decode(c) for c in self.rep_codes]

    def orbit_of(self, t: Sequence[int]) -> int:
        return int(self.labels[self.encode(t)])

    def class_members(self, j: int) -> list[tuple[int, ...]]:
        return [self.decode(int(c)) for c in np.flatnonzero(self.labels == j)]

    @property
    def classes(self) -> list[list[tuple[int, ...]]]:
        order = np.argsort(self.labels, kind="stable")
        bounds = np.cumsum((0,) + self.sizes)
        return [[self.decode(int(c)) for c in order[bounds[j]:bounds[j + 1]]] for j in range(self.count)]


def _tuple_images(n: int, k: int, p: Sequence[int]) -> np.ndarray:
    """Code of p(t) for every code t, applying p entrywise."""
    pa = np.asarray(p, dtype=np.int64)
    codes = np.arange(n**k, dtype=np.int64)
    out = np.zeros_like(codes)
    rest = codes
    scale = 1
    for _ in range(k):
        rest, digit = np.divmod(rest, n)
        out += pa[digit] * scale
        scale *= n
    return out


def orbit_partition(g: PermGroup, k: int, caps: Caps | None = None) -> OrbitPartition:
    """Orbits of the group generated by ``g.generators`` on ``k``-tuples.

    Components of the graph joining each tuple to its generator images; no
    enumeration of the group is needed.
    """
    caps = resolve(caps)
    if k < 1:
        raise ValueError("k must be positive")
    n = g.n
    total = n**k
    caps.check("tuples", total, f"n^k = {n}^{k}")
    if total == 0:
        return OrbitPartition(n, k, np.zeros(0, dtype=np.int64), (), ())
    src = [np.arange(total, dtype=np.int64)]
    dst = [src[0]]
    for s in g.generators:
        src.append(np.arange(total, dtype=np.int64))
        dst.append(_tuple_images(n, k, s))
    rows = np.concatenate(src)
    cols = np.concatenate(dst)
    graph = coo_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(total, total))
    ncomp, raw = connected_components(graph, directed=True, connection="weak")
    # renumber components by least member code (codes are in lexicographic order)
    _, first_code = np.unique(raw, return_index=True)
    order = np.argsort(first_code, kind="stable")
    remap = np.empty(ncomp, dtype=np.int64)
    remap[order] = np.arange(ncomp, dtype=np.int64)
    labels = remap[raw]
    labels.setflags(write=False)
    sizes = np.bincount(labels, minlength=ncomp)
    rep_codes = first_code[order]
    return OrbitPartition(n, k, labels, tuple(int(c) for c in rep_codes), tuple(int(x) for x in sizes))


def all_tuples(n: int, k: int):
    return product(range(n), repeat=k)
