"""Finite truncations of homogeneous structures and Fraisse-class tooling.

Every constructor returns a :class:`RelationalStructure` on ``range(n)`` with
sorted relation lists, so equal parameters give byte-identical JSON.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from itertools import combinations, permutations, product
from typing import Callable, Iterator, Sequence

from .caps import Caps, resolve
from .relstruct import Perm, RelationalStructure, Signature, cycle, validate_structure
from .repthy import TruncationFamily

# ---------------------------------------------------------------------------
# small named graphs and orders


def _graph(n: int, edges: Sequence[tuple[int, int]]) -> RelationalStructure:
    rel = set()
    for a, b in edges:
        rel.add((a, b))
        rel.add((b, a))
    return RelationalStructure.build(n, (2,), [rel])


def path_graph(n: int) -> RelationalStructure:
    if n < 1:
        raise ValueError("path needs at least one vertex")
    return _graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> RelationalStructure:
    if n < 3:
        raise ValueError(f"cycle needs n >= 3, got {n}")
    return _graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> RelationalStructure:
    if n < 1:
        raise ValueError("complete graph needs at least one vertex")
    return _graph(n, list(combinations(range(n), 2)))


def k4_minus_edge() -> RelationalStructure:
    return _graph(4, [e for e in combinations(range(4), 2) if e != (2, 3)])


def petersen_graph() -> RelationalStructure:
    """Outer 5-cycle 0..4, inner pentagram 5..9, spokes i -- i+5."""
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    return _graph(10, outer + inner + spokes)


def dlo_approx(n: int) -> RelationalStructure:
    """The n-element chain: one binary relation ``i < j``."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    return RelationalStructure.build(n, (2,), [combinations(range(n), 2)])


def rado_approx(n: int) -> RelationalStructure:
    """BIT graph: for i < j, i ~ j iff bit i of j is set."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    return _graph(n, [(i, j) for i, j in combinations(range(n), 2) if (j >> i) & 1])


def line_cycle(n: int) -> RelationalStructure:
    """Wrap-around surrogate for the Cayley graph of Z: i ~ i+1 mod n."""
    if n < 3:
        raise ValueError(f"line truncation needs n >= 3, got {n}")
    return cycle_graph(n)


def line_rotation(n: int) -> Perm:
    return cycle(n, list(range(n)))


# ---------------------------------------------------------------------------
# vector spaces over small fields

_PRIMITIVE = {2: 1, 3: 2, 4: 2, 5: 2}


def _field_ops(q: int) -> tuple[Callable[[int, int], int], Callable[[int, int], int]]:
    if q == 4:
        # GF(4) as polynomials over GF(2) in two bits, reduced mod x^2 + x + 1
        def mul(a: int, b: int) -> int:
            r = 0
            for i in range(2):
                if (b >> i) & 1:
                    r ^= a << i
            if r & 4:
                r ^= 0b111
            return r

        return (lambda a, b: a ^ b), mul
    return (lambda a, b: (a + b) % q), (lambda a, b: (a * b) % q)


def glinfty_approx(q: int, dim: int, caps: Caps | None = None) -> RelationalStructure:
    """F_q^dim with the relations ``x = y + z`` and ``x = a*y`` (a primitive).

    Vectors are indexed by reading coordinates as base-q digits, first
    coordinate most significant.  For q = 2 the primitive root is 1 and the
    second relation is equality.
    """
    if q not in _PRIMITIVE:
        raise ValueError(f"unsupported field size {q}; choose from {sorted(_PRIMITIVE)}")
    if dim < 1:
        raise ValueError(f"dimension must be positive, got {dim}")
    caps = resolve(caps)
    size = q**dim
    caps.check("tuples", size * size, f"|F_{q}^{dim}|^2")
    add, mul = _field_ops(q)
    vecs = list(product(range(q), repeat=dim))
    index = {v: i for i, v in enumerate(vecs)}
    a = _PRIMITIVE[q]
    p1 = []
    for y, z in product(vecs, repeat=2):
        x = tuple(add(u, w) for u, w in zip(y, z))
        p1.append((index[x], index[y], index[z]))
    p2 = [(index[tuple(mul(a, u) for u in y)], index[y]) for y in vecs]
    return RelationalStructure.build(size, (3, 2), [p1, p2])


# ---------------------------------------------------------------------------
# coloured hypergraphs


@dataclass(frozen=True)
class ColoredHypergraph:
    """``edges[c]`` holds the m-subsets (as sorted tuples) carrying colour c."""

    n: int
    t: int
    m: int
    edges: tuple[tuple[tuple[int, ...], ...], ...]

    def __post_init__(self):
        if self.m < 1 or self.n < 0 or self.t < 0:
            raise ValueError("need m >= 1 and non-negative n, t")
        if len(self.edges) != self.t:
            raise ValueError(f"{len(self.edges)} edge lists for {self.t} colours")
        clean = []
        for c, es in enumerate(self.edges):
            out = set()
            for e in es:
                e = tuple(sorted(int(x) for x in e))
                if len(e) != self.m or len(set(e)) != self.m:
                    raise ValueError(f"colour {c}: edge {e} does not have {self.m} distinct vertices")
                if e[0] < 0 or e[-1] >= self.n:
                    raise ValueError(f"colour {c}: edge {e} out of range")
                out.add(e)
            clean.append(tuple(sorted(out)))
        object.__setattr__(self, "edges", tuple(clean))

    @property
    def edge_count(self) -> int:
        return sum(len(es) for es in self.edges)


def hypergraph_glue(h: ColoredHypergraph) -> RelationalStructure:
    """Vertices 0..n-1, colour a at index n+a.

    P_1 (arity m+1) holds every ordering of every edge followed by its colour;
    P_2 (unary) marks the colour elements.
    """
    p1 = []
    for a, es in enumerate(h.edges):
        for e in es:
            p1.extend(perm + (h.n + a,) for perm in permutations(e))
    p2 = [(h.n + a,) for a in range(h.t)]
    return RelationalStructure.build(h.n + h.t, (h.m + 1, 1), [p1, p2])


def _unit(seed: int, color: int, rank: int) -> float:
    digest = hashlib.blake2b(f"{seed}:{color}:{rank}".encode(), digest_size=8).digest()
    return int.from_bytes(digest, "big") / 2.0**64


def random_colored_hypergraph(n: int, t: int, m: int, p: float, seed: int,
                              caps: Caps | None = None) -> ColoredHypergraph:
    """Each m-subset (rank r in lexicographic order) gets colour c when
    ``blake2b("seed:c:r")`` read as a 64-bit fraction is below p."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"probability must lie in [0, 1], got {p}")
    if m < 1 or n < 0 or t < 0:
        raise ValueError("need m >= 1 and non-negative n, t")
    caps = resolve(caps)
    subsets = list(combinations(range(n), m)) if m <= n else []
    caps.check("tuples", len(subsets) * max(t, 1), "colour-subset pairs")
    edges = tuple(
        tuple(e for r, e in enumerate(subsets) if _unit(seed, c, r) < p) for c in range(t)
    )
    return ColoredHypergraph(n, t, m, edges)


def hypergraph_truncation(t: int, m: int = 3) -> ColoredHypergraph:
    """Symmetric t-colour truncation with vertices (label a, slot b) at a*m + b.

    The edges are the transversals: one vertex from each slot.  A transversal
    carries colour c exactly when c occurs among its labels.  The automorphism
    group permutes labels and colours together and permutes slots, so orbit
    counts on vertex/colour k-tuples stay bounded for k < m while the number
    of colour patterns on m-tuples grows with t (up to t = m).
    """
    if t < 1 or m < 2:
        raise ValueError(f"need t >= 1 and m >= 2, got t={t}, m={m}")
    edges: list[list[tuple[int, ...]]] = [[] for _ in range(t)]
    for labels in product(range(t), repeat=m):
        e = tuple(a * m + b for b, a in enumerate(labels))
        for c in set(labels):
            edges[c].append(e)
    return ColoredHypergraph(t * m, t, m, tuple(tuple(es) for es in edges))


# ---------------------------------------------------------------------------
# truncation families for length reports


def line_family() -> TruncationFamily:
    return TruncationFamily(
        "line (cyclic surrogate)", line_cycle,
        generators=lambda n: [line_rotation(n)],
        description="C_n with the rotation group standing in for the Z-action",
    )


def hypergraph_family(m: int = 3) -> TruncationFamily:
    return TruncationFamily(
        f"glued ({m},Sigma_t)-hypergraph", lambda t: hypergraph_glue(hypergraph_truncation(t, m)),
        description="symmetric transversal truncation; size parameter is the colour count t",
    )


# ---------------------------------------------------------------------------
# classes, amalgamation, extension property


@dataclass(frozen=True)
class ClassSpec:
    """A class of finite structures.

    ``extensions(A)`` lists the one-point extensions of a member A (new point
    last); when absent they are enumerated generically from the signature and
    filtered through ``member``.
    """

    name: str
    signature: Signature
    member: Callable[[RelationalStructure], bool]
    strategy: str = "free"
    extensions: Callable[[RelationalStructure], list[RelationalStructure]] | None = None

    def one_point_extensions(self, a: RelationalStructure) -> list[RelationalStructure]:
        if self.extensions is not None:
            return self.extensions(a)
        return generic_extensions(a, self.member)


def generic_extensions(a: RelationalStructure, member: Callable[[RelationalStructure], bool],
                       limit: int = 20) -> list[RelationalStructure]:
    new = a.n
    fresh = []
    for i, d in enumerate(a.arities):
        for t in product(range(a.n + 1), repeat=d):
            if new in t:
                fresh.append((i, t))
    if len(fresh) > limit:
        raise ValueError(f"{len(fresh)} candidate tuples: too many for generic extension enumeration")
    out = []
    for mask in range(1 << len(fresh)):
        rels = [list(r) for r in a.relations]
        for bit, (i, t) in enumerate(fresh):
            if (mask >> bit) & 1:
                rels[i].append(t)
        b = RelationalStructure.build(a.n + 1, a.arities, rels)
        if member(b):
            out.append(b)
    return out


def _is_graph(s: RelationalStructure) -> bool:
    rel = s.relation_set(0)
    return all(x != y and (y, x) in rel for x, y in rel)


def _graph_extensions(a: RelationalStructure) -> list[RelationalStructure]:
    out = []
    for nbrs in product((0, 1), repeat=a.n):
        rel = set(a.relation_set(0))
        for x, on in enumerate(nbrs):
            if on:
                rel.update({(x, a.n), (a.n, x)})
        out.append(RelationalStructure.build(a.n + 1, (2,), [rel]))
    return out


def graph_class() -> ClassSpec:
    return ClassSpec("graphs", Signature((2,)), _is_graph, "free", _graph_extensions)


def _is_linear_order(s: RelationalStructure) -> bool:
    rel = s.relation_set(0)
    for x in range(s.n):
        if (x, x) in rel:
            return False
        for y in range(x + 1, s.n):
            if ((x, y) in rel) == ((y, x) in rel):
                return False
    return all((x, z) in rel for x, y in rel for w, z in rel if y == w)


def _order_extensions(a: RelationalStructure) -> list[RelationalStructure]:
    below = [sum((y, x) in a.relation_set(0) for y in range(a.n)) for x in range(a.n)]
    out = []
    for pos in range(a.n + 1):
        rel = set(a.relation_set(0))
        for x in range(a.n):
            rel.add((x, a.n) if below[x] < pos else (a.n, x))
        out.append(RelationalStructure.build(a.n + 1, (2,), [rel]))
    return out


def linear_order_class() -> ClassSpec:
    return ClassSpec("linear orders", Signature((2,)), _is_linear_order, "order", _order_extensions)


def _hypergraph_member(m: int) -> Callable[[RelationalStructure], bool]:
    def member(s: RelationalStructure) -> bool:
        colors = {t[0] for t in s.relations[1]}
        rel = s.relation_set(0)
        for t in rel:
            xs, c = t[:m], t[m]
            if c not in colors or any(x in colors for x in xs) or len(set(xs)) != m:
                return False
            if any(p + (c,) not in rel for p in permutations(xs)):
                return False
        return True

    return member


def hypergraph_class(m: int = 3) -> ClassSpec:
    """Glued (m, Sigma)-hypergraphs: P_1 of arity m+1, P_2 the colour sort."""

    def extensions(a: RelationalStructure) -> list[RelationalStructure]:
        colors = sorted(t[0] for t in a.relations[1])
        verts = [x for x in range(a.n) if x not in set(colors)]
        new = a.n
        out = []
        # new colour: any set of m-subsets of the existing vertices
        subsets = list(combinations(verts, m))
        for mask in range(1 << len(subsets)):
            p1 = list(a.relations[0])
            for bit, e in enumerate(subsets):
                if (mask >> bit) & 1:
                    p1.extend(p + (new,) for p in permutations(e))
            out.append(RelationalStructure.build(a.n + 1, (m + 1, 1), [p1, list(a.relations[1]) + [(new,)]]))
        # new vertex: any set of (m-1)-subsets paired with colours
        slots = [(e, c) for e in combinations(verts, m - 1) for c in colors]
        for mask in range(1 << len(slots)):
            p1 = list(a.relations[0])
            for bit, (e, c) in enumerate(slots):
                if (mask >> bit) & 1:
                    p1.extend(p + (c,) for p in permutations(e + (new,)))
            out.append(RelationalStructure.build(a.n + 1, (m + 1, 1), [p1, list(a.relations[1])]))
        return out

    return ClassSpec(f"({m},Sigma)-hypergraphs", Signature((m + 1, 1)), _hypergraph_member(m), "free", extensions)


def _check_embedding(a: RelationalStructure, b: RelationalStructure, emb: Sequence[int], label: str):
    emb = tuple(emb)
    if len(emb) != a.n or len(set(emb)) != a.n or any(not 0 <= x < b.n for x in emb):
        raise ValueError(f"{label} is not an injection of {a.n} points into {b.n}")
    if a.arities != b.arities:
        raise ValueError(f"{label}: signatures differ")
    if b.induced(emb).relations != a.relations:
        raise ValueError(f"{label} does not preserve and reflect the relations")


def free_amalgam(a: RelationalStructure, b1: RelationalStructure, emb1: Sequence[int],
                 b2: RelationalStructure, emb2: Sequence[int], strategy: str = "free") -> RelationalStructure:
    """Glue b1 and b2 along the images of a.

    b1 keeps its indices; the points of b2 outside the image of a follow in
    increasing order.  With ``strategy="order"`` the single binary relation
    is a strict order and the union is completed to the lexicographically
    least linear extension.
    """
    _check_embedding(a, b1, emb1, "first embedding")
    _check_embedding(a, b2, emb2, "second embedding")
    ident = {y: emb1[i] for i, y in enumerate(emb2)}
    rest = [y for y in range(b2.n) if y not in ident]
    where = dict(ident)
    for k, y in enumerate(rest):
        where[y] = b1.n + k
    n = b1.n + len(rest)
    rels = []
    for i in range(len(a.arities)):
        rel = set(b1.relations[i])
        rel.update(tuple(where[x] for x in t) for t in b2.relations[i])
        rels.append(rel)
    if strategy == "free":
        return RelationalStructure.build(n, b1.arities, rels)
    if strategy != "order":
        raise ValueError(f"unknown amalgamation strategy {strategy!r}")
    if len(rels) != 1 or b1.arities != (2,):
        raise ValueError("order strategy needs a single binary relation")
    return RelationalStructure.build(n, (2,), [_linearize(n, rels[0])])


def _linearize(n: int, pairs: set) -> list[tuple[int, int]]:
    preds = [set() for _ in range(n)]
    for x, y in pairs:
        preds[y].add(x)
    order, placed = [], set()
    while len(order) < n:
        free = [x for x in range(n) if x not in placed and preds[x] <= placed]
        if not free:
            raise ValueError("the union of the two orders has a cycle")
        order.append(free[0])
        placed.add(free[0])
    return [(order[i], order[j]) for i, j in combinations(range(n), 2)]


@dataclass(frozen=True)
class ExtensionResult:
    passed: bool
    configurations: int
    subset: tuple[int, ...] | None = None
    extension: RelationalStructure | None = None

    def to_dict(self) -> dict:
        out = {"passed": self.passed, "configurations": self.configurations}
        if not self.passed:
            out["subset"] = list(self.subset)
            out["extension"] = [[list(t) for t in rel] for rel in self.extension.relations]
        return out


def _configurations(n: int, level: int) -> Iterator[tuple[int, ...]]:
    for size in range(min(level, n) + 1):
        yield from combinations(range(n), size)


def extension_property_check(s: RelationalStructure, spec: ClassSpec, level: int,
                             caps: Caps | None = None) -> ExtensionResult:
    """Check that every allowed one-point extension of every induced
    substructure on at most ``level`` points is realized in ``s``.

    Subsets are scanned by size and then lexicographically; the first
    unrealized extension is returned.
    """
    if level < 0:
        raise ValueError("level must be non-negative")
    caps = resolve(caps)
    errors = validate_structure(s)
    if errors:
        raise ValueError(f"invalid structure: {errors[0]}")
    if s.arities != spec.signature.arities:
        raise ValueError("structure and class have different signatures")
    count = 0
    for subset in _configurations(s.n, level):
        a = s.induced(subset)
        exts = spec.one_point_extensions(a)
        count += len(exts)
        caps.check("configs", count, "extension configurations")
        realized = set()
        inside = set(subset)
        for v in range(s.n):
            if v not in inside:
                realized.add(s.induced(subset + (v,)).relations)
        for ext in exts:
            if ext.relations not in realized:
                return ExtensionResult(False, count, subset, ext)
    return ExtensionResult(True, count)
