"""Linear congruence systems ``A x = b (mod m)`` via diagonalisation.

Row and column operations are unimodular over Z, hence invertible mod m, so
``U A V = D`` turns the system into independent congruences
``D[t][t] * y_t = (U b)_t`` with ``x = V y``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import gcd, prod
from typing import Iterator, Sequence


@dataclass(frozen=True)
class CongruenceSolution:
    """Solution set ``{V y : y_t in choices[t]}`` of a consistent system."""

    m: int
    transform: tuple[tuple[int, ...], ...]   # V, n x n
    choices: tuple[tuple[int, ...], ...]

    @property
    def count(self) -> int:
        return prod(len(c) for c in self.choices)

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        V, m = self.transform, self.m
        n = len(V)
        for y in product(*self.choices):
            yield tuple(sum(V[i][j] * y[j] for j in range(n)) % m for i in range(n))


def _solve_1d(d: int, c: int, m: int) -> tuple[int, ...]:
    """All y in Z/m with d*y = c (mod m)."""
    g = gcd(d, m)
    if c % g:
        return ()
    mg = m // g
    y0 = ((c // g) * pow(d // g, -1, mg)) % mg if mg > 1 else 0
    return tuple(sorted((y0 + k * mg) % m for k in range(g)))


def solve_congruences(rows: Sequence[Sequence[int]], rhs: Sequence[int], n: int, m: int) -> CongruenceSolution | None:
    """Solve ``rows @ x = rhs (mod m)`` for x in (Z/m)^n; ``None`` if inconsistent."""
    if m < 1:
        raise ValueError("modulus must be positive")
    seen = {}
    for r, c in zip(rows, rhs):
        key = tuple(int(x) % m for x in r)
        c = int(c) % m
        if key in seen:
            if seen[key] != c:
                return None
            continue
        seen[key] = c
    A = [list(k) for k in seen]
    b = list(seen.values())
    V = [[int(i == j) for j in range(n)] for i in range(n)]
    E = len(A)
    rank = 0
    for t in range(min(E, n)):
        while True:
            best = None
            for i in range(t, E):
                for j in range(t, n):
                    if A[i][j] and (best is None or A[i][j] < A[best[0]][best[1]]):
                        best = (i, j)
            if best is None:
                break
            i, j = best
            A[t], A[i] = A[i], A[t]
            b[t], b[i] = b[i], b[t]
            if j != t:
                for row in A:
                    row[t], row[j] = row[j], row[t]
                for row in V:
                    row[t], row[j] = row[j], row[t]
            p = A[t][t]
            clean = True
            for i in range(t + 1, E):
                q = A[i][t] // p
                if q:
                    A[i] = [(x - q * y) % m for x, y in zip(A[i], A[t])]
                    b[i] = (b[i] - q * b[t]) % m
                if A[i][t]:
                    clean = False
            for j in range(t + 1, n):
                q = A[t][j] // p
                if q:
                    for row in A:
                        row[j] = (row[j] - q * row[t]) % m
                    for row in V:
                        row[j] = (row[j] - q * row[t]) % m
                if A[t][j]:
                    clean = False
            if clean:
                break
        if best is None:
            break
        rank = t + 1
    for i in range(rank, E):
        if b[i] % m:
            return None
    choices = []
    for t in range(n):
        if t < rank:
            sol = _solve_1d(A[t][t], b[t], m)
            if not sol:
                return None
            choices.append(sol)
        else:
            choices.append(tuple(range(m)))
    return CongruenceSolution(m, tuple(tuple(r) for r in V), tuple(choices))
