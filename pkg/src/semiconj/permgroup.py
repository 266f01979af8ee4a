"""Small permutation groups: products, cycles, Schreier-Sims order, orbits on tuples.

Permutations are tuples ``p`` of 0-based images, ``p[i]`` the image of ``i``.
``mul(a, b)`` is "apply ``a`` first, then ``b``", matching path concatenation
of monodromy loops.
"""

from __future__ import annotations

import math
from collections import deque
from itertools import permutations
from dataclasses import dataclass

__all__ = [
    "identity",
    "mul",
    "inverse",
    "product",
    "cycles",
    "cycle_type",
    "perm_order",
    "format_cycles",
    "is_transitive",
    "StabilizerChain",
    "group_order",
    "tuple_orbits",
    "OrbitBudgetError",
]


def identity(n: int) -> tuple:
    return tuple(range(n))


def mul(a, b) -> tuple:
    """``a`` then ``b``."""
    return tuple(b[x] for x in a)


def inverse(a) -> tuple:
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def product(perms, n: int) -> tuple:
    acc = identity(n)
    for p in perms:
        acc = mul(acc, p)
    return acc


def cycles(p) -> list[tuple[int, ...]]:
    seen = [False] * len(p)
    out = []
    for i in range(len(p)):
        if seen[i]:
            continue
        c = []
        j = i
        while not seen[j]:
            seen[j] = True
            c.append(j)
            j = p[j]
        out.append(tuple(c))
    return out


def cycle_type(p) -> tuple[int, ...]:
    return tuple(sorted((len(c) for c in cycles(p)), reverse=True))


def perm_order(p) -> int:
    return math.lcm(*cycle_type(p)) if len(p) else 1


def format_cycles(p) -> str:
    """1-based cycle notation without fixed points, ``()`` for the identity."""
    cs = [c for c in cycles(p) if len(c) > 1]
    if not cs:
        return "()"
    return "".join("(" + " ".join(str(x + 1) for x in c) + ")" for c in cs)


def is_transitive(gens, n: int) -> bool:
    if n == 0:
        return True
    seen = {0}
    todo = [0]
    while todo:
        x = todo.pop()
        for g in gens:
            y = g[x]
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return len(seen) == n


class _Level:
    __slots__ = ("base", "gens", "trans")

    def __init__(self, base: int):
        self.base = base
        self.gens: list[tuple] = []
        self.trans: dict[int, tuple] = {}


class StabilizerChain:
    """Base and strong generating set by the deterministic Schreier-Sims algorithm.

    ``trans[x]`` at a level is a group element sending the base point to ``x``.
    """

    def __init__(self, gens, n: int):
        self.n = n
        self.levels: list[_Level] = []
        e = identity(n)
        for g in gens:
            g = tuple(g)
            if g != e:
                self._insert(g, 0)

    def _orbit(self, L: _Level):
        """Extend the transversal; existing coset representatives are kept."""
        if not L.trans:
            L.trans = {L.base: identity(self.n)}
        todo = deque(L.trans)
        while todo:
            x = todo.popleft()
            ux = L.trans[x]
            for g in L.gens:
                y = g[x]
                if y not in L.trans:
                    L.trans[y] = mul(ux, g)
                    todo.append(y)

    def sift(self, g, start: int = 0):
        """Strip ``g`` through levels ``start..``; returns (residue, level reached)."""
        for i in range(start, len(self.levels)):
            L = self.levels[i]
            x = g[L.base]
            if x not in L.trans:
                return g, i
            g = mul(g, inverse(L.trans[x]))
        return g, len(self.levels)

    def _insert(self, g, i: int):
        e = identity(self.n)
        h, j = self.sift(g, i)
        if h == e:
            return
        if j == len(self.levels):
            moved = next(k for k in range(self.n) if h[k] != k)
            self.levels.append(_Level(moved))
        for lvl in range(i, j + 1):
            L = self.levels[lvl]
            L.gens.append(h)
            old = dict(L.trans)
            self._orbit(L)
            # Schreier generators involving the new generator or new orbit points
            for x, ux in list(L.trans.items()):
                for s in L.gens:
                    if s is not h and x in old:
                        continue
                    y = s[x]
                    sch = mul(mul(ux, s), inverse(L.trans[y]))
                    if sch != e:
                        self._insert(sch, lvl + 1)

    def order(self) -> int:
        return math.prod(len(L.trans) for L in self.levels)

    def base(self) -> list[int]:
        return [L.base for L in self.levels]

    def contains(self, g) -> bool:
        h, j = self.sift(tuple(g))
        return j == len(self.levels) and h == identity(self.n)


def group_order(gens, n: int) -> int:
    return StabilizerChain(gens, n).order()


class OrbitBudgetError(ValueError):
    pass


@dataclass(frozen=True)
class TupleOrbits:
    k: int
    count: int
    sizes: tuple[int, ...]

    def to_json(self) -> dict:
        return {"k": self.k, "orbit_count": self.count, "orbit_sizes": list(self.sizes)}


def tuple_orbits(gens, n: int, k: int, budget: int = 2_000_000) -> TupleOrbits:
    """Orbits of the group generated by ``gens`` on injective ``k``-tuples of ``range(n)``."""
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")
    total = math.perm(n, k)
    if n > 12 or total > budget:
        raise OrbitBudgetError(f"{total} injective {k}-tuples exceed the enumeration budget")
    seen: set = set()
    sizes = []
    for t in permutations(range(n), k):
        if t in seen:
            continue
        seen.add(t)
        size = 1
        todo = [t]
        while todo:
            u = todo.pop()
            for g in gens:
                v = tuple(g[x] for x in u)
                if v not in seen:
                    seen.add(v)
                    size += 1
                    todo.append(v)
        sizes.append(size)
    return TupleOrbits(k, len(sizes), tuple(sorted(sizes)))
