"""The explicit functional digraph of ``x -> x**k`` on a cyclic group.

The cyclic group of order ``n`` is realized additively as ``Z/nZ``: the power
map becomes ``a -> k*a mod n``, the identity is vertex 0 and the order of a
vertex ``a`` is ``n / gcd(n, a)``.  Everything in this module is computed from
the successor table alone and serves as the brute-force reference for the
closed forms in :mod:`powerdigraph.structure`.
"""

from __future__ import annotations

import math
from collections import Counter, deque
from dataclasses import dataclass, field
from functools import cached_property

from .errors import DomainError
from .numtheory import normalize_exponent


@dataclass(frozen=True)
class PowerDigraph:
    n: int
    k: int
    succ: tuple[int, ...] = field(repr=False)

    @cached_property
    def preimage_lists(self) -> tuple[tuple[int, ...], ...]:
        """Preimages of every vertex, found by inverting the successor table."""
        pre = [[] for _ in range(self.n)]
        for a, b in enumerate(self.succ):
            pre[b].append(a)
        return tuple(tuple(p) for p in pre)

    @cached_property
    def indegree(self) -> tuple[int, ...]:
        return tuple(len(p) for p in self.preimage_lists)

    @cached_property
    def decomposition(self) -> Decomposition:
        return decompose(self)

    def check_vertex(self, a: int) -> None:
        if not 0 <= a < self.n:
            raise DomainError(f"vertex {a} out of range for n={self.n}")


@dataclass(frozen=True)
class ComponentSummary:
    cycle_length: int
    size: int
    cycle_vertices: tuple[int, ...]
    representative: int


@dataclass(frozen=True)
class Decomposition:
    cycle_flag: tuple[bool, ...]
    height: tuple[int, ...]
    root: tuple[int, ...]
    component_id: tuple[int, ...]
    components: tuple[ComponentSummary, ...]

    @property
    def cycle_vertices(self) -> list[int]:
        return [a for a, c in enumerate(self.cycle_flag) if c]


def build(n: int, k: int) -> PowerDigraph:
    """Build G(n, k); ``k`` is reduced into ``1..n`` first."""
    if n <= 1:
        raise DomainError(f"group order must exceed 1, got {n}")
    k = normalize_exponent(k, n)
    return PowerDigraph(n=n, k=k, succ=tuple(k * a % n for a in range(n)))


def vertex_order(g: PowerDigraph, a: int) -> int:
    g.check_vertex(a)
    return g.n // math.gcd(g.n, a)


def preimages(g: PowerDigraph, a: int) -> frozenset[int]:
    """Solve ``k*x == a (mod n)`` as a linear congruence."""
    g.check_vertex(a)
    n, k = g.n, g.k
    d = math.gcd(n, k)
    if a % d:
        return frozenset()
    step = n // d
    x0 = (a // d) * pow(k // d, -1, step) % step if step > 1 else 0
    return frozenset(x0 + j * step for j in range(d))


def decompose(g: PowerDigraph) -> Decomposition:
    """Split G into cycles and hanging trees by peeling indegree-0 vertices."""
    n, succ = g.n, g.succ
    indeg = list(g.indegree)
    alive = [True] * n
    queue = deque(a for a in range(n) if indeg[a] == 0)
    while queue:
        a = queue.popleft()
        alive[a] = False
        b = succ[a]
        indeg[b] -= 1
        if indeg[b] == 0:
            queue.append(b)

    height = [0] * n
    root = list(range(n))
    comp = [-1] * n
    components = []
    pre = g.preimage_lists
    for c in range(n):
        if not alive[c] or comp[c] != -1:
            continue
        cid = len(components)
        cycle = [c]
        b = succ[c]
        while b != c:
            cycle.append(b)
            b = succ[b]
        size = 0
        for v in cycle:
            comp[v] = cid
            frontier = [v]
            size += 1
            while frontier:
                nxt = []
                for x in frontier:
                    for y in pre[x]:
                        if not alive[y]:
                            height[y] = height[x] + 1
                            root[y] = v
                            comp[y] = cid
                            nxt.append(y)
                size += len(nxt)
                frontier = nxt
        components.append(
            ComponentSummary(
                cycle_length=len(cycle),
                size=size,
                cycle_vertices=tuple(cycle),
                representative=c,
            )
        )
    return Decomposition(
        cycle_flag=tuple(alive),
        height=tuple(height),
        root=tuple(root),
        component_id=tuple(comp),
        components=tuple(components),
    )


def indegree_zero_count(g: PowerDigraph) -> int:
    return sum(1 for d in g.indegree if d == 0)


def brute_cycle_length_multiset(g: PowerDigraph) -> tuple[tuple[int, int], ...]:
    """Sorted ``((length, count), ...)`` over the cycles found by decomposition."""
    counts = Counter(c.cycle_length for c in g.decomposition.components)
    return tuple(sorted(counts.items()))


def brute_level_sizes(g: PowerDigraph) -> tuple[list[int], list[int]]:
    """Return ``(total, at_identity)`` vertex counts per height.

    ``total[m]`` counts all vertices of height ``m``; ``at_identity[m]`` counts
    those in the tree hanging at vertex 0.
    """
    dec = g.decomposition
    top = max(dec.height)
    total = [0] * (top + 1)
    at_identity = [0] * (top + 1)
    for a in range(g.n):
        h = dec.height[a]
        total[h] += 1
        if dec.root[a] == 0:
            at_identity[h] += 1
    return total, at_identity
