"""Automorphism group orders and orbit structure of power digraphs.

Rooted trees are compared by AHU parenthesis codes: a leaf is ``()`` and an
internal node wraps the sorted concatenation of its children's codes.  Group
orders are assembled from the tree automorphism order and the cycle-length
multiset as an iterated wreath product; the brute-force counters never use
that assembly and serve as ground truth.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass

from .digraph import PowerDigraph, build
from .errors import CapExceededError, DomainError, InvariantViolation
from .numtheory import BigCount, big_factorial, big_pow, coprime_split, is_prime, min_pow_divides
from .structure import cycle_structure

DEFAULT_EXHAUSTIVE_CAP = 8
DEFAULT_BACKTRACK_CAP = 60


@dataclass(frozen=True)
class SubtreeData:
    """Per-vertex AHU code and automorphism order of the subtree below it."""

    codes: tuple[str, ...]
    aut_orders: tuple[int, ...]


def subtree_data(g: PowerDigraph) -> SubtreeData:
    """Codes and orders for every vertex, computed once per graph instance."""
    cached = g.__dict__.get("_subtree_data")
    if cached is not None:
        return cached
    dec = g.decomposition
    pre = g.preimage_lists
    cyc = dec.cycle_flag
    codes: list[str] = [""] * g.n
    orders = [1] * g.n
    for v in sorted(range(g.n), key=dec.height.__getitem__, reverse=True):
        kids = [c for c in pre[v] if not cyc[c]]
        if not kids:
            codes[v] = "()"
            continue
        kid_codes = sorted(codes[c] for c in kids)
        codes[v] = "(" + "".join(kid_codes) + ")"
        order = 1
        for c in kids:
            order *= orders[c]
        run = 1
        for i in range(1, len(kid_codes)):
            if kid_codes[i] == kid_codes[i - 1]:
                run += 1
                order *= run
            else:
                run = 1
        orders[v] = order
    data = SubtreeData(tuple(codes), tuple(orders))
    g.__dict__["_subtree_data"] = data  # frozen dataclass: bypass __setattr__
    return data


def _check_root(g: PowerDigraph, root: int) -> None:
    g.check_vertex(root)
    if not g.decomposition.cycle_flag[root]:
        raise DomainError(f"vertex {root} is not a cycle vertex of G({g.n},{g.k})")


def tree_code(g: PowerDigraph, root: int) -> str:
    """AHU code of the tree hanging at cycle vertex ``root``."""
    _check_root(g, root)
    return subtree_data(g).codes[root]


def tree_aut_order(g: PowerDigraph, root: int) -> BigCount:
    _check_root(g, root)
    return subtree_data(g).aut_orders[root]


def common_tree_code(g: PowerDigraph) -> str:
    """The tree code shared by every cycle vertex; raises if they differ."""
    all_codes = subtree_data(g).codes
    codes = {all_codes[c] for c in g.decomposition.cycle_vertices}
    if len(codes) != 1:
        raise InvariantViolation(f"trees of G({g.n},{g.k}) are not all isomorphic")
    return codes.pop()


@dataclass(frozen=True)
class AutClass:
    cycle_length: int
    multiplicity: int
    component_order: BigCount


@dataclass(frozen=True)
class AutReport:
    tree_aut_order: BigCount
    per_class: tuple[AutClass, ...]
    total_order: BigCount
    structure_string: str


def wreath_assembly(tree_order: BigCount, by_length) -> AutReport:
    """Combine the tree automorphism order with cycle classes ``(r, m)``."""
    classes = []
    total = 1
    for r, m in by_length:
        comp = big_pow(tree_order, r) * r
        classes.append(AutClass(r, m, comp))
        total *= big_pow(comp, m) * big_factorial(m)
    parts = []
    for cls in sorted(classes, key=lambda c: -c.cycle_length):
        base = f"(Aut(T1) wr C{cls.cycle_length})"
        parts.append(base if cls.multiplicity == 1 else f"({base} wr S{cls.multiplicity})")
    return AutReport(tree_order, tuple(classes), total, " x ".join(parts))


def aut_order(n: int, k: int) -> AutReport:
    return aut_report(build(n, k))


def aut_report(g: PowerDigraph) -> AutReport:
    """Wreath-product automorphism order of an already built graph."""
    n, k = g.n, g.k
    common_tree_code(g)
    tree_order = tree_aut_order(g, 0)
    data = subtree_data(g)
    orders = {data.aut_orders[c] for c in g.decomposition.cycle_vertices}
    if orders != {tree_order}:
        raise InvariantViolation(f"tree automorphism orders differ across roots of G({n},{k})")
    return wreath_assembly(tree_order, cycle_structure(n, k).by_length)


def prime_k_tree_aut_order(n: int, k: int) -> BigCount:
    """Order of Aut(T_1) for prime ``k`` dividing ``n``, by recursion on height."""
    sp = coprime_split(n, k)
    k = sp.k
    if not is_prime(k) or n % k:
        raise DomainError(f"need prime k dividing n, got n={n}, k={k}")
    h0 = min_pow_divides(sp.w, k)
    level = 1  # order for the single-vertex tree at height h0
    for _ in range(h0 - 1):
        level = big_pow(level, k) * big_factorial(k)
    return big_pow(level, k - 1) * big_factorial(k - 1)


# -- brute force -----------------------------------------------------------


def _is_automorphism(succ, perm) -> bool:
    return all(perm[b] == succ[perm[a]] for a, b in enumerate(succ))


def exhaustive_automorphisms(g: PowerDigraph, cap: int = DEFAULT_EXHAUSTIVE_CAP):
    """Yield every automorphism as a tuple, testing all ``n!`` permutations."""
    if g.n > cap:
        raise CapExceededError("exhaustive automorphism search", g.n, cap)
    for perm in itertools.permutations(range(g.n)):
        if _is_automorphism(g.succ, perm):
            yield perm


def vertex_signatures(g: PowerDigraph) -> list[tuple]:
    """Automorphism-invariant labels used to prune the backtracking search."""
    dec = g.decomposition
    codes = subtree_data(g).codes
    cyc_len = [c.cycle_length for c in dec.components]
    return [
        (dec.height[a], g.indegree[a], cyc_len[dec.component_id[a]], codes[a])
        for a in range(g.n)
    ]


class _Matcher:
    """Backtracking search for maps ``s`` with ``s(f1(a)) == f2(s(a))``."""

    def __init__(self, g1: PowerDigraph, g2: PowerDigraph):
        self.f1, self.f2 = g1.succ, g2.succ
        self.pre2 = g2.preimage_lists
        self.sig1 = vertex_signatures(g1)
        self.sig2 = vertex_signatures(g2)
        self.cyc2 = g2.decomposition.cycle_flag
        self.n = g1.n
        self.order = _search_order(g1)
        by_sig = {}
        for u, s in enumerate(self.sig2):
            by_sig.setdefault(s, []).append(u)
        self.by_sig2 = by_sig

    def _assign(self, v, u, sigma, used, trail) -> bool:
        while True:
            if v in sigma:
                return sigma[v] == u
            if u in used or self.sig1[v] != self.sig2[u]:
                return False
            sigma[v] = u
            used.add(u)
            trail.append(v)
            v, u = self.f1[v], self.f2[u]

    def _undo(self, sigma, used, trail, mark) -> None:
        while len(trail) > mark:
            used.discard(sigma.pop(trail.pop()))

    def _candidates(self, v, sigma, used):
        parent = self.f1[v]
        if parent in sigma and parent != v:
            pool = [u for u in self.pre2[sigma[parent]] if not self.cyc2[u]]
        else:
            pool = self.by_sig2.get(self.sig1[v], [])
        return [u for u in pool if u not in used and self.sig2[u] == self.sig1[v]]

    def extend(self, partial: dict[int, int]) -> dict[int, int] | None:
        sigma: dict[int, int] = {}
        used: set[int] = set()
        trail: list[int] = []
        for v, u in partial.items():
            if not self._assign(v, u, sigma, used, trail):
                return None
        if self._search(0, sigma, used, trail):
            return sigma
        return None

    def _search(self, idx, sigma, used, trail) -> bool:
        order = self.order
        while idx < len(order) and order[idx] in sigma:
            idx += 1
        if idx == len(order):
            return True
        v = order[idx]
        for u in self._candidates(v, sigma, used):
            mark = len(trail)
            if self._assign(v, u, sigma, used, trail) and self._search(idx + 1, sigma, used, trail):
                return True
            self._undo(sigma, used, trail, mark)
        return False


def _search_order(g: PowerDigraph) -> list[int]:
    """Cycle vertices first, then everything else by increasing height."""
    dec = g.decomposition
    return sorted(range(g.n), key=lambda a: (dec.height[a], dec.component_id[a], a))


def find_isomorphism(g1: PowerDigraph, g2: PowerDigraph, cap: int = DEFAULT_BACKTRACK_CAP):
    """An explicit bijection ``s`` with ``s o f1 == f2 o s``, or None."""
    if max(g1.n, g2.n) > cap:
        raise CapExceededError("isomorphism search", max(g1.n, g2.n), cap)
    if g1.n != g2.n:
        return None
    if Counter(vertex_signatures(g1)) != Counter(vertex_signatures(g2)):
        return None
    sigma = _Matcher(g1, g2).extend({})
    if sigma is None:
        return None
    perm = tuple(sigma[a] for a in range(g1.n))
    if sorted(perm) != list(range(g1.n)):
        raise InvariantViolation("matcher produced a non-bijection")
    if any(perm[g1.succ[a]] != g2.succ[perm[a]] for a in range(g1.n)):
        raise InvariantViolation("matcher produced a map that does not commute with succ")
    return perm


def backtrack_aut_count(g: PowerDigraph, cap: int = DEFAULT_BACKTRACK_CAP) -> BigCount:
    """|Aut| as the product of orbit lengths along a point-stabilizer chain.

    Each orbit is found by asking the backtracking matcher whether some
    automorphism fixing the earlier base points sends ``v`` to ``u``.
    """
    if g.n > cap:
        raise CapExceededError("backtracking automorphism count", g.n, cap)
    matcher = _Matcher(g, g)
    fixed: dict[int, int] = {}
    total = 1
    for v in _search_order(g):
        if v in fixed:
            continue
        orbit = 0
        for u in matcher.by_sig2[matcher.sig1[v]]:
            trial = dict(fixed)
            trial[v] = u
            if matcher.extend(trial) is not None:
                orbit += 1
        total *= orbit
        # fixing v also fixes its forward orbit
        a = v
        while a not in fixed:
            fixed[a] = a
            a = g.succ[a]
    return total


def brute_aut_count(
    g: PowerDigraph,
    mode: str = "auto",
    exhaustive_cap: int = DEFAULT_EXHAUSTIVE_CAP,
    backtrack_cap: int = DEFAULT_BACKTRACK_CAP,
) -> BigCount:
    """Count automorphisms without any structural formula.

    ``mode`` is ``"exhaustive"`` (all ``n!`` permutations), ``"backtrack"``,
    or ``"auto"`` (exhaustive when ``n`` is within its cap).
    """
    if mode == "auto":
        mode = "exhaustive" if g.n <= exhaustive_cap else "backtrack"
    if mode == "exhaustive":
        return sum(1 for _ in exhaustive_automorphisms(g, exhaustive_cap))
    if mode == "backtrack":
        return backtrack_aut_count(g, backtrack_cap)
    raise DomainError(f"unknown mode {mode!r}")


def exhaustive_orbits(g: PowerDigraph, cap: int = DEFAULT_EXHAUSTIVE_CAP) -> list[int]:
    """Orbit id per vertex: the least vertex in its orbit."""
    images = [set() for _ in range(g.n)]
    for perm in exhaustive_automorphisms(g, cap):
        for a, b in enumerate(perm):
            images[a].add(b)
    return [min(im) for im in images]


# -- orbit invariants ---------------------------------------------------------


def _position_classes(g: PowerDigraph) -> list[int]:
    """For each cycle vertex, its offset from the canonical rotation start.

    The offset is taken modulo the rotational period of the sequence of tree
    codes around the cycle, so automorphisms preserve it.
    """
    codes = subtree_data(g).codes
    pos = [-1] * g.n
    for comp in g.decomposition.components:
        cyc = comp.cycle_vertices
        seq = [codes[c] for c in cyc]
        size = len(seq)
        period = next(p for p in range(1, size + 1) if size % p == 0 and seq[p:] + seq[:p] == seq)
        start = min(range(period), key=lambda i: seq[i:] + seq[:i])
        for i, c in enumerate(cyc):
            pos[c] = (i - start) % period
    return pos


def orbit_invariants(g: PowerDigraph) -> list[tuple]:
    dec = g.decomposition
    codes = subtree_data(g).codes
    pos = _position_classes(g)
    cyc_len = [c.cycle_length for c in dec.components]
    return [
        (cyc_len[dec.component_id[a]], dec.height[a], codes[a], pos[dec.root[a]])
        for a in range(g.n)
    ]


def orbit_invariant(n: int, k: int, a: int) -> tuple:
    """Signature constant on automorphism orbits.

    ``(cycle length of the component, height, code of the subtree at a,
    rotation class of a's root on its cycle)``.
    """
    g = build(n, k)
    g.check_vertex(a)
    return orbit_invariants(g)[a]
