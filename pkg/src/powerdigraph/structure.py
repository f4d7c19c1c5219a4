"""Closed-form structure of G(n, k), computed without building the graph.

Cycle vertices are exactly the elements whose order divides ``t``; a cycle of
vertices of order ``d`` has length ``ord_d(k)``.  Trees all have the shape of
the tree at the identity, with height ``h0`` the least ``h`` with ``w | k**h``.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import NamedTuple

from .errors import DomainError, InvariantViolation
from .numtheory import (
    CoprimeSplit,
    coprime_part,
    coprime_split,
    divisors,
    euler_phi,
    gcd_pow_minus_one,
    min_pow_divides,
    moebius,
    mult_order,
    normalize_exponent,
)


class CycleOrderRecord(NamedTuple):
    order: int
    length: int
    count: int


@dataclass(frozen=True)
class CycleStructure:
    per_order: tuple[CycleOrderRecord, ...]
    by_length: tuple[tuple[int, int], ...]
    total_cycles: int
    longest: int


@dataclass(frozen=True)
class TreeProfile:
    h0: int
    per_tree_levels: tuple[int, ...]
    total_levels: tuple[int, ...]
    tree_size: int


class Predicates(NamedTuple):
    connected: bool
    regular: bool
    arc_transitive: bool
    vertex_transitive: bool
    generators_indegree_zero: bool


@dataclass(frozen=True)
class GraphFacts:
    split: CoprimeSplit
    cycles: CycleStructure
    trees: TreeProfile
    indegree_zero: int
    predicates: Predicates

    @property
    def connected(self) -> bool:
        return self.predicates.connected

    @property
    def regular(self) -> bool:
        return self.predicates.regular

    @property
    def transitive(self) -> bool:
        return self.predicates.vertex_transitive


def _check_n(n: int) -> None:
    if n <= 1:
        raise DomainError(f"group order must exceed 1, got {n}")


def cycle_structure(n: int, k: int) -> CycleStructure:
    sp = coprime_split(n, k)
    records = []
    for d in divisors(sp.t):
        length = mult_order(sp.k, d)
        phi = euler_phi(d)
        if phi % length:
            raise InvariantViolation(f"phi({d}) not divisible by ord_{d}({sp.k})")
        records.append(CycleOrderRecord(d, length, phi // length))
    agg = Counter()
    for rec in records:
        agg[rec.length] += rec.count
    return CycleStructure(
        per_order=tuple(records),
        by_length=tuple(sorted(agg.items())),
        total_cycles=sum(agg.values()),
        longest=mult_order(sp.k, sp.t),
    )


def cycles_of_length(n: int, k: int, r: int) -> int:
    """Number of cycles of length exactly ``r``, by Moebius inversion."""
    _check_n(n)
    if r < 1:
        raise DomainError(f"cycle length must be positive, got {r}")
    k = normalize_exponent(k, n)
    total = 0
    for d in divisors(r):
        mu = moebius(d)
        if mu:
            total += mu * gcd_pow_minus_one(k, r // d, n)
    if total % r:
        raise InvariantViolation(f"Moebius sum {total} not divisible by r={r} for G({n},{k})")
    return total // r


def longest_cycle_length(n: int, k: int) -> int:
    sp = coprime_split(n, k)
    return mult_order(sp.k, sp.t)


def _per_tree_level(w: int, k: int, m: int) -> int:
    if m == 0:
        return 1
    return math.gcd(w, k**m) - math.gcd(w, k ** (m - 1))


def tree_profile(n: int, k: int) -> TreeProfile:
    sp = coprime_split(n, k)
    h0 = min_pow_divides(sp.w, sp.k)
    per_tree = tuple(_per_tree_level(sp.w, sp.k, m) for m in range(h0 + 1))
    total = [sp.t]
    for m in range(1, h0 + 1):
        total.append(math.gcd(n, sp.k**m * sp.t) - math.gcd(n, sp.k ** (m - 1) * sp.t))
    return TreeProfile(h0=h0, per_tree_levels=per_tree, total_levels=tuple(total), tree_size=sp.w)


def _element_split(n: int, k: int, a: int) -> tuple[int, int]:
    """Order of ``a`` split as ``(t_a, w_a)`` relative to ``k``."""
    if not 0 <= a < n:
        raise DomainError(f"vertex {a} out of range for n={n}")
    order = n // math.gcd(n, a)
    t_a = coprime_part(order, k)
    return t_a, order // t_a


def vertex_height(n: int, k: int, a: int) -> int:
    _check_n(n)
    k = normalize_exponent(k, n)
    _, w_a = _element_split(n, k, a)
    return min_pow_divides(w_a, k)


def level_membership(n: int, k: int, a: int) -> tuple[int, int]:
    """``(order of the cycle vertex a reaches, height of a)``."""
    _check_n(n)
    k = normalize_exponent(k, n)
    t_a, w_a = _element_split(n, k, a)
    return t_a, min_pow_divides(w_a, k)


def indegree_zero_count_formula(n: int, k: int) -> int:
    _check_n(n)
    d = math.gcd(n, normalize_exponent(k, n))
    return (d - 1) * n // d


def indegree_zero_in_level(n: int, k: int, m: int) -> int:
    """Childless vertices at height ``m`` of a single tree, ``1 <= m < h0``."""
    prof = tree_profile(n, k)
    if prof.h0 < 2 or not 1 <= m <= prof.h0 - 1:
        raise DomainError(f"level {m} outside 1..h0-1 (h0={prof.h0})")
    d = math.gcd(n, normalize_exponent(k, n))
    return prof.per_tree_levels[m] - prof.per_tree_levels[m + 1] // d


def predicates(n: int, k: int) -> Predicates:
    _check_n(n)
    # Transitivity holds iff every vertex is a loop, i.e. n | k - 1; the raw
    # exponent is used so the test does not depend on normalization.
    transitive = (k - 1) % n == 0
    sp = coprime_split(n, k)
    d = math.gcd(n, sp.k)
    return Predicates(
        connected=sp.t == 1,
        regular=d == 1,
        arc_transitive=transitive,
        vertex_transitive=transitive,
        generators_indegree_zero=d != 1,
    )


def count_order_preimages(r: int, r1: int, m: int) -> int:
    """Elements of order ``r1`` whose ``r1/r``-th power is a fixed element of order ``r``."""
    if r < 1 or r1 % r or m % r1:
        raise DomainError(f"need r | r1 | m, got r={r}, r1={r1}, m={m}")
    return euler_phi(r1) // euler_phi(r)


def graph_facts(n: int, k: int) -> GraphFacts:
    return GraphFacts(
        split=coprime_split(n, k),
        cycles=cycle_structure(n, k),
        trees=tree_profile(n, k),
        indegree_zero=indegree_zero_count_formula(n, k),
        predicates=predicates(n, k),
    )
