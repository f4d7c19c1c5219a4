"""Isomorphism testing for power digraphs via canonical certificates.

Every tree of G(n, k) has the same AHU code, so a component is fixed up to
isomorphism by its cycle length, and the whole graph by the pair (tree code,
cycle-length multiset).
"""

from __future__ import annotations

from dataclasses import dataclass

from .aut import common_tree_code
from .digraph import build
from .errors import DomainError
from .numtheory import is_prime, mult_order
from .structure import cycle_structure


@dataclass(frozen=True)
class CanonicalCert:
    vertex_count: int
    tree_code: str
    cycle_multiset: tuple[tuple[int, int], ...]

    def __str__(self) -> str:
        cycles = ",".join(f"{r}^{m}" for r, m in self.cycle_multiset)
        return f"{self.vertex_count}|{self.tree_code}|{cycles}"

    @classmethod
    def parse(cls, text: str) -> CanonicalCert:
        n, code, cycles = text.split("|")
        pairs = tuple(tuple(int(x) for x in item.split("^")) for item in cycles.split(","))
        return cls(int(n), code, pairs)


def certificate(n: int, k: int) -> CanonicalCert:
    g = build(n, k)
    return CanonicalCert(n, common_tree_code(g), cycle_structure(n, k).by_length)


def is_isomorphic(n1: int, k1: int, n2: int, k2: int) -> bool:
    if n1 != n2:
        return False
    return certificate(n1, k1) == certificate(n2, k2)


def prime_iso_criterion(n: int, k1: int, k2: int) -> bool:
    """For prime ``n`` and ``1 < k1 < k2 < n``: isomorphic iff equal orders mod n."""
    if not is_prime(n):
        raise DomainError(f"n={n} is not prime")
    if not 1 < k1 < k2 < n:
        raise DomainError(f"need 1 < k1 < k2 < n, got k1={k1}, k2={k2}, n={n}")
    return mult_order(k1, n) == mult_order(k2, n)
