"""Characteristic and minimal polynomials of the adjacency matrix of G(n, k).

Closed forms come out factored as ``lambda**a * prod (lambda**r - 1)**e``.  The
oracles work on any square integer matrix: a division-free Berkowitz
characteristic polynomial, and a minimal polynomial found from the eventually
periodic power sequence and then certified by checking that no maximal proper
divisor still annihilates the matrix.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple, Sequence

from .digraph import PowerDigraph
from .errors import CapExceededError, DomainError, InvariantViolation
from .numtheory import divisors
from .structure import coprime_split, cycle_structure, min_pow_divides

DEFAULT_CHARPOLY_CAP = 64
DEFAULT_MINPOLY_CAP = 40

Matrix = Sequence[Sequence[int]]


@dataclass(frozen=True)
class DensePoly:
    """Integer polynomial, coefficients in ascending degree, no trailing zeros."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> DensePoly:
        return cls((0,) * degree + (coeff,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __add__(self, other: DensePoly) -> DensePoly:
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return DensePoly(tuple(x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)))

    def __neg__(self) -> DensePoly:
        return DensePoly(tuple(-x for x in self.coeffs))

    def __sub__(self, other: DensePoly) -> DensePoly:
        return self + (-other)

    def __mul__(self, other: DensePoly) -> DensePoly:
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return DensePoly(())
        out = [0] * (len(a) + len(b) - 1)
        bnz = [(j, y) for j, y in enumerate(b) if y]
        for i, x in enumerate(a):
            if x:
                for j, y in bnz:
                    out[i + j] += x * y
        return DensePoly(tuple(out))

    def __pow__(self, e: int) -> DensePoly:
        result, base = DensePoly((1,)), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def divmod_monic(self, divisor: DensePoly) -> tuple[DensePoly, DensePoly]:
        """Exact division by a monic integer polynomial."""
        if not divisor or divisor.coeffs[-1] != 1:
            raise DomainError("divisor must be monic")
        rem = list(self.coeffs)
        dq = divisor.degree
        if len(rem) - 1 < dq:
            return DensePoly(()), self
        quot = [0] * (len(rem) - dq)
        dc = divisor.coeffs
        for i in range(len(rem) - 1, dq - 1, -1):
            c = rem[i]
            if c:
                quot[i - dq] = c
                for j in range(dq + 1):
                    rem[i - dq + j] -= c * dc[j]
        return DensePoly(tuple(quot)), DensePoly(tuple(rem))

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            body = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
            terms.append((sign, body))
        first_sign, first = terms[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            text += f" {sign} {body}"
        return text


@dataclass(frozen=True)
class FactoredPoly:
    """``x**lambda_power * prod((x**r - 1)**e for r, e in cycle_factors)``."""

    lambda_power: int
    cycle_factors: tuple[tuple[int, int], ...]

    @property
    def degree(self) -> int:
        return self.lambda_power + sum(r * e for r, e in self.cycle_factors)

    def __str__(self) -> str:
        parts = []
        if self.lambda_power == 1:
            parts.append("x")
        elif self.lambda_power > 1:
            parts.append(f"x^{self.lambda_power}")
        for r, e in self.cycle_factors:
            base = "(x - 1)" if r == 1 else f"(x^{r} - 1)"
            parts.append(base if e == 1 else f"{base}^{e}")
        return "*".join(parts) or "1"


class Eigenvalue(NamedTuple):
    """``exp(2*pi*i*index/order)`` in lowest terms; ``order == 0`` denotes 0."""

    order: int
    index: int

    def __str__(self) -> str:
        if self.order == 0:
            return "0"
        if self.order == 1:
            return "1"
        return f"exp(2*pi*i*{self.index}/{self.order})"


ZERO = Eigenvalue(0, 0)


@dataclass(frozen=True)
class AdjacencyMatrix:
    ordering: tuple[int, ...]
    rows: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.rows)


def char_poly(n: int, k: int) -> FactoredPoly:
    sp = coprime_split(n, k)
    cs = cycle_structure(n, k)
    zero_mult = sum(m * r * (sp.w - 1) for r, m in cs.by_length)
    return FactoredPoly(zero_mult, cs.by_length)


def min_poly(n: int, k: int) -> FactoredPoly:
    sp = coprime_split(n, k)
    h0 = min_pow_divides(sp.w, sp.k)
    return FactoredPoly(h0, ((cycle_structure(n, k).longest, 1),))


def expand(p: FactoredPoly) -> DensePoly:
    out = DensePoly.monomial(p.lambda_power)
    for r, e in p.cycle_factors:
        out = out * (DensePoly.monomial(r) - DensePoly((1,))) ** e
    return out


def spectrum(p: FactoredPoly) -> list[tuple[Eigenvalue, int]]:
    """Eigenvalues with algebraic multiplicity, as exact roots of unity."""
    mult = Counter()
    if p.lambda_power:
        mult[ZERO] += p.lambda_power
    for r, e in p.cycle_factors:
        for j in range(r):
            g = math.gcd(j, r)
            mult[Eigenvalue(r // g, j // g)] += e
    return sorted(mult.items())


def _ordered_vertices(g: PowerDigraph) -> list[int]:
    dec = g.decomposition
    pre = g.preimage_lists
    comps = sorted(dec.components, key=lambda c: min(c.cycle_vertices))
    order = []
    for comp in comps:
        start = min(comp.cycle_vertices)
        level = [start]
        b = g.succ[start]
        while b != start:
            level.append(b)
            b = g.succ[b]
        while level:
            order.extend(level)
            level = [y for x in level for y in sorted(pre[x]) if not dec.cycle_flag[y]]
    return order


def matrix_for_order(g: PowerDigraph, ordering: Sequence[int]) -> AdjacencyMatrix:
    pos = {v: i for i, v in enumerate(ordering)}
    rows = []
    for v in ordering:
        row = [0] * g.n
        row[pos[g.succ[v]]] = 1
        rows.append(tuple(row))
    return AdjacencyMatrix(tuple(ordering), tuple(rows))


def canonical_matrix(g: PowerDigraph) -> AdjacencyMatrix:
    """Adjacency matrix labelled component by component, then height by height.

    Components are taken in order of their least cycle vertex; each cycle is
    listed in successor order from that vertex, and each further height lists
    children in parent order with siblings in ascending label order.
    """
    return matrix_for_order(g, _ordered_vertices(g))


def natural_matrix(g: PowerDigraph) -> AdjacencyMatrix:
    return matrix_for_order(g, range(g.n))


def _rows(m) -> list[list[int]]:
    rows = m.rows if isinstance(m, AdjacencyMatrix) else m
    rows = [list(r) for r in rows]
    if any(len(r) != len(rows) for r in rows):
        raise DomainError("matrix must be square")
    return rows


def oracle_char_poly(m, cap: int = DEFAULT_CHARPOLY_CAP) -> DensePoly:
    """``det(x*I - A)`` by Berkowitz's division-free algorithm.

    Row sparsity is exploited in the matrix-vector products, so 0/1 matrices
    with one entry per row cost ``O(n**3)`` overall.
    """
    a = _rows(m)
    n = len(a)
    if n > cap:
        raise CapExceededError("characteristic polynomial oracle", n, cap)
    if n == 0:
        return DensePoly((1,))
    sparse = [[(j, x) for j, x in enumerate(row) if x] for row in a]
    # coefficients in descending powers while iterating
    c = [1, -a[0][0]]
    for r in range(1, n):
        col = [a[i][r] for i in range(r)]
        row = [(j, x) for j, x in sparse[r] if j < r]
        q = [1, -a[r][r]]
        v = col
        for _ in range(r):
            q.append(-sum(x * v[j] for j, x in row))
            if not any(v):
                break
            v = [sum(x * v[j] for j, x in sparse[i] if j < r) for i in range(r)]
        new = [0] * (r + 2)
        qnz = [(i, x) for i, x in enumerate(q) if x]
        for j, y in enumerate(c):
            if y:
                for i, x in qnz:
                    if i + j <= r + 1:
                        new[i + j] += x * y
        c = new
    return DensePoly(tuple(reversed(c)))


def _mat_mul(b: list[list[int]], a_sparse: list[list[tuple[int, int]]], n: int) -> list[list[int]]:
    out = []
    for brow in b:
        row = [0] * n
        for kk, x in enumerate(brow):
            if x:
                for j, y in a_sparse[kk]:
                    row[j] += x * y
        out.append(row)
    return out


def poly_at_matrix(p: DensePoly, m) -> list[list[int]]:
    """Evaluate ``p(A)`` exactly by Horner's rule."""
    a = _rows(m)
    n = len(a)
    a_sparse = [[(j, x) for j, x in enumerate(row) if x] for row in a]
    result = [[0] * n for _ in range(n)]
    for c in reversed(p.coeffs):
        result = _mat_mul(result, a_sparse, n)
        if c:
            for i in range(n):
                result[i][i] += c
    return result


def annihilates(p: DensePoly, m) -> bool:
    return not any(any(row) for row in poly_at_matrix(p, m))


@lru_cache(maxsize=None)
def cyclotomic(e: int) -> DensePoly:
    """The ``e``-th cyclotomic polynomial, by exact division of ``x**e - 1``."""
    p = DensePoly.monomial(e) - DensePoly((1,))
    for d in divisors(e)[:-1]:
        p, rem = p.divmod_monic(cyclotomic(d))
        if rem:
            raise InvariantViolation(f"cyclotomic division left a remainder for e={e}")
    return p


def _candidate(h: int, cyclo: frozenset[int]) -> DensePoly:
    p = DensePoly.monomial(h)
    for e in sorted(cyclo):
        p = p * cyclotomic(e)
    return p


def oracle_min_poly(m, cap: int = DEFAULT_MINPOLY_CAP, max_power: int | None = None) -> DensePoly:
    """Minimal polynomial of a matrix whose powers are eventually periodic.

    The first repeat ``A**(i+p) == A**i`` gives the annihilator
    ``x**i * (x**p - 1) = x**i * prod(Phi_e, e | p)``.  The search then walks
    down to a divisor none of whose maximal proper divisors annihilates A.
    Since the minimal polynomial divides every annihilator, that divisor is
    the minimal polynomial.
    """
    a = _rows(m)
    n = len(a)
    if n > cap:
        raise CapExceededError("minimal polynomial oracle", n, cap)
    if max_power is None:
        max_power = n * n + n
    a_sparse = [[(j, x) for j, x in enumerate(row) if x] for row in a]
    power = [[int(i == j) for j in range(n)] for i in range(n)]
    seen = {}
    for step in range(max_power + 1):
        key = tuple(map(tuple, power))
        if key in seen:
            start = seen[key]
            period = step - start
            break
        seen[key] = step
        power = _mat_mul(power, a_sparse, n)
    else:
        raise DomainError(f"matrix powers did not repeat within {max_power} steps")

    h, cyclo = start, frozenset(divisors(period))
    if not annihilates(_candidate(h, cyclo), a):
        raise InvariantViolation("repeat-derived polynomial does not annihilate the matrix")
    shrunk = True
    while shrunk:
        shrunk = False
        options = [(h - 1, cyclo)] if h else []
        options += [(h, cyclo - {e}) for e in sorted(cyclo)]
        for cand in options:
            if annihilates(_candidate(*cand), a):
                h, cyclo = cand
                shrunk = True
                break
    return _candidate(h, cyclo)


def min_poly_with_lowered_power(n: int, k: int) -> tuple[DensePoly, DensePoly | None]:
    """Expanded minimal polynomial and the same with its x-power lowered by one.

    The second entry is None when the trees have height 0.
    """
    mp = min_poly(n, k)
    full = expand(mp)
    if mp.lambda_power == 0:
        return full, None
    return full, expand(FactoredPoly(mp.lambda_power - 1, mp.cycle_factors))
