"""Deterministic theory-versus-oracle sweep.

Every closed form is checked against a brute-force computation on the
explicit graph.  Checks are grouped into suites; the report lists per-suite
counts and failure messages in a fixed order and carries no timings, so two
runs with the same configuration print identical bytes.
"""

from __future__ import annotations

import contextlib
import math
from collections import Counter, defaultdict
from dataclasses import dataclass, fields
from unittest import mock

from . import aut, canon, digraph, numtheory, spectral, structure
from .errors import DomainError
from .numtheory import coprime_split, divisors, euler_phi, is_prime, mult_order

MAX_FAILURES_SHOWN = 10


@dataclass
class VerifyConfig:
    max_n: int = 300
    max_matrix_n: int = 64
    max_minpoly_n: int = 40
    max_exhaustive_n: int = 8
    backtracking_samples: int = 50
    fail_fast: bool = False
    max_orbit_n: int = 200
    max_matcher_n: int = 40
    max_root_group: int = 200
    max_solver_n: int = 100
    max_theory_n: int = 500
    backtrack_cap: int = 60
    fault: str | None = None

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if f.name.startswith("max_") and value < 2:
                raise DomainError(f"{f.name} must be at least 2, got {value}")
        if self.backtracking_samples < 0:
            raise DomainError("backtracking_samples must be nonnegative")
        if self.fault is not None and self.fault not in FAULTS:
            raise DomainError(f"unknown fault {self.fault!r}; choose from {sorted(FAULTS)}")


class StopVerification(Exception):
    pass


class Tally:
    def __init__(self, fail_fast: bool = False):
        self.fail_fast = fail_fast
        self.checks: Counter = Counter()
        self.failures: dict[str, list[str]] = defaultdict(list)
        self.stopped = False

    def check(self, suite: str, ok: bool, detail) -> None:
        self.checks[suite] += 1
        if not ok:
            self.failures[suite].append(detail() if callable(detail) else detail)
            if self.fail_fast:
                self.stopped = True
                raise StopVerification

    @property
    def total_checks(self) -> int:
        return sum(self.checks.values())

    @property
    def total_failures(self) -> int:
        return sum(len(v) for v in self.failures.values())


# -- fault injection (harness self-test) ---------------------------------------


def _off_by_one(fn):
    def wrapped(*args, **kwargs):
        return fn(*args, **kwargs) + 1

    return wrapped


def _bad_tree_profile(fn):
    def wrapped(n, k):
        prof = fn(n, k)
        levels = list(prof.per_tree_levels)
        levels[0] += 1
        return structure.TreeProfile(prof.h0, tuple(levels), prof.total_levels, prof.tree_size)

    return wrapped


def _bad_char_poly(fn):
    def wrapped(n, k):
        p = fn(n, k)
        return spectral.FactoredPoly(p.lambda_power + 1, p.cycle_factors)

    return wrapped


FAULTS = {
    "indegree": (structure, "indegree_zero_count_formula", _off_by_one),
    "cycles": (structure, "cycles_of_length", _off_by_one),
    "levels": (structure, "tree_profile", _bad_tree_profile),
    "charpoly": (spectral, "char_poly", _bad_char_poly),
}


@contextlib.contextmanager
def injected_fault(name: str | None):
    if name is None:
        yield
        return
    module, attr, wrap = FAULTS[name]
    with mock.patch.object(module, attr, wrap(getattr(module, attr))):
        yield


# -- per-graph checks ------------------------------------------------------------


def _digraph_checks(tally: Tally, g, orders, sp, cfg: VerifyConfig) -> None:
    S = "digraph"
    n, k, succ = g.n, g.k, g.succ
    dec = g.decomposition
    d = math.gcd(n, k)
    indeg = g.indegree
    tag = f"G({n},{k})"

    tally.check(S, len(succ) == n and sum(indeg) == n, f"{tag}: edge count")
    bad = next((a for a in range(n) if indeg[a] not in (0, d) or (indeg[a] > 0) != (a % d == 0)), None)
    tally.check(S, bad is None, lambda: f"{tag}: indegree of vertex {bad}")
    bad = next(
        (a for a in range(n) if digraph.preimages(g, a) != frozenset(g.preimage_lists[a])), None
    ) if n <= cfg.max_solver_n else None
    tally.check(S, bad is None, lambda: f"{tag}: congruence solver disagrees with scan at {bad}")
    bad = next((a for a in range(n) if dec.cycle_flag[a] != (sp.t % orders[a] == 0)), None)
    tally.check(S, bad is None, lambda: f"{tag}: cycle vertex criterion fails at {bad}")
    same = all(len({orders[c] for c in comp.cycle_vertices}) == 1 for comp in dec.components)
    tally.check(S, same, f"{tag}: a cycle mixes vertex orders")
    h = dec.height
    bad = next((a for a in range(n) if h[succ[a]] != max(h[a] - 1, 0)), None)
    tally.check(S, bad is None, lambda: f"{tag}: height recursion fails at {bad}")
    longest = max(c.cycle_length for c in dec.components)
    gen_ok = all(
        dec.components[dec.component_id[a]].cycle_length == longest
        for a in range(1, n) if orders[a] == n
    )
    tally.check(S, gen_ok, f"{tag}: generator component is not the longest cycle")
    gens_zero = all(indeg[a] == 0 for a in range(1, n) if orders[a] == n)
    tally.check(S, gens_zero == (d != 1), f"{tag}: generator indegree property")
    sizes_ok = all(c.size == c.cycle_length * sp.w for c in dec.components)
    tally.check(S, sizes_ok, f"{tag}: component size != cycle length * w")
    tally.check(S, sum(c.size for c in dec.components) == n, f"{tag}: components do not cover")


def _structure_checks(tally: Tally, g, orders, sp) -> None:
    S = "structure"
    n, k = g.n, g.k
    dec = g.decomposition
    tag = f"G({n},{k})"
    d = math.gcd(n, k)

    cs = structure.cycle_structure(n, k)
    brute = digraph.brute_cycle_length_multiset(g)
    tally.check(S, cs.by_length == brute, lambda: f"{tag}: cycle multiset {cs.by_length} != {brute}")
    tally.check(S, sum(r.length * r.count for r in cs.per_order) == sp.t, f"{tag}: cycle vertex total")
    brute_counts = dict(brute)
    longest = max(r for r, _ in brute)
    tally.check(S, structure.longest_cycle_length(n, k) == longest, f"{tag}: longest cycle")
    for r in range(1, cs.longest + 1):
        got = structure.cycles_of_length(n, k, r)
        want = brute_counts.get(r, 0)
        tally.check(S, got == want, lambda: f"{tag}: cycles of length {r}: {got} != {want}")

    prof = structure.tree_profile(n, k)
    total, at_id = digraph.brute_level_sizes(g)
    tally.check(S, list(prof.per_tree_levels) == at_id, lambda: f"{tag}: per-tree levels {prof.per_tree_levels} != {at_id}")
    tally.check(S, list(prof.total_levels) == total, lambda: f"{tag}: total levels {prof.total_levels} != {total}")

    # both formulas depend on a only through ord(a); evaluate once per order
    h = dec.height
    height_of, member_of = {}, {}
    for a in range(n):
        o = orders[a]
        if o not in height_of:
            height_of[o] = structure.vertex_height(n, k, a)
            member_of[o] = structure.level_membership(n, k, a)
    bad = next((a for a in range(n) if height_of[orders[a]] != h[a]), None)
    tally.check(S, bad is None, lambda: f"{tag}: vertex height at {bad}")
    bad = next((a for a in range(n) if member_of[orders[a]] != (orders[dec.root[a]], h[a])), None)
    tally.check(S, bad is None, lambda: f"{tag}: level membership at {bad}")

    iz = digraph.indegree_zero_count(g)
    got = structure.indegree_zero_count_formula(n, k)
    tally.check(S, got == iz, lambda: f"{tag}: indegree-0 count {got} != {iz}")
    for m in range(1, prof.h0):
        want = sum(1 for a in range(n) if dec.root[a] == 0 and h[a] == m and g.indegree[a] == 0)
        got = structure.indegree_zero_in_level(n, k, m)
        tally.check(S, got == want, lambda: f"{tag}: childless at level {m}: {got} != {want}")

    pred = structure.predicates(n, k)
    loops = all(g.succ[a] == a for a in range(n))
    brute_pred = structure.Predicates(
        connected=len(dec.components) == 1,
        regular=all(x == 1 for x in g.indegree),
        arc_transitive=loops,
        vertex_transitive=loops,
        generators_indegree_zero=all(g.indegree[a] == 0 for a in range(1, n) if orders[a] == n),
    )
    tally.check(S, pred == brute_pred, lambda: f"{tag}: predicates {pred} != {brute_pred}")

    # subgroup unions: group vertices by (order, root order, height, cycle length)
    cyc_len = [c.cycle_length for c in dec.components]
    keys = Counter(
        (orders[a], orders[dec.root[a]], h[a], cyc_len[dec.component_id[a]]) for a in range(n)
    )
    ok = True
    for dd in divisors(sp.t):
        for hh in range(prof.h0 + 1):
            modulus = k**hh * dd
            size = 0
            for (o, ro, hv, _), cnt in keys.items():
                inside = dd % ro == 0 and hv <= hh
                ok &= inside == (modulus % o == 0)
                size += cnt if inside else 0
            ok &= size == math.gcd(n, modulus)
    tally.check(S, ok, f"{tag}: subgroup union by root order")
    ok = True
    for ll in divisors(longest):
        base = math.gcd(sp.t, k**ll - 1)
        for hh in range(prof.h0 + 1):
            modulus = k**hh * base
            size = 0
            for (o, _, hv, cl), cnt in keys.items():
                inside = ll % cl == 0 and hv <= hh
                ok &= inside == (modulus % o == 0)
                size += cnt if inside else 0
            ok &= size == math.gcd(n, modulus)
    tally.check(S, ok, f"{tag}: subgroup union by cycle length")

    # translating the identity tree by a cycle vertex multiplies orders
    ok = True
    cyc = dec.cycle_vertices
    for a in range(n):
        if dec.root[a] != 0 or h[a] == 0:
            continue
        ha = h[a]
        for c in cyc:
            b = (a + c) % n
            target = k**ha * c % n
            ok &= dec.root[b] == target and h[b] == ha and orders[b] == orders[a] * orders[c]
    tally.check(S, ok, f"{tag}: order product under translation")

    tally.check(S, _lcm_identity_holds(sp.t, k), f"{tag}: lcm identity for cycle lengths")
    if prof.h0 >= 1:
        tally.check(S, 2 * total[-1] >= n, f"{tag}: top level smaller than n/2")
    if n % 2 == 0 and n >= 6:
        tally.check(S, 2 * longest <= n - 2, f"{tag}: longest cycle exceeds (n-2)/2")
    if d != 1:
        tally.check(S, euler_phi(n) * d <= (d - 1) * n, f"{tag}: phi(n) bound")


_lcm_cache: dict[tuple[int, int], bool] = {}


def _lcm_identity_holds(t: int, k: int) -> bool:
    key = (t, k % t if t > 1 else 0)
    if key not in _lcm_cache:
        divs = divisors(t)
        ell = {dd: mult_order(k, dd) for dd in divs}
        _lcm_cache[key] = all(
            ell[math.lcm(a, b)] == math.lcm(ell[a], ell[b]) for a in divs for b in divs
        )
    return _lcm_cache[key]


def _aut_checks(tally: Tally, g, orders, sp, cfg: VerifyConfig) -> None:
    S = "aut"
    n, k = g.n, g.k
    tag = f"G({n},{k})"
    data = aut.subtree_data(g)
    cycle_codes = {data.codes[c] for c in g.decomposition.cycle_vertices}
    tally.check(S, len(cycle_codes) == 1, f"{tag}: tree codes differ across roots")
    tree_order = data.aut_orders[0]
    if k in (2, 3, 5) and n % k == 0:
        got = aut.prime_k_tree_aut_order(n, k)
        tally.check(S, got == tree_order, lambda: f"{tag}: prime-k recursion {got} != {tree_order}")
    report = aut.aut_report(g)
    if math.gcd(n, k) == 1:
        want = 1
        for r, m in structure.cycle_structure(n, k).by_length:
            want *= r**m * math.factorial(m)
        tally.check(S, tree_order == 1 and report.total_order == want, f"{tag}: coprime automorphism order")
    if k == 1:
        tally.check(S, report.total_order == math.factorial(n), f"{tag}: k=1 should give n!")
    if k == n:
        tally.check(S, report.total_order == math.factorial(n - 1), f"{tag}: k=n should give (n-1)!")

    if n <= cfg.max_exhaustive_n:
        autos = list(aut.exhaustive_automorphisms(g, cfg.max_exhaustive_n))
        tally.check(S, len(autos) == report.total_order, lambda: f"{tag}: exhaustive count {len(autos)} != {report.total_order}")
        orbit = aut.exhaustive_orbits(g, cfg.max_exhaustive_n)
        inv = aut.orbit_invariants(g)
        ok = all(
            (orders[a] != orders[b] or orbit[a] == orbit[b]) and (orbit[a] != orbit[b] or inv[a] == inv[b])
            for a in range(n) for b in range(n)
        )
        tally.check("orbits", ok, f"{tag}: exhaustive orbits disagree with vertex orders")

    if n <= cfg.max_orbit_n:
        inv = aut.orbit_invariants(g)
        by_order: dict[int, tuple] = {}
        ok = True
        for a in range(n):
            ok &= by_order.setdefault(orders[a], inv[a]) == inv[a]
        tally.check("orbits", ok, f"{tag}: equal orders with different orbit invariants")


def _spectral_checks(tally: Tally, g, sp, cfg: VerifyConfig) -> None:
    S = "spectral"
    n, k = g.n, g.k
    tag = f"G({n},{k})"
    cp = spectral.char_poly(n, k)
    tally.check(S, cp.degree == n, f"{tag}: char poly degree")
    tally.check(S, cp.lambda_power == n - sp.t, f"{tag}: zero eigenvalue multiplicity")
    mat = spectral.canonical_matrix(g)
    d = math.gcd(n, k)
    rows_ok = all(sum(r) == 1 for r in mat.rows)
    cols_ok = all(sum(col) in (0, d) for col in zip(*mat.rows))
    tally.check(S, rows_ok and cols_ok, f"{tag}: canonical matrix row/column sums")
    expanded = spectral.expand(cp)
    oracle = spectral.oracle_char_poly(mat, cap=cfg.max_matrix_n)
    tally.check(S, expanded == oracle, lambda: f"{tag}: char poly {expanded} != oracle {oracle}")
    if n > cfg.max_minpoly_n:
        return
    mp, lowered = spectral.min_poly_with_lowered_power(n, k)
    omp = spectral.oracle_min_poly(mat, cap=cfg.max_minpoly_n)
    tally.check(S, mp == omp, lambda: f"{tag}: min poly {mp} != oracle {omp}")
    tally.check(S, spectral.annihilates(mp, mat), f"{tag}: min poly does not annihilate A")
    if lowered is not None:
        tally.check(S, not spectral.annihilates(lowered, mat), f"{tag}: lowered min poly annihilates A")
    _, rem = expanded.divmod_monic(mp)
    tally.check(S, not rem, f"{tag}: min poly does not divide char poly")


def check_cell(tally: Tally, n: int, k: int, cfg: VerifyConfig) -> None:
    g = digraph.build(n, k)
    sp = coprime_split(n, k)
    orders = [n // math.gcd(n, a) for a in range(n)]
    _digraph_checks(tally, g, orders, sp, cfg)
    _structure_checks(tally, g, orders, sp)
    _aut_checks(tally, g, orders, sp, cfg)
    if n <= cfg.max_matrix_n:
        _spectral_checks(tally, g, sp, cfg)


# -- global suites -----------------------------------------------------------------


def numtheory_checks(tally: Tally, cfg: VerifyConfig) -> None:
    S = "numtheory"
    top = cfg.max_theory_n
    for n in range(1, top + 1):
        divs = divisors(n)
        tally.check(S, sum(euler_phi(d) for d in divs) == n, f"phi divisor sum at {n}")
        if n > 1:
            tally.check(S, sum(numtheory.moebius(d) for d in divs) == 0, f"moebius sum at {n}")
    for n in range(2, min(top, cfg.max_n) + 1):
        divs = divisors(n)
        ok = True
        for k in range(1, n + 1):
            sp = coprime_split(n, k)
            ok &= sp.t * sp.w == n and math.gcd(sp.t, k) == 1 and math.gcd(sp.t, sp.w) == 1
            ok &= sp.t == max(dd for dd in divs if math.gcd(dd, k) == 1)
            h = numtheory.min_pow_divides(sp.w, k)
            ok &= k**h % sp.w == 0 and (h == 0 or k ** (h - 1) % sp.w != 0)
        tally.check(S, ok, f"coprime split / min power at n={n}")
    ok = all(
        numtheory.gcd_pow_minus_one(k, m, n) == math.gcd(k**m - 1, n)
        for k in range(1, 31) for m in range(1, 31) for n in range(1, 31)
    )
    tally.check(S, ok, "gcd(k^m - 1, n) shortcut")
    # the gcd analogue of the lcm identity fails: ord_11(2) = 10, ord_15(2) = 4
    witness = mult_order(2, math.gcd(11, 15)) != math.gcd(mult_order(2, 11), mult_order(2, 15))
    tally.check(S, witness, "gcd counterexample (k=2, d=11, r=15) no longer fails")


def bound_checks(tally: Tally, cfg: VerifyConfig) -> None:
    S = "bounds"
    for n in range(6, cfg.max_theory_n + 1, 2):
        ok = all(2 * structure.longest_cycle_length(n, k) <= n - 2 for k in range(1, n + 1))
        tally.check(S, ok, f"longest cycle bound at even n={n}")
    if cfg.max_theory_n >= 10:
        tally.check(S, 2 * structure.longest_cycle_length(10, 2) == 10 - 2, "equality at (10,2)")
    for m in (3, 4, 5):
        n = 2**m
        if n > cfg.max_theory_n:
            continue
        prof = structure.tree_profile(n, 6)
        tally.check(S, prof.h0 == m and 2 * prof.total_levels[-1] == n, f"equality at (2^{m},6)")


def backtrack_sample(count: int, cap: int = 60) -> list[tuple[int, int]]:
    """A fixed, spread-out list of ``(n, k)`` pairs with ``n <= cap``."""
    pairs = [(28, 2)]
    candidates = [(n, k) for n in range(9, cap + 1) for k in range(1, n + 1)]
    step = max(1, len(candidates) // max(count, 1))
    for i in range(0, len(candidates), step):
        if len(pairs) >= count:
            break
        if candidates[i] not in pairs:
            pairs.append(candidates[i])
    extra = [(cap, 1), (cap, cap), (48, 2), (54, 3), (50, 5), (36, 6), (40, 4), (45, 3)]
    for p in extra:
        if len(pairs) >= count:
            break
        if p[0] <= cap and p not in pairs:
            pairs.append(p)
    return pairs[:count]


def backtrack_checks(tally: Tally, cfg: VerifyConfig) -> None:
    S = "aut-backtrack"
    for n, k in backtrack_sample(cfg.backtracking_samples, cfg.backtrack_cap):
        g = digraph.build(n, k)
        got = aut.brute_aut_count(g, "backtrack", backtrack_cap=cfg.backtrack_cap)
        want = aut.aut_order(n, k).total_order
        tally.check(S, got == want, lambda: f"G({n},{k}): backtracking {got} != formula {want}")


def canon_checks(tally: Tally, cfg: VerifyConfig) -> None:
    S = "canon"
    if cfg.max_n >= 10:
        tally.check(S, canon.is_isomorphic(10, 2, 10, 8), "G(10,2) and G(10,8) should be isomorphic")
    for p in range(3, min(61, cfg.max_n) + 1):
        if not is_prime(p):
            continue
        certs = {k: canon.certificate(p, k) for k in range(2, p)}
        ok = all(
            canon.prime_iso_criterion(p, k1, k2) == (certs[k1] == certs[k2])
            for k1 in range(2, p) for k2 in range(k1 + 1, p)
        )
        tally.check(S, ok, f"prime criterion disagrees with certificates at n={p}")
    for n in range(2, min(cfg.max_matcher_n, cfg.max_n) + 1):
        graphs = [digraph.build(n, k) for k in range(1, n + 1)]
        certs = [canon.certificate(n, k) for k in range(1, n + 1)]
        ok = True
        bad = None
        for i in range(n):
            for j in range(i + 1, n):
                found = aut.find_isomorphism(graphs[i], graphs[j], cap=cfg.max_matcher_n) is not None
                if found != (certs[i] == certs[j]):
                    ok, bad = False, (i + 1, j + 1)
        tally.check(S, ok, lambda: f"n={n}: certificate verdict not confirmed by bijection search at k={bad}")


def root_count_checks(tally: Tally, cfg: VerifyConfig) -> None:
    """Roots of prescribed order in Z/m, counted by brute force."""
    S = "root-counts"
    for m in range(1, cfg.max_root_group + 1):
        by_order = defaultdict(list)
        for a in range(m):
            by_order[m // math.gcd(m, a)].append(a)
        ok = True
        for r1 in divisors(m):
            for r in divisors(r1):
                q = r1 // r
                hits = Counter(q * a % m for a in by_order[r1])
                want = structure.count_order_preimages(r, r1, m)
                ok &= sorted(hits) == by_order[r] and set(hits.values()) == {want}
        tally.check(S, ok, f"root counts in Z/{m}")


# -- driver ------------------------------------------------------------------------


def run(cfg: VerifyConfig) -> Tally:
    tally = Tally(cfg.fail_fast)
    with injected_fault(cfg.fault):
        try:
            numtheory_checks(tally, cfg)
            bound_checks(tally, cfg)
            for n in range(2, cfg.max_n + 1):
                for k in range(1, n + 1):
                    check_cell(tally, n, k, cfg)
            root_count_checks(tally, cfg)
            canon_checks(tally, cfg)
            backtrack_checks(tally, cfg)
        except StopVerification:
            pass
    return tally


def render(cfg: VerifyConfig, tally: Tally) -> str:
    settings = " ".join(
        f"{f.name}={getattr(cfg, f.name)}" for f in fields(cfg) if f.name != "fail_fast"
    )
    lines = [f"verify {settings}"]
    for suite in sorted(tally.checks):
        lines.append(f"  {suite:<14} checks={tally.checks[suite]:<8} failures={len(tally.failures.get(suite, []))}")
    for suite in sorted(tally.failures):
        msgs = tally.failures[suite]
        for msg in msgs[:MAX_FAILURES_SHOWN]:
            lines.append(f"FAIL {suite}: {msg}")
        if len(msgs) > MAX_FAILURES_SHOWN:
            lines.append(f"FAIL {suite}: ... {len(msgs) - MAX_FAILURES_SHOWN} more")
    if tally.stopped:
        lines.append("stopped at first failure (--fail-fast)")
    lines.append(f"checks: {tally.total_checks}, failures: {tally.total_failures}")
    return "\n".join(lines) + "\n"
