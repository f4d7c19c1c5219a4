"""Acceptance criteria, one test per criterion.

Each test records a PASS/FAIL line (with wall time) that is printed in the
terminal summary.  The brute-force side of every comparison is computed here
or by the package's oracles, never by the closed forms under test.
"""

import json
import math
import subprocess
import sys
import time
from collections import Counter
from contextlib import contextmanager

import pytest

from powerdigraph import aut, canon, cli, digraph, spectral, structure, verify
from powerdigraph.numtheory import divisors, is_prime, mult_order


@contextmanager
def criterion(log, number, title, limit=None):
    start = time.perf_counter()
    try:
        yield
    except BaseException as exc:
        elapsed = time.perf_counter() - start
        log.append(f"FAIL criterion {number}: {title} ({elapsed:.1f}s) {type(exc).__name__}: {exc}"[:300])
        raise
    elapsed = time.perf_counter() - start
    ok = limit is None or elapsed < limit
    budget = f", limit {limit}s" if limit is not None else ""
    log.append(f"{'PASS' if ok else 'FAIL'} criterion {number}: {title} ({elapsed:.1f}s{budget})")
    assert ok, f"criterion {number} took {elapsed:.1f}s, limit {limit}s"


def walk_cycles(succ):
    """Cycle lengths and cycle-vertex flags of a functional graph by colouring."""
    n = len(succ)
    state = [0] * n  # 0 new, 1 on current path, 2 done
    on_cycle = [False] * n
    lengths = []
    for s in range(n):
        path = []
        a = s
        while state[a] == 0:
            state[a] = 1
            path.append(a)
            a = succ[a]
        if state[a] == 1:
            cyc = path[path.index(a):]
            lengths.append(len(cyc))
            for c in cyc:
                on_cycle[c] = True
        for b in path:
            state[b] = 2
    return Counter(lengths), on_cycle


def heights_and_roots(succ, on_cycle):
    n = len(succ)
    height = [-1] * n
    root = [-1] * n
    for s in range(n):
        path = []
        a = s
        while height[a] < 0 and not on_cycle[a]:
            path.append(a)
            a = succ[a]
        if on_cycle[a]:
            height[a], root[a] = 0, a
        h, r = height[a], root[a]
        for b in reversed(path):
            h += 1
            height[b], root[b] = h, r
    return height, root


def test_criterion_1_g28_2(acceptance_log, capsys):
    with criterion(acceptance_log, 1, "analyze 28 2 reproduces the G(28,2) picture", limit=1.0):
        assert cli.main(["analyze", "28", "2", "--json"]) == 0
        d = json.loads(capsys.readouterr().out)
        assert (d["split"]["t"], d["split"]["w"], d["trees"]["h0"]) == (7, 4, 2)
        comps = Counter({(c["size"]): c["count"] for c in d["components"]})
        assert comps == Counter({4: 1, 12: 2})
        lengths = sorted(r["length"] for r in d["cycles"]["per_order"] for _ in range(r["count"]))
        assert lengths == [1, 3, 3]
        assert d["indegree_zero"] == 14
        assert d["trees"]["per_tree_levels"] == [1, 1, 2]


def test_criterion_2_g40_4(acceptance_log):
    with criterion(acceptance_log, 2, "tree profile of G(40,4)", limit=1.0):
        prof = structure.tree_profile(40, 4)
        assert prof.h0 == 2
        assert list(prof.per_tree_levels) == [1, 3, 4]
        assert structure.indegree_zero_in_level(40, 4, 1) == 2
        # against the explicit tree at 0
        g = digraph.build(40, 4)
        _, on_cycle = walk_cycles(g.succ)
        height, root = heights_and_roots(g.succ, on_cycle)
        levels = Counter(height[a] for a in range(40) if root[a] == 0)
        assert [levels[m] for m in range(3)] == [1, 3, 4]
        childless = [a for a in range(40) if root[a] == 0 and height[a] == 1 and g.indegree[a] == 0]
        assert len(childless) == 2


def test_criterion_3_spectral_equivalence(acceptance_log):
    with criterion(acceptance_log, 3, "char poly n<=64, min poly n<=40 against matrix oracles", limit=300):
        for n in range(2, 65):
            for k in range(1, n + 1):
                g = digraph.build(n, k)
                mat = spectral.natural_matrix(g)
                want = spectral.oracle_char_poly(mat)
                assert spectral.expand(spectral.char_poly(n, k)) == want, (n, k)
                if n > 40:
                    continue
                full, lowered = spectral.min_poly_with_lowered_power(n, k)
                assert full == spectral.expand(spectral.min_poly(n, k))
                assert full == spectral.oracle_min_poly(mat), (n, k)
                assert spectral.annihilates(full, mat)
                h0 = spectral.min_poly(n, k).lambda_power
                assert (lowered is None) == (h0 == 0)
                if lowered is not None:
                    assert not spectral.annihilates(lowered, mat), (n, k)


def test_criterion_4_cycle_counts(acceptance_log):
    with criterion(acceptance_log, 4, "Moebius cycle counts vs enumeration, n<=300", limit=120):
        for n in range(2, 301):
            for k in range(1, n + 1):
                counts, _ = walk_cycles([k * a % n for a in range(n)])
                ell = structure.longest_cycle_length(n, k)
                assert ell == max(counts)
                for r in range(1, ell + 1):
                    assert structure.cycles_of_length(n, k, r) == counts.get(r, 0), (n, k, r)


def test_criterion_5_tree_theory(acceptance_log):
    with criterion(acceptance_log, 5, "levels, heights, tree codes n<=300; lcm identity; gcd witness"):
        for n in range(2, 301):
            orders = [n // math.gcd(n, a) for a in range(n)]
            for k in range(1, n + 1):
                g = digraph.build(n, k)
                _, on_cycle = walk_cycles(g.succ)
                height, root = heights_and_roots(g.succ, on_cycle)
                prof = structure.tree_profile(n, k)
                total = Counter(height)
                at_id = Counter(height[a] for a in range(n) if root[a] == 0)
                top = max(height)
                assert list(prof.total_levels) == [total[m] for m in range(top + 1)], (n, k)
                assert list(prof.per_tree_levels) == [at_id[m] for m in range(top + 1)], (n, k)
                for a in range(n):
                    assert structure.vertex_height(n, k, a) == height[a], (n, k, a)
                    assert structure.level_membership(n, k, a) == (orders[root[a]], height[a]), (n, k, a)
                aut.common_tree_code(g)  # raises if two roots carry different trees
        # every t <= 300 occurs as the coprime part of some G(n, k) with n <= 300
        for t in range(1, 301):
            divs = divisors(t)
            for k in range(1, t + 1):
                if math.gcd(k, t) != 1:
                    continue
                ell = {d: mult_order(k, d) for d in divs}
                for d in divs:
                    for r in divs:
                        assert ell[math.lcm(d, r)] == math.lcm(ell[d], ell[r]), (t, k, d, r)
        # the gcd analogue is false: required failure witness
        assert mult_order(2, math.gcd(11, 15)) == 1
        assert math.gcd(mult_order(2, 11), mult_order(2, 15)) == 2


def test_criterion_6_automorphism_orders(acceptance_log):
    with criterion(acceptance_log, 6, "wreath formula vs exhaustive/backtracking; prime-k; k=1, k=n"):
        for n in range(2, 9):
            for k in range(1, n + 1):
                g = digraph.build(n, k)
                assert aut.aut_order(n, k).total_order == aut.brute_aut_count(g, "exhaustive"), (n, k)
        sample = verify.backtrack_sample(50, 60)
        assert len(sample) >= 50 and (28, 2) in sample
        for n, k in sample:
            g = digraph.build(n, k)
            assert aut.aut_order(n, k).total_order == aut.brute_aut_count(g, "backtrack"), (n, k)
        assert aut.brute_aut_count(digraph.build(28, 2), "backtrack") == 2304
        for p in (2, 3, 5):
            for n in range(p, 301, p):
                g = digraph.build(n, p)
                assert aut.prime_k_tree_aut_order(n, p) == aut.tree_aut_order(g, 0), (n, p)
        for n in range(2, 301):
            assert aut.aut_order(n, 1).total_order == math.factorial(n)
            assert aut.aut_order(n, n).total_order == math.factorial(n - 1)


def test_criterion_7_isomorphism(acceptance_log):
    with criterion(acceptance_log, 7, "isomorphism certificates, prime criterion, bijection search n<=40"):
        assert canon.is_isomorphic(10, 2, 10, 8)
        for p in range(3, 62):
            if not is_prime(p):
                continue
            certs = {k: canon.certificate(p, k) for k in range(2, p)}
            for k1 in range(2, p):
                for k2 in range(k1 + 1, p):
                    assert canon.prime_iso_criterion(p, k1, k2) == (certs[k1] == certs[k2]), (p, k1, k2)
        for n in range(2, 41):
            graphs = [digraph.build(n, k) for k in range(1, n + 1)]
            certs = [canon.certificate(n, k) for k in range(1, n + 1)]
            for i in range(n):
                for j in range(i + 1, n):
                    perm = aut.find_isomorphism(graphs[i], graphs[j], cap=40)
                    assert (perm is not None) == (certs[i] == certs[j]), (n, i + 1, j + 1)


def test_criterion_8_bounds(acceptance_log):
    with criterion(acceptance_log, 8, "top level >= n/2; longest cycle <= (n-2)/2"):
        for n in range(2, 501):
            for k in range(1, n + 1):
                if math.gcd(n, k) != 1:
                    assert 2 * structure.tree_profile(n, k).total_levels[-1] >= n, (n, k)
        for m in (3, 4, 5):
            prof = structure.tree_profile(2**m, 6)
            assert 2 * prof.total_levels[prof.h0] == 2**m
        for n in range(6, 501, 2):
            for k in range(1, n + 1):
                assert 2 * structure.longest_cycle_length(n, k) <= n - 2, (n, k)
        assert 2 * structure.longest_cycle_length(10, 2) == 10 - 2
        assert max(walk_cycles(digraph.build(10, 2).succ)[0]) == 4


def test_criterion_9_orbits(acceptance_log):
    with criterion(acceptance_log, 9, "equal vertex order implies equal orbit invariant"):
        for n in range(2, 201):
            orders = [n // math.gcd(n, a) for a in range(n)]
            for k in range(1, n + 1):
                inv = aut.orbit_invariants(digraph.build(n, k))
                seen = {}
                for a in range(n):
                    assert seen.setdefault(orders[a], inv[a]) == inv[a], (n, k, a)
        for n in range(2, 9):
            orders = [n // math.gcd(n, a) for a in range(n)]
            for k in range(1, n + 1):
                g = digraph.build(n, k)
                orbit = aut.exhaustive_orbits(g)
                inv = aut.orbit_invariants(g)
                for a in range(n):
                    for b in range(n):
                        if orders[a] == orders[b]:
                            assert orbit[a] == orbit[b], (n, k, a, b)
                        if orbit[a] == orbit[b]:
                            assert inv[a] == inv[b], (n, k, a, b)


@pytest.mark.slow
def test_criterion_10_verify_harness(acceptance_log):
    with criterion(acceptance_log, 10, "pdg verify twice: identical bytes, exit 0", limit=600):
        runs = [
            subprocess.run([sys.executable, "-m", "powerdigraph.cli", "verify"], capture_output=True)
            for _ in range(2)
        ]
        assert [r.returncode for r in runs] == [0, 0], runs[0].stdout.decode()[-2000:]
        assert runs[0].stdout == runs[1].stdout
        assert runs[0].stdout.decode().rstrip().endswith("failures: 0")
