import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from powerdigraph import digraph, structure
from powerdigraph.errors import DomainError
from powerdigraph.numtheory import divisors, euler_phi

nk = st.integers(min_value=2, max_value=150).flatmap(
    lambda n: st.tuples(st.just(n), st.integers(min_value=1, max_value=n))
)


def test_cycle_structure_examples():
    cs = structure.cycle_structure(28, 2)
    assert [tuple(r) for r in cs.per_order] == [(1, 1, 1), (7, 3, 2)]
    assert cs.total_cycles == 3
    cs = structure.cycle_structure(10, 2)
    assert [tuple(r) for r in cs.per_order] == [(1, 1, 1), (5, 4, 1)]
    assert cs.total_cycles == 2
    cs = structure.cycle_structure(12, 1)
    assert [tuple(r) for r in cs.per_order] == [(d, 1, euler_phi(d)) for d in divisors(12)]
    assert cs.total_cycles == 12


@pytest.mark.parametrize("r, want", [(3, 2), (1, 1), (2, 0)])
def test_cycles_of_length(r, want):
    assert structure.cycles_of_length(28, 2, r) == want


def test_tree_profile_examples():
    p = structure.tree_profile(28, 2)
    assert (p.h0, p.per_tree_levels, p.total_levels) == (2, (1, 1, 2), (7, 7, 14))
    p = structure.tree_profile(40, 4)
    assert (p.h0, p.per_tree_levels) == (2, (1, 3, 4))
    p = structure.tree_profile(9, 1)
    assert (p.h0, p.per_tree_levels) == (0, (1,))


@pytest.mark.parametrize("n, k, a, want", [(28, 2, 0, 0), (28, 2, 1, 2), (40, 4, 5, 2)])
def test_vertex_height(n, k, a, want):
    assert structure.vertex_height(n, k, a) == want


@pytest.mark.parametrize("a, want", [(14, (1, 1)), (0, (1, 0)), (2, (7, 1))])
def test_level_membership(a, want):
    assert structure.level_membership(28, 2, a) == want


@pytest.mark.parametrize("n, k, want", [(28, 2, 14), (9, 1, 0), (6, 6, 5)])
def test_indegree_zero_formula(n, k, want):
    assert structure.indegree_zero_count_formula(n, k) == want


@pytest.mark.parametrize("n, k, m, want", [(28, 2, 1, 0), (16, 2, 1, 0), (40, 4, 1, 2)])
def test_indegree_zero_in_level(n, k, m, want):
    assert structure.indegree_zero_in_level(n, k, m) == want


def test_indegree_zero_in_level_range():
    with pytest.raises(DomainError):
        structure.indegree_zero_in_level(28, 2, 2)


def test_predicates():
    assert structure.predicates(8, 2).connected
    p = structure.predicates(28, 2)
    assert not p.connected and not p.regular
    p = structure.predicates(9, 1)
    assert p.regular and p.vertex_transitive and p.arc_transitive
    # k = n + 1 acts as the identity
    assert structure.predicates(9, 10).vertex_transitive


@pytest.mark.parametrize("n, k, want", [(28, 2, 3), (10, 2, 4), (17, 1, 1)])
def test_longest_cycle(n, k, want):
    assert structure.longest_cycle_length(n, k) == want


@pytest.mark.parametrize("r, r1, m, want", [(2, 8, 8, 4), (6, 6, 12, 1), (1, 5, 10, 4)])
def test_count_order_preimages(r, r1, m, want):
    assert structure.count_order_preimages(r, r1, m) == want


def test_count_order_preimages_domain():
    with pytest.raises(DomainError):
        structure.count_order_preimages(3, 4, 8)


@given(nk)
def test_cycle_counts_match_enumeration(pair):
    n, k = pair
    brute = dict(digraph.brute_cycle_length_multiset(digraph.build(n, k)))
    cs = structure.cycle_structure(n, k)
    assert dict(cs.by_length) == brute
    for r in range(1, cs.longest + 1):
        assert structure.cycles_of_length(n, k, r) == brute.get(r, 0)


@given(nk)
def test_levels_and_heights_match_decomposition(pair):
    n, k = pair
    g = digraph.build(n, k)
    dec = g.decomposition
    prof = structure.tree_profile(n, k)
    total, at_id = digraph.brute_level_sizes(g)
    assert list(prof.total_levels) == total
    assert list(prof.per_tree_levels) == at_id
    assert prof.tree_size == sum(at_id)
    for a in range(n):
        assert structure.vertex_height(n, k, a) == dec.height[a]
        order_of_root = n // math.gcd(n, dec.root[a])
        assert structure.level_membership(n, k, a) == (order_of_root, dec.height[a])


@given(nk)
def test_counting_bounds(pair):
    n, k = pair
    g = digraph.build(n, k)
    d = math.gcd(n, k)
    assert structure.indegree_zero_count_formula(n, k) == digraph.indegree_zero_count(g)
    prof = structure.tree_profile(n, k)
    if d != 1:
        assert 2 * prof.total_levels[-1] >= n
    if n % 2 == 0 and n >= 6:
        assert 2 * structure.longest_cycle_length(n, k) <= n - 2


@given(st.integers(min_value=1, max_value=120))
def test_root_counts_in_cyclic_group(m):
    for r1 in divisors(m):
        for r in divisors(r1):
            q = r1 // r
            hits = {}
            for a in range(m):
                if m // math.gcd(m, a) == r1:
                    b = q * a % m
                    hits[b] = hits.get(b, 0) + 1
            assert set(hits.values()) == {structure.count_order_preimages(r, r1, m)}
            assert len(hits) == euler_phi(r)
