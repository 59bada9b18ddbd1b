import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ringclass.cycles import EdgeCycle, edges_to_vec
from ringclass.fixtures import fixture, fixture_names
from ringclass.gf2 import rank
from ringclass.graph import load_graph
from ringclass.intersections import (
    Disjoint,
    FormatViolation,
    McbExpander,
    MultiPathPair,
    NotApplicable,
    NotConverged,
    build_dual_graph,
    decompose_intersection,
    intersection_paths,
    postprocess_mcb,
    single_path_exchange,
)
from ringclass.pipeline import decompose
from ringclass.sampler import sample_mcb

from _randgraphs import graphs

L = EdgeCycle.from_loop


def _identities(d, c1, c2):
    l1, l2 = sorted((len(c1), len(c2)))
    path_len = sum(len(p) - 1 for p in d.paths)
    assert path_len + sum(d.q1_lengths) == l1
    assert path_len + sum(d.q2_lengths) == l2
    assert d.q1_lengths[:-1] == d.q2_lengths[:-1]
    assert all(2 * q <= l1 for q in d.q1_lengths[:-1])
    assert d.q2_lengths[-1] - d.q1_lengths[-1] == l2 - l1
    assert 2 * d.q1_lengths[-1] >= l1 and 2 * d.q2_lengths[-1] >= l2
    for i, p in enumerate(d.paths):
        assert d.q1[i][0] == p[-1] == d.q2[i][0]
        nxt = d.paths[(i + 1) % d.k][0]
        assert d.q1[i][-1] == nxt == d.q2[i][-1]


def test_twisted_pair_is_rejected():
    with pytest.raises(FormatViolation) as info:
        decompose_intersection(L([0, 1, 2, 3, 4, 5]), L([0, 1, 6, 4, 3, 7]))
    assert info.value.equation == "orientation"


def test_three_path_theorem_example():
    g = fixture("intersect-thm")
    c1 = L([0, 1, 2, 3, 4, 5, 6, 7, 8] + list(range(17, 10, -1)))
    c2 = L([0, 1, 9, 3, 4, 5, 10, 7, 8] + list(range(24, 17, -1)))
    assert all(g.has_edge(*e) for c in (c1, c2) for e in c.edges)
    d = decompose_intersection(c1, c2)
    assert d.paths == [[0, 1], [3, 4, 5], [7, 8]]
    assert d.q1_lengths == d.q2_lengths == [2, 2, 8]
    _identities(d, c1, c2)


def test_single_node_and_disjoint():
    d = decompose_intersection(L([0, 1, 2]), L([0, 3, 4, 5]))
    assert d.paths == [[0]] and d.q1_lengths == [3] and d.q2_lengths == [4]
    assert not d.swapped
    assert decompose_intersection(L([0, 3, 4, 5]), L([0, 1, 2])).swapped
    with pytest.raises(Disjoint):
        decompose_intersection(L([0, 1, 2]), L([3, 4, 5]))


def test_shared_edge():
    d = decompose_intersection(L([0, 1, 2, 3]), L([0, 1, 4, 5, 6]))
    assert d.paths == [[0, 1]] or d.paths == [[1, 0]]
    assert d.q1_lengths == [3] and d.q2_lengths == [4]


@settings(max_examples=50, deadline=None)
@given(graphs(max_nodes=10, max_edges=18), st.integers(0, 2**32))
def test_sampled_mcb_pairs_satisfy_identities(g, seed):
    dec = decompose(g)
    for cycles in sample_mcb(dec, seed=seed, steps=20):
        for i in range(len(cycles)):
            for j in range(i + 1, len(cycles)):
                if intersection_paths(cycles[i], cycles[j]):
                    _identities(decompose_intersection(cycles[i], cycles[j]), cycles[i], cycles[j])


def test_degenerate_exchange_on_k24():
    g = load_graph([(a, b) for a in (0, 1) for b in (2, 3, 4, 5)], 6)
    mcb = [L([0, 2, 1, 3]), L([0, 4, 1, 5]), L([0, 2, 1, 4])]
    assert intersection_paths(mcb[0], mcb[1]) == 2
    new, cand = single_path_exchange(mcb, 1, 0)
    assert len(cand) == 4 and intersection_paths(cand, mcb[0]) == 1
    assert all(g.has_edge(*e) for e in cand.edges)
    with pytest.raises(NotApplicable):
        single_path_exchange(new, 0, 2)


def test_expander():
    cyc = [L([0, 1, 2]), L([0, 2, 3])]
    ex = McbExpander(cyc)
    assert ex.expand(L([0, 1, 2, 3])) == 0b11
    assert ex.expand(L([0, 1, 4])) is None
    with pytest.raises(ValueError):
        McbExpander(cyc + [L([0, 1, 2, 3])])


def _is_mcb(comp_cycles, cost, nu):
    edges = sorted({e for c in comp_cycles for e in c.edges})
    idx = {e: i for i, e in enumerate(edges)}
    vecs = [sum(1 << idx[e] for e in c.edges) for c in comp_cycles]
    return rank(vecs) == nu and sum(len(c) for c in comp_cycles) == cost


@pytest.mark.parametrize("name", fixture_names())
def test_postprocess_fixtures(name):
    dec = decompose(fixture(name))
    for comp, cycles in zip(dec.components, sample_mcb(dec, seed=3)):
        new, it = postprocess_mcb(cycles, 3)
        assert it <= 20
        assert _is_mcb(new, comp.mcb.cost, comp.nu)
        dual = build_dual_graph(new)
        assert len(dual.weights) == comp.nu


@settings(max_examples=40, deadline=None)
@given(graphs(max_nodes=10, max_edges=18), st.integers(0, 2**32))
def test_postprocess_keeps_a_minimum_basis(g, seed):
    dec = decompose(g)
    for comp, cycles in zip(dec.components, sample_mcb(dec, seed=seed, steps=20)):
        new, _ = postprocess_mcb(cycles, seed)
        assert _is_mcb(new, comp.mcb.cost, comp.nu)
        assert all(intersection_paths(new[i], new[j]) <= 1 for i in range(len(new)) for j in range(i))


def test_postprocess_budget():
    mcb = [L([0, 2, 1, 3]), L([0, 4, 1, 5]), L([0, 2, 1, 4])]
    with pytest.raises(NotConverged):
        postprocess_mcb(mcb, 0, n_max=0)


def test_dual_graph_of_two_hexagons():
    (cycles,) = sample_mcb(decompose(fixture("fcb-hexagons")), seed=0)
    dual = build_dual_graph(cycles)
    assert dual.weights == [6, 6] and dual.edges == [(0, 1, 1)]
    dot = dual.to_dot()
    assert 'c0 [label="c0 (len=6)"]' in dot and 'c0 -- c1 [label="1"]' in dot
    doc = dual.to_json()
    assert doc["edges"] == [{"source": 0, "target": 1, "length": 1}]
    with pytest.raises(MultiPathPair):
        build_dual_graph([L([0, 2, 1, 3]), L([0, 4, 1, 5])])
