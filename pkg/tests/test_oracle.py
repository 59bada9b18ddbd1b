from itertools import combinations

import pytest

from ringclass.fixtures import fixture
from ringclass.gf2 import rank
from ringclass.graph import load_graph, spanning_forest
from ringclass.oracle import (
    TooLarge,
    count_mcbs,
    enumerate_cycles,
    enumerate_mcbs,
    mask_to_cycle,
    oracle_report,
    pi_oracle,
    relevant_oracle,
    sli_oracle,
)


def K(n):
    return load_graph(list(combinations(range(n), 2)))


def _simple(g):
    return [m for m, simple in enumerate_cycles(g) if simple]


@pytest.mark.parametrize("n, cycles", [(3, 1), (4, 7), (5, 37)])
def test_simple_cycle_counts_of_complete_graphs(n, cycles):
    assert len(_simple(K(n))) == cycles


def _all_mcbs_by_brute_force(g):
    nu = spanning_forest(g).nu
    cyc = _simple(g)
    best, out = None, []
    for sub in combinations(cyc, nu):
        if rank(sub) != nu:
            continue
        cost = sum(c.bit_count() for c in sub)
        if best is None or cost < best:
            best, out = cost, []
        if cost == best:
            out.append(frozenset(sub))
    return out


@pytest.mark.parametrize("name", ["triangle", "barallene", "square-pyramid", "bracelet-2", "overlapping-diamonds"])
def test_mcb_enumeration_against_subsets(name):
    g = fixture(name)
    rel = relevant_oracle(enumerate_cycles(g))
    assert set(enumerate_mcbs(rel, spanning_forest(g).nu)) == set(_all_mcbs_by_brute_force(g))


def test_k4():
    rep = oracle_report(K(4))
    assert len(rep.cycles) == 7
    assert [c.bit_count() for c in rep.relevant] == [3, 3, 3, 3]
    assert rep.mcb_count == 4 and rep.mcb_cost == 9
    assert len(rep.pi) == 1 and len(rep.sli) == 4


def test_relevant_cycles_are_simple():
    g = fixture("twistane")
    for c in relevant_oracle(enumerate_cycles(g)):
        assert mask_to_cycle(g, c).circulation()


def test_bracelet_classes():
    rep = oracle_report(fixture("bracelet-3"))
    big = max(rep.sli, key=len)
    assert len(big) == 8 and len(rep.pi) == 4
    assert rep.mcb_count == 8


def test_cube():
    rep = oracle_report(fixture("cube"))
    assert rep.mcb_count == 6 and len(rep.pi) == 1
    assert count_mcbs(rep.relevant) == 6


def test_partitions_cover_relevant_set():
    rel = oracle_report(fixture("visfamex-prism"), 40).relevant
    for parts in (pi_oracle(rel), sli_oracle(rel)):
        assert sorted(c for p in parts for c in p) == sorted(rel)


def test_size_cap():
    with pytest.raises(TooLarge):
        enumerate_cycles(K(7))
