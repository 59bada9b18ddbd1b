import json

import pytest
from hypothesis import given, settings

from ringclass.fixtures import bracelet, fixture, fixture_names
from ringclass.oracle import check_pipeline
from ringclass.pipeline import decompose
from ringclass.sampler import mcb_count

from _randgraphs import graphs


def _only(name):
    (comp,) = decompose(fixture(name)).components
    return comp


def test_barallene():
    c = _only("barallene")
    (pi,) = c.classes.pi
    assert pi.rank == 2 and len(pi.sli) == 3 and len(pi.polyhedra) == 1
    assert sorted(pi.polyhedra[0].faces_sli) == [0, 1, 2]


def test_visfamex_prism():
    c = _only("visfamex-prism")
    cls = c.classes
    assert c.relevant_count == 9 and len(cls.sli) == 7 and len(cls.pi) == 5
    (big,) = [p for p in cls.pi if len(p.sli) > 1]
    assert big.rank == 2
    assert sorted(cls.sli[s].count for s in big.sli) == [1, 2, 2]
    (poly,) = big.polyhedra
    faces = [cls.sli[f] for f in poly.faces_sli]
    assert len(faces) == 5
    assert sorted(f.length for f in faces) == [3, 3, 6, 6, 6]
    assert poly.non_unique
    pairs = [cls.sli[s] for s in big.sli if cls.sli[s].count == 2]
    assert sorted(p.in_basis for p in pairs) == [False, True]


def test_cross_family_sli_merge():
    cls = _only("hex-prism").classes
    assert any(len(s.families) > 1 for s in cls.sli)


def test_adamantane_and_cube():
    (pi,) = _only("adamantane").classes.pi
    assert (pi.length, pi.rank, len(pi.sli)) == (6, 3, 4)
    (pi,) = _only("cube").classes.pi
    assert (pi.length, pi.rank, len(pi.sli)) == (4, 5, 6)


def test_square_pyramid_has_unique_mcb():
    d = decompose(fixture("square-pyramid"))
    assert mcb_count(d) == 1
    assert all(len(p.sli) == 1 for p in d.components[0].classes.pi)


def test_overlapping_diamonds_classes():
    cls = _only("overlapping-diamonds").classes
    assert sorted((p.length, [cls.sli[s].count for s in p.sli]) for p in cls.pi) == [
        (4, [1]),
        (5, [2]),
        (5, [2]),
    ]
    assert all(s.in_basis for s in cls.sli)


@pytest.mark.parametrize("k", range(2, 7))
def test_bracelet_large_class(k):
    cls = decompose(bracelet(k)).components[0].classes
    big = max(cls.sli, key=lambda s: s.length)
    assert big.length == 3 * k and big.count == 2**k


def test_twistane_polyhedra():
    (pi,) = _only("twistane").classes.pi
    assert pi.rank == 3 and len(pi.sli) == 5 and len(pi.polyhedra) == 2


@pytest.mark.parametrize("name", fixture_names())
def test_fixture_matches_oracle(name):
    result = check_pipeline(fixture(name), 40)
    assert all(result.values()), result


@settings(max_examples=120, deadline=None)
@given(graphs(max_nodes=9, max_edges=14))
def test_random_graph_matches_oracle(g):
    result = check_pipeline(g)
    assert all(result.values()), result


def test_json_report_is_serializable():
    d = decompose(bracelet(60))
    doc = json.loads(json.dumps(d.to_json()))
    assert doc["schema"] == 1
    assert doc["relevant_cycle_count"] == str(2**60 + 60)
    big = max(doc["components"][0]["sli_classes"], key=lambda s: s["length"])
    assert big["cycle_count"] == str(2**60)
    small = decompose(fixture("barallene")).to_json()
    assert small["relevant_cycle_count"] == 3


def test_largest_component_policy():
    from ringclass.graph import load_graph

    g = load_graph([(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 3)], 7)
    assert [c.nu for c in decompose(g).components] == [1, 1]
    (only,) = decompose(g, "largest").components
    assert only.component.nodes == (3, 4, 5, 6)
    with pytest.raises(ValueError):
        decompose(g, "biggest")
