import json

import pytest

from ringclass.io import EmptyGraph, ParseError, parse_bonds, parse_edgelist, parse_json, read_frames


def test_edgelist_with_header_and_comments():
    g = parse_edgelist("# square\nn 5\n0 1\n1 2  # inline\n\n2 3\n3 0\n")
    assert g.n == 5 and g.m == 4


def test_edgelist_infers_node_count():
    assert parse_edgelist("0 1\n1 4\n").n == 5


@pytest.mark.parametrize(
    "text",
    ["0 1 2\n", "a b\n", "0 1\nn 3\n", "n x\n", "0 0\n", "0 1\n1 0\n", "n 2\n0 5\n"],
)
def test_edgelist_errors(text):
    with pytest.raises(ParseError):
        parse_edgelist(text)


def test_empty_inputs():
    with pytest.raises(EmptyGraph):
        parse_edgelist("# nothing\n")
    with pytest.raises(EmptyGraph):
        parse_bonds("")
    assert parse_edgelist("n 3\n").m == 0


def test_json_graph():
    g = parse_json(json.dumps({"n": 4, "edges": [[0, 1], [1, 2], [2, 0]]}))
    assert g.n == 4 and g.m == 3


@pytest.mark.parametrize(
    "text",
    ["{", "[]", '{"n": 3}', '{"n": "3", "edges": []}', '{"edges": [[0, 1, 2]]}', '{"edges": [[0, true]]}'],
)
def test_json_errors(text):
    with pytest.raises(ParseError):
        parse_json(text)


def test_bond_frames_keep_count_and_order():
    text = "frame 10\n0 1\n1 2\n2 0\nframe 20\nframe 30\n0 1\n1 3\n"
    frames = parse_bonds(text)
    assert [t for t, _ in frames] == ["10", "20", "30"]
    assert [g.m for _, g in frames] == [3, 0, 2]
    assert {g.n for _, g in frames} == {4}


def test_bond_before_frame_is_an_error():
    with pytest.raises(ParseError):
        parse_bonds("0 1\nframe 0\n")


def test_read_frames_by_suffix(tmp_path):
    p = tmp_path / "g.json"
    p.write_text('{"edges": [[0, 1]]}')
    [(label, g)] = read_frames(p)
    assert label == "0" and g.m == 1
    q = tmp_path / "b.txt"
    q.write_text("frame a\n0 1\nframe b\n0 1\n1 2\n")
    assert len(read_frames(q, "bonds")) == 2
