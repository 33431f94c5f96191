import pytest

from mesh_dispatch.network import Topology, complete_topology, path_topology


def test_init():
    t = Topology(3, frozenset([(2, 1), (2, 3)]))
    assert t.edges == frozenset([(1, 2), (2, 3)])
    assert t.sorted_edges() == [(1, 2), (2, 3)]

    with pytest.raises(ValueError) as excinfo:
        Topology(0, frozenset())
    assert str(excinfo.value) == 'Topology needs at least one node'

    with pytest.raises(ValueError) as excinfo:
        Topology(3, frozenset([(2, 2)]))
    assert str(excinfo.value) == 'Self-loops are not allowed'

    with pytest.raises(ValueError) as excinfo:
        Topology(3, frozenset([(1, 4)]))
    assert str(excinfo.value) == 'Node id out of range'


def test_from_edges():
    t = Topology.from_edges(4, [(1, 2), (3, 2), (4, 3)])
    assert t.sorted_edges() == [(1, 2), (2, 3), (3, 4)]

    with pytest.raises(ValueError) as excinfo:
        Topology.from_edges(3, [(1, 2), (2, 1)])
    assert str(excinfo.value) == 'Duplicate edges are not allowed'


def test_parse():
    text = """
    # ring
    1 2
    2-3
    3,4; 4 1
    """
    t = Topology.parse(4, text)
    assert t.sorted_edges() == [(1, 2), (1, 4), (2, 3), (3, 4)]
    assert Topology.parse(4, t.to_text()) == t
    assert t.to_text() == "1-2\n1-4\n2-3\n3-4"

    with pytest.raises(ValueError) as excinfo:
        Topology.parse(3, "1 2\nfoo")
    assert str(excinfo.value) == 'Can\'t parse edge \'foo\' (entry 2)'


def test_repr():
    assert repr(path_topology(3)) == "<Topology (nodes: 3, edges: 2)>"


def test_degrees_and_connectivity():
    assert path_topology(4).degrees() == [1, 2, 2, 1]
    assert complete_topology(4).degrees() == [3, 3, 3, 3]
    assert path_topology(4).is_connected()
    assert Topology(1, frozenset()).is_connected()
    assert not Topology.from_edges(4, [(1, 2), (3, 4)]).is_connected()


def test_graph():
    g = path_topology(3).graph()
    assert sorted(g.nodes()) == [1, 2, 3]
    assert sorted(g.edges()) == [(1, 2), (2, 3)]


def test_ieee14_degrees(ieee14):
    assert ieee14.topology.degrees() == \
        [2, 4, 2, 5, 4, 4, 3, 1, 4, 2, 2, 2, 3, 2]
