import networkx as nx
import pytest

from planepaint import catalog, derive
from planepaint.derive import DerivedGraph, MultiAdjacencyWarning
from planepaint.errors import UnknownSpec


def nxg(H: DerivedGraph) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(range(H.n))
    g.add_edges_from(H.edges)
    return g


def G(name):
    return catalog.get(name).graph


def test_vertex_graphs():
    H = derive.vertex_graph(G("K4"))
    assert (H.n, H.m) == (4, 6)
    H = derive.vertex_graph(G("Q3"))
    assert (H.n, H.m) == (8, 12) and H.is_bipartite()
    assert (derive.vertex_graph(G("W5")).n, derive.vertex_graph(G("W5")).m) == (6, 10)


def test_face_graphs():
    H = derive.face_graph(G("K4"))
    assert nx.is_isomorphic(nxg(H), nx.complete_graph(4))
    assert nx.is_isomorphic(nxg(derive.face_graph(G("Q3"))), nx.octahedral_graph())
    with pytest.warns(MultiAdjacencyWarning):
        H = derive.face_graph(G("K3"))
    assert (H.n, H.m) == (2, 1)


def test_line_graphs():
    H = derive.line_graph(G("K3"))
    assert (H.n, H.m) == (3, 3)
    H = derive.line_graph(G("K4"))
    assert (H.n, H.m) == (6, 12) and set(H.degrees()) == {4}


def test_medial_graphs():
    H = derive.medial_graph(G("K4"))
    assert nx.is_isomorphic(nxg(H), nx.octahedral_graph())
    cubocta = derive.medial_graph(G("Q3"))
    assert (cubocta.n, cubocta.m) == (12, 24) and set(cubocta.degrees()) == {4}
    K3 = derive.medial_graph(G("K3"))
    assert (K3.n, K3.m) == (3, 3)


def test_incidence_graphs():
    for e in catalog.catalog():
        g = e.graph
        B = derive.incidence_bipartite(g, "ve")
        assert B.m == 2 * g.n_edges
        assert all(B.degrees()[B.index_of(el)] == 2 for el in g.elements("edge"))
        B = derive.incidence_bipartite(g, "ef")
        assert all(B.degrees()[B.index_of(el)] == 2 for el in g.elements("edge"))
        B = derive.incidence_bipartite(g, "vf")
        for f, el in enumerate(g.elements("face")):
            assert B.degrees()[B.index_of(el)] == len(g.faces[f])
    assert derive.incidence_bipartite(G("K4"), "vf").m == 12
    assert derive.incidence_bipartite(G("Q3"), "ef").m == 24
    with pytest.raises(UnknownSpec):
        derive.incidence_bipartite(G("K4"), "vv")


@pytest.mark.parametrize("name, spec, n, m", [
    ("K4", "Gbar_vef", 14, 60),
    ("K4", "Ḡ_vef", 14, 60),
    ("K3", "G_vf", 5, 10),
    ("Q3", "Gbar_ve", 20, 60),
])
def test_composite_sizes(name, spec, n, m):
    H = derive.combine(G(name), spec)
    assert (H.n, H.m) == (n, m)


def test_unknown_spec():
    with pytest.raises(UnknownSpec):
        derive.combine(G("K4"), "G_xyz")


def test_composite_vertex_order():
    H = derive.combine(G("K4"), "Gbar_vef")
    kinds = [el.kind for el in H.vertices]
    assert kinds == ["vertex"] * 4 + ["edge"] * 6 + ["face"] * 4
    assert [el.index for el in H.vertices[4:10]] == list(range(6))


@pytest.mark.parametrize("entry", catalog.catalog(), ids=lambda e: e.name)
def test_parts_partition_edges(entry):
    for spec in derive.COMPOSITES:
        H = derive.combine(entry.graph, spec)
        idx = sorted(i for p in H.parts.values() for i in p)
        assert idx == list(range(H.m))
        assert len(set(H.edges)) == H.m
        assert all(u < v for u, v in H.edges)


@pytest.mark.parametrize("entry", catalog.catalog(), ids=lambda e: e.name)
def test_medial_is_facial_line_graph(entry):
    g = entry.graph
    H = derive.medial_graph(g)
    L = derive.line_graph(g)
    faces_of = [set(p) for p in g.edge_face]
    expected = {(a, b) for a, b in L.edges if faces_of[a] & faces_of[b]}
    assert set(H.edges) == expected
    if min(g.degree(v) for v in range(g.n_vertices)) >= 3:
        assert set(H.degrees()) == {4}


@pytest.mark.parametrize("entry", [e for e in catalog.catalog()
                                   if "triangulation" in e.tags and e.graph.n_vertices >= 4],
                         ids=lambda e: e.name)
def test_triangulation_duals_are_cubic_and_bridgeless(entry):
    D = derive.face_graph(entry.graph)
    assert set(D.degrees()) == {3}
    assert nx.edge_connectivity(nxg(D)) >= 2


def test_medial_of_tetrahedron_matches_line_graph_of_dual():
    for name in ("K4", "octahedron"):
        g = G(name)
        M = derive.medial_graph(g)
        dual = nx.line_graph(nxg(derive.face_graph(g)))
        assert nx.is_isomorphic(nxg(M), dual)


def test_part_subgraph_and_induced():
    H = derive.combine(G("K4"), "G_vf")
    sub = H.part_subgraph(["G_v", "B_vf"])
    assert sub.n == H.n and sub.m == 6 + 12
    assert list(sub.parts) == ["G_v+B_vf"]
    ind = H.induced([0, 1, 2, 3])
    assert ind.m == 6


def test_to_json_shape():
    data = derive.combine(G("K3"), "G_vf").to_json()
    assert data["vertices"][:3] == ["v0", "v1", "v2"]
    assert set(data["parts"]) == {"G_v", "G_f", "B_vf"}
    assert len(data["edges"]) == 10


def test_from_edges():
    H = DerivedGraph.from_edges(4, [(1, 0), (1, 2), (2, 3), (3, 0), (0, 1)])
    assert H.m == 4 and H.edges[0] == (0, 1)
    with pytest.raises(ValueError):
        DerivedGraph.from_edges(2, [(1, 1)])
