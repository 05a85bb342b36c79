import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from planepaint import catalog
from planepaint.embedding import (
    Element,
    from_json,
    from_rotation_system,
    incidences,
    read_planar_code,
    rotation_from_faces,
    write_planar_code,
)
from planepaint.errors import (
    Disconnected,
    EulerViolation,
    FaceNotSimpleCycle,
    NotSimple,
    PlanarCodeError,
)

# standard cube embedding: outer square 0-1-2-3, inner square 4-5-6-7
Q3_ROT = [[1, 4, 3], [2, 5, 0], [3, 6, 1], [0, 7, 2], [0, 5, 7], [1, 6, 4], [2, 7, 5], [3, 4, 6]]


def test_triangle_has_two_triangular_faces():
    G = from_rotation_system(3, [[1, 2], [2, 0], [0, 1]])
    assert G.n_faces == 2
    assert all(len(f) == 3 for f in G.faces)
    assert G.edges == ((0, 1), (0, 2), (1, 2))


def test_cube_has_six_quadrilaterals():
    G = from_rotation_system(8, Q3_ROT)
    assert (G.n_vertices, G.n_edges, G.n_faces) == (8, 12, 6)
    assert sorted(len(f) for f in G.faces) == [4] * 6


def test_path_is_rejected():
    with pytest.raises(FaceNotSimpleCycle):
        from_rotation_system(3, [[1], [0, 2], [1]])


def test_bridge_between_triangles_rejected():
    rot = [[1, 2], [2, 0], [0, 1, 3], [4, 5, 2], [5, 3], [3, 4]]
    with pytest.raises(FaceNotSimpleCycle):
        from_rotation_system(6, rot)


@pytest.mark.parametrize("rot, err", [
    ([[0, 1], [0]], NotSimple),
    ([[1, 1], [0]], NotSimple),
    ([[1], []], NotSimple),
    ([[1, 2], [2, 0], [0, 1], [4, 5], [5, 3], [3, 4]], Disconnected),
])
def test_malformed_rotations(rot, err):
    with pytest.raises(err):
        from_rotation_system(len(rot), rot)


def test_non_spherical_rotation_fails_euler():
    # K4 with one rotation reversed traces a torus-like face structure
    rot = [[1, 2, 3], [0, 3, 2], [0, 1, 3], [0, 2, 1]]
    rot[0] = rot[0][::-1]
    with pytest.raises((EulerViolation, FaceNotSimpleCycle)):
        from_rotation_system(4, rot)


def test_incidence_counts():
    K3 = catalog.get("K3").graph
    assert len(incidences(K3)["vf"]) == 6
    assert all(len(pair) == 2 for pair in K3.edge_face)
    assert len(incidences(catalog.get("Q3").graph)["vf"]) == 24
    K4 = catalog.get("K4").graph
    assert len(incidences(K4)["ef"]) == 12
    assert len(incidences(K4)["ve"]) == 12


def test_face_order_is_deterministic():
    G = from_rotation_system(8, Q3_ROT)
    # first face starts from the smallest directed edge (0, 1)
    assert G.faces[0][:2] == (0, 1)
    again = from_rotation_system(8, Q3_ROT)
    assert again.faces == G.faces


def test_element_labels_round_trip():
    for kind in ("vertex", "edge", "face"):
        el = Element(kind, 7)
        assert Element.parse(el.label) == el
    assert Element("vertex", 3).sort_key() < Element("edge", 0).sort_key() < Element("face", 0).sort_key()
    with pytest.raises(ValueError):
        Element("corner", 0)


def test_json_round_trip():
    G = catalog.get("octahedron").graph
    H = from_json(json.loads(json.dumps(G.to_json())))
    assert H.faces == G.faces
    with pytest.raises(NotSimple):
        from_json({"rotation": []})


def test_planar_code_round_trip():
    graphs = [catalog.get(n).graph for n in ("K4", "Q3", "icosahedron")]
    for header in (True, False):
        decoded = read_planar_code(write_planar_code(graphs, header=header))
        assert [from_rotation_system(len(r), r).faces for r in decoded] == [G.faces for G in graphs]


def test_planar_code_known_bytes():
    # K3 written by hand: 3 vertices, each lists the other two (1-based), 0 terminates
    data = b">>planar_code<<" + bytes([3, 2, 3, 0, 3, 1, 0, 1, 2, 0])
    assert read_planar_code(data) == [[[1, 2], [2, 0], [0, 1]]]


@pytest.mark.parametrize("data", [bytes([0, 1]), bytes([3, 2, 3, 0, 3]), bytes([2, 5, 0, 1, 0])])
def test_planar_code_rejects(data):
    with pytest.raises(PlanarCodeError):
        read_planar_code(data)


@pytest.mark.parametrize("entry", catalog.catalog(), ids=lambda e: e.name)
def test_catalog_invariants(entry):
    G = entry.graph
    assert G.n_vertices - G.n_edges + G.n_faces == 2
    assert sum(len(f) for f in G.faces) == 2 * G.n_edges
    assert all(len(set(f)) == len(f) for f in G.faces)
    assert all(a != b for a, b in G.edge_face)
    again = from_rotation_system(G.n_vertices, rotation_from_faces(G.n_vertices, G.faces))
    assert set(map(frozenset, again.faces)) == set(map(frozenset, G.faces))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([e.name for e in catalog.catalog()]), st.randoms(use_true_random=False))
def test_relabelling_preserves_face_structure(name, rnd):
    G = catalog.get(name).graph
    n = G.n_vertices
    perm = list(range(n))
    rnd.shuffle(perm)
    rot = [None] * n
    for v in range(n):
        r = [perm[w] for w in G.rotation[v]]
        k = rnd.randrange(len(r))
        rot[perm[v]] = r[k:] + r[:k]
    H = from_rotation_system(n, rot)
    assert H.n_faces == G.n_faces
    relabelled = {frozenset(perm[v] for v in f) for f in G.faces}
    assert {frozenset(f) for f in H.faces} == relabelled
