import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import achievable_indegrees, orientation_counts, symbolic_coefficients
from planepaint import catalog, derive
from planepaint.derive import DerivedGraph
from planepaint.errors import BudgetExceeded, DegreeSumMismatch, NotBipartite
from planepaint.polynomial import (
    Deadline,
    VanishingPart,
    alon_tarsi_number,
    at_lower_bound,
    bipartite_at,
    bipartite_sign,
    coefficient,
    coefficient_dfs,
    degeneracy,
    degeneracy_orientation,
    find_nonvanishing,
    indegrees,
    is_acyclic,
    min_max_indegree_orientation,
    orientation_with_caps,
    product_certificate,
    truncated_expansion,
)

K3 = DerivedGraph.from_edges(3, [(0, 1), (1, 2), (0, 2)], "K3")
C4 = DerivedGraph.from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)], "C4")


def derived_graphs(max_edges):
    out = []
    for e in catalog.catalog():
        for spec in derive.COMPOSITES:
            H = derive.combine(e.graph, spec)
            if 0 < H.m <= max_edges:
                out.append((f"{e.name}:{spec}", H))
    return out


SMALL = derived_graphs(8)


def subgraph(H, keep_mask):
    edges = [e for i, e in enumerate(H.edges) if keep_mask >> i & 1]
    return DerivedGraph.from_edges(H.n, edges)


# --- frozen examples ------------------------------------------------------------


def test_small_coefficients():
    assert coefficient(K3, (2, 1, 0)) == 1
    assert coefficient(K3, (1, 1, 1)) == 0
    assert coefficient(C4, (1, 1, 1, 1)) == -2
    assert coefficient_dfs(C4, (1, 1, 1, 1)) == -2


def test_degree_sum_checked():
    with pytest.raises(DegreeSumMismatch):
        coefficient(K3, (1, 1, 0))
    with pytest.raises(DegreeSumMismatch):
        coefficient(K3, (3, 0))
    with pytest.raises(DegreeSumMismatch):
        coefficient(K3, (4, -1, 0))


def test_truncated_expansion_examples():
    assert truncated_expansion(K3, 1) == {}
    full = truncated_expansion(K3, 2)
    assert len(full) == 6 and set(map(abs, full.values())) == {1}


def test_at_examples():
    assert alon_tarsi_number(K3, 5).k == 3
    assert alon_tarsi_number(C4, 5).k == 2
    Q3 = derive.vertex_graph(catalog.get("Q3").graph)
    assert alon_tarsi_number(Q3, 5).k == 3
    assert bipartite_at(Q3) == 3 and bipartite_at(C4) == 2
    assert alon_tarsi_number(K3, 2).exceeded
    with pytest.raises(ValueError):
        alon_tarsi_number(K3, 0)


def test_min_max_orientation_examples():
    assert min_max_indegree_orientation(C4)[1] == 1
    assert min_max_indegree_orientation(derive.vertex_graph(catalog.get("Q3").graph))[1] == 2
    arcs, d = min_max_indegree_orientation(derive.vertex_graph(catalog.get("K4").graph))
    assert d == 2 and max(indegrees(4, arcs)) == 2


def test_degeneracy_orientation_of_k4():
    K4 = derive.vertex_graph(catalog.get("K4").graph)
    arcs, t = degeneracy_orientation(K4)
    assert sorted(t) == [0, 1, 2, 3]
    assert is_acyclic(4, arcs)
    assert abs(coefficient(K4, t)) == 1


def test_bipartite_at_rejects_odd_cycles():
    with pytest.raises(NotBipartite):
        bipartite_at(K3)


@pytest.mark.parametrize("entry", catalog.catalog(), ids=lambda e: e.name)
def test_incidence_graph_at_is_at_most_three(entry):
    B = derive.incidence_bipartite(entry.graph, "ve")
    G = entry.graph
    # a plain cycle gives an even cycle here, with AT 2
    expected = 3 if max(G.degree(v) for v in range(G.n_vertices)) >= 3 else 2
    assert bipartite_at(B) == expected
    N = [2 if el.kind == "edge" else 0 for el in B.vertices]
    assert abs(coefficient(B, N)) == 1


def test_budget_exceeded():
    H = derive.combine(catalog.get("octahedron").graph, "Gbar_vef")
    with pytest.raises(BudgetExceeded):
        truncated_expansion(H, 6, budget=50)
    _, t = degeneracy_orientation(H)
    with pytest.raises(BudgetExceeded):
        coefficient(H, t, budget=1)


def test_deadline_exceeded():
    H = derive.combine(catalog.get("icosahedron").graph, "Gbar_ve")
    with pytest.raises(BudgetExceeded):
        truncated_expansion(H, 4, deadline=Deadline(0.0))


# --- oracle equivalence -----------------------------------------------------------


@pytest.mark.parametrize("name, H", SMALL, ids=[n for n, _ in SMALL])
def test_matches_symbolic_expansion(name, H):
    ref = symbolic_coefficients(H)
    assert truncated_expansion(H, H.m) == dict(sorted(ref.items()))
    for t in achievable_indegrees(H):
        assert coefficient(H, t) == ref.get(t, 0)


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(range(len(SMALL))), st.integers(min_value=1))
def test_random_subgraphs_match_symbolic(i, mask):
    H = subgraph(SMALL[i][1], mask % (1 << SMALL[i][1].m))
    ref = orientation_counts(H)
    assert ref == symbolic_coefficients(H)
    for t in achievable_indegrees(H):
        assert coefficient(H, t) == ref.get(t, 0)
        assert coefficient_dfs(H, t, split_depth=2) == ref.get(t, 0)


@pytest.mark.parametrize("name", ["K4", "octahedron", "W5"])
def test_dfs_and_dp_agree_on_medium_graphs(name):
    H = derive.vertex_graph(catalog.get(name).graph)
    arcs, _ = min_max_indegree_orientation(H)
    t = indegrees(H.n, arcs)
    assert coefficient(H, t) == coefficient_dfs(H, t, split_depth=3)


def test_dfs_in_process_pool():
    H = derive.vertex_graph(catalog.get("octahedron").graph)
    t = (2,) * 6
    assert coefficient_dfs(H, t, split_depth=3, workers=2) == coefficient(H, t)


# --- properties ---------------------------------------------------------------------


graphs_8 = st.sampled_from(SMALL).map(lambda p: p[1])


@settings(max_examples=60, deadline=None)
@given(graphs_8, st.integers(min_value=0, max_value=4))
def test_expansion_keys_are_uniform_and_capped(H, cap):
    for mono, c in truncated_expansion(H, cap).items():
        assert sum(mono) == H.m
        assert max(mono) <= cap and c != 0


@settings(max_examples=60, deadline=None)
@given(graphs_8, st.randoms(use_true_random=False))
def test_vanishing_invariant_under_relabelling(H, rnd):
    perm = list(range(H.n))
    rnd.shuffle(perm)
    P = DerivedGraph.from_edges(H.n, [(perm[u], perm[v]) for u, v in H.edges])
    for t, c in orientation_counts(H).items():
        pt = [0] * H.n
        for v in range(H.n):
            pt[perm[v]] = t[v]
        assert abs(coefficient(P, pt)) == abs(c)


@settings(max_examples=60, deadline=None)
@given(graphs_8)
def test_coefficient_bounded_by_orientation_count(H):
    counts: dict = {}
    for t in achievable_indegrees(H):
        c = coefficient(H, t)
        assert abs(c) <= 2 ** H.m


@pytest.mark.parametrize("entry", [e for e in catalog.catalog() if "bipartite" in e.tags],
                         ids=lambda e: e.name)
def test_bipartite_sign_law(entry):
    for spec in ("G_v", "B_ve", "B_vf", "B_ef"):
        H = derive.combine(entry.graph, spec)
        if H.m > 16:
            continue
        for t, c in truncated_expansion(H, H.m).items():
            assert c != 0
            assert (1 if c > 0 else -1) == bipartite_sign(H, t)
        assert alon_tarsi_number(H, H.m + 1).k == bipartite_at(H)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(catalog.catalog()), st.sampled_from(["G_v", "G_vf", "medial", "Gbar_ve"]),
       st.randoms(use_true_random=False))
def test_acyclic_orientation_coefficient_is_unit(entry, spec, rnd):
    H = derive.combine(entry.graph, spec)
    if H.m > 70:
        return
    keep = sorted(rnd.sample(range(H.n), k=min(H.n, 12)))
    S = H.induced(keep)
    arcs, t = degeneracy_orientation(S)
    assert is_acyclic(S.n, arcs)
    assert indegrees(S.n, arcs) == t
    assert max(t, default=0) <= degeneracy(S)
    assert abs(coefficient(S, t)) == 1


@pytest.mark.parametrize("entry", catalog.catalog(), ids=lambda e: e.name)
def test_vertex_face_graph_is_7_degenerate(entry):
    _, t = degeneracy_orientation(derive.combine(entry.graph, "G_vf"))
    assert max(t) <= 7


@settings(max_examples=40, deadline=None)
@given(graphs_8)
def test_min_max_orientation_is_optimal(H):
    arcs, d = min_max_indegree_orientation(H)
    assert len(arcs) == H.m and max(indegrees(H.n, arcs), default=0) == d
    assert orientation_with_caps(H, [d - 1] * H.n) is None if d > 0 else True
    assert min(max(t) for t in achievable_indegrees(H)) == d


@settings(max_examples=40, deadline=None)
@given(graphs_8)
def test_at_lower_bound_and_chromatic_relation(H):
    from planepaint.chroma import chromatic_number

    res = alon_tarsi_number(H, H.m + 1)
    assert res.k >= at_lower_bound(H) - 1 or H.m == 0
    assert res.k >= chromatic_number(H)
    for mono, c in res.witnesses.items():
        assert coefficient(H, mono) == c


# --- certificates -------------------------------------------------------------------


def test_find_nonvanishing_returns_valid_monomials():
    for name in ("octahedron", "icosahedron", "prism5"):
        H = derive.medial_graph(catalog.get(name).graph)
        t, c = find_nonvanishing(H, 2 if name != "prism5" else 3)
        assert c != 0 and coefficient(H, t) == c


def test_find_nonvanishing_uses_full_expansion_on_small_graphs():
    assert find_nonvanishing(K3, 1) is None
    t, c = find_nonvanishing(C4, 1)
    assert t == (1, 1, 1, 1) and c == -2


def test_product_certificate_on_triangle():
    G = catalog.get("K3").graph
    H = derive.combine(G, "Gbar_ve")
    Gv = H.part_subgraph(["G_v"])
    _, Mv = degeneracy_orientation(Gv)
    Me_sub = H.part_subgraph(["medial"])
    Me, _ = find_nonvanishing(Me_sub, [0 if el.kind == "vertex" else 2 for el in H.vertices])
    N = [2 if el.kind == "edge" else 0 for el in H.vertices]
    cert = product_certificate(H, {"G_v": Mv, "medial": Me, "B_ve": N})
    assert cert.nonzero and cert.coefficient == coefficient(H, cert.monomial)
    assert cert.max_exponent <= 5
    data = cert.to_json()
    assert data["coefficient"] == str(cert.coefficient)


def test_product_certificate_rejects_bad_inputs():
    H = derive.combine(catalog.get("K3").graph, "Gbar_ve")
    N = [2 if el.kind == "edge" else 0 for el in H.vertices]
    with pytest.raises(ValueError):
        product_certificate(H, {"B_ve": N})
    # medial of K3 is a triangle; the balanced monomial (1,1,1) vanishes
    Me = [1 if el.kind == "edge" else 0 for el in H.vertices]
    _, Mv = degeneracy_orientation(H.part_subgraph(["G_v"]))
    with pytest.raises(VanishingPart):
        product_certificate(H, {"G_v": Mv, "medial": Me, "B_ve": N})


def test_caps_vector_length_checked():
    with pytest.raises(ValueError):
        truncated_expansion(K3, [1, 1])
