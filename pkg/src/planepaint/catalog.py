"""Built-in plane graphs used by the theorem harness and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

import networkx as nx

from .embedding import (
    PlaneGraph,
    from_rotation_system,
    is_bipartite,
    is_triangulation,
    load_json,
    load_planar_code,
)
from .errors import PlanePaintError


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    params: dict
    graph: PlaneGraph
    tags: frozenset[str] = field(default_factory=frozenset)


def embed(nxg: nx.Graph) -> PlaneGraph:
    """Plane embedding of an abstract planar graph via networkx.

    Only used to build catalog inputs; for 3-connected graphs the embedding
    is unique up to reflection.
    """
    nxg = nx.convert_node_labels_to_integers(nxg, ordering="sorted")
    ok, emb = nx.check_planarity(nxg)
    if not ok:
        raise PlanePaintError("graph is not planar")
    n = nxg.number_of_nodes()
    return from_rotation_system(n, [list(emb.neighbors_cw_order(v)) for v in range(n)])


def _tags(G: PlaneGraph) -> frozenset[str]:
    tags = set()
    if is_bipartite(G):
        tags.add("bipartite")
    if is_triangulation(G):
        tags.add("triangulation")
    degs = {G.degree(v) for v in range(G.n_vertices)}
    if degs == {3}:
        tags.add("cubic")
    if len(degs) == 1:
        tags.add(f"{degs.pop()}-regular")
    return frozenset(tags)


def entry(name: str, G: PlaneGraph, **params) -> CatalogEntry:
    return CatalogEntry(name, params, G, _tags(G))


def stacked_triangulation(levels: int) -> nx.Graph:
    """Start from K4 and, ``levels`` times, insert a vertex into every face."""
    G = nx.complete_graph(4)
    faces = [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]
    for _ in range(levels):
        new_faces = []
        for a, b, c in faces:
            x = G.number_of_nodes()
            G.add_edges_from([(x, a), (x, b), (x, c)])
            new_faces += [(a, b, x), (a, c, x), (b, c, x)]
        faces = new_faces
    return G


def bipyramid(k: int) -> nx.Graph:
    G = nx.cycle_graph(k)
    G.add_edges_from((k, i) for i in range(k))
    G.add_edges_from((k + 1, i) for i in range(k))
    return G


def _builders():
    yield "K3", nx.cycle_graph(3), {}
    yield "C4", nx.cycle_graph(4), {}
    yield "C5", nx.cycle_graph(5), {}
    yield "C6", nx.cycle_graph(6), {}
    yield "K4", nx.complete_graph(4), {}
    yield "K2_3", nx.complete_bipartite_graph(2, 3), {}
    yield "K2_4", nx.complete_bipartite_graph(2, 4), {}
    yield "bipyramid3", bipyramid(3), {"k": 3}
    for k in (4, 5, 6):
        yield f"W{k}", nx.wheel_graph(k + 1), {"rim": k}
    for k in (3, 4, 5, 6):
        # prism4 is the cube Q3, listed on its own below
        if k != 4:
            yield f"prism{k}", nx.circular_ladder_graph(k), {"k": k}
    yield "Q3", nx.cubical_graph(), {}
    yield "octahedron", nx.octahedral_graph(), {}
    yield "grid3x3", nx.grid_2d_graph(3, 3), {"rows": 3, "cols": 3}
    yield "icosahedron", nx.icosahedral_graph(), {}
    yield "dodecahedron", nx.dodecahedral_graph(), {}
    for lv in (1, 2, 3):
        yield f"stacked{lv}", stacked_triangulation(lv), {"levels": lv}


@lru_cache(maxsize=1)
def _builtin() -> tuple[CatalogEntry, ...]:
    return tuple(entry(name, embed(g), **params) for name, g, params in _builders())


def catalog(extra: list[CatalogEntry] | None = None) -> list[CatalogEntry]:
    """Every built-in entry, ordered from small to large, plus ``extra``."""
    entries = sorted(_builtin(), key=lambda e: (e.graph.n_edges, e.graph.n_vertices, e.name))
    return entries + list(extra or [])


def get(name: str) -> CatalogEntry:
    for e in _builtin():
        if e.name == name:
            return e
    raise KeyError(f"no catalog entry named {name!r}")


def load_entries(spec: str) -> list[CatalogEntry]:
    """Resolve ``catalog:NAME[,NAME...]``, ``catalog:all``, a JSON file or a planar_code file."""
    if spec.startswith("catalog:"):
        names = spec[len("catalog:"):]
        if names in ("", "all"):
            return catalog()
        return [get(n) for n in names.split(",")]
    path = Path(spec)
    if path.suffix == ".json":
        return [entry(path.stem, load_json(path), path=str(path))]
    graphs = load_planar_code(path)
    return [entry(f"{path.stem}#{i}", G, path=str(path), index=i) for i, G in enumerate(graphs)]


def load_graph(spec: str) -> PlaneGraph:
    entries = load_entries(spec)
    if len(entries) != 1:
        raise PlanePaintError(f"{spec!r} names {len(entries)} graphs, expected one")
    return entries[0].graph
