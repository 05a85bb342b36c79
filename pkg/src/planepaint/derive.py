"""Simple graphs derived from a plane graph.

Every derived graph lives on :class:`~planepaint.embedding.Element` labels
(vertices, then edges, then faces, each in index order) and remembers which
named part contributed each of its edges::

    G_v      the plane graph itself
    G_e      line graph (edges sharing an endpoint)
    medial   facially adjacent edges (sharing a vertex and a face)
    G_f      faces sharing an edge
    B_ve, B_vf, B_ef   incidence bipartite graphs

Composite graphs such as ``Gbar_vef`` are unions of these parts.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .embedding import Element, PlaneGraph
from .errors import UnknownSpec


class MultiAdjacencyWarning(UserWarning):
    """Two elements were adjacent more than once and got a single edge."""


@dataclass(frozen=True)
class DerivedGraph:
    vertices: tuple[Element, ...]
    edges: tuple[tuple[int, int], ...]
    parts: Mapping[str, tuple[int, ...]] = field(default_factory=dict)
    name: str = ""

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        adj = [set() for _ in self.vertices]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return tuple(frozenset(a) for a in adj)

    @cached_property
    def _index(self) -> dict[Element, int]:
        return {el: i for i, el in enumerate(self.vertices)}

    def index_of(self, el: Element) -> int:
        return self._index[el]

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency]

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def part_subgraph(self, names: Iterable[str]) -> "DerivedGraph":
        """Same vertex set, only the edges contributed by ``names``."""
        names = list(names)
        idx = sorted(i for nm in names for i in self.parts[nm])
        edges = tuple(self.edges[i] for i in idx)
        return DerivedGraph(self.vertices, edges, {"+".join(names): tuple(range(len(edges)))},
                            name="+".join(names))

    def induced(self, keep: Sequence[int]) -> "DerivedGraph":
        """Induced subgraph on vertex positions ``keep`` (order preserved)."""
        keep = sorted(keep)
        pos = {v: i for i, v in enumerate(keep)}
        edges = tuple(sorted((pos[u], pos[v]) for u, v in self.edges if u in pos and v in pos))
        return DerivedGraph(tuple(self.vertices[v] for v in keep), edges, {}, name=self.name)

    def is_bipartite(self) -> bool:
        return bipartition(self) is not None

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "vertices": [v.label for v in self.vertices],
            "edges": [list(e) for e in self.edges],
            "parts": {k: list(v) for k, v in self.parts.items()},
        }

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], name: str = "") -> "DerivedGraph":
        """Abstract simple graph on ``n`` vertex-Elements."""
        es = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at {u}")
            es.add((min(u, v), max(u, v)))
        es = tuple(sorted(es))
        return cls(tuple(Element("vertex", i) for i in range(n)), es,
                   {"E": tuple(range(len(es)))}, name=name)


def bipartition(H: DerivedGraph) -> list[int] | None:
    """2-colouring as a list of 0/1 sides, or None if ``H`` has an odd cycle."""
    side = [-1] * H.n
    for s in range(H.n):
        if side[s] >= 0:
            continue
        side[s] = 0
        stack = [s]
        while stack:
            u = stack.pop()
            for w in H.adjacency[u]:
                if side[w] < 0:
                    side[w] = 1 - side[u]
                    stack.append(w)
                elif side[w] == side[u]:
                    return None
    return side


# --- raw part constructors: lists of Element pairs --------------------------


def _collapse(pairs: list[tuple[Element, Element]], what: str) -> list[tuple[Element, Element]]:
    canon = [tuple(sorted(p, key=Element.sort_key)) for p in pairs]
    uniq = sorted(set(canon), key=lambda p: (p[0].sort_key(), p[1].sort_key()))
    if len(uniq) != len(canon):
        warnings.warn(f"{what}: {len(canon) - len(uniq)} repeated adjacencies collapsed",
                      MultiAdjacencyWarning, stacklevel=3)
    return uniq


def _vertex_pairs(G: PlaneGraph):
    return [(Element("vertex", u), Element("vertex", v)) for u, v in G.edges]


def _face_pairs(G: PlaneGraph):
    return _collapse([(Element("face", a), Element("face", b)) for a, b in G.edge_face], "G_f")


def _line_pairs(G: PlaneGraph):
    at = [[] for _ in range(G.n_vertices)]
    for i, (u, v) in enumerate(G.edges):
        at[u].append(i)
        at[v].append(i)
    pairs = set()
    for es in at:
        for a in range(len(es)):
            for b in range(a + 1, len(es)):
                pairs.add((es[a], es[b]))
    return [(Element("edge", a), Element("edge", b)) for a, b in sorted(pairs)]


def _medial_pairs(G: PlaneGraph):
    pairs = []
    for f in range(G.n_faces):
        fe = G.face_edges(f)
        for i in range(len(fe)):
            pairs.append((Element("edge", fe[i]), Element("edge", fe[(i + 1) % len(fe)])))
    return _collapse(pairs, "medial")


def _incidence_pairs(G: PlaneGraph, kind: str):
    if kind == "ve":
        pairs = [(Element("vertex", v), Element("edge", e))
                 for e, uv in enumerate(G.edges) for v in uv]
    elif kind == "vf":
        pairs = [(Element("vertex", v), Element("face", f))
                 for f, cyc in enumerate(G.faces) for v in cyc]
    elif kind == "ef":
        pairs = [(Element("edge", e), Element("face", f))
                 for e, fs in enumerate(G.edge_face) for f in fs]
    else:
        raise UnknownSpec(f"incidence kind must be ve, vf or ef, not {kind!r}")
    # simple-cycle faces make every incidence unique
    assert len(set(pairs)) == len(pairs), f"B_{kind} has repeated incidences"
    return pairs


_PART_BUILDERS = {
    "G_v": (_vertex_pairs, ("vertex",)),
    "G_e": (_line_pairs, ("edge",)),
    "medial": (_medial_pairs, ("edge",)),
    "G_f": (_face_pairs, ("face",)),
    "B_ve": (lambda G: _incidence_pairs(G, "ve"), ("vertex", "edge")),
    "B_vf": (lambda G: _incidence_pairs(G, "vf"), ("vertex", "face")),
    "B_ef": (lambda G: _incidence_pairs(G, "ef"), ("edge", "face")),
}

COMPOSITES = {
    "G_v": ("G_v",),
    "G_e": ("G_e",),
    "G_f": ("G_f",),
    "medial": ("medial",),
    "B_ve": ("B_ve",),
    "B_vf": ("B_vf",),
    "B_ef": ("B_ef",),
    "G_vf": ("G_v", "G_f", "B_vf"),
    "G_ve": ("G_v", "G_e", "B_ve"),
    "G_ef": ("G_e", "G_f", "B_ef"),
    "G_vef": ("G_v", "G_e", "G_f", "B_ve", "B_vf", "B_ef"),
    "Gbar_ve": ("G_v", "medial", "B_ve"),
    "Gbar_ef": ("medial", "G_f", "B_ef"),
    "Gbar_vef": ("G_v", "medial", "G_f", "B_ve", "B_vf", "B_ef"),
}

_ALIASES = {
    "Gbar_e": "medial", "Ḡ_e": "medial", "Ḡ_ve": "Gbar_ve", "Ḡ_ef": "Gbar_ef",
    "Ḡ_vef": "Gbar_vef", "v": "G_v", "e": "G_e", "f": "G_f", "vf": "G_vf",
    "ve": "G_ve", "ef": "G_ef", "vef": "G_vef", "bar_ve": "Gbar_ve",
    "bar_ef": "Gbar_ef", "bar_vef": "Gbar_vef", "line": "G_e", "face": "G_f",
    "vertex": "G_v", "dual": "G_f",
}


def canonical_spec(spec: str) -> str:
    key = _ALIASES.get(spec, spec)
    if key not in COMPOSITES:
        raise UnknownSpec(f"unknown derived graph {spec!r}; choose from {sorted(COMPOSITES)}")
    return key


def _assemble(G: PlaneGraph, part_names: Sequence[str], name: str) -> DerivedGraph:
    kinds = set()
    raw = {}
    for p in part_names:
        builder, ks = _PART_BUILDERS[p]
        kinds.update(ks)
        raw[p] = builder(G)
    vertices = tuple(el for k in ("vertex", "edge", "face") if k in kinds for el in G.elements(k))
    index = {el: i for i, el in enumerate(vertices)}
    owner: dict[tuple[int, int], str] = {}
    for p in part_names:
        for a, b in raw[p]:
            i, j = index[a], index[b]
            key = (min(i, j), max(i, j))
            if key in owner:
                raise AssertionError(f"{key} contributed by both {owner[key]} and {p}")
            owner[key] = p
    edges = tuple(sorted(owner))
    parts = {p: tuple(i for i, e in enumerate(edges) if owner[e] == p) for p in part_names}
    return DerivedGraph(vertices, edges, parts, name=name)


def vertex_graph(G: PlaneGraph) -> DerivedGraph:
    return _assemble(G, ("G_v",), "G_v")


def face_graph(G: PlaneGraph) -> DerivedGraph:
    """Faces adjacent when they share an edge; shared multiple edges give one edge."""
    return _assemble(G, ("G_f",), "G_f")


def line_graph(G: PlaneGraph) -> DerivedGraph:
    return _assemble(G, ("G_e",), "G_e")


def medial_graph(G: PlaneGraph) -> DerivedGraph:
    return _assemble(G, ("medial",), "medial")


def incidence_bipartite(G: PlaneGraph, kind: str) -> DerivedGraph:
    kind = kind.removeprefix("B_")
    if kind not in ("ve", "vf", "ef"):
        raise UnknownSpec(f"incidence kind must be ve, vf or ef, not {kind!r}")
    return _assemble(G, (f"B_{kind}",), f"B_{kind}")


def combine(G: PlaneGraph, spec: str) -> DerivedGraph:
    """Any named derived graph, e.g. ``"G_vf"`` or ``"Gbar_vef"``."""
    key = canonical_spec(spec)
    return _assemble(G, COMPOSITES[key], key)


derived = combine
