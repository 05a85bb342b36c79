"""Plane graphs given as rotation systems.

A plane graph is described by the clockwise cyclic order of neighbours
around every vertex. Faces are never supplied by the caller; they are traced
from the rotation: the directed edge ``(u, v)`` is followed by ``(v, w)``
where ``w`` is the neighbour that comes right after ``u`` in the rotation at
``v``.

Only connected simple embeddings on the sphere whose faces are all bounded
by simple cycles are accepted.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .errors import (
    Disconnected,
    EulerViolation,
    FaceNotSimpleCycle,
    NotSimple,
    PlanarCodeError,
)

KINDS = ("vertex", "edge", "face")
_KIND_RANK = {k: i for i, k in enumerate(KINDS)}
_KIND_PREFIX = {"vertex": "v", "edge": "e", "face": "f"}

PLANAR_CODE_HEADER = b">>planar_code<<"


@dataclass(frozen=True)
class Element:
    """A vertex, edge or face of a plane graph, by kind and index."""

    kind: str
    index: int

    def __post_init__(self):
        if self.kind not in _KIND_RANK:
            raise ValueError(f"unknown element kind {self.kind!r}")
        if self.index < 0:
            raise ValueError("element index must be non-negative")

    def sort_key(self) -> tuple[int, int]:
        return (_KIND_RANK[self.kind], self.index)

    @property
    def label(self) -> str:
        return f"{_KIND_PREFIX[self.kind]}{self.index}"

    @classmethod
    def parse(cls, label: str) -> "Element":
        prefix, rest = label[0], label[1:]
        for kind, p in _KIND_PREFIX.items():
            if p == prefix:
                return cls(kind, int(rest))
        raise ValueError(f"bad element label {label!r}")

    def __str__(self) -> str:
        return self.label


@dataclass(frozen=True)
class PlaneGraph:
    """Immutable plane graph. Build it with :func:`from_rotation_system`."""

    n_vertices: int
    rotation: tuple[tuple[int, ...], ...]
    edges: tuple[tuple[int, int], ...]
    faces: tuple[tuple[int, ...], ...]
    edge_face: tuple[tuple[int, int], ...]
    _edge_index: dict = field(default=None, repr=False, compare=False, hash=False)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def n_faces(self) -> int:
        return len(self.faces)

    def count(self, kind: str) -> int:
        return {"vertex": self.n_vertices, "edge": self.n_edges, "face": self.n_faces}[kind]

    def elements(self, kind: str) -> list[Element]:
        return [Element(kind, i) for i in range(self.count(kind))]

    def edge_index(self, u: int, v: int) -> int:
        return self._edge_index[(u, v) if u < v else (v, u)]

    def face_edges(self, f: int) -> list[int]:
        """Edge indices around face ``f`` in traversal order."""
        cyc = self.faces[f]
        return [self.edge_index(cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc))]

    def degree(self, v: int) -> int:
        return len(self.rotation[v])

    def to_json(self) -> dict:
        return {"n": self.n_vertices, "rotation": [list(r) for r in self.rotation]}

    def summary(self) -> dict:
        return {
            "n": self.n_vertices,
            "edges": [list(e) for e in self.edges],
            "faces": [list(f) for f in self.faces],
            "edge_face": [list(p) for p in self.edge_face],
        }


def _trace_faces(rotation: Sequence[Sequence[int]]) -> tuple[list[tuple[int, ...]], dict]:
    pos = [{w: i for i, w in enumerate(r)} for r in rotation]
    darts = sorted((u, v) for u in range(len(rotation)) for v in rotation[u])
    dart_face: dict[tuple[int, int], int] = {}
    faces: list[tuple[int, ...]] = []
    for start in darts:
        if start in dart_face:
            continue
        fid = len(faces)
        cyc = []
        d = start
        while d not in dart_face:
            dart_face[d] = fid
            u, v = d
            cyc.append(u)
            rv = rotation[v]
            w = rv[(pos[v][u] + 1) % len(rv)]
            d = (v, w)
        if d != start:
            # can only happen on a malformed rotation; a proper one yields a permutation
            raise NotSimple("face tracing did not close up")
        faces.append(tuple(cyc))
    return faces, dart_face


def from_rotation_system(n: int, rotation: Sequence[Sequence[int]]) -> PlaneGraph:
    """Build a :class:`PlaneGraph` from clockwise neighbour cycles.

    Raises:
        NotSimple: loops, repeated neighbours, asymmetric adjacency or bad indices.
        Disconnected: the underlying graph is not connected.
        EulerViolation: the traced faces do not give ``V - E + F = 2``.
        FaceNotSimpleCycle: some face boundary repeats a vertex (bridges, cut vertices).
    """
    if n < 1 or len(rotation) != n:
        raise NotSimple(f"expected {n} rotation lists, got {len(rotation)}")
    rot = tuple(tuple(int(w) for w in r) for r in rotation)
    for v, r in enumerate(rot):
        for w in r:
            if not 0 <= w < n:
                raise NotSimple(f"vertex {v} lists out-of-range neighbour {w}")
            if w == v:
                raise NotSimple(f"loop at vertex {v}")
        if len(set(r)) != len(r):
            raise NotSimple(f"vertex {v} repeats a neighbour")
    nbr = [set(r) for r in rot]
    for v in range(n):
        for w in nbr[v]:
            if v not in nbr[w]:
                raise NotSimple(f"adjacency {v}-{w} is not symmetric")

    seen = {0}
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for w in rot[v]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    if len(seen) != n:
        raise Disconnected(f"only {len(seen)} of {n} vertices reachable from vertex 0")

    edges = tuple(sorted((v, w) for v in range(n) for w in rot[v] if v < w))
    edge_index = {e: i for i, e in enumerate(edges)}
    faces, dart_face = _trace_faces(rot)

    if n - len(edges) + len(faces) != 2:
        raise EulerViolation(
            f"V - E + F = {n} - {len(edges)} + {len(faces)} = {n - len(edges) + len(faces)}, expected 2"
        )
    if n == 1:
        # a single vertex has no boundary cycles at all
        raise FaceNotSimpleCycle("a single vertex has no face bounded by a cycle")
    for fid, cyc in enumerate(faces):
        if len(set(cyc)) != len(cyc) or len(cyc) < 3:
            raise FaceNotSimpleCycle(f"face {fid} boundary {list(cyc)} is not a simple cycle")

    edge_face = []
    for u, v in edges:
        a, b = dart_face[(u, v)], dart_face[(v, u)]
        if a == b:
            raise FaceNotSimpleCycle(f"edge {u}-{v} has the same face on both sides")
        edge_face.append((min(a, b), max(a, b)))

    return PlaneGraph(
        n_vertices=n,
        rotation=rot,
        edges=edges,
        faces=tuple(faces),
        edge_face=tuple(edge_face),
        _edge_index=edge_index,
    )


def rotation_from_faces(n: int, faces: Iterable[Sequence[int]]) -> list[list[int]]:
    """Recover the clockwise rotation system from traced faces.

    Each face ``... u, v, w ...`` says that ``w`` follows ``u`` at ``v``.
    Rotations start at the smallest neighbour.
    """
    succ: list[dict[int, int]] = [dict() for _ in range(n)]
    for cyc in faces:
        k = len(cyc)
        for i in range(k):
            u, v, w = cyc[i - 1], cyc[i], cyc[(i + 1) % k]
            succ[v][u] = w
    rotation = []
    for v in range(n):
        if not succ[v]:
            rotation.append([])
            continue
        start = min(succ[v])
        cyc = [start]
        w = succ[v][start]
        while w != start:
            cyc.append(w)
            w = succ[v][w]
        rotation.append(cyc)
    return rotation


def incidences(G: PlaneGraph) -> dict[str, list[tuple[int, int]]]:
    """All vertex-face, edge-face and vertex-edge incidence pairs."""
    vf = sorted((v, f) for f, cyc in enumerate(G.faces) for v in cyc)
    ef = sorted((e, f) for e, pair in enumerate(G.edge_face) for f in pair)
    ve = sorted((v, e) for e, uv in enumerate(G.edges) for v in uv)
    return {"vf": vf, "ef": ef, "ve": ve}


def is_bipartite(G: PlaneGraph) -> bool:
    return all(len(f) % 2 == 0 for f in G.faces)


def is_triangulation(G: PlaneGraph) -> bool:
    return all(len(f) == 3 for f in G.faces)


# --- file formats ---------------------------------------------------------


def load_json(path: str | Path) -> PlaneGraph:
    data = json.loads(Path(path).read_text())
    return from_json(data)


def from_json(data: dict) -> PlaneGraph:
    try:
        n = int(data["n"])
        rotation = data["rotation"]
    except (KeyError, TypeError, ValueError) as exc:
        raise NotSimple(f"rotation JSON needs 'n' and 'rotation': {exc}") from None
    return from_rotation_system(n, rotation)


def read_planar_code(data: bytes) -> list[list[list[int]]]:
    """Decode plantri planar_code bytes into 0-based rotation systems.

    The header is optional. Only the single-byte format is supported, which
    caps graphs at 255 vertices.
    """
    if data.startswith(PLANAR_CODE_HEADER):
        data = data[len(PLANAR_CODE_HEADER):]
    graphs = []
    i = 0
    while i < len(data):
        n = data[i]
        i += 1
        if n == 0:
            raise PlanarCodeError("graphs with more than 255 vertices are not supported")
        rotation = []
        for _ in range(n):
            nbrs = []
            while True:
                if i >= len(data):
                    raise PlanarCodeError("truncated planar_code record")
                b = data[i]
                i += 1
                if b == 0:
                    break
                if b > n:
                    raise PlanarCodeError(f"neighbour {b} out of range for n={n}")
                nbrs.append(b - 1)
            rotation.append(nbrs)
        graphs.append(rotation)
    return graphs


def write_planar_code(graphs: Iterable[PlaneGraph], header: bool = True) -> bytes:
    out = bytearray(PLANAR_CODE_HEADER if header else b"")
    for G in graphs:
        if G.n_vertices > 255:
            raise PlanarCodeError("graphs with more than 255 vertices are not supported")
        out.append(G.n_vertices)
        for r in G.rotation:
            out.extend(w + 1 for w in r)
            out.append(0)
    return bytes(out)


def load_planar_code(path: str | Path) -> list[PlaneGraph]:
    return [from_rotation_system(len(r), r) for r in read_planar_code(Path(path).read_bytes())]
