"""Canonical forms of small vertex-labelled graphs.

Used to key memo tables by isomorphism class. Vertices are first split by
colour refinement, then remaining ties are broken by individualising one
vertex at a time and keeping the lexicographically smallest certificate.
Mutual twins inside a cell are interchangeable, so only one of them is tried.
"""

from __future__ import annotations

from typing import Hashable, Sequence


def _refine(adj: Sequence[int], colors: list[int]) -> list[int]:
    n = len(adj)
    while True:
        sigs = [
            (colors[v], tuple(sorted(colors[w] for w in range(n) if adj[v] >> w & 1)))
            for v in range(n)
        ]
        ranks = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [ranks[s] for s in sigs]
        if len(ranks) == len(set(colors)):
            return new
        colors = new


def _certificate(adj: Sequence[int], labels: Sequence[Hashable], order: Sequence[int]):
    pos = {v: i for i, v in enumerate(order)}
    rows = []
    for v in order:
        bits = 0
        a = adj[v]
        for w in range(len(adj)):
            if a >> w & 1:
                bits |= 1 << pos[w]
        rows.append(bits)
    return (tuple(labels[v] for v in order), tuple(rows))


def canonical_form(adj: Sequence[int], labels: Sequence[Hashable]) -> tuple:
    """Isomorphism-invariant key of a graph with vertex labels.

    ``adj[v]`` is the neighbour bitmask of vertex ``v``; labels must be
    mutually comparable. Two labelled graphs get the same key iff they are
    isomorphic by a label-preserving map.
    """
    n = len(adj)
    if n == 0:
        return ((), ())
    label_rank = {lab: i for i, lab in enumerate(sorted(set(labels)))}
    colors = _refine(adj, [label_rank[lab] for lab in labels])
    best = None

    def search(colors: list[int]):
        nonlocal best
        if len(set(colors)) == n:
            order = sorted(range(n), key=colors.__getitem__)
            cert = _certificate(adj, labels, order)
            if best is None or cert < best:
                best = cert
            return
        counts = {}
        for c in colors:
            counts[c] = counts.get(c, 0) + 1
        # first smallest non-singleton cell
        cell_color = min((k, c) for c, k in counts.items() if k > 1)[1]
        cell = [v for v in range(n) if colors[v] == cell_color]
        tried = []
        for v in cell:
            if any(_twins(adj, v, u) for u in tried):
                continue
            tried.append(v)
            split = [2 * c + (1 if c >= cell_color and u != v else 0) for u, c in enumerate(colors)]
            search(_refine(adj, split))

    search(colors)
    return best


def _twins(adj: Sequence[int], a: int, b: int) -> bool:
    mask = ~((1 << a) | (1 << b))
    return (adj[a] & mask) == (adj[b] & mask)
