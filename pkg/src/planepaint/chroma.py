"""Brute-force colouring oracles for tiny graphs.

These are deliberately independent of the polynomial machinery so they can
anchor the chain chi <= ch <= paint <= AT.
"""

from __future__ import annotations

from itertools import combinations
from typing import Sequence

from .derive import DerivedGraph
from .errors import SizeLimitExceeded

CHI_LIMIT = 16
CHOOSABLE_LIMIT = 6


def chromatic_number(H: DerivedGraph) -> int:
    """Exact chromatic number by DSATUR branch and bound."""
    n = H.n
    if n > CHI_LIMIT:
        raise SizeLimitExceeded(f"{n} vertices exceed the chromatic number limit of {CHI_LIMIT}")
    if n == 0:
        return 0
    if H.m == 0:
        return 1
    adj = H.adjacency
    color = [-1] * n
    best = n

    def dsatur(used: int, colored: int):
        nonlocal best
        if used >= best:
            return
        if colored == n:
            best = used
            return
        v = max((u for u in range(n) if color[u] < 0),
                key=lambda u: (len({color[w] for w in adj[u] if color[w] >= 0}), len(adj[u]), -u))
        taken = {color[w] for w in adj[v]}
        for c in range(min(used + 1, best - 1)):
            if c in taken:
                continue
            color[v] = c
            dsatur(max(used, c + 1), colored + 1)
            color[v] = -1

    dsatur(0, 0)
    return best


def list_colorable(adj: Sequence[frozenset[int]], lists: Sequence[Sequence[int]],
                   vertices: Sequence[int] | None = None) -> bool:
    """Proper colouring of ``vertices`` with each vertex taking a colour from its list."""
    verts = list(range(len(lists))) if vertices is None else list(vertices)
    inside = set(verts)
    color: dict[int, int] = {}

    def rec() -> bool:
        if len(color) == len(verts):
            return True
        best_v, best_opts = None, None
        for v in verts:
            if v in color:
                continue
            opts = [c for c in lists[v] if all(color.get(w) != c for w in adj[v] if w in inside)]
            if best_opts is None or len(opts) < len(best_opts):
                best_v, best_opts = v, opts
                if not opts:
                    return False
        for c in best_opts:
            color[best_v] = c
            if rec():
                return True
            del color[best_v]
        return False

    return rec()


def _degeneracy(adj, verts) -> int:
    alive = set(verts)
    d = 0
    while alive:
        v = min(alive, key=lambda x: (sum(1 for w in adj[x] if w in alive), x))
        d = max(d, sum(1 for w in adj[v] if w in alive))
        alive.remove(v)
    return d


def _connected(adj, verts) -> bool:
    verts = set(verts)
    start = next(iter(verts))
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w in verts and w not in seen:
                seen.add(w)
                stack.append(w)
    return seen == verts


def _bad_assignment(adj, verts: list[int], k: int) -> list[tuple[int, ...]] | None:
    """A k-list assignment on ``verts`` with no proper colouring, searching only
    assignments where every colour occurs in at least two lists.

    Colours are introduced in increasing order (a new list uses some old
    colours plus the next unused ones), which removes colour permutations.
    """
    n = len(verts)
    inside = set(verts)
    # the last vertex is handled by _forced_colors, so put a well-connected one there
    last = max(verts, key=lambda v: (sum(1 for w in adj[v] if w in inside), -v))
    verts = [v for v in verts if v != last] + [last]
    max_colors = (k * n) // 2
    lists: list[tuple[int, ...]] = []
    uses: dict[int, int] = {}

    def rec(i: int, n_colors: int):
        if i == n - 1:
            forced = _forced_colors(adj, verts, lists, k)
            if forced is None:
                # the others already fail; any list on the last vertex stays bad
                return list(lists) + [tuple(range(n_colors + 1, n_colors + k + 1))]
            for L in combinations(sorted(forced), k):
                if all(uses.get(c, 0) + (c in L) >= 2 for c in uses):
                    return list(lists) + [L]
            return None
        singles = sum(1 for u in uses.values() if u == 1)
        if singles > (n - i) * k:
            return None
        old = range(1, n_colors + 1)
        for j in range(k, -1, -1):
            fresh = k - j
            if n_colors + fresh > max_colors:
                continue
            for keep in combinations(old, j):
                L = keep + tuple(range(n_colors + 1, n_colors + fresh + 1))
                lists.append(L)
                for c in L:
                    uses[c] = uses.get(c, 0) + 1
                found = rec(i + 1, n_colors + fresh)
                for c in L:
                    uses[c] -= 1
                    if not uses[c]:
                        del uses[c]
                lists.pop()
                if found is not None:
                    return found
        return None

    found = rec(0, 0)
    if found is None:
        return None
    order = sorted(range(n), key=lambda i: verts[i])
    return [found[i] for i in order]


def _forced_colors(adj, verts, lists, k) -> set[int] | None:
    """Colours seen on the last vertex's neighbourhood in every colouring of the others.

    The last vertex is stuck exactly when its whole list lies in this set.
    None means the other vertices cannot be coloured at all.
    """
    *rest, last = verts
    nbrs = [i for i, v in enumerate(rest) if v in adj[last]]
    color = [0] * len(rest)
    common: set[int] | None = None
    any_coloring = False

    def rec(i: int) -> bool:
        nonlocal common, any_coloring
        if i == len(rest):
            any_coloring = True
            seen = {color[j] for j in nbrs}
            common = seen if common is None else common & seen
            return len(common) < k
        v = rest[i]
        for c in lists[i]:
            if all(color[j] != c for j in range(i) if rest[j] in adj[v]):
                color[i] = c
                if rec(i + 1):
                    return True
        return False

    rec(0)
    if not any_coloring:
        return None
    return common


def is_k_choosable(H: DerivedGraph, k: int, limit: int = CHOOSABLE_LIMIT) -> bool:
    """Exhaustive k-choosability test.

    ``H`` fails iff some connected induced subgraph of minimum degree at
    least ``k`` has a bad assignment in which every colour appears in two or
    more lists: a colour private to one vertex lets that vertex be coloured
    last, and a vertex of degree below ``k`` can always be coloured last.
    """
    n = H.n
    if n > limit:
        raise SizeLimitExceeded(f"{n} vertices exceed the choosability limit of {limit}")
    if k <= 0:
        return n == 0
    adj = H.adjacency
    if _degeneracy(adj, range(n)) < k:
        return True
    if chromatic_number(H) > k:
        return False
    for size in range(k + 1, n + 1):
        for verts in combinations(range(n), size):
            vs = set(verts)
            if min(sum(1 for w in adj[v] if w in vs) for v in verts) < k:
                continue
            if not _connected(adj, verts):
                continue
            if _bad_assignment(adj, list(verts), k) is not None:
                return False
    return True


def bad_list_assignment(H: DerivedGraph, k: int) -> dict[int, tuple[int, ...]] | None:
    """A concrete k-list assignment of ``H`` that cannot be coloured, if any."""
    n = H.n
    if n > CHOOSABLE_LIMIT:
        raise SizeLimitExceeded(f"{n} vertices exceed the choosability limit of {CHOOSABLE_LIMIT}")
    adj = H.adjacency
    for size in range(1, n + 1):
        for verts in combinations(range(n), size):
            if not _connected(adj, verts):
                continue
            bad = _bad_assignment(adj, list(verts), k)
            if bad is not None:
                out = dict(zip(verts, bad))
                fresh = 10 * k * n
                for v in range(n):
                    if v not in out:
                        out[v] = tuple(range(fresh, fresh + k))
                        fresh += k
                return out
    return None


def choice_number(H: DerivedGraph, max_k: int, limit: int = CHOOSABLE_LIMIT) -> int | None:
    """Least k with ``H`` k-choosable, starting from the chromatic number."""
    if H.n == 0:
        return 0
    for k in range(max(1, chromatic_number(H)), max_k + 1):
        if is_k_choosable(H, k, limit):
            return k
    return None
