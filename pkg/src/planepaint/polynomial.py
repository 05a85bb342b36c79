"""Graph polynomial coefficients and Alon-Tarsi numbers.

The graph polynomial of ``H`` is the product of ``(x_u - x_v)`` over its
edges, with ``u < v`` in the vertex order of ``H``. Choosing ``x_u`` from a
factor orients the edge towards ``u``; choosing ``-x_v`` orients it towards
``v`` and costs a sign. The coefficient of a monomial is therefore the signed
number of orientations whose in-degree vector equals its exponent vector.

Exponent vectors are plain tuples of ints, one entry per vertex of ``H``.
Internally they are packed into Python ints with a fixed bit width per
vertex, so adding one to an exponent is a single integer addition.
"""

from __future__ import annotations

import math
import os
import time
from collections import deque
from dataclasses import dataclass, field
from itertools import islice
from typing import Iterable, Mapping, Sequence

import networkx as nx

from .derive import DerivedGraph, bipartition
from .errors import BudgetExceeded, DegreeSumMismatch, NotBipartite

DEFAULT_BUDGET = 1 << 22


def default_budget() -> int:
    return int(os.environ.get("PLANEPAINT_BUDGET_MONOMIALS", DEFAULT_BUDGET))


class Deadline:
    """Wall-clock budget shared by the searches of one task."""

    def __init__(self, seconds: float | None = None):
        self.seconds = seconds
        self.expires = None if seconds is None else time.monotonic() + seconds

    def check(self) -> None:
        if self.expires is not None and time.monotonic() > self.expires:
            raise BudgetExceeded(f"time budget of {self.seconds:g} s exhausted")


NO_DEADLINE = Deadline(None)


# --- elimination plan ---------------------------------------------------------


def vertex_order(H: DerivedGraph) -> list[int]:
    """Greedy low-frontier vertex order.

    The frontier is the set of placed vertices that still have unplaced
    neighbours; keeping it small keeps the coefficient search state small.
    """
    adj = H.adjacency
    n = H.n
    placed = [False] * n
    unplaced_deg = [len(a) for a in adj]
    order: list[int] = []
    frontier: set[int] = set()
    for _ in range(n):
        best, best_key = -1, None
        candidates = {w for u in frontier for w in adj[u] if not placed[w]} or {
            v for v in range(n) if not placed[v]}
        for v in candidates:
            leaving = sum(1 for u in adj[v] if placed[u] and unplaced_deg[u] == 1)
            joining = 1 if unplaced_deg[v] - sum(1 for u in adj[v] if placed[u]) > 0 else 0
            key = (joining - leaving, -sum(1 for u in adj[v] if placed[u]), len(adj[v]), v)
            if best_key is None or key < best_key:
                best, best_key = v, key
        v = best
        placed[v] = True
        order.append(v)
        for u in adj[v]:
            unplaced_deg[u] -= 1
        if unplaced_deg[v] > 0:
            frontier.add(v)
        frontier = {u for u in frontier if unplaced_deg[u] > 0}
    return order


def edge_order(H: DerivedGraph, order: Sequence[int] | None = None) -> list[tuple[int, int]]:
    order = vertex_order(H) if order is None else order
    pos = {v: i for i, v in enumerate(order)}
    seq = []
    for v in order:
        earlier = sorted((u for u in H.adjacency[v] if pos[u] < pos[v]), key=pos.__getitem__)
        seq.extend((min(u, v), max(u, v)) for u in earlier)
    return seq


def frontier_width(H: DerivedGraph) -> int:
    """Largest number of simultaneously open vertices in the coefficient search."""
    seq = edge_order(H)
    remaining = H.degrees()
    open_, width = set(), 0
    for a, b in seq:
        open_.update((a, b))
        width = max(width, len(open_))
        for x in (a, b):
            remaining[x] -= 1
            if remaining[x] == 0:
                open_.discard(x)
    return width


# --- single coefficients ------------------------------------------------------


def _check_target(H: DerivedGraph, target: Sequence[int]) -> tuple[int, ...]:
    target = tuple(int(t) for t in target)
    if len(target) != H.n:
        raise DegreeSumMismatch(f"target has {len(target)} entries, graph has {H.n} vertices")
    if any(t < 0 for t in target):
        raise DegreeSumMismatch("negative exponent in target")
    if sum(target) != H.m:
        raise DegreeSumMismatch(f"target sums to {sum(target)}, graph has {H.m} edges")
    return target


def coefficient(H: DerivedGraph, target: Sequence[int], *, budget: int | None = None,
                deadline: Deadline = NO_DEADLINE) -> int:
    """Exact coefficient of the monomial with exponent vector ``target``.

    Edges are decided one at a time along a low-frontier order. A branch dies
    as soon as a vertex exceeds its target or can no longer reach it with
    its undecided edges; branches that agree on the in-degrees of all still
    open vertices are merged (their signed counts add up).

    Raises:
        DegreeSumMismatch: ``target`` does not sum to the number of edges.
        BudgetExceeded: more than ``budget`` live partial states.
    """
    target = _check_target(H, target)
    degs = H.degrees()
    if any(t > d for t, d in zip(target, degs)):
        return 0
    if H.m == 0:
        return 1
    budget = default_budget() if budget is None else budget
    seq = edge_order(H)
    remaining = list(degs)
    width = max(1, max(target).bit_length())
    mask = (1 << width) - 1
    slot_of: dict[int, int] = {}
    free_slots: list[int] = []
    next_slot = 0
    states: dict[int, int] = {0: 1}
    for step, (a, b) in enumerate(seq):
        for x in (a, b):
            if x not in slot_of:
                if free_slots:
                    slot_of[x] = free_slots.pop()
                else:
                    slot_of[x] = next_slot
                    next_slot += 1
        sa, sb = slot_of[a] * width, slot_of[b] * width
        ta, tb = target[a], target[b]
        remaining[a] -= 1
        remaining[b] -= 1
        ra, rb = remaining[a], remaining[b]
        ia, ib = 1 << sa, 1 << sb
        # fields are zeroed when a vertex closes so its slot can be reused
        za = ta << sa if ra == 0 else 0
        zb = tb << sb if rb == 0 else 0
        new: dict[int, int] = {}
        get = new.get
        for key, val in states.items():
            ca = (key >> sa) & mask
            cb = (key >> sb) & mask
            # towards a: factor x_a, sign +
            if ca < ta and cb + rb >= tb and ca + 1 + ra >= ta:
                k = key + ia - za - zb
                new[k] = get(k, 0) + val
            # towards b: factor -x_b
            if cb < tb and ca + ra >= ta and cb + 1 + rb >= tb:
                k = key + ib - za - zb
                new[k] = get(k, 0) - val
        states = {k: v for k, v in new.items() if v}
        if len(states) > budget:
            raise BudgetExceeded(f"{len(states)} live states exceed budget {budget}")
        if not states:
            return 0
        if step % 4 == 0:
            deadline.check()
        for x, r in ((a, ra), (b, rb)):
            if r == 0:
                free_slots.append(slot_of.pop(x))
    return states.get(0, 0)


def coefficient_dfs(H: DerivedGraph, target: Sequence[int], *, split_depth: int = 0,
                    workers: int = 1) -> int:
    """Plain depth-first signed orientation count, without state merging.

    Exponential in the number of edges; kept as an independent route for
    checking :func:`coefficient`. With ``split_depth > 0`` the first decisions
    are enumerated up front and the subtrees summed, optionally in a process
    pool of ``workers``.
    """
    target = _check_target(H, target)
    seq = edge_order(H)
    prefixes = _dfs_prefixes(H, target, seq, split_depth)
    tasks = [(H.n, seq, target, H.degrees(), pre) for pre in prefixes]
    if workers > 1 and len(tasks) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=workers) as pool:
            return sum(pool.map(_dfs_task, tasks))
    return sum(_dfs_task(t) for t in tasks)


def _dfs_prefixes(H, target, seq, depth):
    depth = min(depth, len(seq))
    return [tuple((c >> i) & 1 for i in range(depth)) for c in range(1 << depth)]


def _dfs_task(args) -> int:
    n, seq, target, degs, prefix = args
    indeg = [0] * n
    remaining = list(degs)
    m = len(seq)

    def rec(i: int) -> int:
        if i == m:
            return 1
        a, b = seq[i]
        remaining[a] -= 1
        remaining[b] -= 1
        total = 0
        choices = (prefix[i],) if i < len(prefix) else (0, 1)
        for c in choices:
            head, other = (a, b) if c == 0 else (b, a)
            if indeg[head] < target[head] and indeg[other] + remaining[other] >= target[other]:
                indeg[head] += 1
                if indeg[head] + remaining[head] >= target[head]:
                    sub = rec(i + 1)
                    total += sub if c == 0 else -sub
                indeg[head] -= 1
        remaining[a] += 1
        remaining[b] += 1
        return total

    return rec(0)


# --- truncated expansion ------------------------------------------------------


def _caps_vector(H: DerivedGraph, cap) -> list[int]:
    if isinstance(cap, int):
        return [cap] * H.n
    caps = [int(c) for c in cap]
    if len(caps) != H.n:
        raise ValueError(f"caps has {len(caps)} entries, graph has {H.n} vertices")
    return caps


def truncated_expansion(H: DerivedGraph, cap, *, budget: int | None = None,
                        deadline: Deadline = NO_DEADLINE) -> dict[tuple[int, ...], int]:
    """All non-vanishing monomials whose exponents stay within ``cap``.

    ``cap`` is an int or one cap per vertex. Edge factors are multiplied in
    one by one and any partial monomial that already exceeds a cap is
    dropped, which is sound because exponents only grow. Partial monomials
    that can no longer place their remaining edges within the caps are
    dropped as well.
    """
    caps = _caps_vector(H, cap)
    if any(c < 0 for c in caps):
        return {}
    if H.m == 0:
        return {tuple([0] * H.n): 1}
    if sum(min(c, d) for c, d in zip(caps, H.degrees())) < H.m:
        return {}
    budget = default_budget() if budget is None else budget
    seq = edge_order(H)
    width = max(1, max(caps).bit_length())
    mask = (1 << width) - 1
    remaining = H.degrees()
    # slack[v]: how much v can still absorb = min(cap - exponent, remaining edges);
    # tracked only for the global feasibility test below
    states: dict[int, int] = {0: 1}
    m = len(seq)
    for step, (a, b) in enumerate(seq):
        sa, sb = a * width, b * width
        ca_cap, cb_cap = caps[a], caps[b]
        ia, ib = 1 << sa, 1 << sb
        new: dict[int, int] = {}
        get = new.get
        for key, val in states.items():
            if ((key >> sa) & mask) < ca_cap:
                k = key + ia
                new[k] = get(k, 0) + val
            if ((key >> sb) & mask) < cb_cap:
                k = key + ib
                new[k] = get(k, 0) - val
        remaining[a] -= 1
        remaining[b] -= 1
        left = m - step - 1
        if left and step % 3 == 2:
            new = _slack_filter(new, caps, remaining, width, mask, left)
        states = {k: v for k, v in new.items() if v}
        if len(states) > budget:
            raise BudgetExceeded(f"{len(states)} live monomials exceed budget {budget}")
        if not states:
            return {}
        if step % 4 == 0:
            deadline.check()
    return dict(sorted((_unpack(k, H.n, width, mask), v) for k, v in states.items()))


def _slack_filter(states, caps, remaining, width, mask, left):
    live = [v for v in range(len(caps)) if remaining[v] > 0]
    out = {}
    for key, val in states.items():
        room = 0
        for v in live:
            r = caps[v] - ((key >> (v * width)) & mask)
            room += r if r < remaining[v] else remaining[v]
        if room >= left:
            out[key] = val
    return out


def _unpack(key: int, n: int, width: int, mask: int) -> tuple[int, ...]:
    return tuple((key >> (i * width)) & mask for i in range(n))


# --- orientations ---------------------------------------------------------------


def indegrees(n: int, arcs: Iterable[tuple[int, int]]) -> tuple[int, ...]:
    deg = [0] * n
    for _, head in arcs:
        deg[head] += 1
    return tuple(deg)


def orientation_with_caps(H: DerivedGraph, caps: Sequence[int]) -> list[tuple[int, int]] | None:
    """An orientation with in-degree at most ``caps[v]`` everywhere, or None.

    Max-flow from the edges to vertex slots: each edge sends one unit to
    the endpoint it will point at.
    """
    if H.m == 0:
        return []
    if sum(min(c, d) for c, d in zip(caps, H.degrees())) < H.m:
        return None
    # integer node ids keep networkx's internal iteration order independent of hashing
    S, T, m = 0, 1, H.m
    D = nx.DiGraph()
    for i, (u, v) in enumerate(H.edges):
        D.add_edge(S, 2 + i, capacity=1)
        D.add_edge(2 + i, 2 + m + u, capacity=1)
        D.add_edge(2 + i, 2 + m + v, capacity=1)
    for v in range(H.n):
        if caps[v] > 0:
            D.add_edge(2 + m + v, T, capacity=int(caps[v]))
    if T not in D:
        return None
    value, flow = nx.maximum_flow(D, S, T)
    if value < H.m:
        return None
    arcs = []
    for i, (u, v) in enumerate(H.edges):
        head = u if flow[2 + i][2 + m + u] == 1 else v
        arcs.append((v if head == u else u, head))
    return arcs


def min_max_indegree_orientation(H: DerivedGraph) -> tuple[list[tuple[int, int]], int]:
    """Orientation minimising the largest in-degree, and that in-degree."""
    if H.m == 0:
        return [], 0
    lo = -(-H.m // H.n)
    hi = H.max_degree()
    best = orientation_with_caps(H, [hi] * H.n)
    while lo < hi:
        mid = (lo + hi) // 2
        arcs = orientation_with_caps(H, [mid] * H.n)
        if arcs is None:
            lo = mid + 1
        else:
            hi, best = mid, arcs
    if best is None or max(indegrees(H.n, best)) != lo:
        best = orientation_with_caps(H, [lo] * H.n)
    return best, lo


def degeneracy_orientation(H: DerivedGraph) -> tuple[list[tuple[int, int]], tuple[int, ...]]:
    """Acyclic orientation from smallest-degree-last elimination.

    A removed vertex receives all of its still-present edges, so its
    in-degree is at most the degeneracy of ``H``.
    """
    alive = set(range(H.n))
    deg = H.degrees()
    arcs = []
    while alive:
        v = min(alive, key=lambda x: (deg[x], x))
        alive.remove(v)
        for u in sorted(H.adjacency[v]):
            if u in alive:
                arcs.append((u, v))
                deg[u] -= 1
    return arcs, indegrees(H.n, arcs)


def degeneracy(H: DerivedGraph) -> int:
    return max(degeneracy_orientation(H)[1], default=0)


def is_acyclic(n: int, arcs: Sequence[tuple[int, int]]) -> bool:
    D = nx.DiGraph()
    D.add_nodes_from(range(n))
    D.add_edges_from(arcs)
    return nx.is_directed_acyclic_graph(D)


# --- Alon-Tarsi numbers ---------------------------------------------------------


@dataclass
class ATResult:
    k: int | None
    max_k: int
    witnesses: dict[tuple[int, ...], int] = field(default_factory=dict)

    @property
    def exceeded(self) -> bool:
        return self.k is None

    def witness(self) -> tuple[tuple[int, ...], int] | None:
        if not self.witnesses:
            return None
        return next(iter(self.witnesses.items()))


def at_lower_bound(H: DerivedGraph) -> int:
    """No orientation has all in-degrees below the average, so AT >= ceil(m/n) + 1."""
    if H.n == 0:
        return 1
    return -(-H.m // H.n) + 1


def alon_tarsi_number(H: DerivedGraph, max_k: int, *, budget: int | None = None,
                      deadline: Deadline = NO_DEADLINE) -> ATResult:
    """Least ``k`` such that a non-vanishing monomial has all exponents <= k-1.

    Ascends from :func:`at_lower_bound`; every monomial found at the winning
    cap is returned in ``witnesses``.
    """
    if max_k < 1:
        raise ValueError("max_k must be at least 1")
    for k in range(at_lower_bound(H), max_k + 1):
        found = truncated_expansion(H, k - 1, budget=budget, deadline=deadline)
        if found:
            return ATResult(k, max_k, found)
    return ATResult(None, max_k)


def bipartite_at(H: DerivedGraph) -> int:
    """AT of a bipartite graph: least possible maximum in-degree plus one."""
    if bipartition(H) is None:
        raise NotBipartite(f"{H.name or 'graph'} has an odd cycle")
    return min_max_indegree_orientation(H)[1] + 1


def bipartite_sign(H: DerivedGraph, target: Sequence[int]) -> int:
    """Predicted sign of the coefficient of any achievable in-degree vector.

    Each edge factor is ``(x_u - x_v)`` with ``u < v``; picking ``x_v`` costs
    a sign. In a bipartite graph with a fixed side for every vertex, one can
    rewrite every factor as ``(x - y)`` with ``x`` on side 0 at the cost of
    one global sign per flipped factor.
    """
    side = bipartition(H)
    if side is None:
        raise NotBipartite("graph has an odd cycle")
    flips = sum(1 for u, v in H.edges if side[u] == 1)
    ones = sum(t for t, s in zip(target, side) if s == 1)
    return (-1) ** (flips + ones)


# --- searching for certificates -------------------------------------------------


def find_nonvanishing(H: DerivedGraph, caps, *, max_candidates: int = 200,
                      expansion_edge_limit: int = 16, budget: int | None = None,
                      deadline: Deadline = NO_DEADLINE) -> tuple[tuple[int, ...], int] | None:
    """Some non-vanishing monomial within ``caps``, with its coefficient.

    Candidates, in order: the degeneracy monomial if it fits; for graphs with
    at most ``expansion_edge_limit`` edges the full capped expansion; otherwise
    achievable in-degree vectors reached from a capped orientation by
    moving one unit of in-degree at a time (breadth first, at most
    ``max_candidates`` per cap level). The caps are first tightened to the
    least achievable maximum in-degree and relaxed one level at a time.
    Returns None when nothing was found, which is not a proof of absence
    unless the expansion ran.
    """
    caps = _caps_vector(H, caps)
    _, deg_t = degeneracy_orientation(H)
    if all(t <= c for t, c in zip(deg_t, caps)):
        c = coefficient(H, deg_t, budget=budget, deadline=deadline)
        if c:
            return deg_t, c
    if H.m <= expansion_edge_limit:
        found = truncated_expansion(H, caps, budget=budget, deadline=deadline)
        return next(iter(found.items())) if found else None
    # tighter uniform caps first: fewer orientations, less room for cancellation
    _, low = min_max_indegree_orientation(H)
    tried: set[tuple[int, ...]] = set()
    for level in range(low, max(caps, default=0) + 1):
        tight = [min(c, level) for c in caps]
        for t in islice(_candidate_targets(H, tight), max_candidates):
            if t in tried:
                continue
            tried.add(t)
            c = coefficient(H, t, budget=budget, deadline=deadline)
            if c:
                return t, c
    return None


def _candidate_targets(H: DerivedGraph, caps: Sequence[int]):
    """Achievable in-degree vectors within ``caps``, breadth first.

    Reversing a directed path from ``u`` to ``w`` moves one unit of in-degree
    from ``w`` to ``u``, so every neighbour comes with its own orientation.
    """
    arcs = orientation_with_caps(H, caps)
    if arcs is None:
        return
    start = indegrees(H.n, arcs)
    seen = {start}
    queue = deque([(start, arcs)])
    while queue:
        t, arcs = queue.popleft()
        yield t
        out: list[list[tuple[int, int]]] = [[] for _ in range(H.n)]
        for i, (tail, head) in enumerate(arcs):
            out[tail].append((head, i))
        for u in range(H.n):
            if t[u] >= caps[u] or not out[u]:
                continue
            parent = {u: None}
            frontier = deque([u])
            while frontier:
                x = frontier.popleft()
                for y, i in out[x]:
                    if y not in parent:
                        parent[y] = (x, i)
                        frontier.append(y)
            for w in sorted(parent):
                if w == u:
                    continue
                t2 = list(t)
                t2[u] += 1
                t2[w] -= 1
                t2 = tuple(t2)
                if t2 in seen:
                    continue
                seen.add(t2)
                arcs2 = list(arcs)
                y = w
                while parent[y] is not None:
                    x, i = parent[y]
                    arcs2[i] = (y, x)
                    y = x
                queue.append((t2, arcs2))


# --- product certificates -------------------------------------------------------


class VanishingPart(ValueError):
    """A part monomial handed to :func:`product_certificate` has coefficient zero."""


@dataclass
class ProductCertificate:
    monomial: tuple[int, ...]
    coefficient: int
    part_coefficients: dict[str, int]
    max_exponent: int

    @property
    def nonzero(self) -> bool:
        return self.coefficient != 0

    @property
    def factorization_unique(self) -> bool:
        """|c(M)| equals the product of the parts' |coefficients|."""
        return abs(self.coefficient) == math.prod(abs(c) for c in self.part_coefficients.values())

    def to_json(self) -> dict:
        return {
            "monomial": list(self.monomial),
            "coefficient": str(self.coefficient),
            "part_coefficients": {k: str(v) for k, v in self.part_coefficients.items()},
            "max_exponent": self.max_exponent,
            "factorization_unique": self.factorization_unique,
        }


def product_certificate(H: DerivedGraph, part_monomials: Mapping[str, Sequence[int]], *,
                        budget: int | None = None,
                        deadline: Deadline = NO_DEADLINE) -> ProductCertificate:
    """Certify the product of per-part monomials inside the whole polynomial.

    Keys of ``part_monomials`` are part names of ``H``, or several joined by
    ``+`` (e.g. ``"G_v+G_f+B_vf"``). Every part of ``H`` must be covered
    exactly once. Each monomial is a full-length exponent vector of ``H``.

    Raises:
        ValueError: the keys do not partition the parts.
        VanishingPart: a part monomial has coefficient zero.
        DegreeSumMismatch: a part monomial has the wrong total degree.
    """
    covered = []
    part_coeffs = {}
    total = [0] * H.n
    for key, mono in part_monomials.items():
        names = key.split("+")
        covered.extend(names)
        sub = H.part_subgraph(names)
        c = coefficient(sub, mono, budget=budget, deadline=deadline)
        if c == 0:
            raise VanishingPart(f"part monomial for {key} vanishes")
        part_coeffs[key] = c
        total = [a + b for a, b in zip(total, mono)]
    if sorted(covered) != sorted(H.parts):
        raise ValueError(f"part keys {sorted(covered)} do not partition {sorted(H.parts)}")
    total = tuple(total)
    c = coefficient(H, total, budget=budget, deadline=deadline)
    return ProductCertificate(total, c, part_coeffs, max(total, default=0))
