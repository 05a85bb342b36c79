"""Paintability (online list colouring) by exhaustive game search.

A graph is p-paintable when every vertex has a positive token count and,
for every nonempty set ``X`` Lister may present, Painter can colour an
independent ``X' ⊆ X`` such that the rest of the graph stays paintable
with one token taken from each vertex of ``X - X'``.

Two sound reductions keep the search small:

* Painter only needs to consider maximal independent subsets of ``X``:
  colouring more vertices leaves a subgraph with the same tokens, and
  paintability is inherited by induced subgraphs.
* A vertex with more tokens than neighbours can always be coloured
  eventually, so it is dropped from the residual graph.

States are memoised by the canonical form of the residual graph with its
tokens.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .canon import canonical_form
from .derive import DerivedGraph
from .errors import SizeLimitExceeded
from .polynomial import coefficient, truncated_expansion

DEFAULT_LIMIT = 10


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _popcount(mask: int) -> int:
    return bin(mask).count("1")


class PaintSolver:
    """Game solver for one graph; owns its memo table."""

    def __init__(self, H: DerivedGraph, limit: int = DEFAULT_LIMIT, reduce: bool = True):
        if H.n > limit:
            raise SizeLimitExceeded(f"{H.n} vertices exceed the paint solver limit of {limit}")
        self.H = H
        self.n = H.n
        self.adj = [sum(1 << w for w in a) for a in H.adjacency]
        self.reduce = reduce
        self.memo: dict[tuple, bool] = {}
        self._mis_cache: dict[int, list[int]] = {}

    # -- helpers ------------------------------------------------------------

    def _maximal_independent(self, X: int) -> list[int]:
        """Maximal independent subsets of ``X``, largest first."""
        if X in self._mis_cache:
            return self._mis_cache[X]
        out = []

        def grow(chosen: int, cand: int, excluded: int):
            if not cand:
                if not excluded:
                    out.append(chosen)
                return
            v = (cand & -cand).bit_length() - 1
            bit = 1 << v
            nb = self.adj[v]
            grow(chosen | bit, cand & ~nb & ~bit, excluded & ~nb)
            grow(chosen, cand & ~bit, excluded | bit)

        # Bron-Kerbosch on the complement: independent sets in X
        grow(0, X, 0)
        out.sort(key=lambda s: (-_popcount(s), s))
        self._mis_cache[X] = out
        return out

    def _normalise(self, mask: int, p: Sequence[int]) -> int:
        if not self.reduce:
            return mask
        changed = True
        while changed:
            changed = False
            for v in _bits(mask):
                if p[v] > _popcount(self.adj[v] & mask):
                    mask &= ~(1 << v)
                    changed = True
        return mask

    def _key(self, mask: int, p: Sequence[int]) -> tuple:
        verts = list(_bits(mask))
        pos = {v: i for i, v in enumerate(verts)}
        adj = [sum(1 << pos[w] for w in _bits(self.adj[v] & mask)) for v in verts]
        return canonical_form(adj, [p[v] for v in verts])

    # -- game ---------------------------------------------------------------

    def wins(self, mask: int, p: Sequence[int]) -> bool:
        """Painter wins on the residual vertex set ``mask`` with tokens ``p``."""
        for v in _bits(mask):
            if p[v] <= 0:
                return False
        mask = self._normalise(mask, p)
        if not mask:
            return True
        key = self._key(mask, p)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        result = all(self._reply(mask, p, X) is not None for X in self._lister_moves(mask))
        self.memo[key] = result
        return result

    def _lister_moves(self, mask: int) -> Iterator[int]:
        verts = list(_bits(mask))
        # larger presentations first: they tend to refute faster
        subsets = []
        for c in range(1, 1 << len(verts)):
            subsets.append(sum(1 << verts[i] for i in range(len(verts)) if c >> i & 1))
        subsets.sort(key=lambda s: (-_popcount(s), s))
        return iter(subsets)

    def _reply(self, mask: int, p: Sequence[int], X: int) -> int | None:
        for Xp in self._maximal_independent(X):
            q = list(p)
            for v in _bits(X & ~Xp):
                q[v] -= 1
            if self.wins(mask & ~Xp, q):
                return Xp
        return None

    def is_paintable(self, p: Sequence[int]) -> bool:
        p = _check_profile(self.n, p)
        return self.wins((1 << self.n) - 1, p)

    def winning_reply(self, p: Sequence[int], X: Sequence[int],
                      mask: int | None = None) -> frozenset[int] | None:
        """Independent ``X' ⊆ X`` leaving a paintable state, or None."""
        p = _check_profile(self.n, p)
        mask = (1 << self.n) - 1 if mask is None else mask
        Xm = sum(1 << v for v in X)
        if not Xm or Xm & ~mask:
            raise ValueError("X must be a nonempty subset of the residual vertices")
        if any(p[v] <= 0 for v in _bits(mask)):
            return None
        r = self._reply(mask, p, Xm)
        return None if r is None else frozenset(_bits(r))

    def strategy_lines(self, p: Sequence[int], max_depth: int = 3, max_lines: int = 2000) -> list[str]:
        """Text rendering of Painter's winning strategy (or Lister's refutation)."""
        p = list(_check_profile(self.n, p))
        lines: list[str] = []
        labels = [el.label for el in self.H.vertices]

        def fmt(mask):
            return "{" + ",".join(labels[v] for v in _bits(mask)) + "}"

        def walk(mask, p, depth):
            if len(lines) >= max_lines:
                return
            pad = "  " * depth
            tokens = " ".join(f"{labels[v]}:{p[v]}" for v in _bits(mask))
            if not mask:
                lines.append(f"{pad}all coloured")
                return
            if not self.wins(mask, p):
                lines.append(f"{pad}state [{tokens}] is lost for Painter")
                return
            if depth >= max_depth:
                lines.append(f"{pad}state [{tokens}] ... (Painter wins)")
                return
            lines.append(f"{pad}state [{tokens}]")
            for X in self._lister_moves(mask):
                Xp = self._reply(mask, p, X)
                lines.append(f"{pad}  Lister {fmt(X)} -> Painter colours {fmt(Xp)}")
                q = list(p)
                for v in _bits(X & ~Xp):
                    q[v] -= 1
                walk(mask & ~Xp, q, depth + 2)

        walk((1 << self.n) - 1, p, 0)
        if len(lines) >= max_lines:
            lines.append("... (truncated)")
        return lines


def _check_profile(n: int, p: Sequence[int]) -> tuple[int, ...]:
    p = tuple(int(x) for x in p)
    if len(p) != n:
        raise ValueError(f"profile has {len(p)} entries, graph has {n} vertices")
    return p


def is_paintable(H: DerivedGraph, p: Sequence[int], limit: int = DEFAULT_LIMIT) -> bool:
    return PaintSolver(H, limit).is_paintable(p)


def paint_number(H: DerivedGraph, max_k: int, limit: int = DEFAULT_LIMIT) -> int | None:
    """Least uniform token count ``k`` that is winning for Painter, or None above ``max_k``."""
    solver = PaintSolver(H, limit)
    for k in range(1, max_k + 1):
        if solver.is_paintable([k] * H.n):
            return k
    return None


def winning_reply(H: DerivedGraph, p: Sequence[int], X: Sequence[int],
                  limit: int = DEFAULT_LIMIT) -> frozenset[int] | None:
    return PaintSolver(H, limit).winning_reply(p, X)


def schauz_check(H: DerivedGraph, monomial: Sequence[int], solver: PaintSolver | None = None) -> bool:
    """Paintability with one more token than each exponent of a non-vanishing monomial.

    A False return contradicts Schauz's theorem and means a bug somewhere.
    """
    if coefficient(H, monomial) == 0:
        raise ValueError("monomial vanishes; Schauz's theorem does not apply")
    solver = solver or PaintSolver(H)
    return solver.is_paintable([a + 1 for a in monomial])


@dataclass(frozen=True)
class LemmaWitness:
    colored: frozenset[int]
    monomial: tuple[int, ...]
    coefficient: int
    exact_on_rest: bool


class LemmaViolation(AssertionError):
    """No independent subset satisfied the lemma: an implementation bug."""


def independent_subsets(H: DerivedGraph, X: Sequence[int]) -> list[frozenset[int]]:
    """All independent subsets of ``X`` (including the empty set), largest first."""
    xs = sorted(set(X))
    out = []
    for c in range(1 << len(xs)):
        S = [xs[i] for i in range(len(xs)) if c >> i & 1]
        if all(b not in H.adjacency[a] for i, a in enumerate(S) for b in S[i + 1:]):
            out.append(frozenset(S))
    out.sort(key=lambda s: (-len(s), sorted(s)))
    return out


def lemma_check(H: DerivedGraph, X: Sequence[int], monomial: Sequence[int]) -> LemmaWitness:
    """Find the independent ``X' ⊆ X`` promised by the painting lemma.

    ``P(H - X')`` must have a non-vanishing monomial with exponents at most
    ``monomial - 1`` on ``X - X'`` and at most ``monomial`` on the other
    remaining vertices. ``exact_on_rest`` records whether the stronger form
    also holds: ``P(H)`` itself has a non-vanishing monomial with exponents
    at most ``monomial - 1`` on ``X - X'`` and exactly ``monomial`` off ``X``.

    Raises:
        ValueError: ``X`` is empty or ``monomial`` vanishes.
        LemmaViolation: no witness exists (cannot happen for a correct solver).
    """
    Xs = set(X)
    if not Xs:
        raise ValueError("X must be nonempty")
    monomial = tuple(monomial)
    if coefficient(H, monomial) == 0:
        raise ValueError("monomial vanishes")
    for Xp in independent_subsets(H, Xs):
        keep = [v for v in range(H.n) if v not in Xp]
        caps = [monomial[v] - 1 if v in Xs else monomial[v] for v in keep]
        if any(c < 0 for c in caps):
            continue
        found = truncated_expansion(H.induced(keep), caps)
        if not found:
            continue
        mono, coeff = next(iter(found.items()))
        full = [0] * H.n
        for i, v in enumerate(keep):
            full[v] = mono[i]
        return LemmaWitness(Xp, tuple(full), coeff, _exact_form(H, Xs, Xp, monomial))
    raise LemmaViolation(f"no independent subset of {sorted(Xs)} works for {monomial}")


def _exact_form(H: DerivedGraph, Xs: set[int], Xp: frozenset[int], monomial) -> bool:
    degs = H.degrees()
    caps = [degs[v] if v in Xp else monomial[v] - 1 if v in Xs else monomial[v]
            for v in range(H.n)]
    if any(c < 0 for c in caps):
        return False
    found = truncated_expansion(H, caps)
    rest = [v for v in range(H.n) if v not in Xs]
    return any(all(m[v] == monomial[v] for v in rest) for m in found)
