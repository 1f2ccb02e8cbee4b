"""Thin modules over path algebras of tree quivers.

A thin module is stored as its support only.  Over a tree, the projective
``P(i)``, the simple ``S(i)`` and every standard module are determined by their
supports, so no arrow maps or ground field are ever built.

Permutations are passed as sequences of images: ``sigma[i - 1]`` is the
priority of vertex ``i``.
"""

from __future__ import annotations

import heapq
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .quiver import Quiver, reachable_set

DEFAULT_ORACLE_LIMIT = 7


class FiltrationError(RuntimeError):
    """Internal invariant violation while building a filtration."""


class OracleLimitError(ValueError):
    pass


@dataclass(frozen=True)
class ThinModule:
    quiver: Quiver
    support: frozenset[int]

    @property
    def dimension(self) -> int:
        return len(self.support)


def projective(q: Quiver, i: int) -> ThinModule:
    return ThinModule(q, reachable_set(q, i))


def simple(q: Quiver, i: int) -> ThinModule:
    return ThinModule(q, frozenset({i}))


def _split(q: Quiver, sigma: Sequence[int], i: int) -> tuple[list[int], list[int]]:
    """Support of the standard module at ``i`` and the boundary vertices, in
    BFS order from ``i``."""
    top = sigma[i - 1]
    kept = {i}
    support, boundary = [i], []
    for v, parent in q.path_trees[i - 1][1:]:
        if parent not in kept:
            continue
        if sigma[v - 1] <= top:
            kept.add(v)
            support.append(v)
        else:
            boundary.append(v)
    return support, boundary


def standard_support(q: Quiver, sigma: Sequence[int], i: int) -> ThinModule:
    """The standard module at ``i``: the largest quotient of ``P(i)`` whose
    composition factors ``S(j)`` all have ``sigma(j) <= sigma(i)``.

    Its support is every ``j`` reachable from ``i`` such that the whole path
    ``i ~> j`` stays at priority ``<= sigma(i)``.
    """
    return ThinModule(q, frozenset(_split(q, sigma, i)[0]))


def boundary_set(q: Quiver, sigma: Sequence[int], i: int) -> frozenset[int]:
    """Generators of the kernel of ``P(i) -> Delta(i)``.

    The kernel is projective (path algebras are hereditary) and equals the
    direct sum of ``P(j)`` over the returned vertices.
    """
    return frozenset(_split(q, sigma, i)[1])


def standard_masks(q: Quiver, sigma: Sequence[int]) -> tuple[int, ...]:
    """Bitmask encoding (bit ``v - 1``) of every standard support; the hot path
    of brute-force enumeration."""
    masks = []
    for i, tree in enumerate(q.path_trees, start=1):
        top = sigma[i - 1]
        mask = 1 << (i - 1)
        for v, parent in tree[1:]:
            if (mask >> (parent - 1)) & 1 and sigma[v - 1] <= top:
                mask |= 1 << (v - 1)
        masks.append(mask)
    return tuple(masks)


def end_is_local(m: ThinModule) -> bool:
    """Whether ``End(m)`` is local.

    For a thin module over a tree this holds exactly when the support is
    connected; a disconnected support splits the module into summands.
    """
    if not m.support:
        return False
    start = next(iter(m.support))
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in m.quiver.neighbors[v]:
            if w in m.support and w not in seen:
                seen.add(w)
                stack.append(w)
    return seen == m.support


# -- filtrations ------------------------------------------------------------

@dataclass(frozen=True)
class FiltrationStep:
    vertex: int
    support: frozenset[int]
    remaining: tuple[int, ...]

    def to_dict(self) -> dict:
        return {"vertex": self.vertex, "support": sorted(self.support),
                "remaining": list(self.remaining)}


@dataclass(frozen=True)
class FiltrationTrace:
    """Successive standard factors of ``A_A``, top first.

    ``remaining`` is the multiset of projective generators left after the step.
    """

    steps: tuple[FiltrationStep, ...]

    @property
    def complete(self) -> bool:
        return not self.steps or not self.steps[-1].remaining

    @property
    def total_dimension(self) -> int:
        return sum(len(s.support) for s in self.steps)

    def factor_multiset(self) -> Counter[int]:
        return Counter(s.vertex for s in self.steps)

    def to_dict(self) -> dict:
        return {"steps": [s.to_dict() for s in self.steps]}


def regular_dimension(q: Quiver) -> int:
    return sum(len(t) for t in q.path_trees)


def peel_filtration(q: Quiver, sigma: Sequence[int]) -> FiltrationTrace:
    """Filter ``A_A = P(1) + ... + P(n)`` by standard modules.

    The generator of highest priority is peeled first: ``P(k)`` is replaced by
    the projective summands of the kernel of ``P(k) -> Delta(k)``.
    """
    heap = [(-sigma[k - 1], k) for k in q.vertices]
    heapq.heapify(heap)
    steps = []
    while heap:
        _, k = heapq.heappop(heap)
        support, boundary = _split(q, sigma, k)
        for j in boundary:
            heapq.heappush(heap, (-sigma[j - 1], j))
        steps.append(FiltrationStep(k, frozenset(support), tuple(sorted(k for _, k in heap))))
    trace = FiltrationTrace(tuple(steps))
    if trace.total_dimension != regular_dimension(q):
        raise FiltrationError("factor dimensions do not add up to dim A")
    return trace


def _kernel_generators(q: Quiver, k: int, quotient: frozenset[int]) -> list[int] | None:
    """Decompose ``P(k)`` minus ``quotient`` into projectives from scratch.

    Each connected piece of the leftover support must have a single top ``j``
    and coincide with the support of ``P(j)``; otherwise None.
    """
    rest = set(reachable_set(q, k)) - quotient
    gens = []
    while rest:
        start = min(rest)
        piece = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for w in q.neighbors[v]:
                if w in rest and w not in piece:
                    piece.add(w)
                    stack.append(w)
        rest -= piece
        tops = [v for v in piece if not any(p in piece for p in q.predecessors[v])]
        if len(tops) != 1 or reachable_set(q, tops[0]) != piece:
            return None
        gens.append(tops[0])
    return gens


def exhaustive_filtration(
    q: Quiver, sigma: Sequence[int], limit: int = DEFAULT_ORACLE_LIMIT
) -> FiltrationTrace | None:
    """Backtracking search for any standard filtration of ``A_A``.

    States are multisets of projective generators.  From a state, every present
    generator may be peeled next; kernels are recomputed independently of
    :func:`boundary_set`.  Returns None if no branch reaches the empty state.
    """
    if q.n > limit:
        raise OracleLimitError(f"oracle is capped at n <= {limit}, got n = {q.n}")
    standards = {k: standard_support(q, sigma, k).support for k in q.vertices}
    dead: set[tuple[int, ...]] = set()

    def search(state: tuple[int, ...]) -> list[FiltrationStep] | None:
        if not state:
            return []
        if state in dead:
            return None
        for k in sorted(set(state)):
            gens = _kernel_generators(q, k, standards[k])
            if gens is None:
                continue
            rest = list(state)
            rest.remove(k)
            nxt = tuple(sorted(rest + gens))
            tail = search(nxt)
            if tail is not None:
                return [FiltrationStep(k, standards[k], nxt)] + tail
        dead.add(state)
        return None

    steps = search(tuple(q.vertices))
    return None if steps is None else FiltrationTrace(tuple(steps))
