"""Tree quivers: construction, validation, serialization and shape recognition.

Vertices are always ``1..n``.  Arrows are ordered ``(source, target)`` pairs and
the underlying undirected graph must be a tree.
"""

from __future__ import annotations

import enum
import itertools
import json
import random
import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Iterator, NamedTuple, Sequence

import networkx as nx

Arrow = tuple[int, int]


class QuiverError(ValueError):
    """Base class for malformed quiver input."""


class QuiverParseError(QuiverError):
    pass


class QuiverValidationError(QuiverError):
    pass


class DeconcatenationError(ValueError):
    pass


@dataclass(frozen=True)
class Quiver:
    """A finite quiver whose underlying graph is a tree.

    ``arrows`` keeps the order it was given in, so serialization round-trips.
    Use :attr:`arrow_set` for order-insensitive comparisons.
    """

    n: int
    arrows: tuple[Arrow, ...] = field(default=())

    def __post_init__(self) -> None:
        arrows = tuple((int(s), int(t)) for s, t in self.arrows)
        object.__setattr__(self, "arrows", arrows)
        _validate_tree(self.n, arrows)

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    @cached_property
    def arrow_set(self) -> frozenset[Arrow]:
        return frozenset(self.arrows)

    @cached_property
    def successors(self) -> dict[int, tuple[int, ...]]:
        out: dict[int, list[int]] = {v: [] for v in self.vertices}
        for s, t in self.arrows:
            out[s].append(t)
        return {v: tuple(sorted(ws)) for v, ws in out.items()}

    @cached_property
    def predecessors(self) -> dict[int, tuple[int, ...]]:
        inc: dict[int, list[int]] = {v: [] for v in self.vertices}
        for s, t in self.arrows:
            inc[t].append(s)
        return {v: tuple(sorted(ws)) for v, ws in inc.items()}

    @cached_property
    def neighbors(self) -> dict[int, tuple[int, ...]]:
        return {
            v: tuple(sorted(self.successors[v] + self.predecessors[v]))
            for v in self.vertices
        }

    def degree(self, v: int) -> int:
        return len(self.neighbors[v])

    def is_sink(self, v: int) -> bool:
        return not self.successors[v]

    def is_source(self, v: int) -> bool:
        return not self.predecessors[v]

    @cached_property
    def path_trees(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """For each vertex ``i``, the BFS list of ``(vertex, parent)`` over
        everything reachable from ``i``; the parent of ``i`` itself is 0.

        In a tree the parent is the immediate predecessor of the vertex on the
        unique directed path from ``i``.
        """
        trees = []
        for i in self.vertices:
            order = [(i, 0)]
            queue = deque([i])
            while queue:
                v = queue.popleft()
                for w in self.successors[v]:
                    order.append((w, v))
                    queue.append(w)
            trees.append(tuple(order))
        return tuple(trees)

    def relabel(self, mapping: Sequence[int] | dict[int, int]) -> Quiver:
        """Return the quiver with vertex ``v`` renamed to ``mapping[v]``.

        A sequence is read 1-based: ``mapping[v - 1]`` is the new name of ``v``.
        """
        if isinstance(mapping, dict):
            new = mapping
        else:
            new = {v: mapping[v - 1] for v in self.vertices}
        return Quiver(self.n, tuple((new[s], new[t]) for s, t in self.arrows))


def _validate_tree(n: int, arrows: tuple[Arrow, ...]) -> None:
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise QuiverValidationError(f"vertex count must be a positive integer, got {n!r}")
    seen: set[Arrow] = set()
    for s, t in arrows:
        if not (1 <= s <= n and 1 <= t <= n):
            raise QuiverValidationError(f"arrow {s}->{t} leaves the vertex range 1..{n}")
        if s == t:
            raise QuiverValidationError(f"loop at vertex {s}")
        if (s, t) in seen:
            raise QuiverValidationError(f"repeated arrow {s}->{t}")
        seen.add((s, t))
    parent = list(range(n + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for s, t in arrows:
        rs, rt = find(s), find(t)
        if rs == rt:
            raise QuiverValidationError(f"arrow {s}->{t} closes a cycle")
        parent[rs] = rt
    if len(arrows) != n - 1:
        raise QuiverValidationError(
            f"a tree on {n} vertices needs {n - 1} arrows, got {len(arrows)} (disconnected)"
        )


# -- file formats -----------------------------------------------------------

_TEXT_ARROW = re.compile(r"^\s*(\d+)\s*->\s*(\d+)\s*$")


def parse_quiver(text: str) -> Quiver:
    """Parse either the JSON form or the line-based text form."""
    stripped = text.strip()
    if not stripped:
        raise QuiverParseError("empty quiver description")
    if stripped.startswith("{"):
        return _parse_json(stripped)
    return _parse_text(stripped)


def _parse_json(text: str) -> Quiver:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise QuiverParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(obj, dict) or set(obj) != {"vertices", "arrows"}:
        raise QuiverParseError('expected an object with keys "vertices" and "arrows"')
    n, arrows = obj["vertices"], obj["arrows"]
    if not _is_int(n):
        raise QuiverParseError(f'"vertices" must be an integer, got {n!r}')
    if not isinstance(arrows, list):
        raise QuiverParseError('"arrows" must be a list')
    pairs = []
    for a in arrows:
        if not (isinstance(a, list) and len(a) == 2 and all(_is_int(x) for x in a)):
            raise QuiverParseError(f"arrow {a!r} is not a pair of integers")
        pairs.append((a[0], a[1]))
    return Quiver(n, tuple(pairs))


def _parse_text(text: str) -> Quiver:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    head = lines[0].strip()
    if not head.isdigit():
        raise QuiverParseError(f"first line must be the vertex count, got {head!r}")
    pairs = []
    for ln in lines[1:]:
        m = _TEXT_ARROW.match(ln)
        if m is None:
            raise QuiverParseError(f"cannot parse arrow line {ln!r}")
        pairs.append((int(m.group(1)), int(m.group(2))))
    return Quiver(int(head), tuple(pairs))


def _is_int(x: object) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def to_json(q: Quiver) -> str:
    return json.dumps({"vertices": q.n, "arrows": [list(a) for a in q.arrows]},
                      separators=(",", ":"))


def to_text(q: Quiver) -> str:
    return "\n".join([str(q.n)] + [f"{s} -> {t}" for s, t in q.arrows]) + "\n"


# -- constructors -----------------------------------------------------------

def make_line(n: int) -> Quiver:
    """The linearly oriented quiver ``1 -> 2 -> ... -> n``."""
    if n < 1:
        raise QuiverValidationError("a line quiver needs at least one vertex")
    return Quiver(n, tuple((i, i + 1) for i in range(1, n)))


def make_branch(s: int, t: int, u: int) -> Quiver:
    """The quiver with an ``s``-arm flowing into a branch vertex that feeds two
    out-arms of lengths ``t`` and ``u``.

    Canonical labels: the branch vertex is 1, the in-arm is ``2..s+1`` (counted
    outwards), then the first out-arm ``s+2..s+t+1`` and the second
    ``s+t+2..s+t+u+1``.
    """
    if min(s, t, u) < 0:
        raise QuiverValidationError("arm lengths must be nonnegative")
    arrows: list[Arrow] = [(i + 1, i) for i in range(1, s + 1)]
    for start, length in ((s + 2, t), (s + t + 2, u)):
        if length:
            arrows.append((1, start))
            arrows.extend((v, v + 1) for v in range(start, start + length - 1))
    return Quiver(s + t + u + 1, tuple(arrows))


def opposite(q: Quiver) -> Quiver:
    return Quiver(q.n, tuple((t, s) for s, t in q.arrows))


def reachable_set(q: Quiver, i: int) -> frozenset[int]:
    """Endpoints of directed paths starting at ``i`` (``i`` included)."""
    return frozenset(v for v, _ in q.path_trees[i - 1])


# -- deconcatenation --------------------------------------------------------

class Piece(NamedTuple):
    """A subquiver relabeled to ``1..m``; ``origin[k - 1]`` is the vertex of the
    parent quiver that ``k`` came from."""

    quiver: Quiver
    origin: tuple[int, ...]


def _induced_piece(q: Quiver, vertices: Iterable[int]) -> Piece:
    origin = tuple(sorted(vertices))
    index = {v: k for k, v in enumerate(origin, start=1)}
    arrows = tuple((index[s], index[t]) for s, t in q.arrows if s in index and t in index)
    return Piece(Quiver(len(origin), arrows), origin)


def _is_cut_vertex(q: Quiver, v: int) -> bool:
    return q.degree(v) >= 2 and (q.is_sink(v) or q.is_source(v))


def deconcatenate(q: Quiver, v: int) -> list[Piece]:
    """Split ``q`` at a sink or source ``v`` into one piece per branch at ``v``.

    Every piece contains ``v``.  Pieces are ordered by the neighbour of ``v``
    they contain.
    """
    if not 1 <= v <= q.n:
        raise DeconcatenationError(f"vertex {v} is not in 1..{q.n}")
    if not (q.is_sink(v) or q.is_source(v)):
        raise DeconcatenationError(f"vertex {v} is neither a sink nor a source")
    if q.degree(v) < 2:
        raise DeconcatenationError(f"vertex {v} has degree {q.degree(v)}; no proper split")
    pieces = []
    for w in q.neighbors[v]:
        seen = {v, w}
        stack = [w]
        while stack:
            x = stack.pop()
            for y in q.neighbors[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        pieces.append(_induced_piece(q, seen))
    return pieces


def full_deconcatenation(
    q: Quiver, pick: Callable[[list[int]], int] = min
) -> list[Piece]:
    """Deconcatenate repeatedly until no piece has a sink or source of degree >= 2.

    ``pick`` chooses the cut vertex among the candidates (in the labels of the
    current piece); the final pieces do not depend on it.  Origins refer to the
    vertices of ``q``.
    """
    done: list[Piece] = []
    work = [Piece(q, tuple(q.vertices))]
    while work:
        piece = work.pop(0)
        cuts = [v for v in piece.quiver.vertices if _is_cut_vertex(piece.quiver, v)]
        if not cuts:
            done.append(piece)
            continue
        subs = deconcatenate(piece.quiver, pick(cuts))
        work[:0] = [Piece(sub.quiver, tuple(piece.origin[k - 1] for k in sub.origin))
                    for sub in subs]
    return done


# -- shape recognition ------------------------------------------------------

class ShapeKind(enum.Enum):
    LINE = "line"
    BRANCH = "branch"
    OPPOSITE_BRANCH = "opposite_branch"
    UNRECOGNIZED = "unrecognized"


@dataclass(frozen=True)
class ShapeDescriptor:
    """``relabeling[v - 1]`` is the canonical label of input vertex ``v``.

    The canonical quiver is ``make_line(n)``, ``make_branch(s, t, u)`` or its
    opposite.  ``params`` is ``(n,)`` for lines and ``(s, t, u)`` with
    ``t >= u`` for branches.
    """

    kind: ShapeKind
    params: tuple[int, ...] = ()
    relabeling: tuple[int, ...] | None = None

    def canonical(self) -> Quiver | None:
        if self.kind is ShapeKind.LINE:
            return make_line(*self.params)
        if self.kind is ShapeKind.BRANCH:
            return make_branch(*self.params)
        if self.kind is ShapeKind.OPPOSITE_BRANCH:
            return opposite(make_branch(*self.params))
        return None

    def to_dict(self) -> dict:
        return {"shape": self.kind.value, "params": list(self.params)}


UNRECOGNIZED = ShapeDescriptor(ShapeKind.UNRECOGNIZED)


def _arm(q: Quiver, centre: int, first: int) -> tuple[list[int], str | None]:
    """Walk the arm leaving ``centre`` through ``first``.

    Returns the arm's vertices (outwards) and its orientation: ``"in"`` if every
    arrow points towards ``centre``, ``"out"`` if every arrow points away, else
    None.
    """
    arm = [first]
    prev, cur = centre, first
    while True:
        nxt = [w for w in q.neighbors[cur] if w != prev]
        if not nxt:
            break
        prev, cur = cur, nxt[0]
        arm.append(cur)
    chain = [centre] + arm
    steps = list(zip(chain, chain[1:]))
    if all((b, a) in q.arrow_set for a, b in steps):
        return arm, "in"
    if all((a, b) in q.arrow_set for a, b in steps):
        return arm, "out"
    return arm, None


def recognize_shape(q: Quiver) -> ShapeDescriptor:
    """Identify ``q`` up to relabeling as a uniformly oriented line, a branch
    quiver ``Q(s, t, u)`` or the opposite of one.

    A branch needs exactly one vertex of degree 3; anything with a vertex of
    degree 4 or more, or with a non-uniform arm, is unrecognized.
    """
    degrees = {v: q.degree(v) for v in q.vertices}
    if max(degrees.values()) <= 2:
        return _recognize_line(q)
    centres = [v for v, d in degrees.items() if d == 3]
    if len(centres) != 1 or max(degrees.values()) > 3:
        return UNRECOGNIZED
    centre = centres[0]
    arms = [_arm(q, centre, w) for w in q.neighbors[centre]]
    ins = [a for a, o in arms if o == "in"]
    outs = [a for a, o in arms if o == "out"]
    if len(ins) + len(outs) != 3:
        return UNRECOGNIZED
    if len(ins) == 1 and len(outs) == 2:
        kind, single, pair = ShapeKind.BRANCH, ins[0], outs
    elif len(ins) == 2 and len(outs) == 1:
        kind, single, pair = ShapeKind.OPPOSITE_BRANCH, outs[0], ins
    else:
        return UNRECOGNIZED
    longer, shorter = sorted(pair, key=lambda a: (-len(a), a[0]))
    s, t, u = len(single), len(longer), len(shorter)
    relabel = {centre: 1}
    for offset, arm in ((1, single), (s + 1, longer), (s + t + 1, shorter)):
        for k, v in enumerate(arm, start=1):
            relabel[v] = offset + k
    return ShapeDescriptor(kind, (s, t, u), tuple(relabel[v] for v in q.vertices))


def _recognize_line(q: Quiver) -> ShapeDescriptor:
    if any(len(q.successors[v]) > 1 or len(q.predecessors[v]) > 1 for v in q.vertices):
        return UNRECOGNIZED
    starts = [v for v in q.vertices if q.is_source(v)]
    if len(starts) != 1:
        return UNRECOGNIZED
    relabel = {}
    v: int | None = starts[0]
    k = 1
    while v is not None:
        relabel[v] = k
        k += 1
        succ = q.successors[v]
        v = succ[0] if succ else None
    return ShapeDescriptor(ShapeKind.LINE, (q.n,), tuple(relabel[v] for v in q.vertices))


# -- isomorphism classes and generators --------------------------------------

def canonical_form(q: Quiver) -> str:
    """A string equal for two quivers iff they are isomorphic (trees only)."""

    def encode(v: int, parent: int) -> str:
        parts = []
        for w in q.neighbors[v]:
            if w == parent:
                continue
            mark = ">" if (v, w) in q.arrow_set else "<"
            parts.append(mark + encode(w, v))
        return "(" + "".join(sorted(parts)) + ")"

    return min(encode(r, 0) for r in q.vertices)


def _orientations(n: int, edges: list[tuple[int, int]]) -> Iterator[Quiver]:
    for flips in itertools.product((False, True), repeat=len(edges)):
        yield Quiver(n, tuple((b, a) if f else (a, b) for (a, b), f in zip(edges, flips)))


def enumerate_tree_quivers(n: int) -> list[Quiver]:
    """All tree quivers on ``n`` vertices, one per isomorphism class."""
    if n == 1:
        return [Quiver(1)]
    found: dict[str, Quiver] = {}
    for g in nx.nonisomorphic_trees(n):
        edges = sorted((a + 1, b + 1) for a, b in g.edges())
        for q in _orientations(n, edges):
            found.setdefault(canonical_form(q), q)
    return [found[k] for k in sorted(found)]


def orientations_of(q: Quiver) -> list[Quiver]:
    """Every orientation of the underlying graph of ``q`` (labels kept)."""
    return list(_orientations(q.n, list(q.arrows)))


def random_tree_quiver(n: int, rng: random.Random) -> Quiver:
    """A uniformly random labeled tree with uniformly random orientation."""
    if n == 1:
        return Quiver(1)
    if n == 2:
        edges = [(1, 2)]
    else:
        prufer = [rng.randrange(n) for _ in range(n - 2)]
        edges = [(a + 1, b + 1) for a, b in nx.from_prufer_sequence(prufer).edges()]
    return Quiver(n, tuple((b, a) if rng.random() < 0.5 else (a, b) for a, b in edges))


def random_relabeling(q: Quiver, rng: random.Random) -> Quiver:
    images = list(q.vertices)
    rng.shuffle(images)
    return q.relabel(images)
