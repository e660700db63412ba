"""Loops in the dual graph of a dessin and their mod 2 homology classes.

Dual edge ``e`` crosses dessin edge ``e`` and joins the face holding the
white-to-black side of ``e`` to the face holding its black-to-white side.
A step ``(e, +1)`` crosses in that direction, ``(e, -1)`` the other way.

A dual loop is a cyclic sequence of steps, each entering the face the next
one leaves.  Inside every face it visits, the loop draws a chord from the
side it came in through to the side it leaves by.  The loop is *simple*
(realizable as an embedded curve) when no dual edge is used twice and the
chords inside each face are pairwise non-crossing.

A simple loop is homologically trivial mod 2 iff it meets every cycle of
the dessin graph an even number of times.  On the torus this is the same
as bounding a disc.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass
from typing import Iterator, Sequence

from .dessin import Dessin
from .errors import MalformedLoop
from .perm import UnionFind

Step = tuple[int, int]

LETTER_NAMES = {
    (4, 2): "S",
    (6, 3): "H_d",
    (6, 2): "H_r",
    (6, 4): "H_l",
    (8, 4): "O_d",
    (8, 3): "O_r",
    (8, 5): "O_l",
    (8, 2): "O_R",
    (8, 6): "O_L",
}


@dataclass(frozen=True)
class DualEdge:
    edge: int
    wb_side: tuple[int, int]  # (face, position) of the white-to-black side
    bw_side: tuple[int, int]


@dataclass(frozen=True)
class DualGraph:
    nodes: tuple[int, ...]
    edges: tuple[DualEdge, ...]

    def is_connected(self) -> bool:
        uf = UnionFind(len(self.nodes))
        for de in self.edges:
            uf.union(de.wb_side[0], de.bw_side[0])
        return uf.components == 1


def dual_graph(D: Dessin) -> DualGraph:
    return DualGraph(
        nodes=tuple(range(len(D.faces))),
        edges=tuple(DualEdge(e, D.side_wb[e], D.side_bw[e]) for e in range(D.edge_count)),
    )


def _tail(D: Dessin, step: Step) -> tuple[int, int]:
    e, direction = step
    return D.side_wb[e] if direction == 1 else D.side_bw[e]


def _head(D: Dessin, step: Step) -> tuple[int, int]:
    e, direction = step
    return D.side_bw[e] if direction == 1 else D.side_wb[e]


def _crosses(a: int, b: int, c: int, d: int, m: int) -> bool:
    """Whether chords ``(a, b)`` and ``(c, d)`` of an ``m``-gon cross
    (all four endpoints distinct)."""
    span = (b - a) % m
    return (((c - a) % m) < span) != (((d - a) % m) < span)


def _compatible(chord: tuple[int, int], others: Sequence[tuple[int, int]], m: int) -> bool:
    a, b = chord
    for c, d in others:
        if len({a, b, c, d}) < 4 or _crosses(a, b, c, d, m):
            return False
    return True


def canonical_steps(steps: Sequence[Step]) -> tuple[Step, ...]:
    """Lex-least rotation of the step sequence or of its reversal."""
    steps = tuple(steps)
    rev = tuple((e, -s) for e, s in reversed(steps))
    n = len(steps)
    return min(seq[i:] + seq[:i] for seq in (steps, rev) for i in range(n))


@dataclass(frozen=True)
class DualLoop:
    steps: tuple[Step, ...]

    def __len__(self) -> int:
        return len(self.steps)

    def edges(self) -> set[int]:
        return {e for e, _ in self.steps}

    def reversed(self) -> "DualLoop":
        return DualLoop(tuple((e, -s) for e, s in reversed(self.steps)))

    def canonical(self) -> "DualLoop":
        return DualLoop(canonical_steps(self.steps))


def loop_chords(D: Dessin, loop: DualLoop) -> list[tuple[int, int, int]]:
    """``(face, entry side, exit side)`` for the face entered after each step.

    Raises :class:`MalformedLoop` unless the loop closes up and is simple.
    """
    steps = loop.steps
    n = len(steps)
    if n == 0:
        raise MalformedLoop("empty loop")
    for e, s in steps:
        if not (isinstance(e, int) and 0 <= e < D.edge_count and s in (1, -1)):
            raise MalformedLoop(f"bad step {(e, s)!r}")
    if len({e for e, _ in steps}) != n:
        raise MalformedLoop("a dual edge is used twice")
    chords = []
    by_face = defaultdict(list)
    for i in range(n):
        face, entry = _head(D, steps[i])
        face_out, exit_ = _tail(D, steps[(i + 1) % n])
        if face != face_out:
            raise MalformedLoop(f"step {i} enters face {face} but step {(i + 1) % n} leaves face {face_out}")
        m = D.face_sizes[face]
        if not _compatible((entry, exit_), by_face[face], m):
            raise MalformedLoop(f"crossing chords in face {face}")
        by_face[face].append((entry, exit_))
        chords.append((face, entry, exit_))
    return chords


def is_simple(D: Dessin, loop: DualLoop) -> bool:
    try:
        loop_chords(D, loop)
    except MalformedLoop:
        return False
    return True


def primal_cycle_basis(D: Dessin, edge_order: Sequence[int] | None = None) -> list[frozenset[int]]:
    """Fundamental cycles of a spanning tree of the dessin graph.

    The tree is grown greedily along ``edge_order`` (default: by edge id).
    """
    nw = len(D.white_vertices)
    nv = nw + len(D.black_vertices)
    ends = [(D.white_of[e], nw + D.black_of[e]) for e in range(D.edge_count)]
    order = list(edge_order) if edge_order is not None else list(range(D.edge_count))
    uf = UnionFind(nv)
    adjacency = defaultdict(list)
    extra = []
    for e in order:
        u, v = ends[e]
        if uf.union(u, v):
            adjacency[u].append((v, e))
            adjacency[v].append((u, e))
        else:
            extra.append(e)
    parent = [None] * nv
    depth = [0] * nv
    parent[0] = (0, -1)
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for v, e in adjacency[u]:
            if parent[v] is None:
                parent[v] = (u, e)
                depth[v] = depth[u] + 1
                queue.append(v)
    basis = []
    for f in extra:
        u, v = ends[f]
        cycle = {f}
        while u != v:
            if depth[u] < depth[v]:
                u, v = v, u
            u, e = parent[u]
            cycle ^= {e}
        basis.append(frozenset(cycle))
    return basis


def is_loop_trivial(D: Dessin, loop: DualLoop, basis: Sequence[frozenset[int]] | None = None) -> bool:
    """Whether ``loop`` is zero in mod 2 homology of the surface."""
    loop_chords(D, loop)
    if basis is None:
        basis = primal_cycle_basis(D)
    crossed = loop.edges()
    return all(len(crossed & c) % 2 == 0 for c in basis)


def _enumerate_canonical(D: Dessin, n: int) -> set[tuple[Step, ...]]:
    d = D.edge_count
    leaving = defaultdict(list)  # face -> steps leaving it
    for e in range(d):
        for s in (1, -1):
            face, pos = _tail(D, (e, s))
            leaving[face].append((e, s, pos))
    sizes = D.face_sizes
    found = set()
    path: list[Step] = []
    used = [False] * d
    chords = defaultdict(list)

    def extend(first: Step):
        face, entry = _head(D, path[-1])
        m = sizes[face]
        if len(path) == n:
            f0, exit_ = _tail(D, first)
            if f0 == face and _compatible((entry, exit_), chords[face], m):
                found.add(canonical_steps(path))
            return
        for e, s, exit_ in leaving[face]:
            if used[e] or e < first[0]:
                continue
            chord = (entry, exit_)
            if not _compatible(chord, chords[face], m):
                continue
            used[e] = True
            chords[face].append(chord)
            path.append((e, s))
            extend(first)
            path.pop()
            chords[face].pop()
            used[e] = False

    for e0 in range(d):
        for s0 in (1, -1):
            first = (e0, s0)
            path.append(first)
            used[e0] = True
            extend(first)
            used[e0] = False
            path.pop()
    return found


def enumerate_simple_loops(D: Dessin, n: int) -> Iterator[DualLoop]:
    """Simple dual loops with exactly ``n`` steps, one per rotation/reversal
    class, sorted by their canonical step sequence."""
    if n < 1 or n > D.edge_count:
        return iter(())
    return (DualLoop(steps) for steps in sorted(_enumerate_canonical(D, n)))


def min_nontrivial_loop(D: Dessin, max_len: int) -> tuple[int, DualLoop] | None:
    """Shortest homologically non-trivial simple loop, up to ``max_len`` steps."""
    if D.genus == 0:
        return None
    basis = primal_cycle_basis(D)
    for n in range(1, max_len + 1):
        for loop in enumerate_simple_loops(D, n):
            if not is_loop_trivial(D, loop, basis):
                return n, loop
    return None


@dataclass(frozen=True)
class Letter:
    size: int
    offset: int

    @property
    def name(self) -> str:
        if (self.size, self.offset) in LETTER_NAMES:
            return LETTER_NAMES[self.size, self.offset]
        if self.size == 2:
            return "P_2"
        return f"P_{self.size}/{self.offset}"


@dataclass(frozen=True)
class CrossingWord:
    letters: tuple[Letter, ...]

    def names(self) -> list[str]:
        return [x.name for x in self.letters]

    def even_count(self) -> int:
        return sum(1 for x in self.letters if x.offset % 2 == 0)


def loop_word(D: Dessin, loop: DualLoop) -> CrossingWord:
    """One letter per face crossing: face size and the counterclockwise
    offset from entry side to exit side."""
    letters = []
    for face, entry, exit_ in loop_chords(D, loop):
        m = D.face_sizes[face]
        letters.append(Letter(m, (exit_ - entry) % m))
    return CrossingWord(tuple(letters))


def loop_to_json(D: Dessin, loop: DualLoop, basis: Sequence[frozenset[int]] | None = None) -> dict:
    return {
        "steps": [[e, s] for e, s in loop.steps],
        "word": loop_word(D, loop).names(),
        "trivial": is_loop_trivial(D, loop, basis),
    }


def loop_from_json(payload: dict) -> DualLoop:
    try:
        return DualLoop(tuple((int(e), int(s)) for e, s in payload["steps"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedLoop(f"bad loop payload: {exc}") from None


def gamma_counts(D: Dessin, cap: int) -> list[dict]:
    """Per length ``n <= cap``: number of simple loops and of non-trivial ones."""
    basis = primal_cycle_basis(D)
    out = []
    for n in range(1, cap + 1):
        loops = list(enumerate_simple_loops(D, n))
        nontrivial = sum(1 for x in loops if not is_loop_trivial(D, x, basis))
        out.append({"length": n, "simple": len(loops), "nontrivial": nontrivial})
    return out


def analysis_report(D: Dessin, max_loop_len: int = 6) -> dict:
    """Euler characteristic, faces, dual systole and loop counts of ``D``."""
    basis = primal_cycle_basis(D)
    systole = min_nontrivial_loop(D, max_loop_len)
    return {
        "degree": D.edge_count,
        "euler_characteristic": D.euler_characteristic(),
        "genus": D.genus,
        "faces": [
            {"id": w.face_id, "size": w.size, "embedded": D.is_face_embedded(w.face_id)}
            for w in D.walks
        ],
        "systole": systole[0] if systole else None,
        "systole_loop": loop_to_json(D, systole[1], basis) if systole else None,
        "loop_counts": gamma_counts(D, max_loop_len),
    }
