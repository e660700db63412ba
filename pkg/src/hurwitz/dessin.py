"""Dessins d'enfants of three-point constellations.

The edges of the dessin are ``0..d-1``.  The white rotation ``s1`` and black
rotation ``s2`` cyclically order the edges around white and black vertices;
faces are the cycles of ``s3 = (s1 o s2)^-1``, a cycle of length ``k`` being
a ``2k``-gon.

Boundary walk of a face, starting at its least edge ``e``: cross ``e`` from
its white end to its black end, turn at the black vertex to ``s2(e)`` and
cross it back to the white end, turn at the white vertex to
``s1(s2(e))``, and so on.  Sides at even positions go white to black, sides
at odd positions black to white, and the walk position order is taken as
the intrinsic (counterclockwise) orientation of the face.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property

from .errors import BadFaceId, InvalidDatum, NotThreePoint
from .perm import Permutation, compose, inverse
from .search import Constellation

WHITE_TO_BLACK = 0
BLACK_TO_WHITE = 1


@dataclass(frozen=True)
class FaceWalk:
    face_id: int
    sides: tuple[tuple[int, int], ...]  # (edge, WHITE_TO_BLACK | BLACK_TO_WHITE)
    corners: tuple[tuple[str, int], ...]  # ("w" | "b", vertex id); corner i starts side i

    @property
    def size(self) -> int:
        return len(self.sides)

    def edges(self) -> list[int]:
        return [e for e, _ in self.sides]


def _cycles_by_min(p: Permutation) -> list[tuple[int, ...]]:
    return sorted(p.cycles(), key=lambda c: c[0])


class Dessin:
    """Bipartite map given by its white and black rotations."""

    def __init__(self, white: Permutation, black: Permutation):
        if white.degree != black.degree:
            raise InvalidDatum("white and black rotations have different degrees")
        self.white = white
        self.black = black
        self.edge_count = white.degree
        self.face_perm = inverse(compose(white, black))
        self.white_vertices = _cycles_by_min(white)
        self.black_vertices = _cycles_by_min(black)
        self.faces = _cycles_by_min(self.face_perm)
        d = self.edge_count
        self.white_of = [0] * d
        self.black_of = [0] * d
        for i, cyc in enumerate(self.white_vertices):
            for e in cyc:
                self.white_of[e] = i
        for i, cyc in enumerate(self.black_vertices):
            for e in cyc:
                self.black_of[e] = i
        self.walks = tuple(self._walk(i) for i in range(len(self.faces)))
        # where each edge's two sides sit: edge -> (face, position)
        self.side_wb = [(0, 0)] * d
        self.side_bw = [(0, 0)] * d
        for walk in self.walks:
            for pos, (e, direction) in enumerate(walk.sides):
                if direction == WHITE_TO_BLACK:
                    self.side_wb[e] = (walk.face_id, pos)
                else:
                    self.side_bw[e] = (walk.face_id, pos)

    @classmethod
    def from_constellation(cls, c: Constellation) -> "Dessin":
        if len(c.sigmas) != 3:
            raise NotThreePoint(f"a dessin needs 3 permutations, got {len(c.sigmas)}")
        if not c.product().is_identity():
            raise InvalidDatum("permutations do not multiply to the identity")
        return cls(c.sigmas[0], c.sigmas[1])

    def _walk(self, face_id: int) -> FaceWalk:
        start = self.faces[face_id][0]
        w, b = self.white.images, self.black.images
        sides = []
        corners = []
        e = start
        while True:
            sides.append((e, WHITE_TO_BLACK))
            corners.append(("w", self.white_of[e]))
            f = b[e]
            sides.append((f, BLACK_TO_WHITE))
            corners.append(("b", self.black_of[e]))
            e = w[f]
            if e == start:
                break
        return FaceWalk(face_id, tuple(sides), tuple(corners))

    def face_boundary(self, face_id: int) -> FaceWalk:
        if not isinstance(face_id, int) or not 0 <= face_id < len(self.faces):
            raise BadFaceId(f"no face {face_id!r}; faces are 0..{len(self.faces) - 1}")
        return self.walks[face_id]

    def is_face_embedded(self, face_id: int) -> bool:
        """Whether the closed face is an embedded polygon: its boundary walk
        meets no vertex and no edge twice."""
        walk = self.face_boundary(face_id)
        return len(set(walk.corners)) == walk.size and len(set(walk.edges())) == walk.size

    def euler_characteristic(self) -> int:
        return len(self.white_vertices) + len(self.black_vertices) - self.edge_count + len(self.faces)

    @property
    def genus(self) -> int:
        return (2 - self.euler_characteristic()) // 2

    @cached_property
    def face_sizes(self) -> list[int]:
        return [w.size for w in self.walks]

    def to_json(self) -> dict:
        return {
            "degree": self.edge_count,
            "white": [list(c) for c in self.white_vertices],
            "black": [list(c) for c in self.black_vertices],
            "faces": [
                {
                    "id": w.face_id,
                    "cycle": list(self.faces[w.face_id]),
                    "size": w.size,
                    "sides": [list(s) for s in w.sides],
                    "corners": [f"{c}{i}" for c, i in w.corners],
                    "embedded": self.is_face_embedded(w.face_id),
                }
                for w in self.walks
            ],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    def to_dot(self) -> str:
        lines = ["graph dessin {"]
        for w in self.walks:
            edges = " ".join(f"e{e}{'+' if d == WHITE_TO_BLACK else '-'}" for e, d in w.sides)
            lines.append(f"  // face {w.face_id}: {w.size}-gon, sides {edges}")
        for i in range(len(self.white_vertices)):
            lines.append(f'  w{i} [shape=circle, label="w{i}"];')
        for i in range(len(self.black_vertices)):
            lines.append(
                f'  b{i} [shape=circle, style=filled, fillcolor=black, fontcolor=white, label="b{i}"];'
            )
        for e in range(self.edge_count):
            lines.append(f'  w{self.white_of[e]} -- b{self.black_of[e]} [label="e{e}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def from_constellation(c: Constellation) -> Dessin:
    return Dessin.from_constellation(c)
