"""Permutations of ``{0, ..., d-1}``.

Composition convention, used throughout the package: ``compose(p, q)`` is
the permutation ``x -> p(q(x))``, i.e. the right factor is applied first.
A constellation ``(s1, s2, s3)`` satisfies ``compose(s1, compose(s2, s3))``
equal to the identity.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from ._backtrack import typed_backtrack
from .core import Partition
from .errors import DegreeMismatch, HurwitzError


@dataclass(frozen=True, order=True)
class Permutation:
    """A bijection of ``{0, ..., d-1}`` stored by its image sequence.

    Ordering compares image sequences lexicographically.
    """

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise HurwitzError(f"{list(self.images)} is not a permutation")

    @classmethod
    def trusted(cls, images: Sequence[int]) -> "Permutation":
        """Wrap ``images`` without checking that it is a bijection."""
        p = object.__new__(cls)
        object.__setattr__(p, "images", tuple(images))
        return p

    @classmethod
    def identity(cls, d: int) -> "Permutation":
        return cls.trusted(range(d))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], d: int) -> "Permutation":
        """Build from disjoint cycles; omitted points are fixed."""
        images = list(range(d))
        seen = set()
        for cyc in cycles:
            for i, x in enumerate(cyc):
                if isinstance(x, bool) or not isinstance(x, int) or not 0 <= x < d:
                    raise HurwitzError(f"cycle entry {x!r} outside 0..{d - 1}")
                if x in seen:
                    raise HurwitzError(f"point {x} appears twice in {list(cycles)}")
                seen.add(x)
                images[x] = cyc[(i + 1) % len(cyc)]
        return cls.trusted(images)

    @classmethod
    def parse(cls, text: str, d: int) -> "Permutation":
        """Parse the cycle notation produced by ``str()``, e.g. ``"(0 1 2)(3 4)"``."""
        text = text.strip()
        if not re.fullmatch(r"(\(\s*(\d+(\s+\d+)*)?\s*\))+", text):
            raise HurwitzError(f"cannot parse permutation {text!r}")
        cycles = [[int(t) for t in body.split()] for body in re.findall(r"\(([^)]*)\)", text)]
        return cls.from_cycles([c for c in cycles if c], d)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Canonical cycle decomposition, fixed points included.

        Each cycle starts at its least element; cycles are sorted by length
        (longest first), then by least element.
        """
        return canonical_cycles(self.images)

    def to_json(self) -> list[list[int]]:
        return [list(c) for c in self.cycles()]

    def __str__(self) -> str:
        moved = [c for c in self.cycles() if len(c) > 1]
        if not moved:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in moved)

    def __repr__(self) -> str:
        return f"Permutation({self})"


def canonical_cycles(images: Sequence[int]) -> list[tuple[int, ...]]:
    seen = [False] * len(images)
    cycles = []
    for start in range(len(images)):
        if seen[start]:
            continue
        cyc = []
        x = start
        while not seen[x]:
            seen[x] = True
            cyc.append(x)
            x = images[x]
        cycles.append(tuple(cyc))
    # scanning from 0 upward already puts the least element first
    cycles.sort(key=lambda c: (-len(c), c[0]))
    return cycles


def _check_degrees(*perms: Permutation) -> int:
    degrees = {p.degree for p in perms}
    if len(degrees) > 1:
        raise DegreeMismatch(f"degrees differ: {sorted(degrees)}")
    return degrees.pop()


def compose(p: Permutation, q: Permutation) -> Permutation:
    """``x -> p(q(x))``."""
    _check_degrees(p, q)
    pi = p.images
    return Permutation.trusted([pi[y] for y in q.images])


def inverse(p: Permutation) -> Permutation:
    inv = [0] * p.degree
    for x, y in enumerate(p.images):
        inv[y] = x
    return Permutation.trusted(inv)


def conjugate(p: Permutation, g: Permutation) -> Permutation:
    """``g p g^-1``."""
    return compose(g, compose(p, inverse(g)))


def cycle_lengths(images: Sequence[int]) -> list[int]:
    """Cycle lengths of an image list, sorted decreasingly."""
    d = len(images)
    seen = [False] * d
    out = []
    for start in range(d):
        if seen[start]:
            continue
        n = 0
        x = start
        while not seen[x]:
            seen[x] = True
            x = images[x]
            n += 1
        out.append(n)
    out.sort(reverse=True)
    return out


def cycle_type(p: Permutation) -> Partition:
    return Partition(tuple(cycle_lengths(p.images)), p.degree)


def canonical_of_type(pi: Partition) -> Permutation:
    """Cycles on consecutive blocks, longest first: ``[4, 2] -> (0 1 2 3)(4 5)``."""
    images = []
    start = 0
    for k in pi.parts:
        images.extend(start + (i + 1) % k for i in range(k))
        start += k
    return Permutation.trusted(images)


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))
        self.components = n

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, x: int, y: int) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        if rx > ry:
            rx, ry = ry, rx
        self.parent[ry] = rx
        self.components -= 1
        return True


def is_transitive(perms: Sequence[Permutation], d: int) -> bool:
    """Whether the group generated by ``perms`` acts transitively on ``range(d)``."""
    for p in perms:
        if p.degree != d:
            raise DegreeMismatch(f"permutation of degree {p.degree}, expected {d}")
    uf = UnionFind(d)
    for p in perms:
        for x, y in enumerate(p.images):
            uf.union(x, y)
            if uf.components == 1:
                return True
    return uf.components <= 1


def enumerate_of_type(pi: Partition, prefix: Sequence[int] = ()) -> Iterator[Permutation]:
    """Every permutation of cycle type ``pi``, once each, in lexicographic
    order of the image sequence.

    ``prefix`` restricts to permutations whose first images are ``prefix``.
    """
    for images in typed_backtrack(pi.total, pi.parts, prefix=prefix):
        yield Permutation.trusted(images)


def centralizer_generators(pi: Partition) -> list[Permutation]:
    """Generators of the centralizer of ``canonical_of_type(pi)``.

    One rotation per cycle of length > 1 and one block swap for each pair of
    consecutive cycles of equal length.
    """
    d = pi.total
    gens = []
    blocks = []
    start = 0
    for k in pi.parts:
        blocks.append(range(start, start + k))
        start += k
    for block in blocks:
        k = len(block)
        if k > 1:
            images = list(range(d))
            for i, x in enumerate(block):
                images[x] = block[(i + 1) % k]
            gens.append(Permutation.trusted(images))
    for b1, b2 in zip(blocks, blocks[1:]):
        if len(b1) == len(b2):
            images = list(range(d))
            for x, y in zip(b1, b2):
                images[x] = y
                images[y] = x
            gens.append(Permutation.trusted(images))
    return gens


def group_elements(gens: Sequence[Permutation], d: int, limit: int | None = None) -> list[Permutation]:
    """All elements of the group generated by ``gens``, by breadth-first closure.

    Returns an empty list if more than ``limit`` elements turn up.
    """
    ident = tuple(range(d))
    seen = {ident}
    order = [ident]
    queue = deque([ident])
    gen_images = [g.images for g in gens]
    while queue:
        h = queue.popleft()
        for g in gen_images:
            gh = tuple(g[y] for y in h)
            if gh not in seen:
                seen.add(gh)
                order.append(gh)
                queue.append(gh)
                if limit is not None and len(order) > limit:
                    return []
    return [Permutation.trusted(x) for x in order]

