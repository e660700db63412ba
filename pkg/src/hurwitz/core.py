"""Branch data over the sphere and Riemann-Hurwitz arithmetic.

A branch datum here is a degree ``d`` together with ``n >= 3`` partitions of
``d``, one per branching point of the sphere.  Parts inside a partition are
stored sorted in decreasing order; the order of the partitions themselves is
kept as given.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from math import factorial, prod
from typing import Iterable, Sequence

from .errors import (
    BadPartition,
    ChiTooLarge,
    HTooSmall,
    NonPositivePart,
    OddEuler,
    SumMismatch,
    TooFewBranchPoints,
)

SPHERE_CHI = 2


@dataclass(frozen=True, order=True)
class Partition:
    parts: tuple[int, ...]
    total: int

    def __post_init__(self):
        if not self.parts:
            raise BadPartition("a partition needs at least one part")
        if any(p < 1 for p in self.parts):
            raise NonPositivePart(f"non-positive part in {list(self.parts)}")
        if list(self.parts) != sorted(self.parts, reverse=True):
            raise BadPartition(f"parts not sorted decreasingly: {list(self.parts)}")
        if sum(self.parts) != self.total:
            raise SumMismatch(f"{list(self.parts)} does not sum to {self.total}")

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def multiplicities(self) -> dict[int, int]:
        """Map part length ``k`` to its multiplicity ``m_k``."""
        return dict(Counter(self.parts))

    def centralizer_order(self) -> int:
        """Order of the centralizer of a permutation of this cycle type,
        ``prod_k k**m_k * m_k!``."""
        return prod(k**m * factorial(m) for k, m in self.multiplicities().items())

    def class_size(self) -> int:
        """Number of permutations of this cycle type."""
        return factorial(self.total) // self.centralizer_order()

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.parts)) + "]"


def validate_partition(parts: Iterable[int], d: int) -> Partition:
    """Normalize raw ``parts`` into a :class:`Partition` of ``d``.

    >>> validate_partition([2, 4], 6)
    Partition(parts=(4, 2), total=6)
    """
    if isinstance(parts, Partition):
        parts = parts.parts
    raw = list(parts)
    for p in raw:
        if isinstance(p, bool) or not isinstance(p, int):
            raise BadPartition(f"part {p!r} is not an integer")
        if p < 1:
            raise NonPositivePart(f"non-positive part {p} in {raw}")
    if isinstance(d, bool) or not isinstance(d, int) or d < 1:
        raise BadPartition(f"degree must be a positive integer, got {d!r}")
    if sum(raw) != d:
        raise SumMismatch(f"{raw} sums to {sum(raw)}, expected {d}")
    return Partition(tuple(sorted(raw, reverse=True)), d)


def riemann_hurwitz_chi(d: int, partitions: Sequence[Partition]) -> int:
    """Euler characteristic of the source of a degree ``d`` cover of the
    sphere with the given local degrees: ``sum(len(pi)) + d * (2 - n)``."""
    n = len(partitions)
    return sum(len(p) for p in partitions) + d * (SPHERE_CHI - n)


@dataclass(frozen=True)
class BranchDatum:
    degree: int
    partitions: tuple[Partition, ...]
    source_chi: int = field(compare=False)

    @property
    def n(self) -> int:
        return len(self.partitions)

    @property
    def genus(self) -> int:
        return (2 - self.source_chi) // 2

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "partitions": [list(p.parts) for p in self.partitions],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, payload: dict) -> "BranchDatum":
        if not isinstance(payload, dict) or set(payload) != {"degree", "partitions"}:
            raise BadPartition('expected an object with keys "degree" and "partitions"')
        partitions = payload["partitions"]
        if not isinstance(partitions, list) or not all(isinstance(p, list) for p in partitions):
            raise BadPartition('"partitions" must be a list of lists')
        return validate_branch_datum(payload["degree"], partitions)

    def __str__(self) -> str:
        return f"d={self.degree} " + " ".join(str(p) for p in self.partitions)


def validate_branch_datum(d: int, partitions: Iterable[Sequence[int] | Partition]) -> BranchDatum:
    """Validate and normalize a branch datum over the sphere.

    Raises :class:`BadPartition` (or a subclass) for malformed partitions,
    :class:`TooFewBranchPoints` when ``n < 3``, :class:`OddEuler` and
    :class:`ChiTooLarge` when Riemann-Hurwitz yields no closed orientable
    connected source.
    """
    parts = tuple(validate_partition(p, d) for p in partitions)
    if len(parts) < 3:
        raise TooFewBranchPoints(f"need at least 3 branching points, got {len(parts)}")
    chi = riemann_hurwitz_chi(d, parts)
    if chi % 2:
        raise OddEuler(f"Riemann-Hurwitz gives odd Euler characteristic {chi}")
    if chi > 2:
        raise ChiTooLarge(f"Riemann-Hurwitz gives Euler characteristic {chi} > 2")
    return BranchDatum(d, parts, chi)


def paper_family_datum(h: int) -> BranchDatum:
    """Degree ``3h`` datum ``(3^h), (3^h), (4, 2, 3^(h-2))`` with torus source."""
    if h < 2:
        raise HTooSmall(f"the family starts at h=2, got h={h}")
    d = 3 * h
    return validate_branch_datum(d, [[3] * h, [3] * h, [4, 2] + [3] * (h - 2)])


def control_family_datum(h: int) -> BranchDatum:
    """Realizable companion of :func:`paper_family_datum`: ``(3^h)`` three times."""
    if h < 1:
        raise HTooSmall(f"the control family starts at h=1, got h={h}")
    return validate_branch_datum(3 * h, [[3] * h] * 3)
