"""Exhaustive search for constellations realizing a three-point branch datum.

A datum ``(pi_1, pi_2, pi_3)`` is realizable iff there are permutations
``s1, s2, s3`` of the given cycle types with ``s1 o s2 o s3 = id`` that
generate a transitive group.  Realizability is invariant under simultaneous
conjugation, so one of the permutations is frozen to the canonical
representative of its class, the next one is enumerated, and the last is
derived as ``(s_fixed o s_free)^-1``.

The frozen slot is the partition with the smallest centralizer, ties going
to the earliest position.  Since the product condition is invariant under
cyclic rotation, the free slot is the one after it and the derived slot the
one after that (indices mod 3), and the witness is reported in datum order.

Two strategies are available:

* unreduced: walk every permutation of the free type in lex order and test
  the product's cycle type and transitivity;
* reduced (default): a backtracking search that prunes on the product's
  cycle type as it goes, and only accepts free permutations that are the
  lex-least in their orbit under conjugation by the centralizer of the
  frozen one.  Counts are recovered by summing orbit sizes.

Both report the lex-least accepted free permutation as witness.
"""

from __future__ import annotations

import json
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from ._backtrack import typed_backtrack
from .core import BranchDatum, Partition
from .errors import DegreeMismatch, InvalidDatum, Unsupported
from .perm import (
    Permutation,
    UnionFind,
    canonical_of_type,
    centralizer_generators,
    compose,
    cycle_lengths,
    cycle_type,
    enumerate_of_type,
    group_elements,
    inverse,
    is_transitive,
)

# Largest centralizer whose elements are listed for prefix pruning.
GROUP_LIST_LIMIT = 50_000


@dataclass(frozen=True)
class Constellation:
    sigmas: tuple[Permutation, ...]

    @property
    def degree(self) -> int:
        return self.sigmas[0].degree

    def product(self) -> Permutation:
        out = Permutation.identity(self.degree)
        for s in self.sigmas:
            out = compose(out, s)
        return out

    def to_json(self) -> dict:
        return {"degree": self.degree, "sigma": [s.to_json() for s in self.sigmas]}

    @classmethod
    def from_json(cls, payload: dict) -> "Constellation":
        if not isinstance(payload, dict) or set(payload) != {"degree", "sigma"}:
            raise InvalidDatum('expected an object with keys "degree" and "sigma"')
        d = payload["degree"]
        if isinstance(d, bool) or not isinstance(d, int) or d < 1:
            raise InvalidDatum(f"bad degree {d!r}")
        sigma = payload["sigma"]
        if not isinstance(sigma, list) or not sigma:
            raise InvalidDatum('"sigma" must be a non-empty list')
        for cycles in sigma:
            if not isinstance(cycles, list) or not all(isinstance(c, list) for c in cycles):
                raise InvalidDatum("each permutation must be a list of cycles")
        return cls(tuple(Permutation.from_cycles(c, d) for c in sigma))

    def __str__(self) -> str:
        return " ".join(str(s) for s in self.sigmas)


@dataclass(frozen=True)
class SearchOptions:
    use_centralizer_reduction: bool = True
    parallelism_hint: int = 1


@dataclass(frozen=True)
class Decision:
    realizable: bool
    witness: Constellation | None
    candidates_examined: int
    reduced: bool
    fixed_index: int
    search_space: int

    def to_json(self) -> dict:
        return {
            "realizable": self.realizable,
            "witness": self.witness.to_json() if self.witness else None,
            "candidates_examined": self.candidates_examined,
            "reduced": self.reduced,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())


@dataclass(frozen=True)
class WitnessReport:
    product_identity: bool
    cycle_types_match: tuple[bool, ...]
    transitive: bool

    @property
    def passed(self) -> bool:
        return self.product_identity and all(self.cycle_types_match) and self.transitive

    def to_json(self) -> dict:
        return {
            "product_identity": self.product_identity,
            "cycle_types_match": list(self.cycle_types_match),
            "transitive": self.transitive,
            "passed": self.passed,
        }


def verify_witness(datum: BranchDatum, c: Constellation) -> WitnessReport:
    """Check the three constellation conditions independently."""
    for s in c.sigmas:
        if s.degree != datum.degree:
            raise DegreeMismatch(f"witness degree {s.degree} != datum degree {datum.degree}")
    if len(c.sigmas) != datum.n:
        raise InvalidDatum(f"witness has {len(c.sigmas)} permutations, datum has {datum.n} partitions")
    return WitnessReport(
        product_identity=c.product().is_identity(),
        cycle_types_match=tuple(cycle_type(s) == p for s, p in zip(c.sigmas, datum.partitions)),
        transitive=is_transitive(c.sigmas, datum.degree),
    )


def fixed_slot(datum: BranchDatum) -> int:
    """Index of the partition whose class is frozen to its canonical element."""
    orders = [p.centralizer_order() for p in datum.partitions]
    return orders.index(min(orders))


@dataclass(frozen=True)
class _Plan:
    """Picklable description of one search, shipped to worker processes."""

    degree: int
    fixed: tuple[int, ...]  # images of the frozen permutation
    free_parts: tuple[int, ...]
    derived_parts: tuple[int, ...]
    gens: tuple[tuple[int, ...], ...]  # centralizer generators of the frozen one
    reduced: bool


def _plan(datum: BranchDatum, reduced: bool) -> tuple[_Plan, int]:
    if not isinstance(datum, BranchDatum):
        raise InvalidDatum(f"expected a BranchDatum, got {type(datum).__name__}")
    if datum.n != 3:
        raise Unsupported(f"only three branching points are supported, got {datum.n}")
    i = fixed_slot(datum)
    pis = datum.partitions
    plan = _Plan(
        degree=datum.degree,
        fixed=canonical_of_type(pis[i]).images,
        free_parts=pis[(i + 1) % 3].parts,
        derived_parts=pis[(i + 2) % 3].parts,
        gens=tuple(g.images for g in centralizer_generators(pis[i])),
        reduced=reduced,
    )
    return plan, i


def _assemble(datum: BranchDatum, i: int, fixed: Sequence[int], free: Sequence[int]) -> Constellation:
    s_fixed = Permutation.trusted(fixed)
    s_free = Permutation.trusted(free)
    s_derived = inverse(compose(s_fixed, s_free))
    sigmas = [None, None, None]
    sigmas[i] = s_fixed
    sigmas[(i + 1) % 3] = s_free
    sigmas[(i + 2) % 3] = s_derived
    return Constellation(tuple(sigmas))


def _transitive_pair(a: Sequence[int], b: Sequence[int]) -> bool:
    d = len(a)
    uf = UnionFind(d)
    for x in range(d):
        uf.union(x, a[x])
        uf.union(x, b[x])
        if uf.components == 1:
            return True
    return uf.components == 1


def _orbit(s: tuple[int, ...], gens: Sequence[tuple[int, ...]], stop_below: bool) -> int:
    """Size of the conjugation orbit of ``s`` under ``<gens>``.

    With ``stop_below`` returns 0 as soon as a lex-smaller conjugate shows up.
    """
    seen = {s}
    queue = deque([s])
    d = len(s)
    while queue:
        p = queue.popleft()
        for g in gens:
            c = [0] * d
            for x in range(d):
                c[g[x]] = g[p[x]]
            c = tuple(c)
            if c not in seen:
                if stop_below and c < s:
                    return 0
                seen.add(c)
                queue.append(c)
    return len(seen)


@lru_cache(maxsize=8)
def _prefix_pruner(gens: tuple[tuple[int, ...], ...], d: int):
    elements = group_elements([Permutation.trusted(g) for g in gens], d, limit=GROUP_LIST_LIMIT)
    pairs = []
    for g in elements[1:]:  # skip the identity
        gi = inverse(g).images
        pairs.append((g.images, gi))
    if not pairs:
        return None

    def prune(s: list[int], k: int) -> bool:
        # False if some conjugate g s g^-1 is already lex-smaller on s[:k]
        for g, gi in pairs:
            for i in range(k):
                j = gi[i]
                if j >= k:
                    break
                c = g[s[j]]
                si = s[i]
                if c < si:
                    return False
                if c > si:
                    break
        return True

    return prune


def _run_block(plan: _Plan, prefix: tuple[int, ...], first_only: bool) -> tuple[int, int, tuple[int, ...] | None]:
    """Search the candidates starting with ``prefix``.

    Returns ``(examined, accepted, first_accepted_free_images)``; with
    ``first_only`` stops at the first acceptance.
    """
    d = plan.degree
    left = plan.fixed
    examined = 0
    accepted = 0
    first = None
    if plan.reduced:
        pruner = _prefix_pruner(plan.gens, d)
        leaves = typed_backtrack(
            d, plan.free_parts, left=left, product_parts=plan.derived_parts,
            prefix=prefix, prune=pruner, prune_depth=d if pruner else 0,
        )
        for s in leaves:
            s = tuple(s)
            size = _orbit(s, plan.gens, stop_below=True)
            if not size:
                continue
            examined += 1
            if _transitive_pair(left, s):
                accepted += size
                if first is None:
                    first = s
                    if first_only:
                        break
    else:
        target = list(plan.derived_parts)
        for s in typed_backtrack(d, plan.free_parts, prefix=prefix):
            examined += 1
            tau = [left[y] for y in s]
            if cycle_lengths(tau) == target and _transitive_pair(left, s):
                accepted += 1
                if first is None:
                    first = tuple(s)
                    if first_only:
                        break
    return examined, accepted, first


def _blocks(d: int, jobs: int) -> list[tuple[int, ...]]:
    if jobs <= 1 or d < 3:
        return [()]
    return [(a, b) for a in range(d) for b in range(d) if a != b]


def _run(plan: _Plan, jobs: int, first_only: bool) -> tuple[int, int, tuple[int, ...] | None]:
    blocks = _blocks(plan.degree, jobs)
    if len(blocks) == 1:
        return _run_block(plan, blocks[0], first_only)
    examined = accepted = 0
    first = None
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        results = pool.map(_run_block, [plan] * len(blocks), blocks, [first_only] * len(blocks))
        # blocks are contiguous in lex order, so merging in block order keeps
        # the lex-least witness and a jobs-independent examined count
        for ex, acc, fst in results:
            examined += ex
            accepted += acc
            if first is None and fst is not None:
                first = fst
                if first_only:
                    pool.shutdown(wait=False, cancel_futures=True)
                    break
    return examined, accepted, first


def decide_realizability(datum: BranchDatum, opts: SearchOptions | None = None) -> Decision:
    """Decide whether ``datum`` is realized by a branched cover of the sphere."""
    opts = opts or SearchOptions()
    plan, i = _plan(datum, opts.use_centralizer_reduction)
    examined, _, first = _run(plan, opts.parallelism_hint, first_only=True)
    witness = _assemble(datum, i, plan.fixed, first) if first is not None else None
    free = datum.partitions[(i + 1) % 3]
    return Decision(
        realizable=witness is not None,
        witness=witness,
        candidates_examined=examined,
        reduced=plan.reduced,
        fixed_index=i,
        search_space=free.class_size(),
    )


def count_constellations(datum: BranchDatum, opts: SearchOptions | None = None) -> int:
    """Number of constellations realizing ``datum`` with the frozen slot fixed
    to its canonical permutation."""
    return count_with_stats(datum, opts)[0]


def count_with_stats(datum: BranchDatum, opts: SearchOptions | None = None) -> tuple[int, Decision]:
    """Count constellations and also return the search bookkeeping as a
    :class:`Decision` carrying the lex-least witness."""
    opts = opts or SearchOptions()
    plan, i = _plan(datum, opts.use_centralizer_reduction)
    examined, accepted, first = _run(plan, opts.parallelism_hint, first_only=False)
    witness = _assemble(datum, i, plan.fixed, first) if first is not None else None
    decision = Decision(
        realizable=witness is not None,
        witness=witness,
        candidates_examined=examined,
        reduced=plan.reduced,
        fixed_index=i,
        search_space=datum.partitions[(i + 1) % 3].class_size(),
    )
    return accepted, decision


def iter_constellations(datum: BranchDatum) -> Iterator[Constellation]:
    """Every constellation of ``datum`` with the frozen slot canonical, in
    lex order of the free permutation."""
    plan, i = _plan(datum, reduced=False)
    for s in typed_backtrack(plan.degree, plan.free_parts, left=plan.fixed, product_parts=plan.derived_parts):
        if _transitive_pair(plan.fixed, s):
            yield _assemble(datum, i, plan.fixed, s)


def free_partition(datum: BranchDatum) -> Partition:
    return datum.partitions[(fixed_slot(datum) + 1) % 3]
