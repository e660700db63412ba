"""Pointwise backtracking over permutations of a prescribed cycle type.

Images are assigned to ``0, 1, 2, ...`` in turn, each time trying the unused
targets in increasing order, so complete permutations come out in
lexicographic order of their image sequence.  The partial injection is kept
as a set of open chains; a chain closes into a cycle only if a cycle of that
length is still required, and an open chain may not outgrow the longest
part still required.

Optionally a second partial permutation ``tau = left o s`` is tracked the
same way and constrained to a second cycle type.  When ``s(x) = y`` is set,
``tau(x) = left(y)`` becomes known, and ``x`` is the end of an open
``tau``-chain while ``left(y)`` is the start of one, so both structures are
updated by the same rule.
"""

from __future__ import annotations

from typing import Callable, Iterator, Sequence


def _counts(parts: Sequence[int], d: int) -> list[int]:
    rem = [0] * (d + 1)
    for k in parts:
        rem[k] += 1
    return rem


def typed_backtrack(
    d: int,
    parts: Sequence[int],
    left: Sequence[int] | None = None,
    product_parts: Sequence[int] | None = None,
    prefix: Sequence[int] = (),
    prune: Callable[[list[int], int], bool] | None = None,
    prune_depth: int = 0,
) -> Iterator[list[int]]:
    """Yield every image list ``s`` of cycle type ``parts`` in lex order.

    With ``left`` given, only ``s`` such that ``left o s`` has cycle type
    ``product_parts`` are produced.  ``prefix`` forces ``s[i] = prefix[i]``.
    ``prune(s, k)`` is consulted after each assignment at depth
    ``k <= prune_depth`` (``s[:k]`` set) and returning ``False`` cuts the
    subtree.  The yielded list is reused; copy it before storing.
    """
    s = [-1] * d
    used = [False] * d
    rem = _counts(parts, d)
    other = list(range(d))  # other end of the chain through an endpoint
    length = [1] * d
    top = [max(parts)]
    track = left is not None
    if track:
        rem3 = _counts(product_parts, d)
        other3 = list(range(d))
        length3 = [1] * d
        top3 = [max(product_parts)]
    npre = len(prefix)

    def shrink_top(r, t):
        k = t[0]
        while k > 0 and r[k] == 0:
            k -= 1
        t[0] = k

    def rec(x):
        if x == d:
            yield s
            return
        candidates = (prefix[x],) if x < npre else range(d)
        for y in candidates:
            if used[y]:
                continue
            a = other[x]
            if a == y:
                n2 = length[x]
                if not rem[n2]:
                    continue
                close2 = True
            else:
                n2 = length[x] + length[y]
                if n2 > top[0]:
                    continue
                close2 = False
            if track:
                z = left[y]
                a3 = other3[x]
                if a3 == z:
                    n3 = length3[x]
                    if not rem3[n3]:
                        continue
                    close3 = True
                else:
                    n3 = length3[x] + length3[z]
                    if n3 > top3[0]:
                        continue
                    close3 = False

            if close2:
                saved_top = top[0]
                rem[n2] -= 1
                if not rem[n2] and n2 == saved_top:
                    shrink_top(rem, top)
            else:
                b = other[y]
                saved = (a, other[a], length[a], b, other[b], length[b])
                other[a] = b
                other[b] = a
                length[a] = length[b] = n2
            if track:
                if close3:
                    saved_top3 = top3[0]
                    rem3[n3] -= 1
                    if not rem3[n3] and n3 == saved_top3:
                        shrink_top(rem3, top3)
                else:
                    b3 = other3[z]
                    saved3 = (a3, other3[a3], length3[a3], b3, other3[b3], length3[b3])
                    other3[a3] = b3
                    other3[b3] = a3
                    length3[a3] = length3[b3] = n3
            s[x] = y
            used[y] = True

            if prune is None or x >= prune_depth or prune(s, x + 1):
                yield from rec(x + 1)

            used[y] = False
            s[x] = -1
            if track:
                if close3:
                    rem3[n3] += 1
                    top3[0] = saved_top3
                else:
                    i, oi, li, j, oj, lj = saved3
                    other3[j] = oj
                    length3[j] = lj
                    other3[i] = oi
                    length3[i] = li
            if close2:
                rem[n2] += 1
                top[0] = saved_top
            else:
                i, oi, li, j, oj, lj = saved
                other[j] = oj
                length[j] = lj
                other[i] = oi
                length[i] = li

    return rec(0)
