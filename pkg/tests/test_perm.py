import itertools
from math import factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st
from oracles import conjugacy_class, partitions_of

from hurwitz.core import Partition
from hurwitz.errors import DegreeMismatch, HurwitzError
from hurwitz.perm import (
    Permutation,
    canonical_of_type,
    centralizer_generators,
    compose,
    conjugate,
    cycle_type,
    enumerate_of_type,
    group_elements,
    inverse,
    is_transitive,
)


def P(*parts):
    return Partition(tuple(parts), sum(parts))


def perm(text, d):
    return Permutation.parse(text, d)


@st.composite
def permutations(draw, d=None):
    d = d if d is not None else draw(st.integers(1, 9))
    return Permutation(tuple(draw(st.permutations(range(d)))))


@st.composite
def same_degree(draw, k):
    d = draw(st.integers(1, 9))
    return [draw(permutations(d)) for _ in range(k)]


class TestArithmetic:
    def test_compose_three_cycle(self):
        assert compose(perm("(0 1 2)", 3), perm("(0 1 2)", 3)) == perm("(0 2 1)", 3)

    def test_compose_applies_right_first(self):
        p, q = perm("(0 1)", 3), perm("(1 2)", 3)
        r = compose(p, q)
        assert [r(x) for x in range(3)] == [p(q(x)) for x in range(3)]
        assert r == perm("(0 1 2)", 3)

    def test_involution(self):
        assert compose(perm("(0 1)", 2), perm("(0 1)", 2)).is_identity()

    def test_identity_left(self):
        q = perm("(0 3)(1 2)", 4)
        assert compose(Permutation.identity(4), q) == q

    def test_degree_mismatch(self):
        with pytest.raises(DegreeMismatch):
            compose(perm("(0 1)", 2), perm("(0 1)", 3))

    @pytest.mark.parametrize(
        "text, expected, d", [("(0 1 2)", "(0 2 1)", 3), ("()", "()", 4), ("(0 1)(2 3)", "(0 1)(2 3)", 4)]
    )
    def test_inverse(self, text, expected, d):
        assert inverse(perm(text, d)) == perm(expected, d)

    @given(same_degree(3))
    def test_group_laws(self, ps):
        p, q, r = ps
        assert compose(p, compose(q, r)) == compose(compose(p, q), r)
        assert compose(p, inverse(p)).is_identity()
        assert inverse(inverse(p)) == p

    @given(same_degree(2))
    def test_conjugation_preserves_cycle_type(self, ps):
        p, q = ps
        assert cycle_type(conjugate(p, q)) == cycle_type(p)


class TestText:
    def test_canonical_order(self):
        p = Permutation.from_cycles([[5, 4], [3, 1, 2, 0]], 6)
        assert str(p) == "(0 3 1 2)(4 5)"
        assert p.cycles() == [(0, 3, 1, 2), (4, 5)]

    def test_cycles_include_fixed_points(self):
        assert perm("(1 2)", 4).to_json() == [[1, 2], [0], [3]]

    def test_identity_text(self):
        assert str(Permutation.identity(3)) == "()"

    @given(permutations())
    def test_round_trip(self, p):
        assert Permutation.parse(str(p), p.degree) == p
        assert Permutation.from_cycles(p.to_json(), p.degree) == p

    def test_not_a_permutation(self):
        with pytest.raises(HurwitzError):
            Permutation((0, 0, 1))
        with pytest.raises(HurwitzError):
            Permutation.from_cycles([[0, 1], [1, 2]], 3)
        with pytest.raises(HurwitzError):
            Permutation.parse("(0 1", 3)


class TestCycleType:
    def test_two_triangles(self):
        assert cycle_type(perm("(0 1 2)(3 4 5)", 6)) == P(3, 3)

    def test_identity(self):
        assert cycle_type(Permutation.identity(4)) == P(1, 1, 1, 1)

    def test_family_part(self):
        assert cycle_type(perm("(0 1 2 3)(4 5)", 6)) == P(4, 2)


class TestCanonical:
    @pytest.mark.parametrize(
        "parts, text", [((4, 2), "(0 1 2 3)(4 5)"), ((3, 3), "(0 1 2)(3 4 5)"), ((1, 1), "()")]
    )
    def test_examples(self, parts, text):
        assert canonical_of_type(P(*parts)) == perm(text, sum(parts))

    @pytest.mark.parametrize("parts", [p for d in range(1, 8) for p in partitions_of(d)])
    def test_has_type(self, parts):
        assert cycle_type(canonical_of_type(P(*parts))).parts == parts


class TestTransitive:
    def test_two_orbits(self):
        assert not is_transitive([perm("(0 1 2)", 6), perm("(3 4 5)", 6)], 6)

    def test_long_cycle(self):
        assert is_transitive([perm("(0 1 2 3 4 5)", 6)], 6)

    def test_generated(self):
        assert is_transitive([perm("(0 1 2)", 3), perm("(0 1)", 3)], 3)

    def test_trivial_degree(self):
        assert is_transitive([], 1)

    def test_mismatch(self):
        with pytest.raises(DegreeMismatch):
            is_transitive([perm("(0 1)", 2)], 3)


ALL_SMALL = [p for d in range(1, 7) for p in partitions_of(d)]


class TestEnumerate:
    @pytest.mark.parametrize("parts, count", [((2, 2), 3), ((3, 3), 40), ((1,), 1)])
    def test_counts(self, parts, count):
        # brute force over S_d agrees with the closed formula
        assert len(conjugacy_class(parts)) == count
        assert sum(1 for _ in enumerate_of_type(P(*parts))) == count

    def test_degree_one(self):
        assert list(enumerate_of_type(P(1))) == [Permutation.identity(1)]

    @pytest.mark.parametrize("parts", ALL_SMALL)
    def test_matches_brute_force_in_lex_order(self, parts):
        got = [p.images for p in enumerate_of_type(P(*parts))]
        # itertools.permutations is lexicographic, so the filtered class is too
        assert got == list(conjugacy_class(parts))
        formula = factorial(sum(parts)) // P(*parts).centralizer_order()
        assert len(got) == formula == P(*parts).class_size()

    def test_prefix(self):
        full = list(enumerate_of_type(P(3, 3)))
        part = list(enumerate_of_type(P(3, 3), prefix=(1, 2)))
        assert part == [p for p in full if p.images[:2] == (1, 2)]


class TestCentralizer:
    def test_two_triangles(self):
        gens = centralizer_generators(P(3, 3))
        assert set(gens) == {perm("(0 1 2)", 6), perm("(3 4 5)", 6), perm("(0 3)(1 4)(2 5)", 6)}
        assert len(group_elements(gens, 6)) == 18

    def test_single_cycle(self):
        gens = centralizer_generators(P(5))
        assert gens == [canonical_of_type(P(5))]
        assert len(group_elements(gens, 5)) == 5

    def test_identity(self):
        gens = centralizer_generators(P(1, 1, 1, 1))
        assert set(gens) == {perm("(0 1)", 4), perm("(1 2)", 4), perm("(2 3)", 4)}
        assert len(group_elements(gens, 4)) == 24

    @pytest.mark.parametrize("parts", ALL_SMALL)
    def test_generated_group_is_full_centralizer(self, parts):
        pi = P(*parts)
        c = canonical_of_type(pi)
        d = pi.total
        gens = centralizer_generators(pi)
        for g in gens:
            assert compose(g, c) == compose(c, g)
        brute = {q for q in itertools.permutations(range(d)) if all(q[c(x)] == c(q[x]) for x in range(d))}
        group = {g.images for g in group_elements(gens, d)}
        assert group == brute
        assert len(group) == pi.centralizer_order()

    def test_limit(self):
        assert group_elements(centralizer_generators(P(1, 1, 1, 1, 1)), 5, limit=10) == []
