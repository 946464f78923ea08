"""Permutation arithmetic, canonical forms, centralizers, conjugacy classes."""
import math
from itertools import permutations as itertools_permutations

import pytest
from hypothesis import given, settings, strategies as st

from dsregion.permgroup import (
    CycleType,
    Permutation,
    all_cycle_types,
    canonical_cycle_form,
    centralizer_generators,
    compose,
    conjugacy_class,
    conjugate,
    conjugator_to_canonical,
    cycle_type,
    format_cycles,
    parse_cycles,
)


def perm_strategy(n):
    return st.permutations(list(range(n))).map(Permutation)


def brute_compose(p, q):
    # independent image-table evaluation
    return tuple(p.images[q.images[i]] for i in range(p.n))


class TestPermutation:
    def test_rejects_non_bijection(self):
        with pytest.raises(ValueError):
            Permutation((0, 0, 2))

    def test_one_line_round_trip(self):
        p = parse_cycles("(145)(23)", 5)
        assert Permutation.from_one_line(p.one_line()) == p
        assert p.one_line() == (4, 3, 2, 5, 1)

    def test_compose_identity(self):
        c = parse_cycles("(123)", 3)
        assert compose(Permutation.identity(3), c) == c
        assert compose(c, Permutation.identity(3)) == c

    def test_involution_squares_to_identity(self):
        t = parse_cycles("(12)", 2)
        assert compose(t, t) == Permutation.identity(2)

    def test_compose_three_cycle(self):
        # brute-force table: (123) twice sends 1->3, 2->1, 3->2, i.e. (132)
        c = parse_cycles("(123)", 3)
        assert compose(c, c).images == brute_compose(c, c) == (2, 0, 1)
        assert compose(c, c) == parse_cycles("(132)", 3)

    def test_compose_degree_mismatch(self):
        with pytest.raises(ValueError):
            compose(Permutation.identity(3), Permutation.identity(4))

    def test_inverse(self):
        p = parse_cycles("(1425)", 5)
        assert compose(p, p.inverse()) == Permutation.identity(5)

    def test_parity(self):
        assert parse_cycles("(123)", 3).is_even()
        assert not parse_cycles("(12)", 3).is_even()
        assert Permutation.identity(4).is_even()


class TestConjugate:
    def test_identity_conjugator(self):
        t = parse_cycles("(12)", 2)
        assert conjugate(t, Permutation.identity(2)) == t

    def test_three_cycle_by_transposition(self):
        # brute force: relabeling 1<->2 turns (123) into the cycle 1->3->2
        got = conjugate(parse_cycles("(123)", 3), parse_cycles("(12)", 3))
        assert got == parse_cycles("(132)", 3)

    def test_degree_mismatch(self):
        with pytest.raises(ValueError):
            conjugate(Permutation.identity(3), Permutation.identity(5))

    @settings(max_examples=50, deadline=None)
    @given(perm_strategy(6), perm_strategy(6))
    def test_preserves_cycle_type(self, p, g):
        assert cycle_type(conjugate(p, g)) == cycle_type(p)

    @settings(max_examples=50, deadline=None)
    @given(perm_strategy(5), perm_strategy(5))
    def test_matches_definition(self, p, g):
        expected = compose(compose(g, p), g.inverse())
        assert conjugate(p, g) == expected


class TestCycleType:
    def test_identity(self):
        assert cycle_type(Permutation.identity(5)).parts == (1, 1, 1, 1, 1)

    def test_mixed(self):
        assert cycle_type(parse_cycles("(145)(23)", 5)).parts == (3, 2)
        assert cycle_type(parse_cycles("(1425)", 5)).parts == (4, 1)

    def test_validation(self):
        with pytest.raises(ValueError):
            CycleType((1, 2))
        with pytest.raises(ValueError):
            CycleType((0,))

    def test_order_is_lexicographic_on_parts(self):
        types = all_cycle_types(5)
        assert types[0].parts == (5,)
        assert types[-1].parts == (1, 1, 1, 1, 1)
        assert all(a > b for a, b in zip(types, types[1:]))

    def test_partition_count(self):
        # p(n) for n = 1..10
        for n, pn in zip(range(1, 11), [1, 2, 3, 5, 7, 11, 15, 22, 30, 42]):
            assert len(all_cycle_types(n)) == pn


class TestCanonicalForm:
    def test_block_layout(self):
        p = canonical_cycle_form(CycleType((3, 2)))
        assert p.one_line() == (2, 3, 1, 5, 4)

    def test_identity_type(self):
        assert canonical_cycle_form(CycleType((1, 1, 1))) == Permutation.identity(3)

    def test_full_cycle(self):
        assert canonical_cycle_form(CycleType((5,))) == parse_cycles("(12345)", 5)

    @settings(max_examples=60, deadline=None)
    @given(perm_strategy(6))
    def test_conjugator_property(self, p):
        g = conjugator_to_canonical(p)
        assert conjugate(p, g) == canonical_cycle_form(cycle_type(p))

    def test_conjugator_examples(self):
        for text in ["(1425)", "(145)(23)"]:
            p = parse_cycles(text, 5)
            g = conjugator_to_canonical(p)
            assert conjugate(p, g) == canonical_cycle_form(cycle_type(p))


def group_closure(gens):
    """Subgroup order by breadth-first closure (independent of any formula)."""
    if not gens:
        return 1
    n = gens[0].n
    seen = {Permutation.identity(n).images}
    frontier = [Permutation.identity(n)]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = compose(g, x)
                if y.images not in seen:
                    seen.add(y.images)
                    nxt.append(y)
        frontier = nxt
    return len(seen)


class TestCentralizer:
    def test_requires_canonical(self):
        with pytest.raises(ValueError):
            centralizer_generators(parse_cycles("(1425)", 5))

    def test_generators_commute(self):
        for t in all_cycle_types(5):
            p = canonical_cycle_form(t)
            for g in centralizer_generators(p):
                assert conjugate(p, g) == p

    def test_four_cycle_order(self):
        p = canonical_cycle_form(CycleType((4, 1)))
        assert group_closure(centralizer_generators(p)) == 4

    def test_identity_centralizer_is_whole_group(self):
        for n in (2, 3, 4, 5):
            p = Permutation.identity(n)
            assert group_closure(centralizer_generators(p)) == math.factorial(n)

    def test_order_formula_all_types_n6(self):
        for t in all_cycle_types(6):
            p = canonical_cycle_form(t)
            assert group_closure(centralizer_generators(p)) == t.centralizer_order()


class TestConjugacyClass:
    def test_sizes_match_formula(self):
        for n in range(2, 7):
            for t in all_cycle_types(n):
                count = sum(1 for _ in conjugacy_class(t))
                assert count == t.class_size()

    def test_full_cycle_count(self):
        for n in range(2, 7):
            count = sum(1 for _ in conjugacy_class(CycleType((n,))))
            assert count == math.factorial(n - 1)

    def test_identity_class(self):
        assert list(conjugacy_class(CycleType((1, 1, 1)))) == [Permutation.identity(3)]

    def test_type_3_2_has_twenty_elements(self):
        elems = list(conjugacy_class(CycleType((3, 2))))
        assert len(elems) == 20
        assert len(set(elems)) == 20
        assert all(cycle_type(p).parts == (3, 2) for p in elems)

    def test_matches_brute_force_filter(self):
        for n in (3, 4, 5):
            all_perms = [Permutation(p) for p in itertools_permutations(range(n))]
            for t in all_cycle_types(n):
                brute = {p.images for p in all_perms if cycle_type(p) == t}
                mine = {p.images for p in conjugacy_class(t)}
                assert mine == brute

    def test_orbit_stabilizer_product(self):
        for n in (3, 4, 5):
            for t in all_cycle_types(n):
                order = group_closure(centralizer_generators(canonical_cycle_form(t)))
                assert t.class_size() * order == math.factorial(n)


class TestCycleNotation:
    def test_parse_examples(self):
        assert parse_cycles("(145)(23)", 5).images == (3, 2, 1, 4, 0)
        assert parse_cycles("( 1 4 5 ) (2 3)", 5).images == (3, 2, 1, 4, 0)
        assert parse_cycles("()", 4) == Permutation.identity(4)
        assert parse_cycles("", 4) == Permutation.identity(4)

    def test_parse_commas_for_large_points(self):
        p = parse_cycles("(1,10)(2,3)", 10)
        assert p.images[0] == 9 and p.images[9] == 0

    def test_parse_errors(self):
        for bad in ["(14", "(12)(21)", "(120)", "(16)", "12"]:
            with pytest.raises(ValueError):
                parse_cycles(bad, 5)

    @settings(max_examples=80, deadline=None)
    @given(st.integers(2, 11).flatmap(lambda n: st.permutations(list(range(n)))))
    def test_round_trip(self, images):
        p = Permutation(images)
        assert parse_cycles(format_cycles(p), p.n) == p
