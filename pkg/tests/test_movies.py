from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from oracles import balanced_count, crossing_bound_oracle
from tilerect.assembler import AssemblySequence
from tilerect.core import TAS, Assembly, Glue, TileType, direction_between
from tilerect.movies import (
    CrossingSpec, MovieError, Window, audit_crossings, brute_force_crossing_census, catalan,
    crossing_upper_bound, enumerate_pairings, extract_movie, glue_lower_bound, greedy_reconstruct,
    induced_pairings, pairing_to_parens, perfect_matchings, producible_replay, simple_path_census,
    splice, submovie_count_bound, glue_bound_threshold, tile_lower_bound,
)

FIG_E = {2, 4, 5, 6, 8, 10, 12}


class TestCatalan:
    @pytest.mark.parametrize("p,c", [(0, 1), (1, 1), (2, 2), (3, 5), (10, 16796)])
    def test_values(self, p, c):
        assert catalan(p) == c

    @pytest.mark.parametrize("p", range(0, 9))
    def test_matches_balanced_string_count(self, p):
        assert catalan(p) == balanced_count(p)


class TestPairings:
    def test_fig3_near(self):
        assert pairing_to_parens([(2, 4), (5, 10), (6, 8)], FIG_E, 12) == "()(())"

    def test_fig3_far(self):
        assert pairing_to_parens([(4, 8), (5, 6), (10, 12)], FIG_E, 2) == "(())()"

    def test_empty(self):
        assert pairing_to_parens([], {3}, 3) == ""

    def test_crossing_rejected(self):
        with pytest.raises(ValueError, match="non-nested pairing"):
            pairing_to_parens([(2, 5), (4, 6)], {2, 4, 5, 6, 9}, 9)

    def test_overlap_rejected(self):
        with pytest.raises(ValueError, match="overlapping pairs"):
            pairing_to_parens([(2, 4), (4, 5)], {2, 4, 5, 6, 9}, 9)

    def test_three_rows_one_pairing(self):
        assert len(enumerate_pairings({1, 2, 3}, 2)) == 1

    def test_seven_rows_five_pairings(self):
        assert len(enumerate_pairings(set(range(1, 8)), 4)) == 5

    def test_noncrossing_subset_of_all_matchings(self):
        rows = [1, 3, 4, 7, 8, 9]
        planar = []
        for M in perfect_matchings(rows):
            try:
                pairing_to_parens(M, set(rows) | {99}, 99)
                planar.append(sorted(M))
            except ValueError:
                pass
        assert sorted(planar) == sorted(sorted(M) for M in enumerate_pairings(set(rows) | {99}, 99))


class TestGreedy:
    def test_fig3(self):
        pi = greedy_reconstruct(CrossingSpec(12, FIG_E, 12, 2), "()(())", "(())()")
        assert len(pi) == 14
        assert pi[:2] == [(0, 12), (1, 12)] and pi[-1] == (1, 2)

    def test_fig4(self):
        assert len(greedy_reconstruct(CrossingSpec(12, FIG_E, 12, 2), "(())()", "()()()")) == 10

    def test_single_crossing(self):
        assert greedy_reconstruct(CrossingSpec(5, {3}, 3, 3), "", "") == [(0, 3), (1, 3)]

    @settings(max_examples=200, deadline=None)
    @given(st.data())
    def test_total_and_never_repeats(self, data):
        k = data.draw(st.integers(1, 9))
        e = data.draw(st.sampled_from([x for x in range(1, k + 1, 2)]))
        E = data.draw(st.sets(st.integers(1, k), min_size=e, max_size=e))
        f = data.draw(st.sampled_from(sorted(E)))
        lst = data.draw(st.sampled_from(sorted(E)))
        P0 = data.draw(st.sampled_from(enumerate_pairings(E, f)))
        P1 = data.draw(st.sampled_from(enumerate_pairings(E, lst)))
        spec = CrossingSpec(k, E, f, lst)
        x0, x1 = pairing_to_parens(P0, E, f), pairing_to_parens(P1, E, lst)
        pi = greedy_reconstruct(spec, x0, x1)
        assert len(pi) == len(set(pi)) <= 2 * e
        assert pi == greedy_reconstruct(spec, x0, x1)
        if len(pi) == 2 * e:
            assert pi[-1] == (1, lst)


def test_pairing_encoding_exhaustive():
    for size in (1, 3, 5, 7, 9):
        for E in combinations(range(1, 10), size):
            for f in E:
                pairings = enumerate_pairings(E, f)
                strings = {pairing_to_parens(P, E, f) for P in pairings}
                assert len(pairings) == catalan((size - 1) // 2) == len(strings)


class TestBounds:
    @pytest.mark.parametrize("k,e", [(1, 1), (3, 3), (12, 7), (9, 5), (20, 11)])
    def test_crossing_bound_matches_oracle(self, k, e):
        assert crossing_upper_bound(k, e) == crossing_bound_oracle(k, e)

    def test_crossing_bound_values(self):
        assert crossing_upper_bound(1, 1) == 1
        assert crossing_upper_bound(3, 3) == 9
        assert crossing_upper_bound(12, 7) == 970200

    def test_submovie_examples(self):
        assert submovie_count_bound(1, 1) == (32, 1)
        assert submovie_count_bound(2, 3)[1] == 6

    def test_intermediate_sum_dominated(self):
        for k in range(1, 21):
            for g in range(1, 9):
                final, inter = submovie_count_bound(k, g)
                assert inter <= final

    def test_threshold(self):
        assert glue_bound_threshold(2, 3) == 9216
        for k in range(1, 6):
            for g in range(1, 6):
                assert glue_bound_threshold(k, g) < glue_bound_threshold(k, g + 1)
                assert glue_bound_threshold(k, g) < glue_bound_threshold(k + 1, g)

    def test_lower_bounds(self):
        assert glue_lower_bound(1, 128) == 1
        assert glue_lower_bound(1, 129) == 2
        assert tile_lower_bound(2, 2**18) == 1
        assert glue_lower_bound(2, (128 * 5) ** 2) == 5
        assert glue_lower_bound(2, (128 * 5) ** 2 + 1) == 6


# ------------------------------------------------------------------ movies


def path_system(path):
    """Tiles binding consecutive cells of ``path`` with unique glues; seed at path[0]."""
    tiles = []
    for i, p in enumerate(path):
        sides = {}
        if i > 0:
            sides[direction_between(p, path[i - 1])] = Glue(f"g{i - 1}", 1)
        if i + 1 < len(path):
            sides[direction_between(p, path[i + 1])] = Glue(f"g{i}", 1)
        tiles.append(TileType.make(f"t{i}", **sides))
    tas = TAS(tuple(tiles), Assembly({path[0]: tiles[0]}), just_barely_3d=False)
    seq = AssemblySequence(tuple(zip(path, tiles)), Assembly(dict(zip(path, tiles))))
    return tas, seq


def test_two_tile_crossing_movie():
    _, seq = path_system([(0, 0, 0), (1, 0, 0)])
    m = extract_movie(seq, Window(0))
    assert [(p, d, g.label) for p, d, g in m.steps] == [((0, 0, 0), "E", "g0"), ((1, 0, 0), "W", "g0")]


@st.composite
def walks(draw):
    n = draw(st.integers(2, 25))
    path, seen = [(0, 0, 0)], {(0, 0, 0)}
    for _ in range(n):
        x, y, _ = path[-1]
        options = [q for q in ((x + 1, y, 0), (x - 1, y, 0), (x, y + 1, 0), (x, y - 1, 0)) if q not in seen]
        if not options:
            break
        q = draw(st.sampled_from(options))
        path.append(q)
        seen.add(q)
    return path


@settings(max_examples=150, deadline=None)
@given(walks(), st.integers(-3, 3))
def test_restricted_movie_has_paired_glues(path, c0):
    _, seq = path_system(path)
    crossings = sum(1 for p, q in zip(path, path[1:]) if {p[0], q[0]} == {c0, c0 + 1})
    m = extract_movie(seq, Window(c0), "restricted")
    assert len(m) == 2 * crossings
    for i in range(0, len(m), 2):
        assert m.steps[i][2] == m.steps[i + 1][2]


def test_restricted_needs_simple_path():
    s = TileType.make("s", E=Glue("a", 1), N=Glue("b", 1))
    x, y = TileType.make("x", W=Glue("a", 1)), TileType.make("y", S=Glue("b", 1))
    seq = AssemblySequence((((0, 0, 0), s), ((1, 0, 0), x), ((0, 1, 0), y)),
                           Assembly({(0, 0, 0): s, (1, 0, 0): x, (0, 1, 0): y}))
    with pytest.raises(MovieError):
        extract_movie(seq, Window(0), "restricted")


def test_bond_forming_drops_unbound_glues():
    s = TileType.make("s", E=Glue("a", 1))
    seq = AssemblySequence((((0, 0, 0), s),), Assembly({(0, 0, 0): s}))
    assert len(extract_movie(seq, Window(0), "full")) == 1
    assert len(extract_movie(seq, Window(0), "bond-forming")) == 0


# ------------------------------------------------------------------ splice


def periodic_line(n):
    s = TileType.make("s", E=Glue("a", 1))
    X = TileType.make("X", W=Glue("a", 1), E=Glue("b", 1))
    Y = TileType.make("Y", W=Glue("b", 1), E=Glue("a", 1))
    tas = TAS((s, X, Y), Assembly({(0, 0, 0): s}), just_barely_3d=False)
    steps = [((0, 0, 0), s)] + [((i, 0, 0), X if i % 2 else Y) for i in range(1, n)]
    return tas, AssemblySequence(tuple(steps), Assembly(dict(steps)))


def test_identity_splice():
    _, seq = periodic_line(5)
    assert splice(seq, seq, Window(2), 0) == seq.result


def test_pumped_line_is_longer_and_producible():
    tas, seq = periodic_line(5)
    pumped = splice(seq, seq, Window(2), -2)
    assert len(pumped) == 7 > len(seq.result)
    order = producible_replay(tas, pumped)
    assert len(order) == 7


def test_mismatched_movies():
    _, seq = periodic_line(5)
    with pytest.raises(MovieError, match="window movies differ"):
        splice(seq, seq, Window(2), -1)


# ------------------------------------------------------------------ census


@pytest.mark.parametrize("k,slack", [(1, 0), (2, 1), (3, 1), (3, 2), (4, 1), (5, 1)])
def test_census_matches_direct_path_enumeration(k, slack):
    assert set(brute_force_crossing_census(k, slack).sequences()) == simple_path_census(k, slack)


def test_census_k1():
    assert brute_force_crossing_census(1, 3).count == 1


def test_census_frozen_counts():
    assert brute_force_crossing_census(3, 3).by_e() == {1: 3, 3: 2}
    assert brute_force_crossing_census(5, 3).by_e() == {1: 5, 3: 20, 5: 8}


def test_census_limits():
    with pytest.raises(ValueError):
        brute_force_crossing_census(7, 1)


def test_census_sequences_replay_through_greedy():
    census = brute_force_crossing_census(5, 2)
    for (E, f, lst), seqs in census.classes.items():
        for pi in seqs:
            near, far = induced_pairings(pi)
            x0, x1 = pairing_to_parens(near, E, f), pairing_to_parens(far, E, lst)
            assert tuple(greedy_reconstruct(CrossingSpec(5, E, f, lst), x0, x1)) == pi


def test_census_unique_per_pairing_class():
    census = brute_force_crossing_census(5, 2)
    for (E, f, lst), seqs in census.classes.items():
        keys = [tuple(map(tuple, map(sorted, induced_pairings(pi)))) for pi in seqs]
        assert len(keys) == len(set(keys))


def test_audit_k3():
    res = audit_crossings(3, 3)
    assert res.ok and res.rows == [(1, 3, 3), (3, 2, 9)]


def test_census_dump_one_line_per_sequence():
    census = brute_force_crossing_census(3, 1)
    assert census.dump().splitlines()[0].startswith("n")
    assert len(census.dump().splitlines()) == census.count
