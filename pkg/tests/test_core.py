import random

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from tilerect.core import (
    NULL_GLUE, TAS, Assembly, AssemblyError, FrontierTracker, Glue, TileType, attach, binding_graph,
    binds, duplicate_side_groups, frontier, is_stable, is_terminal,
)


def tile(name, **sides):
    return TileType.make(name, **{d: Glue(*g) for d, g in sides.items()})


def system(seed, *tiles, temperature=1):
    return TAS(tuple([seed, *tiles]), Assembly({(0, 0, 0): seed}), temperature)


class TestGlue:
    def test_equal_label_and_strength_bind(self):
        assert binds(Glue("x", 1), Glue("x", 1))

    def test_label_mismatch(self):
        assert not binds(Glue("x", 1), Glue("y", 1))

    def test_zero_strength_never_binds(self):
        assert not binds(Glue("x", 0), Glue("x", 0))
        assert not binds(NULL_GLUE, NULL_GLUE)

    def test_strength_mismatch(self):
        assert not binds(Glue("x", 1), Glue("x", 2))

    def test_negative_strength_rejected(self):
        with pytest.raises(ValueError):
            Glue("x", -1)


def test_tile_needs_six_glues():
    with pytest.raises(ValueError):
        TileType("t", (NULL_GLUE,) * 4)


def test_unknown_side_rejected():
    with pytest.raises(ValueError):
        TileType.make("t", Q=Glue("a", 1))


def test_duplicate_lint_flags_same_sides():
    a, b = tile("a", E=("g", 1)), tile("b", E=("g", 1))
    assert duplicate_side_groups([a, b, tile("c")]) == [["a", "b"]]


class TestBindingGraph:
    def test_single_tile(self):
        g = binding_graph({(0, 0, 0): tile("s")})
        assert g.number_of_nodes() == 1 and g.number_of_edges() == 0

    def test_matching_pair(self):
        g = binding_graph({(0, 0, 0): tile("s", E=("a", 1)), (1, 0, 0): tile("t", W=("a", 1))})
        assert list(g.edges(data="weight")) == [((0, 0, 0), (1, 0, 0), 1)]

    def test_diagonal_tiles_disconnected(self):
        g = binding_graph({(0, 0, 0): tile("s", E=("a", 1)), (1, 1, 0): tile("t", W=("a", 1))})
        assert not nx.is_connected(g)

    def test_empty(self):
        with pytest.raises(AssemblyError, match="empty assembly"):
            binding_graph({})


class TestFrontier:
    def test_single_match(self):
        s, t = tile("s", E=("a", 1)), tile("t", W=("a", 1))
        assert frontier(system(s, t), Assembly({(0, 0, 0): s})) == {((1, 0, 0), t)}

    def test_no_match(self):
        s = tile("s", E=("a", 1))
        tas = system(s, tile("t", W=("b", 1)))
        assert frontier(tas, tas.seed) == set()
        assert is_terminal(tas, tas.seed)

    def test_one_attachable_is_not_terminal(self):
        s = tile("s", E=("a", 1))
        tas = system(s, tile("t", W=("a", 1)))
        assert not is_terminal(tas, tas.seed)

    def test_z_outside_two_planes_excluded(self):
        s = tile("s", U=("u", 1), D=("d", 1))
        tas = system(s, tile("up", D=("u", 1)), tile("down", U=("d", 1)))
        assert frontier(tas, tas.seed) == {((0, 0, 1), tas.tile("up"))}

    def test_temperature_two_needs_cooperation(self):
        s = tile("s", E=("a", 1), N=("b", 1))
        x, y = tile("x", W=("a", 1), N=("c", 1)), tile("y", S=("b", 1), E=("d", 1))
        corner = tile("z", S=("c", 1), W=("d", 1))
        tas = system(s, x, y, corner, temperature=2)
        assert frontier(tas, tas.seed) == set()


class TestAttach:
    def test_legal_growth(self):
        s, t = tile("s", E=("a", 1)), tile("t", W=("a", 1))
        tas = system(s, t)
        beta = attach(tas, tas.seed, (1, 0, 0), t)
        assert len(beta) == 2 and is_stable(beta)

    def test_occupied(self):
        s = tile("s", E=("a", 1))
        tas = system(s, tile("t", W=("a", 1)))
        with pytest.raises(AssemblyError, match="illegal attachment"):
            attach(tas, tas.seed, (0, 0, 0), s)

    def test_strength_zero_contact(self):
        s = tile("s", E=("a", 0))
        t = tile("t", W=("a", 0))
        tas = system(s, t)
        with pytest.raises(AssemblyError, match="illegal attachment"):
            attach(tas, tas.seed, (1, 0, 0), t)


def test_seed_must_be_stable():
    s = tile("s")
    with pytest.raises(AssemblyError):
        TAS((s,), Assembly({(0, 0, 0): s, (5, 5, 0): s}))


def test_tile_names_unique():
    s = tile("s")
    with pytest.raises(ValueError):
        TAS((s, tile("s", N=("x", 1))), Assembly({(0, 0, 0): s}))


def test_t11_seed_frontier_is_single_pair(t11):
    assert len(frontier(t11.tas, t11.tas.seed)) == 1


def test_t11_closure_is_terminal(t11, t11_closure):
    assert is_terminal(t11.tas, t11_closure.assembly)


# ---------------------------------------------------------------- properties

LABELS = st.sampled_from(["a", "b", "c"])
GLUE = st.one_of(st.just(None), st.tuples(LABELS, st.integers(1, 2)))


@st.composite
def tile_sets(draw, max_tiles=5):
    n = draw(st.integers(1, max_tiles))
    tiles = []
    for i in range(n):
        sides = {d: g for d in "NESW" if (g := draw(GLUE)) is not None}
        tiles.append(tile(f"t{i}", **sides))
    return tiles


@settings(max_examples=60, deadline=None)
@given(tile_sets(), st.randoms(use_true_random=False))
def test_incremental_frontier_matches_scratch(tiles, rnd):
    tas = TAS(tuple(tiles), Assembly({(0, 0, 0): tiles[0]}))
    tracker = FrontierTracker(tas)
    for _ in range(40):
        assert tracker.frontier() == frontier(tas, tracker.cells)
        pairs = sorted(tracker.frontier(), key=lambda pt: (pt[0], pt[1].name))
        if not pairs:
            break
        p, t = rnd.choice(pairs)
        tracker.attach(p, t)
        assert is_stable(tracker.cells, tas.temperature)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_stability_is_connectivity_at_tau_one(seed):
    rnd = random.Random(seed)
    cells = {}
    for x in range(3):
        for y in range(3):
            if rnd.random() < 0.7:
                cells[(x, y, 0)] = tile(
                    f"c{x}{y}", **{d: ("g", 1) for d in "NESW" if rnd.random() < 0.6})
    if not cells:
        return
    assert is_stable(cells, 1) == nx.is_connected(binding_graph(cells))


def test_attach_round_trip_on_policy_prefix(t11, t11_policy):
    tas = t11.tas
    alpha = tas.seed
    for p, t in t11_policy.steps[1:200]:
        assert (p, t) in frontier(tas, alpha)
        alpha = attach(tas, alpha, p, t)
        assert is_stable(alpha)
