"""Stable graph enumeration and mod-r edge weightings."""

from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

from elsvkit.errors import StabilityError
from elsvkit.stable_graphs import (
    enumerate_stable_graphs,
    enumerate_weightings,
    make_stable_graph,
)


def test_census_small():
    assert len(enumerate_stable_graphs(0, 3)) == 1
    assert len(enumerate_stable_graphs(1, 1)) == 2
    assert len(enumerate_stable_graphs(2, 0)) == 7


def test_genus_two_shapes():
    """Independent hand count: the seven genus-2 graphs by coarse shape."""
    shapes = Counter(
        (tuple(sorted(G.genera)), G.num_edges) for G in enumerate_stable_graphs(2, 0)
    )
    assert shapes == Counter({
        ((2,), 0): 1,      # smooth
        ((1,), 1): 1,      # one loop
        ((1, 1), 1): 1,    # two elliptic pieces
        ((0,), 2): 1,      # two loops on a rational vertex
        ((0, 1), 2): 1,    # loop plus connecting edge
        ((0, 0), 3): 2,    # theta and dumbbell
    })


def test_genus_one_aut_orders():
    auts = sorted(G.aut_order for G in enumerate_stable_graphs(1, 1))
    assert auts == [1, 2]  # smooth, and the loop with its half-edge swap


@given(st.integers(min_value=0, max_value=2), st.integers(min_value=0, max_value=3))
def test_enumeration_invariants(g, n):
    if 2 * g - 2 + n <= 0:
        return
    graphs = enumerate_stable_graphs(g, n)
    assert len(set(graphs)) == len(graphs)
    for G in graphs:
        assert G.genus == g
        assert G.num_legs == n
        assert G.aut_order >= 1
        for v in range(G.num_vertices):
            assert 2 * G.genera[v] - 2 + G.valence(v) > 0


def test_canonical_form_is_presentation_independent():
    Ga = make_stable_graph([0, 1], [[1], []], [(0, 1), (0, 1)])
    Gb = make_stable_graph([1, 0], [[], [1]], [(1, 0), (0, 1)])
    assert Ga == Gb


def test_make_stable_graph_rejects_unstable():
    with pytest.raises(StabilityError):
        make_stable_graph([0], [[1, 2]], [])


def test_loop_weightings_mod_two():
    G = make_stable_graph([0], [[1]], [(0, 0)])
    assert enumerate_weightings(G, 2, 2, (2,)) == [(0,), (1,)]
    # r = 1 leaves a single trivial weighting
    assert enumerate_weightings(G, 1, 1, (1,)) == [(0,)]


def test_weightings_respect_vertex_sums():
    G = make_stable_graph([0, 1], [[1], []], [(0, 0), (0, 1)])
    r, s, a = 3, 1, (3,)
    found = enumerate_weightings(G, r, s, a)
    assert len(found) == 3  # the loop value is unconstrained mod 3
    for w in found:
        assert len(w) == G.num_edges
        # recompute the vertex sums from the returned first-slot values
        sums = [0] * G.num_vertices
        sums[0] += a[0] % r
        for (u, v), wv in zip(G.edges, w):
            sums[u] += wv
            sums[v] += (-wv) % r
        for v in range(G.num_vertices):
            want = (s * (2 * G.genera[v] - 2 + G.valence(v))) % r
            assert sums[v] % r == want
