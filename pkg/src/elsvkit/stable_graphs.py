"""Stable graphs of compact type data (genus, markings, edges) with automorphisms.

A stable graph holds a genus and a set of marking labels per vertex plus a
multiset of edges, loops allowed. Every constructor path routes through a
canonical form, so equal graphs compare equal and enumeration can dedup by
hashing. aut_order counts graph automorphisms: vertex permutations that
preserve genera, markings and adjacency, times permutations of parallel
edges, times the half-edge swap of each loop.

Enumeration proceeds by edge count: each graph with k+1 edges contracts to
one with k edges, so repeatedly applying the two inverse moves (split a
vertex, or drop a handle into a loop) starting from the one-vertex graph
reaches everything.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Iterator, List, Sequence, Tuple

from .errors import ParameterError, StabilityError

Edge = Tuple[int, int]


@dataclass(frozen=True)
class StableGraph:
    genera: Tuple[int, ...]
    legs: Tuple[Tuple[int, ...], ...]
    edges: Tuple[Edge, ...]
    aut_order: int

    @property
    def num_vertices(self) -> int:
        return len(self.genera)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def genus(self) -> int:
        return sum(self.genera) + len(self.edges) - len(self.genera) + 1

    @property
    def num_legs(self) -> int:
        return sum(len(l) for l in self.legs)

    def valence(self, v: int) -> int:
        """Marked points plus half-edges at vertex v."""
        ends = sum((e[0] == v) + (e[1] == v) for e in self.edges)
        return len(self.legs[v]) + ends

    def vertex_slots(self, v: int) -> List[Tuple]:
        """Ordered point slots at v: legs by label, then edge ends."""
        slots: List[Tuple] = [("leg", l) for l in self.legs[v]]
        for idx, (a, b) in enumerate(self.edges):
            if a == v:
                slots.append(("end", idx, 0))
            if b == v:
                slots.append(("end", idx, 1))
        return slots

    def debug_dump(self) -> str:
        vs = " ".join(f"g{gv}" for gv in self.genera)
        es = ",".join(f"(v{a},v{b})" for a, b in self.edges)
        ls = ",".join(
            f"{l}->v{v}" for v in range(self.num_vertices) for l in self.legs[v]
        )
        return f"g={self.genus},n={self.num_legs}: V[{vs}] E[{es}] L[{ls}]"


def _edge_aut_factor(edges: Tuple[Edge, ...]) -> int:
    aut = 1
    mult: Dict[Edge, int] = {}
    for e in edges:
        mult[e] = mult.get(e, 0) + 1
    for (a, b), m in mult.items():
        if a == b:
            aut *= 2**m
        for k in range(2, m + 1):
            aut *= k
    return aut


def _canonical(genera: Sequence[int], legs: Sequence[Tuple[int, ...]],
               edges: Sequence[Edge]) -> StableGraph:
    V = len(genera)
    if V == 1:
        enc_edges = tuple(edges)
        return StableGraph(
            (genera[0],), (tuple(sorted(legs[0])),), enc_edges,
            _edge_aut_factor(enc_edges),
        )

    loops = [0] * V
    deg = [0] * V
    for a, b in edges:
        if a == b:
            loops[a] += 1
        deg[a] += 1
        deg[b] += 1
    slegs = [tuple(sorted(l)) for l in legs]
    colors: List[Tuple] = [
        (genera[v], slegs[v], loops[v], deg[v]) for v in range(V)
    ]

    # Orderings are searched within cells of equal invariants. Any finer
    # invariant is only a speedup: the orderings realizing the minimal
    # encoding always form a coset of the vertex automorphisms. One round
    # of neighbor refinement is applied if the cells look expensive.
    cells_map: Dict[Tuple, List[int]] = {}
    for v in range(V):
        cells_map.setdefault(colors[v], []).append(v)
    work = 1
    for c in cells_map.values():
        for k in range(2, len(c) + 1):
            work *= k
    if work > 720:
        adj: List[Dict[int, int]] = [dict() for _ in range(V)]
        for a, b in edges:
            if a != b:
                adj[a][b] = adj[a].get(b, 0) + 1
                adj[b][a] = adj[b].get(a, 0) + 1
        refined = [
            (colors[v], tuple(sorted((colors[u], m) for u, m in adj[v].items())))
            for v in range(V)
        ]
        cells_map = {}
        for v in range(V):
            cells_map.setdefault(refined[v], []).append(v)

    cells = [cells_map[c] for c in sorted(cells_map)]

    best = None
    best_count = 0
    pos = [0] * V
    for pieces in itertools.product(*(itertools.permutations(c) for c in cells)):
        i = 0
        for piece in pieces:
            for v in piece:
                pos[v] = i
                i += 1
        enc_edges = tuple(sorted(
            (pos[a], pos[b]) if pos[a] <= pos[b] else (pos[b], pos[a])
            for a, b in edges
        ))
        if best is None or enc_edges < best[2]:
            order = [v for piece in pieces for v in piece]
            best = (
                tuple(genera[v] for v in order),
                tuple(slegs[v] for v in order),
                enc_edges,
            )
            best_count = 1
        elif enc_edges == best[2]:
            best_count += 1

    return StableGraph(best[0], best[1], best[2], best_count * _edge_aut_factor(best[2]))


def make_stable_graph(genera, legs, edges) -> StableGraph:
    """Canonicalize raw data; validates per-vertex stability."""
    genera = tuple(int(x) for x in genera)
    legs = tuple(tuple(sorted(int(l) for l in ls)) for ls in legs)
    edges = tuple((min(a, b), max(a, b)) for a, b in edges)
    if len(legs) != len(genera):
        raise ParameterError("genera and legs must have one entry per vertex")
    if any(g < 0 for g in genera):
        raise ParameterError("vertex genera must be nonnegative")
    G = _canonical(genera, legs, edges)
    for v in range(G.num_vertices):
        if 2 * G.genera[v] - 2 + G.valence(v) <= 0:
            raise StabilityError(f"vertex {v} of {G.debug_dump()} is not stable")
    return G


def _degenerations(G: StableGraph) -> Iterator[StableGraph]:
    V = G.num_vertices
    for v in range(V):
        # drop a handle: genus - 1, add a loop
        if G.genera[v] >= 1:
            genera = list(G.genera)
            genera[v] -= 1
            yield _canonical(genera, G.legs, G.edges + ((v, v),))
        # split the vertex across a new edge
        gv = G.genera[v]
        items: List[Tuple] = [("leg", l) for l in G.legs[v]]
        for idx, (a, b) in enumerate(G.edges):
            if a == v:
                items.append(("end", idx, 0))
            if b == v:
                items.append(("end", idx, 1))
        k = len(items)
        for g1 in range(gv + 1):
            g2 = gv - g1
            if g1 > g2:
                continue
            # when the genus split is symmetric, fixing slot 0 on side A
            # halves the candidate count without losing classes
            masks = range(1 << k) if g1 < g2 or k == 0 else (
                m | 1 for m in range(0, 1 << k, 2)
            )
            for mask in masks:
                na = 1 + bin(mask).count("1")
                nb = 1 + k - (na - 1)
                if 2 * g1 - 2 + na <= 0 or 2 * g2 - 2 + nb <= 0:
                    continue
                genera = list(G.genera) + [g2]
                genera[v] = g1
                legs_a, legs_b = [], []
                new_edges = [list(e) for e in G.edges]
                for i, item in enumerate(items):
                    to_b = not (mask >> i & 1)
                    if item[0] == "leg":
                        (legs_b if to_b else legs_a).append(item[1])
                    elif to_b:
                        _, idx, side = item
                        new_edges[idx][side] = V
                legs = [list(l) for l in G.legs] + [legs_b]
                legs[v] = legs_a
                new_edges.append([v, V])
                yield _canonical(
                    genera,
                    [tuple(sorted(l)) for l in legs],
                    [(min(a, b), max(a, b)) for a, b in new_edges],
                )


@lru_cache(maxsize=None)
def enumerate_stable_graphs(g: int, n: int) -> Tuple[StableGraph, ...]:
    """All isomorphism classes for genus g with n markings, by edge count."""
    if g < 0 or n < 0:
        raise ParameterError("genus and marking count must be nonnegative")
    if 2 * g - 2 + n <= 0:
        raise StabilityError(f"(g, n) = ({g}, {n}) is not stable")
    trivial = _canonical([g], [tuple(range(1, n + 1))], [])
    levels: List[set] = [{trivial}]
    for _ in range(3 * g - 3 + n):
        nxt = set()
        for G in levels[-1]:
            nxt.update(_degenerations(G))
        levels.append(nxt)
    out: List[StableGraph] = []
    for level in levels:
        for G in level:
            assert G.genus == g and G.num_legs == n
        out.extend(sorted(level, key=lambda G: (G.genera, G.legs, G.edges)))
    return tuple(out)


def enumerate_weightings(G: StableGraph, r: int, s: int, a: Sequence[int]
                         ) -> List[Tuple[int, ...]]:
    """Mod-r half-edge weightings compatible with the twist data (r, s, a).

    a has one entry per marking label (label i reads a[i-1]); the leg
    half-edge takes a_i mod r, the two halves of an edge take opposite
    values, and at each vertex the half-edge values add up to
    s(2g_v - 2 + n_v) mod r. Returned as per-edge values at the first
    endpoint slot of each edge, in lexicographic order.
    """
    if r < 1:
        raise ParameterError("twist level r must be >= 1")
    if len(a) != G.num_legs:
        raise ParameterError("need one twist per marking label")
    V = G.num_vertices
    target = [0] * V
    for v in range(V):
        target[v] = (s * (2 * G.genera[v] - 2 + G.valence(v))) % r
        for l in G.legs[v]:
            target[v] = (target[v] - a[l - 1]) % r
    out = []
    for assign in itertools.product(range(r), repeat=G.num_edges):
        residue = list(target)
        for t, (x, y) in zip(assign, G.edges):
            residue[x] = (residue[x] - t) % r
            residue[y] = (residue[y] + t) % r
        if any(residue):
            continue
        out.append(tuple(assign))
    return out
