"""Twisted-root classes on moduli of curves, by stable-graph sums.

The class depends on a level r >= 1, a twist 0 <= s <= r and one twist
a_i in {1..r} per marked point. It is assembled as a sum over stable
graphs weighted by mod-r half-edge weightings:

* prefactor r^{E + sum_v (2 g_v - 1)} / |Aut|,
* per vertex  exp(-sum_l (-1)^{l-1} B_{l+1}(s/r)/(l(l+1)) kappa_l),
* per leg     exp(+sum_l (-1)^{l-1} B_{l+1}(a_i/r)/(l(l+1)) psi^l),
* per edge    (1 - exp(sum_l c_l(w) [x^l - (-y)^l])) / (x + y)
              with c_l(w) = (-1)^{l-1} B_{l+1}(w/r)/(l(l+1)),

where x, y are the cotangent classes at the two branches; the numerator
vanishes on x = -y so the division is exact. At r = s = 1 the degree-d
part is (-1)^d times the d-th Chern class of the Hodge bundle.

Terms are stored in an integration-ready shape: per vertex its genus, a
kappa multiset and one (label, exponent) pair per point slot, label 0
marking a node branch. Everything is exact rational.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Dict, Iterator, List, Sequence, Tuple

from .errors import ParameterError, StabilityError
from .exactnum import Rat, bernoulli_polynomial
from .hurwitz.frobenius import partitions
from .psi_kappa import kappa_psi_intersection
from .stable_graphs import StableGraph, enumerate_stable_graphs, enumerate_weightings

VertexData = Tuple[int, Tuple[int, ...], Tuple[Tuple[int, int], ...]]
TermKey = Tuple[VertexData, ...]

_F0 = Fraction(0)
_F1 = Fraction(1)


@dataclass
class TautExpression:
    """Sum of decorated-graph terms, keyed by the per-vertex data."""

    genus: int
    num_marks: int
    terms: Dict[TermKey, Fraction]

    def items_sorted(self):
        return sorted(self.terms.items())

    def degree_part(self, d: int) -> "TautExpression":
        picked = {k: c for k, c in self.terms.items() if term_degree(k) == d}
        return TautExpression(self.genus, self.num_marks, picked)

    def max_degree(self) -> int:
        return max((term_degree(k) for k in self.terms), default=0)


def term_degree(key: TermKey) -> int:
    half_edges = sum(1 for v in key for lab, _ in v[2] if lab == 0)
    deco = sum(sum(v[1]) + sum(e for _, e in v[2]) for v in key)
    return half_edges // 2 + deco


def validate_params(n: int, r: int, s: int, a: Sequence[int]) -> Tuple[int, ...]:
    if r < 1:
        raise ParameterError("level r must be >= 1")
    if not 0 <= s <= r:
        raise ParameterError(f"twist s must satisfy 0 <= s <= r, got {s}")
    a = tuple(int(x) for x in a)
    if len(a) != n:
        raise ParameterError(f"need {n} point twists, got {len(a)}")
    if any(not 1 <= x <= r for x in a):
        raise ParameterError("point twists must lie in {1..r}")
    return a


def admissible(g: int, n: int, r: int, s: int, a: Sequence[int]) -> bool:
    """The mod-r matching condition for the twist data."""
    return ((2 * g - 2 + n) * s - sum(a)) % r == 0


def _coeff_c(r: int, w: int, l: int) -> Fraction:
    return (-1) ** (l - 1) * bernoulli_polynomial(l + 1, Fraction(w, r)) / (l * (l + 1))


@lru_cache(maxsize=None)
def _kappa_expansion(r: int, s: int, budget: int) -> Tuple[Tuple[Tuple[int, ...], Fraction], ...]:
    """exp(-sum_l c_l(s) kappa_l) as (kappa multiset, coefficient) pairs."""
    out = []
    for m in range(budget + 1):
        for lam in partitions(m):
            coeff = _F1
            for l in set(lam):
                mult = lam.count(l)
                coeff *= (-_coeff_c(r, s, l)) ** mult / factorial(mult)
            out.append((tuple(sorted(lam)), coeff))
    return tuple(out)


@lru_cache(maxsize=None)
def _leg_series(r: int, a: int, budget: int) -> Tuple[Fraction, ...]:
    """exp(+sum_l c_l(a) psi^l) coefficients, index = psi power."""
    from .exactnum import TruncSeries

    expo = TruncSeries([_F0] + [_coeff_c(r, a, l) for l in range(1, budget + 1)], budget)
    return tuple(expo.exp().c)


Poly2 = Dict[Tuple[int, int], Fraction]


def _poly2_mul(A: Poly2, B: Poly2, cap: int) -> Poly2:
    out: Poly2 = {}
    for (i, j), ca in A.items():
        for (k, l), cb in B.items():
            if i + k + j + l > cap:
                continue
            key = (i + k, j + l)
            out[key] = out.get(key, _F0) + ca * cb
    return {k: c for k, c in out.items() if c}


def _poly2_exp(F: Poly2, cap: int) -> Poly2:
    out: Poly2 = {(0, 0): _F1}
    power: Poly2 = {(0, 0): _F1}
    for k in range(1, cap + 1):
        power = _poly2_mul(power, F, cap)
        if not power:
            break
        inv = Fraction(1, factorial(k))
        for key, c in power.items():
            out[key] = out.get(key, _F0) + c * inv
    return out


def _divide_xy(N: Poly2, cap: int) -> Poly2:
    """Exact division by (x + y); asserts zero remainder."""
    cols: Dict[int, Dict[int, Fraction]] = {}
    top = 0
    for (i, j), c in N.items():
        cols.setdefault(i, {})[j] = c
        top = max(top, i)
    q_cols: Dict[int, Dict[int, Fraction]] = {}
    carry: Dict[int, Fraction] = dict(cols.get(top, {}))
    for i in range(top, 0, -1):
        q_cols[i - 1] = {j: c for j, c in carry.items() if c}
        nxt = dict(cols.get(i - 1, {}))
        for j, c in q_cols[i - 1].items():
            nxt[j + 1] = nxt.get(j + 1, _F0) - c
        carry = nxt
    if any(c for c in carry.values()):
        raise ArithmeticError("edge numerator not divisible by x + y")
    out: Poly2 = {}
    for i, col in q_cols.items():
        for j, c in col.items():
            if c and i + j <= cap:
                out[(i, j)] = c
    return out


@lru_cache(maxsize=None)
def _edge_factor(r: int, w: int, budget: int) -> Tuple[Tuple[int, int, Fraction], ...]:
    """(1 - exp(sum_l c_l(w)[x^l - (-y)^l]))/(x+y), truncated to budget."""
    cap = budget + 1
    F: Poly2 = {}
    for l in range(1, cap + 1):
        c = _coeff_c(r, w, l)
        if c:
            F[(l, 0)] = F.get((l, 0), _F0) + c
            F[(0, l)] = F.get((0, l), _F0) - c * (-1) ** l
    one_minus = {k: -c for k, c in _poly2_exp(F, cap).items()}
    one_minus[(0, 0)] = one_minus.get((0, 0), _F0) + _F1
    quot = _divide_xy({k: c for k, c in one_minus.items() if c}, budget)
    return tuple((i, j, c) for (i, j), c in sorted(quot.items()))


def _graph_layout(G: StableGraph):
    """Flat slot layout: per-vertex slot labels and edge slot positions."""
    labels: List[int] = []
    vertex_slots: List[Tuple[int, int]] = []  # (first slot index, count) per vertex
    edge_pos: Dict[Tuple[int, int], int] = {}
    for v in range(G.num_vertices):
        first = len(labels)
        for slot in G.vertex_slots(v):
            if slot[0] == "leg":
                labels.append(slot[1])
            else:
                edge_pos[(slot[1], slot[2])] = len(labels)
                labels.append(0)
        vertex_slots.append((first, len(labels) - first))
    return labels, vertex_slots, edge_pos


def _assemble_terms(
    G: StableGraph,
    pref: Fraction,
    budget: int,
    kappa_options,
    leg_series: Dict[int, Tuple[Fraction, ...]],
    edge_factors: List[Tuple[int, int, Tuple[Tuple[int, int, Fraction], ...]]],
    out: Dict[TermKey, Fraction],
    labels: List[int],
    vertex_slots: List[Tuple[int, int]],
    dilaton_cutoff: int = 0,
) -> None:
    """Fold vertex, leg and edge factors into decorated terms.

    States map (per-vertex kappas, flat slot exponents) to coefficients.
    Slot labels above dilaton_cutoff (when positive) are extra points whose
    psi powers are counted with degree lowered by one, matching their later
    conversion to kappa classes on the reduced space.
    """
    V = len(vertex_slots)
    nslots = len(labels)

    def slot_degree(pos: int, e: int) -> int:
        if dilaton_cutoff and labels[pos] > dilaton_cutoff:
            return e - 1
        return e

    states: Dict[Tuple[Tuple[Tuple[int, ...], ...], Tuple[int, ...]], Tuple[Fraction, int]] = {
        (((),) * V, (0,) * nslots): (pref, 0)
    }
    for v in range(V):
        nxt: Dict = {}
        for (kaps, exps), (coeff, deg) in states.items():
            for lam, kc in kappa_options:
                nd = deg + sum(lam)
                if nd > budget or not kc:
                    continue
                nk = kaps[:v] + (lam,) + kaps[v + 1:]
                key = (nk, exps)
                cur = nxt.get(key)
                add = coeff * kc
                nxt[key] = (cur[0] + add if cur else add, nd)
        states = nxt
    for pos in range(nslots):
        lab = labels[pos]
        if lab == 0:
            continue
        series = leg_series[lab]
        nxt = {}
        for (kaps, exps), (coeff, deg) in states.items():
            for e, sc in enumerate(series):
                if not sc:
                    continue
                nd = deg + slot_degree(pos, e)
                if nd > budget:
                    continue
                ne = exps[:pos] + (e,) + exps[pos + 1:]
                key = (kaps, ne)
                cur = nxt.get(key)
                add = coeff * sc
                nxt[key] = (cur[0] + add if cur else add, nd)
        states = nxt
    for p1, p2, factor in edge_factors:
        nxt = {}
        for (kaps, exps), (coeff, deg) in states.items():
            for i, j, fc in factor:
                nd = deg + i + j
                if nd > budget:
                    continue
                lst = list(exps)
                lst[p1] += i
                lst[p2] += j
                key = (kaps, tuple(lst))
                cur = nxt.get(key)
                add = coeff * fc
                nxt[key] = (cur[0] + add if cur else add, nd)
        states = nxt

    for (kaps, exps), (coeff, _) in states.items():
        if not coeff:
            continue
        vdata = []
        for v in range(V):
            first, cnt = vertex_slots[v]
            slots = tuple(sorted(
                (labels[first + i], exps[first + i]) for i in range(cnt)
            ))
            vdata.append((None, kaps[v], slots))
        key = tuple(vdata)
        out[key] = out.get(key, _F0) + coeff


def chiodo_class(g: int, n: int, r: int, s: int, a: Sequence[int],
                 max_degree: int | None = None) -> TautExpression:
    """The twisted class through total degree max_degree (default: full)."""
    a = validate_params(n, r, s, a)
    if 2 * g - 2 + n <= 0:
        raise StabilityError(f"(g, n) = ({g}, {n}) is not stable")
    D = 3 * g - 3 + n if max_degree is None else min(max_degree, 3 * g - 3 + n)
    if D < 0:
        raise ParameterError("negative truncation degree")
    terms: Dict[TermKey, Fraction] = {}
    for G in enumerate_stable_graphs(g, n):
        E = G.num_edges
        if E > D:
            continue
        weightings = enumerate_weightings(G, r, s, a)
        if not weightings:
            continue
        budget = D - E
        pref = Fraction(r) ** (E + sum(2 * gv - 1 for gv in G.genera)) / G.aut_order
        labels, vertex_slots, edge_pos = _graph_layout(G)
        kappa_options = _kappa_expansion(r, s, budget)
        leg_series = {
            lab: _leg_series(r, a[lab - 1], budget) for lab in labels if lab > 0
        }
        for w in weightings:
            edge_factors = [
                (edge_pos[(e, 0)], edge_pos[(e, 1)], _edge_factor(r, w[e], budget))
                for e in range(E)
            ]
            raw: Dict[TermKey, Fraction] = {}
            _assemble_terms(G, pref, budget, kappa_options, leg_series,
                            edge_factors, raw, labels, vertex_slots)
            for key, coeff in raw.items():
                full = tuple(
                    (G.genera[v],) + key[v][1:] for v in range(G.num_vertices)
                )
                full = tuple(sorted(full))
                terms[full] = terms.get(full, _F0) + coeff
    terms = {k: c for k, c in terms.items() if c}
    return TautExpression(g, n, terms)


def _compositions(total: int, k: int) -> Iterator[Tuple[int, ...]]:
    if k == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, k - 1):
            yield (first,) + rest


def integrate_class(expr: TautExpression, psi_powers: Sequence[int]) -> Rat:
    """Integrate against prod_i psi_i^{p_i}; zero unless degrees fill up."""
    if len(psi_powers) != expr.num_marks:
        raise ParameterError("need one psi power per marked point")
    total = _F0
    for key, coeff in expr.terms.items():
        prod = coeff
        for gv, kappas, slots in key:
            exps = [e + (psi_powers[lab - 1] if lab > 0 else 0) for lab, e in slots]
            nv = len(slots)
            if sum(kappas) + sum(exps) != 3 * gv - 3 + nv:
                prod = _F0
                break
            prod *= kappa_psi_intersection(gv, kappas, exps)
            if not prod:
                break
        total += prod
    return total


def integrate_with_tails(expr: TautExpression, tails: Sequence[Rat]) -> Rat:
    """Integrate against prod_i sum_d tails_i^d psi_i^d."""
    if len(tails) != expr.num_marks:
        raise ParameterError("need one tail weight per marked point")
    total = _F0
    for key, coeff in expr.terms.items():
        prod = coeff
        for gv, kappas, slots in key:
            nv = len(slots)
            rem = 3 * gv - 3 + nv - sum(kappas) - sum(e for _, e in slots)
            if rem < 0:
                prod = _F0
                break
            leg_idx = [i for i, (lab, _) in enumerate(slots) if lab > 0]
            if rem and not leg_idx:
                prod = _F0
                break
            vertex_val = _F0
            base = [e for _, e in slots]
            for comp in _compositions(rem, len(leg_idx)):
                weight = _F1
                exps = list(base)
                for i, extra in zip(leg_idx, comp):
                    if extra:
                        weight *= tails[slots[i][0] - 1] ** extra
                        exps[i] += extra
                vertex_val += weight * kappa_psi_intersection(gv, kappas, exps)
            prod *= vertex_val
            if not prod:
                break
        total += prod
    return total


@lru_cache(maxsize=None)
def _effective_leg_series(r: int, a: int, w: Fraction, top: int) -> Tuple[Fraction, ...]:
    """Leg exponential convolved with the geometric tail sum_d w^d psi^d."""
    leg = _leg_series(r, a, top)
    return tuple(
        sum((leg[e] * w ** (E - e) for e in range(E + 1)), _F0)
        for E in range(top + 1)
    )


@lru_cache(maxsize=None)
def _local_vertex_integral(gv: int, legs_key: Tuple[Tuple[int, Fraction], ...],
                           eexps: Tuple[int, ...], r: int, s: int) -> Fraction:
    """Vertex-local integral: kappa exponential times tailed legs times fixed
    node-branch psi powers, filling the vertex dimension exactly."""
    nv = len(legs_key) + len(eexps)
    dim = 3 * gv - 3 + nv
    fixed = sum(eexps)
    room = dim - fixed
    if room < 0:
        return _F0
    series = [_effective_leg_series(r, aa, ww, room) for aa, ww in legs_key]
    total = _F0
    for kaps, kc in _kappa_expansion(r, s, room):
        if not kc:
            continue
        rem = room - sum(kaps)
        if rem < 0 or (rem and not legs_key):
            continue
        for comp in _compositions(rem, len(legs_key)):
            c = kc
            for ser, e in zip(series, comp):
                c *= ser[e]
                if not c:
                    break
            else:
                total += c * kappa_psi_intersection(gv, kaps, comp + eexps)
    return total


def _graph_tail_value(G: StableGraph, weighting: Tuple[int, ...], r: int, s: int,
                      legs_at: List[List[Tuple[int, Fraction]]],
                      budget: int) -> Fraction:
    """Sum over edge-branch psi assignments of the product of vertex-local
    integrals; dimensions cap the search."""
    V = G.num_vertices
    caps = []
    for v in range(V):
        nv = len(legs_at[v]) + sum(
            (e[0] == v) + (e[1] == v) for e in G.edges)
        caps.append(3 * G.genera[v] - 3 + nv)
    legs_keys = [tuple(sorted(legs_at[v])) for v in range(V)]
    ends = list(G.edges)
    E = len(ends)
    factors = [_edge_factor(r, weighting[e], budget) for e in range(E)]
    total = _F0
    exps: List[List[int]] = [[] for _ in range(V)]
    loads = [0] * V

    def rec(e_idx: int, coeff: Fraction, used: int) -> None:
        nonlocal total
        if e_idx == E:
            prod = coeff
            for v in range(V):
                prod *= _local_vertex_integral(
                    G.genera[v], legs_keys[v], tuple(sorted(exps[v])), r, s)
                if not prod:
                    return
            total += prod
            return
        u, v = ends[e_idx]
        for i, j, c in factors[e_idx]:
            if used + i + j > budget:
                continue
            if u == v:
                if loads[u] + i + j > caps[u]:
                    continue
            elif loads[u] + i > caps[u] or loads[v] + j > caps[v]:
                continue
            exps[u].append(i)
            exps[v].append(j)
            loads[u] += i
            loads[v] += j
            rec(e_idx + 1, coeff * c, used + i + j)
            exps[v].pop()
            exps[u].pop()
            loads[u] -= i
            loads[v] -= j

    rec(0, _F1, 0)
    return total


def class_tail_integral(g: int, n: int, r: int, s: int, a: Sequence[int],
                        tails: Sequence[Rat]) -> Rat:
    """Integral of the full class against geometric psi tails, computed graph
    by graph without materializing the decorated-term expansion."""
    a = validate_params(n, r, s, a)
    if 2 * g - 2 + n <= 0:
        raise StabilityError(f"(g, n) = ({g}, {n}) is not stable")
    if len(tails) != n:
        raise ParameterError("need one tail weight per marked point")
    tails = [Fraction(t) for t in tails]
    D = 3 * g - 3 + n
    total = _F0
    for G in enumerate_stable_graphs(g, n):
        E = G.num_edges
        if E > D:
            continue
        weightings = enumerate_weightings(G, r, s, a)
        if not weightings:
            continue
        budget = D - E
        pref = Fraction(r) ** (E + sum(2 * gv - 1 for gv in G.genera)) / G.aut_order
        legs_at: List[List[Tuple[int, Fraction]]] = [[] for _ in range(G.num_vertices)]
        for v in range(G.num_vertices):
            for lab in G.legs[v]:
                legs_at[v].append((a[lab - 1], tails[lab - 1]))
        acc = _F0
        for w in weightings:
            acc += _graph_tail_value(G, w, r, s, legs_at, budget)
        total += pref * acc
    return total


def chiodo_integral_elsv(g: int, r: int, s: int, mu: Sequence[int]) -> Rat:
    """Integral of the class against geometric psi tails with weights mu_i/r.

    Point twists are r minus the mod-r remainder of mu_i (r itself when r
    divides mu_i). Returns 0 when the twist matching condition fails.
    """
    mu = tuple(int(m) for m in mu)
    if any(m < 1 for m in mu):
        raise ParameterError("profile parts must be positive")
    n = len(mu)
    if 2 * g - 2 + n <= 0:
        raise StabilityError(f"(g, n) = ({g}, {n}) is not stable")
    a = tuple(r - (m % r) if m % r else r for m in mu)
    if not admissible(g, n, r, s, a):
        return _F0
    return class_tail_integral(g, n, r, s, a, [Fraction(m, r) for m in mu])


def chern_character(g: int, n: int, r: int, s: int, a: Sequence[int],
                    l: int) -> TautExpression:
    """Degree-l character component: kappa term, psi terms, node terms.

    The node polynomial is sum_{i+j=l-1} (-1)^j x^i y^j, the exact quotient
    (x^l + (-1)^{l-1} y^l)/(x + y). Node terms carry both branch
    orientations explicitly, each weighted r/2 * B_{l+1}(w/r)/(l+1)!/|Aut|.
    """
    a = validate_params(n, r, s, a)
    if l < 1:
        raise ParameterError("character degree must be >= 1")
    if 2 * g - 2 + n <= 0:
        raise StabilityError(f"(g, n) = ({g}, {n}) is not stable")
    terms: Dict[TermKey, Fraction] = {}
    fact = factorial(l + 1)

    trivial_slots = tuple(sorted((lab, 0) for lab in range(1, n + 1)))
    kap_key = ((g, (l,), trivial_slots),)
    terms[kap_key] = bernoulli_polynomial(l + 1, Fraction(s, r)) / fact
    for i in range(1, n + 1):
        slots = tuple(sorted([(lab, 0) for lab in range(1, n + 1) if lab != i]
                             + [(i, l)]))
        key = ((g, (), slots),)
        terms[key] = terms.get(key, _F0) - bernoulli_polynomial(
            l + 1, Fraction(a[i - 1], r)) / fact

    if 3 * g - 3 + n >= 1:
        for G in enumerate_stable_graphs(g, n):
            if G.num_edges != 1:
                continue
            labels, vertex_slots, edge_pos = _graph_layout(G)
            p0, p1 = edge_pos[(0, 0)], edge_pos[(0, 1)]
            for w in enumerate_weightings(G, r, s, a):
                t = w[0]
                for x_pos, y_pos, tw in (((p0, p1, t)), (p1, p0, (r - t) % r)):
                    coeff = (Fraction(r, 2) * bernoulli_polynomial(
                        l + 1, Fraction(tw, r)) / fact / G.aut_order)
                    if not coeff:
                        continue
                    for i in range(l):
                        j = l - 1 - i
                        exps = [0] * len(labels)
                        exps[x_pos] += i
                        exps[y_pos] += j
                        vdata = []
                        for v in range(G.num_vertices):
                            first, cnt = vertex_slots[v]
                            slots = tuple(sorted(
                                (labels[first + q], exps[first + q])
                                for q in range(cnt)
                            ))
                            vdata.append((G.genera[v], (), slots))
                        key = tuple(sorted(vdata))
                        terms[key] = terms.get(key, _F0) + coeff * (-1) ** j
    terms = {k: c for k, c in terms.items() if c}
    return TautExpression(g, n, terms)
