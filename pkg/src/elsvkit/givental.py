"""R-matrix reconstruction of the twisted classes.

Independent route to the same classes as the stable-graph formula: a rank-r
topological field theory dressed by the diagonal R-matrix with entries

    R_a(zeta) = exp(-sum_k B_{k+1}(a/r)/(k(k+1)) zeta^k),   a = 1..r,

acting through sums over stable graphs with extra dilaton legs. Extra legs
are pushed forward by converting their psi powers to kappa classes, so the
output integrates on the original space. Also provides the exact symplectic
check for R, the TFT amplitudes, the flat unit check, and exact basis
changes between the idempotent and flat bases over cyclotomic rationals.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Dict, List, Sequence, Tuple

from .chiodo import (
    Poly2,
    TautExpression,
    TermKey,
    _divide_xy,
    _graph_layout,
    _poly2_mul,
    validate_params,
)
from .errors import ParameterError, StabilityError
from .exactnum import Rat, TruncSeries, bernoulli_polynomial
from .stable_graphs import enumerate_stable_graphs, enumerate_weightings

_F0 = Fraction(0)
_F1 = Fraction(1)


def _r_exponent(r: int, a: int, order: int) -> TruncSeries:
    """sum_k B_{k+1}(a/r)/(k(k+1)) zeta^k through the given order."""
    coeffs = [_F0] + [
        bernoulli_polynomial(k + 1, Fraction(a, r)) / (k * (k + 1))
        for k in range(1, order + 1)
    ]
    return TruncSeries(coeffs, order)


@lru_cache(maxsize=None)
def r_matrix_entry(r: int, a: int, order: int) -> TruncSeries:
    """Diagonal entry R_a(zeta), exact rational coefficients."""
    if not 1 <= a <= r:
        raise ParameterError("index a must lie in {1..r}")
    return (-_r_exponent(r, a, order)).exp()


@lru_cache(maxsize=None)
def r_matrix_inverse_entry(r: int, a: int, order: int) -> TruncSeries:
    """Diagonal entry of R^{-1}; the exponent with opposite sign."""
    if not 1 <= a <= r:
        raise ParameterError("index a must lie in {1..r}")
    return _r_exponent(r, a, order).exp()


def adjoint_index(r: int, a: int) -> int:
    """Index pairing under the metric: a <-> r - a, with r fixed."""
    return r if a == r else r - a


def symplectic_defect(r: int, order: int) -> List[TruncSeries]:
    """R_a(zeta) * R_{a*}(-zeta) - 1 for a = 1..r; all zero iff symplectic."""
    out = []
    for a in range(1, r + 1):
        Ra = r_matrix_entry(r, a, order)
        Rstar = r_matrix_entry(r, adjoint_index(r, a), order)
        flipped = TruncSeries(
            [c if k % 2 == 0 else -c for k, c in enumerate(Rstar.c)], order)
        prod = Ra * flipped
        prod = prod - TruncSeries.constant(1, order)
        out.append(prod)
    return out


def symplectic_check(r: int, order: int = 8) -> bool:
    return all(all(c == 0 for c in d.c) for d in symplectic_defect(r, order))


def tft_amplitude(g: int, weights: Sequence[int], r: int, s: int) -> Rat:
    """Genus-g amplitude on flat-basis indices: r^{2g-1} times the mod-r gate."""
    n = len(weights)
    if (sum(weights) - s * (2 * g - 2 + n)) % r:
        return _F0
    return Fraction(r) ** (2 * g - 1)


def flat_unit_check(r: int, s: int) -> bool:
    """Pairing the unit into the three-point amplitudes returns the metric."""
    unit = s if s else r
    for a in range(1, r + 1):
        for b in range(1, r + 1):
            eta = Fraction(1, r) if (a + b) % r == 0 else _F0
            if tft_amplitude(0, (unit, a, b), r, s) != eta:
                return False
    return True


# -- exact cyclotomic arithmetic, enough for r <= 4 ------------------------

class CycQ:
    """Element of Q(zeta_r) in the power basis mod the r-th cyclotomic
    polynomial. Supports r in {1, 2, 3, 4} (degree <= 2 fields)."""

    __slots__ = ("r", "c")

    _DEGREE = {1: 1, 2: 1, 3: 2, 4: 2}

    def __init__(self, r: int, coeffs: Sequence[Rat]):
        if r not in self._DEGREE:
            raise ParameterError(f"exact cyclotomic arithmetic limited to r <= 4, got {r}")
        d = self._DEGREE[r]
        c = [Fraction(x) for x in coeffs]
        if len(c) < d:
            c += [_F0] * (d - len(c))
        if len(c) != d:
            raise ParameterError("coefficient vector too long")
        self.r = r
        self.c = tuple(c)

    @classmethod
    def zero(cls, r: int) -> "CycQ":
        return cls(r, [])

    @classmethod
    def one(cls, r: int) -> "CycQ":
        return cls(r, [1])

    @classmethod
    def rational(cls, r: int, q: Rat) -> "CycQ":
        return cls(r, [q])

    @classmethod
    def zeta_power(cls, r: int, k: int) -> "CycQ":
        k %= r
        if r == 1:
            return cls.one(1)
        if r == 2:
            return cls(2, [1 if k == 0 else -1])
        if r == 3:
            # zeta^2 = -1 - zeta
            return cls(3, [1, 0]) if k == 0 else (
                cls(3, [0, 1]) if k == 1 else cls(3, [-1, -1]))
        if k == 0:
            return cls(4, [1, 0])
        if k == 1:
            return cls(4, [0, 1])
        if k == 2:
            return cls(4, [-1, 0])
        return cls(4, [0, -1])

    def __add__(self, other: "CycQ") -> "CycQ":
        return CycQ(self.r, [x + y for x, y in zip(self.c, other.c)])

    def __sub__(self, other: "CycQ") -> "CycQ":
        return CycQ(self.r, [x - y for x, y in zip(self.c, other.c)])

    def __mul__(self, other: "CycQ") -> "CycQ":
        r = self.r
        if r in (1, 2):
            return CycQ(r, [self.c[0] * other.c[0]])
        a0, a1 = self.c
        b0, b1 = other.c
        if r == 3:
            # (a0 + a1 z)(b0 + b1 z), z^2 = -1 - z
            hi = a1 * b1
            return CycQ(3, [a0 * b0 - hi, a0 * b1 + a1 * b0 - hi])
        hi = a1 * b1
        return CycQ(4, [a0 * b0 - hi, a0 * b1 + a1 * b0])

    def scale(self, q: Rat) -> "CycQ":
        return CycQ(self.r, [x * Fraction(q) for x in self.c])

    def __eq__(self, other) -> bool:
        return isinstance(other, CycQ) and self.r == other.r and self.c == other.c

    def __hash__(self):
        return hash((self.r, self.c))

    def is_rational(self) -> bool:
        return all(x == 0 for x in self.c[1:])

    def __repr__(self):
        return f"CycQ(r={self.r}, {list(self.c)})"


def flat_from_idempotent(r: int) -> List[List[CycQ]]:
    """Rows a = 1..r over columns i = 0..r-1: v_a = sum_i zeta^{ai}/r e_i."""
    return [
        [CycQ.zeta_power(r, a * i).scale(Fraction(1, r)) for i in range(r)]
        for a in range(1, r + 1)
    ]


def idempotent_from_flat(r: int) -> List[List[CycQ]]:
    """Rows i = 0..r-1 over columns a = 1..r: e_i = sum_a zeta^{-ai} v_a."""
    return [
        [CycQ.zeta_power(r, -a * i) for a in range(1, r + 1)]
        for i in range(r)
    ]


def basis_change_check(r: int) -> bool:
    """The two basis matrices invert each other and the unit metric on
    idempotents transports to the anti-diagonal pairing delta/r on flats."""
    P = flat_from_idempotent(r)
    Q = idempotent_from_flat(r)
    for a in range(r):
        for b in range(r):
            acc = CycQ.zero(r)
            for i in range(r):
                acc = acc + P[a][i] * Q[i][b]
            want = CycQ.one(r) if a == b else CycQ.zero(r)
            if acc != want:
                return False
    for a in range(1, r + 1):
        for b in range(1, r + 1):
            acc = CycQ.zero(r)
            for i in range(r):
                acc = acc + P[a - 1][i] * P[b - 1][i]
            want = CycQ.rational(r, Fraction(1, r)) if (a + b) % r == 0 else CycQ.zero(r)
            if acc != want:
                return False
    return True


# -- the graph sum with dilaton legs ---------------------------------------

@lru_cache(maxsize=None)
def _leaf_series(r: int, a: int, budget: int) -> Tuple[Fraction, ...]:
    """Ordinary leaf: exp(sum_l (-1)^{l-1} B_{l+1}(a/r)/(l(l+1)) psi^l)."""
    coeffs = [_F0] + [
        (-1) ** (l - 1) * bernoulli_polynomial(l + 1, Fraction(a, r)) / (l * (l + 1))
        for l in range(1, budget + 1)
    ]
    return tuple(TruncSeries(coeffs, budget).exp().c)


@lru_cache(maxsize=None)
def _dilaton_series(r: int, s: int, top: int) -> Tuple[Fraction, ...]:
    """Dilaton leaf psi(1 - E_s(psi)): starts at psi^2."""
    inner = _leaf_series(r, s if s else r, max(top - 1, 0))
    return tuple([_F0, _F0] + [-c for c in inner[1:]])  # index l+1 gets -E_l


@lru_cache(maxsize=None)
def _givental_edge(r: int, w1: int, w2: int, budget: int) -> Tuple[Tuple[int, int, Fraction], ...]:
    """(1 - E_{w1}(x) E_{w2}(y))/(x + y), exact quotient."""
    cap = budget + 1
    e1 = _leaf_series(r, w1 if w1 else r, cap)
    e2 = _leaf_series(r, w2 if w2 else r, cap)
    prod: Poly2 = {}
    for i, ci in enumerate(e1):
        if not ci:
            continue
        for j, cj in enumerate(e2):
            if not cj or i + j > cap:
                continue
            prod[(i, j)] = prod.get((i, j), _F0) + ci * cj
    num = {k: -c for k, c in prod.items()}
    num[(0, 0)] = num.get((0, 0), _F0) + _F1
    quot = _divide_xy({k: c for k, c in num.items() if c}, budget)
    return tuple((i, j, c) for (i, j), c in sorted(quot.items()))


def _push_dilaton(kappas: Tuple[int, ...], dil_exps: Sequence[int]) -> List[Tuple[Tuple[int, ...], int]]:
    """Forgetful pushforward of dilaton psi powers into kappa classes.

    Returns (kappa multiset, sign-free multiplicity) pairs; iterated one
    point at a time, each step summing over subsets of the kappas already
    produced, which get absorbed into the new index.
    """
    acc: Dict[Tuple[int, ...], int] = {tuple(sorted(kappas)): 1}
    for m in dil_exps:
        nxt: Dict[Tuple[int, ...], int] = {}
        for kaps, mult in acc.items():
            k = len(kaps)
            for mask in range(1 << k):
                chosen = [kaps[i] for i in range(k) if mask >> i & 1]
                rest = [kaps[i] for i in range(k) if not mask >> i & 1]
                new = tuple(sorted(rest + [m - 1 + sum(chosen)]))
                nxt[new] = nxt.get(new, 0) + mult
        acc = nxt
    return list(acc.items())


def givental_action(g: int, n: int, r: int, s: int, a: Sequence[int],
                    max_degree: int | None = None) -> TautExpression:
    """The R-matrix dressing of the rank-r TFT, as an integrable expression.

    Sums over stable graphs with k >= 0 extra legs carrying the dilaton
    leaf; those legs are removed by the kappa conversion, so the result is
    directly comparable to the stable-graph route after integration.
    """
    a = validate_params(n, r, s, a)
    if 2 * g - 2 + n <= 0:
        raise StabilityError(f"(g, n) = ({g}, {n}) is not stable")
    D = 3 * g - 3 + n if max_degree is None else min(max_degree, 3 * g - 3 + n)
    if D < 0:
        raise ParameterError("negative truncation degree")
    s_leg = s if s else r
    terms: Dict[TermKey, Fraction] = {}
    for k in range(D + 1):
        a_ext = a + (s_leg,) * k
        kfac = Fraction(1, factorial(k))
        for G in enumerate_stable_graphs(g, n + k):
            E = G.num_edges
            if E + k > D:
                continue
            weightings = enumerate_weightings(G, r, s, a_ext)
            if not weightings:
                continue
            budget = D - E
            pref = kfac * Fraction(r) ** (
                E + sum(2 * gv - 1 for gv in G.genera)) / G.aut_order
            labels, vertex_slots, edge_pos = _graph_layout(G)
            leg_series = {}
            for lab in labels:
                if 0 < lab <= n:
                    leg_series[lab] = _leaf_series(r, a[lab - 1], budget)
                elif lab > n:
                    leg_series[lab] = _dilaton_series(r, s, budget + 1)
            for w in weightings:
                edge_factors = []
                for e in range(E):
                    w1 = w[e]
                    w2 = (r - w1) % r
                    edge_factors.append(
                        (edge_pos[(e, 0)], edge_pos[(e, 1)],
                         _givental_edge(r, w1, w2, budget)))
                _fold_and_push(G, pref, budget, n, leg_series, edge_factors,
                               labels, vertex_slots, terms)
    terms = {key: c for key, c in terms.items() if c}
    return TautExpression(g, n, terms)


def _fold_and_push(G, pref, budget, n_real, leg_series, edge_factors,
                   labels, vertex_slots, out: Dict[TermKey, Fraction]) -> None:
    """DP over slot exponents; dilaton powers cost degree (power - 1).

    After folding, dilaton slots are converted to kappas per vertex and the
    reduced vertex data recorded. Vertices that would lose stability only
    arise with decoration degree above their dimension and are dropped.
    """
    V = len(vertex_slots)
    nslots = len(labels)
    states: Dict[Tuple[int, ...], Tuple[Fraction, int]] = {
        (0,) * nslots: (pref, 0)}
    for pos in range(nslots):
        lab = labels[pos]
        if lab == 0:
            continue
        series = leg_series[lab]
        dil = lab > n_real
        nxt: Dict[Tuple[int, ...], Tuple[Fraction, int]] = {}
        for exps, (coeff, deg) in states.items():
            for e, sc in enumerate(series):
                if not sc:
                    continue
                nd = deg + (e - 1 if dil else e)
                if nd > budget:
                    continue
                ne = exps[:pos] + (e,) + exps[pos + 1:]
                cur = nxt.get(ne)
                add = coeff * sc
                nxt[ne] = (cur[0] + add if cur else add, nd)
        states = nxt
    for p1, p2, factor in edge_factors:
        nxt = {}
        for exps, (coeff, deg) in states.items():
            for i, j, fc in factor:
                nd = deg + i + j
                if nd > budget:
                    continue
                lst = list(exps)
                lst[p1] += i
                lst[p2] += j
                ne = tuple(lst)
                cur = nxt.get(ne)
                add = coeff * fc
                nxt[ne] = (cur[0] + add if cur else add, nd)
        states = nxt

    for exps, (coeff, _) in states.items():
        if not coeff:
            continue
        per_vertex: List[List[Tuple[Tuple[int, ...], int]]] = []
        slot_lists: List[Tuple[Tuple[int, int], ...]] = []
        dead = False
        for v in range(V):
            first, cnt = vertex_slots[v]
            keep: List[Tuple[int, int]] = []
            dil_exps: List[int] = []
            for q in range(cnt):
                lab = labels[first + q]
                e = exps[first + q]
                if lab > n_real:
                    dil_exps.append(e)
                else:
                    keep.append((lab, e))
            if dil_exps:
                gv = G.genera[v]
                nv = len(keep)
                if (gv == 0 and nv < 3) or (gv == 1 and nv == 0):
                    dead = True
                    break
                per_vertex.append(_push_dilaton((), dil_exps))
            else:
                per_vertex.append([((), 1)])
            slot_lists.append(tuple(sorted(keep)))
        if dead:
            continue
        for combo in itertools.product(*per_vertex):
            mult = 1
            vdata = []
            for v in range(V):
                kaps, m = combo[v]
                mult *= m
                vdata.append((G.genera[v], kaps, slot_lists[v]))
            key = tuple(sorted(vdata))
            out[key] = out.get(key, _F0) + coeff * mult
