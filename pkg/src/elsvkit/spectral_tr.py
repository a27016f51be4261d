"""Numeric topological recursion on the package's spectral curves.

Curves: the family S(r,s) with x = -z^r + log z, y = z^s (the r = s = 1
member is the Lambert curve of simple Hurwitz theory) and the monotone
curve x = (z-1)/z^2, y = -z. All branch points are simple. Correlators
are produced by the Chekhov-Eynard-Orantin residue recursion with
residues evaluated by trapezoid quadrature on small circles around the
branch points; nested evaluations use circles shrunk by powers of four
so that inner contours never swallow outer evaluation points.

Expansion coefficients N_{g,mu} are read off near the point where the
exponentiated coordinate vanishes (z -> 0 for S(r,s), z -> infinity for
the monotone curve, in the chart u = 1/z) and converted from the power
basis to the d(exponential) basis by an exact unitriangular solve.

Everything here is numeric (mpmath, 256-bit default); the exact
counterpart closed_form_N comes from the moduli-integral side, and the
acceptance tests compare the two routes coefficient by coefficient.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Dict, List, Optional, Sequence, Tuple

import gmpy2
import mpmath as mp

from .chiodo import chiodo_integral_elsv
from .errors import ParameterError, PrecisionError, ResourceLimitError
from .exactnum import (
    DEFAULT_PRECISION,
    Rat,
    TruncSeries,
    bernoulli_polynomial,
    double_factorial,
    series_reversion,
    working_precision,
)

_MAX_NODES = 2048
_MAX_POINTS = 3  # extraction variables; the recursion itself is generic


@dataclass(frozen=True)
class SpectralCurve:
    """Curve data; numeric values are derived on demand at ambient precision."""

    kind: str              # "srs" or "monotone"
    r: int = 1
    s: int = 1
    label: str = ""
    perturb_y: bool = False

    def key(self):
        return (self.kind, self.r, self.s, self.perturb_y)


def curve_srs(r: int, s: int, perturb_y: bool = False) -> SpectralCurve:
    if r < 1 or s < 1:
        raise ParameterError("curve S(r,s) needs r >= 1 and s >= 1")
    return SpectralCurve("srs", r, s, label=f"S({r},{s})", perturb_y=perturb_y)


def curve_lambert() -> SpectralCurve:
    return SpectralCurve("srs", 1, 1, label="lambert")


def curve_monotone() -> SpectralCurve:
    return SpectralCurve("monotone", label="monotone")


def branch_points(curve: SpectralCurve) -> List[mp.mpc]:
    if curve.kind == "srs":
        r = curve.r
        rad = mp.power(mp.mpf(r), mp.mpf(-1) / r)
        return [rad * mp.expjpi(mp.mpf(2 * i) / r) for i in range(r)]
    return [mp.mpc(2)]


def _y(curve: SpectralCurve, z):
    if curve.kind == "srs":
        v = z ** curve.s
        if curve.perturb_y:
            v = v + z ** (curve.s + 1)
        return v
    return -z


def _xp(curve: SpectralCurve, z):
    if curve.kind == "srs":
        return -curve.r * z ** (curve.r - 1) + 1 / z
    return (2 - z) / z ** 3


def _x2(curve: SpectralCurve, z):
    if curve.kind == "srs":
        r = curve.r
        return -r * (r - 1) * z ** (r - 2) - 1 / z ** 2
    return 2 / z ** 3 - 6 / z ** 4


def _x3(curve: SpectralCurve, z):
    if curve.kind == "srs":
        r = curve.r
        return -r * (r - 1) * (r - 2) * z ** (r - 3) + 2 / z ** 3
    return -6 / z ** 4 + 24 / z ** 5


def _x_diff(curve: SpectralCurve, z2, z1):
    """x(z2) - x(z1) for nearby points; the log acts on the ratio so the
    principal branch stays consistent on circles crossing the cut."""
    if curve.kind == "srs":
        return -(z2 ** curve.r - z1 ** curve.r) + mp.log(z2 / z1)
    return (z2 - 1) / z2 ** 2 - (z1 - 1) / z1 ** 2


def deck_transform(curve: SpectralCurve, p, z):
    """The non-trivial solution of x(z') = x(z) near the branch point p."""
    u = z - p
    c2 = _x2(curve, p) / 2
    c3 = _x3(curve, p) / 6
    zp = p - u - (c3 / c2) * u * u
    tol = mp.mpf(2) ** (-mp.mp.prec + 8)
    for _ in range(80):
        f = _x_diff(curve, zp, z)
        if abs(f) < tol * (1 + abs(zp)):
            break
        zp = zp - f / _xp(curve, zp)
    else:
        raise PrecisionError("deck transformation did not converge")
    if abs(zp - z) < abs(u):
        raise PrecisionError("deck transformation collapsed onto the identity")
    return zp


# -- fast arithmetic layer ----------------------------------------------------
#
# The residue recursion spends nearly all its time on small complex
# operations. mpmath keeps every intermediate behind a Python wrapper, so
# the inner loops run on gmpy2.mpc instead (the same MPFR/MPC precision,
# C speed) and values cross back to mpmath only at the module boundary.

def _gmp_ctx():
    """gmpy2 context matching the ambient mpmath precision."""
    return gmpy2.context(precision=mp.mp.prec)


def _to_gf(x: mp.mpf):
    sign, man, exp, _ = x._mpf_
    if man == 0:
        return gmpy2.mpfr(0)
    g = gmpy2.mpfr(-man if sign else man)
    return gmpy2.mul_2exp(g, exp) if exp >= 0 else gmpy2.div_2exp(g, -exp)


def _to_gc(x):
    xc = mp.mpc(x)
    return gmpy2.mpc(_to_gf(xc.real), _to_gf(xc.imag))


def _from_gf(x) -> mp.mpf:
    m, e = x.as_mantissa_exp()
    return mp.ldexp(mp.mpf(int(m)), int(e))


def _from_gc(x) -> mp.mpc:
    return mp.mpc(_from_gf(x.real), _from_gf(x.imag))


_node_cache: Dict[tuple, list] = {}
_gnode_cache: Dict[tuple, list] = {}


def _node_data(curve: SpectralCurve, level: int, nodes: int) -> list:
    """Quadrature records on the branch-point circles at the given level.

    Each record is (w, sw, weight, sigma_prime, 1/denominator) where the
    denominator is 2 (y(w) - y(sw)) x'(w) and the weight carries the
    dw/(2 pi i) measure of the trapezoid rule.
    """
    key = (curve.key(), mp.mp.prec, level, nodes)
    hit = _node_cache.get(key)
    if hit is not None:
        return hit
    ps = branch_points(curve)
    base = min(abs(p) for p in ps) / 4
    delta = base / mp.mpf(4) ** level
    out = []
    for p in ps:
        for k in range(nodes):
            rot = mp.expjpi(mp.mpf(2 * k) / nodes)
            w = p + delta * rot
            sw = deck_transform(curve, p, w)
            weight = delta * rot / nodes
            sp = _xp(curve, w) / _xp(curve, sw)
            denom = 2 * (_y(curve, w) - _y(curve, sw)) * _xp(curve, w)
            out.append((w, sw, weight, sp, 1 / denom))
    _node_cache[key] = out
    return out


def _gnode_data(curve: SpectralCurve, level: int, nodes: int) -> list:
    """Node records converted for the fast layer: (w, sw, coef, coef*(w-sw))
    with coef = weight * sigma_prime / denominator, so the recursion kernel
    per node is coef*(w-sw) * U / ((z0-w)(z0-sw))."""
    key = (curve.key(), mp.mp.prec, level, nodes)
    hit = _gnode_cache.get(key)
    if hit is not None:
        return hit
    out = []
    for w, sw, weight, sp, dinv in _node_data(curve, level, nodes):
        gw = _to_gc(w)
        gsw = _to_gc(sw)
        coef = _to_gc(weight * sp * dinv)
        out.append((gw, gsw, coef, coef * (gw - gsw)))
    _gnode_cache[key] = out
    return out


def _f_eval(curve, g, pts, level, nodes, memo):
    """Scalar correlator f_{g,n}, the differential divided by prod dz_i.

    Points and return value are gmpy2.mpc. Only correlators with at most
    two points are memoized: their values recur across the extraction
    grid, while higher ones carry a fresh integration variable in every
    call and would only bloat the table.
    """
    n = len(pts)
    if g == 0 and n == 2:
        d = pts[0] - pts[1]
        return 1 / (d * d)
    if g < 0 or 2 * g - 2 + n <= 0:
        raise ParameterError(f"correlator ({g},{n}) is outside the recursion")
    use_memo = n <= 2
    if use_memo:
        key = (g, pts, level)
        hit = memo.get(key)
        if hit is not None:
            return hit
    z0 = pts[0]
    rest = pts[1:]
    total = gmpy2.mpc(0)
    for w, sw, _, cw in _gnode_data(curve, level, nodes):
        u = _u_value(curve, g, w, sw, rest, level, nodes, memo)
        if u:
            total += cw * u / ((z0 - w) * (z0 - sw))
    if use_memo:
        memo[key] = total
    return total


def _u_value(curve, g, w, sw, rest, level, nodes, memo):
    """Recursion numerator: genus-lowering term plus stable ordered splits."""
    n_rest = len(rest)
    if g == 0 and n_rest == 2:
        # hottest case: both splits are pair-correlator products
        a, b = rest
        pa = w - a
        pa = pa * pa
        qb = sw - b
        qb = qb * qb
        pb = w - b
        pb = pb * pb
        qa = sw - a
        qa = qa * qa
        left = pa * qb
        right = pb * qa
        return (left + right) / (left * right)
    total = gmpy2.mpc(0)
    if g >= 1:
        total += _f_eval(curve, g - 1, (w, sw) + rest, level + 1, nodes, memo)
    for g1 in range(g + 1):
        g2 = g - g1
        for mask in range(1 << n_rest):
            pts1 = tuple(rest[i] for i in range(n_rest) if mask >> i & 1)
            if g1 == 0 and not pts1:
                continue
            pts2 = tuple(rest[i] for i in range(n_rest) if not mask >> i & 1)
            if g2 == 0 and not pts2:
                continue
            total += (_f_eval(curve, g1, (w,) + pts1, level + 1, nodes, memo)
                      * _f_eval(curve, g2, (sw,) + pts2, level + 1, nodes, memo))
    return total


def omega(curve: SpectralCurve, g: int, n: int, points: Sequence,
          precision: Optional[int] = None, nodes: int = 256):
    """Correlator value at the given points, doubling nodes until stable.

    Points must keep clear of the quadrature circles (radius a quarter of
    the smallest branch-point modulus, shrinking fourfold per nesting
    level), which holds in the usual evaluation region away from the
    branch points."""
    if len(points) != n:
        raise ParameterError("need exactly n evaluation points")
    with working_precision(precision or DEFAULT_PRECISION), _gmp_ctx():
        pts = tuple(_to_gc(p) for p in points)
        tol = gmpy2.mpfr(2) ** (-mp.mp.prec // 2)
        prev = None
        N = nodes
        while N <= _MAX_NODES:
            val = _f_eval(curve, g, pts, 0, N, {})
            if prev is not None and abs(val - prev) <= tol * (1 + abs(val)):
                return _from_gc(val)
            prev = val
            N *= 2
        raise PrecisionError("correlator did not stabilize under node doubling")


# -- coefficient extraction --------------------------------------------------

def _coeff_batch(curve, g, m_top, rest, nodes, memo):
    """Power coefficients of the correlator in its first variable, read off
    from the recursion kernel without a contour in that variable.

    For S(r,s) these are the z^m coefficients at z -> 0; for the monotone
    curve the u^m coefficients in the chart u = 1/z, whose chain rule the
    kernel expansion absorbs. Rest points and results are gmpy2.mpc."""
    totals = [gmpy2.mpc(0) for _ in range(m_top)]
    for w, sw, coef, _ in _gnode_data(curve, 0, nodes):
        u = _u_value(curve, g, w, sw, rest, 0, nodes, memo)
        if not u:
            continue
        core = coef * u
        if curve.kind == "srs":
            wi, swi = 1 / w, 1 / sw
            pw, psw = wi, swi
            for m in range(m_top):
                totals[m] -= (pw - psw) * core
                pw *= wi
                psw *= swi
        else:
            pw, psw = w, sw
            for m in range(m_top):
                totals[m] -= (pw - psw) * core
                pw *= w
                psw *= sw
    return totals


def _chart_point(curve, t):
    """Extraction-chart node -> curve coordinate plus the chain factor that
    turns the correlator scalar into the chart scalar."""
    if curve.kind == "srs":
        return t, mp.mpc(1)
    return 1 / t, -1 / t ** 2


@lru_cache(maxsize=None)
def _basis_column(kind: str, r: int, mu: int, k_top: int) -> Tuple[Fraction, ...]:
    """Chart-power coefficients of d/dz[ zhat^mu ], zhat = z e^{-z^r} for
    the S family and zhat = u(1 - u) for the monotone chart."""
    col = [Fraction(0)] * k_top
    if kind == "srs":
        j = 0
        while mu - 1 + j * r < k_top:
            col[mu - 1 + j * r] = Fraction(-mu) ** j / factorial(j) * (mu + j * r)
            j += 1
    else:
        for j in range(mu + 1):
            k = mu - 1 + j
            if k >= k_top:
                break
            binom = factorial(mu) // (factorial(j) * factorial(mu - j))
            col[k] = Fraction((-1) ** j * binom * (mu + j))
    return tuple(col)


def _solve_basis(curve, coeffs: List, mu_max: int) -> List:
    """Unitriangular solve from chart-power coefficients to basis ones."""
    out = []
    for mu in range(1, mu_max + 1):
        acc = coeffs[mu - 1]
        for nu in range(1, mu):
            c = _basis_column(curve.kind, curve.r, nu, mu_max)[mu - 1]
            if c:
                acc -= out[nu - 1] * mp.mpf(c.numerator) / c.denominator
        lead = _basis_column(curve.kind, curve.r, mu, mu_max)[mu - 1]
        out.append(acc / (mp.mpf(lead.numerator) / lead.denominator))
    return out


def branch_exponent(g: int, n: int, mu: Sequence[int], r: int, s: int) -> Optional[int]:
    """b = ((2g-2+n)s + sum(mu))/r when a non-negative integer, else None."""
    num = (2 * g - 2 + n) * s + sum(mu)
    if num < 0 or num % r:
        return None
    return num // r


def extract_coefficients(curve: SpectralCurve, g: int, n: int, mu_max: int,
                         precision: Optional[int] = None,
                         nodes: int = 32) -> Dict[Tuple[int, ...], mp.mpf]:
    """Expansion coefficients N_{g,mu}, one entry per sorted mu with all
    parts <= mu_max.

    For S(r,s) the raw basis coefficient is scaled by b! whenever the
    branch exponent b is a non-negative integer; otherwise (and always on
    the monotone curve) the coefficient is returned as is. Node counts
    double until two consecutive tables agree to 1e-15; the trapezoid
    sums converge geometrically, so agreement at that level certifies the
    finer table to far better than the comparison tolerances in use."""
    if n < 1 or n > _MAX_POINTS:
        raise ResourceLimitError(f"extraction supports 1..{_MAX_POINTS} points")
    if 2 * g - 2 + n <= 0:
        raise ParameterError(f"({g},{n}) is outside the recursion")
    with working_precision(precision or DEFAULT_PRECISION), _gmp_ctx():
        accept = mp.mpf(10) ** (-15)
        prev = None
        N = nodes
        table = None
        while N <= _MAX_NODES:
            table = _extract_once(curve, g, n, mu_max, N)
            if prev is not None:
                worst = max(
                    abs(table[k] - prev[k]) / (1 + abs(table[k])) for k in table)
                if worst <= accept:
                    break
            prev = table
            N *= 2
        else:
            raise PrecisionError("extraction did not stabilize under node doubling")
        tol = mp.mpf(10) ** (-25)
        out = {}
        for mu, val in table.items():
            if abs(mp.im(val)) > tol * (1 + abs(val)):
                raise PrecisionError(f"coefficient at {mu} kept an imaginary part")
            rval = mp.re(val)
            if curve.kind == "srs":
                b = branch_exponent(g, n, mu, curve.r, curve.s)
                if b is not None:
                    rval = rval * factorial(b)
            out[mu] = rval
        return out


def _extract_once(curve, g, n, mu_max, nodes):
    K = mu_max
    memo: dict = {}
    if curve.kind == "srs":
        radius = min(abs(p) for p in branch_points(curve)) / 2
    else:
        radius = mp.mpf(1) / 4
    cn = max(128, 2 * nodes)

    def mvec(rest_charts):
        rest = tuple(_to_gc(z) for z, _ in rest_charts)
        chain = mp.mpc(1)
        for _, ch in rest_charts:
            chain *= ch
        vals = _coeff_batch(curve, g, K, rest, nodes, memo)
        return [_from_gc(v) * chain for v in vals]

    if n == 1:
        basis = _solve_basis(curve, mvec(()), K)
        return {(mu,): basis[mu - 1] for mu in range(1, K + 1)}

    tnodes = [radius * mp.expjpi(mp.mpf(2 * j) / cn) for j in range(cn)]
    charts = [_chart_point(curve, t) for t in tnodes]

    def cauchy(vals_by_node, k):
        return sum(vals_by_node[j] * tnodes[j] ** (-k) for j in range(cn)) / cn

    raw: Dict[Tuple[int, ...], list] = {}

    def put(mu, val):
        raw.setdefault(tuple(sorted(mu, reverse=True)), []).append(val)

    def conj_vec(vals):
        return [mp.conj(v) for v in vals]

    if n == 2:
        # the curves have a real structure, so the correlator at the
        # conjugate Cauchy node is the conjugate value
        vecs = [None] * cn
        for j in range(cn // 2 + 1):
            vecs[j] = mvec((charts[j],))
            if 0 < j < cn - j:
                vecs[cn - j] = conj_vec(vecs[j])
        cmk = [[cauchy([vecs[j][m] for j in range(cn)], k) for k in range(K)]
               for m in range(K)]
        rows = [_solve_basis(curve, [cmk[m][k] for m in range(K)], K)
                for k in range(K)]
        for mu0 in range(1, K + 1):
            col = _solve_basis(curve, [rows[k][mu0 - 1] for k in range(K)], K)
            for mu1 in range(1, K + 1):
                put((mu0, mu1), col[mu1 - 1])
    else:
        vecs = [[None] * cn for _ in range(cn)]
        for j1 in range(cn // 2 + 1):
            for j2 in range(cn):
                vecs[j1][j2] = mvec((charts[j1], charts[j2]))
                if 0 < j1 < cn - j1:
                    vecs[cn - j1][(cn - j2) % cn] = conj_vec(vecs[j1][j2])
        # Cauchy in both trailing variables, then triangular solves on each
        # axis in turn: m -> mu0, k1 -> mu1, k2 -> mu2.
        cmkk = [[[None] * K for _ in range(K)] for _ in range(K)]
        for m in range(K):
            inner = [[vecs[j1][j2][m] for j2 in range(cn)] for j1 in range(cn)]
            part = [[cauchy(inner[j1], k2) for k2 in range(K)]
                    for j1 in range(cn)]
            for k1 in range(K):
                for k2 in range(K):
                    cmkk[m][k1][k2] = cauchy([part[j1][k2] for j1 in range(cn)],
                                             k1)
        a1 = [[_solve_basis(curve, [cmkk[m][k1][k2] for m in range(K)], K)
               for k2 in range(K)] for k1 in range(K)]
        # a1[k1][k2][mu0-1]
        a2 = [[_solve_basis(curve, [a1[k1][k2][mu0] for k1 in range(K)], K)
               for k2 in range(K)] for mu0 in range(K)]
        # a2[mu0][k2][mu1-1]
        for mu0 in range(K):
            for mu1 in range(K):
                col = _solve_basis(curve, [a2[mu0][k2][mu1] for k2 in range(K)],
                                   K)
                for mu2 in range(K):
                    put((mu0 + 1, mu1 + 1, mu2 + 1), col[mu2])

    return {mu: sum(vals) / len(vals) for mu, vals in raw.items()}


def closed_form_N(g: int, mu: Sequence[int], r: int, s: int) -> Rat:
    """Exact prediction b! r^{b+2g-2+n} / s^{2g-2+n} prod (mu_i/r)^{q_i}/q_i!
    (q_i = floor(mu_i/r)) times the twisted-class tail integral; zero unless
    the branch exponent b is a non-negative integer."""
    if s == 0:
        raise ParameterError("s = 0 has no closed-form normalization")
    mu = tuple(int(m) for m in mu)
    n = len(mu)
    b = branch_exponent(g, n, mu, r, s)
    if b is None:
        return Fraction(0)
    val = (Fraction(factorial(b)) * Fraction(r) ** (b + 2 * g - 2 + n)
           / Fraction(s) ** (2 * g - 2 + n))
    for m in mu:
        q = m // r
        val *= Fraction(m, r) ** q / factorial(q)
    return val * chiodo_integral_elsv(g, r, s, mu)


# -- local charts and the R-matrix from the bidifferential -------------------

def _chart_series(curve: SpectralCurve, i: int, order: int):
    """z(w) - p_i as a series in the chart w where x = x(p_i) - w^2/(2r) on
    the S family (the monotone curve uses the analogous normalization from
    its own x''). Returns (p_i, series). The square-root branch is fixed
    so dz/dw(0) = p_i/r on the S family and 1 on the monotone curve."""
    p = branch_points(curve)[i]
    M = order + 2
    if curve.kind == "srs":
        r = curve.r
        xc = [mp.mpc(0)]
        for k in range(1, M + 1):
            fall = mp.mpc(1)
            for t in range(k):
                fall *= (r - t)
            xc.append(-fall / factorial(k) * p ** (r - k)
                      + (-1) ** (k - 1) / (mp.mpf(k) * p ** k))
        scale = mp.mpf(2 * r)
        lead_target = r / p
    else:
        xc = [mp.mpc(0)]
        for k in range(1, M + 1):
            # Taylor coefficients of z^{-1} - z^{-2} about p
            xc.append((-1) ** k / p ** (k + 1)
                      + (-1) ** (k + 1) * (k + 1) / p ** (k + 2))
        scale = -2 / _x2(curve, p)
        lead_target = mp.mpc(1)
    neg = TruncSeries([-scale * c for c in xc], M)
    lead = neg.c[2]
    if abs(lead - lead_target ** 2) > mp.mpf(2) ** (-mp.mp.prec // 2):
        raise PrecisionError("chart normalization drifted")
    ratio = TruncSeries([neg.c[k + 2] / lead for k in range(M - 1)], M - 2)
    root = ratio.sqrt()
    w_of_u = TruncSeries([mp.mpc(0)] + [lead_target * c for c in root.c], M - 1)
    return p, series_reversion(w_of_u)


def local_involution(curve: SpectralCurve, i: int, order: int,
                     precision: Optional[int] = None) -> TruncSeries:
    """Deck transformation as a series in u = z - p_i to the given order."""
    with working_precision(precision or DEFAULT_PRECISION):
        p, u_of_w = _chart_series(curve, i, order + 2)
        w_of_u = series_reversion(u_of_w.truncate(order + 2))
        neg = TruncSeries([-c for c in w_of_u.c], w_of_u.order)
        return u_of_w.compose(neg).truncate(order)


def _gaussian_reduce(series_c: Sequence, order: int, lowest: int = 0) -> TruncSeries:
    """Formal Gaussian moments termwise: w^{2k} -> (2k-1)!! zeta^k, odd
    powers -> 0. series_c[j] holds the w^{j+lowest} coefficient; callers
    treat a w^{-2} term separately (its moment is -1/zeta)."""
    out = [mp.mpc(0)] * (order + 1)
    for j, c in enumerate(series_c):
        e = j + lowest
        if e < 0 or e % 2 or not c:
            continue
        k = e // 2
        if k <= order:
            out[k] += c * double_factorial(2 * k - 1)
    return TruncSeries(out, order)


def r_matrix_from_B(curve: SpectralCurve, order: int,
                    precision: Optional[int] = None) -> List[List[TruncSeries]]:
    """(R^{-1})_i^j(zeta) from the bidifferential expansion between branch
    charts, Gaussian moments applied termwise and the whole multiplied by
    -zeta. Entry [i][j] is a series in zeta with constant term delta_ij;
    the diagonal double pole w^{-2} must carry coefficient exactly 1 and
    yields the constant term through its -1/zeta moment."""
    with working_precision(precision or DEFAULT_PRECISION):
        ps = branch_points(curve)
        nb = len(ps)
        M = 2 * order + 4
        charts = [_chart_series(curve, j, M) for j in range(nb)]
        lead = [charts[j][1].c[1] for j in range(nb)]
        out = []
        for i in range(nb):
            row = []
            for j in range(nb):
                p_j, u_of_w = charts[j]
                zjp = u_of_w.derivative()
                ser = [mp.mpc(0)] * (order + 1)
                if i == j:
                    h = TruncSeries([u_of_w.c[k + 1] / u_of_w.c[1]
                                     for k in range(u_of_w.order)],
                                    u_of_w.order - 1)
                    denom = (h * h).truncate(zjp.order)
                    ratio = (zjp * denom.inverse()).truncate(zjp.order)
                    lau = [ratio.c[k] * lead[i] / u_of_w.c[1] ** 2
                           for k in range(len(ratio.c))]
                    if abs(lau[0] - 1) > mp.mpf(2) ** (-mp.mp.prec // 2):
                        raise PrecisionError("diagonal double pole not unital")
                    gm = _gaussian_reduce(lau, order + 1, lowest=-2)
                    ser[0] = lau[0]
                    for k in range(order):
                        ser[k + 1] = -gm.c[k]
                else:
                    diff = ps[i] - p_j
                    den = TruncSeries([diff] + [-c for c in u_of_w.c[1:]],
                                      u_of_w.order)
                    inv = den.inverse()
                    gser = (zjp * inv * inv).truncate(2 * order + 1)
                    gm = _gaussian_reduce(
                        [c * lead[i] for c in gser.c], order + 1, lowest=0)
                    for k in range(order):
                        ser[k + 1] = -gm.c[k]
                row.append(TruncSeries(ser, order))
            out.append(row)
        return out


def flat_r_inverse_from_B(curve: SpectralCurve, order: int,
                          precision: Optional[int] = None) -> List[TruncSeries]:
    """Diagonal of the flat-basis conjugation of r_matrix_from_B on S(r,s);
    raises if the conjugated matrix fails to be diagonal. Entry a runs 1..r
    in the flat labeling."""
    if curve.kind != "srs":
        raise ParameterError("flat basis is specific to the S(r,s) family")
    with working_precision(precision or DEFAULT_PRECISION):
        r = curve.r
        rinv = r_matrix_from_B(curve, order)
        tol = mp.mpf(2) ** (-mp.mp.prec // 3)
        diag = []
        for a in range(1, r + 1):
            own = None
            for b in range(1, r + 1):
                acc = [mp.mpc(0)] * (order + 1)
                for i in range(r):
                    for j in range(r):
                        phase = mp.expjpi(mp.mpf(2 * (b * j - a * i)) / r) / r
                        for k in range(order + 1):
                            acc[k] += phase * rinv[i][j].c[k]
                if b == a:
                    own = acc
                elif max(abs(c) for c in acc) > tol:
                    raise PrecisionError("flat conjugation is not diagonal")
            diag.append(TruncSeries(own, order))
        return diag


def bernoulli_diagonal(r: int, order: int) -> List[TruncSeries]:
    """exp(+sum_k B_{k+1}(a/r)/(k(k+1)) zeta^k) for a = 1..r, the exact
    series the flat diagonal of the bidifferential route must reproduce."""
    out = []
    for a in range(1, r + 1):
        coeffs = [Fraction(0)] + [
            bernoulli_polynomial(k + 1, Fraction(a, r)) / (k * (k + 1))
            for k in range(1, order + 1)
        ]
        out.append(TruncSeries(coeffs, order).exp())
    return out


# -- Gaussian-integral consistency checks ------------------------------------

def _y_chart_series(curve: SpectralCurve, p, u_of_w: TruncSeries) -> TruncSeries:
    """y restricted to the chart, as a series in w (constant term kept)."""
    zw = TruncSeries([p] + list(u_of_w.c[1:]), u_of_w.order)
    if curve.kind == "monotone":
        return TruncSeries([-c for c in zw.c], zw.order)
    out = TruncSeries.constant(1, zw.order)
    for _ in range(curve.s):
        out = (out * zw).truncate(zw.order)
    if curve.perturb_y:
        out = out + (out * zw).truncate(zw.order)
    return out


def doss_test(curve: SpectralCurve, order: int,
              precision: Optional[int] = None) -> bool:
    """Gaussian-moment identity tying y to the R-matrix and the branch
    values of dy/dw: the moment expansion of 2 C_i^2 C dy/dw_i must equal
    sum_k (R^{-1})^i_k (2 C_k^2 C dy/dw_k(0)) termwise in zeta. In the
    storage convention of r_matrix_from_B the identity's upper label is
    the second index. Holds on S(r,s); perturbing y by a monomial of
    exponent above r breaks it (exponents <= r stay inside the span the
    identity cannot see, so the z^{s+1} corruption is only an effective
    negative control when s = r)."""
    if curve.kind != "srs":
        raise ParameterError("the check is formulated for the S(r,s) family")
    with working_precision(precision or DEFAULT_PRECISION):
        r, s = curve.r, curve.s
        C = mp.power(mp.mpf(r), 1 + mp.mpf(s) / r) / s
        Ci2 = mp.mpf(-1) / (2 * r)
        M = 2 * order + 4
        rinv = r_matrix_from_B(curve, order)
        dy0 = []
        lhs = []
        for i in range(r):
            p, u_of_w = _chart_series(curve, i, M)
            dyw = _y_chart_series(curve, p, u_of_w).derivative()
            dy0.append(dyw.c[0])
            gm = _gaussian_reduce(dyw.c, order, lowest=0)
            lhs.append([2 * Ci2 * C * c for c in gm.c])
        tol = mp.mpf(2) ** (-mp.mp.prec // 3)
        for i in range(r):
            for q in range(order + 1):
                rhs = mp.mpc(0)
                for k in range(r):
                    rhs += rinv[k][i].c[q] * (2 * Ci2 * C * dy0[k])
                if abs(lhs[i][q] - rhs) > tol * (1 + abs(rhs)):
                    return False
        return True


def xi_function_check(r: int, s: int, a: int, order: int,
                      precision: Optional[int] = None) -> bool:
    """Flat auxiliary function: bidifferential route (simple poles at the
    branch points) against the explicit exponential sum, as series in z at
    0; plus the chart rule (1/r) d/dx = -(1/w_i) d/dw_i on exponentials."""
    if not 1 <= a <= r:
        raise ParameterError("index a must lie in {1..r}")
    curve = curve_srs(r, max(s, 1))
    with working_precision(precision or DEFAULT_PRECISION):
        ps = branch_points(curve)
        tol = mp.mpf(2) ** (-mp.mp.prec // 3)
        route1 = []
        for k in range(order + 1):
            acc = mp.mpc(0)
            for i, p in enumerate(ps):
                acc += mp.expjpi(mp.mpf(-2 * a * i) / r) * (p / r) / p ** (k + 1)
            route1.append(acc)
        route2 = [mp.mpc(0)] * (order + 1)
        pref = mp.power(mp.mpf(r), mp.mpf(r - a) / r)
        nn = 0
        while nn * r + r - a <= order:
            m = nn * r + r - a
            amp = pref * mp.mpf(m) ** nn / factorial(nn)
            j = 0
            while m + j * r <= order:
                route2[m + j * r] += amp * mp.mpf(-m) ** j / factorial(j)
                j += 1
            nn += 1
        for k in range(order + 1):
            if abs(route1[k] - route2[k]) > tol * (1 + abs(route1[k])):
                return False
        # chart rule on f = e^{mu x}: both sides as series in w at branch 0,
        # where f(w) = e^{mu x(p)} exp(-mu w^2 / (2r)) up to the constant.
        for mu in (1, 2):
            expo = TruncSeries([mp.mpf(0), mp.mpf(0), -mp.mpf(mu) / (2 * r)],
                               order + 4).exp()
            lhs = [mp.mpf(mu) / r * c for c in expo.c]
            dfd = expo.derivative()
            rhs = [-dfd.c[k + 1] for k in range(len(dfd.c) - 1)]
            for k in range(min(len(lhs), len(rhs))):
                if abs(lhs[k] - rhs[k]) > tol * (1 + abs(lhs[k])):
                    return False
        return True
