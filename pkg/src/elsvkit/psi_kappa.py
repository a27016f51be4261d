"""Intersection numbers of psi and kappa classes on moduli of stable curves.

psi_intersection runs the KdV/Virasoro recursion on the largest exponent
after string/dilaton preprocessing; the seeds are <tau_0^3>_{0,3} = 1 and
<tau_1>_{1,1} = 1/24. kappa monomials reduce to pure psi integrals by
adding marked points, using kappa_b(upstairs) = pullback + psi_last^b.

The persistent cache is a text file, one entry per line:

    g|d1,d2,...|b1,b2,...=p/q

with psi exponents then kappa indices, both sorted ascending, either list
possibly empty. Lines are written sorted, so load/flush round-trips are
byte-identical.
"""

from __future__ import annotations

import os
from fractions import Fraction
from math import factorial
from typing import Dict, Iterable, Tuple

from .errors import CacheFormatError, ParameterError, StabilityError
from .exactnum import Rat, double_factorial

_F0 = Fraction(0)
_F1 = Fraction(1)

_PSI_BASE = {(0, (0, 0, 0)): _F1, (1, (1,)): Fraction(1, 24)}

_psi_memo: Dict[Tuple[int, Tuple[int, ...]], Fraction] = {}
_kappa_memo: Dict[Tuple[int, Tuple[int, ...], Tuple[int, ...]], Fraction] = {}


def _stable(g: int, n: int) -> bool:
    return 2 * g - 2 + n > 0


def _validate(g, indices, what: str) -> None:
    if g < 0:
        raise ParameterError("genus must be nonnegative")
    for d in indices:
        if d < 0:
            raise ParameterError(f"negative {what} index {d}")


def psi_intersection(g: int, ds: Iterable[int]) -> Rat:
    """<tau_{d_1} ... tau_{d_n}>_g; zero unless the degrees add to 3g-3+n."""
    g = int(g)
    ds = tuple(sorted(int(d) for d in ds))
    _validate(g, ds, "psi")
    if not _stable(g, len(ds)):
        raise StabilityError(f"(g, n) = ({g}, {len(ds)}) is not stable")
    return _psi(g, ds)


def _psi(g: int, ds: Tuple[int, ...]) -> Fraction:
    n = len(ds)
    if sum(ds) != 3 * g - 3 + n:
        return _F0
    key = (g, ds)
    base = _PSI_BASE.get(key)
    if base is not None:
        return base
    hit = _psi_memo.get(key)
    if hit is not None:
        return hit
    if ds[0] == 0:
        val = _string(g, ds)
    elif ds[0] == 1:
        val = _dilaton(g, ds)
    else:
        val = _dvv(g, ds)
    _psi_memo[key] = val
    return val


def _string(g: int, ds: Tuple[int, ...]) -> Fraction:
    rest = ds[1:]
    total = _F0
    for j, d in enumerate(rest):
        if d == 0:
            continue
        total += _psi(g, tuple(sorted(rest[:j] + (d - 1,) + rest[j + 1:])))
    return total


def _dilaton(g: int, ds: Tuple[int, ...]) -> Fraction:
    rest = ds[1:]
    return (2 * g - 2 + len(rest)) * _psi(g, rest)


def _safe(g: int, ds: Tuple[int, ...]) -> Fraction:
    if g < 0 or not _stable(g, len(ds)):
        return _F0
    return _psi(g, tuple(sorted(ds)))


def _dvv(g: int, ds: Tuple[int, ...]) -> Fraction:
    """Recursion on the largest exponent; only reached with all d_i >= 2."""
    top = ds[-1]
    k = top - 1
    rest = ds[:-1]
    total = _F0
    for j, d in enumerate(rest):
        total += Fraction(
            double_factorial(2 * (k + d) + 1), double_factorial(2 * d - 1)
        ) * _psi(g, tuple(sorted(rest[:j] + (k + d,) + rest[j + 1:])))
    half_sum = _F0
    m = len(rest)
    for a in range(k):
        b = k - 1 - a
        coeff = double_factorial(2 * a + 1) * double_factorial(2 * b + 1)
        half_sum += coeff * _safe(g - 1, rest + (a, b))
        for mask in range(1 << m):
            left = tuple(rest[i] for i in range(m) if mask >> i & 1)
            right = tuple(rest[i] for i in range(m) if not mask >> i & 1)
            for g1 in range(g + 1):
                part = _safe(g1, left + (a,))
                if part:
                    half_sum += coeff * part * _safe(g - g1, right + (b,))
    total += half_sum / 2
    return total / double_factorial(2 * top + 1)


def psi_genus0_closed_form(ds: Iterable[int]) -> Rat:
    """(n-3)! / prod(d_i!) when degrees match, else 0; genus-0 oracle."""
    ds = tuple(int(d) for d in ds)
    _validate(0, ds, "psi")
    n = len(ds)
    if n < 3:
        raise StabilityError(f"(g, n) = (0, {n}) is not stable")
    if sum(ds) != n - 3:
        return _F0
    out = Fraction(factorial(n - 3))
    for d in ds:
        out /= factorial(d)
    return out


def kappa_psi_intersection(g: int, kappas: Iterable[int], psis: Iterable[int]) -> Rat:
    """<kappa_{b_1} ... kappa_{b_k} tau_{d_1} ... tau_{d_n}>_g."""
    g = int(g)
    ks = tuple(sorted((int(b) for b in kappas), reverse=True))
    ds = tuple(sorted(int(d) for d in psis))
    _validate(g, ks, "kappa")
    _validate(g, ds, "psi")
    if not _stable(g, len(ds)):
        raise StabilityError(f"(g, n) = ({g}, {len(ds)}) is not stable")
    if sum(ks) + sum(ds) != 3 * g - 3 + len(ds):
        return _F0
    return _kappa(g, ks, ds)


def _kappa(g: int, ks: Tuple[int, ...], ds: Tuple[int, ...]) -> Fraction:
    if not ks:
        return _psi(g, ds)
    key = (g, ks, ds)
    hit = _kappa_memo.get(key)
    if hit is not None:
        return hit
    b1 = ks[0]
    rest = ks[1:]
    m = len(rest)
    total = _F0
    for mask in range(1 << m):
        chosen = [rest[i] for i in range(m) if mask >> i & 1]
        kept = tuple(rest[i] for i in range(m) if not mask >> i & 1)
        sign = -1 if len(chosen) % 2 else 1
        new_tau = b1 + 1 + sum(chosen)
        total += sign * _kappa(g, kept, tuple(sorted(ds + (new_tau,))))
    _kappa_memo[key] = total
    return total


def cache_stats() -> Dict[str, int]:
    return {"psi_entries": len(_psi_memo), "kappa_entries": len(_kappa_memo)}


def cache_clear() -> None:
    _psi_memo.clear()
    _kappa_memo.clear()


def _format_line(g: int, ds: Tuple[int, ...], ks: Tuple[int, ...], val: Fraction) -> str:
    return "{}|{}|{}={}".format(
        g, ",".join(map(str, ds)), ",".join(map(str, sorted(ks))), val
    )


def cache_flush(path: str) -> int:
    """Write every memoized value, sorted; returns the line count."""
    lines = []
    for (g, ds), val in _psi_memo.items():
        lines.append(_format_line(g, ds, (), val))
    for (g, ks, ds), val in _kappa_memo.items():
        lines.append(_format_line(g, ds, ks, val))
    lines.sort()
    tmp = f"{path}.tmp.{os.getpid()}"
    with open(tmp, "w") as fh:
        for line in lines:
            fh.write(line + "\n")
    os.replace(tmp, path)
    return len(lines)


def cache_load(path: str) -> int:
    """Merge entries from a cache file into the in-process memo tables."""
    count = 0
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            try:
                head, _, valstr = line.partition("=")
                if not valstr:
                    raise ValueError("missing value")
                gstr, dstr, kstr = head.split("|")
                g = int(gstr)
                ds = tuple(int(x) for x in dstr.split(",")) if dstr else ()
                ks = tuple(int(x) for x in kstr.split(",")) if kstr else ()
                val = Fraction(valstr)
                if g < 0 or any(x < 0 for x in ds + ks):
                    raise ValueError("negative index")
                if tuple(sorted(ds)) != ds or tuple(sorted(ks)) != ks:
                    raise ValueError("indices not sorted")
            except ValueError as exc:
                raise CacheFormatError(f"{path}: line {lineno}: {exc}") from None
            if ks:
                _kappa_memo[(g, tuple(sorted(ks, reverse=True)), ds)] = val
            else:
                if (g, ds) not in _PSI_BASE:
                    _psi_memo[(g, ds)] = val
            count += 1
    return count


def kappa_exp_tail_integral(g: int, kappa_coeffs, leg_series) -> Rat:
    """Integral of exp(sum_l A_l kappa_l) * prod_j (sum_d c_{j,d} psi_j^d).

    kappa_coeffs lists A_1, A_2, ... (missing tail treated as zero);
    leg_series holds one coefficient sequence per marked point. The sum
    runs over kappa partitions and psi exponents filling the dimension.
    """
    n = len(leg_series)
    if not _stable(g, n):
        raise StabilityError(f"(g, n) = ({g}, {n}) is not stable")
    A = [Fraction(x) for x in kappa_coeffs]
    dim = 3 * g - 3 + n
    total = _F0

    def kappa_terms(budget: int, min_l: int, coeff: Fraction, parts: Tuple[int, ...]):
        yield parts, coeff
        for l in range(min_l, min(len(A), budget) + 1):
            if not A[l - 1]:
                continue
            mult = parts.count(l) + 1
            yield from kappa_terms(budget - l, l, coeff * A[l - 1] / mult,
                                   parts + (l,))

    def leg_sums(j: int, budget: int, coeff: Fraction, exps: Tuple[int, ...],
                 kappas: Tuple[int, ...]):
        nonlocal total
        if j == n:
            if budget == 0:
                total += coeff * kappa_psi_intersection(g, kappas, exps)
            return
        ser = leg_series[j]
        top = budget if j == n - 1 else min(budget, len(ser) - 1)
        lo = budget if j == n - 1 else 0
        for d in range(lo, top + 1):
            c = ser[d] if d < len(ser) else _F0
            if c:
                leg_sums(j + 1, budget - d, coeff * Fraction(c), exps + (d,), kappas)

    for parts, coeff in kappa_terms(dim, 1, _F1, ()):
        leg_sums(0, dim - sum(parts), coeff, (), parts)
    return total
