"""Connected Hurwitz counts: brute-force enumeration and the fast route.

Counting convention: a cover with monodromy sigma_0 of cycle type mu is
counted as (number of valid tuples)/d!. Comparisons against moduli-side
formulas with marked preimages multiply by the number of ways to order
equal parts of mu; see labeled_factor.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Dict, Tuple

from ..errors import ParameterError, ResourceLimitError
from .frobenius import disconnected_tuple_count, normalize_partition, partitions

try:
    from . import _fastcount as _kernel
except ImportError:
    from . import _purecount as _kernel

Partition = Tuple[int, ...]

MAX_BRUTE_DEGREE = 8
MAX_BRUTE_LENGTH = 10


def kernel_in_use() -> str:
    """Which tuple-tally kernel got imported: 'compiled' or 'pure'."""
    return _kernel.kernel_id()


def _cycle_type(perm: Tuple[int, ...]) -> Partition:
    seen = [False] * len(perm)
    lens = []
    for i in range(len(perm)):
        if seen[i]:
            continue
        c = 0
        j = i
        while not seen[j]:
            seen[j] = True
            c += 1
            j = perm[j]
        lens.append(c)
    return tuple(sorted(lens, reverse=True))


def _perms_of_type(d: int, rho: Partition):
    for p in itertools.permutations(range(d)):
        if _cycle_type(p) == rho:
            yield p


@lru_cache(maxsize=None)
def _brute_tables(d: int, b: int, flavor: str, r: int):
    """Raw tuple tallies per cycle type: (all, transitive) dicts."""
    if d > MAX_BRUTE_DEGREE:
        raise ResourceLimitError(
            f"brute-force enumeration capped at degree {MAX_BRUTE_DEGREE}, got {d}"
        )
    if b > MAX_BRUTE_LENGTH:
        raise ResourceLimitError(
            f"brute-force enumeration capped at {MAX_BRUTE_LENGTH} transpositions, got {b}"
        )
    parts = list(partitions(d))
    if flavor == "orbifold":
        if d % r != 0:
            return {p: 0 for p in parts}, {p: 0 for p in parts}
        sigmas = list(_perms_of_type(d, (r,) * (d // r)))
    else:
        sigmas = [tuple(range(d))]
    monotone = flavor == "monotone"
    tally_all = {p: 0 for p in parts}
    tally_conn = {p: 0 for p in parts}
    for sigma in sigmas:
        alls, conns = _kernel.count_types(d, b, sigma, monotone, parts)
        for p, ca, cc in zip(parts, alls, conns):
            tally_all[p] += ca
            tally_conn[p] += cc
    return tally_all, tally_conn


def _check_flavor(flavor: str, r: int):
    if flavor not in ("simple", "monotone", "orbifold"):
        raise ParameterError(f"unknown flavor {flavor!r}")
    if flavor != "orbifold" and r != 1:
        raise ParameterError("r != 1 only makes sense for the orbifold flavor")
    if r < 1:
        raise ParameterError("orbifold level r must be >= 1")


def count_disconnected(mu, b: int, flavor: str = "simple", r: int = 1) -> Fraction:
    """Brute-force disconnected count: tuples/d!."""
    _check_flavor(flavor, r)
    mu = normalize_partition(mu)
    d = sum(mu)
    if b < 0:
        return Fraction(0)
    tables, _ = _brute_tables(d, b, flavor, r)
    return Fraction(tables[mu], factorial(d))


def count_connected(mu, b: int, flavor: str = "simple", r: int = 1) -> Fraction:
    """Brute-force connected count: transitive tuples/d!."""
    _check_flavor(flavor, r)
    mu = normalize_partition(mu)
    d = sum(mu)
    if b < 0:
        return Fraction(0)
    _, conn = _brute_tables(d, b, flavor, r)
    return Fraction(conn[mu], factorial(d))


def _submultisets_proper(mu: Partition):
    """Nonempty proper submultisets of mu, as descending tuples."""
    distinct = sorted(set(mu), reverse=True)
    mult = [mu.count(p) for p in distinct]
    for counts in itertools.product(*(range(m + 1) for m in mult)):
        if sum(counts) == 0 or counts == tuple(mult):
            continue
        nu = []
        for p, c in zip(distinct, counts):
            nu.extend([p] * c)
        yield tuple(nu)


def _multiset_difference(mu: Partition, nu: Partition) -> Partition:
    rest = list(mu)
    for p in nu:
        rest.remove(p)
    return tuple(rest)


@lru_cache(maxsize=None)
def _connected_tuple_count(mu: Partition, b: int, flavor: str, r: int) -> int:
    """Transitive raw count, from the disconnected character counts.

    A tuple splits along the orbit O of sheet 1: O picks C(d-1, |O|-1)
    label sets, the transpositions inside O interleave with the rest in
    C(b, b') ways (uniquely for the monotone flavor, where the combined
    weakly-increasing maxima order the merge), and sigma_inf restricts to
    both sides. Solving for the transitive term inverts the relation.
    """
    d = sum(mu)
    if d == 0:
        return 1 if b == 0 else 0
    total = disconnected_tuple_count(mu, b, flavor, r)
    for nu in _submultisets_proper(mu):
        rest = _multiset_difference(mu, nu)
        m = sum(nu)
        for bp in range(b + 1):
            inner = _connected_tuple_count(nu, bp, flavor, r)
            if inner == 0:
                continue
            outer = disconnected_tuple_count(rest, b - bp, flavor, r)
            if outer == 0:
                continue
            w = 1 if flavor == "monotone" else comb(b, bp)
            total -= comb(d - 1, m - 1) * w * inner * outer
    return total


def hurwitz_disconnected(mu, b: int, flavor: str = "simple", r: int = 1) -> Fraction:
    """Disconnected count via character sums: tuples/d!."""
    _check_flavor(flavor, r)
    mu = normalize_partition(mu)
    if b < 0:
        return Fraction(0)
    return Fraction(disconnected_tuple_count(mu, b, flavor, r), factorial(sum(mu)))


def hurwitz_connected(mu, b: int, flavor: str = "simple", r: int = 1) -> Fraction:
    """Connected count via character sums and orbit-of-sheet-1 inversion."""
    _check_flavor(flavor, r)
    mu = normalize_partition(mu)
    if b < 0:
        return Fraction(0)
    return Fraction(_connected_tuple_count(mu, b, flavor, r), factorial(sum(mu)))


def branch_count(g: int, mu, flavor: str = "simple", r: int = 1) -> int:
    """Number of transposition factors fixed by genus and profile."""
    _check_flavor(flavor, r)
    mu = normalize_partition(mu)
    if g < 0:
        raise ParameterError("genus must be nonnegative")
    if flavor == "orbifold":
        if sum(mu) % r != 0:
            raise ParameterError("orbifold flavor needs r dividing the degree")
        return 2 * g - 2 + len(mu) + sum(mu) // r
    return 2 * g - 2 + len(mu) + sum(mu)


def labeled_factor(mu) -> int:
    """Orderings of equal parts: the factor relating tuple counts to
    counts with labeled preimages."""
    mu = normalize_partition(mu)
    out = 1
    for p in set(mu):
        out *= factorial(mu.count(p))
    return out


def hurwitz_number(
    g: int, mu, flavor: str = "simple", r: int = 1, method: str = "frobenius"
) -> Fraction:
    """Connected count for given genus; 0 when the branch count is negative."""
    _check_flavor(flavor, r)
    mu = normalize_partition(mu)
    b = branch_count(g, mu, flavor, r)
    if b < 0:
        return Fraction(0)
    if method == "frobenius":
        return hurwitz_connected(mu, b, flavor, r)
    if method == "brute":
        return count_connected(mu, b, flavor, r)
    raise ParameterError(f"unknown method {method!r}")
