"""Character-sum route to disconnected branched-cover counts.

Irreducible symmetric-group characters come from the border-strip
recursion on beta-sets. The transposition class acts on an irreducible
by its content sum; the monotone walk generating function is the
complete homogeneous polynomial evaluated at the contents.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Dict, Iterator, List, Tuple

from ..errors import ParameterError

Partition = Tuple[int, ...]


def partitions(n: int) -> Iterator[Partition]:
    """All partitions of n as descending tuples, lexicographically descending."""
    if n == 0:
        yield ()
        return

    def rec(remaining: int, cap: int, prefix: List[int]):
        if remaining == 0:
            yield tuple(prefix)
            return
        for part in range(min(cap, remaining), 0, -1):
            prefix.append(part)
            yield from rec(remaining - part, part, prefix)
            prefix.pop()

    yield from rec(n, n, [])


def normalize_partition(mu) -> Partition:
    mu = tuple(sorted((int(m) for m in mu), reverse=True))
    if any(m < 1 for m in mu):
        raise ParameterError("partition parts must be positive integers")
    return mu


def z_order(mu: Partition) -> int:
    """Order of the centralizer of a permutation of cycle type mu."""
    out = 1
    mult: Dict[int, int] = {}
    for m in mu:
        mult[m] = mult.get(m, 0) + 1
    for length, count in mult.items():
        out *= length**count * factorial(count)
    return out


def class_size(mu: Partition) -> int:
    d = sum(mu)
    return factorial(d) // z_order(mu)


def _beta(lam: Partition) -> Tuple[int, ...]:
    m = len(lam)
    return tuple(sorted(lam[i] + (m - 1 - i) for i in range(m)))


def _from_beta(beta: Tuple[int, ...]) -> Partition:
    vals = sorted(beta, reverse=True)
    m = len(vals)
    lam = tuple(vals[i] - (m - 1 - i) for i in range(m))
    return tuple(p for p in lam if p > 0)


@lru_cache(maxsize=None)
def character_value(lam: Partition, mu: Partition) -> int:
    """chi_lambda at the class mu, via border-strip removal."""
    if sum(lam) != sum(mu):
        raise ParameterError("character arguments must partition the same integer")
    if not lam:
        return 1
    k = mu[0]
    rest = mu[1:]
    beta = _beta(lam)
    bset = set(beta)
    total = 0
    for bi in beta:
        t = bi - k
        if t < 0 or t in bset:
            continue
        height = sum(1 for bj in beta if t < bj < bi)
        newbeta = tuple(sorted((t if b == bi else b) for b in beta))
        total += (-1) ** height * character_value(_from_beta(newbeta), rest)
    return total


def dimension(lam: Partition) -> int:
    return character_value(lam, (1,) * sum(lam))


def contents(lam: Partition) -> List[int]:
    return [j - i for i, row in enumerate(lam) for j in range(row)]


def content_sum(lam: Partition) -> int:
    return sum(contents(lam))


@lru_cache(maxsize=None)
def _complete_homogeneous_contents(lam: Partition, b: int) -> int:
    """h_b evaluated at the content multiset of lam."""
    h = [1] + [0] * b
    for c in contents(lam):
        if c == 0:
            continue
        # divide the generating function by (1 - c t)
        for k in range(1, b + 1):
            h[k] += c * h[k - 1]
    return h[b]


def symmetric_group_character_table(d: int) -> Dict[Partition, Dict[Partition, int]]:
    parts = list(partitions(d))
    return {lam: {mu: character_value(lam, mu) for mu in parts} for lam in parts}


def disconnected_tuple_count(mu, b: int, flavor: str = "simple", r: int = 1) -> int:
    """Raw number of factorization tuples with disconnected covers allowed.

    Counts tuples (tau_b, ..., tau_1, sigma_0, sigma_inf) in S_d with
    tau_b ... tau_1 sigma_0 sigma_inf = id, sigma_0 of cycle type mu, the
    tau_i transpositions (weakly increasing largest moved point for the
    monotone flavor), and sigma_inf of type (r^{d/r}) for the orbifold
    flavor, identity otherwise. Returns an integer; integrality of the
    character sum is asserted.
    """
    mu = normalize_partition(mu)
    d = sum(mu)
    if b < 0:
        return 0
    if d == 0:
        return 1 if b == 0 else 0
    if flavor not in ("simple", "monotone", "orbifold"):
        raise ParameterError(f"unknown flavor {flavor!r}")
    if flavor == "orbifold":
        if r < 1:
            raise ParameterError("orbifold level r must be >= 1")
        if d % r != 0:
            return 0
        rho = (r,) * (d // r)
    else:
        rho = (1,) * d

    total = Fraction(0)
    for lam in partitions(d):
        chi_mu = character_value(lam, mu)
        if chi_mu == 0:
            continue
        if flavor == "monotone":
            weight = _complete_homogeneous_contents(lam, b) * dimension(lam)
        else:
            chi_rho = character_value(lam, rho)
            if chi_rho == 0:
                continue
            weight = content_sum(lam) ** b * chi_rho * class_size(rho)
        total += Fraction(class_size(mu) * chi_mu * weight, factorial(d))
    if total.denominator != 1:
        raise ArithmeticError("character sum did not produce an integer count")
    return int(total)
