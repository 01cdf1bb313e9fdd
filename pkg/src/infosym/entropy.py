"""Shannon measures of Boolean functions under uniformly random inputs.

All probabilities are exact dyadic rationals taken from BDD model counts;
floating point enters only when a count pair is turned into bits.  Two
entropies are compared through their counts (see :func:`same_entropy`),
never through the floats.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .bdd import FuncHandle
from .errors import LimitError

SET_LIMIT = 20


class Prob:
    """Exact probability ``numerator / denominator`` with a power-of-two denominator."""

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator: int, denominator: int):
        if denominator <= 0 or denominator & (denominator - 1):
            raise ValueError("denominator must be a power of two")
        if not 0 <= numerator <= denominator:
            raise ValueError("probability outside [0, 1]")
        self.numerator = numerator
        self.denominator = denominator

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    def complement(self) -> "Prob":
        return Prob(self.denominator - self.numerator, self.denominator)

    def __float__(self):
        return self.numerator / self.denominator

    def __eq__(self, other):
        if isinstance(other, Prob):
            return self.numerator * other.denominator == other.numerator * self.denominator
        if isinstance(other, (int, Fraction)):
            return self.fraction == other
        return NotImplemented

    def __hash__(self):
        return hash(self.fraction)

    def __repr__(self):
        return f"Prob({self.numerator}/{self.denominator})"


def binary_entropy(count: int, total: int) -> float:
    """Entropy in bits of a two-outcome field with ``count`` of ``total`` ones.

    ``total`` must be a power of two; ``0 * log 0`` is taken as 0.
    """
    if total <= 0 or total & (total - 1):
        raise ValueError("total must be a positive power of two")
    if count <= 0 or count >= total:
        return 0.0
    # work from the rarer outcome: exact complement symmetry, and log1p keeps
    # precision when p is tiny (n up to 64)
    small = min(count, total - count)
    p = small / total
    bits = total.bit_length() - 1
    h = p * (bits - math.log2(small)) - (1.0 - p) * math.log1p(-p) / math.log(2)
    return min(1.0, max(0.0, h))


def same_entropy(count_a: int, count_b: int, total: int) -> bool:
    """Exact entropy equality for two functions over the same ``total`` assignments.

    Binary entropy is symmetric about total/2 and strictly monotone on
    each side, so equal entropy means equal or complementary counts.
    """
    return count_a == count_b or count_a == total - count_b


def prob_one(f: FuncHandle) -> Prob:
    return Prob(f.manager.sat_count(f), 1 << f.n)


def entropy(f: FuncHandle) -> float:
    return binary_entropy(f.manager.sat_count(f), 1 << f.n)


def cofactor_entropy(f: FuncHandle, i: int, b: int) -> float:
    return entropy(f.manager.restrict(f, i, b))


def cond_entropy(f: FuncHandle, i: int) -> float:
    """H(f | x_i) with p(x_i = 0) = p(x_i = 1) = 1/2."""
    return 0.5 * cofactor_entropy(f, i, 0) + 0.5 * cofactor_entropy(f, i, 1)


def cond_entropy_set(f: FuncHandle, variables: Iterable[int]) -> float:
    """H(f | joint assignment of ``variables``), averaged over all 2**|S| cofactors."""
    mgr = f.manager
    vs = sorted(set(variables))
    for v in vs:
        mgr._check_var(v)
    if len(vs) > SET_LIMIT:
        raise LimitError(f"conditioning sets are limited to {SET_LIMIT} variables")
    total = 0.0
    for values in itertools.product((0, 1), repeat=len(vs)):
        total += entropy(mgr.restrict_many(f, zip(vs, values)))
    return total / (1 << len(vs))


@dataclass(frozen=True)
class VarMeasures:
    """Cofactor measures of one variable.

    Counts are taken over the 2**(n-1) assignments of the other variables.
    """

    var: int
    count0: int
    count1: int
    h0: float
    h1: float
    hcond: float


@dataclass(frozen=True)
class EntropyProfile:
    n: int
    count: int
    h: float
    rows: tuple[VarMeasures, ...]

    def row(self, i: int) -> VarMeasures:
        return self.rows[i - 1]

    @property
    def half(self) -> int:
        """Number of assignments a single-variable cofactor is counted over."""
        return 1 << (self.n - 1) if self.n else 1


def profile(f: FuncHandle) -> EntropyProfile:
    mgr = f.manager
    n = f.n
    rows = []
    if n:
        half = 1 << (n - 1)
        for i in range(1, n + 1):
            # restricted functions ignore x_i, so their full counts are even
            c0 = mgr.sat_count(mgr.restrict(f, i, 0)) >> 1
            c1 = mgr.sat_count(mgr.restrict(f, i, 1)) >> 1
            h0 = binary_entropy(c0, half)
            h1 = binary_entropy(c1, half)
            rows.append(VarMeasures(i, c0, c1, h0, h1, 0.5 * h0 + 0.5 * h1))
    count = mgr.sat_count(f)
    return EntropyProfile(n, count, binary_entropy(count, 1 << n), tuple(rows))
