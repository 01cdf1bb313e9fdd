"""Brute-force truth-table reference for every measure and symmetry check.

Deliberately naive: a table of n variables is viewed as an n-dimensional
0/1 array (axis k is x_{k+1}), cofactors are plain index slices, and
measures are computed from counts.  No BDDs, no caching.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from .bdd import TruthTable
from .errors import LimitError
from .symmetry import PairClassification, SymmetryKind, SymmetryReport, assemble_report

LIMIT = 20


def _array(t: TruthTable) -> np.ndarray:
    if t.n > LIMIT:
        raise LimitError(f"oracle operations are limited to {LIMIT} variables")
    return np.asarray(t.bits, dtype=np.uint8).reshape((2,) * t.n)


def _slice(arr: np.ndarray, assignments) -> np.ndarray:
    index = [slice(None)] * arr.ndim
    for v, b in assignments:
        if not 1 <= v <= arr.ndim:
            raise ValueError(f"variable x{v} out of range")
        if index[v - 1] != slice(None):
            raise ValueError(f"variable x{v} assigned twice")
        index[v - 1] = 1 if b else 0
    return arr[tuple(index)]


def tt_cofactor(t: TruthTable, assignments) -> TruthTable:
    """Table over the unassigned variables, original order kept."""
    sub = _slice(_array(t), list(assignments))
    return TruthTable(sub.ndim, tuple(int(b) for b in sub.ravel()))


def tt_count(t: TruthTable) -> int:
    return sum(t.bits)


def _h2(ones: int, size: int) -> float:
    h = 0.0
    for c in (ones, size - ones):
        if c:
            p = c / size
            h -= p * math.log2(p)
    return h


def tt_entropy(t: TruthTable) -> float:
    _array(t)
    return _h2(tt_count(t), len(t.bits))


def tt_cofactor_entropy(t: TruthTable, i: int, b: int) -> float:
    sub = _slice(_array(t), [(i, b)])
    return _h2(int(sub.sum()), sub.size)


def tt_cond_entropy_set(t: TruthTable, variables) -> float:
    """H(f | x_S) from the joint distribution: -sum p(a, b) log2 p(a | b)."""
    arr = _array(t)
    vs = sorted(set(variables))
    for v in vs:
        if not 1 <= v <= t.n:
            raise ValueError(f"variable x{v} out of range")
    others = tuple(k for k in range(t.n) if k + 1 not in vs)
    ones = arr.sum(axis=others, dtype=np.int64).ravel() if others else arr.astype(np.int64).ravel()
    size = 1 << t.n
    block = 1 << len(others)
    p_b = block / size
    h = 0.0
    for k in ones.tolist():
        for c in (k, block - k):
            if c:
                p_ab = c / size
                h -= p_ab * math.log2(p_ab / p_b)
    return h


def tt_cond_entropy(t: TruthTable, i: int) -> float:
    return tt_cond_entropy_set(t, [i])


def tt_cond_entropy_avg(t: TruthTable, variables) -> float:
    """Same quantity, as the uniform average of cofactor entropies."""
    arr = _array(t)
    vs = sorted(set(variables))
    acc = 0.0
    for values in itertools.product((0, 1), repeat=len(vs)):
        sub = _slice(arr, zip(vs, values))
        acc += _h2(int(sub.sum()), sub.size)
    return acc / (1 << len(vs))


def _pair_checks(arr: np.ndarray, i: int, j: int) -> tuple[bool, bool]:
    if i == j:
        raise ValueError("a pair needs two distinct variables")
    ne = np.array_equal(_slice(arr, [(i, 0), (j, 1)]), _slice(arr, [(i, 1), (j, 0)]))
    e = np.array_equal(_slice(arr, [(i, 1), (j, 1)]), _slice(arr, [(i, 0), (j, 0)]))
    return ne, e


def tt_check_ne(t: TruthTable, i: int, j: int) -> bool:
    return _pair_checks(_array(t), i, j)[0]


def tt_check_e(t: TruthTable, i: int, j: int) -> bool:
    return _pair_checks(_array(t), i, j)[1]


def tt_depends_on(t: TruthTable, i: int) -> bool:
    arr = _array(t)
    return not np.array_equal(_slice(arr, [(i, 0)]), _slice(arr, [(i, 1)]))


def tt_classify_pair(t: TruthTable, i: int, j: int) -> SymmetryKind:
    return SymmetryKind.from_checks(*_pair_checks(_array(t), i, j))


def tt_detect(t: TruthTable, include_vacuous: bool = False) -> SymmetryReport:
    arr = _array(t)
    depends = [not np.array_equal(_slice(arr, [(i, 0)]), _slice(arr, [(i, 1)])) for i in range(1, t.n + 1)]
    pairs = []
    for i, j in itertools.combinations(range(1, t.n + 1), 2):
        kind = SymmetryKind.from_checks(*_pair_checks(arr, i, j))
        vacuous = not depends[i - 1] and not depends[j - 1]
        pairs.append(PairClassification(i, j, kind, vacuous))
    return assemble_report(t.n, pairs, include_vacuous=include_vacuous)
