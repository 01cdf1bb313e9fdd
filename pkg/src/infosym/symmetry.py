"""Pairwise NE/E/M symmetry recognition guided by entropy measures.

Detection runs in two phases.  The entropy filter compares cofactor
measures of two variables and discards pairs whose measures differ; the
survivors are decided exactly by comparing two-variable cofactors on the
BDD.  The filter is a necessary condition only, so it never changes a
verdict, it only skips exact checks that would fail.
"""

from __future__ import annotations

import enum
import itertools
import time
from collections import Counter
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

from .bdd import FuncHandle
from .entropy import EntropyProfile, profile, same_entropy
from .errors import ManagerMismatchError


class SymmetryKind(str, enum.Enum):
    NONE = "NONE"
    NE = "NE"
    E = "E"
    M = "M"

    @property
    def ne(self) -> bool:
        return self in (SymmetryKind.NE, SymmetryKind.M)

    @property
    def e(self) -> bool:
        return self in (SymmetryKind.E, SymmetryKind.M)

    @classmethod
    def from_checks(cls, ne: bool, e: bool) -> "SymmetryKind":
        if ne and e:
            return cls.M
        if ne:
            return cls.NE
        if e:
            return cls.E
        return cls.NONE


class Totality(str, enum.Enum):
    NO = "no"
    YES_NE = "yes-NE"
    YES_MIXED = "yes-mixed-polarity"


@dataclass(frozen=True)
class PairClassification:
    i: int
    j: int
    kind: SymmetryKind
    vacuous: bool = False
    filter_passed_ne: bool = True
    filter_passed_e: bool = True

    def __post_init__(self):
        if not self.i < self.j:
            raise ValueError("pairs are stored with i < j")


class Member(NamedTuple):
    var: int
    phase: str  # '+' or '-'


@dataclass(frozen=True)
class SymmetryGroup:
    members: tuple[Member, ...]
    kind: str  # 'NE', 'E-mixed' or 'M'

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def variables(self) -> tuple[int, ...]:
        return tuple(m.var for m in self.members)


@dataclass(frozen=True)
class SymmetryReport:
    n: int
    pairs: tuple[PairClassification, ...]
    groups: tuple[SymmetryGroup, ...]
    summary: tuple[tuple[int, int], ...]
    totally_symmetric: Totality
    outputs: tuple["SymmetryReport", ...] = ()
    profile: EntropyProfile | None = field(default=None, compare=False)
    time_seconds: float = field(default=0.0, compare=False)

    def pair(self, i: int, j: int) -> PairClassification:
        if i > j:
            i, j = j, i
        for p in self.pairs:
            if p.i == i and p.j == j:
                return p
        raise KeyError((i, j))

    def symmetric_pairs(self) -> list[PairClassification]:
        return [p for p in self.pairs if p.kind is not SymmetryKind.NONE]

    def verdicts(self):
        """Everything but filter bookkeeping, profile and timing."""
        return (
            self.n,
            tuple((p.i, p.j, p.kind, p.vacuous) for p in self.pairs),
            self.groups,
            self.summary,
            self.totally_symmetric,
            tuple(o.verdicts() for o in self.outputs),
        )


# -- exact recognizers ----------------------------------------------------


def _distinct(i: int, j: int) -> None:
    if i == j:
        raise ValueError("a pair needs two distinct variables")


def check_ne(f: FuncHandle, i: int, j: int) -> bool:
    """f(.. x_i=0 .. x_j=1 ..) == f(.. x_i=1 .. x_j=0 ..)"""
    _distinct(i, j)
    mgr = f.manager
    return mgr.restrict_many(f, ((i, 0), (j, 1))) == mgr.restrict_many(f, ((i, 1), (j, 0)))


def check_e(f: FuncHandle, i: int, j: int) -> bool:
    """f(.. x_i=1 .. x_j=1 ..) == f(.. x_i=0 .. x_j=0 ..)"""
    _distinct(i, j)
    mgr = f.manager
    return mgr.restrict_many(f, ((i, 1), (j, 1))) == mgr.restrict_many(f, ((i, 0), (j, 0)))


# -- entropy filter -------------------------------------------------------


def pair_filter(prof: EntropyProfile, i: int, j: int) -> tuple[bool, bool]:
    """Necessary conditions for NE and E symmetry in (x_i, x_j).

    NE requires H(f_xi') = H(f_xj') and H(f_xi) = H(f_xj); E requires the
    crossed equalities.  Either implies H(f|x_i) = H(f|x_j).
    """
    a, b, half = prof.row(i), prof.row(j), prof.half
    ne = same_entropy(a.count0, b.count0, half) and same_entropy(a.count1, b.count1, half)
    e = same_entropy(a.count1, b.count0, half) and same_entropy(a.count0, b.count1, half)
    return ne, e


def entropy_filter(f: FuncHandle, prof: EntropyProfile | None = None) -> dict[tuple[int, int], tuple[bool, bool]]:
    """Candidate flags ``(ne, e)`` for every pair i < j."""
    if prof is None:
        prof = profile(f)
    return {
        (i, j): pair_filter(prof, i, j)
        for i, j in itertools.combinations(range(1, prof.n + 1), 2)
    }


def total_symmetry_candidate(prof: EntropyProfile) -> bool:
    """Necessary condition for total symmetry.

    Every pair being NE or E forces all variables to share one unordered
    pair of cofactor entropies.  (The two entropies of one variable need
    not agree: x1 AND x2 is totally symmetric with H(f_x1') = 0, H(f_x1) = 1.)
    """
    if prof.n < 2:
        return True
    first = prof.rows[0]
    return all(pair_filter(prof, first.var, r.var) != (False, False) for r in prof.rows[1:])


# -- classification -------------------------------------------------------


def classify_pair(f: FuncHandle, i: int, j: int, prof: EntropyProfile | None = None) -> PairClassification:
    _distinct(i, j)
    if i > j:
        i, j = j, i
    sup = f.manager.support(f)
    fne, fe = pair_filter(prof if prof is not None else profile(f), i, j)
    vacuous = i not in sup and j not in sup
    kind = SymmetryKind.from_checks(check_ne(f, i, j), check_e(f, i, j))
    return PairClassification(i, j, kind, vacuous, fne, fe)


def detect(f: FuncHandle, use_filter: bool = True, include_vacuous: bool = False) -> SymmetryReport:
    """All-pairs symmetry detection for one output."""
    start = time.perf_counter()
    mgr = f.manager
    prof = profile(f)
    sup = mgr.support(f)
    pairs = []
    for (i, j), (fne, fe) in entropy_filter(f, prof).items():
        vacuous = i not in sup and j not in sup
        if vacuous:
            kind = SymmetryKind.M
        else:
            ne = check_ne(f, i, j) if fne or not use_filter else False
            e = check_e(f, i, j) if fe or not use_filter else False
            kind = SymmetryKind.from_checks(ne, e)
        pairs.append(PairClassification(i, j, kind, vacuous, fne, fe))
    elapsed = time.perf_counter() - start
    return assemble_report(f.n, pairs, include_vacuous=include_vacuous, profile=prof, time_seconds=elapsed)


def detect_circuit(functions: Sequence[FuncHandle], use_filter: bool = True,
                   include_vacuous: bool = False) -> SymmetryReport:
    """Symmetries shared by every output of a multi-output function.

    A pair is NE (E) for the circuit iff it is NE (E) for each output;
    outputs that depend on neither variable pass vacuously.
    """
    if not functions:
        raise ValueError("a circuit needs at least one output")
    mgr = functions[0].manager
    if any(g.manager is not mgr for g in functions):
        raise ManagerMismatchError("all outputs must share one manager")
    start = time.perf_counter()
    per_output = [detect(g, use_filter, include_vacuous) for g in functions]
    pairs = []
    for idx, first in enumerate(per_output[0].pairs):
        column = [rep.pairs[idx] for rep in per_output]
        kind = SymmetryKind.from_checks(all(p.kind.ne for p in column), all(p.kind.e for p in column))
        pairs.append(PairClassification(
            first.i, first.j, kind,
            vacuous=all(p.vacuous for p in column),
            filter_passed_ne=all(p.filter_passed_ne for p in column),
            filter_passed_e=all(p.filter_passed_e for p in column),
        ))
    elapsed = time.perf_counter() - start
    return assemble_report(mgr.n, pairs, include_vacuous=include_vacuous,
                           outputs=tuple(per_output), time_seconds=elapsed)


# -- aggregation ----------------------------------------------------------


class _DisjointSet:
    def __init__(self):
        self.parent = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            # smaller index stays root, keeps results order independent
            if ry < rx:
                rx, ry = ry, rx
            self.parent[ry] = rx


class _ParitySet:
    """Union-find where each element carries a parity relative to its root."""

    def __init__(self):
        self.parent = {}
        self.parity = {}

    def find(self, x):
        if x not in self.parent:
            self.parent[x] = x
            self.parity[x] = 0
            return x, 0
        path = []
        while self.parent[x] != x:
            path.append(x)
            x = self.parent[x]
        root = x
        # compress, accumulating parity from the top down
        acc = 0
        for node in reversed(path):
            acc ^= self.parity[node]
            self.parity[node] = acc
            self.parent[node] = root
        return root, (self.parity[path[0]] if path else 0)

    def union(self, x, y, parity: int) -> bool:
        """Require phase(x) xor phase(y) == parity; False on contradiction."""
        rx, px = self.find(x)
        ry, py = self.find(y)
        if rx == ry:
            return (px ^ py) == parity
        if ry < rx:
            rx, ry, px, py = ry, rx, py, px
        self.parent[ry] = rx
        self.parity[ry] = px ^ py ^ parity
        return True


def _phases(members: Sequence[int], kinds) -> dict[int, int] | None:
    """Phase (0 = '+', 1 = '-') per member, or None if the pairwise
    relations admit no consistent assignment.  ``kinds(a, b)`` gives the
    classification of a pair; any NONE pair makes the set inconsistent."""
    ps = _ParitySet()
    for a, b in itertools.combinations(members, 2):
        kind = kinds(a, b)
        if kind is SymmetryKind.NONE:
            return None
        if kind is SymmetryKind.NE:
            ok = ps.union(a, b, 0)
        elif kind is SymmetryKind.E:
            ok = ps.union(a, b, 1)
        else:
            ps.find(a)
            ps.find(b)
            ok = True
        if not ok:
            return None
    # roots are the smallest index of each parity class; they get '+'
    return {v: ps.find(v)[1] for v in members}


def group_summary(classifications: Sequence[PairClassification], include_vacuous: bool = False):
    """Aggregate pair verdicts into disjoint groups and an (S, N) summary.

    Components are formed over symmetric pairs; a component whose pairwise
    relations are not all present and phase-consistent is split greedily in
    ascending variable order.
    """
    table = {}
    for p in classifications:
        if p.kind is SymmetryKind.NONE or (p.vacuous and not include_vacuous):
            continue
        table[(p.i, p.j)] = p.kind

    def kinds(a, b):
        return table.get((a, b) if a < b else (b, a), SymmetryKind.NONE)

    ds = _DisjointSet()
    for i, j in table:
        ds.union(i, j)
    components = {}
    for v in sorted(ds.parent):
        components.setdefault(ds.find(v), []).append(v)

    groups = []
    for comp in components.values():
        if _phases(comp, kinds) is not None:
            parts = [comp]
        else:
            parts = []
            for v in comp:
                for part in parts:
                    if _phases(part + [v], kinds) is not None:
                        part.append(v)
                        break
                else:
                    parts.append([v])
        for part in parts:
            if len(part) < 2:
                continue
            phase = _phases(part, kinds)
            members = tuple(Member(v, "-" if phase[v] else "+") for v in part)
            if any(kinds(a, b) is SymmetryKind.M for a, b in itertools.combinations(part, 2)):
                kind = "M"
            elif all(m.phase == "+" for m in members):
                kind = "NE"
            else:
                kind = "E-mixed"
            groups.append(SymmetryGroup(members, kind))
    groups.sort(key=lambda g: g.members[0].var)
    sizes = Counter(g.size for g in groups)
    summary = tuple(sorted(sizes.items(), key=lambda sn: -sn[0]))
    return tuple(groups), summary


def is_totally_symmetric(f: FuncHandle | None, classifications: Sequence[PairClassification],
                         n: int | None = None) -> Totality:
    """Total symmetry verdict from an all-pairs classification.

    Vacuous pairs count: every pair of declared variables must be NE or E.
    """
    if n is None:
        if f is None:
            raise ValueError("need a function or an explicit variable count")
        n = f.n
    table = {(p.i, p.j): p.kind for p in classifications}
    if len(table) != n * (n - 1) // 2:
        raise ValueError("classification does not cover all pairs")
    if all(k.ne for k in table.values()):
        return Totality.YES_NE
    if any(k is SymmetryKind.NONE for k in table.values()):
        return Totality.NO

    def kinds(a, b):
        return table[(a, b) if a < b else (b, a)]

    if _phases(list(range(1, n + 1)), kinds) is None:
        return Totality.NO
    return Totality.YES_MIXED


def assemble_report(n: int, pairs: Sequence[PairClassification], include_vacuous: bool = False,
                    profile: EntropyProfile | None = None, outputs=(), time_seconds: float = 0.0) -> SymmetryReport:
    pairs = tuple(sorted(pairs, key=lambda p: (p.i, p.j)))
    groups, summary = group_summary(pairs, include_vacuous=include_vacuous)
    return SymmetryReport(
        n=n,
        pairs=pairs,
        groups=groups,
        summary=summary,
        totally_symmetric=is_totally_symmetric(None, pairs, n=n),
        outputs=tuple(outputs),
        profile=profile,
        time_seconds=time_seconds,
    )


def format_summary(summary) -> str:
    return " ".join(f"({s},{c})" for s, c in summary)
