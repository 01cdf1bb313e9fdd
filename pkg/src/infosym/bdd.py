"""Reduced ordered binary decision diagrams over a fixed variable order.

A :class:`Manager` owns the node store for ``n`` variables ``x_1 .. x_n``
(identity order, ``x_1`` at the top).  Functions are referenced through
:class:`FuncHandle`; two handles from the same manager denote the same
function exactly when their roots are equal.

The node store itself lives in a kernel object, compiled when the
``_kernel`` extension is importable and pure Python otherwise.  Set
``INFOSYM_PURE=1`` to force the fallback.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import _kernel_py
from .errors import InvariantError, LimitError, ManagerMismatchError, VariableError

try:
    if os.environ.get("INFOSYM_PURE"):
        raise ImportError("pure-Python kernel requested")
    from ._kernel import Kernel as _CompiledKernel
except ImportError:
    _CompiledKernel = None

KERNELS = {"python": _kernel_py.Kernel}
if _CompiledKernel is not None:
    KERNELS["cython"] = _CompiledKernel
DEFAULT_BACKEND = "cython" if _CompiledKernel is not None else "python"

MAX_VARS = 64
TRUTH_TABLE_LIMIT = 24

AND = "and"
OR = "or"
XOR = "xor"
_OPCODES = {AND: 0, OR: 1, XOR: 2}


@dataclass(frozen=True)
class TruthTable:
    """Explicit function table: ``bits[m]`` is f at the assignment whose
    binary expansion (x_1 most significant) is ``m``."""

    n: int
    bits: tuple[int, ...]

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("negative variable count")
        if len(self.bits) != 1 << self.n:
            raise ValueError(f"expected {1 << self.n} bits for n={self.n}, got {len(self.bits)}")
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError("truth table bits must be 0 or 1")

    @classmethod
    def from_string(cls, text: str) -> "TruthTable":
        bits = tuple(int(c) for c in text if c in "01")
        n = len(bits).bit_length() - 1
        return cls(n, bits)

    def __str__(self):
        return "".join(map(str, self.bits))


class Manager:
    """Node store plus caches for functions of ``n`` variables."""

    def __init__(self, n: int, max_vars: int = MAX_VARS, backend: str | None = None):
        if n < 0:
            raise ValueError("variable count must be non-negative")
        if n > max_vars:
            raise LimitError(f"{n} variables exceeds the configured maximum of {max_vars}")
        backend = backend or DEFAULT_BACKEND
        try:
            kernel_cls = KERNELS[backend]
        except KeyError:
            raise ValueError(f"unknown or unavailable kernel backend {backend!r}") from None
        self.n = n
        self.backend = backend
        self._k = kernel_cls(n)
        self.false = FuncHandle(self, 0)
        self.true = FuncHandle(self, 1)

    def __repr__(self):
        return f"Manager(n={self.n}, nodes={len(self._k)}, backend={self.backend!r})"

    def __len__(self):
        return len(self._k)

    # -- construction -----------------------------------------------------

    def _check_var(self, i: int) -> int:
        if not isinstance(i, int) or not 1 <= i <= self.n:
            raise VariableError(f"variable index {i!r} outside 1..{self.n}")
        return i

    def _own(self, f: "FuncHandle") -> int:
        if f.manager is not self:
            raise ManagerMismatchError("operand belongs to a different manager")
        return f.root

    def var(self, i: int) -> "FuncHandle":
        """Projection function x_i."""
        self._check_var(i)
        return FuncHandle(self, self._k.mk(i, 0, 1))

    def const(self, value: bool) -> "FuncHandle":
        return self.true if value else self.false

    def cube(self, literals: Iterable[tuple[int, int]]) -> "FuncHandle":
        """Conjunction of literals given as ``(var, bit)`` pairs."""
        lits = {}
        for v, b in literals:
            self._check_var(v)
            b = 1 if b else 0
            if lits.get(v, b) != b:
                return self.false
            lits[v] = b
        u = 1
        for v in sorted(lits, reverse=True):
            u = self._k.mk(v, u, 0) if lits[v] == 0 else self._k.mk(v, 0, u)
        return FuncHandle(self, u)

    def apply(self, op: str, f: "FuncHandle", g: "FuncHandle") -> "FuncHandle":
        try:
            code = _OPCODES[op.lower()]
        except (KeyError, AttributeError):
            raise ValueError(f"unsupported operator {op!r}") from None
        return FuncHandle(self, self._k.apply(code, self._own(f), self._own(g)))

    def not_(self, f: "FuncHandle") -> "FuncHandle":
        return FuncHandle(self, self._k.neg(self._own(f)))

    def restrict(self, f: "FuncHandle", i: int, b: int) -> "FuncHandle":
        """Cofactor of f with x_i fixed to b (still an n-variable function)."""
        self._check_var(i)
        return FuncHandle(self, self._k.restrict(self._own(f), i, 1 if b else 0))

    def restrict_many(self, f: "FuncHandle", assignment: Iterable[tuple[int, int]]) -> "FuncHandle":
        u = self._own(f)
        for i, b in assignment:
            self._check_var(i)
            u = self._k.restrict(u, i, 1 if b else 0)
        return FuncHandle(self, u)

    # -- queries ----------------------------------------------------------

    def sat_count(self, f: "FuncHandle") -> int:
        """Exact number of the 2**n assignments on which f is 1."""
        return self._k.sat_count(self._own(f))

    def equal(self, f: "FuncHandle", g: "FuncHandle") -> bool:
        return self._own(f) == self._own(g)

    def support(self, f: "FuncHandle") -> set[int]:
        return self._k.support(self._own(f))

    def node_count(self, f: "FuncHandle") -> int:
        """Internal nodes reachable from f."""
        seen = set()
        stack = [self._own(f)]
        while stack:
            u = stack.pop()
            if u < 2 or u in seen:
                continue
            seen.add(u)
            stack.append(self._k.low(u))
            stack.append(self._k.high(u))
        return len(seen)

    def from_truth_table(self, tt: TruthTable | Sequence[int]) -> "FuncHandle":
        bits = tt.bits if isinstance(tt, TruthTable) else tuple(tt)
        if self.n > TRUTH_TABLE_LIMIT:
            raise LimitError(f"truth tables are limited to {TRUTH_TABLE_LIMIT} variables")
        if len(bits) != 1 << self.n:
            raise ValueError(f"expected {1 << self.n} bits, got {len(bits)}")
        return FuncHandle(self, self._k.from_bits(bits))

    def to_truth_table(self, f: "FuncHandle") -> TruthTable:
        if self.n > TRUTH_TABLE_LIMIT:
            raise LimitError(f"truth tables are limited to {TRUTH_TABLE_LIMIT} variables")
        return TruthTable(self.n, tuple(self._k.to_bits(self._own(f))))

    def evaluate(self, f: "FuncHandle", assignment: Sequence[int]) -> int:
        """Value of f where ``assignment[i - 1]`` is the value of x_i."""
        if len(assignment) != self.n:
            raise ValueError("assignment length must equal the variable count")
        u = self._own(f)
        while u > 1:
            u = self._k.high(u) if assignment[self._k.var_of(u) - 1] else self._k.low(u)
        return u

    def audit(self) -> None:
        """Raise :class:`InvariantError` if ordering or reduction is broken."""
        problems = self._k.audit()
        if problems:
            raise InvariantError("; ".join(problems[:5]))


class FuncHandle:
    """Canonical reference to a function inside a :class:`Manager`."""

    __slots__ = ("manager", "root")

    def __init__(self, manager: Manager, root: int):
        self.manager = manager
        self.root = root

    @property
    def n(self) -> int:
        return self.manager.n

    def __eq__(self, other):
        if not isinstance(other, FuncHandle):
            return NotImplemented
        return self.manager is other.manager and self.root == other.root

    def __hash__(self):
        return hash((id(self.manager), self.root))

    def __repr__(self):
        return f"FuncHandle(root={self.root}, n={self.n})"

    def __and__(self, other):
        return self.manager.apply(AND, self, other)

    def __or__(self, other):
        return self.manager.apply(OR, self, other)

    def __xor__(self, other):
        return self.manager.apply(XOR, self, other)

    def __invert__(self):
        return self.manager.not_(self)

    @property
    def is_const(self) -> bool:
        return self.root < 2


def new_manager(n: int, max_vars: int = MAX_VARS, backend: str | None = None) -> Manager:
    return Manager(n, max_vars=max_vars, backend=backend)


def var(mgr: Manager, i: int) -> FuncHandle:
    return mgr.var(i)


def apply(mgr: Manager, op: str, f: FuncHandle, g: FuncHandle) -> FuncHandle:
    return mgr.apply(op, f, g)


def not_(mgr: Manager, f: FuncHandle) -> FuncHandle:
    return mgr.not_(f)


def restrict(mgr: Manager, f: FuncHandle, i: int, b: int) -> FuncHandle:
    return mgr.restrict(f, i, b)


def sat_count(mgr: Manager, f: FuncHandle) -> int:
    return mgr.sat_count(f)


def equal(f: FuncHandle, g: FuncHandle) -> bool:
    if f.manager is not g.manager:
        raise ManagerMismatchError("cannot compare functions from different managers")
    return f.root == g.root


def support(mgr: Manager, f: FuncHandle) -> set[int]:
    return mgr.support(f)


def from_truth_table(mgr: Manager, tt: TruthTable | Sequence[int]) -> FuncHandle:
    return mgr.from_truth_table(tt)


def to_truth_table(mgr: Manager, f: FuncHandle) -> TruthTable:
    return mgr.to_truth_table(f)
