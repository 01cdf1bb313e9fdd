# cython: language_level=3, boundscheck=False, wraparound=False
# distutils: language = c++
"""Compiled ROBDD node store; same interface as ``_kernel_py.Kernel``."""

from libc.stdint cimport uint64_t
from libcpp.unordered_map cimport unordered_map
from libcpp.vector cimport vector
from cython.operator cimport dereference as deref

cdef enum:
    NODE_BITS = 28
    MAX_NODES = (1 << 28) - 1

ctypedef unordered_map[uint64_t, int].iterator map_iter

AND, OR, XOR = 0, 1, 2


cdef class Kernel:
    cdef readonly int nvars
    cdef vector[int] _var
    cdef vector[int] _lo
    cdef vector[int] _hi
    cdef unordered_map[uint64_t, int] _unique
    cdef unordered_map[uint64_t, int] _apply_cache
    cdef unordered_map[uint64_t, int] _restrict_cache

    backend = "cython"

    def __cinit__(self, int nvars):
        if nvars < 0 or nvars > 250:
            raise ValueError("variable count out of kernel range")
        self.nvars = nvars
        self._var.push_back(nvars + 1)
        self._var.push_back(nvars + 1)
        self._lo.push_back(0)
        self._lo.push_back(1)
        self._hi.push_back(0)
        self._hi.push_back(1)

    def __len__(self):
        return self._var.size()

    def var_of(self, int u):
        return self._var[u]

    def low(self, int u):
        return self._lo[u]

    def high(self, int u):
        return self._hi[u]

    cdef int _mk(self, int v, int lo, int hi) except -1:
        cdef uint64_t key
        cdef int u
        cdef map_iter it
        if lo == hi:
            return lo
        key = ((<uint64_t>v) << (2 * NODE_BITS)) | ((<uint64_t>lo) << NODE_BITS) | (<uint64_t>hi)
        it = self._unique.find(key)
        if it != self._unique.end():
            return deref(it).second
        u = <int>self._var.size()
        if u > MAX_NODES:
            raise MemoryError("BDD node table exhausted")
        self._var.push_back(v)
        self._lo.push_back(lo)
        self._hi.push_back(hi)
        self._unique[key] = u
        return u

    def mk(self, int v, int lo, int hi):
        return self._mk(v, lo, hi)

    cdef int _apply(self, int op, int u, int w) except -1:
        cdef int t, r, vu, vw, lo, hi
        cdef uint64_t key
        cdef map_iter it
        if op == 0:
            if u == 0 or w == 0:
                return 0
            if u == 1:
                return w
            if w == 1 or u == w:
                return u
        elif op == 1:
            if u == 1 or w == 1:
                return 1
            if u == 0:
                return w
            if w == 0 or u == w:
                return u
        else:
            if u == w:
                return 0
            if u == 0:
                return w
            if w == 0:
                return u
        if u > w:
            t = u
            u = w
            w = t
        key = ((<uint64_t>op) << (2 * NODE_BITS)) | ((<uint64_t>u) << NODE_BITS) | (<uint64_t>w)
        it = self._apply_cache.find(key)
        if it != self._apply_cache.end():
            return deref(it).second
        vu = self._var[u]
        vw = self._var[w]
        if vu == vw:
            lo = self._apply(op, self._lo[u], self._lo[w])
            hi = self._apply(op, self._hi[u], self._hi[w])
            r = self._mk(vu, lo, hi)
        elif vu < vw:
            lo = self._apply(op, self._lo[u], w)
            hi = self._apply(op, self._hi[u], w)
            r = self._mk(vu, lo, hi)
        else:
            lo = self._apply(op, u, self._lo[w])
            hi = self._apply(op, u, self._hi[w])
            r = self._mk(vw, lo, hi)
        self._apply_cache[key] = r
        return r

    def apply(self, int op, int u, int w):
        if op < 0 or op > 2:
            raise ValueError(f"unknown operator code {op}")
        return self._apply(op, u, w)

    def neg(self, int u):
        return self._apply(2, u, 1)

    cdef int _restrict(self, int u, int v, int b) except -1:
        cdef int vu, r, lo, hi
        cdef uint64_t key
        cdef map_iter it
        vu = self._var[u]
        if vu > v:
            return u
        key = ((<uint64_t>u) << 9) | ((<uint64_t>v) << 1) | (<uint64_t>b)
        it = self._restrict_cache.find(key)
        if it != self._restrict_cache.end():
            return deref(it).second
        if vu == v:
            r = self._hi[u] if b else self._lo[u]
        else:
            lo = self._restrict(self._lo[u], v, b)
            hi = self._restrict(self._hi[u], v, b)
            r = self._mk(vu, lo, hi)
        self._restrict_cache[key] = r
        return r

    def restrict(self, int u, int v, int b):
        return self._restrict(u, v, 1 if b else 0)

    cdef object _sc(self, int u, dict cache):
        cdef int v, lo, hi
        if u < 2:
            return u
        r = cache.get(u)
        if r is not None:
            return r
        v = self._var[u]
        lo = self._lo[u]
        hi = self._hi[u]
        r = ((self._sc(lo, cache) << (self._var[lo] - v - 1))
             + (self._sc(hi, cache) << (self._var[hi] - v - 1)))
        cache[u] = r
        return r

    def sat_count(self, int u):
        """Number of satisfying assignments over all ``nvars`` variables."""
        return self._sc(u, {}) << (self._var[u] - 1)

    def support(self, int u):
        cdef vector[int] stack
        cdef vector[char] seen
        cdef int x
        out = set()
        seen.resize(self._var.size(), 0)
        stack.push_back(u)
        while not stack.empty():
            x = stack.back()
            stack.pop_back()
            if x < 2 or seen[x]:
                continue
            seen[x] = 1
            out.add(self._var[x])
            stack.push_back(self._lo[x])
            stack.push_back(self._hi[x])
        return out

    def from_bits(self, bits):
        """Build a function from ``2**nvars`` truth bits, x_1 most significant."""
        cdef const unsigned char[:] view = bytes(bytearray(1 if b else 0 for b in bits))
        cdef Py_ssize_t size = view.shape[0]
        cdef Py_ssize_t k, m
        cdef vector[int] layer
        cdef int v
        if size != (<Py_ssize_t>1 << self.nvars):
            raise ValueError("bit count does not match variable count")
        layer.resize(size)
        for k in range(size):
            layer[k] = view[k]
        m = size
        for v in range(self.nvars, 0, -1):
            m >>= 1
            for k in range(m):
                layer[k] = self._mk(v, layer[2 * k], layer[2 * k + 1])
        return layer[0]

    cdef void _expand(self, int u, int level, Py_ssize_t offset, unsigned char[:] out):
        cdef Py_ssize_t width, half, k
        if u == 0:
            return
        if u == 1:
            width = (<Py_ssize_t>1) << (self.nvars - level + 1)
            for k in range(offset, offset + width):
                out[k] = 1
            return
        half = (<Py_ssize_t>1) << (self.nvars - level)
        if self._var[u] == level:
            self._expand(self._lo[u], level + 1, offset, out)
            self._expand(self._hi[u], level + 1, offset + half, out)
        else:
            self._expand(u, level + 1, offset, out)
            self._expand(u, level + 1, offset + half, out)

    def to_bits(self, int u):
        out = bytearray((<Py_ssize_t>1) << self.nvars)
        self._expand(u, 1, 0, out)
        return bytes(out)

    def cache_sizes(self):
        return self._unique.size(), self._apply_cache.size(), self._restrict_cache.size()

    def audit(self):
        """Return a list of structural violations (empty when healthy)."""
        cdef int u, v, lo, hi
        cdef uint64_t key
        cdef map_iter it
        problems = []
        seen = {}
        for u in range(2, <int>self._var.size()):
            v = self._var[u]
            lo = self._lo[u]
            hi = self._hi[u]
            if lo == hi:
                problems.append(f"node {u}: redundant test on x{v}")
            if not (v < self._var[lo] and v < self._var[hi]):
                problems.append(f"node {u}: ordering violated below x{v}")
            if not 1 <= v <= self.nvars:
                problems.append(f"node {u}: variable x{v} out of range")
            if (v, lo, hi) in seen:
                problems.append(f"nodes {seen[(v, lo, hi)]} and {u} are duplicates")
            seen[(v, lo, hi)] = u
            key = ((<uint64_t>v) << (2 * NODE_BITS)) | ((<uint64_t>lo) << NODE_BITS) | (<uint64_t>hi)
            it = self._unique.find(key)
            if it == self._unique.end() or deref(it).second != u:
                problems.append(f"node {u}: missing from unique table")
        return problems
